// X_F acting on weighted densities, and the parity split of a payload.

use std::error::Error;

use superdensity::densities::{act, split};
use superdensity::parse::{parse_density, parse_superpoly};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let d = parse_density("x^2 + x*t1 @ lambda", 1)?;
    for h in ["1", "x", "t1", "x^2"] {
        let f = parse_superpoly(h, Some(1))?;
        println!("L_{h} ({d}) = {}", act(d.weight(), &f, &d)?);
    }
    let (a, b) = split(&d)?;
    println!("split: {a}  |  {b}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
