// One cohomology cell with λ free, and the same cell at a fixed weight.

use std::error::Error;

use superdensity::cohomology::h1::{h1, h1_at, H1Options};
use superdensity::scalars::{AlgebraicScalar, Rational};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let opts = H1Options { random_checks: 2, ..H1Options::default() };
    let r = h1(1, 3, &opts)?;
    println!("n = 1, μ − λ = {}: dim H¹ = {} (Z {}, B {})", r.shift, r.dims.h1, r.dims.cocycles, r.dims.coboundaries);
    for b in &r.basis {
        println!("  {}", b.text);
    }

    let at = h1_at(1, 1, &AlgebraicScalar::rational(Rational::ZERO), &opts)?;
    println!("n = 1, μ − λ = 1/2 at λ = 0: dim H¹ = {}", at.dims.h1);
    if !r.discrepancies.is_empty() || !at.discrepancies.is_empty() {
        return Err("table mismatch".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
