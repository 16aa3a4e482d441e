// The contact bracket on a few hamiltonians, and the aff(1|1) relations.

use std::error::Error;

use superdensity::axioms::bracket_table;
use superdensity::contact::contact_bracket;
use superdensity::parse::parse_superpoly;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for row in bracket_table()? {
        println!("{{{}, {}}} = {}", row.f, row.g, row.computed);
        if !row.ok {
            return Err(format!("expected {}", row.expected).into());
        }
    }

    // an n = 2 bracket: θ₁θ₂ acts as the rotation generator on θ₁
    let f = parse_superpoly("t1*t2", Some(2))?;
    let g = parse_superpoly("x*t1", Some(2))?;
    println!("{{{f}, {g}}} = {}", contact_bracket(&f, &g)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
