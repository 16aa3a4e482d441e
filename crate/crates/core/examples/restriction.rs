// Restrict n = 2 classes to the θ₂-free subalgebra and check that each
// block is a relative cocycle one level down.

use std::error::Error;

use superdensity::cohomology::cell::{compute_cell, degree_bound};
use superdensity::cohomology::restriction::restriction_checks;
use superdensity::cohomology::Generic;
use superdensity::scalars::ParamPoly;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let lam = ParamPoly::named("lambda");
    let cell = compute_cell(&Generic::lambda(), 2, 2, &lam, degree_bound(2), false)?;
    for r in restriction_checks(&cell)? {
        println!("class {}: ok = {}", r.class, r.ok);
        for c in &r.components {
            println!("  {:?} {} → {}: zero {}, cocycle {}", c.flags, c.lambda, c.mu, c.zero, c.cocycle);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
