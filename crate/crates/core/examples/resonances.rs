// Weights where H¹ jumps: recovered as roots of the rank-drop locus and
// recomputed in the quadratic field they live in.

use std::error::Error;

use superdensity::cohomology::h1::{h1, H1Options};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let opts = H1Options { random_checks: 1, stability: false, ..H1Options::default() };
    for (n, twice) in [(0, 10), (0, 12), (1, 8)] {
        let r = h1(n, twice, &opts)?;
        println!("n = {n}, μ − λ = {}: generic dim {}", r.shift, r.dims.h1);
        for res in &r.resonances {
            println!("  dim {} at roots of {}: {}", res.h1, res.polynomial, res.lambdas.join(", "));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
