// Exhaustive Jacobi and representation checks on small monomials.

use std::error::Error;

use superdensity::axioms::run_all;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for a in run_all(2)? {
        println!("{:<28} n = {}  {:>5} cases  {} failures", a.name, a.n, a.cases, a.failures);
        if let Some(f) = a.first_failure {
            return Err(f.into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
