// Nullspace of a matrix over ℚ[λ], with the weights where it grows.

use std::error::Error;

use superdensity::param_linalg::{generic_nullspace, resonances, ParamMatrix};
use superdensity::parse::parse_scalar;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cells = [["lambda", "1", "0"], ["0", "0", "2*lambda^2 + 10*lambda + 3"]];
    let rows = cells
        .iter()
        .map(|r| r.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let m = ParamMatrix::from_dense(rows)?;
    let s = generic_nullspace(&m);
    println!("generic dimension {}", s.generic_dimension);
    let r = resonances(&m, &s)?;
    println!("candidate locus {}", r.candidate_locus);
    for v in &r.confirmed {
        println!("  λ = {}: dimension {}", v.value.pretty(), v.dimension);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
