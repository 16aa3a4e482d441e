// Arithmetic in ℚ(√d) for irrational resonant weights.

use std::error::Error;

use superdensity::cohomology::h1::minimal_polynomial;
use superdensity::scalars::{QuadraticField, UPoly};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = QuadraticField::new(&UPoly::from_ints(&[3, 10, 2]))?;
    let a = f.root(0);
    let b = f.root(1);
    println!("roots: {} and {}", a.pretty(), b.pretty());
    println!("sum {}, product {}", a.checked_add(&b)?.pretty(), a.checked_mul(&b)?.pretty());
    println!("minimal polynomial of a: {:?}", minimal_polynomial(&a).coeffs());
    println!("1/a = {}", a.checked_inv()?.pretty());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
