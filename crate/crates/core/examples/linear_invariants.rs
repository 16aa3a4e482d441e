// Invariant linear operators F_λ → F_μ compared with ∂^k and the
// products of odd derivations.

use std::error::Error;

use superdensity::cohomology::linear::linear_check;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let r = linear_check(2, 3)?;
    for c in r.cells.iter().filter(|c| c.dimension > 0) {
        let found: Vec<_> = c.members.iter().filter(|m| m.in_span).map(|m| m.operator.as_str()).collect();
        println!("n = {}, μ − λ = {}: dim {} spanned by {}", c.n, c.shift, c.dimension, found.join(", "));
    }
    println!("η products match: {}, η̄ products match: {}", r.eta_matches, r.eta_bar_matches);
    if !r.ok {
        return Err("dimension mismatch".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
