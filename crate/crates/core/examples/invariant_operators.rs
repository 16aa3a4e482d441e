// aff(n|1)-invariant bilinear operators with both weights left symbolic.

use std::error::Error;

use superdensity::cohomology::classify_invariants;
use superdensity::cohomology::render::render_bi;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (n, twice_k) in [(0, 4), (1, 3), (2, 2)] {
        let fam = classify_invariants(n, twice_k)?;
        println!("n = {n}, k = {twice_k}/2: dimension {}", fam.dimension());
        for i in 0..fam.dimension() {
            println!("  {}", render_bi(&fam.member(i).op));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
