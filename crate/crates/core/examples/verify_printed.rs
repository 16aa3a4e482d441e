// Check transcribed cocycle formulas: vanishing on aff, the cocycle
// identity, and independence from the coboundaries.

use std::error::Error;

use superdensity::cohomology::claims::{restriction_identity, verify_printed, ClaimStatus};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for id in ["C_0_1", "C_l_l+2", "U1_l_l+3/2", "U2_l_l+1"] {
        let r = verify_printed(id)?;
        println!("{:<28} {:?}  {}", r.label, r.status, r.operator);
        if r.status != ClaimStatus::Confirmed {
            return Err(format!("{id}: {:?}", r.failing_pair).into());
        }
    }
    let ri = restriction_identity()?;
    println!("{}: holds = {}, cocycle {}", ri.label, ri.holds, ri.cocycle);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
