mod bracket_table {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bracket_table.rs"));
}
mod density_action {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/density_action.rs"));
}
mod invariant_operators {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/invariant_operators.rs"));
}
mod linear_invariants {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/linear_invariants.rs"));
}
mod h1_cell {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/h1_cell.rs"));
}
mod resonances {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/resonances.rs"));
}
mod verify_printed {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_printed.rs"));
}
mod restriction {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/restriction.rs"));
}
mod axioms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/axioms.rs"));
}
mod parametric_nullspace {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/parametric_nullspace.rs"));
}
mod quadratic_weights {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/quadratic_weights.rs"));
}

#[test]
fn bracket_table_runs() {
    bracket_table::run_example().expect("bracket_table example should run");
}

#[test]
fn density_action_runs() {
    density_action::run_example().expect("density_action example should run");
}

#[test]
fn invariant_operators_runs() {
    invariant_operators::run_example().expect("invariant_operators example should run");
}

#[test]
fn linear_invariants_runs() {
    linear_invariants::run_example().expect("linear_invariants example should run");
}

#[test]
fn h1_cell_runs() {
    h1_cell::run_example().expect("h1_cell example should run");
}

#[test]
fn resonances_runs() {
    resonances::run_example().expect("resonances example should run");
}

#[test]
fn verify_printed_runs() {
    verify_printed::run_example().expect("verify_printed example should run");
}

#[test]
fn restriction_runs() {
    restriction::run_example().expect("restriction example should run");
}

#[test]
fn axioms_runs() {
    axioms::run_example().expect("axioms example should run");
}

#[test]
fn parametric_nullspace_runs() {
    parametric_nullspace::run_example().expect("parametric_nullspace example should run");
}

#[test]
fn quadratic_weights_runs() {
    quadratic_weights::run_example().expect("quadratic_weights example should run");
}
