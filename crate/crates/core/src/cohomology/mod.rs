//! Invariant operators and the relative cohomology H¹(K(n), aff(n|1); D_{λ,μ}).

pub mod ansatz;
pub mod cell;
pub mod claims;
pub mod h1;
pub mod invariants;
pub mod linear;
pub mod render;
pub mod restriction;
pub mod solve;

pub use ansatz::{build_ansatz, build_lin_ansatz, Ansatz, LinAnsatz, MAX_TWICE_SHIFT};
pub use invariants::{
    bi_coords, bi_from_coords, classify_invariants, classify_linear, lin_from_coords, solve_invariance_bi,
    solve_invariance_lin, BiFamily, LinFamily,
};
pub use solve::{Backend, Generic, Special, Solved};
