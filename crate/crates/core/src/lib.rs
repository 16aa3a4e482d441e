pub mod axioms;
pub mod cli;
pub mod cohomology;
pub mod contact;
pub mod densities;
pub mod diffop;
pub mod error;
pub mod param_linalg;
pub mod parse;
pub mod scalars;
pub mod superpoly;

pub use error::{Error, Result};
