pub mod error;
pub mod factors;
pub mod graph;
pub mod harness;
pub mod limits;
pub mod quotient;
pub mod spectra;
pub mod theorems;

pub use error::{Error, Result};
pub use graph::{FamilySpec, Graph};
