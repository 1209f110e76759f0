//! Exact enumeration of lattice paths, (a,b)-paths and parking functions
//! under ultimately periodic right boundaries, and conversion of their
//! Appell relations into algebraic ordinary generating functions.

pub mod algebra;
pub mod appell;
pub mod boundary;
pub mod certifier;
pub mod cli;
pub mod closed_forms;
pub mod converter;
pub mod error;
pub mod oracle;

pub use boundary::{Boundary, PathFamily, SlopeCheck, StepShape};
pub use error::{Error, Result};
