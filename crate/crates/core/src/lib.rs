//! Asymptotic and catalytic containment of `SU(n)` representations.

pub mod characters;
pub mod cli;
pub mod decision;
pub mod error;
pub mod json;
pub mod lp;
pub mod lr;
pub mod monomial;
pub mod partition;
pub mod polytope;
pub mod rational;
pub mod repn;
pub mod schur;
pub mod selftest;
pub mod su2;
pub mod tropical;

pub use error::{Error, Result};
pub use partition::Partition;
pub use schur::SchurElement;
pub use repn::Representation;
