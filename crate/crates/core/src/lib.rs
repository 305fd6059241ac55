//! Exact computations in the Hopf algebras `K(n)*(SO_m)`, `CK(n)*(SO_m)` and
//! `Ch*(SO_m)` over `F_2`, their divided-power duals, bi-ideals, and the
//! J-invariant bookkeeping for maximal orthogonal Grassmannians.

pub mod algebra;
pub mod base;
pub mod cli;
pub mod dual;
pub mod error;
pub mod hopf;
pub mod ideals;
pub mod linalg;
pub mod motives;
pub mod report;

pub use error::{Error, Result};
