//! Exact verification of the braided monoidal structure on the category of
//! comodules over the canonical coring A (x) A of a finite-dimensional
//! algebra A.
//!
//! All arithmetic is exact: rationals with arbitrary precision or a prime
//! field. Every check either passes or produces a concrete witness basis
//! element or equation instance that fails.

pub mod error;
pub mod field;
pub mod linalg;
pub mod report;

pub mod algebra;
pub mod braiding;
pub mod comodule;
pub mod io;
pub mod oracle;
pub mod separability;
pub mod solver;
pub mod tensor;

pub use error::Error;
