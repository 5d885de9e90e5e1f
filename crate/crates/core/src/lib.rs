//! Exact combinatorics and Lie theory of rational hyperplane arrangements.
//!
//! The kernels are generic over the scalar: linear algebra over any exact
//! [`Field`](scalar::Field), Lie and series arithmetic over any
//! [`Ring`](scalar::Ring). The aliases below fix the types used by the file
//! formats and the CLI.

pub mod arrangement;
pub mod error;
pub mod fibration;
pub mod free_lie;
pub mod holonomy;
pub mod lattice;
pub mod linalg;
pub mod os_algebra;
pub mod presentation;
pub mod report;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use report::{CheckReport, Status};

/// Arbitrary-precision rational, the field of definition for arrangements.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
