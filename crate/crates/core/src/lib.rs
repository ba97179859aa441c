//! Rational polar representations of spheres, the quadric pencils behind
//! them, and their conchoid surfaces.

// `!(x <= tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conchoid;
pub mod error;
pub mod exactalg;
pub mod meshio;
pub mod quadrics;

pub use error::{Error, Result};
