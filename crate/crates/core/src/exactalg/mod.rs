//! Scalar backends, dense polynomials and rational functions.

mod bipoly;
mod poly;
mod ratfunc;
mod roots;
mod scalar;

pub use bipoly::{BiPoly, BiRatFunc};
pub use poly::{interpolate, Poly};
pub use ratfunc::{RatFunc, DEFAULT_IDENTITY_TRIALS};
pub use roots::{poly_real_roots, ROOT_TOLERANCE};
pub use scalar::{parse_rat, Rat, Scalar, FLOAT_EPS};
