//! Compiles and runs every snippet of the guide in `book/src` as a doc-test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/scalars.md")]
pub mod scalars {}
#[doc = include_str!("../../../book/src/sphere.md")]
pub mod sphere {}
#[doc = include_str!("../../../book/src/pencils.md")]
pub mod pencils {}
#[doc = include_str!("../../../book/src/carriers.md")]
pub mod carriers {}
#[doc = include_str!("../../../book/src/conchoids.md")]
pub mod conchoids {}
#[doc = include_str!("../../../book/src/family.md")]
pub mod family {}
#[doc = include_str!("../../../book/src/universal.md")]
pub mod universal {}
#[doc = include_str!("../../../book/src/meshio.md")]
pub mod meshio {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
