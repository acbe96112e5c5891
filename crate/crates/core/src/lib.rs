//! Exact arithmetic kernels for counting rational points of bounded height.
//!
//! The crate is `no_std` (with `alloc`). Everything here is exact: integer,
//! rational and mod-p arithmetic. Floating point only appears in functions
//! that render real-valued bounds and ratios for reports.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod detmethod;
pub mod error;
pub mod geometry;
pub mod irreducibility;
pub mod linalg;
pub mod pointcount;
pub mod poly;
pub mod resultant;
pub mod witness;

pub use error::{Error, Result};
pub use poly::{IntPoly, Monomial, ModPoly};
pub use pointcount::{AffinePoint, CountMode, CountResult, ProjPoint, WorkLimit};
