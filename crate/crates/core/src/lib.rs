//! Verification workbench for the two explicit blowup families of the 3D
//! incompressible MHD equations
//!
//! ```text
//! d_t v + v.grad v + grad P = nu lap v + (curl H) x H
//! d_t H = nu lap H + curl (v x H)
//! div v = 0,  div H = 0
//! ```
//!
//! Fields are exact symbolic objects ([`algebra::SymField`]) so residuals can
//! be proved zero by normalization, with `nu` and every family parameter kept
//! formal. The [`numeric`] module cross-checks the same fields in floating
//! point.

// Negated float comparisons are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod ansatz;
pub mod catalog;
pub mod error;
pub mod mhd;
pub mod numeric;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
