//! Distance-set laboratory over prime fields.
//!
//! Computes distance sets Δ(E) of point sets over F_p and F_{p^2}, their
//! quotient and product sets, and multiplicative energies, with exact
//! integer counting throughout. Set arithmetic runs on bit arrays; counting
//! convolutions run through a word-size NTT with a naive path retained as
//! the oracle. Seeded sweep experiments measure quotient/product growth
//! thresholds reproducibly.

pub mod constructions;
pub mod distance;
pub mod energy;
pub mod error;
pub mod experiments;
pub mod field;
pub mod fset;
pub mod io;
mod ntt;

pub use error::{Error, Result};
pub use field::{Ctx, ExtFieldCtx, FieldCtx, MAX_FIELD_ORDER};
pub use fset::{ConvPath, CountVector, FSet};
