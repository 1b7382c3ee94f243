//! Rényi divergences under a total-variation constraint, the achievable
//! region of relative-entropy pairs, and Rényi-based error-probability
//! bounds for binary linear codes.
//!
//! ```
//! use renyi_tv::gmin::{g_alpha, GMinQuery};
//!
//! let g = g_alpha(GMinQuery::new(0.5, 1.0).unwrap());
//! assert!((g.value - (4.0f64 / 3.0).ln()).abs() < 1e-12);
//! ```

// NaN-rejecting range checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod coding;
pub mod divergences;
pub mod error;
pub mod gmin;
pub mod locus;
pub mod numeric;
pub mod serde_ext;

pub use error::{Error, Result};
