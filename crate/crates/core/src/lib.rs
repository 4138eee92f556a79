//! Exact truncated q-series arithmetic and identity verification.
//!
//! The crate is layered bottom-up: [`rings`] supplies exact coefficients,
//! [`series`] truncated Laurent series with Pochhammer products,
//! [`hypergeom`] q-hypergeometric sums, [`ct`] constant terms in an auxiliary
//! variable `z`, and [`dsl`] a small language for catalogs of identities.

pub mod check;
pub mod dsl;
pub mod ct;
pub mod error;
pub mod hypergeom;
pub mod identities;
pub mod rings;
pub mod series;

pub use check::CheckOutcome;
pub use error::{Error, Result};
pub use rings::{Eisenstein, LaurentPoly, PolyA, PolyZ, Rational, Ring};
pub use series::QSeries;

/// The identity catalog shipped with the crate, in `.qid` format.
pub const BUNDLED_CATALOG: &str = include_str!("../catalog/bundled.qid");
