//! Exact local analytic geometry at the origin of the plane.
//!
//! Everything here is computed in exact arithmetic over the field Q(i)(e):
//! Gaussian rationals extended by one transcendental `e`. The building blocks
//! are truncated formal power series ([`series`]), formal diffeomorphisms and
//! vector fields fixing the origin ([`diffeo`], [`vfield`]), parametrized
//! curve germs ([`curve`]), blow-ups and infinitely near points ([`blowup`]),
//! finite jet groups with exp/log ([`jetspace`]), and word-ball exploration
//! of finitely generated diffeomorphism groups ([`groups`]).
//!
//! Truncation is tracked per value: a series carries the order through which
//! its coefficients are trustworthy, and every derived quantity that could be
//! affected by the unknown tail is reported as a lower bound
//! ([`series::OrderResult::AtLeast`]) rather than as a guess.

pub mod blowup;
pub mod curve;
pub mod diffeo;
mod error;
pub mod groups;
pub mod jetspace;
pub mod scalar;
pub mod series;
pub mod vfield;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
