//! Exact arithmetic on a computable fragment of Conway's surreal numbers,
//! ordinals in Cantor normal form, symbols of infinity for catalogued
//! transfinite sequences, and skands: transfinite nested tuples with
//! decidable equality and periodicity predicates.
//!
//! Each module is usable on its own; the [`cli`] module ties them together
//! behind a small expression language.

pub mod cli;
pub mod explog;
pub mod gaps;
pub mod ordinal;
pub mod skand;
pub mod surreal;

pub use ordinal::{Ordinal, OrdinalClass, OrdinalError};
pub use surreal::{nf_cmp, Dyadic, Exponent, Number, Rational, SurrealError, TruncatedNumber};
