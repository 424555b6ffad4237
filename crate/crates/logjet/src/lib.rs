//! Exact arithmetic for log jet and evaluation spaces of chart-presented
//! affine log schemes.
//!
//! The crate is organized in layers:
//!
//! * scalars and linear algebra — [`field`], [`series`], [`poly`],
//!   [`linalg`], [`intmat`], with the input grammar in [`expr`];
//! * finitely generated sharp monoids and their maps — [`monoid`];
//! * chart-presented log schemes, arcs, and jet points — [`scheme`];
//! * jet / evaluation space presentations — [`jets`];
//! * invariant factors and Fitting data of presented modules over a
//!   truncated power-series ring — [`decomp`];
//! * log Kähler differentials restricted along arcs — [`diff`];
//! * the embedding-dimension formula and its brute-force oracle —
//!   [`embdim`];
//! * serialized inputs and deterministic reports — [`input`], [`report`].
//!
//! Every computation is exact (arbitrary-precision rationals or a prime
//! field) and every derived quantity has an independently implemented
//! oracle used by the test suite.

pub mod decomp;
pub mod diff;
pub mod embdim;
pub mod error;
pub mod expr;
pub mod field;
pub mod input;
pub mod intmat;
pub mod jets;
pub mod linalg;
pub mod monoid;
pub mod poly;
pub mod report;
pub mod scheme;
pub mod series;

pub use error::{Error, Result};
