//! Exact reconstruction of the interpolating polynomials `A_n(x)` attached to
//! the hauptmoduln of the Hecke groups `G(2 cos(pi/m))`, their reduction to
//! polynomial self-maps of finite fields, and a verifier for the structural
//! statements made about those reductions.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: exact rationals, dense rational polynomials, truncated Laurent series.
//! - [`hauptmodul`]: hypergeometric Frobenius solutions, series reversion and the
//!   calibration strategies that pin the expansion variable.
//! - [`interp`]: interpolation of `A_n`, denominator operators, table file formats.
//! - [`ff`]: finite fields with canonical moduli, coercion and the reduced models.
//! - [`factor`]: factorization strategies, discrete logarithms, Frobenius orbits
//!   and the printed factorization tables.
//! - [`verify`]: the end-to-end pipeline, cache, verdicts and reports.
//!
//! Interchangeable algorithms (calibration, factorization, discrete logarithm)
//! sit behind traits and are looked up by name in a [`registry::Registry`].

pub mod arith;
pub mod error;
pub mod factor;
pub mod ff;
pub mod hauptmodul;
pub mod interp;
pub mod registry;
pub mod verify;

pub use error::{Error, Result};
