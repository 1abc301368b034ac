//! Hauptmodul expansions for the Hecke groups.
//!
//! The natural route builds `Ĵ = 1/X̂ + sum â_n X̂^n` from the hypergeometric
//! Frobenius solutions at the cusp; a calibration then maps `â_n` to the
//! coefficients `a_m(n)` of `J_m = 1/X_m + sum a_m(n) X_m^n`.

mod calibration;
mod expansion;
mod natural;

pub use calibration::{
    anchor_a0, anchor_a1, calibration_registry, Calibration, CalibrationStrategy, Monic,
    NaturalSource, RootSign, TwoAdic,
};
pub use expansion::{bar, JExpansion, SeriesEngine};
pub use natural::{
    expansion_from_pair, frobenius_pair, hyper_params, natural_expansion, HeckeParams,
};
