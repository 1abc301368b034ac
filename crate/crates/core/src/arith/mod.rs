//! Exact arithmetic: rationals, dense polynomials over them, and truncated
//! Laurent series.

mod poly;
mod rational;
mod series;

pub use poly::QPoly;
pub use rational::{is_prime, ord_p_int, prime_divisors, primes_upto, Rational};
pub use series::LaurentSeries;
