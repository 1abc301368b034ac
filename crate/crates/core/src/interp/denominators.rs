use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::arith::{is_prime, ord_p_int, prime_divisors, primes_upto, QPoly, Rational};

/// `d(P)`: lcm of the reduced denominators of the coefficients; `d(0) = 1`.
pub fn d_of(p: &QPoly) -> BigInt {
    p.coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// `mu_p(P) = p^ord_p(d(P))`.
pub fn mu_p(poly: &QPoly, p: u64) -> BigInt {
    let d = d_of(poly);
    num_traits::pow(BigInt::from(p), ord_p_int(&d, p) as usize)
}

/// `K(P) = d(P) P`, an integer polynomial.
pub fn k_of(p: &QPoly) -> QPoly {
    p.scale(&Rational::from(d_of(p)))
}

/// `K_p(P) = mu_p(P) P`, integral at `p`.
pub fn kp_of(poly: &QPoly, p: u64) -> QPoly {
    poly.scale(&Rational::from(mu_p(poly, p)))
}

/// Primes dividing the denominator of some nonzero coefficient.
pub fn pi_set(p: &QPoly) -> Vec<u64> {
    prime_divisors(&d_of(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClauseStatus {
    Pass,
    Fail,
    NotApplicable,
}

/// Outcome of one denominator-set clause for one index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiClause {
    pub clause: &'static str,
    pub status: ClauseStatus,
    pub expected: Option<Vec<u64>>,
    pub observed: Vec<u64>,
}

/// How an index is classified by the denominator-set clauses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexClass {
    OddPrime,
    CompositePrimeSuccessor,
    DoublyComposite,
    Other,
}

pub fn classify_index(n: i64) -> IndexClass {
    if n < 3 {
        return IndexClass::Other;
    }
    let (np, n1p) = (is_prime(n as u64), is_prime(n as u64 + 1));
    match (np, n1p) {
        (true, _) => IndexClass::OddPrime,
        (false, true) => IndexClass::CompositePrimeSuccessor,
        (false, false) => IndexClass::DoublyComposite,
    }
}

fn greatest_prime_below(n: u64) -> Option<u64> {
    (2..n).rev().find(|&k| is_prime(k))
}

/// Whether consecutive members of `pi` are consecutive primes.
pub fn gap_free(pi: &[u64]) -> bool {
    pi.windows(2)
        .all(|w| ((w[0] + 1)..w[1]).all(|k| !is_prime(k)))
}

/// Evaluates clauses 2a-2e for `A_n` with denominator set `pi`.
pub fn check_pi_clauses(n: i64, pi: &[u64]) -> Vec<PiClause> {
    let observed = pi.to_vec();
    let mut out = Vec::new();
    let clause = |name, expected: Option<Vec<u64>>, applicable: bool| {
        let status = match (&expected, applicable) {
            (_, false) => ClauseStatus::NotApplicable,
            (Some(e), true) if e.as_slice() == pi => ClauseStatus::Pass,
            (Some(_), true) => ClauseStatus::Fail,
            (None, true) => unreachable!(),
        };
        PiClause {
            clause: name,
            status,
            expected,
            observed: observed.clone(),
        }
    };
    out.push(clause("2a", Some(vec![3]), n == 2));
    out.push(PiClause {
        clause: "2b",
        status: if n < 2 {
            ClauseStatus::NotApplicable
        } else if gap_free(pi) {
            ClauseStatus::Pass
        } else {
            ClauseStatus::Fail
        },
        expected: None,
        observed: observed.clone(),
    });
    let class = classify_index(n);
    let below = |n: i64| primes_upto(greatest_prime_below(n as u64).unwrap_or(1));
    out.push(clause(
        "2c",
        (class == IndexClass::OddPrime).then(|| below(n)),
        class == IndexClass::OddPrime,
    ));
    out.push(clause(
        "2d",
        (class == IndexClass::CompositePrimeSuccessor).then(|| primes_upto(n as u64 + 1)),
        class == IndexClass::CompositePrimeSuccessor,
    ));
    out.push(clause(
        "2e",
        (class == IndexClass::DoublyComposite).then(|| below(n)),
        class == IndexClass::DoublyComposite,
    ));
    out
}
