use serde::Serialize;

use super::atable::PhiSequence;
use super::recover::InterpolatedA;
use crate::arith::{QPoly, Rational};
use crate::factor::irreducibility_witness;

/// Evidence about the factored shape `C_n = phi_n (x-2)(x+2) x^(n+1) gamma_n`
/// of `C_n(x) = 2^(6n+6) x^(n+1) A_n(x)`. Nothing here is asserted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McKayReport {
    pub n: i64,
    pub skipped: bool,
    pub c_degree: Option<usize>,
    pub divisible_by_x_power: Option<bool>,
    pub divisible_by_x2_minus_4: Option<bool>,
    pub quotient_leading: Option<Rational>,
    pub phi: Option<Rational>,
    pub phi_matches_leading: Option<bool>,
    /// A prime modulo which the monic quotient stays irreducible of full
    /// degree, which certifies irreducibility over the rationals.
    pub irreducible_mod: Option<u64>,
}

/// `C_n(x) = 2^(6n+6) x^(n+1) A_n(x)`.
pub fn c_poly(a: &InterpolatedA) -> QPoly {
    let n = a.n;
    let scale = Rational::from(2).pow(6 * n + 6);
    &a.poly.scale(&scale) * &QPoly::monomial(Rational::one(), (n + 1) as usize)
}

/// Examines a candidate `C_n`, either interpolated from the `j_m` expansions
/// or built from `A_n` by [`c_poly`].
pub fn mckay_structure_report(n: i64, c: &QPoly, phi: &PhiSequence) -> McKayReport {
    let mut rep = McKayReport {
        n,
        skipped: true,
        c_degree: None,
        divisible_by_x_power: None,
        divisible_by_x2_minus_4: None,
        quotient_leading: None,
        phi: phi.get(n).cloned().map(Rational::from),
        phi_matches_leading: None,
        irreducible_mod: None,
    };
    if n < 0 {
        return rep;
    }
    rep.skipped = false;
    rep.c_degree = c.degree();
    let xk = QPoly::monomial(Rational::one(), (n + 1) as usize);
    let (q1, r1) = c.divrem(&xk).expect("nonzero divisor");
    rep.divisible_by_x_power = Some(r1.is_zero());
    let quad = QPoly::from_ints(&[-4, 0, 1]);
    let (q2, r2) = q1.divrem(&quad).expect("nonzero divisor");
    let divisible = r1.is_zero() && r2.is_zero();
    rep.divisible_by_x2_minus_4 = Some(r2.is_zero());
    if divisible {
        let lead = q2.leading().cloned();
        rep.phi_matches_leading = match (&lead, &rep.phi) {
            (Some(l), Some(f)) => Some(l == f),
            _ => None,
        };
        rep.quotient_leading = lead;
        rep.irreducible_mod = irreducibility_witness(&q2.monic(), 60);
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::Source;

    #[test]
    fn n0_obstruction() {
        let a0 = InterpolatedA::new(0, QPoly::from_ints(&[4, 0, 3]), Source::Generated);
        let rep = mckay_structure_report(0, &c_poly(&a0), &PhiSequence::default());
        assert!(!rep.skipped);
        assert_eq!(rep.divisible_by_x2_minus_4, Some(false));
        assert_eq!(rep.phi, Some(Rational::from(24)));
        assert_eq!(rep.c_degree, Some(3));
        let am1 = InterpolatedA::new(-1, QPoly::from_ints(&[1]), Source::Generated);
        assert!(mckay_structure_report(-1, &c_poly(&am1), &PhiSequence::default()).skipped);
    }

    #[test]
    fn divisible_case() {
        // A_0 = x^2 - 4 would make C_0 = 64 x (x^2 - 4)
        let a = InterpolatedA::new(0, QPoly::from_ints(&[-4, 0, 1]), Source::Generated);
        let rep = mckay_structure_report(0, &c_poly(&a), &PhiSequence::default());
        assert_eq!(rep.divisible_by_x2_minus_4, Some(true));
        assert_eq!(rep.quotient_leading, Some(Rational::from(64)));
        assert_eq!(rep.phi_matches_leading, Some(false));
    }
}
