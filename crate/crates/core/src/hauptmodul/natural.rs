use crate::arith::{LaurentSeries, Rational};
use crate::error::{Error, Result};

/// Hypergeometric data of the Hecke group with index `m`.
///
/// The local exponents at the three singular points are `1 - c = 1/m`,
/// `c - 2a = 1/2` and `0` (equal upper parameters `a` and `b`, up to the
/// symmetry `b = a + 1 - c`), matching the triangle angles `pi/m`, `pi/2`, `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeParams {
    pub m: u32,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

pub fn hyper_params(m: u32) -> Result<HeckeParams> {
    if m < 3 {
        return Err(Error::arg(format!(
            "Hecke index m = {m} must be at least 3"
        )));
    }
    let mr = Rational::from(m);
    let a = Rational::new(1, 4) - Rational::new(1, 2) / &mr;
    let c = Rational::one() - mr.recip();
    let b = &a + Rational::one() - &c;
    Ok(HeckeParams { m, a, b, c })
}

/// Frobenius solutions at the cusp: the holomorphic `F = 2F1(a, b; 1; w)`
/// and the coefficient series `G` of its logarithmic partner
/// `F log w + G`, normalised by `g_0 = 0`. Both are exact below `X^order`.
pub fn frobenius_pair(m: u32, order: usize) -> Result<(LaurentSeries, LaurentSeries)> {
    if order < 2 {
        return Err(Error::arg(format!(
            "series order {order} must be at least 2"
        )));
    }
    let hp = hyper_params(m)?;
    let mut f = Vec::with_capacity(order);
    let mut g = Vec::with_capacity(order);
    let mut fk = Rational::one();
    let mut harmonic = Rational::zero();
    f.push(fk.clone());
    g.push(Rational::zero());
    let two = Rational::from(2);
    for k in 1..order {
        let j = Rational::from(k - 1);
        let aj = &hp.a + &j;
        let bj = &hp.b + &j;
        let kk = Rational::from(k);
        fk = fk * &aj * &bj / (&kk * &kk);
        harmonic = harmonic + aj.recip() + bj.recip() - &two / &kk;
        g.push(&fk * &harmonic);
        f.push(fk.clone());
    }
    Ok((
        LaurentSeries::power(f, order as i64),
        LaurentSeries::power(g, order as i64),
    ))
}

/// Coefficients `â_{-1}, â_0, ..., â_{terms-2}` of `Ĵ = 1/X̂ + sum â_n X̂^n`
/// where `X̂ = w exp(G/F)` is the canonical local parameter at the cusp.
pub fn expansion_from_pair(
    f: &LaurentSeries,
    g: &LaurentSeries,
    terms: usize,
) -> Result<Vec<Rational>> {
    let q = g.mul(&f.reciprocal()?);
    let xhat = q.exp()?.shift(1);
    let w = xhat.revert()?;
    let jhat = w.reciprocal()?;
    let available = jhat.trunc();
    let requested = terms as i64 - 1;
    if requested > available {
        return Err(Error::Precision {
            requested,
            available,
        });
    }
    Ok((-1..requested).map(|e| jhat.coeff(e).unwrap()).collect())
}

/// Natural expansion `â_{-1..order-1}` for index `m` (`order + 1` values).
pub fn natural_expansion(m: u32, order: usize) -> Result<Vec<Rational>> {
    let (f, g) = frobenius_pair(m, order.max(1) + 1)?;
    expansion_from_pair(&f, &g, order + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn params_examples() {
        let p3 = hyper_params(3).unwrap();
        assert_eq!((p3.a.clone(), p3.c.clone()), (q(1, 12), q(2, 3)));
        assert_eq!(p3.b, q(5, 12));
        let p4 = hyper_params(4).unwrap();
        assert_eq!((p4.a, p4.c), (q(1, 8), q(3, 4)));
        let p5 = hyper_params(5).unwrap();
        assert_eq!((p5.a, p5.c), (q(3, 20), q(4, 5)));
        assert!(hyper_params(2).is_err());
    }

    #[test]
    fn exponent_differences() {
        for m in 3..30 {
            let hp = hyper_params(m).unwrap();
            assert_eq!(Rational::one() - &hp.c, q(1, m as i64));
            assert_eq!(&hp.c - &hp.a - &hp.a, q(1, 2));
            assert!(hp.a > Rational::zero() && hp.a < q(1, 4));
        }
    }

    #[test]
    fn first_frobenius_coefficients() {
        let (f, g) = frobenius_pair(3, 4).unwrap();
        assert_eq!(f.coeff(1).unwrap(), q(5, 144));
        assert_eq!(g.coeff(0).unwrap(), Rational::zero());
        assert_eq!(g.coeff(1).unwrap(), q(31, 72));
    }

    #[test]
    fn natural_expansion_m3() {
        let a = natural_expansion(3, 3).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a[0], Rational::one());
        assert_eq!(a[1], q(31, 72));
        assert_eq!(&a[2] * Rational::from(1728 * 1728), Rational::from(196884));
        assert_eq!(a[2], q(5469, 82944));
    }

    #[test]
    fn precision_shortfall() {
        let (f, g) = frobenius_pair(3, 4).unwrap();
        assert!(expansion_from_pair(&f, &g, 4).is_ok());
        assert!(matches!(
            expansion_from_pair(&f, &g, 6),
            Err(Error::Precision { .. })
        ));
    }

    #[test]
    fn constant_term_closed_form() {
        for m in 3..=20i64 {
            let a = natural_expansion(m as u32, 2).unwrap();
            assert_eq!(a[1], q(3 * m * m + 4, 8 * m * m), "m = {m}");
        }
    }
}
