use std::fmt;

use super::Rational;
use crate::error::{Error, Result};

const EXACT: i64 = i64::MAX / 8;

/// Truncated Laurent series `sum_{e = lead}^{trunc - 1} c_e X^e + O(X^trunc)`.
///
/// The coefficient at `lead` is nonzero unless the series is zero to its
/// truncation, in which case `lead == trunc` and no coefficients are stored.
/// Trailing zero coefficients below the truncation are not stored.
/// Results of arithmetic carry exactly the precision the operands justify;
/// precision is never extended.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    lead: i64,
    coeffs: Vec<Rational>,
    trunc: i64,
}

impl LaurentSeries {
    /// Builds a series from coefficients starting at exponent `lead`; missing
    /// coefficients up to `trunc` are zero, extra ones are dropped.
    pub fn new(lead: i64, mut coeffs: Vec<Rational>, trunc: i64) -> Self {
        let len = (trunc - lead).max(0) as usize;
        coeffs.truncate(len);
        let mut s = LaurentSeries {
            lead: lead.min(trunc),
            coeffs,
            trunc,
        };
        s.normalize();
        s
    }

    /// Power series `sum c_i X^i + O(X^trunc)`.
    pub fn power(coeffs: Vec<Rational>, trunc: i64) -> Self {
        LaurentSeries::new(0, coeffs, trunc)
    }

    pub fn zero(trunc: i64) -> Self {
        LaurentSeries::new(trunc, Vec::new(), trunc)
    }

    /// `X^e + O(X^trunc)`
    pub fn monomial(c: Rational, e: i64, trunc: i64) -> Self {
        LaurentSeries::new(e, vec![c], trunc)
    }

    /// Series known exactly (truncation far beyond any use).
    pub fn exact(lead: i64, coeffs: Vec<Rational>) -> Self {
        LaurentSeries::new(lead, coeffs, EXACT)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Rational::is_zero) {
            self.coeffs.pop();
        }
        let nz = self.coeffs.iter().position(|c| !c.is_zero());
        match nz {
            None => {
                self.coeffs.clear();
                self.lead = self.trunc;
            }
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.lead += k as i64;
            }
        }
    }

    pub fn lead_index(&self) -> i64 {
        self.lead
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Coefficient of `X^e`; `None` at or beyond the truncation order.
    pub fn coeff(&self, e: i64) -> Option<Rational> {
        if e >= self.trunc {
            None
        } else if e < self.lead {
            Some(Rational::zero())
        } else {
            Some(
                self.coeffs
                    .get((e - self.lead) as usize)
                    .cloned()
                    .unwrap_or_default(),
            )
        }
    }

    /// Coefficients of `X^from .. X^(trunc-1)`.
    pub fn coeffs_from(&self, from: i64) -> Vec<Rational> {
        (from..self.trunc).map(|e| self.coeff(e).unwrap()).collect()
    }

    pub fn truncate(&self, trunc: i64) -> Self {
        let t = trunc.min(self.trunc);
        LaurentSeries::new(self.lead, self.coeffs.clone(), t)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LaurentSeries::new(
            self.lead,
            self.coeffs.iter().map(|a| a * c).collect(),
            self.trunc,
        )
    }

    fn explicit_end(&self) -> i64 {
        self.lead + self.coeffs.len() as i64
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            lead: self.lead + k,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc + k,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let t = self.trunc.min(other.trunc);
        let l = self.lead.min(other.lead).min(t);
        let end = self.explicit_end().max(other.explicit_end()).min(t);
        let coeffs = (l..end)
            .map(|e| self.coeff(e).unwrap() + other.coeff(e).unwrap())
            .collect();
        LaurentSeries::new(l, coeffs, t)
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = (self.lead.saturating_add(other.trunc))
            .min(other.lead.saturating_add(self.trunc))
            .min(EXACT);
        let l = self.lead + other.lead;
        if self.is_zero() || other.is_zero() || l >= t {
            return LaurentSeries::zero(t);
        }
        let len = ((t - l) as usize).min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += &(a * b);
            }
        }
        LaurentSeries::new(l, out, t)
    }

    /// Multiplicative inverse. The result has lead `-lead` and the same
    /// relative precision, so its truncation order is `trunc - 2 lead`.
    pub fn reciprocal(&self) -> Result<Self> {
        let u0 = self.leading_coeff().ok_or_else(|| Error::SeriesContract {
            series: self.to_string(),
            reason: "reciprocal of a series with no nonzero coefficient".into(),
        })?;
        let r = (self.trunc - self.lead) as usize;
        let inv0 = u0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(r);
        out.push(inv0.clone());
        for k in 1..r {
            let mut s = Rational::zero();
            for (i, c) in self.coeffs.iter().enumerate().take(k + 1).skip(1) {
                if !c.is_zero() {
                    s += &(c * &out[k - i]);
                }
            }
            out.push(-(s * &inv0));
        }
        Ok(LaurentSeries::new(
            -self.lead,
            out,
            self.trunc - 2 * self.lead,
        ))
    }

    /// `exp(self)` for a series without constant or polar part.
    pub fn exp(&self) -> Result<Self> {
        if self.lead < 1 || self.trunc < 1 {
            return Err(Error::SeriesContract {
                series: self.to_string(),
                reason: "exp requires a series of the form O(X)".into(),
            });
        }
        let t = self.trunc as usize;
        let a: Vec<Rational> = (0..t as i64).map(|e| self.coeff(e).unwrap()).collect();
        let mut r: Vec<Rational> = Vec::with_capacity(t);
        r.push(Rational::one());
        for k in 1..t {
            let mut s = Rational::zero();
            for (i, ai) in a.iter().enumerate().take(k + 1).skip(1) {
                if !ai.is_zero() {
                    s += &(ai * &r[k - i] * Rational::from(i));
                }
            }
            r.push(s / Rational::from(k));
        }
        Ok(LaurentSeries::power(r, self.trunc))
    }

    /// Integer power; negative exponents go through [`Self::reciprocal`].
    pub fn powi(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.reciprocal()?.powi(-k);
        }
        let one = LaurentSeries::exact(0, vec![Rational::one()]);
        let mut acc = one;
        for _ in 0..k {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    /// `self(inner(X))` for `inner = O(X)` nonzero.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.is_zero() || inner.lead < 1 {
            return Err(Error::SeriesContract {
                series: inner.to_string(),
                reason: "inner series of a composition must be O(X) and nonzero".into(),
            });
        }
        let mut t = inner.lead.saturating_mul(self.trunc);
        let mut terms: Vec<LaurentSeries> = Vec::new();
        let mut pos_power: Option<LaurentSeries> = None;
        let neg_base = if self.lead < 0 {
            Some(inner.reciprocal()?)
        } else {
            None
        };
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.lead + i as i64;
            let power = if k < 0 {
                neg_base.as_ref().unwrap().powi(-k)?
            } else if k == 0 {
                LaurentSeries::exact(0, vec![Rational::one()])
            } else {
                let next = match pos_power.take() {
                    None => inner.powi(k)?,
                    Some(prev) => prev.mul(inner),
                };
                pos_power = Some(next.clone());
                next
            };
            if c.is_zero() {
                continue;
            }
            t = t.min(power.trunc);
            terms.push(power.scale(c));
        }
        let mut acc = LaurentSeries::zero(t);
        for term in &terms {
            acc = acc.add(&term.truncate(t));
        }
        Ok(acc.truncate(t))
    }

    /// Compositional inverse of `f = c X + O(X^2)`, `c != 0`, by Lagrange
    /// inversion: `[X^k] g = (1/k) [w^(k-1)] (w / f(w))^k`.
    pub fn revert(&self) -> Result<Self> {
        if self.lead != 1 {
            return Err(Error::SeriesContract {
                series: self.to_string(),
                reason: "reversion requires a series of the form cX + O(X^2)".into(),
            });
        }
        // f / X has lead 0; its reciprocal is w / f(w).
        let u = LaurentSeries::new(0, self.coeffs.clone(), self.trunc - 1);
        let h = u.reciprocal()?;
        let r = h.trunc; // exponents 0..r-1 of h are exact
        let mut out = vec![Rational::zero(); r.max(0) as usize + 1];
        let mut hk = LaurentSeries::monomial(Rational::one(), 0, r);
        for k in 1..=r {
            hk = hk.mul(&h);
            let c = hk.coeff(k - 1).expect("within precision");
            out[k as usize] = c / Rational::from(k);
        }
        Ok(LaurentSeries::new(0, out, self.trunc))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.lead + i as i64;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*X")?,
                _ => write!(f, "{c}*X^{e}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(X^{})", self.trunc)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
