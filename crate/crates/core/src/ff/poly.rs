use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use super::field::{factor_u64, FFElem, Field};
use crate::error::{Error, Result};

/// Dense polynomial over a finite field, ascending powers, no trailing zero.
#[derive(Clone)]
pub struct FfPoly {
    field: Arc<Field>,
    coeffs: Vec<FFElem>,
}

impl PartialEq for FfPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field.spec() == other.field.spec()
    }
}

impl Eq for FfPoly {}

impl FfPoly {
    pub fn new(field: Arc<Field>, mut coeffs: Vec<FFElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FfPoly { field, coeffs }
    }

    pub fn zero(field: Arc<Field>) -> Self {
        FfPoly::new(field, Vec::new())
    }

    pub fn constant(field: Arc<Field>, c: FFElem) -> Self {
        FfPoly::new(field, vec![c])
    }

    pub fn x(field: Arc<Field>) -> Self {
        FfPoly::new(field, vec![FFElem::ZERO, FFElem::ONE])
    }

    /// `x - r`
    pub fn linear(field: Arc<Field>, r: FFElem) -> Self {
        let c = field.neg(r);
        FfPoly::new(field, vec![c, FFElem::ONE])
    }

    /// Polynomial with prime-subfield coefficients given as integers.
    pub fn from_ints(field: Arc<Field>, coeffs: &[i64]) -> Self {
        let cs = coeffs.iter().map(|&c| field.from_int(c)).collect();
        FfPoly::new(field, cs)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FFElem {
        self.coeffs.get(i).copied().unwrap_or(FFElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FFElem::ONE]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FFElem> {
        self.coeffs.last().copied()
    }

    /// Same coefficients viewed in another field of the same characteristic
    /// containing them (prime-subfield coefficients embed in every extension).
    pub fn lift(&self, field: Arc<Field>) -> Result<Self> {
        if field.p() != self.field.p() {
            return Err(Error::arg("lift across characteristics"));
        }
        let embeds = field.spec() == self.field.spec()
            || self.coeffs.iter().all(|&c| self.field.is_prime_subfield(c));
        if !embeds {
            return Err(Error::arg("coefficients outside the prime subfield"));
        }
        Ok(FfPoly::new(field, self.coeffs.clone()))
    }

    fn same_field(&self, other: &Self) {
        debug_assert_eq!(self.field.spec(), other.field.spec());
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let cs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        FfPoly::new(f.clone(), cs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let cs = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        FfPoly::new(f.clone(), cs)
    }

    pub fn scale(&self, c: FFElem) -> Self {
        let f = &self.field;
        FfPoly::new(
            f.clone(),
            self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return FfPoly::zero(f.clone());
        }
        let mut out = vec![FFElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        FfPoly::new(f.clone(), out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = FfPoly::constant(self.field.clone(), FFElem::ONE);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        self.same_field(d);
        let f = &self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(d.coeffs[dd]).unwrap();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&sd| sd >= dd) else {
            return Ok((FfPoly::zero(f.clone()), self.clone()));
        };
        let mut quot = vec![FFElem::ZERO; sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = f.mul(rem[i + dd], lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, dc));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((FfPoly::new(f.clone(), quot), FfPoly::new(f.clone(), rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(self.field.inv(l).unwrap()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int((i as u64 % f.p()) as i64)))
            .collect();
        FfPoly::new(f.clone(), cs)
    }

    pub fn eval(&self, x: FFElem) -> FFElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FFElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mulmod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m).unwrap()
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = FfPoly::constant(self.field.clone(), FFElem::ONE)
            .rem(m)
            .unwrap();
        let base = self.rem(m).unwrap();
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m);
            if e.bit(i) {
                acc = acc.mulmod(&base, m);
            }
        }
        acc
    }

    /// `x^(q^j) mod self` by repeated `q`-th powers.
    fn x_frobenius_power(&self, j: u32) -> Self {
        let q = BigUint::from(self.field.order());
        let mut h = FfPoly::x(self.field.clone()).rem(self).unwrap();
        for _ in 0..j {
            h = h.powmod(&q, self);
        }
        h
    }

    /// Rabin's test over the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let x = FfPoly::x(self.field.clone());
        if f.x_frobenius_power(n as u32) != x.rem(&f).unwrap() {
            return false;
        }
        factor_u64(n as u64).into_iter().all(|(r, _)| {
            let h = f.x_frobenius_power((n as u64 / r) as u32);
            f.gcd(&h.sub(&x)).is_one()
        })
    }
}

impl fmt::Display for FfPoly {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return fm.write_str("0");
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = f.show(c);
            let cs = if cs.contains('+') {
                format!("({cs})")
            } else {
                cs
            };
            terms.push(match (i, c == FFElem::ONE) {
                (0, _) => cs,
                (1, true) => "x".into(),
                (1, false) => format!("{cs}*x"),
                (_, true) => format!("x^{i}"),
                (_, false) => format!("{cs}*x^{i}"),
            });
        }
        fm.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for FfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FfPoly[{}]({self})", self.field.name())
    }
}
