use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::field::{coerce, FFElem, Field};
use super::poly::FfPoly;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::interp::{k_of, kp_of, InterpolatedA};

/// Which denominator-clearing operator precedes coercion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// `A_n[p]`, from `K(A_n)`
    K,
    /// the calligraphic model, from `K_p(A_n)`
    Kp,
}

/// A reduced model of `A_n` as a polynomial self-map of a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelPoly {
    pub n: i64,
    pub p: u64,
    pub variant: Variant,
    pub poly: FfPoly,
}

impl ModelPoly {
    pub fn field(&self) -> &Arc<Field> {
        self.poly.field()
    }

    /// Same model over another field of characteristic `p`.
    pub fn lift(&self, field: Arc<Field>) -> Result<Self> {
        Ok(ModelPoly {
            poly: self.poly.lift(field)?,
            ..self.clone()
        })
    }
}

fn cleared(a: &InterpolatedA, p: u64, variant: Variant) -> crate::arith::QPoly {
    match variant {
        Variant::K => k_of(&a.poly),
        Variant::Kp => kp_of(&a.poly, p),
    }
}

pub fn model(a: &InterpolatedA, field: &Arc<Field>, variant: Variant) -> Result<ModelPoly> {
    let p = field.p();
    let cleared = cleared(a, p, variant);
    let coeffs = cleared
        .coeffs()
        .iter()
        .map(|c| coerce(c, field))
        .collect::<Result<Vec<_>>>()?;
    let poly = FfPoly::new(field.clone(), coeffs);
    if poly.is_zero() {
        return Err(Error::DegenerateModel { n: a.n, p });
    }
    Ok(ModelPoly {
        n: a.n,
        p,
        variant,
        poly,
    })
}

/// Scalar data attached to `(n, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelMeta {
    pub n: i64,
    pub p: u64,
    pub modnp: u64,
    pub delta: i64,
    pub a: Rational,
    pub a_star: Rational,
    pub r: u64,
    pub r_star: u64,
    pub alpha: FFElem,
    pub alpha_star: FFElem,
}

/// `mod(n, p)` in `0..p`, also for negative `n`.
pub fn mod_np(n: i64, p: u64) -> u64 {
    n.rem_euclid(p as i64) as u64
}

/// `delta(n, p) = (n - mod(n, p)) / p`.
pub fn delta(n: i64, p: u64) -> i64 {
    (n - mod_np(n, p) as i64) / p as i64
}

/// Highest-degree coefficient of `poly` with `p`-order zero.
fn leading_unit(poly: &crate::arith::QPoly, p: u64) -> Option<Rational> {
    poly.coeffs()
        .iter()
        .rev()
        .find(|c| !c.is_zero() && c.ord_p(p).ok() == Some(0))
        .cloned()
}

pub fn model_meta(a: &InterpolatedA, field: &Field) -> Result<ModelMeta> {
    let p = field.p();
    let degenerate = || Error::DegenerateModel { n: a.n, p };
    let k = k_of(&a.poly);
    let a_lead = leading_unit(&k, p).ok_or_else(degenerate)?;
    let a_star = leading_unit(&kp_of(&a.poly, p), p).ok_or_else(degenerate)?;
    let alpha = coerce(&a_lead, field)?;
    let alpha_star = coerce(&a_star, field)?;
    Ok(ModelMeta {
        n: a.n,
        p,
        modnp: mod_np(a.n, p),
        delta: delta(a.n, p),
        a: a_lead.clone(),
        a_star,
        r: alpha.index(),
        r_star: alpha_star.index(),
        alpha,
        alpha_star,
    })
}

/// `(A, p)`-equivalence: same residue mod `p` and same splitting degree.
pub fn equivalent_ap(n1: i64, n2: i64, p: u64, s1: u32, s2: u32) -> bool {
    mod_np(n1, p) == mod_np(n2, p) && s1 == s2
}

/// Equality as self-maps, by evaluation at every field element.
pub fn equal_as_maps(f: &FfPoly, g: &FfPoly) -> Result<bool> {
    if f.field().spec() != g.field().spec() {
        return Err(Error::arg(format!(
            "maps over different fields {} and {}",
            f.field().name(),
            g.field().name()
        )));
    }
    Ok(f.field().elements().all(|s| f.eval(s) == g.eval(s)))
}

/// The nonzero prime-subfield scalar `lambda` with `K-model = lambda * Kp-model`.
pub fn model_ratio(k: &ModelPoly, kp: &ModelPoly) -> Option<FFElem> {
    let f = k.field();
    let (lk, lkp) = (k.poly.leading()?, kp.poly.leading()?);
    let lambda = f.div(lk, lkp).ok()?;
    (kp.poly.scale(lambda) == k.poly && f.is_prime_subfield(lambda)).then_some(lambda)
}

/// Residue of an integer coefficient, exposed for reports.
pub fn residue(v: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    (((v % &pb) + &pb) % &pb).to_u64().unwrap()
}
