use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::FfPoly;
use crate::arith::{is_prime, Rational};
use crate::error::{Error, Result};

/// Element of a finite field, stored as the base-`p` value
/// `sum c_i p^i` of its coefficient vector over the defining modulus.
/// Elements with value below `p` form the prime subfield.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct FFElem(pub(crate) u64);

impl FFElem {
    pub const ZERO: FFElem = FFElem(0);
    pub const ONE: FFElem = FFElem(1);

    /// Base-`p` value of the coefficient vector.
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// `(p, k, modulus)`; `modulus` lists `c_0..c_{k-1}` of the monic defining
/// polynomial `x^k + sum c_i x^i` and is empty for prime fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub k: u32,
    pub modulus: Vec<u64>,
}

impl FieldSpec {
    /// Canonical name `GF(p^k)/<c0,...,c_{k-1}>`.
    pub fn name(&self) -> String {
        let cs: Vec<String> = self.modulus.iter().map(u64::to_string).collect();
        format!("GF({}^{})/<{}>", self.p, self.k, cs.join(","))
    }
}

/// Arithmetic in `F_{p^k}`.
#[derive(Debug)]
pub struct Field {
    spec: FieldSpec,
    q: u64,
    pow_p: Vec<u64>,
}

const MAX_K: usize = 64;

impl Field {
    fn with_spec(spec: FieldSpec) -> Result<Self> {
        let mut pow_p = vec![1u64];
        for _ in 0..spec.k {
            let next = pow_p
                .last()
                .unwrap()
                .checked_mul(spec.p)
                .filter(|&v| v < 1 << 62)
                .ok_or_else(|| {
                    Error::arg(format!("{}^{} does not fit in 62 bits", spec.p, spec.k))
                })?;
            pow_p.push(next);
        }
        let q = pow_p[spec.k as usize];
        Ok(Field { spec, q, pow_p })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn k(&self) -> u32 {
        self.spec.k
    }

    /// Field order `p^k`.
    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn name(&self) -> String {
        self.spec.name()
    }

    pub fn zero(&self) -> FFElem {
        FFElem::ZERO
    }

    pub fn one(&self) -> FFElem {
        FFElem::ONE
    }

    /// Element with index `i`, `0 <= i < q`.
    pub fn elem(&self, i: u64) -> FFElem {
        assert!(i < self.q, "index {i} outside a field of order {}", self.q);
        FFElem(i)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> {
        (0..self.q).map(FFElem)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FFElem {
        FFElem(v.rem_euclid(self.spec.p as i64) as u64)
    }

    pub fn is_prime_subfield(&self, e: FFElem) -> bool {
        e.0 < self.spec.p
    }

    /// Coefficient vector `c_0..c_{k-1}`.
    pub fn digits(&self, e: FFElem) -> Vec<u64> {
        let p = self.spec.p;
        let mut v = e.0;
        (0..self.spec.k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, d: &[u64]) -> FFElem {
        assert!(d.len() <= self.spec.k as usize);
        FFElem(
            d.iter()
                .zip(&self.pow_p)
                .map(|(c, pw)| (c % self.spec.p) * pw)
                .sum(),
        )
    }

    fn unpack(&self, e: FFElem, out: &mut [u64]) {
        let p = self.spec.p;
        let mut v = e.0;
        for slot in out.iter_mut().take(self.spec.k as usize) {
            *slot = v % p;
            v /= p;
        }
    }

    pub fn add(&self, a: FFElem, b: FFElem) -> FFElem {
        let p = self.spec.p;
        if self.spec.k == 1 {
            return FFElem((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut out, mut pw) = (a.0, b.0, 0u64, 1u64);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * pw;
            x /= p;
            y /= p;
            pw = pw.wrapping_mul(p);
        }
        FFElem(out)
    }

    pub fn neg(&self, a: FFElem) -> FFElem {
        let p = self.spec.p;
        if self.spec.k == 1 {
            return FFElem((p - a.0) % p);
        }
        let (mut x, mut out, mut pw) = (a.0, 0u64, 1u64);
        while x > 0 {
            out += ((p - x % p) % p) * pw;
            x /= p;
            pw = pw.wrapping_mul(p);
        }
        FFElem(out)
    }

    pub fn sub(&self, a: FFElem, b: FFElem) -> FFElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FFElem, b: FFElem) -> FFElem {
        let p = self.spec.p;
        let k = self.spec.k as usize;
        if k == 1 {
            return FFElem(a.0 * b.0 % p);
        }
        if a.0 == 0 || b.0 == 0 {
            return FFElem::ZERO;
        }
        let mut x = [0u64; MAX_K];
        let mut y = [0u64; MAX_K];
        self.unpack(a, &mut x);
        self.unpack(b, &mut y);
        let mut prod = [0u64; 2 * MAX_K];
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        // x^k = -sum c_i x^i
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for (j, m) in self.spec.modulus.iter().enumerate() {
                prod[i - k + j] = (prod[i - k + j] + c * (p - m)) % p;
            }
        }
        FFElem(
            prod[..k]
                .iter()
                .zip(&self.pow_p)
                .map(|(c, pw)| c * pw)
                .sum(),
        )
    }

    pub fn pow(&self, a: FFElem, mut e: u128) -> FFElem {
        let mut base = a;
        let mut acc = FFElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: FFElem, e: &BigUint) -> FFElem {
        let mut acc = FFElem::ONE;
        for i in (0..e.bits()).rev() {
            acc = self.mul(acc, acc);
            if e.bit(i) {
                acc = self.mul(acc, a);
            }
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FFElem) -> Option<FFElem> {
        if a.is_zero() {
            return None;
        }
        if self.spec.k == 1 {
            // extended Euclid in u64
            let p = self.spec.p as i128;
            let (mut r0, mut r1) = (p, a.0 as i128);
            let (mut t0, mut t1) = (0i128, 1i128);
            while r1 != 0 {
                let qt = r0 / r1;
                (r0, r1) = (r1, r0 - qt * r1);
                (t0, t1) = (t1, t0 - qt * t1);
            }
            return Some(FFElem(t0.rem_euclid(p) as u64));
        }
        Some(self.pow(a, self.q as u128 - 2))
    }

    pub fn div(&self, a: FFElem, b: FFElem) -> Result<FFElem> {
        let bi = self
            .inv(b)
            .ok_or_else(|| Error::arg("division by zero field element"))?;
        Ok(self.mul(a, bi))
    }

    pub fn frobenius(&self, a: FFElem) -> FFElem {
        self.pow(a, self.spec.p as u128)
    }

    /// `a^(1/p)`, the inverse of the Frobenius map.
    pub fn pth_root(&self, a: FFElem) -> FFElem {
        if self.spec.k == 1 {
            return a;
        }
        self.pow(a, self.q as u128 / self.spec.p as u128)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FFElem) -> u64 {
        assert!(!a.is_zero());
        let mut ord = self.q - 1;
        for (r, _) in factor_u64(self.q - 1) {
            while ord % r == 0 && self.pow(a, (ord / r) as u128) == FFElem::ONE {
                ord /= r;
            }
        }
        ord
    }

    pub fn show(&self, e: FFElem) -> String {
        if self.spec.k == 1 || self.is_prime_subfield(e) {
            return e.0.to_string();
        }
        let terms: Vec<String> = self
            .digits(e)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "g".into(),
                (1, c) => format!("{c}g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}g^{i}"),
            })
            .collect();
        terms.join("+")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec.name())
    }
}

/// Prime factorisation by trial division, ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn prime_field(p: u64) -> Result<Field> {
    Field::with_spec(FieldSpec {
        p,
        k: 1,
        modulus: Vec::new(),
    })
}

static FIELDS: OnceLock<Mutex<HashMap<(u64, u32), Arc<Field>>>> = OnceLock::new();

/// `F_{p^k}` with the canonical modulus: the monic irreducible of degree `k`
/// whose lower coefficient vector has the least base-`p` value. Fields are
/// memoised per process.
pub fn build_field(p: u64, k: u32) -> Result<Arc<Field>> {
    if !is_prime(p) || p >= 1 << 31 {
        return Err(Error::arg(format!("{p} is not a supported prime")));
    }
    if k == 0 {
        return Err(Error::arg("extension degree must be at least 1"));
    }
    let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let field = if k == 1 {
        prime_field(p)?
    } else {
        let base = Arc::new(prime_field(p)?);
        // validates that p^k is representable before searching
        Field::with_spec(FieldSpec {
            p,
            k,
            modulus: vec![0; k as usize],
        })?;
        let mut found = None;
        let mut digits = vec![0u64; k as usize];
        loop {
            let mut coeffs: Vec<FFElem> = digits.iter().map(|&d| FFElem(d)).collect();
            coeffs.push(FFElem::ONE);
            if digits[0] != 0 && FfPoly::new(base.clone(), coeffs).is_irreducible() {
                found = Some(digits.clone());
                break;
            }
            if !increment(&mut digits, p) {
                break;
            }
        }
        let modulus = found.expect("an irreducible polynomial exists in every degree");
        Field::with_spec(FieldSpec { p, k, modulus })?
    };
    let field = Arc::new(field);
    Ok(cache.lock().unwrap().entry((p, k)).or_insert(field).clone())
}

fn increment(digits: &mut [u64], p: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// Image of `r` in the prime subfield of `field`.
pub fn coerce(r: &Rational, field: &Field) -> Result<FFElem> {
    if r.is_zero() {
        return Ok(FFElem::ZERO);
    }
    let p = field.p();
    if r.ord_p(p)? < 0 {
        return Err(Error::CoercionDomain {
            value: r.to_string(),
            p,
        });
    }
    let pb = num_bigint::BigInt::from(p);
    let residue = |v: &num_bigint::BigInt| -> u64 {
        let m = ((v % &pb) + &pb) % &pb;
        m.to_u64().unwrap()
    };
    let num = FFElem(residue(r.numer()));
    let den = FFElem(residue(r.denom()));
    debug_assert!(!den.is_zero() || r.numer().is_zero());
    field.div(num, den)
}
