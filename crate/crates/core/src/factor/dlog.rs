use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ff::{factor_u64, FFElem, Field};
use crate::registry::{Named, Registry};

/// Least element, by index, of multiplicative order `q - 1`.
pub fn find_generator(field: &Field, budget: u128) -> Result<FFElem> {
    let q = field.order();
    if q as u128 > budget {
        return Err(Error::BudgetExceeded {
            order: q as u128,
            budget,
        });
    }
    (1..q)
        .map(|i| field.elem(i))
        .find(|&e| field.mult_order(e) == q - 1)
        .ok_or_else(|| Error::arg(format!("no generator found in {}", field.name())))
}

/// `k` in `0..q-1` with `t^k = s`, for a generator `t`.
pub trait DlogSolver: Named + Send + Sync {
    fn dlog(&self, field: &Field, t: FFElem, s: FFElem) -> Result<u64>;
}

fn nonzero(s: FFElem) -> Result<()> {
    if s.is_zero() {
        return Err(Error::arg("discrete logarithm of zero"));
    }
    Ok(())
}

/// Walks the powers of `t`.
pub struct Exhaustive;

impl Named for Exhaustive {
    fn name(&self) -> &'static str {
        "exhaustive"
    }
}

impl DlogSolver for Exhaustive {
    fn dlog(&self, field: &Field, t: FFElem, s: FFElem) -> Result<u64> {
        nonzero(s)?;
        let mut acc = FFElem::ONE;
        for k in 0..field.order() - 1 {
            if acc == s {
                return Ok(k);
            }
            acc = field.mul(acc, t);
        }
        Err(Error::arg(format!(
            "{} is not a power of the base",
            field.show(s)
        )))
    }
}

/// `k` in `0..order` with `g^k = h`, where `g` has the given order.
fn bsgs(field: &Field, g: FFElem, h: FFElem, order: u64) -> Option<u64> {
    let m = (order as f64).sqrt().ceil() as u64 + 1;
    let mut baby = HashMap::with_capacity(m as usize);
    let mut acc = FFElem::ONE;
    for j in 0..m {
        baby.entry(acc).or_insert(j);
        acc = field.mul(acc, g);
    }
    let giant = field.inv(field.pow(g, m as u128))?;
    let mut gamma = h;
    for i in 0..=m {
        if let Some(&j) = baby.get(&gamma) {
            let k = i * m + j;
            if k < order {
                return Some(k);
            }
        }
        gamma = field.mul(gamma, giant);
    }
    None
}

/// Baby-step giant-step in the full group.
pub struct BabyStepGiantStep;

impl Named for BabyStepGiantStep {
    fn name(&self) -> &'static str {
        "bsgs"
    }
}

impl DlogSolver for BabyStepGiantStep {
    fn dlog(&self, field: &Field, t: FFElem, s: FFElem) -> Result<u64> {
        nonzero(s)?;
        bsgs(field, t, s, field.order() - 1)
            .ok_or_else(|| Error::arg(format!("{} is not a power of the base", field.show(s))))
    }
}

/// Pohlig-Hellman reduction to prime-order subgroups, each solved by
/// baby-step giant-step, recombined by the Chinese remainder theorem.
pub struct PohligHellman;

impl Named for PohligHellman {
    fn name(&self) -> &'static str {
        "pohlig-hellman"
    }
}

impl DlogSolver for PohligHellman {
    fn dlog(&self, field: &Field, t: FFElem, s: FFElem) -> Result<u64> {
        nonzero(s)?;
        let n = field.order() - 1;
        let missing = || Error::arg(format!("{} is not a power of the base", field.show(s)));
        let (mut x, mut modulus) = (BigInt::from(0), BigInt::from(1));
        for (r, e) in factor_u64(n) {
            let re = r.pow(e);
            // t^(n/r) has order r
            let gamma = field.pow(t, (n / r) as u128);
            let mut xk = 0u64;
            let mut rk = 1u64;
            for k in 0..e {
                let tk = field.pow(field.inv(t).unwrap(), xk as u128);
                let hk = field.pow(field.mul(tk, s), (n / (rk * r)) as u128);
                let dk = bsgs(field, gamma, hk, r).ok_or_else(missing)?;
                xk += dk * rk;
                if k + 1 < e {
                    rk *= r;
                }
            }
            // combine x = xk mod r^e
            let re_b = BigInt::from(re);
            let g = modulus.extended_gcd(&re_b);
            let diff = BigInt::from(xk) - &x;
            let step = (diff * g.x).mod_floor(&re_b);
            x += &modulus * step;
            modulus *= re_b;
            x = x.mod_floor(&modulus);
        }
        x.to_u64().ok_or_else(missing)
    }
}

pub fn dlog_registry() -> Registry<dyn DlogSolver> {
    let mut reg: Registry<dyn DlogSolver> = Registry::new("dlog");
    reg.register(Arc::new(PohligHellman))
        .register(Arc::new(BabyStepGiantStep))
        .register(Arc::new(Exhaustive));
    reg.with_default("pohlig-hellman")
}

/// Base-`p` digits of `k`, least significant first, padded to `width`.
pub fn base_p_expansion(k: u64, p: u64, width: usize) -> Result<Vec<u64>> {
    let mut digits = Vec::with_capacity(width);
    let mut v = k;
    for _ in 0..width {
        digits.push(v % p);
        v /= p;
    }
    if v != 0 {
        return Err(Error::arg(format!(
            "{k} needs more than {width} base-{p} digits"
        )));
    }
    Ok(digits)
}

/// Least `j > 0` such that rotating by `j` fixes the sequence.
pub fn rotation_period(digits: &[u64]) -> usize {
    let n = digits.len();
    (1..=n)
        .find(|&j| n % j == 0 && (0..n).all(|i| digits[i] == digits[(i + j) % n]))
        .unwrap_or(n.max(1))
}

/// `{s, s^p, s^(p^2), ...}` in the order generated.
pub fn frobenius_orbit(field: &Field, s: FFElem) -> Vec<FFElem> {
    let mut orbit = vec![s];
    let mut cur = field.frobenius(s);
    while cur != s {
        orbit.push(cur);
        cur = field.frobenius(cur);
    }
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::build_field;

    const BUDGET: u128 = 1 << 31;

    #[test]
    fn generators() {
        let f5 = build_field(5, 1).unwrap();
        assert_eq!(find_generator(&f5, BUDGET).unwrap(), f5.from_int(2));
        let f7 = build_field(7, 1).unwrap();
        assert_eq!(find_generator(&f7, BUDGET).unwrap(), f7.from_int(3));
        let f9 = build_field(3, 2).unwrap();
        assert_eq!(f9.spec().modulus, vec![1, 0]);
        // x + 1
        assert_eq!(
            find_generator(&f9, BUDGET).unwrap(),
            f9.from_digits(&[1, 1])
        );
        assert!(matches!(
            find_generator(&f9, 8),
            Err(Error::BudgetExceeded {
                order: 9,
                budget: 8
            })
        ));
    }

    #[test]
    fn dlog_examples() {
        let f5 = build_field(5, 1).unwrap();
        let f9 = build_field(3, 2).unwrap();
        let t9 = f9.from_digits(&[1, 1]);
        for name in dlog_registry().names() {
            let solver = dlog_registry().get(name).unwrap();
            assert_eq!(solver.dlog(&f5, f5.from_int(2), f5.from_int(4)).unwrap(), 2);
            assert_eq!(solver.dlog(&f9, t9, f9.from_int(2)).unwrap(), 4);
            assert_eq!(solver.dlog(&f9, t9, FFElem::ONE).unwrap(), 0);
            assert!(solver.dlog(&f9, t9, FFElem::ZERO).is_err());
        }
    }

    #[test]
    fn expansions() {
        assert_eq!(base_p_expansion(7, 3, 2).unwrap(), vec![1, 2]);
        assert_eq!(
            base_p_expansion(29412, 7, 6).unwrap(),
            vec![5, 1, 5, 1, 5, 1]
        );
        assert_eq!(
            base_p_expansion(88236, 7, 6).unwrap(),
            vec![1, 5, 1, 5, 1, 5]
        );
        assert_eq!(base_p_expansion(4, 2, 3).unwrap(), vec![0, 0, 1]);
        assert!(base_p_expansion(9, 3, 2).is_err());
        assert_eq!(rotation_period(&[5, 1, 5, 1, 5, 1]), 2);
        assert_eq!(rotation_period(&[1, 2]), 2);
        assert_eq!(rotation_period(&[3, 3, 3]), 1);
    }

    #[test]
    fn orbits() {
        let f9 = build_field(3, 2).unwrap();
        let t = f9.from_digits(&[1, 1]);
        assert_eq!(frobenius_orbit(&f9, f9.from_int(2)), vec![f9.from_int(2)]);
        let o = frobenius_orbit(&f9, t);
        assert_eq!(o, vec![t, f9.pow(t, 3)]);

        let f = build_field(7, 6).unwrap();
        let g = find_generator(&f, BUDGET).unwrap();
        let r = f.pow(g, 29412);
        assert_eq!(frobenius_orbit(&f, r), vec![r, f.pow(g, 88236)]);
        assert_eq!(PohligHellman.dlog(&f, g, r).unwrap(), 29412);
    }
}
