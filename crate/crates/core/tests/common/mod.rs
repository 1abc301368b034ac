//! Test-only oracles, written independently of the library algorithms.

#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use heckemod_core::ff::{FFElem, FfPoly, Field};

/// Coefficients of `q^-1, q^0, ..., q^(terms-2)` in `E4^3 / Delta`, from the
/// divisor sums `sigma_3` and the product `Delta = q prod (1 - q^n)^24`.
pub fn klein_j(terms: usize) -> Vec<BigInt> {
    let sigma3 = |n: usize| -> BigInt {
        (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| BigInt::from(d).pow(3))
            .sum()
    };
    let mul = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::from(0); terms];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate().take(terms - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut e4 = vec![BigInt::from(1)];
    e4.extend((1..terms).map(|n| 240 * sigma3(n)));
    let e4_cubed = mul(&mul(&e4, &e4), &e4);
    // prod (1 - q^n)^24, truncated
    let mut d = vec![BigInt::from(0); terms];
    d[0] = BigInt::from(1);
    for n in 1..terms {
        for _ in 0..24 {
            for k in (n..terms).rev() {
                let t = d[k - n].clone();
                d[k] -= t;
            }
        }
    }
    // 1/d, d[0] = 1
    let mut inv = vec![BigInt::from(0); terms];
    inv[0] = BigInt::from(1);
    for k in 1..terms {
        let s: BigInt = (1..=k).map(|i| &d[i] * &inv[k - i]).sum();
        inv[k] = -s;
    }
    mul(&e4_cubed, &inv)
}

/// A random polynomial of exact degree `deg`; with `square` set, the result
/// is `g * h^2` so that repeated factors occur.
pub fn random_poly(field: &Arc<Field>, deg: usize, square: bool, rng: &mut ChaCha8Rng) -> FfPoly {
    let q = field.order();
    let mut draw = |d: usize| {
        let mut cs: Vec<FFElem> = (0..d).map(|_| field.elem(rng.random_range(0..q))).collect();
        cs.push(field.elem(rng.random_range(1..q)));
        FfPoly::new(field.clone(), cs)
    };
    if square && deg >= 3 {
        let h = draw(deg / 3);
        let g = draw(deg - 2 * (deg / 3));
        g.mul(&h.mul(&h))
    } else {
        draw(deg)
    }
}

/// Roots of `f` in `field` with multiplicity, by trial of every element.
pub fn brute_roots(f: &FfPoly, field: &Arc<Field>) -> Vec<(FFElem, usize)> {
    let mut g = f.lift(field.clone()).expect("same characteristic");
    let mut out = Vec::new();
    for e in field.elements() {
        let mut m = 0;
        while g.degree().unwrap_or(0) > 0 && g.eval(e).is_zero() {
            g = g.exact_div(&FfPoly::linear(field.clone(), e));
            m += 1;
        }
        if m > 0 {
            out.push((e, m));
        }
    }
    out
}
