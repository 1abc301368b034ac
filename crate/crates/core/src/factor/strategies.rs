use std::sync::Arc;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::ff::{FFElem, FfPoly, Field};
use crate::registry::{Named, Registry};

/// Deterministic generator for the splitting steps, keyed on the field, the
/// polynomial being factored and the user seed.
pub fn seeded_rng(f: &FfPoly, seed: u64) -> ChaCha8Rng {
    let field = f.field();
    let mut h = Sha256::new();
    h.update(field.p().to_le_bytes());
    h.update(field.k().to_le_bytes());
    for c in &field.spec().modulus {
        h.update(c.to_le_bytes());
    }
    h.update((f.coeffs().len() as u64).to_le_bytes());
    for c in f.coeffs() {
        h.update(c.index().to_le_bytes());
    }
    h.update(seed.to_le_bytes());
    let digest: [u8; 32] = h.finalize().into();
    ChaCha8Rng::from_seed(digest)
}

/// Splits a monic squarefree polynomial into its monic irreducible factors.
pub trait Factorizer: Named + Send + Sync {
    fn split_squarefree(&self, f: &FfPoly, rng: &mut ChaCha8Rng) -> Vec<FfPoly>;
}

fn random_poly(field: &Arc<Field>, below: usize, rng: &mut ChaCha8Rng) -> FfPoly {
    let q = field.order();
    let cs = (0..below)
        .map(|_| field.elem(rng.random_range(0..q)))
        .collect();
    FfPoly::new(field.clone(), cs)
}

/// Polynomial whose gcd with `f` splits off part of the roots of `a`'s
/// residue classes: `a^((Q-1)/2) - 1` in odd characteristic, the absolute
/// trace of `a` in characteristic two. `Q` is the order of the residue
/// fields, `q^d`.
fn splitting_element(a: &FfPoly, f: &FfPoly, d: usize) -> FfPoly {
    let field = f.field();
    let q = BigUint::from(field.order());
    if field.p() == 2 {
        let steps = field.k() as usize * d;
        let mut term = a.rem(f).unwrap();
        let mut acc = term.clone();
        for _ in 1..steps {
            term = term.mulmod(&term, f);
            acc = acc.add(&term);
        }
        acc
    } else {
        let e = (q.pow(d as u32) - 1u32) >> 1;
        let one = FfPoly::constant(field.clone(), FFElem::ONE);
        a.powmod(&e, f).sub(&one)
    }
}

/// Distinct-degree factorisation: `(product of all degree-d factors, d)`.
pub fn distinct_degree(f: &FfPoly) -> Vec<(FfPoly, usize)> {
    let field = f.field();
    let q = BigUint::from(field.order());
    let x = FfPoly::x(field.clone());
    let mut rest = f.monic();
    let mut h = x.rem(&rest).unwrap();
    let mut out = Vec::new();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(&q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.exact_div(&g);
            h = h.rem(&rest).unwrap();
            out.push((g, d));
        }
    }
    if let Some(deg) = rest.degree().filter(|&k| k > 0) {
        out.push((rest, deg));
    }
    out
}

/// Equal-degree splitting of a product of distinct degree-`d` irreducibles.
pub fn equal_degree(f: &FfPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FfPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.monic()];
    }
    loop {
        let a = random_poly(f.field(), n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = f.gcd(&splitting_element(&a, f, d));
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.exact_div(&g), d, rng));
            return out;
        }
    }
}

/// Distinct-degree then equal-degree splitting.
pub struct CantorZassenhaus;

impl Named for CantorZassenhaus {
    fn name(&self) -> &'static str {
        "cantor-zassenhaus"
    }
}

impl Factorizer for CantorZassenhaus {
    fn split_squarefree(&self, f: &FfPoly, rng: &mut ChaCha8Rng) -> Vec<FfPoly> {
        distinct_degree(f)
            .into_iter()
            .flat_map(|(g, d)| equal_degree(&g, d, rng))
            .collect()
    }
}

/// Berlekamp's algorithm: the fixed space of `v -> v^q` modulo `f` has one
/// dimension per irreducible factor; its elements separate the factors.
pub struct Berlekamp;

impl Named for Berlekamp {
    fn name(&self) -> &'static str {
        "berlekamp"
    }
}

/// Basis of `{v : v^q = v mod f}` as polynomials of degree `< deg f`.
pub fn berlekamp_basis(f: &FfPoly) -> Vec<FfPoly> {
    let field = f.field();
    let n = f.degree().unwrap();
    let q = BigUint::from(field.order());
    let xq = FfPoly::x(field.clone()).powmod(&q, f);
    // rows[i] = x^(iq) mod f - x^i
    let mut rows = Vec::with_capacity(n);
    let mut cur = FfPoly::constant(field.clone(), FFElem::ONE);
    for i in 0..n {
        let mut row: Vec<FFElem> = (0..n).map(|j| cur.coeff(j)).collect();
        row[i] = field.sub(row[i], FFElem::ONE);
        rows.push(row);
        cur = cur.mulmod(&xq, f);
    }
    // Solve sum_i v_i rows[i] = 0: eliminate on the transpose.
    let mut m: Vec<Vec<FFElem>> = (0..n)
        .map(|j| (0..n).map(|i| rows[i][j]).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..n).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv(m[r][col]).unwrap();
        for v in m[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for i in 0..n {
            if i != r && !m[i][col].is_zero() {
                let c = m[i][col];
                for j in 0..n {
                    let t = field.mul(c, m[r][j]);
                    m[i][j] = field.sub(m[i][j], t);
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![FFElem::ZERO; n];
            v[fc] = FFElem::ONE;
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = field.neg(m[row][fc]);
            }
            FfPoly::new(field.clone(), v)
        })
        .collect()
}

const ENUMERATE_BELOW: u64 = 64;

impl Factorizer for Berlekamp {
    fn split_squarefree(&self, f: &FfPoly, rng: &mut ChaCha8Rng) -> Vec<FfPoly> {
        let f = f.monic();
        if f.degree().unwrap_or(0) <= 1 {
            return vec![f];
        }
        let basis = berlekamp_basis(&f);
        let r = basis.len();
        let field = f.field().clone();
        let mut factors = vec![f.clone()];
        if field.order() < ENUMERATE_BELOW {
            for v in basis.iter().filter(|v| v.degree().unwrap_or(0) > 0) {
                if factors.len() == r {
                    break;
                }
                let mut next = Vec::new();
                for h in factors {
                    let mut parts = vec![h];
                    for c in field.elements() {
                        let shifted = v.sub(&FfPoly::constant(field.clone(), c));
                        parts = parts
                            .into_iter()
                            .flat_map(|h| {
                                let g = h.gcd(&shifted);
                                let dg = g.degree().unwrap_or(0);
                                if dg > 0 && dg < h.degree().unwrap() {
                                    let other = h.exact_div(&g);
                                    vec![g, other]
                                } else {
                                    vec![h]
                                }
                            })
                            .collect();
                    }
                    next.extend(parts);
                }
                factors = next;
            }
        } else {
            while factors.len() < r {
                let mut a = FfPoly::zero(field.clone());
                for v in &basis {
                    let c = field.elem(rng.random_range(0..field.order()));
                    a = a.add(&v.scale(c));
                }
                let mut next = Vec::new();
                for h in factors {
                    if h.degree().unwrap() <= 1 {
                        next.push(h);
                        continue;
                    }
                    let g = h.gcd(&splitting_element(&a, &h, 1));
                    let dg = g.degree().unwrap_or(0);
                    if dg > 0 && dg < h.degree().unwrap() {
                        next.push(h.exact_div(&g));
                        next.push(g);
                    } else {
                        next.push(h);
                    }
                }
                factors = next;
            }
        }
        factors.into_iter().map(|h| h.monic()).collect()
    }
}

pub fn factorizer_registry() -> Registry<dyn Factorizer> {
    let mut reg: Registry<dyn Factorizer> = Registry::new("factorizer");
    reg.register(Arc::new(CantorZassenhaus))
        .register(Arc::new(Berlekamp));
    reg.with_default("cantor-zassenhaus")
}
