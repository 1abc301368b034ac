//! Factorisation of models over finite fields, splitting degrees, discrete
//! logarithms, Frobenius orbits and the printed factorisation tables.

mod dlog;
mod profile;
mod squarefree;
mod strategies;
mod tables;

use std::sync::Arc;

use num_integer::Integer;

pub use dlog::{
    base_p_expansion, dlog_registry, find_generator, frobenius_orbit, rotation_period,
    BabyStepGiantStep, DlogSolver, Exhaustive, PohligHellman,
};
pub use profile::{root_profile, OrbitRecord, RootProfile};
pub use squarefree::squarefree;
pub use strategies::{
    berlekamp_basis, distinct_degree, equal_degree, factorizer_registry, seeded_rng, Berlekamp,
    CantorZassenhaus, Factorizer,
};
pub use tables::{printed_s_a, shape_match, table_rows, MultExpr, RowStatus, ShapeMatch, TableRow};

use crate::arith::{is_prime, QPoly};
use crate::error::{Error, Result};
use crate::ff::{build_field, coerce, model, FFElem, FfPoly, Variant};
use crate::interp::InterpolatedA;

/// `unit * prod(factor^mult)`, factors monic irreducible and sorted by
/// degree, then coefficients, then multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FFElem,
    pub factors: Vec<(FfPoly, usize)>,
}

impl Factorization {
    pub fn reassemble(&self, field: &Arc<crate::ff::Field>) -> FfPoly {
        self.factors
            .iter()
            .fold(FfPoly::constant(field.clone(), self.unit), |acc, (g, m)| {
                acc.mul(&g.pow(*m))
            })
    }

    /// Distinct irreducible degrees, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self
            .factors
            .iter()
            .map(|(g, _)| g.degree().unwrap())
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }
}

fn sort_key(g: &FfPoly, m: usize) -> (usize, Vec<u64>, usize) {
    let cs = g.coeffs().iter().rev().map(|c| c.index()).collect();
    (g.degree().unwrap_or(0), cs, m)
}

/// Complete factorisation of a nonzero polynomial with the given strategy.
pub fn factor_with(f: &FfPoly, strategy: &dyn Factorizer, seed: u64) -> Result<Factorization> {
    let unit = f
        .leading()
        .ok_or_else(|| Error::arg("factorisation of the zero polynomial"))?;
    let mut factors = Vec::new();
    let mut rng = seeded_rng(f, seed);
    for (part, m) in squarefree(f)? {
        for g in strategy.split_squarefree(&part, &mut rng) {
            factors.push((g, m));
        }
    }
    factors.sort_by_key(|(g, m)| sort_key(g, *m));
    Ok(Factorization { unit, factors })
}

/// Factorisation with the default strategy.
pub fn factor(f: &FfPoly, seed: u64) -> Result<Factorization> {
    factor_with(f, factorizer_registry().default_strategy().as_ref(), seed)
}

/// `lcm` of the irreducible factor degrees; `1` for constants.
pub fn splitting_degree_of(fact: &Factorization) -> u32 {
    fact.degrees()
        .into_iter()
        .fold(1usize, |acc, d| acc.lcm(&d)) as u32
}

/// `s_A(n, p)`: the degree over `F_p` of the splitting field of the model.
pub fn splitting_degree(
    a: &InterpolatedA,
    p: u64,
    strategy: &dyn Factorizer,
    seed: u64,
) -> Result<u32> {
    let field = build_field(p, 1)?;
    let m = model(a, &field, Variant::Kp)?;
    Ok(splitting_degree_of(&factor_with(&m.poly, strategy, seed)?))
}

/// A prime `p <= bound` modulo which the monic rational polynomial `f` is
/// `p`-integral and irreducible of full degree.
pub fn irreducibility_witness(f: &QPoly, bound: u64) -> Option<u64> {
    let deg = f.degree().filter(|&d| d > 0)?;
    (2..=bound)
        .filter(|&p| is_prime(p))
        .find(|&p| reduces_irreducibly(f, deg, p).unwrap_or(false))
}

fn reduces_irreducibly(f: &QPoly, deg: usize, p: u64) -> Result<bool> {
    let field = build_field(p, 1)?;
    let cs = f
        .coeffs()
        .iter()
        .map(|c| coerce(c, &field))
        .collect::<Result<Vec<_>>>()?;
    let g = FfPoly::new(field, cs);
    Ok(g.degree() == Some(deg) && g.is_irreducible())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn registry_names() -> Vec<&'static str> {
        factorizer_registry().names()
    }

    #[test]
    fn spec_examples() {
        let f7 = build_field(7, 1).unwrap();
        let f = FfPoly::from_ints(f7.clone(), &[4, 0, 3]);
        for name in registry_names() {
            let s = factorizer_registry().get(name).unwrap();
            let fact = factor_with(&f, s.as_ref(), 0).unwrap();
            assert_eq!(fact.unit, f7.from_int(3));
            assert_eq!(
                fact.factors,
                vec![
                    (FfPoly::from_ints(f7.clone(), &[-6, 1]), 1),
                    (FfPoly::from_ints(f7.clone(), &[-1, 1]), 1)
                ]
            );
        }

        let f2 = build_field(2, 1).unwrap();
        let fact = factor(&FfPoly::x(f2.clone()).pow(4), 0).unwrap();
        assert_eq!(fact.unit, FFElem::ONE);
        assert_eq!(fact.factors, vec![(FfPoly::x(f2), 4)]);

        let f5 = build_field(5, 1).unwrap();
        let q = FfPoly::from_ints(f5.clone(), &[2, 0, 2, 0, 4]);
        let fact = factor(&q, 0).unwrap();
        assert_eq!(fact.unit, f5.from_int(4));
        assert_eq!(fact.factors.len(), 1);
        assert_eq!(fact.factors[0].0.degree(), Some(4));
        assert_eq!(splitting_degree_of(&fact), 4);
    }

    #[test]
    fn strategies_agree_over_extensions() {
        let f9 = build_field(3, 2).unwrap();
        let f = FfPoly::from_ints(f9.clone(), &[1, 0, 1, 0, 0, 1, 2, 0, 1]);
        let a = factor_with(&f, &CantorZassenhaus, 3).unwrap();
        let b = factor_with(&f, &Berlekamp, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.reassemble(&f9), f);
    }

    #[test]
    fn splitting_degrees_of_anchor() {
        use crate::interp::Source;
        let a0 = InterpolatedA::new(0, QPoly::from_ints(&[4, 0, 3]), Source::Generated);
        let cz = CantorZassenhaus;
        assert_eq!(splitting_degree(&a0, 5, &cz, 0).unwrap(), 2);
        assert_eq!(splitting_degree(&a0, 7, &cz, 0).unwrap(), 1);
        // 3x^2 + 4 reduces to the constant 1 modulo 3
        assert_eq!(splitting_degree(&a0, 3, &cz, 0).unwrap(), 1);
    }

    #[test]
    fn witnesses() {
        // x^2 + 1 is irreducible modulo 3
        assert_eq!(
            irreducibility_witness(&QPoly::from_ints(&[1, 0, 1]), 60),
            Some(3)
        );
        // x^4 + 1 is reducible modulo every prime
        assert_eq!(
            irreducibility_witness(&QPoly::from_ints(&[1, 0, 0, 0, 1]), 60),
            None
        );
        assert_eq!(irreducibility_witness(&QPoly::from_ints(&[1]), 60), None);
    }
}
