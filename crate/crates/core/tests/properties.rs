mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{brute_roots, random_poly};
use heckemod_core::factor::{
    dlog_registry, factor_with, factorizer_registry, find_generator, frobenius_orbit,
    splitting_degree_of, Berlekamp, CantorZassenhaus,
};
use heckemod_core::ff::{build_field, FFElem, FfPoly};

const FIELDS: &[(u64, u32)] = &[
    (2, 1),
    (3, 1),
    (5, 1),
    (7, 1),
    (3, 2),
    (5, 2),
    (7, 2),
    (5, 4),
];

fn field_strategy() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(FIELDS)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_reassembles(
        (p, k) in field_strategy(),
        deg in 1usize..12,
        square in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let field = build_field(p, k).unwrap();
        let f = random_poly(&field, deg, square, &mut ChaCha8Rng::seed_from_u64(seed));
        for name in factorizer_registry().names() {
            let strategy = factorizer_registry().get(name).unwrap();
            let fact = factor_with(&f, strategy.as_ref(), seed).unwrap();
            prop_assert_eq!(fact.reassemble(&field), f.clone());
            for (g, _) in &fact.factors {
                prop_assert_eq!(g.leading(), Some(FFElem::ONE));
                prop_assert!(g.is_irreducible());
            }
        }
    }

    #[test]
    fn strategies_agree(
        (p, k) in field_strategy(),
        deg in 1usize..10,
        seed in any::<u64>(),
    ) {
        let field = build_field(p, k).unwrap();
        let f = random_poly(&field, deg, true, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(
            factor_with(&f, &CantorZassenhaus, seed).unwrap(),
            factor_with(&f, &Berlekamp, seed ^ 1).unwrap()
        );
    }

    /// `f` splits over `F_(p^j)` exactly when `s_A` divides `j`.
    #[test]
    fn splitting_degree_matches_root_count(
        p in prop::sample::select(vec![2u64, 3]),
        deg in 1usize..7,
        seed in any::<u64>(),
    ) {
        let field = build_field(p, 1).unwrap();
        let f = random_poly(&field, deg, false, &mut ChaCha8Rng::seed_from_u64(seed));
        let s = splitting_degree_of(&factor_with(&f, &CantorZassenhaus, seed).unwrap());
        let max_j = if p == 2 { 6 } else { 4 };
        for j in 1..=max_j {
            let ext = build_field(p, j).unwrap();
            let count: usize = brute_roots(&f, &ext).iter().map(|(_, m)| m).sum();
            prop_assert_eq!(count == deg, j % s == 0, "j = {}, s = {}", j, s);
        }
    }

    #[test]
    fn root_sets_are_frobenius_closed(
        (p, j) in prop::sample::select(vec![(2u64, 4u32), (2, 6), (3, 2), (3, 4), (5, 2), (7, 2)]),
        deg in 1usize..8,
        seed in any::<u64>(),
    ) {
        let base = build_field(p, 1).unwrap();
        let ext = build_field(p, j).unwrap();
        let f = random_poly(&base, deg, true, &mut ChaCha8Rng::seed_from_u64(seed));
        let roots = brute_roots(&f, &ext);
        for &(r, m) in &roots {
            for s in frobenius_orbit(&ext, r) {
                prop_assert!(roots.contains(&(s, m)));
            }
        }
    }
}

#[test]
fn dlog_round_trip_is_exhaustive_up_to_625() {
    for (p, k) in [
        (2, 1),
        (2, 3),
        (3, 2),
        (2, 4),
        (5, 2),
        (3, 3),
        (7, 2),
        (3, 4),
        (5, 4),
    ] {
        let field = build_field(p, k).unwrap();
        let t = find_generator(&field, 1 << 31).unwrap();
        for name in dlog_registry().names() {
            let solver = dlog_registry().get(name).unwrap();
            for s in field.elements().filter(|s| !s.is_zero()) {
                let e = solver.dlog(&field, t, s).unwrap();
                assert!(e < field.order() - 1);
                assert_eq!(field.pow(t, e as u128), s, "{name} in {}", field.name());
            }
        }
    }
}

#[test]
fn x_squared_plus_one_splits_over_f9() {
    let f3 = build_field(3, 1).unwrap();
    let f = FfPoly::from_ints(f3, &[1, 0, 1]);
    let f9 = build_field(3, 2).unwrap();
    assert_eq!(brute_roots(&f, &f9).len(), 2);
}
