mod common;

use num_bigint::BigInt;

use heckemod_core::arith::{QPoly, Rational};
use heckemod_core::hauptmodul::calibration_registry;
use heckemod_core::interp::parse_atable;
use heckemod_core::verify::generate_table;

const FIXTURE: &str = include_str!("fixtures/atable_n6.txt");

#[test]
fn generated_table_matches_fixture() {
    let (table, _) = generate_table(6, 2, calibration_registry().default_strategy(), 1).unwrap();
    let frozen = parse_atable(FIXTURE).unwrap();
    assert_eq!(table.len(), frozen.len());
    for (a, b) in table.iter().zip(&frozen) {
        assert_eq!((a.n, &a.poly), (b.n, &b.poly), "A_{} drifted", a.n);
    }
    assert_eq!(frozen[1].poly, QPoly::from_ints(&[4, 0, 3]));
    assert_eq!(frozen[2].poly, QPoly::from_ints(&[-48, 0, -8, 0, 69]));
    assert_eq!(frozen[3].pi_set, vec![3]);
}

/// At `m = 3` the expansion is the classical `j` rescaled: with scale 32 and
/// weight 1/256, `A_n(3) = 9^(n+1) 32^(n+1) 256^(1-n) c(n) / 1728^(n+1)` for
/// `n >= 1`, where `c(n)` is a coefficient of `E4^3 / Delta`.
#[test]
fn fixture_agrees_with_eisenstein_oracle_at_m3() {
    let frozen = parse_atable(FIXTURE).unwrap();
    let j = common::klein_j(9);
    assert_eq!(j[0], BigInt::from(1));
    assert_eq!(j[1], BigInt::from(744));
    assert_eq!(j[2], BigInt::from(196884));
    for a in frozen.iter().filter(|a| a.n >= 1) {
        let n = a.n;
        let c = Rational::from(j[(n + 1) as usize].clone());
        let want = Rational::from(9).pow(n + 1)
            * Rational::from(32).pow(n + 1)
            * Rational::from(256).pow(1 - n)
            * c
            / Rational::from(1728).pow(n + 1);
        assert_eq!(a.poly.eval(&Rational::from(3)), want, "A_{n}(3)");
    }
}
