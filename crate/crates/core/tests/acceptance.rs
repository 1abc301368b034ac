//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero only when a criterion fails in a way that is not pinned below.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use heckemod_core::arith::{QPoly, Rational};
use heckemod_core::factor::{
    dlog_registry, factor_with, factorizer_registry, find_generator, splitting_degree_of,
};
use heckemod_core::ff::{build_field, FfPoly};
use heckemod_core::hauptmodul::{calibration_registry, natural_expansion};
use heckemod_core::verify::{build_report, generate_table, run, Report, Verdict, VerifyConfig};

/// C4.tables tasks whose observed factorisation matches no printed row.
const KNOWN_TABLE_FAILS: &[(u64, i64)] = &[
    (3, 2),
    (3, 5),
    (3, 10),
    (3, 14),
    (3, 20),
    (3, 22),
    (3, 26),
    (3, 29),
    (7, 7),
    (7, 14),
    (7, 21),
    (7, 28),
];

/// C4.tables tasks whose splitting degree has no printed row.
const KNOWN_TABLE_INAPPLICABLE: &[(u64, i64)] = &[(3, 8), (3, 11), (3, 17), (3, 23)];

const PROPERTY_FIELDS: &[(u64, u32)] = &[
    (2, 1),
    (3, 1),
    (5, 1),
    (7, 1),
    (3, 2),
    (5, 2),
    (7, 2),
    (5, 4),
];
const POLYS_PER_FIELD: usize = 200;
const DLOG_MAX_ORDER: u64 = 625;

struct Outcome {
    pass: bool,
    detail: String,
    /// a failure that matches the pinned analysis
    expected_failure: bool,
}

impl Outcome {
    fn check(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
            expected_failure: false,
        }
    }
}

fn records<'a>(
    report: &'a Report,
    clause: &'a str,
) -> impl Iterator<Item = &'a heckemod_core::verify::VerdictRecord> + 'a {
    report.records.iter().filter(move |r| r.clause == clause)
}

fn all_pass<'a>(
    mut it: impl Iterator<Item = &'a heckemod_core::verify::VerdictRecord>,
) -> (usize, Vec<String>) {
    let mut count = 0;
    let mut bad = Vec::new();
    for r in it.by_ref() {
        count += 1;
        if r.verdict != Verdict::Pass {
            bad.push(format!("{} {}", r.task_id(), r.verdict.as_str()));
        }
    }
    (count, bad)
}

fn anchors() -> Outcome {
    let (table, _) = match generate_table(1, 2, calibration_registry().default_strategy(), 0) {
        Ok(t) => t,
        Err(e) => return Outcome::check(false, e.to_string()),
    };
    let want = [
        QPoly::from_ints(&[1]),
        QPoly::from_ints(&[4, 0, 3]),
        QPoly::from_ints(&[-48, 0, -8, 0, 69]),
    ];
    let ok = table.len() == 3 && table.iter().zip(&want).all(|(a, w)| &a.poly == w);
    Outcome::check(ok, "A_-1 = 1, A_0 = 3x^2+4, A_1 = 69x^4-8x^2-48")
}

fn moonshine_limit() -> Outcome {
    let a = match natural_expansion(3, 4) {
        Ok(a) => a,
        Err(e) => return Outcome::check(false, e.to_string()),
    };
    let j = common::klein_j(4);
    let scaled = |k: usize, e: i64| &a[k] * &Rational::from(1728).pow(e);
    let got = [scaled(2, 2), scaled(3, 3)];
    let want = [Rational::from(j[2].clone()), Rational::from(j[3].clone())];
    let ok = got == want && j[2] == BigInt::from(196884) && j[3] == BigInt::from(21493760);
    Outcome::check(
        ok,
        format!("1728^2 a_1 = {}, 1728^3 a_2 = {}", got[0], got[1]),
    )
}

fn denominators(report: &Report) -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for r in report
        .records
        .iter()
        .filter(|r| r.clause.starts_with("C2.2"))
    {
        if matches!(r.n, Some(n) if (2..=20).contains(&n)) {
            count += 1;
            if r.verdict != Verdict::Pass {
                bad.push(r.task_id());
            }
        }
    }
    let pi2 = report
        .records
        .iter()
        .find(|r| r.clause == "C2.2a" && r.n == Some(2))
        .map(|r| r.observed.clone())
        .unwrap_or_default();
    Outcome::check(
        count > 0 && bad.is_empty() && pi2 == "{3}",
        format!("{count} records for 2 <= n <= 20, pi_2 = {pi2}, failing {bad:?}"),
    )
}

fn p2_collapse(report: &Report) -> Outcome {
    let (count, bad) = all_pass(records(report, "C4.1"));
    Outcome::check(
        count == 32 && bad.is_empty(),
        format!("{count} tasks, failing {bad:?}"),
    )
}

fn a0_mod_7() -> Outcome {
    let f7 = build_field(7, 1).unwrap();
    // 3x^2 + 4 reduced mod 7
    let f = FfPoly::from_ints(f7.clone(), &[4, 0, 3]);
    let fact = factor_with(&f, factorizer_registry().default_strategy().as_ref(), 0).unwrap();
    let want = vec![
        (FfPoly::from_ints(f7.clone(), &[-1, 1]), 1),
        (FfPoly::from_ints(f7.clone(), &[-6, 1]), 1),
    ];
    let mut got = fact.factors.clone();
    got.sort_by_key(|(g, _)| g.coeff(0).index());
    let mut want_sorted = want;
    want_sorted.sort_by_key(|(g, _)| g.coeff(0).index());
    let ok = fact.unit == f7.elem(3) && got == want_sorted;
    Outcome::check(ok, "3 (x-1)(x-6) over F_7")
}

fn splitting_degrees(report: &Report, data: &heckemod_core::verify::RunData) -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for r in records(report, "C3.2") {
        let (Some(n), Some(p)) = (r.n, r.p) else {
            continue;
        };
        if [2, 3, 5, 7].contains(&p) && (1..=30).contains(&n) {
            count += 1;
            if r.verdict != Verdict::Pass {
                bad.push(r.task_id());
            }
        }
    }
    let s2_bad: Vec<i64> = (-1..=30)
        .filter(|&n| !matches!(data.data(n, 2), Some(d) if d.s_a == 1))
        .collect();
    let mut c33 = 0;
    for r in records(report, "C3.3") {
        if [5, 7, 11, 13].contains(&r.p.unwrap_or(0)) {
            c33 += 1;
            if r.verdict != Verdict::Pass {
                bad.push(r.task_id());
            }
        }
    }
    Outcome::check(
        count == 120 && c33 > 0 && bad.is_empty() && s2_bad.is_empty(),
        format!(
            "{count} C3.2 and {c33} C3.3 records, failing {bad:?}, s_A(n,2) != 1 at {s2_bad:?}"
        ),
    )
}

fn zero_index(report: &Report) -> Outcome {
    let (count, bad) = all_pass(records(report, "C3.4"));
    Outcome::check(
        count == 13 && bad.is_empty(),
        format!("primes 5..47: {count}, failing {bad:?}"),
    )
}

fn tables(report: &Report) -> Outcome {
    let set = |v: Verdict| -> BTreeSet<(u64, i64)> {
        records(report, "C4.tables")
            .filter(|r| r.verdict == v)
            .map(|r| (r.p.unwrap(), r.n.unwrap()))
            .collect()
    };
    let fails = set(Verdict::Fail);
    let inapplicable = set(Verdict::Inapplicable);
    let passes = set(Verdict::Pass).len();
    let known_fails: BTreeSet<_> = KNOWN_TABLE_FAILS.iter().copied().collect();
    let known_inapplicable: BTreeSet<_> = KNOWN_TABLE_INAPPLICABLE.iter().copied().collect();
    let (orbit_count, orbit_bad) =
        all_pass(records(report, "C4.orbits").filter(|r| r.verdict != Verdict::ReportOnly));
    let pinned = fails == known_fails && inapplicable == known_inapplicable && orbit_bad.is_empty();
    let fmt = |s: &BTreeSet<(u64, i64)>| {
        s.iter()
            .map(|(p, n)| format!("(n={n},p={p})"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    Outcome {
        pass: fails.is_empty() && orbit_bad.is_empty(),
        detail: format!(
            "{passes} rows matched, {orbit_count} orbit checks; mismatches {}; no printed row {}{}",
            fmt(&fails),
            fmt(&inapplicable),
            if pinned {
                ""
            } else {
                "; differs from the pinned analysis"
            }
        ),
        expected_failure: pinned,
    }
}

fn seeded_properties(report: &Report) -> Outcome {
    let mut problems = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for &(p, k) in PROPERTY_FIELDS {
        let field = build_field(p, k).unwrap();
        for i in 0..POLYS_PER_FIELD {
            let f = common::random_poly(&field, 1 + i % 12, i % 2 == 0, &mut rng);
            let mut results = Vec::new();
            for name in factorizer_registry().names() {
                let strategy = factorizer_registry().get(name).unwrap();
                match factor_with(&f, strategy.as_ref(), i as u64) {
                    Ok(fact) if fact.reassemble(&field) == f => results.push(fact),
                    _ => problems.push(format!("{name} on {} #{i}", field.name())),
                }
            }
            if results.windows(2).any(|w| w[0] != w[1]) {
                problems.push(format!("strategies disagree on {} #{i}", field.name()));
            }
        }
    }
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
        if field.order() > DLOG_MAX_ORDER {
            continue;
        }
        let t = find_generator(&field, 1 << 31).unwrap();
        for name in dlog_registry().names() {
            let solver = dlog_registry().get(name).unwrap();
            let ok = field.elements().filter(|s| !s.is_zero()).all(
                |s| matches!(solver.dlog(&field, t, s), Ok(e) if field.pow(t, e as u128) == s),
            );
            if !ok {
                problems.push(format!("{name} dlog in {}", field.name()));
            }
        }
    }
    for p in [2u64, 3] {
        let base = build_field(p, 1).unwrap();
        let max_j = if p == 2 { 6 } else { 4 };
        for i in 0..50 {
            let deg = 1 + i % 6;
            let f = common::random_poly(&base, deg, false, &mut rng);
            let s = splitting_degree_of(
                &factor_with(&f, factorizer_registry().default_strategy().as_ref(), 0).unwrap(),
            );
            for j in 1..=max_j {
                let ext = build_field(p, j).unwrap();
                let count: usize = common::brute_roots(&f, &ext).iter().map(|(_, m)| m).sum();
                if (count == deg) != (j % s == 0) {
                    problems.push(format!("splitting degree over F_{p}^{j}, #{i}"));
                }
            }
        }
    }
    let (closures, closure_bad) = all_pass(records(report, "frobenius-closure"));
    problems.extend(closure_bad);
    Outcome::check(
        problems.is_empty(),
        format!(
            "{} polynomials x {} fields, {closures} closure checks, problems {problems:?}",
            POLYS_PER_FIELD,
            PROPERTY_FIELDS.len()
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let config = VerifyConfig::default();
    let data = run(&config).expect("default run");
    let report = build_report(&data);
    let csv = report.to_csv().unwrap();

    let mut results: Vec<(&str, Outcome)> = vec![
        ("1 anchors A_-1, A_0, A_1", anchors()),
        (
            "2 m = 3 coefficients match the classical j",
            moonshine_limit(),
        ),
        ("3 denominator sets for 2 <= n <= 20", denominators(&report)),
        ("4 A_n mod 2 collapses to x^(2n+2)", p2_collapse(&report)),
        ("5 A_0 mod 7 has unit 3 and roots 1, 6", a0_mod_7()),
        (
            "6 splitting degrees and units",
            splitting_degrees(&report, &data),
        ),
        ("7 s_A(0, p) for p in 5..47", zero_index(&report)),
        ("8 factorisation tables for p = 3, 5, 7", tables(&report)),
        ("9 seeded field properties", seeded_properties(&report)),
    ];

    let again = build_report(&run(&config).expect("second run"))
        .to_csv()
        .unwrap();
    let serial = build_report(
        &run(&VerifyConfig {
            jobs: 1,
            ..config.clone()
        })
        .expect("serial run"),
    )
    .to_csv()
    .unwrap();
    results.push((
        "10 reports are byte-identical across runs and job counts",
        Outcome::check(
            csv == again && csv == serial,
            format!(
                "{} bytes, parallel rerun equal: {}, serial equal: {}",
                csv.len(),
                csv == again,
                csv == serial
            ),
        ),
    ));

    let mut unexpected = 0;
    for (name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let suffix = if !o.pass && o.expected_failure {
            " [pinned]"
        } else {
            ""
        };
        println!("{tag} {name}{suffix}: {}", o.detail);
        if !o.pass && !o.expected_failure {
            unexpected += 1;
        }
    }
    println!(
        "{} of {} criteria pass, {unexpected} unexpected failures ({:.1}s)",
        results.iter().filter(|(_, o)| o.pass).count(),
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
