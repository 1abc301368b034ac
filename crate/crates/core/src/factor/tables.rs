use std::collections::BTreeMap;

use serde::Serialize;

use super::dlog::{base_p_expansion, rotation_period};
use super::profile::RootProfile;
use crate::ff::mod_np;

/// Printed splitting degrees per residue of `n` modulo `p`; `None` for
/// primes without a printed table.
pub fn printed_s_a(p: u64, residue: u64) -> Option<&'static [u32]> {
    const P3: [&[u32]; 3] = [&[1], &[1, 2, 3], &[1, 2, 3, 4]];
    const P5: [&[u32]; 5] = [&[1, 2], &[4], &[4], &[6], &[1]];
    const P7: [&[u32]; 7] = [&[4], &[4], &[2], &[2], &[6], &[5], &[1]];
    match p {
        2 => Some(&[1]),
        3 => P3.get(residue as usize).copied(),
        5 => P5.get(residue as usize).copied(),
        7 => P7.get(residue as usize).copied(),
        _ => None,
    }
}

/// `a * delta + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MultExpr {
    pub delta_coeff: i64,
    pub offset: i64,
}

impl MultExpr {
    const fn d(offset: i64) -> Self {
        MultExpr {
            delta_coeff: 2,
            offset,
        }
    }

    const fn c(offset: i64) -> Self {
        MultExpr {
            delta_coeff: 0,
            offset,
        }
    }

    pub fn eval(self, delta: i64) -> i64 {
        self.delta_coeff * delta + self.offset
    }
}

/// One printed shape of the model for a residue class and splitting degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub id: &'static str,
    pub p: u64,
    pub residue: u64,
    pub s: u32,
    /// `(root in the prime subfield, multiplicity)`
    pub prime: Vec<(u64, MultExpr)>,
    /// `(k of the orbit base point t^k, multiplicity)`
    pub orbits: Vec<(u64, usize)>,
}

impl TableRow {
    /// Orbit sizes implied by the base points, which do not depend on the
    /// choice of generator.
    pub fn orbit_shapes(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .orbits
            .iter()
            .map(|&(k, m)| {
                let digits = base_p_expansion(k, self.p, self.s as usize)
                    .expect("printed base points lie in the splitting field");
                (rotation_period(&digits), m)
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Expected prime-subfield multiplicities, zero entries dropped; `None`
    /// when some entry is negative and the row does not apply.
    pub fn expected_prime(&self, delta: i64) -> Option<Vec<(u64, usize)>> {
        let mut out = Vec::new();
        for &(r, e) in &self.prime {
            match e.eval(delta) {
                v if v < 0 => return None,
                0 => {}
                v => out.push((r, v as usize)),
            }
        }
        out.sort_unstable();
        Some(out)
    }
}

fn row(
    id: &'static str,
    p: u64,
    residue: u64,
    s: u32,
    prime: &[(u64, MultExpr)],
    orbits: &[(u64, usize)],
) -> TableRow {
    TableRow {
        id,
        p,
        residue,
        s,
        prime: prime.to_vec(),
        orbits: orbits.to_vec(),
    }
}

/// The printed rows for `p`; empty for primes without a table.
pub fn table_rows(p: u64) -> Vec<TableRow> {
    use MultExpr as M;
    let d = M::d;
    match p {
        3 => {
            let base = [(0, M::c(2)), (1, d(0)), (2, d(0))];
            vec![
                row("p3/0", 3, 0, 1, &base, &[]),
                row("p3/1a", 3, 1, 1, &base, &[]),
                row(
                    "p3/1b",
                    3,
                    1,
                    1,
                    &[(0, M::c(2)), (1, d(-2)), (2, d(-2))],
                    &[],
                ),
                row(
                    "p3/1c",
                    3,
                    1,
                    2,
                    &[(0, M::c(8)), (1, d(-6)), (2, d(-6))],
                    &[(1, 2), (2, 2), (7, 2)],
                ),
                row("p3/2a", 3, 2, 1, &[(1, d(1)), (2, d(1))], &[]),
                row(
                    "p3/2b",
                    3,
                    2,
                    1,
                    &[(0, M::c(6)), (1, d(-1)), (2, d(-1))],
                    &[],
                ),
            ]
        }
        5 => {
            let half = |a: i64, b: i64| [(1, d(a)), (4, d(a)), (2, d(b)), (3, d(b))];
            vec![
                row("p5/0", 5, 0, 1, &half(2, 0), &[]),
                row("p5/1", 5, 1, 4, &half(0, 0), &[(91, 1)]),
                row("p5/2", 5, 2, 4, &half(0, 1), &[(169, 1)]),
                row("p5/3", 5, 3, 6, &half(0, 1), &[(2961, 1)]),
                row("p5/4", 5, 4, 1, &half(2, 2), &[]),
            ]
        }
        7 => {
            let shared = [
                (1, d(0)),
                (3, d(0)),
                (4, d(0)),
                (6, d(0)),
                (2, d(1)),
                (5, d(1)),
            ];
            let uniform = |e: i64| {
                [
                    (1, d(e)),
                    (2, d(e)),
                    (3, d(e)),
                    (4, d(e)),
                    (5, d(e)),
                    (6, d(e)),
                ]
            };
            vec![
                row(
                    "p7/0",
                    7,
                    0,
                    4,
                    &[
                        (1, d(-2)),
                        (6, d(-2)),
                        (2, d(0)),
                        (5, d(0)),
                        (3, d(1)),
                        (4, d(1)),
                    ],
                    &[(173, 1), (260, 1)],
                ),
                // printed with a repeated (x-3) factor where (x-4) belongs
                row("p7/1", 7, 1, 4, &uniform(0), &[(75, 1)]),
                row("p7/2", 7, 2, 2, &shared, &[(4, 2)]),
                row("p7/3", 7, 3, 2, &shared, &[(7, 1), (12, 1), (25, 1)]),
                row(
                    "p7/4",
                    7,
                    4,
                    6,
                    &shared,
                    &[(29412, 1), (41280, 1), (81528, 1)],
                ),
                row("p7/5", 7, 5, 5, &shared, &[(1513, 1), (11020, 1)]),
                row("p7/6", 7, 6, 1, &uniform(2), &[]),
            ]
        }
        _ => Vec::new(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Matched,
    Mismatch,
    /// No printed row for the residue and splitting degree, or every
    /// candidate row predicts a negative multiplicity.
    Inapplicable,
    /// `n` in `{-1, 0}`, outside the range the tables describe.
    Exceptional,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeMatch {
    pub status: RowStatus,
    pub matched: Vec<&'static str>,
    pub detail: String,
}

fn show_prime(v: &[(u64, usize)]) -> String {
    let parts: Vec<String> = v.iter().map(|(r, m)| format!("{r}:{m}")).collect();
    format!("[{}]", parts.join(","))
}

fn show_orbits(v: &[(usize, usize)]) -> String {
    let parts: Vec<String> = v.iter().map(|(s, m)| format!("{s}x{m}")).collect();
    format!("[{}]", parts.join(","))
}

/// Compares a profile with every printed row for its residue and splitting
/// degree. Prime-subfield multiplicities and the multiset of orbit
/// `(size, multiplicity)` pairs must agree; orbit base points are not
/// compared because they depend on the generator.
pub fn shape_match(profile: &RootProfile) -> ShapeMatch {
    let (n, p, s) = (profile.n, profile.p, profile.s_a);
    if n <= 0 {
        return ShapeMatch {
            status: RowStatus::Exceptional,
            matched: Vec::new(),
            detail: format!("n = {n} lies outside the tabulated range"),
        };
    }
    let residue = mod_np(n, p);
    let observed_prime: Vec<(u64, usize)> = profile
        .prime_roots
        .iter()
        .copied()
        .filter(|&(_, m)| m > 0)
        .collect();
    let mut observed_orbits: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for o in &profile.orbits {
        *observed_orbits.entry((o.size, o.mult)).or_default() += 1;
    }
    let observed_orbits: Vec<(usize, usize)> = observed_orbits
        .into_iter()
        .flat_map(|(k, c)| std::iter::repeat_n(k, c))
        .collect();

    let candidates: Vec<TableRow> = table_rows(p)
        .into_iter()
        .filter(|r| r.residue == residue && r.s == s)
        .collect();
    let mut matched = Vec::new();
    let mut misses = Vec::new();
    let mut applicable = false;
    for r in &candidates {
        let Some(prime) = r.expected_prime(profile.delta) else {
            continue;
        };
        applicable = true;
        let orbits = r.orbit_shapes();
        if prime == observed_prime && orbits == observed_orbits {
            matched.push(r.id);
        } else {
            misses.push(format!(
                "{}: expected {} {}",
                r.id,
                show_prime(&prime),
                show_orbits(&orbits)
            ));
        }
    }
    let observed = format!(
        "observed {} {}",
        show_prime(&observed_prime),
        show_orbits(&observed_orbits)
    );
    let (status, detail) = if !matched.is_empty() {
        (RowStatus::Matched, observed)
    } else if !applicable {
        let why = if candidates.is_empty() {
            format!("no printed row for residue {residue} with s_A = {s}")
        } else {
            "every candidate row predicts a negative multiplicity".to_string()
        };
        (RowStatus::Inapplicable, format!("{why}; {observed}"))
    } else {
        (
            RowStatus::Mismatch,
            format!("{observed}; {}", misses.join("; ")),
        )
    };
    ShapeMatch {
        status,
        matched,
        detail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(line: &str) -> RootProfile {
        line.parse().unwrap()
    }

    #[test]
    fn printed_orbit_sizes() {
        let sizes = |p: u64, id: &str| {
            table_rows(p)
                .into_iter()
                .find(|r| r.id == id)
                .unwrap()
                .orbit_shapes()
        };
        assert_eq!(sizes(3, "p3/1c"), vec![(2, 2), (2, 2), (2, 2)]);
        assert_eq!(sizes(5, "p5/1"), vec![(4, 1)]);
        assert_eq!(sizes(7, "p7/4"), vec![(2, 1), (3, 1), (3, 1)]);
        assert_eq!(sizes(7, "p7/5"), vec![(5, 1), (5, 1)]);
        assert_eq!(sizes(7, "p7/3"), vec![(2, 1), (2, 1), (2, 1)]);
    }

    #[test]
    fn matching() {
        let m = shape_match(&parse("1 3 1 0 1 | 0:2 | -"));
        assert_eq!(m.status, RowStatus::Matched);
        assert_eq!(m.matched, vec!["p3/1a"]);

        let m = shape_match(&parse("1 5 4 0 4 | - | orbit(4,1,1-3-3-0)"));
        assert_eq!(m.matched, vec!["p5/1"]);

        let m = shape_match(&parse("6 7 1 0 1 | 1:2,2:2,3:2,4:2,5:2,6:2 | -"));
        assert_eq!(m.matched, vec!["p7/6"]);

        let m = shape_match(&parse("0 3 1 0 1 | - | -"));
        assert_eq!(m.status, RowStatus::Exceptional);

        let m = shape_match(&parse("8 3 3 2 1 | - | -"));
        assert_eq!(m.status, RowStatus::Inapplicable);

        let m = shape_match(&parse("4 3 2 1 1 | 0:8 | orbit(2,1,1-0)"));
        assert_eq!(m.status, RowStatus::Inapplicable);

        let m = shape_match(&parse("3 3 1 1 1 | 0:2,1:1,2:2 | -"));
        assert_eq!(m.status, RowStatus::Mismatch);
        assert!(m.detail.contains("p3/0"));
    }

    #[test]
    fn printed_degrees() {
        assert_eq!(printed_s_a(3, 2), Some(&[1, 2, 3, 4][..]));
        assert_eq!(printed_s_a(7, 4), Some(&[6][..]));
        assert_eq!(printed_s_a(2, 0), Some(&[1][..]));
        assert_eq!(printed_s_a(11, 0), None);
    }
}
