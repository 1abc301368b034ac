use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::dlog::{base_p_expansion, find_generator, frobenius_orbit, rotation_period, DlogSolver};
use super::strategies::{equal_degree, seeded_rng};
use super::{splitting_degree_of, Factorization};
use crate::error::{Error, Result};
use crate::ff::{build_field, delta, ModelPoly};

/// One Frobenius orbit of roots outside the prime subfield.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub size: usize,
    pub mult: usize,
    /// Base-`p` digits, least significant first, of the least discrete
    /// logarithm in the orbit; every other member's digits are a rotation.
    pub signature: Vec<u64>,
}

impl OrbitRecord {
    /// The least discrete logarithm in the orbit, i.e. the `k` of `t^k`.
    pub fn label(&self, p: u64) -> u64 {
        self.signature.iter().rev().fold(0, |acc, &d| acc * p + d)
    }
}

/// Root data of a model over its splitting field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootProfile {
    pub n: i64,
    pub p: u64,
    pub s_a: u32,
    pub delta: i64,
    /// Index of the leading coefficient of the model.
    pub unit: u64,
    /// `(residue, multiplicity)`, ascending.
    pub prime_roots: Vec<(u64, usize)>,
    pub orbits: Vec<OrbitRecord>,
    /// Degree of the part left unsplit; zero once roots are taken in the
    /// splitting field.
    pub nonlinear_remainder: usize,
}

impl RootProfile {
    /// Canonical text form
    /// `n p s_A delta unit | res:mult,... | orbit(size,mult,d1-d2-..);...`,
    /// with `-` for an empty section.
    pub fn to_line(&self) -> String {
        let prime = if self.prime_roots.is_empty() {
            "-".to_string()
        } else {
            self.prime_roots
                .iter()
                .map(|(r, m)| format!("{r}:{m}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        let orbits = if self.orbits.is_empty() {
            "-".to_string()
        } else {
            self.orbits
                .iter()
                .map(|o| {
                    let sig: Vec<String> = o.signature.iter().map(u64::to_string).collect();
                    format!("orbit({},{},{})", o.size, o.mult, sig.join("-"))
                })
                .collect::<Vec<_>>()
                .join(";")
        };
        format!(
            "{} {} {} {} {} | {} | {}",
            self.n, self.p, self.s_a, self.delta, self.unit, prime, orbits
        )
    }

    /// Total root count with multiplicity.
    pub fn degree(&self) -> usize {
        self.prime_roots.iter().map(|(_, m)| m).sum::<usize>()
            + self.orbits.iter().map(|o| o.size * o.mult).sum::<usize>()
            + self.nonlinear_remainder
    }
}

impl fmt::Display for RootProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

fn bad(reason: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        reason: reason.into(),
    }
}

fn num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| bad(format!("bad {what} '{s}'")))
}

fn parse_orbit(s: &str) -> Result<OrbitRecord> {
    let inner = s
        .trim()
        .strip_prefix("orbit(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| bad(format!("bad orbit '{s}'")))?;
    let parts: Vec<&str> = inner.split(',').collect();
    let [size, mult, sig] = parts[..] else {
        return Err(bad(format!("bad orbit '{s}'")));
    };
    Ok(OrbitRecord {
        size: num(size, "orbit size")?,
        mult: num(mult, "orbit multiplicity")?,
        signature: sig
            .split('-')
            .map(|d| num(d, "digit"))
            .collect::<Result<_>>()?,
    })
}

impl FromStr for RootProfile {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let sections: Vec<&str> = line.split('|').collect();
        let [head, prime, orbits] = sections[..] else {
            return Err(bad("expected three '|'-separated sections"));
        };
        let h: Vec<&str> = head.split_whitespace().collect();
        let [n, p, s_a, delta, unit] = h[..] else {
            return Err(bad("expected 'n p s_A delta unit'"));
        };
        let prime_roots = match prime.trim() {
            "-" => Vec::new(),
            s => s
                .split(',')
                .map(|e| {
                    let (r, m) = e
                        .split_once(':')
                        .ok_or_else(|| bad(format!("bad root '{e}'")))?;
                    Ok((num(r, "residue")?, num(m, "multiplicity")?))
                })
                .collect::<Result<_>>()?,
        };
        let orbits = match orbits.trim() {
            "-" => Vec::new(),
            s => s.split(';').map(parse_orbit).collect::<Result<_>>()?,
        };
        Ok(RootProfile {
            n: num(n, "n")?,
            p: num(p, "p")?,
            s_a: num(s_a, "s_A")?,
            delta: num(delta, "delta")?,
            unit: num(unit, "unit")?,
            prime_roots,
            orbits,
            nonlinear_remainder: 0,
        })
    }
}

/// Roots of a prime-field model grouped into prime-subfield residues and
/// Frobenius orbits in `F_(p^s)`, `s = s_A`. `fact` is the factorisation of
/// `model` over `F_p`.
///
/// Two structural facts are checked on every orbit and reported as
/// [`Error::Structure`] when violated: the orbit is closed under `x -> x^p`
/// and consists of roots of the model, and its size equals the rotation
/// period of its digit signature.
pub fn root_profile(
    model: &ModelPoly,
    fact: &Factorization,
    dlog: &dyn DlogSolver,
    budget: u128,
    seed: u64,
) -> Result<RootProfile> {
    let (n, p) = (model.n, model.p);
    if model.field().k() != 1 {
        return Err(Error::arg("root profiles start from a prime-field model"));
    }
    let s = splitting_degree_of(fact);
    let structure = |reason: String| Error::Structure { n, reason };
    let mut prime_roots = Vec::new();
    let mut orbits = Vec::new();
    let nonlinear: Vec<_> = fact
        .factors
        .iter()
        .filter(|(g, m)| {
            if g.degree() == Some(1) {
                prime_roots.push((model.field().neg(g.coeff(0)).index(), *m));
                false
            } else {
                true
            }
        })
        .collect();
    if !nonlinear.is_empty() {
        let ext = build_field(p, s)?;
        let t = find_generator(&ext, budget)?;
        let lifted = model.poly.lift(ext.clone())?;
        for (g, m) in nonlinear {
            let d = g.degree().unwrap();
            let g_ext = g.lift(ext.clone())?;
            let mut rng = seeded_rng(&g_ext, seed);
            let roots: Vec<_> = equal_degree(&g_ext, 1, &mut rng)
                .into_iter()
                .map(|l| ext.neg(l.coeff(0)))
                .collect();
            let mut orbit = frobenius_orbit(&ext, roots[0]);
            let mut sorted_roots = roots.clone();
            orbit.sort();
            sorted_roots.sort();
            if orbit != sorted_roots || orbit.iter().any(|&r| !lifted.eval(r).is_zero()) {
                return Err(structure(format!(
                    "roots of the degree-{d} factor {g} do not form one Frobenius orbit"
                )));
            }
            let label = roots
                .iter()
                .map(|&r| dlog.dlog(&ext, t, r))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .min()
                .unwrap();
            let signature = base_p_expansion(label, p, s as usize)?;
            if rotation_period(&signature) != d {
                return Err(structure(format!(
                    "orbit of t^{label} has size {d} but digit period {}",
                    rotation_period(&signature)
                )));
            }
            orbits.push(OrbitRecord {
                size: d,
                mult: *m,
                signature,
            });
        }
    }
    prime_roots.sort();
    orbits.sort();
    Ok(RootProfile {
        n,
        p,
        s_a: s,
        delta: delta(n, p),
        unit: fact.unit.index(),
        prime_roots,
        orbits,
        nonlinear_remainder: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QPoly;
    use crate::factor::{factor, PohligHellman};
    use crate::ff::{model, Variant};
    use crate::interp::{InterpolatedA, Source};

    fn profile(n: i64, coeffs: &[i64], p: u64) -> RootProfile {
        let a = InterpolatedA::new(n, QPoly::from_ints(coeffs), Source::Generated);
        let field = build_field(p, 1).unwrap();
        let m = model(&a, &field, Variant::Kp).unwrap();
        let fact = factor(&m.poly, 0).unwrap();
        root_profile(&m, &fact, &PohligHellman, 1 << 31, 0).unwrap()
    }

    #[test]
    fn anchor_profiles() {
        let a1 = [-48, 0, -8, 0, 69];
        let p = profile(1, &a1, 3);
        assert_eq!(p.prime_roots, vec![(0, 2)]);
        assert!(p.orbits.is_empty());
        assert_eq!(p.to_line(), "1 3 1 0 1 | 0:2 | -");

        let p = profile(0, &[4, 0, 3], 7);
        assert_eq!(p.prime_roots, vec![(1, 1), (6, 1)]);
        assert_eq!(p.unit, 3);

        let p = profile(1, &a1, 5);
        assert_eq!(p.s_a, 4);
        assert!(p.prime_roots.is_empty());
        assert_eq!(p.orbits.len(), 1);
        assert_eq!((p.orbits[0].size, p.orbits[0].mult), (4, 1));
        assert_eq!(p.degree(), 4);
    }

    #[test]
    fn line_round_trip() {
        for line in [
            "1 3 1 0 1 | 0:2 | -",
            "0 3 1 0 1 | - | -",
            "6 7 6 0 3 | 1:2,6:2 | orbit(2,1,5-1-5-1-5-1);orbit(3,1,0-1-2-0-1-2)",
        ] {
            let p: RootProfile = line.parse().unwrap();
            assert_eq!(p.to_line(), line);
        }
        assert!("1 3 1 0 | - | -".parse::<RootProfile>().is_err());
        assert!("1 3 1 0 2 | 0:x | -".parse::<RootProfile>().is_err());
        assert!("1 3 1 0 2 | - | orbit(2,1)".parse::<RootProfile>().is_err());
    }

    #[test]
    fn labels() {
        let o = OrbitRecord {
            size: 2,
            mult: 1,
            signature: vec![5, 1, 5, 1, 5, 1],
        };
        assert_eq!(o.label(7), 29412);
    }
}
