use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::arith::{is_prime, primes_upto};
use crate::error::{Error, Result};

/// Where the polynomial table comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceSpec {
    Generated,
    Ingested(PathBuf),
}

impl fmt::Display for SourceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceSpec::Generated => f.write_str("generated"),
            SourceSpec::Ingested(p) => write!(f, "ingested:{}", p.display()),
        }
    }
}

impl FromStr for SourceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generated" => Ok(SourceSpec::Generated),
            _ => match s.strip_prefix("ingested:") {
                Some(path) if !path.is_empty() => Ok(SourceSpec::Ingested(path.into())),
                _ => Err(Error::arg(format!(
                    "source must be 'generated' or 'ingested:PATH', got '{s}'"
                ))),
            },
        }
    }
}

/// Everything that determines a verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub nmax: i64,
    /// Primes whose models are profiled and checked against the tables.
    pub primes: Vec<u64>,
    /// Primes for the residue-class and `n = p - 1` splitting-degree checks.
    pub sa_primes: Vec<u64>,
    /// Primes for the `s_A(0, p)` dichotomy.
    pub zero_primes: Vec<u64>,
    /// Largest `n` for the `c_m(n)` interpolation evidence.
    pub conj1_nmax: i64,
    /// Largest field order in which roots are located.
    pub budget: u128,
    pub seed: u64,
    pub calibration: String,
    pub factorizer: String,
    pub dlog: String,
    /// Worker threads; `1` runs everything on the calling thread and `0`
    /// uses one per core.
    pub jobs: usize,
    pub source: SourceSpec,
    pub cache: Option<PathBuf>,
    /// Interpolation check points beyond the minimum.
    pub guard: u32,
    pub phi: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            nmax: 30,
            primes: vec![2, 3, 5, 7],
            sa_primes: (5..=17).filter(|&p| is_prime(p)).collect(),
            zero_primes: (5..=47).filter(|&p| is_prime(p)).collect(),
            conj1_nmax: 10,
            budget: 1 << 31,
            seed: 0,
            calibration: "two-adic".into(),
            factorizer: "cantor-zassenhaus".into(),
            dlog: "pohlig-hellman".into(),
            jobs: 0,
            source: SourceSpec::Generated,
            cache: None,
            guard: 2,
            phi: None,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nmax < -1 {
            return Err(Error::arg(format!("nmax = {} below -1", self.nmax)));
        }
        for &p in self
            .primes
            .iter()
            .chain(&self.sa_primes)
            .chain(&self.zero_primes)
        {
            if !is_prime(p) {
                return Err(Error::arg(format!("{p} is not prime")));
            }
        }
        Ok(())
    }

    /// Every prime for which models are built, ascending.
    pub fn all_primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self
            .primes
            .iter()
            .chain(&self.sa_primes)
            .chain(&self.zero_primes)
            .copied()
            .chain([2])
            .collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// `(n, p)` pairs that get a model, sorted by `p` then `n`. Primes only
    /// used for the `n = 0` dichotomy contribute the single pair `(0, p)`.
    pub fn tasks(&self) -> Vec<(i64, u64)> {
        let mut out = Vec::new();
        for p in self.all_primes() {
            let full = p == 2 || self.primes.contains(&p) || self.sa_primes.contains(&p);
            if full {
                out.extend((-1..=self.nmax).map(|n| (n, p)));
            } else if self.nmax >= 0 {
                out.push((0, p));
            }
        }
        out
    }

    pub fn profiled(&self, p: u64) -> bool {
        self.primes.contains(&p)
    }

    /// The `key=value` parameters echoed into reports. Thread count and cache
    /// location are left out because they never change a result.
    pub fn parameters(&self) -> Vec<(String, String)> {
        let list = |ps: &[u64]| ps.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        vec![
            ("nmax".into(), self.nmax.to_string()),
            ("primes".into(), list(&self.primes)),
            ("sa_primes".into(), list(&self.sa_primes)),
            ("zero_primes".into(), list(&self.zero_primes)),
            ("conj1_nmax".into(), self.conj1_nmax.to_string()),
            ("budget".into(), self.budget.to_string()),
            ("seed".into(), self.seed.to_string()),
            ("calibration".into(), self.calibration.clone()),
            ("factorizer".into(), self.factorizer.clone()),
            ("dlog".into(), self.dlog.clone()),
            ("guard".into(), self.guard.to_string()),
            ("source".into(), self.source.to_string()),
        ]
    }
}

/// Parses `2,3,5` or a range `5..17` (inclusive, primes only).
pub fn parse_primes(s: &str) -> Result<Vec<u64>> {
    let bad = || Error::arg(format!("bad prime list '{s}'"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u64 = lo.parse().map_err(|_| bad())?;
            let hi: u64 = hi.trim_start_matches('=').parse().map_err(|_| bad())?;
            out.extend(primes_upto(hi).into_iter().filter(|&p| p >= lo));
        } else {
            let p: u64 = part.parse().map_err(|_| bad())?;
            if !is_prime(p) {
                return Err(Error::arg(format!("{p} is not prime")));
            }
            out.push(p);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = VerifyConfig::default();
        c.validate().unwrap();
        assert_eq!(c.sa_primes, vec![5, 7, 11, 13, 17]);
        assert_eq!(c.zero_primes.first(), Some(&5));
        assert_eq!(c.zero_primes.last(), Some(&47));
        let tasks = c.tasks();
        assert!(tasks.contains(&(30, 17)));
        assert!(tasks.contains(&(0, 47)));
        assert!(!tasks.contains(&(1, 47)));
        assert!(tasks
            .windows(2)
            .all(|w| (w[0].1, w[0].0) < (w[1].1, w[1].0)));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_primes("7,2,3,5,3").unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(parse_primes("5..17").unwrap(), vec![5, 7, 11, 13, 17]);
        assert!(parse_primes("4").is_err());
        assert!(parse_primes("x").is_err());
        assert_eq!(
            "generated".parse::<SourceSpec>().unwrap(),
            SourceSpec::Generated
        );
        assert_eq!(
            "ingested:a.txt".parse::<SourceSpec>().unwrap(),
            SourceSpec::Ingested("a.txt".into())
        );
        assert!("ingested:".parse::<SourceSpec>().is_err());
    }
}
