//! Text formats for polynomial tables and the `phi` sequence.
//!
//! ```text
//! ATABLE 1
//! A 0 2 4 0 3
//! A 1 4 -48 0 -8 0 69
//! ```
//!
//! Each `A` line carries the index, the degree and the coefficients in
//! ascending order. Coefficients are `num` or `num/den` in lowest terms.
//! Lines end in a single LF with no trailing whitespace.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;

use super::recover::{InterpolatedA, Source};
use crate::arith::{QPoly, Rational};
use crate::error::{Error, Result};

const ATABLE_HEADER: &str = "ATABLE 1";
const PHI_HEADER: &str = "PHI 1";

pub fn write_atable(table: &[InterpolatedA]) -> String {
    let mut out = String::from(ATABLE_HEADER);
    out.push('\n');
    for a in table {
        let deg = a.poly.degree().map_or(-1, |d| d as i64);
        write!(out, "A {} {}", a.n, deg).unwrap();
        for c in a.poly.coeffs() {
            write!(out, " {c}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn lines_checked(text: &str) -> Result<Vec<(usize, &str)>> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut out = Vec::new();
    for (i, line) in body.split('\n').enumerate() {
        let lineno = i + 1;
        if line.ends_with('\r') {
            return Err(Error::Parse {
                line: lineno,
                reason: "CR line ending".into(),
            });
        }
        if line != line.trim_end() || line != line.trim_start() {
            return Err(Error::Parse {
                line: lineno,
                reason: "leading or trailing whitespace".into(),
            });
        }
        out.push((lineno, line));
    }
    Ok(out)
}

pub fn parse_atable(text: &str) -> Result<Vec<InterpolatedA>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let lines = lines_checked(text)?;
    let bad = |line: usize, reason: String| Error::Parse { line, reason };
    let (_, header) = lines[0];
    if header != ATABLE_HEADER {
        return Err(bad(1, format!("expected header '{ATABLE_HEADER}'")));
    }
    let mut out = Vec::new();
    for &(ln, line) in &lines[1..] {
        let toks: Vec<&str> = line.split(' ').collect();
        if toks.len() < 3 || toks[0] != "A" {
            return Err(bad(ln, "expected 'A <n> <degree> <coefficients>'".into()));
        }
        let n: i64 = toks[1]
            .parse()
            .map_err(|_| bad(ln, format!("bad index '{}'", toks[1])))?;
        let deg: i64 = toks[2]
            .parse()
            .map_err(|_| bad(ln, format!("bad degree '{}'", toks[2])))?;
        let coeffs = toks[3..]
            .iter()
            .map(|t| t.parse::<Rational>().map_err(|e| bad(ln, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() as i64 != deg + 1 {
            return Err(bad(
                ln,
                format!(
                    "degree {deg} needs {} coefficients, found {}",
                    deg + 1,
                    coeffs.len()
                ),
            ));
        }
        if coeffs.last().is_some_and(Rational::is_zero) {
            return Err(bad(ln, "leading coefficient is zero".into()));
        }
        if n < -1 {
            return Err(bad(ln, format!("index {n} below -1")));
        }
        out.push(InterpolatedA::new(n, QPoly::new(coeffs), Source::Ingested));
    }
    Ok(out)
}

pub fn ingest_table(path: &Path) -> Result<Vec<InterpolatedA>> {
    parse_atable(&std::fs::read_to_string(path)?)
}

/// Integer sequence `phi_{-1}, phi_0, ...`; the first two terms are 1 and 24,
/// later terms come from a data file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSequence {
    values: BTreeMap<i64, BigInt>,
}

impl Default for PhiSequence {
    fn default() -> Self {
        let mut values = BTreeMap::new();
        values.insert(-1, BigInt::from(1));
        values.insert(0, BigInt::from(24));
        PhiSequence { values }
    }
}

impl PhiSequence {
    pub fn get(&self, n: i64) -> Option<&BigInt> {
        self.values.get(&n)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut seq = PhiSequence::default();
        if text.is_empty() {
            return Ok(seq);
        }
        let lines = lines_checked(text)?;
        if lines[0].1 != PHI_HEADER {
            return Err(Error::Parse {
                line: 1,
                reason: format!("expected header '{PHI_HEADER}'"),
            });
        }
        for &(ln, line) in &lines[1..] {
            let bad = || Error::Parse {
                line: ln,
                reason: "expected '<index> <integer>'".into(),
            };
            let (i, v) = line.split_once(' ').ok_or_else(bad)?;
            let i: i64 = i.parse().map_err(|_| bad())?;
            let v: BigInt = v.parse().map_err(|_| bad())?;
            if let Some(fixed) = seq.values.get(&i).filter(|_| i <= 0) {
                if fixed != &v {
                    return Err(Error::Parse {
                        line: ln,
                        reason: format!("phi_{i} must be {fixed}"),
                    });
                }
            }
            seq.values.insert(i, v);
        }
        Ok(seq)
    }

    pub fn write(&self) -> String {
        let mut out = String::from(PHI_HEADER);
        out.push('\n');
        for (i, v) in &self.values {
            writeln!(out, "{i} {v}").unwrap();
        }
        out
    }

    pub fn load(path: &Path) -> Result<Self> {
        PhiSequence::parse(&std::fs::read_to_string(path)?)
    }
}
