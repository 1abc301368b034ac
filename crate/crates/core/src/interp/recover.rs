use serde::{Deserialize, Serialize};

use super::denominators::pi_set;
use crate::arith::{QPoly, Rational};
use crate::error::{Error, Result};
use crate::hauptmodul::SeriesEngine;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Generated,
    Ingested,
}

/// `A_n(x)` together with its denominator set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpolatedA {
    pub n: i64,
    pub poly: QPoly,
    pub pi_set: Vec<u64>,
    pub source: Source,
}

impl InterpolatedA {
    pub fn new(n: i64, poly: QPoly, source: Source) -> Self {
        let pi_set = pi_set(&poly);
        InterpolatedA {
            n,
            poly,
            pi_set,
            source,
        }
    }

    /// Structural expectations that hold for every generated polynomial;
    /// returns a description of each one that fails.
    pub fn structural_flags(&self) -> Vec<String> {
        let mut flags = Vec::new();
        let n = self.n;
        let want_deg = if n < 0 { 0 } else { 2 * n + 2 } as usize;
        if self.poly.degree() != Some(want_deg) {
            flags.push(format!(
                "degree {:?}, expected {want_deg}",
                self.poly.degree()
            ));
        }
        if n > 0 && n % 2 == 1 && !self.poly.coeff(n as usize).is_zero() {
            flags.push(format!("coefficient of x^{n} is nonzero"));
        }
        if self
            .poly
            .coeffs()
            .iter()
            .skip(1)
            .step_by(2)
            .any(|c| !c.is_zero())
        {
            flags.push("not even: A_n(x) != A_n(-x)".into());
        }
        let anchor = match n {
            -1 => Some(QPoly::from_ints(&[1])),
            0 => Some(QPoly::from_ints(&[4, 0, 3])),
            1 => Some(QPoly::from_ints(&[-48, 0, -8, 0, 69])),
            _ => None,
        };
        if let Some(a) = anchor {
            if a != self.poly {
                flags.push(format!("disagrees with anchor {a}"));
            }
        }
        flags
    }
}

/// Abscissae used for `A_n`: `2n + 3` interpolation points followed by
/// `guard` check points, all starting at `m = 3`.
pub fn sample_indices(n: i64, guard: u32) -> Vec<u32> {
    let npts = (2 * n.max(0) + 3) as u32;
    (3..3 + npts + guard).collect()
}

/// Interpolates `A_n` through `(m, m^(2n+2) a_m(n))` and checks the guard
/// samples, the degree and the vanishing `x^n` coefficient for odd `n`.
pub fn recover_an(engine: &SeriesEngine, n: i64, guard: u32) -> Result<InterpolatedA> {
    if n < -1 {
        return Err(Error::arg(format!("index n = {n} below -1")));
    }
    if n == -1 {
        return Ok(InterpolatedA::new(
            -1,
            QPoly::from_ints(&[1]),
            Source::Generated,
        ));
    }
    let ms = sample_indices(n, guard);
    let npts = (2 * n + 3) as usize;
    let mut pts = Vec::with_capacity(ms.len());
    for &m in &ms {
        let a = engine.coefficient(m, n)?;
        pts.push((Rational::from(m), Rational::from(m).pow(2 * n + 2) * a));
    }
    let poly = QPoly::interpolate(&pts[..npts])?;
    for (x, y) in &pts[npts..] {
        if &poly.eval(x) != y {
            return Err(Error::InterpolationInstability {
                n,
                m: u32::try_from(x.numer()).unwrap_or(0),
            });
        }
    }
    if poly.degree() != Some(2 * n as usize + 2) {
        return Err(Error::Structure {
            n,
            reason: format!("degree {:?} instead of {}", poly.degree(), 2 * n + 2),
        });
    }
    if n % 2 == 1 && !poly.coeff(n as usize).is_zero() {
        return Err(Error::Structure {
            n,
            reason: format!("coefficient of x^{n} is {}", poly.coeff(n as usize)),
        });
    }
    Ok(InterpolatedA::new(n, poly, Source::Generated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hauptmodul::{anchor_a0, calibration_registry};

    #[test]
    fn anchors_recovered() {
        let eng = SeriesEngine::for_nmax(1, calibration_registry().default_strategy());
        assert_eq!(
            recover_an(&eng, -1, 2).unwrap().poly,
            QPoly::from_ints(&[1])
        );
        let a0 = recover_an(&eng, 0, 2).unwrap();
        assert_eq!(a0.poly, QPoly::from_ints(&[4, 0, 3]));
        assert!(a0.structural_flags().is_empty());
        let a1 = recover_an(&eng, 1, 2).unwrap();
        assert_eq!(a1.poly, QPoly::from_ints(&[-48, 0, -8, 0, 69]));
        assert!(a1.pi_set.is_empty());
        for m in 3..8 {
            assert_eq!(a0.poly.eval(&Rational::from(m)), anchor_a0(m));
        }
    }

    #[test]
    fn flags_on_bad_input() {
        let bad = InterpolatedA::new(1, QPoly::from_ints(&[-48, 1, -8, 0, 70]), Source::Ingested);
        let flags = bad.structural_flags();
        assert!(flags.iter().any(|f| f.contains("x^1")));
        assert!(flags.iter().any(|f| f.contains("anchor")));
        assert_eq!(sample_indices(0, 2), vec![3, 4, 5, 6, 7]);
    }
}
