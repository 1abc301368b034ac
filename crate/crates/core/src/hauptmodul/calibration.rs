use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{QPoly, Rational};
use crate::error::{Error, Result};
use crate::registry::{Named, Registry};

/// `A_0(m) = 3m^2 + 4`
pub fn anchor_a0(m: u32) -> Rational {
    let m = Rational::from(m);
    Rational::from(3) * &m * &m + Rational::from(4)
}

/// `A_1(m) = 69m^4 - 8m^2 - 48`
pub fn anchor_a1(m: u32) -> Rational {
    let m2 = Rational::from(m).pow(2);
    Rational::from(69) * &m2 * &m2 - Rational::from(8) * &m2 - Rational::from(48)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootSign {
    Positive,
    Negative,
}

impl RootSign {
    pub fn other(self) -> Self {
        match self {
            RootSign::Positive => RootSign::Negative,
            RootSign::Negative => RootSign::Positive,
        }
    }
}

/// Constants pinning the expansion variable for one Hecke index:
/// `a_m(0) = c â_0 + s` and `a_m(n) = c^(n+1) rho^(n-1) â_n` for `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Calibration {
    pub m: u32,
    pub c_scale: Rational,
    pub s_shift: Rational,
    pub weight: Rational,
}

impl Calibration {
    /// Solves the two anchor equations `c â_0 + s = A_0(m)/m^2` and
    /// `c^2 â_1 = A_1(m)/m^4`; `natural` holds `â_{-1}, â_0, â_1, ...`.
    pub fn solve(m: u32, natural: &[Rational], sign: RootSign, weight: Rational) -> Result<Self> {
        if natural.len() < 3 {
            return Err(Error::Calibration {
                m,
                reason: "natural expansion shorter than three terms".into(),
            });
        }
        let (a0, a1) = (&natural[1], &natural[2]);
        if a1.is_zero() {
            return Err(Error::Calibration {
                m,
                reason: "degenerate expansion: â_1 = 0".into(),
            });
        }
        let mr = Rational::from(m);
        let target = anchor_a1(m) / mr.pow(4) / a1;
        let root = target.sqrt_exact().ok_or_else(|| Error::Calibration {
            m,
            reason: format!("(A_1(m)/m^4)/â_1 = {target} is not the square of a rational"),
        })?;
        let c_scale = match sign {
            RootSign::Positive => root,
            RootSign::Negative => -root,
        };
        let s_shift = anchor_a0(m) / mr.pow(2) - &c_scale * a0;
        Ok(Calibration {
            m,
            c_scale,
            s_shift,
            weight,
        })
    }

    /// `a_m(n)` from `â_n`.
    pub fn apply(&self, n: i64, hat: &Rational) -> Rational {
        match n {
            -1 => hat.clone(),
            0 => &self.c_scale * hat + &self.s_shift,
            _ => self.c_scale.pow(n + 1) * self.weight.pow(n - 1) * hat,
        }
    }
}

/// Source of natural expansions handed to a strategy: `m -> â_{-1..}`.
pub type NaturalSource<'a> = &'a (dyn Fn(u32) -> Result<Arc<Vec<Rational>>> + Sync);

/// How the free weight `rho` of a calibration is chosen.
pub trait CalibrationStrategy: Named + Send + Sync {
    fn weight(&self, sign: RootSign, natural: NaturalSource<'_>) -> Result<Rational>;
}

/// `rho = 1`: the pure affine recalibration.
pub struct Monic;

impl Named for Monic {
    fn name(&self) -> &'static str {
        "monic"
    }
}

impl CalibrationStrategy for Monic {
    fn weight(&self, _sign: RootSign, _natural: NaturalSource<'_>) -> Result<Rational> {
        Ok(Rational::one())
    }
}

/// `rho = 2^-e`, with `e` the least 2-adic order among the coefficients of
/// the degree-6 interpolant of the monic `n = 2` samples. Without it every
/// even-index polynomial past `n = 0` is divisible by a power of two, so its
/// reduction mod 2 vanishes and 2 never enters its denominator set.
pub struct TwoAdic;

impl Named for TwoAdic {
    fn name(&self) -> &'static str {
        "two-adic"
    }
}

impl CalibrationStrategy for TwoAdic {
    fn weight(&self, sign: RootSign, natural: NaturalSource<'_>) -> Result<Rational> {
        const N: i64 = 2;
        const GUARD: u32 = 2;
        let npts = (2 * N + 3) as u32;
        let mut pts = Vec::new();
        for m in 3..3 + npts + GUARD {
            let nat = natural(m)?;
            if nat.len() <= (N + 1) as usize {
                return Err(Error::Precision {
                    requested: N,
                    available: nat.len() as i64 - 2,
                });
            }
            let cal = Calibration::solve(m, &nat, sign, Rational::one())?;
            let y = Rational::from(m).pow(2 * N + 2) * cal.apply(N, &nat[(N + 1) as usize]);
            pts.push((Rational::from(m), y));
        }
        let poly = QPoly::interpolate(&pts[..npts as usize])?;
        for (x, y) in &pts[npts as usize..] {
            if &poly.eval(x) != y {
                return Err(Error::InterpolationInstability {
                    n: N,
                    m: x.numer().try_into().unwrap_or(0),
                });
            }
        }
        let e = poly
            .coeffs()
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.ord_p(2))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .ok_or_else(|| Error::Calibration {
                m: 3,
                reason: "monic n = 2 interpolant vanishes".into(),
            })?;
        Ok(Rational::from(2).pow(-e))
    }
}

pub fn calibration_registry() -> Registry<dyn CalibrationStrategy> {
    let mut reg: Registry<dyn CalibrationStrategy> = Registry::new("calibration");
    reg.register(Arc::new(Monic)).register(Arc::new(TwoAdic));
    reg.with_default("two-adic")
}
