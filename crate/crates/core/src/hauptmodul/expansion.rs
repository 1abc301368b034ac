use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::calibration::{Calibration, CalibrationStrategy, RootSign};
use super::natural::natural_expansion;
use crate::arith::{LaurentSeries, Rational};
use crate::error::{Error, Result};

/// Calibrated coefficients `a_m(-1), a_m(0), ..., a_m(order-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JExpansion {
    pub m: u32,
    pub order: usize,
    pub coeffs: Vec<Rational>,
}

impl JExpansion {
    /// `a_m(n)`, `n >= -1`.
    pub fn coeff(&self, n: i64) -> Option<&Rational> {
        self.coeffs.get(usize::try_from(n + 1).ok()?)
    }

    pub fn to_series(&self) -> LaurentSeries {
        LaurentSeries::new(-1, self.coeffs.clone(), self.order as i64)
    }
}

/// Produces calibrated expansions for any `m >= 3` at a fixed order,
/// memoising the natural expansions and calibrations it computes.
pub struct SeriesEngine {
    order: usize,
    strategy: Arc<dyn CalibrationStrategy>,
    sign: RootSign,
    natural: Mutex<BTreeMap<u32, Arc<Vec<Rational>>>>,
    weight: OnceLock<Rational>,
    computed: AtomicUsize,
}

impl SeriesEngine {
    /// `order` is the number of coefficients past the pole, so `a_m(n)` is
    /// available for `n < order`.
    pub fn new(order: usize, strategy: Arc<dyn CalibrationStrategy>) -> Self {
        SeriesEngine {
            order: order.max(2),
            strategy,
            sign: RootSign::Positive,
            natural: Mutex::new(BTreeMap::new()),
            weight: OnceLock::new(),
            computed: AtomicUsize::new(0),
        }
    }

    /// Engine sized for polynomial indices up to `nmax`.
    pub fn for_nmax(nmax: i64, strategy: Arc<dyn CalibrationStrategy>) -> Self {
        SeriesEngine::new((nmax.max(1) + 2) as usize, strategy)
    }

    pub fn with_sign(mut self, sign: RootSign) -> Self {
        self.sign = sign;
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn sign(&self) -> RootSign {
        self.sign
    }

    pub fn strategy_name(&self) -> &'static str {
        self.strategy.name()
    }

    /// Number of natural expansions computed (not served from memory).
    pub fn expansions_computed(&self) -> usize {
        self.computed.load(Ordering::Relaxed)
    }

    pub fn natural(&self, m: u32) -> Result<Arc<Vec<Rational>>> {
        if let Some(v) = self.natural.lock().unwrap().get(&m) {
            return Ok(v.clone());
        }
        let v = Arc::new(natural_expansion(m, self.order)?);
        self.computed.fetch_add(1, Ordering::Relaxed);
        Ok(self.natural.lock().unwrap().entry(m).or_insert(v).clone())
    }

    /// Computes the natural expansions for `ms` concurrently.
    pub fn prefetch(&self, ms: &[u32]) -> Result<()> {
        let missing: Vec<u32> = {
            let have = self.natural.lock().unwrap();
            ms.iter()
                .copied()
                .filter(|m| !have.contains_key(m))
                .collect()
        };
        missing
            .par_iter()
            .try_for_each(|&m| self.natural(m).map(|_| ()))
    }

    pub fn weight(&self) -> Result<Rational> {
        if let Some(w) = self.weight.get() {
            return Ok(w.clone());
        }
        let src = |m: u32| self.natural(m);
        let w = self.strategy.weight(self.sign, &src)?;
        Ok(self.weight.get_or_init(|| w).clone())
    }

    pub fn calibration(&self, m: u32) -> Result<Calibration> {
        let nat = self.natural(m)?;
        Calibration::solve(m, &nat, self.sign, self.weight()?)
    }

    pub fn calibrated_expansion(&self, m: u32) -> Result<JExpansion> {
        let nat = self.natural(m)?;
        let cal = self.calibration(m)?;
        let coeffs = nat
            .iter()
            .enumerate()
            .map(|(i, hat)| cal.apply(i as i64 - 1, hat))
            .collect();
        Ok(JExpansion {
            m,
            order: self.order,
            coeffs,
        })
    }

    /// `a_m(n)`; errors if `n` is beyond the engine order.
    pub fn coefficient(&self, m: u32, n: i64) -> Result<Rational> {
        if n < -1 || n >= self.order as i64 {
            return Err(Error::Precision {
                requested: n,
                available: self.order as i64 - 1,
            });
        }
        let nat = self.natural(m)?;
        Ok(self.calibration(m)?.apply(n, &nat[(n + 1) as usize]))
    }

    pub fn j_expansion(&self, m: u32) -> Result<LaurentSeries> {
        bar(&self.calibrated_expansion(m)?.to_series(), m)
    }
}

/// The bar operator: substitute `X -> 2^6 m^3 X` and normalise the leading
/// coefficient to one.
pub fn bar(f: &LaurentSeries, m: u32) -> Result<LaurentSeries> {
    let ka = f.leading_coeff().ok_or_else(|| Error::SeriesContract {
        series: f.to_string(),
        reason: "bar of a series with no nonzero coefficient".into(),
    })?;
    let lam = Rational::from(64u64 * u64::from(m).pow(3));
    let lead = f.lead_index();
    let norm = ka * lam.pow(lead);
    let coeffs = (lead..f.trunc())
        .map(|e| f.coeff(e).unwrap() * lam.pow(e) / &norm)
        .collect();
    Ok(LaurentSeries::new(lead, coeffs, f.trunc()))
}
