use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::sync::Arc;

use rayon::prelude::*;

use super::cache::{sha256_hex, Cache, CacheContents};
use super::config::{SourceSpec, VerifyConfig};
use super::report::VerdictRecord;
use super::suites::conj1_evidence;
use crate::error::{Error, Result};
use crate::factor::{
    dlog_registry, factor_with, factorizer_registry, root_profile, splitting_degree_of, DlogSolver,
    Factorizer, RootProfile,
};
use crate::ff::{build_field, delta, mod_np, model, model_meta, Variant};
use crate::hauptmodul::{calibration_registry, CalibrationStrategy, SeriesEngine};
use crate::interp::{
    parse_atable, recover_an, sample_indices, write_atable, InterpolatedA, PhiSequence,
};

/// Runs closures either on the calling thread or on a dedicated pool.
/// Results always come back in input order.
pub(crate) struct Exec {
    pool: Option<rayon::ThreadPool>,
}

impl Exec {
    pub(crate) fn new(jobs: usize) -> Result<Self> {
        if jobs == 1 {
            return Ok(Exec { pool: None });
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::arg(format!("cannot start worker pool: {e}")))?;
        Ok(Exec { pool: Some(pool) })
    }

    pub(crate) fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match &self.pool {
            None => items.iter().map(f).collect(),
            Some(pool) => pool.install(|| items.par_iter().map(f).collect()),
        }
    }
}

/// The strategies named in a configuration, resolved through the registries.
pub struct Strategies {
    pub calibration: Arc<dyn CalibrationStrategy>,
    pub factorizer: Arc<dyn Factorizer>,
    pub dlog: Arc<dyn DlogSolver>,
}

impl Strategies {
    pub fn resolve(config: &VerifyConfig) -> Result<Self> {
        Ok(Strategies {
            calibration: calibration_registry().get(&config.calibration)?,
            factorizer: factorizer_registry().get(&config.factorizer)?,
            dlog: dlog_registry().get(&config.dlog)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProfileOutcome {
    /// `p` is not among the profiled primes.
    NotRequested,
    Done(RootProfile),
    /// The splitting field is larger than the budget.
    Skipped {
        order: u128,
    },
    /// A structural check on the roots failed.
    Failed(String),
}

/// Everything computed for one `(n, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelData {
    pub n: i64,
    pub p: u64,
    pub mod_np: u64,
    pub delta: i64,
    pub s_a: u32,
    /// Units of the factorisations of the `K` and `K_p` models.
    pub unit_k: u64,
    pub unit_kp: u64,
    pub alpha: u64,
    pub alpha_star: u64,
    /// Coefficients of the `K_p` model, ascending.
    pub kp_coeffs: Vec<u64>,
    pub profile: ProfileOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskResult {
    pub n: i64,
    pub p: u64,
    pub data: std::result::Result<ModelData, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    /// Natural expansions computed by the series engine in this run.
    pub series_computed: usize,
    pub table_from_cache: bool,
    pub profiles_from_cache: usize,
    pub profiles_computed: usize,
}

pub struct RunData {
    pub config: VerifyConfig,
    /// `A_{-1}, ..., A_nmax`.
    pub table: Vec<InterpolatedA>,
    /// Series-derived report-only records, one group per `n`.
    pub evidence: Vec<VerdictRecord>,
    /// Sorted by `p`, then `n`.
    pub tasks: Vec<TaskResult>,
    pub stats: RunStats,
}

impl RunData {
    pub fn a(&self, n: i64) -> Option<&InterpolatedA> {
        self.table.get(usize::try_from(n + 1).ok()?)
    }

    pub fn task(&self, n: i64, p: u64) -> Option<&TaskResult> {
        self.tasks
            .binary_search_by_key(&(p, n), |t| (t.p, t.n))
            .ok()
            .map(|i| &self.tasks[i])
    }

    pub fn data(&self, n: i64, p: u64) -> Option<&ModelData> {
        self.task(n, p).and_then(|t| t.data.as_ref().ok())
    }
}

/// The `m` values whose expansions feed `A_{-1..=nmax}` and the `c_m(n)`
/// evidence up to `conj1_top`.
pub fn required_indices(nmax: i64, conj1_top: i64, guard: u32) -> Vec<u32> {
    let mut ms: BTreeSet<u32> = sample_indices(nmax, guard).into_iter().collect();
    for n in -1..=conj1_top {
        ms.extend(conj1_indices(n, guard));
    }
    ms.into_iter().collect()
}

/// `3n + 4` interpolation points for `C_n` plus `guard` checks.
pub fn conj1_indices(n: i64, guard: u32) -> Vec<u32> {
    (3..3 + (3 * n + 4) as u32 + guard).collect()
}

struct Generated {
    table: Vec<InterpolatedA>,
    calibration: String,
    evidence: Vec<VerdictRecord>,
    computed: usize,
}

fn generate(
    config: &VerifyConfig,
    strat: &Strategies,
    phi: &PhiSequence,
    exec: &Exec,
) -> Result<Generated> {
    let engine = SeriesEngine::for_nmax(config.nmax, strat.calibration.clone());
    let top = config.nmax.min(config.conj1_nmax);
    let ms = required_indices(config.nmax, top, config.guard);
    let table = build_table(&engine, &ms, config.nmax, config.guard, exec)?;
    let mut calibration = format!("CALIBRATION 1\nstrategy {}\n", engine.strategy_name());
    for &m in &ms {
        let c = engine.calibration(m)?;
        writeln!(calibration, "{m} {} {} {}", c.c_scale, c.s_shift, c.weight).unwrap();
    }
    let evidence = conj1_evidence(&engine, &table, top, config.guard, phi, exec)?;
    Ok(Generated {
        table,
        calibration,
        evidence,
        computed: engine.expansions_computed(),
    })
}

fn build_table(
    engine: &SeriesEngine,
    ms: &[u32],
    nmax: i64,
    guard: u32,
    exec: &Exec,
) -> Result<Vec<InterpolatedA>> {
    exec.map(ms, |&m| engine.natural(m).map(|_| ()))
        .into_iter()
        .collect::<Result<Vec<()>>>()?;
    let ns: Vec<i64> = (-1..=nmax).collect();
    exec.map(&ns, |&n| recover_an(engine, n, guard))
        .into_iter()
        .collect()
}

/// `A_{-1}, ..., A_nmax` straight from the series engine, with the number of
/// natural expansions computed.
pub fn generate_table(
    nmax: i64,
    guard: u32,
    calibration: Arc<dyn CalibrationStrategy>,
    jobs: usize,
) -> Result<(Vec<InterpolatedA>, usize)> {
    let engine = SeriesEngine::for_nmax(nmax, calibration);
    let ms = sample_indices(nmax, guard);
    let table = build_table(&engine, &ms, nmax, guard, &Exec::new(jobs)?)?;
    Ok((table, engine.expansions_computed()))
}

fn model_task(
    a: &InterpolatedA,
    p: u64,
    config: &VerifyConfig,
    strat: &Strategies,
    cached: Option<&RootProfile>,
) -> TaskResult {
    let data = (|| -> Result<ModelData> {
        let n = a.n;
        let field = build_field(p, 1)?;
        let kp = model(a, &field, Variant::Kp)?;
        let k = model(a, &field, Variant::K)?;
        let fact = factor_with(&kp.poly, strat.factorizer.as_ref(), config.seed)?;
        let fact_k = factor_with(&k.poly, strat.factorizer.as_ref(), config.seed)?;
        let meta = model_meta(a, &field)?;
        let s_a = splitting_degree_of(&fact);
        let profile = if !config.profiled(p) {
            ProfileOutcome::NotRequested
        } else if let Some(c) = cached {
            if c.s_a == s_a && c.unit == fact.unit.index() {
                ProfileOutcome::Done(c.clone())
            } else {
                ProfileOutcome::Failed(format!(
                    "cached profile '{c}' disagrees with s_A = {s_a}, unit {}",
                    fact.unit.index()
                ))
            }
        } else {
            match root_profile(&kp, &fact, strat.dlog.as_ref(), config.budget, config.seed) {
                Ok(pr) => ProfileOutcome::Done(pr),
                Err(Error::BudgetExceeded { order, .. }) => ProfileOutcome::Skipped { order },
                Err(e @ Error::Structure { .. }) => ProfileOutcome::Failed(e.to_string()),
                Err(e) => return Err(e),
            }
        };
        Ok(ModelData {
            n,
            p,
            mod_np: mod_np(n, p),
            delta: delta(n, p),
            s_a,
            unit_k: fact_k.unit.index(),
            unit_kp: fact.unit.index(),
            alpha: meta.r,
            alpha_star: meta.r_star,
            kp_coeffs: kp.poly.coeffs().iter().map(|c| c.index()).collect(),
            profile,
        })
    })();
    TaskResult {
        n: a.n,
        p,
        data: data.map_err(|e| e.to_string()),
    }
}

fn key_matches(c: &CacheContents, keys: &[(&str, String)]) -> bool {
    keys.iter().all(|(k, v)| c.key(k) == Some(v.as_str()))
}

/// Generates or loads the table, builds and factors every model, profiles
/// the requested primes and refreshes the cache.
pub fn run(config: &VerifyConfig) -> Result<RunData> {
    config.validate()?;
    let strat = Strategies::resolve(config)?;
    let exec = Exec::new(config.jobs)?;
    let phi = match &config.phi {
        Some(path) => PhiSequence::load(path)?,
        None => PhiSequence::default(),
    };
    let ingested = match &config.source {
        SourceSpec::Ingested(path) => Some(fs::read_to_string(path).map_err(|e| {
            Error::arg(format!(
                "cannot read ingested table {}: {e}",
                path.display()
            ))
        })?),
        SourceSpec::Generated => None,
    };
    let source_key = match &ingested {
        Some(text) => format!("ingested:{}", sha256_hex(text.as_bytes())),
        None => "generated".to_string(),
    };
    let gen_keys = [
        ("source", source_key),
        ("calibration", config.calibration.clone()),
        ("guard", config.guard.to_string()),
        ("conj1_nmax", config.conj1_nmax.to_string()),
        ("phi", sha256_hex(phi.write().as_bytes())),
    ];
    let cache = config.cache.as_ref().map(Cache::new);
    let cached = match &cache {
        Some(c) => c.load()?,
        None => None,
    };

    let mut stats = RunStats::default();
    let reusable = cached.as_ref().filter(|c| {
        key_matches(c, &gen_keys)
            && c.key("nmax")
                .and_then(|v| v.parse::<i64>().ok())
                .is_some_and(|m| m >= config.nmax)
    });
    let (full_table, calibration, full_evidence) = if let Some(c) = reusable {
        stats.table_from_cache = true;
        (c.atable.clone(), c.calibration.clone(), c.evidence.clone())
    } else if let Some(text) = &ingested {
        (parse_atable(text)?, String::new(), Vec::new())
    } else {
        let g = generate(config, &strat, &phi, &exec)?;
        stats.series_computed = g.computed;
        (g.table, g.calibration, g.evidence)
    };

    let mut table = Vec::new();
    for n in -1..=config.nmax {
        let a = full_table
            .iter()
            .find(|a| a.n == n)
            .ok_or_else(|| Error::arg(format!("polynomial table lacks A_{n}")))?;
        table.push(a.clone());
    }
    let evidence: Vec<VerdictRecord> = full_evidence
        .iter()
        .filter(|r| r.n.is_some_and(|n| n <= config.nmax))
        .cloned()
        .collect();

    let atable_sha = sha256_hex(write_atable(&full_table).as_bytes());
    let profile_keys = [
        ("seed", config.seed.to_string()),
        ("factorizer", config.factorizer.clone()),
        ("dlog", config.dlog.clone()),
        ("budget", config.budget.to_string()),
        ("profiles_atable", atable_sha),
    ];
    let mut profiles: BTreeMap<(u64, i64), RootProfile> = cached
        .as_ref()
        .filter(|c| key_matches(c, &profile_keys))
        .map(|c| c.profiles.iter().map(|p| ((p.p, p.n), p.clone())).collect())
        .unwrap_or_default();

    let pairs = config.tasks();
    let tasks = exec.map(&pairs, |&(n, p)| {
        model_task(
            &table[(n + 1) as usize],
            p,
            config,
            &strat,
            profiles.get(&(p, n)),
        )
    });
    for t in &tasks {
        if let Ok(ModelData {
            profile: ProfileOutcome::Done(pr),
            ..
        }) = &t.data
        {
            if profiles.insert((t.p, t.n), pr.clone()).is_some() {
                stats.profiles_from_cache += 1;
            } else {
                stats.profiles_computed += 1;
            }
        }
    }

    if let Some(cache) = &cache {
        let table_nmax = full_table.iter().map(|a| a.n).max().unwrap_or(-1);
        let mut keys: BTreeMap<String, String> = gen_keys
            .iter()
            .chain(&profile_keys)
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        keys.insert("nmax".into(), table_nmax.to_string());
        cache.store(&CacheContents {
            keys,
            atable: full_table,
            calibration,
            evidence: full_evidence,
            profiles: profiles.into_values().collect(),
        })?;
    }

    Ok(RunData {
        config: config.clone(),
        table,
        evidence,
        tasks,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            nmax: 3,
            primes: vec![2, 3, 5],
            sa_primes: vec![5, 7],
            zero_primes: vec![5, 7, 11],
            conj1_nmax: 1,
            jobs: 1,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn small_run() {
        let run = run(&small()).unwrap();
        assert_eq!(run.table.len(), 5);
        assert_eq!(run.a(0).unwrap().poly.to_string(), "3x^2 + 4");
        let d = run.data(0, 7).unwrap();
        assert_eq!((d.s_a, d.unit_kp), (1, 3));
        assert_eq!(d.profile, ProfileOutcome::NotRequested);
        let d = run.data(1, 5).unwrap();
        assert_eq!(d.s_a, 4);
        assert!(matches!(d.profile, ProfileOutcome::Done(_)));
        assert!(run.data(1, 11).is_none());
        assert!(run.stats.series_computed > 0);
        assert!(run
            .evidence
            .iter()
            .any(|r| r.clause == "C1.1" && r.n == Some(1)));
    }

    #[test]
    fn budget_skips() {
        let cfg = VerifyConfig {
            budget: 10,
            ..small()
        };
        let run = run(&cfg).unwrap();
        assert!(matches!(
            run.data(1, 5).unwrap().profile,
            ProfileOutcome::Skipped { order: 625 }
        ));
    }

    #[test]
    fn indices() {
        assert_eq!(conj1_indices(-1, 2), vec![3, 4, 5]);
        assert_eq!(conj1_indices(0, 0), vec![3, 4, 5, 6]);
        assert_eq!(required_indices(0, 0, 1), vec![3, 4, 5, 6, 7]);
    }
}
