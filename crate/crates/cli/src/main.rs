//! `heckemod`: batch front end for generating the polynomial tables, their
//! finite-field models and factorisations, and the verification reports.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use heckemod_core::factor::{factor_with, root_profile, splitting_degree_of};
use heckemod_core::ff::{build_field, model, model_meta, Variant};
use heckemod_core::hauptmodul::SeriesEngine;
use heckemod_core::interp::{ingest_table, write_atable, InterpolatedA};
use heckemod_core::verify::{
    build_report, generate_table, parse_primes, run, Report, SourceSpec, Strategies, Verdict,
    VerifyConfig,
};
use heckemod_core::Error;

#[derive(Parser)]
#[command(name = "heckemod", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Calibrated expansion coefficients a_m(n) as CSV.
    Gen(GenArgs),
    /// The polynomial table A_{-1}..A_nmax in ATABLE format.
    Interp(Common),
    /// Reduced models of every A_n modulo the given primes.
    Model(Common),
    /// Factorisations and root profiles of the models.
    Factor(Common),
    /// Run every clause suite; exits 1 if any clause fails.
    Verify(VerifyArgs),
    /// Same as verify, but always exits 0.
    Report(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Largest Hecke index.
    #[arg(long, default_value_t = 10)]
    mmax: u32,
    /// Number of coefficients past the pole.
    #[arg(long, default_value_t = 6)]
    order: usize,
    #[arg(long, default_value = "two-adic")]
    calibration: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 30)]
    nmax: i64,
    /// Comma list or inclusive range, e.g. `2,3,5,7` or `5..17`.
    #[arg(long, default_value = "2,3,5,7")]
    primes: String,
    /// Largest field order in which roots are located.
    #[arg(long, default_value_t = 1u128 << 31)]
    budget: u128,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `generated` or `ingested:PATH`.
    #[arg(long, default_value = "generated")]
    source: String,
    #[arg(long, default_value = "two-adic")]
    calibration: String,
    #[arg(long, default_value = "cantor-zassenhaus")]
    factorizer: String,
    #[arg(long, default_value = "pohlig-hellman")]
    dlog: String,
    /// Interpolation check points beyond the minimum.
    #[arg(long, default_value_t = 2)]
    guard: u32,
    /// Worker threads; 1 disables parallelism, 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Md,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Primes for the residue-class and n = p - 1 splitting-degree checks.
    #[arg(long, default_value = "5..17")]
    sa_primes: String,
    /// Primes for the s_A(0, p) dichotomy.
    #[arg(long, default_value = "5..47")]
    zero_primes: String,
    /// Largest n for the c_m(n) evidence.
    #[arg(long, default_value_t = 10)]
    conj1_nmax: i64,
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    phi: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

impl Common {
    fn config(&self) -> Result<VerifyConfig> {
        Ok(VerifyConfig {
            nmax: self.nmax,
            primes: parse_primes(&self.primes)?,
            budget: self.budget,
            seed: self.seed,
            source: self.source.parse()?,
            calibration: self.calibration.clone(),
            factorizer: self.factorizer.clone(),
            dlog: self.dlog.clone(),
            guard: self.guard,
            jobs: self.jobs,
            ..VerifyConfig::default()
        })
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn table(cfg: &VerifyConfig) -> Result<Vec<InterpolatedA>> {
    let full = match &cfg.source {
        SourceSpec::Generated => {
            let strat = Strategies::resolve(cfg)?;
            generate_table(cfg.nmax, cfg.guard, strat.calibration, cfg.jobs)?.0
        }
        SourceSpec::Ingested(path) => ingest_table(path)?,
    };
    Ok(full.into_iter().filter(|a| a.n <= cfg.nmax).collect())
}

fn gen(args: &GenArgs) -> Result<()> {
    if args.mmax < 3 {
        bail!("--mmax must be at least 3");
    }
    let cfg = VerifyConfig {
        calibration: args.calibration.clone(),
        ..VerifyConfig::default()
    };
    // the two-adic weight is read off a_m(2), so compute at least that far
    let engine = SeriesEngine::new(args.order.max(3), Strategies::resolve(&cfg)?.calibration);
    let mut out = String::from("m,n,a_m(n)\n");
    for m in 3..=args.mmax {
        let j = engine.calibrated_expansion(m)?;
        for (i, c) in j.coeffs.iter().enumerate().take(args.order + 1) {
            writeln!(out, "{m},{},{c}", i as i64 - 1)?;
        }
    }
    emit(&args.out, &out)
}

fn models(args: &Common) -> Result<()> {
    let cfg = args.config()?;
    let mut out = String::from("n,p,variant,coefficients,a,a_star,alpha,alpha_star\n");
    for a in table(&cfg)? {
        for &p in &cfg.primes {
            let field = build_field(p, 1)?;
            let meta = model_meta(&a, &field)?;
            for (name, variant) in [("K", Variant::K), ("Kp", Variant::Kp)] {
                let m = model(&a, &field, variant)?;
                let cs: Vec<String> = m
                    .poly
                    .coeffs()
                    .iter()
                    .map(|c| c.index().to_string())
                    .collect();
                writeln!(
                    out,
                    "{},{p},{name},{},{},{},{},{}",
                    a.n,
                    cs.join(" "),
                    meta.a,
                    meta.a_star,
                    meta.r,
                    meta.r_star
                )?;
            }
        }
    }
    emit(&args.out, &out)
}

fn factor(args: &Common) -> Result<()> {
    let cfg = args.config()?;
    let strat = Strategies::resolve(&cfg)?;
    let mut out = String::new();
    for a in table(&cfg)? {
        for &p in &cfg.primes {
            let field = build_field(p, 1)?;
            let kp = model(&a, &field, Variant::Kp)?;
            let fact = factor_with(&kp.poly, strat.factorizer.as_ref(), cfg.seed)?;
            match root_profile(&kp, &fact, strat.dlog.as_ref(), cfg.budget, cfg.seed) {
                Ok(pr) => writeln!(out, "{pr}")?,
                Err(Error::BudgetExceeded { order, .. }) => writeln!(
                    out,
                    "{} {p} {} skipped-budget (order {order})",
                    a.n,
                    splitting_degree_of(&fact)
                )?,
                Err(e) => return Err(e.into()),
            }
        }
    }
    emit(&args.out, &out)
}

fn render(report: &Report, format: Format) -> Result<String> {
    Ok(match format {
        Format::Csv => report.to_csv()?,
        Format::Md => report.to_markdown(),
        Format::Json => report.to_json()?,
    })
}

fn verify(args: &VerifyArgs, strict: bool) -> Result<ExitCode> {
    let cfg = VerifyConfig {
        sa_primes: parse_primes(&args.sa_primes)?,
        zero_primes: parse_primes(&args.zero_primes)?,
        conj1_nmax: args.conj1_nmax,
        cache: args.cache.clone(),
        phi: args.phi.clone(),
        ..args.common.config()?
    };
    let data = run(&cfg)?;
    let report = build_report(&data);
    emit(&args.common.out, &render(&report, args.format)?)?;
    let s = &data.stats;
    eprintln!(
        "{} records: {} pass, {} fail, {} skipped-budget, {} report-only, {} exceptional, {} inapplicable",
        report.records.len(),
        report.count(Verdict::Pass),
        report.count(Verdict::Fail),
        report.count(Verdict::SkippedBudget),
        report.count(Verdict::ReportOnly),
        report.count(Verdict::Exceptional),
        report.count(Verdict::Inapplicable),
    );
    eprintln!(
        "series expansions computed: {}; table from cache: {}; profiles cached/computed: {}/{}",
        s.series_computed, s.table_from_cache, s.profiles_from_cache, s.profiles_computed
    );
    for r in report.records.iter().filter(|r| r.verdict == Verdict::Fail) {
        eprintln!(
            "FAIL {}: observed {}; expected {}",
            r.task_id(),
            r.observed,
            r.expected
        );
    }
    Ok(if strict && report.failures() > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => gen(a).map(|_| ExitCode::SUCCESS),
        Command::Interp(a) => a
            .config()
            .and_then(|cfg| table(&cfg))
            .and_then(|t| emit(&a.out, &write_atable(&t)))
            .map(|_| ExitCode::SUCCESS),
        Command::Model(a) => models(a).map(|_| ExitCode::SUCCESS),
        Command::Factor(a) => factor(a).map(|_| ExitCode::SUCCESS),
        Command::Verify(a) => verify(a, true),
        Command::Report(a) => verify(a, false),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
