//! End-to-end verification: configuration, the model pipeline, the cache,
//! clause suites and report rendering.

mod cache;
mod config;
mod pipeline;
mod report;
mod suites;

pub use cache::{sha256_hex, Cache, CacheContents};
pub use config::{parse_primes, SourceSpec, VerifyConfig};
pub use pipeline::{
    conj1_indices, generate_table, required_indices, run, ModelData, ProfileOutcome, RunData,
    RunStats, Strategies, TaskResult,
};
pub use report::{Report, TaskRow, Verdict, VerdictRecord};
pub use suites::{build_report, verify_conj1, verify_conj2, verify_conj3, verify_conj4};
