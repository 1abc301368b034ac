//! Interpolation of `A_n(x)` from calibrated expansions, the denominator
//! operators `d`, `mu_p`, `K`, `K_p`, and the table file formats.

mod atable;
mod denominators;
mod mckay;
mod recover;

pub use atable::{ingest_table, parse_atable, write_atable, PhiSequence};
pub use denominators::{
    check_pi_clauses, classify_index, d_of, gap_free, k_of, kp_of, mu_p, pi_set, ClauseStatus,
    IndexClass, PiClause,
};
pub use mckay::{c_poly, mckay_structure_report, McKayReport};
pub use recover::{recover_an, sample_indices, InterpolatedA, Source};
