//! Workload generation, sequence files, runners, reports and fuzzing.

mod bench;
mod fuzz;
mod report;
mod rng;
mod runner;
mod seqfile;
mod workload;

pub use bench::{bench, default_len, write_csv, BenchRow};
pub use fuzz::{fuzz, trial_spec, FuzzTrial, FUZZ_P_INSERT, FUZZ_SIZES};
pub use report::RunReport;
pub use rng::{gnp, Rng};
pub use runner::{
    boot_threshold, first_failure, make_engine, run_workload, shrink_failing, EngineKind, RunFailure, RunOutcome,
    VerifyMode,
};
pub use seqfile::{read_sequence, write_sequence};
pub use workload::{
    adaptive_step, complete_edge_count, gen_workload, AdaptivePlan, Workload, WorkloadKind, WorkloadSpec,
};

/// Environment variable overriding the default seed.
pub const SEED_ENV: &str = "DYNMATCH_SEED";

/// Seed from `DYNMATCH_SEED` if set and numeric, else `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}
