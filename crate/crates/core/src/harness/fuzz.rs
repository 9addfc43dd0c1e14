use rayon::prelude::*;

use super::rng::Rng;
use super::runner::{run_workload, EngineKind, VerifyMode};
use super::workload::{complete_edge_count, gen_workload, WorkloadKind, WorkloadSpec};
use crate::error::Result;
use crate::graph::UpdateEvent;

pub const FUZZ_SIZES: [usize; 4] = [16, 32, 64, 128];
pub const FUZZ_P_INSERT: [f64; 3] = [0.3, 0.5, 0.8];

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzTrial {
    pub id: usize,
    pub spec: WorkloadSpec,
    pub updates: usize,
    pub failure: Option<String>,
    pub shrunk: Option<Vec<UpdateEvent>>,
}

/// Workload of trial `id`: kinds, sizes and insertion rates are cycled,
/// lengths drawn up to `10n`.
pub fn trial_spec(seed: u64, id: usize) -> WorkloadSpec {
    let kinds = WorkloadKind::ALL;
    let kind = kinds[id % kinds.len()];
    let n = FUZZ_SIZES[(id / kinds.len()) % FUZZ_SIZES.len()];
    let p_insert = FUZZ_P_INSERT[(id / (kinds.len() * FUZZ_SIZES.len())) % FUZZ_P_INSERT.len()];
    let mut rng = Rng::new(seed ^ (id as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut len = 1 + rng.below(10 * n);
    if matches!(kind, WorkloadKind::DecrementalComplete | WorkloadKind::DecrementalAdaptive) {
        len = len.min(complete_edge_count(n));
    }
    WorkloadSpec { kind, n, len, p_insert, seed: rng.next_u64() }
}

/// Runs `trials` verified trials in parallel; results are ordered by id.
pub fn fuzz(trials: usize, seed: u64, engine: EngineKind) -> Result<Vec<FuzzTrial>> {
    (0..trials)
        .into_par_iter()
        .map(|id| {
            let spec = trial_spec(seed, id);
            let w = gen_workload(&spec)?;
            let out = run_workload(engine, &w, VerifyMode::Each)?;
            Ok(FuzzTrial {
                id,
                spec,
                updates: out.report.updates_applied,
                shrunk: out.failure.as_ref().map(|f| f.shrunk.clone()),
                failure: out.failure.map(|f| format!("step {}: {}", f.step, f.detail)),
            })
        })
        .collect()
}
