use std::io::Write;

use super::runner::{run_workload, EngineKind, VerifyMode};
use super::workload::{complete_edge_count, gen_workload, WorkloadKind, WorkloadSpec};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub engine: EngineKind,
    pub kind: WorkloadKind,
    pub updates: usize,
    pub ops_total: u64,
    pub ops_per_update: f64,
    pub wall_time_ns: u64,
}

/// Default workload length: every deletion for the decremental kinds,
/// `10n` otherwise.
pub fn default_len(kind: WorkloadKind, n: usize) -> usize {
    match kind {
        WorkloadKind::DecrementalComplete | WorkloadKind::DecrementalAdaptive => complete_edge_count(n),
        _ => 10 * n,
    }
}

pub fn bench(
    engine: EngineKind,
    kind: WorkloadKind,
    n_list: &[usize],
    seed: u64,
    len: Option<usize>,
    p_insert: f64,
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let spec = WorkloadSpec { kind, n, len: len.unwrap_or_else(|| default_len(kind, n)), p_insert, seed };
        let out = run_workload(engine, &gen_workload(&spec)?, VerifyMode::None)?;
        let r = out.report;
        rows.push(BenchRow {
            n,
            engine,
            kind,
            updates: r.updates_applied,
            ops_total: r.elementary_ops_total,
            ops_per_update: r.elementary_ops_per_update,
            wall_time_ns: r.wall_time_ns,
        });
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(mut w: W, rows: &[BenchRow]) -> Result<()> {
    writeln!(w, "n,engine,kind,updates,ops_total,ops_per_update,wall_time_ns")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{:.3},{}",
            r.n, r.engine, r.kind, r.updates, r.ops_total, r.ops_per_update, r.wall_time_ns
        )?;
    }
    Ok(())
}
