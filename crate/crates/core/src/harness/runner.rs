use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use super::report::RunReport;
use super::rng::Rng;
use super::workload::{adaptive_step, Workload};
use crate::bootstrap::BootState;
use crate::engine::MatchingEngine;
use crate::error::{Error, Result};
use crate::graph::{DynGraph, UpdateEvent};
use crate::oracle::{check_matching, NaiveEngine};
use crate::scheduler::Engine;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EngineKind {
    Full,
    Boot,
    Naive,
}

impl EngineKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EngineKind::Full => "full",
            EngineKind::Boot => "boot",
            EngineKind::Naive => "naive",
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EngineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(EngineKind::Full),
            "boot" => Ok(EngineKind::Boot),
            "naive" => Ok(EngineKind::Naive),
            _ => Err(Error::InvalidParameter(format!("unknown engine '{}'", s))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerifyMode {
    None,
    Final,
    Each,
}

impl VerifyMode {
    pub fn as_str(self) -> &'static str {
        match self {
            VerifyMode::None => "none",
            VerifyMode::Final => "final",
            VerifyMode::Each => "each",
        }
    }
}

impl FromStr for VerifyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(VerifyMode::None),
            "final" => Ok(VerifyMode::Final),
            "each" => Ok(VerifyMode::Each),
            _ => Err(Error::InvalidParameter(format!("unknown verify mode '{}'", s))),
        }
    }
}

/// Bootstrap threshold used when the bootstrap engine runs on its own.
pub fn boot_threshold(n: usize) -> usize {
    ((n as f64).sqrt().ceil() as usize).max(1)
}

pub fn make_engine(kind: EngineKind, n: usize) -> Result<Box<dyn MatchingEngine + Send>> {
    Ok(match kind {
        EngineKind::Full => Box::new(Engine::new(n)?),
        EngineKind::Boot => Box::new(BootState::new(n, boot_threshold(n))?),
        EngineKind::Naive => Box::new(NaiveEngine::new(n)?),
    })
}

/// First update after which the engine erred or its matching was wrong.
#[derive(Debug, Clone, PartialEq)]
pub struct RunFailure {
    /// 1-based index of the failing update.
    pub step: usize,
    pub detail: String,
    /// Locally minimal failing sequence.
    pub shrunk: Vec<UpdateEvent>,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: RunReport,
    /// The updates actually applied, including realized adaptive moves.
    pub trace: Vec<UpdateEvent>,
    pub failure: Option<RunFailure>,
}

struct Driver {
    engine: Box<dyn MatchingEngine + Send>,
    live: DynGraph,
    trace: Vec<UpdateEvent>,
    verify_each: bool,
    engine_ns: u128,
}

impl Driver {
    /// Applies one update. `Err` means the workload itself is invalid;
    /// `Ok(Some(_))` reports an engine failure.
    fn step(&mut self, ev: UpdateEvent) -> Result<Option<String>> {
        self.live.apply(ev)?;
        self.trace.push(ev);
        let t0 = Instant::now();
        let res = self.engine.apply(ev);
        self.engine_ns += t0.elapsed().as_nanos();
        if let Err(e) = res {
            return Ok(Some(e.to_string()));
        }
        if self.verify_each {
            if let Err(v) = check_matching(&self.live, &self.engine.matching()) {
                return Ok(Some(v.to_string()));
            }
        }
        Ok(None)
    }
}

/// Runs `workload` on a fresh engine of the given kind.
pub fn run_workload(kind: EngineKind, workload: &Workload, verify: VerifyMode) -> Result<RunOutcome> {
    run_inner(kind, workload, verify, true)
}

fn run_inner(kind: EngineKind, workload: &Workload, verify: VerifyMode, shrink: bool) -> Result<RunOutcome> {
    let n = workload.n();
    let mut d = Driver {
        engine: make_engine(kind, n)?,
        live: DynGraph::new(n)?,
        trace: Vec::new(),
        verify_each: verify == VerifyMode::Each,
        engine_ns: 0,
    };
    let mut failure = None;
    match workload {
        Workload::Fixed { events, .. } => {
            for &ev in events {
                if let Some(msg) = d.step(ev)? {
                    failure = Some(msg);
                    break;
                }
            }
        }
        Workload::Adaptive { plan, .. } => {
            for &ev in &plan.prefix {
                if let Some(msg) = d.step(ev)? {
                    failure = Some(msg);
                    break;
                }
            }
            let mut rng = Rng::new(plan.seed);
            if failure.is_none() {
                for _ in 0..plan.steps {
                    let Some(ev) = adaptive_step(&d.live, &d.engine.matching(), plan.p_insert, &mut rng) else {
                        break;
                    };
                    if let Some(msg) = d.step(ev)? {
                        failure = Some(msg);
                        break;
                    }
                }
            }
        }
    }
    if failure.is_none() && verify == VerifyMode::Final {
        if let Err(v) = check_matching(&d.live, &d.engine.matching()) {
            failure = Some(v.to_string());
        }
    }
    let failure = failure.map(|detail| {
        let step = d.trace.len();
        let shrunk = if shrink { shrink_failing(kind, n, &d.trace) } else { d.trace.clone() };
        RunFailure { step, detail, shrunk }
    });
    let updates = d.trace.len();
    let ops = d.engine.op_count();
    let report = RunReport {
        n,
        updates_applied: updates,
        engine: kind.as_str().to_string(),
        verify_mode: verify.as_str().to_string(),
        verified: verify != VerifyMode::None && failure.is_none(),
        final_matching_size: d.engine.matching().len(),
        elementary_ops_total: ops,
        elementary_ops_per_update: if updates == 0 { 0.0 } else { ops as f64 / updates as f64 },
        wall_time_ns: d.engine_ns as u64,
    };
    Ok(RunOutcome { report, trace: d.trace, failure })
}

/// Index of the first failing update when `events` is replayed with
/// per-update verification, or `None` if it passes or is not a valid
/// sequence.
pub fn first_failure(kind: EngineKind, n: usize, events: &[UpdateEvent]) -> Option<usize> {
    let w = Workload::Fixed { n, events: events.to_vec() };
    match run_inner(kind, &w, VerifyMode::Each, false) {
        Ok(out) => out.failure.map(|f| f.step),
        Err(_) => None,
    }
}

/// Reduces a failing sequence until removing any single update makes it
/// pass (or become invalid).
pub fn shrink_failing(kind: EngineKind, n: usize, events: &[UpdateEvent]) -> Vec<UpdateEvent> {
    let Some(step) = first_failure(kind, n, events) else {
        return events.to_vec();
    };
    let mut cur = events[..step].to_vec();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < cur.len() {
            let mut cand = cur.clone();
            cand.remove(i);
            match first_failure(kind, n, &cand) {
                Some(s) => {
                    cand.truncate(s);
                    cur = cand;
                    changed = true;
                }
                None => i += 1,
            }
        }
        if !changed {
            return cur;
        }
    }
}
