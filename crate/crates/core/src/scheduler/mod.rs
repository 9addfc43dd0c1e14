//! Splits the update sequence into phases and picks the engine for each.
//!
//! The first `n` updates go to the bootstrap engine. Every later phase is
//! sparse (a single basic system, `n` updates) or dense (a ladder of
//! refined systems, `m` updates), decided by the edge count at its start.

mod hierarchy;
mod params;

use crate::bootstrap::BootState;
use crate::engine::MatchingEngine;
use crate::error::{Error, Result};
use crate::graph::{DynGraph, Edge, UpdateEvent, UpdateKind};
use crate::matcher::{MatcherState, MatcherTotals, Profile};
use crate::ops::OpCounter;
use crate::oracle::check_matching;
use crate::system::build_basic;

pub use hierarchy::{Hierarchy, RebuildRecord};
pub use params::{ladder_params, pow2_at_least, LadderParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseKind {
    Boot,
    Sparse,
    Dense,
}

/// One phase as it was started.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseRecord {
    pub kind: PhaseKind,
    /// Updates applied before the phase began.
    pub start: usize,
    pub m: usize,
    pub ladder: Option<LadderParams>,
}

#[derive(Debug)]
enum Active {
    Boot(BootState),
    Sparse(MatcherState),
    Dense(Box<Hierarchy>),
}

/// The full engine.
#[derive(Debug)]
pub struct Engine {
    n_user: usize,
    live: DynGraph,
    active: Active,
    left: usize,
    steps: usize,
    verify: bool,
    deep_check: bool,
    ops: OpCounter,
    phases: Vec<PhaseRecord>,
    rebuilds: Vec<RebuildRecord>,
    budget_overruns: usize,
    retired: MatcherTotals,
}

impl Engine {
    /// Engine for `n_user` vertices; internally padded to a power of two.
    pub fn new(n_user: usize) -> Result<Self> {
        if n_user == 0 {
            return Err(Error::EmptyVertexSet);
        }
        let n = n_user.next_power_of_two();
        let ops = OpCounter::new();
        let t = (n as f64).sqrt().ceil() as usize;
        Ok(Engine {
            n_user,
            live: DynGraph::with_counter(n, ops.clone())?,
            active: Active::Boot(BootState::with_counter(n, t, ops.clone())?),
            left: n,
            steps: 0,
            verify: false,
            deep_check: false,
            ops,
            phases: vec![PhaseRecord { kind: PhaseKind::Boot, start: 0, m: 0, ladder: None }],
            rebuilds: Vec::new(),
            budget_overruns: 0,
            retired: MatcherTotals::default(),
        })
    }

    /// After every update, check the matching against the oracle.
    pub fn set_verify(&mut self, on: bool) {
        self.verify = on;
    }

    /// After every update, also recompute the active engine's internal
    /// invariants. Slow; meant for tests.
    pub fn set_deep_check(&mut self, on: bool) {
        self.deep_check = on;
    }

    /// Padded vertex count.
    pub fn padded_n(&self) -> usize {
        self.live.n()
    }

    pub fn graph(&self) -> &DynGraph {
        &self.live
    }

    pub fn phase_kind(&self) -> PhaseKind {
        match self.active {
            Active::Boot(_) => PhaseKind::Boot,
            Active::Sparse(_) => PhaseKind::Sparse,
            Active::Dense(_) => PhaseKind::Dense,
        }
    }

    pub fn phases(&self) -> &[PhaseRecord] {
        &self.phases
    }

    /// Every level rebuild performed in dense phases so far.
    pub fn rebuilds(&self) -> Vec<RebuildRecord> {
        let mut out = self.rebuilds.clone();
        if let Active::Dense(h) = &self.active {
            out.extend(h.records.iter().cloned());
        }
        out
    }

    /// Dense-phase attachments whose deferred deletions plus phase length
    /// exceeded `n` updates.
    pub fn budget_overruns(&self) -> usize {
        self.budget_overruns + if let Active::Dense(h) = &self.active { h.budget_overruns } else { 0 }
    }

    /// Matcher stats summed over all sparse and dense phases so far.
    pub fn matcher_totals(&self) -> MatcherTotals {
        match &self.active {
            Active::Boot(_) => self.retired,
            Active::Sparse(m) => {
                let mut t = self.retired;
                t.absorb(m.stats());
                t
            }
            Active::Dense(h) => self.retired.merged(&h.matcher_totals()),
        }
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    fn start_phase(&mut self) -> Result<()> {
        self.retired = self.matcher_totals();
        if let Active::Dense(h) = &self.active {
            self.rebuilds.extend(h.records.iter().cloned());
            self.budget_overruns += h.budget_overruns;
        }
        let n = self.live.n();
        let m = self.live.m();
        let dense = (m as f64) > (n as f64).powf(1.5);
        if dense {
            let params = ladder_params(n, m)?;
            let h = Hierarchy::new(&self.live, params.clone(), self.verify)?;
            self.active = Active::Dense(Box::new(h));
            self.left = m;
            self.phases.push(PhaseRecord { kind: PhaseKind::Dense, start: self.steps, m, ladder: Some(params) });
        } else {
            let z = (n as f64).sqrt().ceil() as usize;
            let sys = build_basic(&self.live, z)?;
            let matcher = MatcherState::attach(self.live.clone(), sys, Profile::MultiLevel)?;
            self.active = Active::Sparse(matcher);
            self.left = n;
            self.phases.push(PhaseRecord { kind: PhaseKind::Sparse, start: self.steps, m, ladder: None });
        }
        Ok(())
    }

    fn deep_check(&self) -> std::result::Result<(), String> {
        match &self.active {
            Active::Boot(b) => b.check_invariants(),
            Active::Sparse(m) => m.check_invariants(),
            Active::Dense(h) => h.matcher().check_invariants(),
        }
    }
}

impl MatchingEngine for Engine {
    fn name(&self) -> &'static str {
        "full"
    }

    fn n(&self) -> usize {
        self.n_user
    }

    fn apply(&mut self, ev: UpdateEvent) -> Result<()> {
        for x in [ev.edge.u, ev.edge.v] {
            if x >= self.n_user {
                return Err(Error::VertexOutOfRange { v: x, n: self.n_user });
            }
        }
        let present = self.live.adjacency(ev.edge.u).contains(&ev.edge.v);
        match ev.kind {
            _ if ev.edge.u == ev.edge.v => return Err(Error::SelfLoop(ev.edge.u)),
            UpdateKind::Insert if present => return Err(Error::DuplicateEdge(ev.edge.u, ev.edge.v)),
            UpdateKind::Delete if !present => return Err(Error::MissingEdge(ev.edge.u, ev.edge.v)),
            _ => {}
        }
        if self.left == 0 {
            self.start_phase()?;
        }
        if let Active::Dense(h) = &mut self.active {
            h.before_update(&self.live)?;
        }
        self.live.apply(ev)?;
        match &mut self.active {
            Active::Boot(b) => b.apply(ev)?,
            Active::Sparse(m) => m.apply(ev)?,
            Active::Dense(h) => h.apply(ev)?,
        }
        self.left -= 1;
        self.steps += 1;
        if self.verify {
            if let Err(v) = check_matching(&self.live, &self.matching()) {
                return Err(Error::Violation { step: self.steps, detail: v.to_string() });
            }
        }
        if self.deep_check {
            if let Err(s) = self.deep_check() {
                return Err(Error::Violation { step: self.steps, detail: s });
            }
        }
        Ok(())
    }

    fn matching(&self) -> Vec<Edge> {
        let m = match &self.active {
            Active::Boot(b) => b.matching(),
            Active::Sparse(m) => m.matching(),
            Active::Dense(h) => h.matcher().matching(),
        };
        m.into_iter().filter(|e| e.v < self.n_user).collect()
    }

    fn op_count(&self) -> u64 {
        self.ops.get()
    }
}
