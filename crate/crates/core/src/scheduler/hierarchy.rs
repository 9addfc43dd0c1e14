use std::collections::BTreeSet;

use super::params::LadderParams;
use crate::engine::MatchingEngine;
use crate::error::{Error, Result};
use crate::graph::{DynGraph, Edge, UpdateEvent};
use crate::matcher::{MatcherState, MatcherTotals, Profile};
use crate::system::{build_basic, refine, MultiLevelSystem};

/// Check performed when a level is rebuilt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RebuildRecord {
    /// Updates since the dense phase began.
    pub t: usize,
    pub level: usize,
    pub deferred: usize,
    /// `(i − 1) · z_i · η`.
    pub bound: usize,
    /// Whether `G^i \ E^i` equals the live graph, when that was checked.
    pub graph_matches: Option<bool>,
}

#[derive(Debug, Clone)]
struct Level {
    graph: DynGraph,
    sys: MultiLevelSystem,
    deferred: Vec<Edge>,
    // position in the touched-edge log when this level's phase began
    start: usize,
}

/// State of a dense phase: one triple per level plus the matcher on the
/// deepest one.
#[derive(Debug)]
pub struct Hierarchy {
    params: LadderParams,
    levels: Vec<Level>,
    matcher: Option<MatcherState>,
    touched: Vec<Edge>,
    t: usize,
    check_graphs: bool,
    pub(crate) records: Vec<RebuildRecord>,
    pub(crate) budget_overruns: usize,
    retired: MatcherTotals,
}

impl Hierarchy {
    pub fn new(live: &DynGraph, params: LadderParams, check_graphs: bool) -> Result<Self> {
        let z1 = params.z_at(1);
        let sys = build_basic(live, z1)?;
        let level1 = Level { graph: live.clone(), sys, deferred: Vec::new(), start: 0 };
        let mut h = Hierarchy {
            params,
            levels: vec![level1],
            matcher: None,
            touched: Vec::new(),
            t: 0,
            check_graphs,
            records: Vec::new(),
            budget_overruns: 0,
            retired: MatcherTotals::default(),
        };
        h.note_level_one(live);
        for j in 2..=h.params.k() {
            h.rebuild(j, live)?;
        }
        h.attach_deepest()?;
        Ok(h)
    }

    pub fn params(&self) -> &LadderParams {
        &self.params
    }

    pub fn matcher(&self) -> &MatcherState {
        self.matcher.as_ref().expect("attached during construction")
    }

    fn matcher_mut(&mut self) -> &mut MatcherState {
        self.matcher.as_mut().expect("attached during construction")
    }

    pub fn records(&self) -> &[RebuildRecord] {
        &self.records
    }

    /// Totals over every matcher this hierarchy attached, the live one included.
    pub fn matcher_totals(&self) -> MatcherTotals {
        let mut t = self.retired;
        if let Some(m) = &self.matcher {
            t.absorb(m.stats());
        }
        t
    }

    fn note_level_one(&mut self, live: &DynGraph) {
        let graph_matches = self.check_graphs.then(|| self.levels[0].graph == *live);
        self.records.push(RebuildRecord { t: self.t, level: 1, deferred: 0, bound: 0, graph_matches });
    }

    /// Rebuilds whatever levels start a new phase; `live` must not yet
    /// contain the next update.
    pub fn before_update(&mut self, live: &DynGraph) -> Result<()> {
        let step = self.params.phase_len(self.params.k());
        if self.t > 0 && self.t % step == 0 {
            self.boundary(live)?;
        }
        Ok(())
    }

    pub fn apply(&mut self, ev: UpdateEvent) -> Result<()> {
        self.touched.push(ev.edge);
        self.t += 1;
        self.matcher_mut().apply(ev)
    }

    fn boundary(&mut self, live: &DynGraph) -> Result<()> {
        let k = self.params.k();
        let first = (1..=k).find(|&i| self.t % self.params.phase_len(i) == 0).unwrap_or(k);
        for j in first..=k {
            if j == 1 {
                let sys = build_basic(live, self.params.z_at(1))?;
                self.levels[0] = Level { graph: live.clone(), sys, deferred: Vec::new(), start: self.touched.len() };
                self.note_level_one(live);
            } else {
                self.rebuild(j, live)?;
            }
        }
        self.attach_deepest()
    }

    /// Rebuilds level `j ≥ 2` from a copy of level `j − 1`.
    fn rebuild(&mut self, j: usize, live: &DynGraph) -> Result<()> {
        let parent = &self.levels[j - 2];
        let mut cand: BTreeSet<Edge> = parent.deferred.iter().copied().collect();
        cand.extend(self.touched[parent.start..].iter().copied());
        let mut e_d = Vec::new();
        let mut e_i = Vec::new();
        for e in cand {
            let before = parent.graph.has_edge(e.u, e.v);
            let now = live.has_edge(e.u, e.v);
            if before && !now {
                e_d.push(e);
            } else if !before && now {
                e_i.push(e);
            }
        }
        let r = refine(parent.graph.clone(), parent.sys.snapshot(), &e_d, &e_i, self.params.z_at(j))?;
        let bound = (j - 1) * self.params.phase_len(j);
        let graph_matches = self.check_graphs.then(|| {
            let mut g = r.graph.clone();
            r.deferred.iter().all(|e| g.delete_edge(e.u, e.v).is_ok()) && g == *live
        });
        self.records.push(RebuildRecord { t: self.t, level: j, deferred: r.deferred.len(), bound, graph_matches });
        if r.deferred.len() > bound || graph_matches == Some(false) {
            return Err(Error::Assertion(format!(
                "level {} rebuilt at t = {} breaks the deferred-deletion requirement",
                j, self.t
            )));
        }
        let level = Level { graph: r.graph, sys: r.sys, deferred: r.deferred, start: self.touched.len() };
        if self.levels.len() < j {
            self.levels.push(level);
        } else {
            self.levels[j - 1] = level;
        }
        Ok(())
    }

    fn attach_deepest(&mut self) -> Result<()> {
        let k = self.params.k();
        let deepest = &self.levels[k - 1];
        if deepest.deferred.len() + self.params.phase_len(k) > self.params.n {
            self.budget_overruns += 1;
        }
        let mut m = MatcherState::attach(deepest.graph.clone(), deepest.sys.snapshot(), Profile::MultiLevel)?;
        for e in &deepest.deferred {
            m.handle_deletion(e.u, e.v)?;
        }
        if let Some(old) = self.matcher.replace(m) {
            self.retired.absorb(old.stats());
        }
        Ok(())
    }
}
