//! Maintains a maximal matching on top of a fixed multi-level subgraph
//! system while the adversary deletes edges of the system's graph and
//! inserts new ones into the side set `E_I`.

mod check;
mod phase;
mod procs;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::coloring::{claim_bound, color_edges_counted, matchings_from_coloring, unmatched_marked};
use crate::engine::MatchingEngine;
use crate::error::{Error, Result};
use crate::graph::{DynGraph, Edge, UpdateEvent, UpdateKind, VertexId};
use crate::ops::OpCounter;
use crate::system::{MultiLevelSystem, VertexClass};

/// Which guarantees the matcher is tuned for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Fully dynamic on a k-level system, at most `n` updates.
    MultiLevel,
    /// Deletions only, at most `r` of them, on a basic system.
    BasicDecremental { r: usize },
}

/// Thresholds derived from the profile, `n` and `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatcherParams {
    pub phase_len: usize,
    /// A phase start repairs `M_1` only if more `S`-vertices than this are unmatched by it.
    pub threshold_init: f64,
    /// Bound on `S`-vertices unmatched by `M_1` during a phase.
    pub threshold_run: f64,
    /// Largest `m_i` a class may have to be used for augmentation.
    pub index_bound: f64,
    /// Number of `L(v)` entries read by the A-level rematch.
    pub scan_len: usize,
}

impl MatcherParams {
    pub fn new(profile: Profile, n: usize, z: usize) -> Result<Self> {
        if z == 0 {
            return Err(Error::InvalidParameter("z must be at least 1".into()));
        }
        let zf = z as f64;
        let (phase_len, t_init, t_run, index_bound) = match profile {
            Profile::MultiLevel => {
                let lg = (n as f64).log2();
                let base = n as f64 * lg * lg / zf;
                ((n / z).max(1), 12.0 * base, 18.0 * base, 4.0 * n as f64 * lg / zf)
            }
            Profile::BasicDecremental { r } => {
                let rho = (n + r) as f64;
                (r.div_ceil(z).max(1), 32.0 * rho / zf, 64.0 * rho / zf, 4.0 * rho / zf)
            }
        };
        let scan_len = if t_run >= usize::MAX as f64 { usize::MAX } else { t_run.floor() as usize + 1 };
        Ok(MatcherParams { phase_len, threshold_init: t_init, threshold_run: t_run, index_bound, scan_len })
    }
}

/// Counters collected while the matcher runs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MatcherStats {
    pub updates: usize,
    pub phases_started: usize,
    pub repairs: usize,
    /// Updates after which more than `threshold_run` S-vertices were unmatched by `M_1`.
    pub r1_breaches: usize,
    pub max_m1_unmatched: usize,
    /// Phase starts after which the repaired `M_1` still exceeded `threshold_init`.
    pub r_init_breaches: usize,
    /// Most `M*` edges removed by one chain of A-level rematches.
    pub max_chain_deletions: usize,
    pub claim_best_unmatched: usize,
    pub claim_bound: f64,
}

impl MatcherStats {
    /// True if the best class leaves at most `claim_bound` S-vertices unmatched.
    pub fn claim_holds(&self) -> bool {
        self.claim_best_unmatched as f64 <= self.claim_bound
    }
}

/// Stats summed over every matcher an engine has attached.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatcherTotals {
    pub attachments: usize,
    pub updates: usize,
    pub r1_breaches: usize,
    pub r_init_breaches: usize,
    pub claim_failures: usize,
}

impl MatcherTotals {
    pub fn absorb(&mut self, s: &MatcherStats) {
        self.attachments += 1;
        self.updates += s.updates;
        self.r1_breaches += s.r1_breaches;
        self.r_init_breaches += s.r_init_breaches;
        self.claim_failures += !s.claim_holds() as usize;
    }

    pub fn merged(mut self, other: &MatcherTotals) -> Self {
        self.attachments += other.attachments;
        self.updates += other.updates;
        self.r1_breaches += other.r1_breaches;
        self.r_init_breaches += other.r_init_breaches;
        self.claim_failures += other.claim_failures;
        self
    }
}

pub type StepHook = Box<dyn FnMut(&MatcherState) + Send>;

/// The live state of the matcher.
pub struct MatcherState {
    profile: Profile,
    params: MatcherParams,
    z: usize,
    g: DynGraph,
    sys: MultiLevelSystem,
    e_ins: Vec<BTreeSet<VertexId>>,
    e_ins_len: usize,
    mate: Vec<Option<VertexId>>,
    m1: Vec<Option<VertexId>>,
    // classes M_2..M_{z+1} live at indices 1..=z; index 0 is unused
    class_mates: Vec<HashMap<VertexId, VertexId>>,
    class_of: HashMap<Edge, usize>,
    class_unmatched: Vec<usize>,
    m1_unmatched: usize,
    s_hat: BTreeSet<VertexId>,
    h_in: Vec<BTreeSet<VertexId>>,
    h_out: Vec<BTreeSet<VertexId>>,
    ht_in: Vec<BTreeSet<VertexId>>,
    ht_out: Vec<BTreeSet<VertexId>>,
    inserted: Vec<usize>,
    bad: Vec<bool>,
    bad_set: BTreeSet<VertexId>,
    since_phase: usize,
    chain: usize,
    ops: OpCounter,
    stats: MatcherStats,
    hook: Option<StepHook>,
}

impl fmt::Debug for MatcherState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatcherState")
            .field("profile", &self.profile)
            .field("n", &self.n())
            .field("z", &self.z)
            .field("k", &self.sys.k())
            .field("matched", &self.matching().len())
            .field("stats", &self.stats)
            .finish()
    }
}

impl MatcherState {
    /// Starts a matcher on `g` and a system of `g`, computing an initial
    /// maximal matching.
    ///
    /// Checks the cheap structural conditions (`M ⊆ E(g)`, degree caps, no
    /// `M`-edge inside `U`, `k ≤ log₂ n`); the full property check is
    /// [`crate::system::validate_system`].
    pub fn attach(g: DynGraph, sys: MultiLevelSystem, profile: Profile) -> Result<Self> {
        let params = MatcherParams::new(profile, g.n(), sys.z())?;
        Self::attach_with_params(g, sys, profile, params)
    }

    /// Like [`MatcherState::attach`] with explicit thresholds.
    pub fn attach_with_params(
        g: DynGraph,
        sys: MultiLevelSystem,
        profile: Profile,
        params: MatcherParams,
    ) -> Result<Self> {
        let n = g.n();
        let z = sys.z();
        if sys.n() != n {
            return Err(Error::InvalidSystem("system and graph sizes differ".into()));
        }
        if sys.k() as f64 > (n as f64).log2() {
            return Err(Error::InvalidParameter(format!("k = {} exceeds log2 n for n = {}", sys.k(), n)));
        }
        let m_list = sys.m_edge_list();
        for e in &m_list {
            if !g.adjacency(e.u).contains(&e.v) {
                return Err(Error::InvalidSystem(format!("M-edge {} missing from the graph", e)));
            }
            if sys.in_u(e.u) && sys.in_u(e.v) {
                return Err(Error::InvalidSystem(format!("M-edge {} lies inside U", e)));
            }
        }
        if (0..n).any(|v| sys.m_degree(v) > z) {
            return Err(Error::InvalidSystem("M-degree above z".into()));
        }
        if params.phase_len == 0 {
            return Err(Error::InvalidParameter("phase length must be positive".into()));
        }
        let ops = g.ops().clone();

        let coloring = color_edges_counted(n, &m_list, &ops)?;
        let mut classes = matchings_from_coloring(&coloring, z + 1)?;
        let s_mask = sys.s_mask();
        let unmatched = unmatched_marked(&classes, &s_mask);
        let best = (0..classes.len()).min_by_key(|&i| unmatched[i]).unwrap_or(0);
        let first = classes.remove(best);
        classes.insert(0, first);
        let mut class_unmatched = unmatched.clone();
        let best_count = class_unmatched.remove(best);
        class_unmatched.insert(0, best_count);

        let mut st = MatcherState {
            profile,
            params,
            z,
            e_ins: vec![BTreeSet::new(); n],
            e_ins_len: 0,
            mate: vec![None; n],
            m1: vec![None; n],
            class_mates: vec![HashMap::new(); z + 1],
            class_of: HashMap::new(),
            class_unmatched,
            m1_unmatched: 0,
            s_hat: BTreeSet::new(),
            h_in: vec![BTreeSet::new(); n],
            h_out: vec![BTreeSet::new(); n],
            ht_in: vec![BTreeSet::new(); n],
            ht_out: vec![BTreeSet::new(); n],
            inserted: vec![0; n],
            bad: vec![false; n],
            bad_set: BTreeSet::new(),
            since_phase: 0,
            chain: 0,
            ops,
            stats: MatcherStats {
                claim_best_unmatched: best_count,
                claim_bound: claim_bound(s_mask.iter().filter(|&&b| b).count(), n, z),
                ..MatcherStats::default()
            },
            hook: None,
            g,
            sys,
        };
        for e in &classes[0] {
            st.m1[e.u] = Some(e.v);
            st.m1[e.v] = Some(e.u);
            st.mate[e.u] = Some(e.v);
            st.mate[e.v] = Some(e.u);
        }
        for (c, cls) in classes.iter().enumerate().skip(1) {
            for e in cls {
                st.class_mates[c].insert(e.u, e.v);
                st.class_mates[c].insert(e.v, e.u);
                st.class_of.insert(*e, c);
            }
        }
        st.ops.tick(m_list.len() as u64);
        st.m1_unmatched = (0..n).filter(|&v| st.sys.in_s(v) && st.m1[v].is_none()).count();
        for v in 0..n {
            if st.mate[v].is_none() {
                st.proc_update(v);
            }
        }
        for x in 0..n {
            if st.mate[x].is_none() {
                st.rematch(x);
            }
        }
        st.note_r1();
        Ok(st)
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    pub fn params(&self) -> &MatcherParams {
        &self.params
    }

    pub fn stats(&self) -> &MatcherStats {
        &self.stats
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn z(&self) -> usize {
        self.z
    }

    /// `G'`: the system's graph minus the deletions seen so far.
    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    pub fn system(&self) -> &MultiLevelSystem {
        &self.sys
    }

    pub fn inserted_len(&self) -> usize {
        self.e_ins_len
    }

    pub fn is_bad(&self, v: VertexId) -> bool {
        self.bad[v]
    }

    /// `S`-vertices currently unmatched by `M_1`.
    pub fn m1_unmatched_in_s(&self) -> usize {
        self.m1_unmatched
    }

    pub fn partner(&self, v: VertexId) -> Option<VertexId> {
        self.mate[v]
    }

    pub fn set_hook(&mut self, hook: StepHook) {
        self.hook = Some(hook);
    }

    /// True if `{a, b}` is in `G' ∪ E_I`.
    pub fn contains_edge(&self, a: VertexId, b: VertexId) -> bool {
        a < self.n() && b < self.n() && (self.g.adjacency(a).contains(&b) || self.e_ins[a].contains(&b))
    }

    pub fn handle_deletion(&mut self, a: VertexId, b: VertexId) -> Result<()> {
        self.g.check_vertex(a)?;
        self.g.check_vertex(b)?;
        let e = Edge::new(a, b);
        let (u, v) = (e.u, e.v);
        self.ops.tick(1);
        if self.e_ins[u].contains(&v) {
            self.e_ins[u].remove(&v);
            self.e_ins[v].remove(&u);
            self.e_ins_len -= 1;
            for (x, y) in [(u, v), (v, u)] {
                if self.ht_out[x].remove(&y) {
                    self.ht_in[y].remove(&x);
                }
            }
        } else {
            self.g.delete_edge(u, v)?;
            for (x, y) in [(u, v), (v, u)] {
                self.sys.lambda[x].remove(&y);
                self.sys.l_list[x].remove(&y);
                if self.h_out[x].remove(&y) {
                    self.h_in[y].remove(&x);
                }
            }
            if let Some(c) = self.class_of.remove(&e) {
                self.class_mates[c].remove(&u);
                self.class_mates[c].remove(&v);
                self.class_unmatched[c] += self.sys.in_s(u) as usize + self.sys.in_s(v) as usize;
            }
            if self.sys.remove_m(u, v) {
                self.sys.zset[u].remove(&v);
                self.sys.zset[v].remove(&u);
            }
        }
        if self.mate[u] == Some(v) {
            self.unpair(u, v);
            self.proc_update(u);
            self.proc_update(v);
            for x in [u, v] {
                if self.mate[x].is_none() {
                    self.rematch(x);
                }
            }
        }
        self.after_update()
    }

    pub fn handle_insertion(&mut self, a: VertexId, b: VertexId) -> Result<()> {
        if let Profile::BasicDecremental { .. } = self.profile {
            return Err(Error::Unsupported("insertions in the decremental profile".into()));
        }
        self.g.check_vertex(a)?;
        self.g.check_vertex(b)?;
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        let e = Edge::new(a, b);
        let (u, v) = (e.u, e.v);
        if self.contains_edge(u, v) {
            return Err(Error::DuplicateEdge(u, v));
        }
        self.ops.tick(2);
        self.e_ins[u].insert(v);
        self.e_ins[v].insert(u);
        self.e_ins_len += 1;
        for x in [u, v] {
            self.inserted[x] += 1;
            if !self.bad[x] && self.inserted[x] >= self.z {
                self.make_bad(x);
            }
        }
        for (x, y) in [(u, v), (v, u)] {
            if self.bad[y] && self.mate[x].is_none() {
                self.ht_out[x].insert(y);
                self.ht_in[y].insert(x);
            }
        }
        if self.mate[u].is_none() && self.mate[v].is_none() {
            self.pair(u, v);
            self.proc_update(u);
            self.proc_update(v);
        }
        self.after_update()
    }

    fn after_update(&mut self) -> Result<()> {
        self.stats.updates += 1;
        self.since_phase += 1;
        if self.since_phase >= self.params.phase_len {
            self.since_phase = 0;
            self.init_phase()?;
        }
        self.note_r1();
        if let Some(mut hook) = self.hook.take() {
            hook(self);
            self.hook = Some(hook);
        }
        Ok(())
    }

    fn note_r1(&mut self) {
        self.stats.max_m1_unmatched = self.stats.max_m1_unmatched.max(self.m1_unmatched);
        if self.m1_unmatched as f64 > self.params.threshold_run {
            self.stats.r1_breaches += 1;
        }
    }

    fn make_bad(&mut self, x: VertexId) {
        self.bad[x] = true;
        self.bad_set.insert(x);
        let free: Vec<_> = self.e_ins[x].iter().copied().filter(|&y| self.mate[y].is_none()).collect();
        self.ops.tick(self.e_ins[x].len() as u64);
        for y in free {
            self.ht_out[y].insert(x);
            self.ht_in[x].insert(y);
        }
    }

    fn level(&self, v: VertexId) -> Option<usize> {
        match self.sys.class(v) {
            VertexClass::A(i) => Some(i),
            _ => None,
        }
    }
}

impl MatchingEngine for MatcherState {
    fn name(&self) -> &'static str {
        "matcher"
    }

    fn n(&self) -> usize {
        self.g.n()
    }

    fn apply(&mut self, ev: UpdateEvent) -> Result<()> {
        match ev.kind {
            UpdateKind::Insert => self.handle_insertion(ev.edge.u, ev.edge.v),
            UpdateKind::Delete => self.handle_deletion(ev.edge.u, ev.edge.v),
        }
    }

    fn matching(&self) -> Vec<Edge> {
        (0..self.mate.len())
            .filter_map(|x| self.mate[x].filter(|&y| x < y).map(|y| Edge::new(x, y)))
            .collect()
    }

    fn op_count(&self) -> u64 {
        self.ops.get()
    }
}
