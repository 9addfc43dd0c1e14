use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::rng::Rng;
use crate::error::{Error, Result};
use crate::graph::{DynGraph, Edge, UpdateEvent, UpdateKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WorkloadKind {
    /// Mixed insertions and deletions of random edges.
    Random,
    /// Insert all of K_n, then delete edges in canonical order.
    DecrementalComplete,
    /// Insert random edges, then delete them in random order.
    InsertThenDelete,
    /// Adaptive: delete the matched edge with the highest-degree endpoint,
    /// or insert a random edge.
    AdaptiveMatchedAttack,
    /// Insert all of K_n, then adaptively delete matched edges.
    DecrementalAdaptive,
}

impl WorkloadKind {
    pub const ALL: [WorkloadKind; 5] = [
        WorkloadKind::Random,
        WorkloadKind::DecrementalComplete,
        WorkloadKind::InsertThenDelete,
        WorkloadKind::AdaptiveMatchedAttack,
        WorkloadKind::DecrementalAdaptive,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            WorkloadKind::Random => "random",
            WorkloadKind::DecrementalComplete => "decremental_complete",
            WorkloadKind::InsertThenDelete => "insert_then_delete",
            WorkloadKind::AdaptiveMatchedAttack => "adaptive_matched_attack",
            WorkloadKind::DecrementalAdaptive => "decremental_adaptive",
        }
    }

    pub fn is_adaptive(self) -> bool {
        matches!(self, WorkloadKind::AdaptiveMatchedAttack | WorkloadKind::DecrementalAdaptive)
    }
}

impl fmt::Display for WorkloadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WorkloadKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WorkloadKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown workload kind '{}'", s)))
    }
}

/// Parameters of a generated workload. For the decremental kinds `len`
/// counts deletions only; the bulk insertion of K_n comes first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkloadSpec {
    pub kind: WorkloadKind,
    pub n: usize,
    pub len: usize,
    pub p_insert: f64,
    pub seed: u64,
}

/// An adaptive workload is realized against an engine as it runs.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptivePlan {
    pub prefix: Vec<UpdateEvent>,
    pub steps: usize,
    pub p_insert: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Workload {
    Fixed { n: usize, events: Vec<UpdateEvent> },
    Adaptive { n: usize, plan: AdaptivePlan },
}

impl Workload {
    pub fn n(&self) -> usize {
        match self {
            Workload::Fixed { n, .. } | Workload::Adaptive { n, .. } => *n,
        }
    }
}

/// Live edge set supporting uniform sampling.
#[derive(Debug, Clone, Default)]
pub(crate) struct EdgePool {
    edges: Vec<Edge>,
    pos: HashMap<Edge, usize>,
}

impl EdgePool {
    pub(crate) fn insert(&mut self, e: Edge) {
        if !self.pos.contains_key(&e) {
            self.pos.insert(e, self.edges.len());
            self.edges.push(e);
        }
    }

    pub(crate) fn remove(&mut self, e: Edge) {
        if let Some(i) = self.pos.remove(&e) {
            self.edges.swap_remove(i);
            if i < self.edges.len() {
                self.pos.insert(self.edges[i], i);
            }
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.edges.len()
    }

    pub(crate) fn sample(&self, rng: &mut Rng) -> Option<Edge> {
        (!self.edges.is_empty()).then(|| self.edges[rng.below(self.edges.len())])
    }
}

/// A uniformly random pair that is not an edge of `g`, if one exists.
pub(crate) fn random_non_edge(g: &DynGraph, rng: &mut Rng) -> Option<Edge> {
    let n = g.n();
    if n < 2 || g.m() == n * (n - 1) / 2 {
        return None;
    }
    for _ in 0..32 {
        let (a, b) = (rng.below(n), rng.below(n));
        if a != b && !g.adjacency(a).contains(&b) {
            return Some(Edge::new(a, b));
        }
    }
    let free: Vec<Edge> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| Edge::new(a, b)))
        .filter(|e| !g.adjacency(e.u).contains(&e.v))
        .collect();
    Some(free[rng.below(free.len())])
}

fn complete_insertions(n: usize) -> Vec<UpdateEvent> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            out.push(UpdateEvent::insert(a, b));
        }
    }
    out
}

/// Generates a workload. Adaptive kinds return a plan to be realized by
/// the runner.
pub fn gen_workload(spec: &WorkloadSpec) -> Result<Workload> {
    let WorkloadSpec { kind, n, len, p_insert, seed } = *spec;
    if n < 2 {
        return Err(Error::InvalidParameter("workloads need n >= 2".into()));
    }
    if !(0.0..=1.0).contains(&p_insert) {
        return Err(Error::InvalidParameter(format!("p_insert = {} outside [0, 1]", p_insert)));
    }
    let pairs = n * (n - 1) / 2;
    let mut rng = Rng::new(seed);
    let events = match kind {
        WorkloadKind::Random => {
            let mut g = DynGraph::new(n)?;
            let mut pool = EdgePool::default();
            let mut out = Vec::with_capacity(len);
            for _ in 0..len {
                let want_insert = rng.chance(p_insert) || pool.len() == 0;
                let ev = match (want_insert, random_non_edge(&g, &mut rng)) {
                    (true, Some(e)) => UpdateEvent::insert(e.u, e.v),
                    _ => {
                        let e = pool.sample(&mut rng).expect("graph is non-empty");
                        UpdateEvent::delete(e.u, e.v)
                    }
                };
                g.apply(ev)?;
                match ev.kind {
                    UpdateKind::Insert => pool.insert(ev.edge),
                    UpdateKind::Delete => pool.remove(ev.edge),
                }
                out.push(ev);
            }
            out
        }
        WorkloadKind::DecrementalComplete => {
            if len > pairs {
                return Err(Error::InvalidParameter(format!(
                    "cannot delete {} edges from K_{} with {} edges",
                    len, n, pairs
                )));
            }
            let mut out = complete_insertions(n);
            let dels: Vec<_> = out.iter().take(len).map(|ev| UpdateEvent::delete(ev.edge.u, ev.edge.v)).collect();
            out.extend(dels);
            out
        }
        WorkloadKind::InsertThenDelete => {
            let ins = len.div_ceil(2).min(pairs);
            let mut g = DynGraph::new(n)?;
            let mut added = Vec::with_capacity(ins);
            for _ in 0..ins {
                let e = random_non_edge(&g, &mut rng).expect("room for another edge");
                g.insert_edge(e.u, e.v)?;
                added.push(e);
            }
            let mut out: Vec<_> = added.iter().map(|e| UpdateEvent::insert(e.u, e.v)).collect();
            rng.shuffle(&mut added);
            let dels = (len - ins).min(ins);
            out.extend(added.iter().take(dels).map(|e| UpdateEvent::delete(e.u, e.v)));
            out
        }
        WorkloadKind::AdaptiveMatchedAttack => {
            let plan = AdaptivePlan { prefix: Vec::new(), steps: len, p_insert, seed };
            return Ok(Workload::Adaptive { n, plan });
        }
        WorkloadKind::DecrementalAdaptive => {
            if len > pairs {
                return Err(Error::InvalidParameter(format!(
                    "cannot delete {} edges from K_{} with {} edges",
                    len, n, pairs
                )));
            }
            let plan = AdaptivePlan { prefix: complete_insertions(n), steps: len, p_insert: 0.0, seed };
            return Ok(Workload::Adaptive { n, plan });
        }
    };
    Ok(Workload::Fixed { n, events })
}

/// The adversary's next move given the current graph and matching.
pub fn adaptive_step(g: &DynGraph, matching: &[Edge], p_insert: f64, rng: &mut Rng) -> Option<UpdateEvent> {
    let insert_roll = rng.chance(p_insert);
    let target = matching
        .iter()
        .copied()
        .max_by(|a, b| {
            let key = |e: &Edge| g.adjacency(e.u).len().max(g.adjacency(e.v).len());
            key(a).cmp(&key(b)).then(b.cmp(a))
        });
    if !insert_roll {
        if let Some(e) = target {
            return Some(UpdateEvent::delete(e.u, e.v));
        }
    }
    if p_insert > 0.0 {
        if let Some(e) = random_non_edge(g, rng) {
            return Some(UpdateEvent::insert(e.u, e.v));
        }
    }
    target.map(|e| UpdateEvent::delete(e.u, e.v))
}

/// Number of edges of K_n.
pub fn complete_edge_count(n: usize) -> usize {
    n * (n - 1) / 2
}

