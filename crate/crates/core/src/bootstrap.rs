//! Engine for the first phase, while the graph has seen few insertions.
//!
//! A vertex is bad once more than `t` incident edges were inserted. Good
//! vertices rescan their (short) neighborhood; bad vertices keep `F(b)`, the
//! set of their currently unmatched neighbors.

use std::collections::BTreeSet;

use crate::engine::MatchingEngine;
use crate::error::{Error, Result};
use crate::graph::{DynGraph, Edge, UpdateEvent, UpdateKind, VertexId};
use crate::ops::OpCounter;

#[derive(Debug, Clone)]
pub struct BootState {
    g: DynGraph,
    mate: Vec<Option<VertexId>>,
    t: usize,
    inserted: Vec<usize>,
    total_inserted: usize,
    bad: BTreeSet<VertexId>,
    free_nbrs: Vec<BTreeSet<VertexId>>,
    ops: OpCounter,
}

impl BootState {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        Self::with_counter(n, t, OpCounter::new())
    }

    pub fn with_counter(n: usize, t: usize, ops: OpCounter) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParameter("bootstrap threshold t must be at least 1".into()));
        }
        Ok(BootState {
            g: DynGraph::with_counter(n, ops.clone())?,
            mate: vec![None; n],
            t,
            inserted: vec![0; n],
            total_inserted: 0,
            bad: BTreeSet::new(),
            free_nbrs: vec![BTreeSet::new(); n],
            ops,
        })
    }

    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn bad_vertices(&self) -> &BTreeSet<VertexId> {
        &self.bad
    }

    pub fn total_inserted(&self) -> usize {
        self.total_inserted
    }

    fn is_free(&self, x: VertexId) -> bool {
        self.ops.tick(1);
        self.mate[x].is_none()
    }

    fn pair(&mut self, a: VertexId, b: VertexId) {
        self.mate[a] = Some(b);
        self.mate[b] = Some(a);
    }

    fn make_bad(&mut self, x: VertexId) {
        self.bad.insert(x);
        let free: Vec<_> = self.g.neighbors(x).filter(|&w| self.mate[w].is_none()).collect();
        self.free_nbrs[x] = free.into_iter().collect();
    }

    /// Brings every `F(b)` up to date with the status of `x`.
    fn sync(&mut self, x: VertexId) {
        let free = self.mate[x].is_none();
        let bad: Vec<_> = self.bad.iter().copied().collect();
        for b in bad {
            if self.g.has_edge(x, b) {
                if free {
                    self.free_nbrs[b].insert(x);
                } else {
                    self.free_nbrs[b].remove(&x);
                }
            }
        }
    }

    fn insert(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.g.insert_edge(u, v)?;
        let was = [self.mate[u], self.mate[v]];
        if self.is_free(u) && self.is_free(v) {
            self.pair(u, v);
        }
        for (x, y) in [(u, v), (v, u)] {
            if self.bad.contains(&y) && self.mate[x].is_none() {
                self.free_nbrs[y].insert(x);
            }
        }
        self.total_inserted += 1;
        for x in [u, v] {
            self.inserted[x] += 1;
            if self.inserted[x] > self.t && !self.bad.contains(&x) {
                self.make_bad(x);
            }
        }
        for (x, before) in [(u, was[0]), (v, was[1])] {
            if self.mate[x] != before {
                self.sync(x);
            }
        }
        Ok(())
    }

    fn delete(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.g.delete_edge(u, v)?;
        self.free_nbrs[u].remove(&v);
        self.free_nbrs[v].remove(&u);
        if self.mate[u] != Some(v) {
            return Ok(());
        }
        self.mate[u] = None;
        self.mate[v] = None;
        let mut changed = vec![u, v];
        for x in [u, v] {
            if self.mate[x].is_some() {
                continue;
            }
            let partner = if self.bad.contains(&x) {
                self.ops.tick(1);
                self.free_nbrs[x].iter().copied().find(|&y| self.mate[y].is_none())
            } else {
                let mate = &self.mate;
                self.g.neighbors(x).find(|&y| mate[y].is_none())
            };
            if let Some(y) = partner {
                self.pair(x, y);
                changed.push(y);
            }
        }
        for x in changed {
            self.sync(x);
        }
        Ok(())
    }

    /// Checks `F(b) = {w ∈ N(b) : w unmatched}` for every bad `b`, and the
    /// size bound on the bad set.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for &b in &self.bad {
            let want: BTreeSet<_> = self.g.adjacency(b).iter().copied().filter(|&w| self.mate[w].is_none()).collect();
            if want != self.free_nbrs[b] {
                return Err(format!("F({}) = {:?}, expected {:?}", b, self.free_nbrs[b], want));
            }
        }
        if self.bad.len() as f64 > 2.0 * self.total_inserted as f64 / self.t as f64 {
            return Err(format!("{} bad vertices after {} insertions", self.bad.len(), self.total_inserted));
        }
        for (x, &p) in self.mate.iter().enumerate() {
            if let Some(y) = p {
                if self.mate[y] != Some(x) || !self.g.adjacency(x).contains(&y) {
                    return Err(format!("partner map broken at {}", x));
                }
            }
        }
        Ok(())
    }
}

impl MatchingEngine for BootState {
    fn name(&self) -> &'static str {
        "boot"
    }

    fn n(&self) -> usize {
        self.g.n()
    }

    fn apply(&mut self, ev: UpdateEvent) -> Result<()> {
        match ev.kind {
            UpdateKind::Insert => self.insert(ev.edge.u, ev.edge.v),
            UpdateKind::Delete => self.delete(ev.edge.u, ev.edge.v),
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::check_matching;

    #[test]
    fn star_center_turns_bad() {
        let mut b = BootState::new(5, 2).unwrap();
        for x in 1..4 {
            b.apply(UpdateEvent::insert(0, x)).unwrap();
        }
        assert!(b.bad_vertices().contains(&0));
        b.check_invariants().unwrap();
        b.apply(UpdateEvent::delete(0, 1)).unwrap();
        assert_eq!(b.matching(), vec![Edge::new(0, 2)]);
        check_matching(b.graph(), &b.matching()).unwrap();
        b.check_invariants().unwrap();
    }

    #[test]
    fn good_vertex_rescans() {
        let mut b = BootState::new(4, 3).unwrap();
        for (x, y) in [(0, 1), (1, 2), (2, 3)] {
            b.apply(UpdateEvent::insert(x, y)).unwrap();
        }
        b.apply(UpdateEvent::delete(0, 1)).unwrap();
        check_matching(b.graph(), &b.matching()).unwrap();
        b.check_invariants().unwrap();
    }

    #[test]
    fn zero_threshold_rejected() {
        assert!(BootState::new(3, 0).is_err());
    }
}
