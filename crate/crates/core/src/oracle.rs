//! Ground-truth checks and a naive reference engine.

use std::fmt;

use crate::engine::MatchingEngine;
use crate::error::Result;
use crate::graph::{DynGraph, Edge, UpdateEvent, UpdateKind, VertexId};
use crate::ops::OpCounter;

/// Why a set of edges fails to be a maximal matching of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotInGraph { edge: Edge },
    NotAMatching { vertex: VertexId, first: Edge, second: Edge },
    NotMaximal { edge: Edge },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotInGraph { edge } => write!(f, "matched edge {} is not in the graph", edge),
            Violation::NotAMatching { vertex, first, second } => {
                write!(f, "vertex {} is covered by both {} and {}", vertex, first, second)
            }
            Violation::NotMaximal { edge } => write!(f, "edge {} has both endpoints free", edge),
        }
    }
}

/// Partner of every vertex under `m`, or the first conflict found.
pub fn partner_map(n: usize, m: &[Edge]) -> std::result::Result<Vec<Option<VertexId>>, Violation> {
    let mut mate: Vec<Option<VertexId>> = vec![None; n];
    let mut by: Vec<Option<Edge>> = vec![None; n];
    for &e in m {
        for x in [e.u, e.v] {
            if let Some(prev) = by[x] {
                return Err(Violation::NotAMatching { vertex: x, first: prev, second: e });
            }
            by[x] = Some(e);
            mate[x] = Some(e.other(x));
        }
    }
    Ok(mate)
}

/// Checks that `m` is a maximal matching of `g`.
pub fn check_matching(g: &DynGraph, m: &[Edge]) -> std::result::Result<(), Violation> {
    for &e in m {
        if e.u == e.v || e.v >= g.n() || !g.adjacency(e.u).contains(&e.v) {
            return Err(Violation::NotInGraph { edge: e });
        }
    }
    let mate = partner_map(g.n(), m)?;
    for u in 0..g.n() {
        if mate[u].is_some() {
            continue;
        }
        if let Some(&v) = g.adjacency(u).range(u + 1..).find(|&&v| mate[v].is_none()) {
            return Err(Violation::NotMaximal { edge: Edge::new(u, v) });
        }
    }
    Ok(())
}

/// A vertex is settled if it is matched or all its neighbors are.
pub fn is_settled(g: &DynGraph, m: &[Edge], v: VertexId) -> bool {
    let covered = |x: VertexId| m.iter().any(|e| e.touches(x));
    covered(v) || g.adjacency(v).iter().all(|&w| covered(w))
}

/// Greedy engine: match on insertion, rescan both neighborhoods when a
/// matched edge disappears.
#[derive(Debug, Clone)]
pub struct NaiveEngine {
    g: DynGraph,
    mate: Vec<Option<VertexId>>,
    ops: OpCounter,
}

impl NaiveEngine {
    pub fn new(n: usize) -> Result<Self> {
        let ops = OpCounter::new();
        Ok(NaiveEngine { g: DynGraph::with_counter(n, ops.clone())?, mate: vec![None; n], ops })
    }

    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    fn rematch(&mut self, x: VertexId) {
        if self.mate[x].is_some() {
            return;
        }
        let mate = &self.mate;
        let ops = &self.ops;
        let found = self.g.neighbors(x).find(|&y| {
            ops.tick(1);
            mate[y].is_none()
        });
        if let Some(y) = found {
            self.mate[x] = Some(y);
            self.mate[y] = Some(x);
        }
    }
}

impl MatchingEngine for NaiveEngine {
    fn name(&self) -> &'static str {
        "naive"
    }

    fn n(&self) -> usize {
        self.g.n()
    }

    fn apply(&mut self, ev: UpdateEvent) -> Result<()> {
        let Edge { u, v } = ev.edge;
        match ev.kind {
            UpdateKind::Insert => {
                self.g.insert_edge(u, v)?;
                self.ops.tick(2);
                if self.mate[u].is_none() && self.mate[v].is_none() {
                    self.mate[u] = Some(v);
                    self.mate[v] = Some(u);
                }
            }
            UpdateKind::Delete => {
                self.g.delete_edge(u, v)?;
                self.ops.tick(1);
                if self.mate[u] == Some(v) {
                    self.mate[u] = None;
                    self.mate[v] = None;
                    self.rematch(u);
                    self.rematch(v);
                }
            }
        }
        Ok(())
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

    #[test]
    fn path_matching_checks() {
        let g = DynGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(check_matching(&g, &[Edge::new(0, 1), Edge::new(2, 3)]).is_ok());
        assert!(check_matching(&g, &[Edge::new(1, 2)]).is_ok());
        assert_eq!(check_matching(&g, &[Edge::new(0, 1)]), Err(Violation::NotMaximal { edge: Edge::new(2, 3) }));
        assert_eq!(check_matching(&g, &[Edge::new(0, 2)]), Err(Violation::NotInGraph { edge: Edge::new(0, 2) }));
        assert!(matches!(
            check_matching(&g, &[Edge::new(0, 1), Edge::new(1, 2)]),
            Err(Violation::NotAMatching { vertex: 1, .. })
        ));
    }

    #[test]
    fn settled_vertices() {
        let g = DynGraph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        let m = [Edge::new(0, 1)];
        assert!(is_settled(&g, &m, 2));
        assert!(is_settled(&g, &m, 3));
        assert!(!is_settled(&g, &[], 2));
    }

    #[test]
    fn naive_recovers_after_matched_deletion() {
        let mut e = NaiveEngine::new(4).unwrap();
        for (a, b) in [(0, 1), (1, 2), (0, 3)] {
            e.apply(UpdateEvent::insert(a, b)).unwrap();
        }
        assert_eq!(e.matching(), vec![Edge::new(0, 1)]);
        e.apply(UpdateEvent::delete(0, 1)).unwrap();
        assert_eq!(e.matching(), vec![Edge::new(0, 3), Edge::new(1, 2)]);
        check_matching(e.graph(), &e.matching()).unwrap();
    }
}
