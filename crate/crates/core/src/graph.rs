//! Simple undirected graph over a fixed vertex set with ordered adjacency.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ops::OpCounter;

pub type VertexId = usize;

/// Undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    /// Builds the canonical form of `{a, b}`. Does not reject self-loops.
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    /// The endpoint opposite to `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UpdateKind {
    Insert,
    Delete,
}

/// One adversarial update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UpdateEvent {
    pub kind: UpdateKind,
    pub edge: Edge,
}

impl UpdateEvent {
    pub fn insert(a: VertexId, b: VertexId) -> Self {
        UpdateEvent { kind: UpdateKind::Insert, edge: Edge::new(a, b) }
    }

    pub fn delete(a: VertexId, b: VertexId) -> Self {
        UpdateEvent { kind: UpdateKind::Delete, edge: Edge::new(a, b) }
    }
}

/// Dynamic graph with `n` vertices fixed at construction.
///
/// Counted accessors (`has_edge`, `neighbors`, `degree`, `edges`, mutation)
/// tick the attached [`OpCounter`]; `adjacency` is free and is meant for
/// checkers.
#[derive(Debug, Clone)]
pub struct DynGraph {
    adj: Vec<BTreeSet<VertexId>>,
    m: usize,
    ops: OpCounter,
}

impl PartialEq for DynGraph {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.adj == other.adj
    }
}

impl Eq for DynGraph {}

impl DynGraph {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_counter(n, OpCounter::new())
    }

    pub fn with_counter(n: usize, ops: OpCounter) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVertexSet);
        }
        Ok(DynGraph { adj: vec![BTreeSet::new(); n], m: 0, ops })
    }

    /// Builds a graph from an edge list, rejecting duplicates and self-loops.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let mut g = Self::new(n)?;
        for (a, b) in edges {
            g.insert_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ops(&self) -> &OpCounter {
        &self.ops
    }

    pub fn set_counter(&mut self, ops: OpCounter) {
        self.ops = ops;
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.adj.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { v, n: self.adj.len() })
        }
    }

    fn check_pair(&self, a: VertexId, b: VertexId) -> Result<()> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        Ok(())
    }

    pub fn insert_edge(&mut self, a: VertexId, b: VertexId) -> Result<()> {
        self.check_pair(a, b)?;
        self.ops.tick(1);
        if !self.adj[a].insert(b) {
            let e = Edge::new(a, b);
            return Err(Error::DuplicateEdge(e.u, e.v));
        }
        self.adj[b].insert(a);
        self.m += 1;
        Ok(())
    }

    pub fn delete_edge(&mut self, a: VertexId, b: VertexId) -> Result<()> {
        self.check_pair(a, b)?;
        self.ops.tick(1);
        if !self.adj[a].remove(&b) {
            let e = Edge::new(a, b);
            return Err(Error::MissingEdge(e.u, e.v));
        }
        self.adj[b].remove(&a);
        self.m -= 1;
        Ok(())
    }

    /// Applies an update, failing if it is invalid for the current graph.
    pub fn apply(&mut self, ev: UpdateEvent) -> Result<()> {
        match ev.kind {
            UpdateKind::Insert => self.insert_edge(ev.edge.u, ev.edge.v),
            UpdateKind::Delete => self.delete_edge(ev.edge.u, ev.edge.v),
        }
    }

    /// True if `{a, b}` is an edge. Out-of-range ids simply yield `false`.
    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.ops.tick(1);
        a < self.adj.len() && self.adj[a].contains(&b)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.ops.tick(1);
        self.adj[v].len()
    }

    /// Neighbors of `v` in ascending id order, one tick per neighbor read.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let ops = &self.ops;
        self.adj[v].iter().map(move |&w| {
            ops.tick(1);
            w
        })
    }

    /// Uncounted view of the adjacency set of `v`.
    pub fn adjacency(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.adj[v]
    }

    /// All edges in canonical ascending order, one tick per edge.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let ops = &self.ops;
        self.adj.iter().enumerate().flat_map(move |(u, nb)| {
            nb.range(u + 1..).map(move |&v| {
                ops.tick(1);
                Edge { u, v }
            })
        })
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_then_neighbors() {
        let mut g = DynGraph::new(4).unwrap();
        g.insert_edge(0, 1).unwrap();
        g.insert_edge(0, 3).unwrap();
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn delete_last_edge() {
        let mut g = DynGraph::from_edges(3, [(1, 2)]).unwrap();
        g.delete_edge(2, 1).unwrap();
        assert_eq!(g.m(), 0);
        assert_eq!(g.degree(1), 0);
    }

    #[test]
    fn rejects_bad_updates() {
        let mut g = DynGraph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(g.insert_edge(2, 2), Err(Error::SelfLoop(2)));
        assert_eq!(g.insert_edge(1, 0), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(g.delete_edge(1, 2), Err(Error::MissingEdge(1, 2)));
        assert_eq!(g.insert_edge(0, 5), Err(Error::VertexOutOfRange { v: 5, n: 3 }));
        assert_eq!(DynGraph::new(0).unwrap_err(), Error::EmptyVertexSet);
    }

    #[test]
    fn edges_are_canonical_and_sorted() {
        let g = DynGraph::from_edges(4, [(3, 0), (2, 1), (1, 0)]).unwrap();
        let es: Vec<_> = g.edges().collect();
        assert_eq!(es, vec![Edge::new(0, 1), Edge::new(0, 3), Edge::new(1, 2)]);
    }

    #[test]
    fn counter_ticks_are_shared_by_clones() {
        let g = DynGraph::from_edges(3, [(0, 1)]).unwrap();
        let h = g.clone();
        let before = g.ops().get();
        h.has_edge(0, 1);
        assert_eq!(g.ops().get(), before + 1);
    }
}
