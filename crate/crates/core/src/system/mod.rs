//! Multi-level subgraph systems: construction, refinement and validation.

mod build;
mod refine;
mod validate;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::graph::{Edge, VertexId};

pub use build::build_basic;
pub use refine::{refine, Refinement};
pub use validate::{validate_system, SystemViolation};

/// Membership of a vertex in the partition `A_1 ∪ … ∪ A_k ∪ B ∪ U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexClass {
    /// Member of `A_i`, levels counted from 1.
    A(usize),
    B,
    U,
}

impl VertexClass {
    pub fn in_s(self) -> bool {
        !matches!(self, VertexClass::U)
    }
}

/// A k-level z-subgraph system together with its auxiliary lists.
///
/// `N_1..N_{k-1}` are stored explicitly; `N_k` is always `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiLevelSystem {
    pub(crate) z: usize,
    pub(crate) k: usize,
    pub(crate) class: Vec<VertexClass>,
    pub(crate) frozen_n: Vec<Vec<bool>>,
    pub(crate) m_adj: Vec<BTreeSet<VertexId>>,
    pub(crate) m_edges: usize,
    pub(crate) zset: Vec<BTreeSet<VertexId>>,
    pub(crate) lambda: Vec<BTreeSet<VertexId>>,
    pub(crate) l_list: Vec<BTreeSet<VertexId>>,
}

impl MultiLevelSystem {
    pub(crate) fn empty(n: usize, z: usize) -> Self {
        MultiLevelSystem {
            z,
            k: 1,
            class: vec![VertexClass::U; n],
            frozen_n: Vec::new(),
            m_adj: vec![BTreeSet::new(); n],
            m_edges: 0,
            zset: vec![BTreeSet::new(); n],
            lambda: vec![BTreeSet::new(); n],
            l_list: vec![BTreeSet::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.class.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn class(&self, v: VertexId) -> VertexClass {
        self.class[v]
    }

    pub fn in_s(&self, v: VertexId) -> bool {
        self.class[v].in_s()
    }

    pub fn in_u(&self, v: VertexId) -> bool {
        self.class[v] == VertexClass::U
    }

    pub fn in_b(&self, v: VertexId) -> bool {
        self.class[v] == VertexClass::B
    }

    /// Level `i` if `v ∈ A_i`.
    pub fn a_level(&self, v: VertexId) -> Option<usize> {
        match self.class[v] {
            VertexClass::A(i) => Some(i),
            _ => None,
        }
    }

    /// `v ∈ A_1 ∪ … ∪ A_i`.
    pub fn in_a_upto(&self, i: usize, v: VertexId) -> bool {
        matches!(self.class[v], VertexClass::A(j) if j <= i)
    }

    /// `v ∈ N_i`.
    pub fn in_n(&self, i: usize, v: VertexId) -> bool {
        if i == self.k {
            self.in_b(v)
        } else {
            self.frozen_n[i - 1][v]
        }
    }

    /// `v ∈ R_i = (A_{≥i+1} ∪ B ∪ U) \ N_i`.
    pub fn in_r(&self, i: usize, v: VertexId) -> bool {
        let upper = match self.class[v] {
            VertexClass::A(j) => j > i,
            _ => true,
        };
        upper && !self.in_n(i, v)
    }

    pub fn m_degree(&self, v: VertexId) -> usize {
        self.m_adj[v].len()
    }

    pub fn m_neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.m_adj[v]
    }

    pub fn has_m_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.m_adj[a].contains(&b)
    }

    pub fn m_len(&self) -> usize {
        self.m_edges
    }

    /// The edges of `M` in canonical order.
    pub fn m_edge_list(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m_edges);
        for (u, nb) in self.m_adj.iter().enumerate() {
            out.extend(nb.range(u + 1..).map(|&v| Edge { u, v }));
        }
        out
    }

    /// `Z(v)`: the `U`-vertices matched to `v ∈ B` through `M`.
    pub fn z_set(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.zset[v]
    }

    /// `Λ(u)` for `u ∈ U`, empty otherwise.
    pub fn lambda(&self, u: VertexId) -> &BTreeSet<VertexId> {
        &self.lambda[u]
    }

    /// `L(v)` for `v ∈ A_i`, empty otherwise.
    pub fn l_list(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.l_list[v]
    }

    pub fn vertices_where(&self, f: impl Fn(VertexClass) -> bool) -> Vec<VertexId> {
        (0..self.n()).filter(|&v| f(self.class[v])).collect()
    }

    pub fn s_size(&self) -> usize {
        self.class.iter().filter(|c| c.in_s()).count()
    }

    pub fn s_mask(&self) -> Vec<bool> {
        self.class.iter().map(|c| c.in_s()).collect()
    }

    /// Deep copy used as a rollback point.
    pub fn snapshot(&self) -> Self {
        self.clone()
    }

    pub(crate) fn add_m(&mut self, a: VertexId, b: VertexId) {
        if self.m_adj[a].insert(b) {
            self.m_adj[b].insert(a);
            self.m_edges += 1;
        }
    }

    pub(crate) fn remove_m(&mut self, a: VertexId, b: VertexId) -> bool {
        if self.m_adj[a].remove(&b) {
            self.m_adj[b].remove(&a);
            self.m_edges -= 1;
            true
        } else {
            false
        }
    }

    /// Deterministic, line-oriented text dump.
    pub fn debug_dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "system n={} k={} z={} |M|={}", self.n(), self.k, self.z, self.m_edges);
        for i in 1..self.k {
            let members: Vec<_> = (0..self.n()).filter(|&v| self.frozen_n[i - 1][v]).collect();
            let _ = writeln!(s, "N{} {:?}", i, members);
        }
        for v in 0..self.n() {
            let tag = match self.class[v] {
                VertexClass::A(i) => format!("A{}", i),
                VertexClass::B => "B".to_string(),
                VertexClass::U => "U".to_string(),
            };
            let _ = write!(s, "{} {} M={:?}", v, tag, self.m_adj[v]);
            if !self.zset[v].is_empty() {
                let _ = write!(s, " Z={:?}", self.zset[v]);
            }
            if !self.lambda[v].is_empty() {
                let _ = write!(s, " Lambda={:?}", self.lambda[v]);
            }
            if !self.l_list[v].is_empty() {
                let _ = write!(s, " L={:?}", self.l_list[v]);
            }
            s.push('\n');
        }
        s
    }
}
