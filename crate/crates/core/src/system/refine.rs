use std::collections::{BTreeSet, HashSet};

use super::{MultiLevelSystem, VertexClass};
use crate::coloring::{color_edges_counted, matchings_from_coloring};
use crate::error::{Error, Result};
use crate::graph::{DynGraph, Edge, VertexId};

/// Output of [`refine`]: the refined graph, system and deferred deletions.
#[derive(Debug, Clone)]
pub struct Refinement {
    pub graph: DynGraph,
    pub sys: MultiLevelSystem,
    /// `E'_D`: deletions absorbed into the kept matchings and deferred.
    pub deferred: Vec<Edge>,
    /// Indices of the color classes kept, in selection order.
    pub kept_classes: Vec<usize>,
}

/// Turns an h-level z-system of `g` into an (h+1)-level z'-system of
/// `(g ∪ e_i) \ (e_d \ E'_D)`, consuming both inputs.
pub fn refine(
    mut g: DynGraph,
    sys: MultiLevelSystem,
    e_d: &[Edge],
    e_i: &[Edge],
    z_new: usize,
) -> Result<Refinement> {
    let n = sys.n();
    let (h, z) = (sys.k, sys.z);
    check_preconditions(&g, &sys, e_d, e_i, z_new)?;
    let ops = g.ops().clone();

    // Step 1: keep the z' color classes least hit by deletions.
    let m_list = sys.m_edge_list();
    let coloring = color_edges_counted(n, &m_list, &ops)?;
    let classes = matchings_from_coloring(&coloring, z + 1)?;
    let deleted: HashSet<Edge> = e_d.iter().copied().collect();
    let weight: Vec<usize> = classes.iter().map(|c| c.iter().filter(|e| deleted.contains(e)).count()).collect();
    let mut order: Vec<usize> = (0..=z).collect();
    order.sort_by_key(|&i| weight[i]);
    let kept: Vec<usize> = order[..z_new].to_vec();
    let mut m_hat: HashSet<Edge> = HashSet::new();
    for &i in &kept {
        m_hat.extend(classes[i].iter().copied());
    }
    ops.tick(m_list.len() as u64);
    let mut deferred: Vec<Edge> = e_d.iter().copied().filter(|e| m_hat.contains(e)).collect();
    deferred.sort_unstable();
    let removed: Vec<Edge> = e_d.iter().copied().filter(|e| !m_hat.contains(e)).collect();
    for e in e_i {
        g.insert_edge(e.u, e.v)?;
    }
    for e in &removed {
        g.delete_edge(e.u, e.v)?;
    }

    let old = sys;
    let level = h + 1;
    let mut s = MultiLevelSystem::empty(n, z_new);
    s.k = level;
    s.frozen_n = old.frozen_n.clone();
    s.frozen_n.push(old.class.iter().map(|&c| c == VertexClass::B).collect());
    s.class = old.class.clone();
    for e in &m_hat {
        s.add_m(e.u, e.v);
    }
    for v in 0..n {
        if old.class[v] == VertexClass::B {
            if s.m_adj[v].iter().all(|&w| old.in_s(w)) {
                s.class[v] = VertexClass::A(level);
            } else {
                let z_v: Vec<_> = s.m_adj[v].iter().copied().filter(|&w| old.in_u(w)).collect();
                s.zset[v].extend(z_v);
            }
        }
    }

    // Lists of the old A-levels are patched; everything at level h+1 and
    // below is derived from Λ.
    s.l_list = old.l_list;
    s.lambda = old.lambda;
    for e in &removed {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            ops.tick(1);
            s.l_list[a].remove(&b);
            s.lambda[a].remove(&b);
        }
    }
    for e in e_i {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            ops.tick(1);
            match s.class[a] {
                VertexClass::A(i) if i <= h => {
                    if s.in_r(i, b) {
                        s.l_list[a].insert(b);
                    }
                }
                VertexClass::U => {
                    if !s.in_a_upto(h, b) {
                        s.lambda[a].insert(b);
                    }
                }
                _ => {}
            }
        }
    }
    for u in 0..n {
        if s.in_u(u) {
            let lam: Vec<_> = s.lambda[u].iter().copied().collect();
            for w in lam {
                ops.tick(1);
                if !s.in_a_upto(h, w) && !s.in_u(w) {
                    s.l_list[w].insert(u);
                }
            }
        }
    }

    // Step 2: promote or process every remaining U-vertex.
    let mut st = Refiner { s, h, floor: z_new as i64 - h as i64, ops: ops.clone() };
    for u in 0..n {
        if st.s.in_u(u) && st.s.m_degree(u) as i64 >= st.floor {
            st.promote(u);
        }
    }
    for u in 0..n {
        if st.s.in_u(u) {
            st.process(u)?;
        }
    }
    let mut s = st.s;
    for u in 0..n {
        match s.class[u] {
            VertexClass::U => {
                let keep: BTreeSet<_> = s.lambda[u].iter().copied().filter(|&w| !s.in_a_upto(level, w)).collect();
                s.lambda[u] = keep;
            }
            VertexClass::B => s.l_list[u].clear(),
            VertexClass::A(_) => {}
        }
    }

    Ok(Refinement { graph: g, sys: s, deferred, kept_classes: kept })
}

fn check_preconditions(g: &DynGraph, sys: &MultiLevelSystem, e_d: &[Edge], e_i: &[Edge], z_new: usize) -> Result<()> {
    let n = sys.n();
    let (h, z) = (sys.k, sys.z);
    if g.n() != n {
        return Err(Error::Precondition("graph and system sizes differ".into()));
    }
    if !z.is_power_of_two() || !z_new.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("z = {} and z' = {} must be powers of two", z, z_new)));
    }
    if z_new >= z || z_new < 2 {
        return Err(Error::InvalidParameter(format!("need 2 <= z' < z, got z' = {}, z = {}", z_new, z)));
    }
    if (h + 1) as f64 > (n as f64).log2() {
        return Err(Error::InvalidParameter(format!("level {} exceeds log2 n for n = {}", h + 1, n)));
    }
    let mut seen = HashSet::new();
    for e in e_d {
        if !seen.insert(*e) {
            return Err(Error::Precondition(format!("{} listed twice in E_D", e)));
        }
        if e.v >= n || !g.adjacency(e.u).contains(&e.v) {
            return Err(Error::MissingEdge(e.u, e.v));
        }
    }
    let mut seen = HashSet::new();
    for e in e_i {
        if !seen.insert(*e) {
            return Err(Error::Precondition(format!("{} listed twice in E_I", e)));
        }
        g.check_vertex(e.v)?;
        if e.u == e.v {
            return Err(Error::SelfLoop(e.u));
        }
        if g.adjacency(e.u).contains(&e.v) {
            return Err(Error::DuplicateEdge(e.u, e.v));
        }
    }
    Ok(())
}

struct Refiner {
    s: MultiLevelSystem,
    h: usize,
    floor: i64,
    ops: crate::ops::OpCounter,
}

impl Refiner {
    fn top(&self) -> usize {
        self.h + 1
    }

    fn in_lower(&self, v: VertexId) -> bool {
        matches!(self.s.class[v], VertexClass::A(_) | VertexClass::B) && !self.s.in_a_upto(self.h, v)
    }

    fn promote(&mut self, u: VertexId) {
        let top = self.top();
        let s = &mut self.s;
        if s.m_adj[u].iter().all(|&w| s.class[w].in_s()) {
            s.class[u] = VertexClass::A(top);
        } else {
            s.class[u] = VertexClass::B;
            let z_u: Vec<_> = s.m_adj[u].iter().copied().filter(|&w| s.in_u(w)).collect();
            s.zset[u].extend(z_u);
        }
        let lam = std::mem::take(&mut s.lambda[u]);
        self.ops.tick(lam.len() as u64);
        let l: BTreeSet<_> = lam.iter().copied().filter(|&w| self.s.in_u(w)).collect();
        self.s.l_list[u] = l;
        for &v in &lam {
            if !self.in_lower(v) {
                continue;
            }
            let s = &mut self.s;
            s.l_list[v].remove(&u);
            if s.class[v] == VertexClass::B && s.m_adj[u].contains(&v) {
                s.zset[v].remove(&u);
                if s.zset[v].is_empty() {
                    s.class[v] = VertexClass::A(top);
                }
            }
        }
    }

    fn process(&mut self, u: VertexId) -> Result<()> {
        let z_new = self.s.z;
        let r = z_new - self.s.m_degree(u);
        let u_nbrs: Vec<VertexId> = self.s.lambda[u].iter().copied().filter(|&w| self.s.in_u(w)).collect();
        self.ops.tick(self.s.lambda[u].len() as u64);
        if u_nbrs.len() >= r {
            let picks: Vec<_> = u_nbrs[..r].to_vec();
            for &v in &picks {
                self.s.add_m(u, v);
            }
            self.promote(u);
            for &v in &picks {
                if self.s.in_u(v) && self.s.m_degree(v) as i64 >= self.floor {
                    self.promote(v);
                }
            }
            return Ok(());
        }
        let b_count = self.s.lambda[u].iter().filter(|&&w| self.s.in_b(w)).count();
        if b_count >= z_new {
            let picks: Vec<VertexId> = self.s.lambda[u]
                .iter()
                .copied()
                .filter(|&w| self.s.in_b(w) && !self.s.has_m_edge(u, w))
                .take(r)
                .collect();
            if picks.len() < r {
                return Err(Error::Assertion(format!("vertex {} lacks free B-neighbors", u)));
            }
            for &v in &picks {
                let a = *self.s.zset[v]
                    .first()
                    .ok_or_else(|| Error::Assertion(format!("B-vertex {} has empty Z", v)))?;
                self.s.add_m(v, u);
                self.s.zset[v].insert(u);
                self.s.remove_m(v, a);
                self.s.zset[v].remove(&a);
            }
            self.promote(u);
        }
        Ok(())
    }
}
