use super::{MultiLevelSystem, VertexClass};
use crate::error::{Error, Result};
use crate::graph::{DynGraph, VertexId};

/// Builds a basic (1-level) z-subgraph system for `g`.
pub fn build_basic(g: &DynGraph, z: usize) -> Result<MultiLevelSystem> {
    if z == 0 {
        return Err(Error::InvalidParameter("z must be at least 1".into()));
    }
    let n = g.n();
    let mut sys = MultiLevelSystem::empty(n, z);

    // Greedy degree-capped subgraph M'.
    let mut deg = vec![0usize; n];
    let mut greedy = Vec::new();
    for e in g.edges() {
        if deg[e.u] < z && deg[e.v] < z {
            deg[e.u] += 1;
            deg[e.v] += 1;
            greedy.push(e);
        }
    }
    for v in 0..n {
        if deg[v] == z {
            sys.class[v] = VertexClass::B;
        }
    }
    for e in greedy {
        if sys.in_s(e.u) || sys.in_s(e.v) {
            sys.add_m(e.u, e.v);
        }
    }
    for v in 0..n {
        if sys.in_b(v) {
            let z_v: Vec<_> = sys.m_adj[v].iter().copied().filter(|&w| sys.in_u(w)).collect();
            if z_v.is_empty() {
                sys.class[v] = VertexClass::A(1);
            } else {
                sys.zset[v].extend(z_v);
            }
        }
    }

    for u in 0..n {
        if sys.in_u(u) {
            let in_b = g.neighbors(u).filter(|&w| sys.in_b(w)).count();
            if in_b > z {
                sys.proc_process_u(g, u)?;
            }
        }
    }
    sys.rebuild_lists(g);
    Ok(sys)
}

impl MultiLevelSystem {
    /// Moves `u ∈ U` with more than `z` neighbors in `B` into `S` by swapping
    /// `M`-edges away from `B`.
    ///
    /// Only valid while constructing a basic system; `Λ` and `L` are left
    /// stale until [`MultiLevelSystem::rebuild_lists`] runs.
    pub fn proc_process_u(&mut self, g: &DynGraph, u: VertexId) -> Result<()> {
        if self.k != 1 {
            return Err(Error::Precondition("proc_process_u needs a basic system".into()));
        }
        if !self.in_u(u) {
            return Err(Error::Precondition(format!("vertex {} is not in U", u)));
        }
        let in_b = g.neighbors(u).filter(|&w| self.in_b(w)).count();
        if in_b <= self.z {
            return Err(Error::Precondition(format!("vertex {} has only {} neighbors in B", u, in_b)));
        }
        let r = self.z - self.m_degree(u);
        let picks: Vec<VertexId> =
            g.neighbors(u).filter(|&w| self.in_b(w) && !self.has_m_edge(u, w)).take(r).collect();
        if picks.len() < r {
            return Err(Error::Assertion("not enough B-neighbors to swap".into()));
        }
        for &v in &picks {
            let a = *self.zset[v]
                .first()
                .ok_or_else(|| Error::Assertion(format!("B-vertex {} has empty Z", v)))?;
            self.add_m(v, u);
            self.remove_m(v, a);
            self.zset[v].remove(&a);
        }

        if self.m_adj[u].iter().all(|&w| self.in_s(w)) {
            self.class[u] = VertexClass::A(1);
        } else {
            self.class[u] = VertexClass::B;
            let z_u: Vec<_> = self.m_adj[u].iter().copied().filter(|&w| self.in_u(w)).collect();
            self.zset[u].extend(z_u);
        }
        let holders: Vec<_> = self.m_adj[u].iter().copied().filter(|&v| self.in_b(v)).collect();
        for v in holders {
            if self.zset[v].remove(&u) && self.zset[v].is_empty() {
                self.class[v] = VertexClass::A(1);
            }
        }
        for &v in &picks {
            if self.in_b(v) && self.zset[v].is_empty() {
                self.class[v] = VertexClass::A(1);
            }
        }
        Ok(())
    }

    /// Recomputes `Λ` and `L` of a basic system from scratch.
    pub fn rebuild_lists(&mut self, g: &DynGraph) {
        debug_assert_eq!(self.k, 1);
        for v in 0..self.n() {
            self.lambda[v].clear();
            self.l_list[v].clear();
            match self.class[v] {
                VertexClass::U => {
                    let lam: Vec<_> = g.neighbors(v).filter(|&w| !matches!(self.class[w], VertexClass::A(_))).collect();
                    self.lambda[v].extend(lam);
                }
                VertexClass::A(_) => {
                    let l: Vec<_> = g.neighbors(v).filter(|&w| self.in_u(w)).collect();
                    self.l_list[v].extend(l);
                }
                VertexClass::B => {}
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::system::validate_system;

    fn complete(n: usize) -> DynGraph {
        let mut g = DynGraph::new(n).unwrap();
        for a in 0..n {
            for b in a + 1..n {
                g.insert_edge(a, b).unwrap();
            }
        }
        g
    }

    #[test]
    fn empty_graph_is_all_u() {
        let g = DynGraph::new(5).unwrap();
        let sys = build_basic(&g, 2).unwrap();
        assert!((0..5).all(|v| sys.in_u(v)));
        assert_eq!(sys.m_len(), 0);
        validate_system(&g, &sys).unwrap();
    }

    #[test]
    fn k5_with_z2_keeps_a_triangle() {
        // greedy picks 01, 02, 12 and 34; the U-U edge 34 is dropped
        let g = complete(5);
        let sys = build_basic(&g, 2).unwrap();
        validate_system(&g, &sys).unwrap();
        assert_eq!(sys.m_edge_list(), vec![Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2)]);
        assert_eq!(sys.vertices_where(|c| c == VertexClass::A(1)), vec![0, 1, 2]);
        assert_eq!(sys.lambda(3).iter().copied().collect::<Vec<_>>(), vec![4]);
        assert_eq!(sys.l_list(0).iter().copied().collect::<Vec<_>>(), vec![3, 4]);
    }

    #[test]
    fn zero_z_rejected() {
        let g = complete(3);
        assert!(build_basic(&g, 0).is_err());
    }

    #[test]
    fn process_u_swaps_edges() {
        // z = 1: b1, b2 in B each hold one M-edge to a U-vertex; u sees both.
        // vertices: u=0, b1=1, b2=2, a1=3, a2=4
        let g = DynGraph::from_edges(5, [(0, 1), (0, 2), (1, 3), (2, 4)]).unwrap();
        let mut sys = MultiLevelSystem::empty(5, 1);
        sys.class[1] = VertexClass::B;
        sys.class[2] = VertexClass::B;
        sys.add_m(1, 3);
        sys.add_m(2, 4);
        sys.zset[1].insert(3);
        sys.zset[2].insert(4);
        sys.proc_process_u(&g, 0).unwrap();
        assert_eq!(sys.class(0), VertexClass::A(1));
        assert!(sys.has_m_edge(0, 1));
        assert!(!sys.has_m_edge(1, 3));
        assert_eq!(sys.class(1), VertexClass::A(1));
        assert_eq!(sys.class(2), VertexClass::B);
        assert_eq!(sys.m_degree(0), 1);
    }

    #[test]
    fn process_u_rejects_small_b_degree() {
        let g = DynGraph::from_edges(3, [(0, 1)]).unwrap();
        let mut sys = MultiLevelSystem::empty(3, 1);
        sys.class[1] = VertexClass::B;
        assert!(sys.proc_process_u(&g, 0).is_err());
        assert!(sys.proc_process_u(&g, 1).is_err());
    }
}
