use super::MatcherState;
use crate::graph::VertexId;

impl MatcherState {
    pub(super) fn pair(&mut self, a: VertexId, b: VertexId) {
        debug_assert!(self.mate[a].is_none() && self.mate[b].is_none());
        self.mate[a] = Some(b);
        self.mate[b] = Some(a);
        self.ops.tick(2);
    }

    /// Removes `(a, b)` from `M*`, and from `M_1` if it is there.
    pub(super) fn unpair(&mut self, a: VertexId, b: VertexId) {
        debug_assert_eq!(self.mate[a], Some(b));
        self.mate[a] = None;
        self.mate[b] = None;
        if self.m1[a] == Some(b) {
            self.m1_clear(a, b);
        }
        self.ops.tick(2);
    }

    pub(super) fn m1_set(&mut self, a: VertexId, b: VertexId) {
        self.m1[a] = Some(b);
        self.m1[b] = Some(a);
        self.m1_unmatched -= self.sys.in_s(a) as usize + self.sys.in_s(b) as usize;
    }

    pub(super) fn m1_clear(&mut self, a: VertexId, b: VertexId) {
        self.m1[a] = None;
        self.m1[b] = None;
        self.m1_unmatched += self.sys.in_s(a) as usize + self.sys.in_s(b) as usize;
    }

    /// Refreshes `Ŝ`, `H` and `H̃` after `v` changed its matched status.
    pub(super) fn proc_update(&mut self, v: VertexId) {
        self.ops.tick(1);
        if self.mate[v].is_some() {
            self.s_hat.remove(&v);
            for w in std::mem::take(&mut self.h_out[v]) {
                self.ops.tick(1);
                self.h_in[w].remove(&v);
            }
            for w in std::mem::take(&mut self.ht_out[v]) {
                self.ops.tick(1);
                self.ht_in[w].remove(&v);
            }
            return;
        }
        if self.sys.in_s(v) {
            self.s_hat.insert(v);
        }
        if self.sys.in_u(v) {
            for &w in &self.sys.lambda[v] {
                self.ops.tick(1);
                self.h_out[v].insert(w);
                self.h_in[w].insert(v);
            }
        }
        let bad_targets: Vec<VertexId> = if self.e_ins[v].len() <= self.bad_set.len() {
            self.e_ins[v].iter().copied().filter(|&w| self.bad[w]).collect()
        } else {
            self.bad_set.iter().copied().filter(|&w| self.e_ins[v].contains(&w)).collect()
        };
        self.ops.tick(self.e_ins[v].len().min(self.bad_set.len()) as u64);
        for w in bad_targets {
            self.ht_out[v].insert(w);
            self.ht_in[w].insert(v);
        }
    }

    /// Dispatches to the rematch procedure matching the class of `x`.
    pub(super) fn rematch(&mut self, x: VertexId) -> bool {
        self.chain = 0;
        let ok = match self.level(x) {
            Some(i) => self.rematch_a(i, x),
            None => self.rematch_bu(x),
        };
        self.stats.max_chain_deletions = self.stats.max_chain_deletions.max(self.chain);
        ok
    }

    fn match_now(&mut self, a: VertexId, b: VertexId) -> bool {
        self.pair(a, b);
        self.proc_update(a);
        self.proc_update(b);
        true
    }

    /// Searches the neighbors reachable without the `L` lists: unmatched
    /// `S`-vertices, then the inserted edges.
    fn rematch_tail(&mut self, v: VertexId) -> bool {
        // smallest neighbor in Ŝ, found from whichever side is shorter
        let found = if self.s_hat.len() <= self.g.adjacency(v).len() {
            self.s_hat.iter().copied().find(|&w| {
                self.ops.tick(1);
                self.g.has_edge(v, w)
            })
        } else {
            self.g.adjacency(v).iter().copied().find(|w| {
                self.ops.tick(2);
                self.s_hat.contains(w)
            })
        };
        if let Some(w) = found {
            return self.match_now(v, w);
        }
        let found = if self.bad[v] {
            self.ops.tick(1);
            self.ht_in[v].first().copied()
        } else {
            self.e_ins[v].iter().copied().find(|&w| {
                self.ops.tick(1);
                self.mate[w].is_none()
            })
        };
        match found {
            Some(w) => self.match_now(v, w),
            None => false,
        }
    }

    /// Rematch for an unmatched vertex of `B ∪ U`.
    pub(super) fn rematch_bu(&mut self, u: VertexId) -> bool {
        debug_assert!(self.mate[u].is_none());
        self.ops.tick(1);
        if let Some(&w) = self.h_in[u].first() {
            return self.match_now(u, w);
        }
        self.rematch_tail(u)
    }

    /// Rematch for an unmatched vertex `v ∈ A_i`. May steal a partner from
    /// a higher level and recurse on the vertex left behind.
    pub(super) fn rematch_a(&mut self, i: usize, v: VertexId) -> bool {
        debug_assert!(self.mate[v].is_none());
        let mut pick = None;
        for &u in self.sys.l_list[v].iter().take(self.params.scan_len) {
            self.ops.tick(1);
            match self.mate[u] {
                None => {
                    pick = Some((u, None));
                    break;
                }
                Some(p) if !self.sys.in_a_upto(i, p) => {
                    pick = Some((u, Some(p)));
                    break;
                }
                Some(_) => {}
            }
        }
        match pick {
            Some((u, None)) => self.match_now(u, v),
            Some((u, Some(p))) => {
                self.unpair(u, p);
                self.pair(u, v);
                self.proc_update(p);
                self.proc_update(v);
                self.chain += 1;
                match self.level(p) {
                    Some(j) => {
                        debug_assert!(j > i);
                        self.rematch_a(j, p);
                    }
                    None => {
                        self.rematch_bu(p);
                    }
                }
                true
            }
            None => self.rematch_tail(v),
        }
    }
}
