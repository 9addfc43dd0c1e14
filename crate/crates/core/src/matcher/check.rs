use std::collections::BTreeSet;

use super::MatcherState;
use crate::graph::VertexId;
use crate::system::VertexClass;

impl MatcherState {
    /// Recomputes every maintained structure from scratch and compares.
    /// Returns the first discrepancy found.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.n();
        let sys = &self.sys;
        for v in 0..n {
            if let Some(w) = self.mate[v] {
                if self.mate[w] != Some(v) {
                    return Err(format!("M* asymmetric at {}", v));
                }
                if !self.contains_edge(v, w) {
                    return Err(format!("M* edge ({}, {}) not in the graph", v, w));
                }
            }
            if let Some(w) = self.m1[v] {
                if self.m1[w] != Some(v) || self.mate[v] != Some(w) {
                    return Err(format!("M_1 edge ({}, {}) not in M*", v, w));
                }
                if !sys.has_m_edge(v, w) {
                    return Err(format!("M_1 edge ({}, {}) not in M", v, w));
                }
            }
        }
        let m1_unmatched = (0..n).filter(|&v| sys.in_s(v) && self.m1[v].is_none()).count();
        if m1_unmatched != self.m1_unmatched {
            return Err(format!("M_1 counter {} but {} unmatched", self.m1_unmatched, m1_unmatched));
        }
        for c in 1..=self.z {
            let mut covered = 0;
            for (&x, &y) in &self.class_mates[c] {
                if self.class_mates[c].get(&y) != Some(&x) || !sys.has_m_edge(x, y) {
                    return Err(format!("class {} broken at {}", c, x));
                }
                if self.class_of.get(&crate::graph::Edge::new(x, y)) != Some(&c) {
                    return Err(format!("class index missing for ({}, {})", x, y));
                }
                covered += sys.in_s(x) as usize;
            }
            let want = sys.s_size() - covered;
            if want != self.class_unmatched[c] {
                return Err(format!("class {} counter {} but {} unmatched", c, self.class_unmatched[c], want));
            }
        }

        let s_hat: BTreeSet<_> = (0..n).filter(|&v| sys.in_s(v) && self.mate[v].is_none()).collect();
        if s_hat != self.s_hat {
            return Err("Ŝ out of date".into());
        }
        for v in 0..n {
            let free = self.mate[v].is_none();
            let want_out: BTreeSet<VertexId> =
                if free && sys.in_u(v) { sys.lambda(v).clone() } else { BTreeSet::new() };
            if want_out != self.h_out[v] {
                return Err(format!("H out-list of {} out of date", v));
            }
            let want_in: BTreeSet<VertexId> = (0..n)
                .filter(|&u| sys.in_u(u) && self.mate[u].is_none() && sys.lambda(u).contains(&v))
                .collect();
            if want_in != self.h_in[v] {
                return Err(format!("H in-list of {} out of date", v));
            }
            if self.bad[v] != (self.inserted[v] >= self.z) {
                return Err(format!("bad flag of {} wrong", v));
            }
            let want_ht: BTreeSet<VertexId> = if self.bad[v] {
                self.e_ins[v].iter().copied().filter(|&w| self.mate[w].is_none()).collect()
            } else {
                BTreeSet::new()
            };
            if want_ht != self.ht_in[v] {
                return Err(format!("H̃ in-list of {} out of date", v));
            }
            let nb = self.g.adjacency(v);
            match sys.class(v) {
                VertexClass::U => {
                    let want: BTreeSet<_> =
                        nb.iter().copied().filter(|&w| !matches!(sys.class(w), VertexClass::A(_))).collect();
                    if &want != sys.lambda(v) {
                        return Err(format!("Λ({}) out of date", v));
                    }
                }
                VertexClass::A(i) => {
                    let want: BTreeSet<_> = nb.iter().copied().filter(|&w| sys.in_r(i, w)).collect();
                    if &want != sys.l_list(v) {
                        return Err(format!("L({}) out of date", v));
                    }
                }
                VertexClass::B => {}
            }
        }
        for i in 1..=sys.k() {
            let cross = (0..n)
                .filter(|&v| sys.in_a_upto(i, v) && self.mate[v].is_some_and(|w| sys.in_r(i, w)))
                .count();
            if cross as f64 > self.params.threshold_run {
                return Err(format!("{} vertices of A_≤{} matched into R_{}", cross, i, i));
            }
        }
        if self.m1_unmatched as f64 > self.params.threshold_run {
            return Err(format!("{} S-vertices unmatched by M_1", self.m1_unmatched));
        }
        Ok(())
    }
}
