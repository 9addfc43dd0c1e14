use std::collections::BTreeMap;

use super::MatcherState;
use crate::error::{Error, Result};
use crate::graph::VertexId;

impl MatcherState {
    /// Phase start: if too many `S`-vertices are unmatched by `M_1`, augment
    /// `M_1` along paths of `M_1 ∪ M_i` for a lightly damaged class `i`.
    pub(super) fn init_phase(&mut self) -> Result<()> {
        self.stats.phases_started += 1;
        let n = self.n();
        let pending: Vec<VertexId> = (0..n).filter(|&v| self.sys.in_s(v) && self.m1[v].is_none()).collect();
        self.ops.tick(n as u64);
        if pending.len() as f64 <= self.params.threshold_init {
            return Ok(());
        }
        let class = (1..=self.z)
            .find(|&c| self.class_unmatched[c] as f64 <= self.params.index_bound)
            .ok_or_else(|| Error::Assertion("no matching class below the index bound".into()))?;
        self.stats.repairs += 1;

        let mut prior: BTreeMap<VertexId, bool> = BTreeMap::new();
        let mut leftover: Vec<VertexId> = Vec::new();
        for v in pending {
            if self.m1[v].is_some() {
                continue;
            }
            let mut path = vec![v];
            let mut cur = v;
            let mut use_class = true;
            loop {
                self.ops.tick(1);
                let next = if use_class { self.class_mates[class].get(&cur).copied() } else { self.m1[cur] };
                match next {
                    Some(w) if path.len() <= n => {
                        path.push(w);
                        cur = w;
                        use_class = !use_class;
                    }
                    _ => break,
                }
            }
            if path.len() == 1 {
                continue;
            }
            let end = *path.last().unwrap();
            // edge j of the path is an M_1 edge exactly when j is odd
            let last_in_m1 = (path.len() - 2) % 2 == 1;
            if last_in_m1 && self.sys.in_s(end) {
                continue;
            }
            for &x in &path {
                prior.entry(x).or_insert(self.mate[x].is_some());
            }
            for j in (1..path.len() - 1).step_by(2) {
                let (a, b) = (path[j], path[j + 1]);
                self.unpair(a, b);
            }
            for j in (0..path.len() - 1).step_by(2) {
                let (a, b) = (path[j], path[j + 1]);
                for x in [a, b] {
                    if let Some(y) = self.mate[x] {
                        prior.entry(y).or_insert(true);
                        self.unpair(x, y);
                        leftover.push(y);
                    }
                }
                self.pair(a, b);
                self.m1_set(a, b);
            }
            if last_in_m1 {
                leftover.push(end);
            }
        }
        for (&x, &was_matched) in &prior {
            if self.mate[x].is_some() != was_matched {
                self.proc_update(x);
            }
        }
        leftover.sort_unstable();
        leftover.dedup();
        for x in leftover {
            if self.mate[x].is_none() {
                self.rematch(x);
            }
        }
        if self.m1_unmatched as f64 > self.params.threshold_init {
            self.stats.r_init_breaches += 1;
        }
        Ok(())
    }
}
