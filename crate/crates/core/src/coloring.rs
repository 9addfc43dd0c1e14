//! Misra–Gries proper edge coloring with at most Δ+1 colors.
//!
//! Deterministic: edges are processed in canonical order and free colors are
//! taken lowest-first. A fan is grown one vertex at a time by following the
//! lowest free color of its last vertex.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, VertexId};
use crate::ops::OpCounter;

/// Color assignment over an edge set. Colors are `0..num_colors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: HashMap<Edge, usize>,
    num_colors: usize,
}

impl EdgeColoring {
    pub fn color(&self, e: Edge) -> Option<usize> {
        self.colors.get(&e).copied()
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Edges sorted canonically together with their colors.
    pub fn sorted(&self) -> Vec<(Edge, usize)> {
        let mut out: Vec<_> = self.colors.iter().map(|(&e, &c)| (e, c)).collect();
        out.sort_unstable();
        out
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.num_colors];
        for &c in self.colors.values() {
            seen[c] = true;
        }
        seen.into_iter().filter(|&b| b).count()
    }

    /// True if no two edges sharing an endpoint have the same color.
    pub fn is_proper(&self) -> bool {
        let mut used: HashMap<(VertexId, usize), ()> = HashMap::new();
        for (e, &c) in &self.colors {
            if used.insert((e.u, c), ()).is_some() || used.insert((e.v, c), ()).is_some() {
                return false;
            }
        }
        true
    }
}

struct Mg {
    // at[v][c] = the neighbor reached from v by the edge colored c
    at: Vec<Vec<Option<VertexId>>>,
    // used[v]: bitmask of the colors present at v
    used: Vec<Vec<u64>>,
    colors: HashMap<Edge, usize>,
    nc: usize,
    ops: OpCounter,
}

impl Mg {
    fn first_free(&self, v: VertexId) -> usize {
        let (w, word) = self.used[v]
            .iter()
            .enumerate()
            .find(|(_, &x)| x != u64::MAX)
            .expect("Δ+1 colors leave one free");
        self.ops.tick(w as u64 + 1);
        w * 64 + word.trailing_ones() as usize
    }

    fn is_free(&self, v: VertexId, c: usize) -> bool {
        self.at[v][c].is_none()
    }

    fn set(&mut self, a: VertexId, b: VertexId, c: usize) {
        debug_assert!(self.at[a][c].is_none() && self.at[b][c].is_none());
        self.at[a][c] = Some(b);
        self.at[b][c] = Some(a);
        self.used[a][c / 64] |= 1 << (c % 64);
        self.used[b][c / 64] |= 1 << (c % 64);
        self.colors.insert(Edge::new(a, b), c);
    }

    fn unset(&mut self, a: VertexId, b: VertexId) -> Option<usize> {
        let c = self.colors.remove(&Edge::new(a, b))?;
        self.at[a][c] = None;
        self.at[b][c] = None;
        self.used[a][c / 64] &= !(1 << (c % 64));
        self.used[b][c / 64] &= !(1 << (c % 64));
        Some(c)
    }

    fn invert_path(&mut self, start: VertexId, c: usize, d: usize) {
        if c == d {
            return;
        }
        let mut path = Vec::new();
        let mut x = start;
        let mut want = d;
        while let Some(y) = self.at[x][want] {
            path.push((x, y, want));
            x = y;
            want = if want == d { c } else { d };
            self.ops.tick(1);
        }
        for &(a, b, _) in &path {
            self.unset(a, b);
        }
        for &(a, b, col) in &path {
            self.set(a, b, if col == d { c } else { d });
        }
    }
}

/// Colors `edges` (a simple edge set on vertices `0..n`) with at most Δ+1 colors.
pub fn color_edges(n: usize, edges: &[Edge]) -> Result<EdgeColoring> {
    color_edges_counted(n, edges, &OpCounter::new())
}

pub fn color_edges_counted(n: usize, edges: &[Edge], ops: &OpCounter) -> Result<EdgeColoring> {
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for e in edges {
        if e.u == e.v {
            return Err(Error::SelfLoop(e.u));
        }
        if e.v >= n {
            return Err(Error::VertexOutOfRange { v: e.v, n });
        }
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    for list in &mut adj {
        list.sort_unstable();
        if list.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("edge set contains a duplicate".into()));
        }
    }
    let delta = adj.iter().map(Vec::len).max().unwrap_or(0);
    let nc = delta + 1;
    let words = nc.div_ceil(64);
    let mut tail = vec![0u64; words];
    if nc % 64 != 0 {
        tail[words - 1] = !0u64 << (nc % 64);
    }
    let mut mg = Mg {
        at: vec![vec![None; nc]; n],
        used: vec![tail; n],
        colors: HashMap::with_capacity(edges.len()),
        nc,
        ops: ops.clone(),
    };
    let mut order: Vec<Edge> = edges.to_vec();
    order.sort_unstable();
    let mut in_fan = vec![false; n];

    for e in order {
        let (u, v) = (e.u, e.v);
        let mut fan = vec![v];
        in_fan[v] = true;
        loop {
            let f = mg.first_free(*fan.last().unwrap());
            match mg.at[u][f] {
                Some(x) if !in_fan[x] => {
                    in_fan[x] = true;
                    fan.push(x);
                }
                _ => break,
            }
        }
        for &x in &fan {
            in_fan[x] = false;
        }

        let c = mg.first_free(u);
        let d = mg.first_free(*fan.last().unwrap());
        mg.invert_path(u, c, d);

        let w = fan
            .iter()
            .position(|&x| mg.is_free(x, d))
            .ok_or_else(|| Error::Assertion("no fan vertex with the inverted color free".into()))?;
        ops.tick(w as u64 + 1);
        for i in 0..w {
            let col = mg.unset(u, fan[i + 1]).expect("fan edge is colored");
            mg.set(u, fan[i], col);
        }
        mg.set(u, fan[w], d);
    }
    Ok(EdgeColoring { colors: mg.colors, num_colors: mg.nc })
}

/// Splits a coloring into exactly `classes` matchings, padding with empty ones.
pub fn matchings_from_coloring(col: &EdgeColoring, classes: usize) -> Result<Vec<Vec<Edge>>> {
    let mut out = vec![Vec::new(); classes];
    for (e, c) in col.sorted() {
        if c >= classes {
            return Err(Error::InvalidParameter(format!(
                "color {} does not fit into {} classes",
                c, classes
            )));
        }
        out[c].push(e);
    }
    Ok(out)
}

/// For each matching, the number of marked vertices it leaves unmatched.
pub fn unmatched_marked(classes: &[Vec<Edge>], marked: &[bool]) -> Vec<usize> {
    let total = marked.iter().filter(|&&b| b).count();
    classes
        .iter()
        .map(|cls| {
            let covered: usize = cls.iter().map(|e| marked[e.u] as usize + marked[e.v] as usize).sum();
            total - covered
        })
        .collect()
}

/// Upper bound `|S|(log₂n + 1)/(z + 1)` on the best class's unmatched count.
pub fn claim_bound(s_size: usize, n: usize, z: usize) -> f64 {
    s_size as f64 * ((n as f64).log2() + 1.0) / (z as f64 + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Vec<Edge> {
        (0..n).map(|i| Edge::new(i, (i + 1) % n)).collect()
    }

    #[test]
    fn odd_cycle_needs_three() {
        let col = color_edges(5, &cycle(5)).unwrap();
        assert!(col.is_proper());
        assert_eq!(col.colors_used(), 3);
    }

    #[test]
    fn star_uses_delta_colors() {
        let es: Vec<_> = (1..6).map(|i| Edge::new(0, i)).collect();
        let col = color_edges(6, &es).unwrap();
        assert!(col.is_proper());
        assert_eq!(col.colors_used(), 5);
    }

    #[test]
    fn complete_graph_within_bound() {
        let mut es = Vec::new();
        for a in 0..7 {
            for b in a + 1..7 {
                es.push(Edge::new(a, b));
            }
        }
        let col = color_edges(7, &es).unwrap();
        assert!(col.is_proper());
        assert!(col.colors_used() <= 7);
    }

    #[test]
    fn empty_edge_set() {
        let col = color_edges(3, &[]).unwrap();
        assert!(col.is_empty());
        assert_eq!(matchings_from_coloring(&col, 4).unwrap().len(), 4);
    }

    #[test]
    fn deterministic() {
        let es = cycle(9);
        assert_eq!(color_edges(9, &es).unwrap().sorted(), color_edges(9, &es).unwrap().sorted());
    }

    #[test]
    fn padding_rejects_overflow() {
        let col = color_edges(3, &cycle(3)).unwrap();
        assert!(matchings_from_coloring(&col, 2).is_err());
        let ms = matchings_from_coloring(&col, 5).unwrap();
        assert_eq!(ms.iter().map(Vec::len).sum::<usize>(), 3);
    }
}
