use std::collections::BTreeSet;
use std::fmt;

use super::{MultiLevelSystem, VertexClass};
use crate::graph::{DynGraph, Edge, VertexId};

/// One failed property of a subgraph system, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemViolation {
    Shape(String),
    EdgeNotInGraph(Edge),
    DegreeAboveZ { v: VertexId, m: usize },
    EdgeInsideU(Edge),
    DegreeBelowFloor { v: VertexId, m: usize, floor: i64 },
    TooManyUNeighbors { u: VertexId, count: usize },
    TooManyBNeighbors { u: VertexId, count: usize },
    ALevelNeighbor { v: VertexId, level: usize, w: VertexId },
    NOutsideUpper { level: usize, v: VertexId },
    RNotNested { level: usize, v: VertexId },
    LambdaMismatch { u: VertexId },
    LambdaTooLong { u: VertexId, len: usize },
    LMismatch { v: VertexId },
    ZMismatch { v: VertexId },
}

impl fmt::Display for SystemViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Recomputes every structural property of `sys` against `g`.
pub fn validate_system(g: &DynGraph, sys: &MultiLevelSystem) -> Result<(), Vec<SystemViolation>> {
    let mut out = Vec::new();
    let n = sys.n();
    let (k, z) = (sys.k, sys.z);
    if g.n() != n {
        return Err(vec![SystemViolation::Shape(format!("graph has {} vertices, system {}", g.n(), n))]);
    }
    if k == 0 || sys.frozen_n.len() != k - 1 {
        return Err(vec![SystemViolation::Shape(format!("level count {} inconsistent", k))]);
    }
    for v in 0..n {
        if let VertexClass::A(i) = sys.class[v] {
            if i == 0 || i > k {
                out.push(SystemViolation::Shape(format!("vertex {} at level {}", v, i)));
            }
        }
    }
    if !out.is_empty() {
        return Err(out);
    }

    let mut m_count = 0;
    for v in 0..n {
        for &w in &sys.m_adj[v] {
            if !sys.m_adj[w].contains(&v) {
                out.push(SystemViolation::Shape(format!("M adjacency of {} and {} asymmetric", v, w)));
            }
            if v < w {
                m_count += 1;
                let e = Edge::new(v, w);
                if !g.adjacency(v).contains(&w) {
                    out.push(SystemViolation::EdgeNotInGraph(e));
                }
                if sys.in_u(v) && sys.in_u(w) {
                    out.push(SystemViolation::EdgeInsideU(e));
                }
            }
        }
        let m = sys.m_adj[v].len();
        if m > z {
            out.push(SystemViolation::DegreeAboveZ { v, m });
        }
        let floor = z as i64 - k as i64 + 1;
        if sys.in_s(v) && (m as i64) < floor {
            out.push(SystemViolation::DegreeBelowFloor { v, m, floor });
        }
    }
    if m_count != sys.m_edges {
        out.push(SystemViolation::Shape(format!("edge counter {} but {} edges", sys.m_edges, m_count)));
    }

    for u in 0..n {
        if !sys.in_u(u) {
            continue;
        }
        let nb = g.adjacency(u);
        let in_u = nb.iter().filter(|&&w| sys.in_u(w)).count();
        let in_b = nb.iter().filter(|&&w| sys.in_b(w)).count();
        if in_u > z {
            out.push(SystemViolation::TooManyUNeighbors { u, count: in_u });
        }
        if in_b > 2 * z {
            out.push(SystemViolation::TooManyBNeighbors { u, count: in_b });
        }
    }

    for v in 0..n {
        if let VertexClass::A(i) = sys.class[v] {
            for &w in &sys.m_adj[v] {
                if !(sys.in_n(i, w) || sys.in_a_upto(i, w)) {
                    out.push(SystemViolation::ALevelNeighbor { v, level: i, w });
                }
            }
        }
    }

    for i in 1..=k {
        for v in 0..n {
            if sys.in_n(i, v) {
                let upper = match sys.class[v] {
                    VertexClass::A(j) => j > i,
                    VertexClass::B => true,
                    VertexClass::U => false,
                };
                if !upper {
                    out.push(SystemViolation::NOutsideUpper { level: i, v });
                }
            }
            // R_k = U, R_{i+1} ⊆ R_i
            let nested = if i == k { sys.in_r(k, v) == sys.in_u(v) } else { !sys.in_r(i + 1, v) || sys.in_r(i, v) };
            if !nested {
                out.push(SystemViolation::RNotNested { level: i, v });
            }
        }
    }

    for v in 0..n {
        let nb = g.adjacency(v);
        match sys.class[v] {
            VertexClass::U => {
                let want: BTreeSet<_> = nb.iter().copied().filter(|&w| !matches!(sys.class[w], VertexClass::A(_))).collect();
                if sys.lambda[v] != want {
                    out.push(SystemViolation::LambdaMismatch { u: v });
                }
                if sys.lambda[v].len() > 3 * z {
                    out.push(SystemViolation::LambdaTooLong { u: v, len: sys.lambda[v].len() });
                }
                if !sys.l_list[v].is_empty() {
                    out.push(SystemViolation::LMismatch { v });
                }
            }
            VertexClass::A(i) => {
                let want: BTreeSet<_> = nb.iter().copied().filter(|&w| sys.in_r(i, w)).collect();
                if sys.l_list[v] != want {
                    out.push(SystemViolation::LMismatch { v });
                }
                if !sys.lambda[v].is_empty() {
                    out.push(SystemViolation::LambdaMismatch { u: v });
                }
            }
            VertexClass::B => {
                if !sys.lambda[v].is_empty() {
                    out.push(SystemViolation::LambdaMismatch { u: v });
                }
                if !sys.l_list[v].is_empty() {
                    out.push(SystemViolation::LMismatch { v });
                }
            }
        }
        let want_z: BTreeSet<_> = if sys.in_b(v) {
            sys.m_adj[v].iter().copied().filter(|&w| sys.in_u(w)).collect()
        } else {
            BTreeSet::new()
        };
        if sys.zset[v] != want_z {
            out.push(SystemViolation::ZMismatch { v });
        }
    }

    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}
