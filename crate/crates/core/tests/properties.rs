use std::collections::BTreeSet;

use proptest::prelude::*;

use dynmatch::bootstrap::BootState;
use dynmatch::coloring::color_edges;
use dynmatch::engine::MatchingEngine;
use dynmatch::harness::{read_sequence, write_sequence, RunReport};
use dynmatch::matcher::{MatcherState, Profile};
use dynmatch::oracle::{check_matching, NaiveEngine};
use dynmatch::scheduler::{ladder_params, Engine, LadderParams};
use dynmatch::system::{build_basic, refine, validate_system};
use dynmatch::{DynGraph, Edge, UpdateEvent, UpdateKind};

fn graph_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = DynGraph> {
    (min_n..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..4 * n).prop_map(move |pairs| {
            let mut g = DynGraph::new(n).unwrap();
            for (a, b) in pairs {
                if a != b && !g.has_edge(a, b) {
                    g.insert_edge(a, b).unwrap();
                }
            }
            g
        })
    })
}

/// Turns raw picks into a valid update sequence: each pick either toggles
/// the chosen pair or, if `ins` is false and the graph has edges, deletes one.
fn sequence(n: usize, picks: &[(usize, usize, bool)]) -> Vec<UpdateEvent> {
    let mut g = DynGraph::new(n).unwrap();
    let mut out = Vec::new();
    for &(a, b, ins) in picks {
        let (a, b) = (a % n, b % n);
        let ev = if a != b && !g.adjacency(a).contains(&b) && ins {
            UpdateEvent::insert(a, b)
        } else if let Some(e) = g.edges().nth((a * n + b) % g.m().max(1)) {
            UpdateEvent::delete(e.u, e.v)
        } else if a != b {
            UpdateEvent::insert(a, b)
        } else {
            continue;
        };
        g.apply(ev).unwrap();
        out.push(ev);
    }
    out
}

fn seq_strategy(max_n: usize, max_len: usize) -> impl Strategy<Value = (usize, Vec<UpdateEvent>)> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n, prop::bool::weighted(0.6)), 0..max_len)
            .prop_map(move |picks| (n, sequence(n, &picks)))
    })
}

fn pow2(lo: u32, hi: u32) -> impl Strategy<Value = usize> {
    (lo..=hi).prop_map(|e| 1usize << e)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edges_are_canonical(a in 0usize..1000, b in 0usize..1000) {
        prop_assume!(a != b);
        let e = Edge::new(a, b);
        prop_assert!(e.u < e.v);
        prop_assert_eq!(e, Edge::new(b, a));
        prop_assert_eq!(e.other(a), b);
    }

    #[test]
    fn graph_tracks_a_set_model((n, evs) in seq_strategy(24, 120)) {
        let mut g = DynGraph::new(n).unwrap();
        let mut model = BTreeSet::new();
        for ev in evs {
            g.apply(ev).unwrap();
            match ev.kind {
                UpdateKind::Insert => prop_assert!(model.insert(ev.edge)),
                UpdateKind::Delete => prop_assert!(model.remove(&ev.edge)),
            }
        }
        prop_assert_eq!(g.m(), model.len());
        prop_assert_eq!(g.edges().collect::<BTreeSet<_>>(), model);
        for v in 0..n {
            for w in g.adjacency(v) {
                prop_assert!(g.adjacency(*w).contains(&v));
            }
        }
    }

    #[test]
    fn coloring_is_proper_with_delta_plus_one(g in graph_strategy(2, 40)) {
        let edges: Vec<Edge> = g.edges().collect();
        let col = color_edges(g.n(), &edges).unwrap();
        prop_assert_eq!(col.len(), edges.len());
        prop_assert!(col.is_proper());
        prop_assert!(col.num_colors() <= g.max_degree() + 1);
    }

    #[test]
    fn basic_system_is_valid(g in graph_strategy(2, 40), z in 1usize..10) {
        let sys = build_basic(&g, z).unwrap();
        if let Err(v) = validate_system(&g, &sys) {
            return Err(TestCaseError::fail(format!("{:?}", v)));
        }
    }

    #[test]
    fn one_refinement_is_valid(g in graph_strategy(8, 48), zexp in 2u32..4, del in 0usize..40, seed in 0usize..1000) {
        let z = 1usize << zexp;
        let sys = build_basic(&g, z).unwrap();
        let edges: Vec<Edge> = g.edges().collect();
        let e_d: Vec<Edge> = edges.iter().copied().skip(seed % edges.len().max(1)).take(del).collect();
        let e_i: Vec<Edge> = (0..g.n())
            .flat_map(|a| (a + 1..g.n()).map(move |b| Edge::new(a, b)))
            .filter(|e| !g.has_edge(e.u, e.v))
            .skip(seed % 7)
            .step_by(5)
            .take(10)
            .collect();
        let r = refine(g.clone(), sys, &e_d, &e_i, z / 2).unwrap();
        if let Err(v) = validate_system(&r.graph, &r.sys) {
            return Err(TestCaseError::fail(format!("{:?}", v)));
        }
        prop_assert!(r.deferred.len() * z <= e_d.len() * (z / 2));
    }

    #[test]
    fn matcher_stays_maximal_and_consistent(g in graph_strategy(2, 32), z in 1usize..6, (_, picks) in seq_strategy(32, 80)) {
        let n = g.n();
        let sys = build_basic(&g, z).unwrap();
        let mut m = MatcherState::attach(g.clone(), sys, Profile::MultiLevel).unwrap();
        let mut live = g;
        for ev in picks {
            let (a, b) = (ev.edge.u % n, ev.edge.v % n);
            if a == b {
                continue;
            }
            let ev = if live.adjacency(a).contains(&b) { UpdateEvent::delete(a, b) } else { UpdateEvent::insert(a, b) };
            live.apply(ev).unwrap();
            m.apply(ev).unwrap();
            prop_assert!(check_matching(&live, &m.matching()).is_ok());
            if let Err(s) = m.check_invariants() {
                return Err(TestCaseError::fail(s));
            }
        }
    }

    #[test]
    fn engines_keep_a_maximal_matching((n, evs) in seq_strategy(40, 300)) {
        let mut full = Engine::new(n).unwrap();
        full.set_deep_check(true);
        let mut naive = NaiveEngine::new(n).unwrap();
        let mut live = DynGraph::new(n).unwrap();
        for ev in evs {
            live.apply(ev).unwrap();
            full.apply(ev).unwrap();
            naive.apply(ev).unwrap();
            prop_assert!(check_matching(&live, &full.matching()).is_ok());
            prop_assert!(check_matching(&live, &naive.matching()).is_ok());
        }
    }

    #[test]
    fn bootstrap_invariants_hold((n, evs) in seq_strategy(40, 40), t in 1usize..8) {
        let mut boot = BootState::new(n, t).unwrap();
        let mut live = DynGraph::new(n).unwrap();
        for ev in evs {
            live.apply(ev).unwrap();
            boot.apply(ev).unwrap();
            prop_assert!(check_matching(&live, &boot.matching()).is_ok());
            if let Err(s) = boot.check_invariants() {
                return Err(TestCaseError::fail(s));
            }
        }
    }

    #[test]
    fn sequence_file_round_trips((n, evs) in seq_strategy(50, 100)) {
        let mut buf = Vec::new();
        write_sequence(&mut buf, n, &evs).unwrap();
        let (n2, evs2) = read_sequence(&buf[..]).unwrap();
        prop_assert_eq!(n2, n);
        prop_assert_eq!(evs2, evs);
    }

    #[test]
    fn report_json_round_trips(
        n in 0usize..1 << 20,
        updates in 0usize..1 << 30,
        ops in 0u64..1 << 50,
        verified: bool,
        ns in 0u64..1 << 60,
    ) {
        let r = RunReport {
            n,
            updates_applied: updates,
            engine: "full".into(),
            verify_mode: "each".into(),
            verified,
            final_matching_size: n / 2,
            elementary_ops_total: ops,
            elementary_ops_per_update: if updates == 0 { 0.0 } else { ops as f64 / updates as f64 },
            wall_time_ns: ns,
        };
        prop_assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn ladder_identities(n in pow2(2, 16), frac in 0.0f64..1.0) {
        // dense phases only start above n^{3/2} edges
        let max_m = n * (n - 1) / 2;
        let min_m = (n as f64).powf(1.5).floor() as usize + 1;
        prop_assume!(min_m <= max_m);
        let m = min_m + ((max_m - min_m) as f64 * frac) as usize;
        let p = ladder_params(n, m).unwrap();
        let nf = n as f64;
        prop_assert!(p.d <= p.z[0] as f64 && (p.z[0] as f64) < 2.0 * p.d);
        prop_assert!(nf.sqrt() <= p.eta as f64 && (p.eta as f64) < 2.0 * nf.sqrt());
        prop_assert!(p.z.iter().all(|z| z.is_power_of_two()));
        prop_assert!(p.z.windows(2).all(|w| w[0] == 2 * w[1]));
        prop_assert!(p.k() >= 1 && p.k() as f64 <= nf.log2());
        if p.k() > 1 {
            prop_assert!(*p.z.last().unwrap() as f64 >= LadderParams::z_floor(n));
        }
    }
}
