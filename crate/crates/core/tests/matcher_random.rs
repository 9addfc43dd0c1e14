use dynmatch::engine::MatchingEngine;
use dynmatch::harness::{gnp, Rng};
use dynmatch::matcher::{MatcherState, Profile};
use dynmatch::oracle::check_matching;
use dynmatch::system::{build_basic, refine};
use dynmatch::{DynGraph, Edge, UpdateEvent};

fn random_update(live: &DynGraph, rng: &mut Rng, p_insert: f64) -> Option<UpdateEvent> {
    let n = live.n();
    if rng.chance(p_insert) || live.m() == 0 {
        for _ in 0..50 {
            let (a, b) = (rng.below(n), rng.below(n));
            if a != b && !live.adjacency(a).contains(&b) {
                return Some(UpdateEvent::insert(a, b));
            }
        }
        None
    } else {
        let edges: Vec<Edge> = live.edges().collect();
        let e = edges[rng.below(edges.len())];
        Some(UpdateEvent::delete(e.u, e.v))
    }
}

fn drive(mut m: MatcherState, mut live: DynGraph, steps: usize, p_insert: f64, rng: &mut Rng) {
    check_matching(&live, &m.matching()).unwrap();
    m.check_invariants().unwrap();
    for step in 0..steps {
        let Some(ev) = random_update(&live, rng, p_insert) else { continue };
        live.apply(ev).unwrap();
        m.apply(ev).unwrap();
        if let Err(v) = check_matching(&live, &m.matching()) {
            panic!("step {}: {}", step, v);
        }
        if let Err(s) = m.check_invariants() {
            panic!("step {}: {}", step, s);
        }
    }
}

#[test]
fn basic_system_matcher_survives_random_traffic() {
    let mut rng = Rng::new(9);
    for trial in 0..12 {
        let n = 32 + 8 * trial;
        let g = gnp(n, 0.25, &mut rng);
        let z = 1 + trial % 6;
        let sys = build_basic(&g, z).unwrap();
        let m = MatcherState::attach(g.clone(), sys, Profile::MultiLevel).unwrap();
        drive(m, g, n, 0.4, &mut rng);
    }
}

#[test]
fn decremental_profile_handles_deletions() {
    let mut rng = Rng::new(10);
    for _ in 0..5 {
        let g = gnp(48, 0.3, &mut rng);
        let sys = build_basic(&g, 4).unwrap();
        let m = MatcherState::attach(g.clone(), sys, Profile::BasicDecremental { r: 200 }).unwrap();
        drive(m, g, 150, 0.0, &mut rng);
    }
}

#[test]
fn multilevel_matcher_survives_random_traffic() {
    let mut rng = Rng::new(12);
    for trial in 0..6 {
        let n = 128;
        let g = gnp(n, 0.3, &mut rng);
        let mut sys = build_basic(&g, 16).unwrap();
        let mut graph = g.clone();
        for z_new in [8, 4, 2].iter().take(1 + trial % 3) {
            let r = refine(graph, sys, &[], &[], *z_new).unwrap();
            graph = r.graph;
            sys = r.sys;
        }
        let m = MatcherState::attach(graph.clone(), sys, Profile::MultiLevel).unwrap();
        drive(m, graph, n, 0.5, &mut rng);
    }
}

#[test]
fn forced_repairs_keep_the_matching_valid() {
    use dynmatch::matcher::MatcherParams;
    let mut rng = Rng::new(13);
    let mut repairs = 0;
    for trial in 0..10 {
        let n = 64;
        let g = gnp(n, 0.2 + 0.05 * trial as f64, &mut rng);
        let sys = build_basic(&g, 4).unwrap();
        let params = MatcherParams {
            phase_len: 3,
            threshold_init: 0.0,
            threshold_run: f64::INFINITY,
            index_bound: f64::INFINITY,
            scan_len: usize::MAX,
        };
        let m = MatcherState::attach_with_params(g.clone(), sys, Profile::MultiLevel, params).unwrap();
        let mut live = g;
        let mut m = m;
        for step in 0..200 {
            let Some(ev) = random_update(&live, &mut rng, 0.3) else { continue };
            live.apply(ev).unwrap();
            m.apply(ev).unwrap();
            if let Err(v) = check_matching(&live, &m.matching()) {
                panic!("trial {} step {}: {}", trial, step, v);
            }
            if let Err(s) = m.check_invariants() {
                panic!("trial {} step {}: {}", trial, step, s);
            }
        }
        repairs += m.stats().repairs;
    }
    assert!(repairs > 0);
}
