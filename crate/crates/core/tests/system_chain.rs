use std::collections::HashSet;

use dynmatch::harness::{gnp, Rng};
use dynmatch::system::{build_basic, refine, validate_system};
use dynmatch::{DynGraph, Edge};

fn sample_edges(g: &DynGraph, count: usize, rng: &mut Rng) -> Vec<Edge> {
    let mut all: Vec<Edge> = g.edges().collect();
    rng.shuffle(&mut all);
    all.truncate(count);
    all
}

fn sample_non_edges(g: &DynGraph, count: usize, rng: &mut Rng) -> Vec<Edge> {
    let n = g.n();
    let mut out = HashSet::new();
    let mut tries = 0;
    while out.len() < count && tries < 100 * count + 100 {
        tries += 1;
        let (a, b) = (rng.below(n), rng.below(n));
        if a != b && !g.has_edge(a, b) {
            out.insert(Edge::new(a, b));
        }
    }
    let mut v: Vec<_> = out.into_iter().collect();
    v.sort();
    v
}

#[test]
fn basic_systems_validate_on_random_graphs() {
    let mut rng = Rng::new(11);
    for &n in &[20, 60, 120] {
        for &p in &[0.05, 0.3, 0.8] {
            let g = gnp(n, p, &mut rng);
            for z in [1, 2, 4, 8] {
                let sys = build_basic(&g, z).unwrap();
                if let Err(v) = validate_system(&g, &sys) {
                    panic!("n={} p={} z={}: {:?}", n, p, z, &v[..v.len().min(5)]);
                }
            }
        }
    }
}

#[test]
fn refine_chain_validates() {
    let mut rng = Rng::new(5);
    for trial in 0..6 {
        let n = 128;
        let g = gnp(n, 0.3 + 0.1 * trial as f64, &mut rng);
        let mut sys = build_basic(&g, 32).unwrap();
        let mut graph = g;
        for z_new in [16, 8, 4, 2] {
            let e_d = sample_edges(&graph, 80, &mut rng);
            let e_i = sample_non_edges(&graph, 40, &mut rng);
            let z_old = sys.z();
            let r = refine(graph.clone(), sys.clone(), &e_d, &e_i, z_new).unwrap();
            if let Err(v) = validate_system(&r.graph, &r.sys) {
                panic!("trial {} z'={}: {:?}", trial, z_new, &v[..v.len().min(5)]);
            }
            assert!(r.deferred.len() * z_old <= e_d.len() * z_new);
            graph = r.graph;
            sys = r.sys;
        }
    }
}
