//! Benchmarks for the hot paths: the polynomial decider, the centered
//! shortest-paths search on clause graphs, spanning-tree enumeration and
//! edge-swap normalization.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use treespan::graph::Graph;
use treespan::{
    brute_force_spanner, build_f, counterexample_odd, decide_tree3_diam4, enumerate_spanning_trees,
    normalize_shortest_paths, sps_tree_search, tree_from_assignment, Center, Clause, CnfInstance,
    Literal, SearchBudget, SpanningTree,
};

fn single_clause() -> CnfInstance {
    CnfInstance::new(vec![Clause::new([
        Literal::positive("x1"),
        Literal::positive("x2"),
        Literal::negative("x3"),
    ])
    .unwrap()])
}

fn two_clauses() -> CnfInstance {
    CnfInstance::new(vec![
        Clause::new([
            Literal::positive("x1"),
            Literal::positive("x2"),
            Literal::negative("x3"),
        ])
        .unwrap(),
        Clause::new([
            Literal::negative("x1"),
            Literal::positive("x2"),
            Literal::positive("x3"),
        ])
        .unwrap(),
    ])
}

fn complete_graph(n: usize) -> Arc<Graph> {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((labels[i].clone(), labels[j].clone()));
        }
    }
    Arc::new(Graph::from_edges(edges).unwrap())
}

fn detour_tree() -> (Arc<Graph>, SpanningTree, Center) {
    // a wheel: keeping only the even spokes leaves every odd rim vertex
    // one step farther from the hub than it needs to be, so the
    // normalization performs four swaps
    let hub = "hub".to_string();
    let ring: Vec<String> = (0..8).map(|i| format!("r{i}")).collect();
    let mut edges: Vec<(String, String)> = ring.iter().map(|r| (hub.clone(), r.clone())).collect();
    for i in 0..8 {
        edges.push((ring[i].clone(), ring[(i + 1) % 8].clone()));
    }
    let g = Arc::new(Graph::from_edges(edges).unwrap());
    let mut tree_edges = Vec::new();
    for i in (0..8).step_by(2) {
        tree_edges.push((hub.clone(), ring[i].clone()));
        tree_edges.push((ring[i].clone(), ring[i + 1].clone()));
    }
    let tree = SpanningTree::from_edges(Arc::clone(&g), &hub, &tree_edges).unwrap();
    (g, tree, Center::single(hub))
}

fn bench_decide3d4(c: &mut Criterion) {
    let (g, _, _) = counterexample_odd(9).unwrap();
    c.bench_function("decide3d4/odd-family-t9", |b| {
        b.iter(|| decide_tree3_diam4(black_box(&g)).unwrap())
    });
    let k = complete_graph(40);
    c.bench_function("decide3d4/k40", |b| {
        b.iter(|| decide_tree3_diam4(black_box(&k)).unwrap())
    });
}

fn bench_sps_search(c: &mut Criterion) {
    let budget = SearchBudget::default();
    let k = Center::pair("u", "v").unwrap();
    let f1 = build_f(&single_clause()).unwrap();
    c.bench_function("sps/clause-graph-1", |b| {
        b.iter(|| {
            sps_tree_search(black_box(f1.graph()), &k, 4, &budget)
                .unwrap()
                .unwrap()
        })
    });
    let f2 = build_f(&two_clauses()).unwrap();
    c.bench_function("sps/clause-graph-2", |b| {
        b.iter(|| {
            sps_tree_search(black_box(f2.graph()), &k, 4, &budget)
                .unwrap()
                .unwrap()
        })
    });
}

fn bench_enumeration(c: &mut Criterion) {
    let budget = SearchBudget::default();
    let g = complete_graph(6);
    c.bench_function("enumerate/k6", |b| {
        b.iter(|| enumerate_spanning_trees(black_box(&g), &budget).unwrap().len())
    });
    let (odd, _, _) = counterexample_odd(3).unwrap();
    c.bench_function("brute-spanner/odd-family-t3", |b| {
        b.iter(|| {
            brute_force_spanner(black_box(&odd), 3, Some(4), &budget)
                .unwrap()
                .is_none()
        })
    });
}

fn bench_normalize(c: &mut Criterion) {
    let (g, tree, k) = detour_tree();
    c.bench_function("normalize/wheel-detour", |b| {
        b.iter(|| normalize_shortest_paths(black_box(&g), &tree, 3, &k).unwrap())
    });
    let f = build_f(&single_clause()).unwrap();
    let assignment = treespan::brute_force_sat(&single_clause()).unwrap().unwrap();
    c.bench_function("tree-from-assignment/clause-graph-1", |b| {
        b.iter(|| tree_from_assignment(black_box(&f), &assignment).unwrap())
    });
}

criterion_group!(
    benches,
    bench_decide3d4,
    bench_sps_search,
    bench_enumeration,
    bench_normalize
);
criterion_main!(benches);
