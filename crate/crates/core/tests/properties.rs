//! Property tests for the structural invariants: tree distances dominate
//! graph distances, component splits are clean partitions, BFS trees from
//! centers preserve center distances, the midst separation statement, and
//! canonical round-trips of every text format.

use std::ops::ControlFlow;
use std::sync::Arc;

use proptest::prelude::*;

use treespan::graph::Graph;
use treespan::io;
use treespan::{
    bfs_tree_from_center, check_midst_separation, find_t_centers, is_t_star, is_tree_t_spanner,
    t_midsts, Center, SpanningTree,
};

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i:02}")).collect()
}

fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
    let ls = labels(n);
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask[k] {
                edges.push((ls[i].clone(), ls[j].clone()));
            }
            k += 1;
        }
    }
    Graph::from_parts(ls, edges).expect("generated labels are valid")
}

/// Any graph on up to `max_n` vertices, possibly disconnected.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2)
            .prop_map(move |mask| graph_from_mask(n, &mask))
    })
}

fn arb_connected_graph(max_n: usize) -> impl Strategy<Value = Arc<Graph>> {
    arb_graph(max_n).prop_filter_map("connected", |g| {
        if g.is_connected() {
            Some(Arc::new(g))
        } else {
            None
        }
    })
}

/// A uniform-ish random spanning tree: Kruskal over a shuffled edge list.
fn seeded_spanning_tree(g: &Arc<Graph>, seed: u64) -> SpanningTree {
    let mut edges: Vec<(String, String)> = g
        .edges()
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for i in (1..edges.len()).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        edges.swap(i, j);
    }
    let index: std::collections::BTreeMap<&str, usize> = g
        .vertices()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut chosen = Vec::new();
    for (a, b) in edges {
        let (ra, rb) = (
            find(&mut parent, index[a.as_str()]),
            find(&mut parent, index[b.as_str()]),
        );
        if ra != rb {
            parent[ra] = rb;
            chosen.push((a, b));
        }
    }
    let root = g.vertices().next().expect("non-empty").to_string();
    SpanningTree::from_edges(Arc::clone(g), &root, &chosen).expect("Kruskal yields a spanning tree")
}

fn arb_graph_and_tree(max_n: usize) -> impl Strategy<Value = (Arc<Graph>, SpanningTree)> {
    (arb_connected_graph(max_n), any::<u64>())
        .prop_map(|(g, seed)| (Arc::clone(&g), seeded_spanning_tree(&g, seed)))
}

proptest! {
    #[test]
    fn tree_distance_dominates_graph_distance((g, tree) in arb_graph_and_tree(8)) {
        let vs: Vec<&str> = g.vertices().collect();
        for &x in &vs {
            let d = g.distances_from(&[x]).unwrap();
            for &y in &vs {
                prop_assert!(tree.distance(x, y).unwrap() >= d[y]);
            }
        }
    }

    #[test]
    fn components_form_a_clean_partition(g in arb_graph(8), removal_mask in proptest::collection::vec(any::<bool>(), 8)) {
        let removed: Vec<String> = g
            .vertices()
            .enumerate()
            .filter(|(i, _)| removal_mask[*i])
            .map(|(_, v)| v.to_string())
            .collect();
        let comps = g.components_without(&removed).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for comp in &comps {
            for v in comp {
                prop_assert!(!removed.contains(v));
                prop_assert!(seen.insert(v.clone()), "vertex {v} appears twice");
            }
        }
        prop_assert_eq!(seen.len() + removed.len(), g.vertex_count());
        for (i, c1) in comps.iter().enumerate() {
            for c2 in comps.iter().skip(i + 1) {
                for x in c1 {
                    for y in c2 {
                        prop_assert!(!g.has_edge(x, y), "components {x}-{y} touch");
                    }
                }
            }
        }
    }

    #[test]
    fn bfs_tree_preserves_center_distances(g in arb_connected_graph(8), pick in any::<u64>()) {
        // a random vertex center, and a random adjacent pair when one exists
        let vs: Vec<String> = g.vertices().map(str::to_string).collect();
        let mut centers = vec![Center::single(vs[pick as usize % vs.len()].clone())];
        let edges = g.edges();
        if !edges.is_empty() {
            let (a, b) = edges[(pick >> 8) as usize % edges.len()];
            centers.push(Center::pair(a, b).unwrap());
        }
        for k in centers {
            let tree = bfs_tree_from_center(&g, &k).unwrap();
            let sources: Vec<&str> = k.labels();
            let d = g.distances_from(&sources).unwrap();
            for v in g.vertices() {
                prop_assert_eq!(tree.distance_to_center(v, &k).unwrap(), d[v]);
            }
        }
    }

    #[test]
    fn bfs_tree_from_a_t_center_is_a_t_spanner(g in arb_connected_graph(7), t in 0u32..6) {
        for k in find_t_centers(&g, t).unwrap() {
            let tree = bfs_tree_from_center(&g, &k).unwrap();
            prop_assert!(tree.diameter() as u32 <= t);
            if t >= 1 {
                prop_assert!(is_tree_t_spanner(&g, &tree, t).unwrap());
            }
        }
    }

    #[test]
    fn t_star_is_upward_closed(g in arb_connected_graph(7), t in 0u32..5) {
        if is_t_star(&g, t).unwrap() {
            for bigger in t..t + 3 {
                prop_assert!(is_t_star(&g, bigger).unwrap());
            }
        }
    }

    #[test]
    fn midst_separation_holds_universally((g, tree) in arb_graph_and_tree(8)) {
        // the tree is a tree s-spanner for its own worst edge stretch s
        let worst = g
            .edges()
            .iter()
            .map(|(x, y)| tree.distance(x, y).unwrap())
            .max()
            .unwrap_or(1)
            .max(1) as u32;
        // walk a longest tree path
        let vs: Vec<&str> = g.vertices().collect();
        let mut ends = (vs[0], vs[0], 0usize);
        for &x in &vs {
            for &y in &vs {
                let d = tree.distance(x, y).unwrap();
                if d > ends.2 {
                    ends = (x, y, d);
                }
            }
        }
        let path = tree.path(ends.0, ends.1).unwrap();
        let len = path.len() - 1;
        for t in worst..=(len.max(1) as u32) {
            for midst in t_midsts(&path, t).unwrap() {
                prop_assert!(
                    check_midst_separation(&g, &tree, &path, &midst, t).unwrap(),
                    "separation failed for t={t} on path {path:?}"
                );
            }
        }
    }

    #[test]
    fn spanning_tree_enumeration_agrees_with_kirchhoff_on_cycles(n in 3usize..9) {
        // a cycle has exactly n spanning trees
        let ls = labels(n);
        let refs: Vec<&str> = ls.iter().map(String::as_str).collect();
        let g = Arc::new(treespan::graph::cycle_graph(&refs));
        let mut count = 0u64;
        treespan::for_each_spanning_tree(&g, &treespan::SearchBudget::default(), |_| {
            count += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        prop_assert_eq!(count, n as u64);
    }

    #[test]
    fn edge_list_round_trips(g in arb_graph(8)) {
        let text = io::emit_edge_list(&g);
        prop_assert_eq!(io::parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn json_round_trips(g in arb_graph(8)) {
        let text = io::emit_graph_json(&g);
        prop_assert_eq!(io::parse_graph_json(&text).unwrap(), g);
    }

    #[test]
    fn dot_round_trips(g in arb_graph(8)) {
        let text = io::emit_dot(&g, None);
        prop_assert_eq!(io::parse_dot(&text).unwrap(), g);
    }

    #[test]
    fn tree_format_round_trips((g, tree) in arb_graph_and_tree(8)) {
        let text = io::emit_tree(&tree);
        let back = io::parse_tree(&text, &g).unwrap();
        prop_assert_eq!(&back, &tree);
        let json = io::emit_tree_json(&tree);
        prop_assert_eq!(io::parse_tree_json(&json, &g).unwrap(), tree);
    }

    #[test]
    fn rerooting_never_changes_the_tree((g, tree) in arb_graph_and_tree(8), pick in any::<u64>()) {
        let vs: Vec<&str> = g.vertices().collect();
        let new_root = vs[pick as usize % vs.len()];
        let rerooted = tree.rerooted(new_root).unwrap();
        prop_assert_eq!(rerooted.root(), new_root);
        prop_assert_eq!(&rerooted, &tree);
        prop_assert_eq!(rerooted.diameter(), tree.diameter());
    }
}
