//! Edge-swap normalization of a centered tree t-spanner into a
//! shortest-paths-to-center one.
//!
//! Given a tree t-spanner whose diameter is witnessed by a (t+1)-center K,
//! the set X of vertices with `d_G(K,x) < d_T(K,x)` can be emptied one
//! vertex at a time: pick u in X at minimum graph distance to K, pick a
//! neighbor v one step closer to K (necessarily outside X), and replace
//! u's parent edge towards K with uv. Every intermediate tree is still a
//! tree t-spanner with (t+1)-center K and |X| strictly shrinks, so the
//! loop ends in at most |V| swaps. With a (t+2)-center instead of a
//! (t+1)-center the guarantee is void and the procedure rejects.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spanner::is_tree_t_spanner;
use crate::tree::{Center, SpanningTree};

pub type Edge = (String, String);

/// What the normalization found and did: the violating set of the input
/// tree and the swaps applied to empty it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationReport {
    /// Vertices of the input tree with `d_G(K,x) < d_T(K,x)`; empty iff
    /// the input was already a shortest-paths-to-K tree.
    pub violating: BTreeSet<String>,
    /// (removed edge, added edge) per swap, in execution order.
    pub swaps: Vec<(Edge, Edge)>,
}

fn edge_label(g: &Graph, a: u32, b: u32) -> Edge {
    let (x, y) = (g.label(a), g.label(b));
    if x < y {
        (x.to_string(), y.to_string())
    } else {
        (y.to_string(), x.to_string())
    }
}

fn violating_ids(g: &Graph, tree: &SpanningTree, k_ids: &[u32]) -> Vec<u32> {
    let dg = g.multi_source_distances(k_ids);
    let dt = tree.distances_to_set(k_ids);
    (0..g.vertex_count() as u32)
        .filter(|&v| {
            debug_assert!(dg[v as usize] <= dt[v as usize]);
            dg[v as usize] < dt[v as usize]
        })
        .collect()
}

/// The vertices whose tree distance to `k` exceeds their graph distance.
pub fn violating_set(g: &Graph, tree: &SpanningTree, k: &Center) -> Result<BTreeSet<String>> {
    if !(std::ptr::eq(g, tree.host()) || *g == *tree.host()) {
        return Err(Error::precondition(
            "the tree does not span this graph (host mismatch)",
        ));
    }
    let k_ids = g.ids_of(&k.labels())?;
    Ok(violating_ids(g, tree, &k_ids)
        .into_iter()
        .map(|v| g.label(v).to_string())
        .collect())
}

/// Rebuilds `tree` into a tree `stretch`-spanner of `g` whose distances to
/// `k` equal the graph distances, swapping one edge per violating vertex.
///
/// Requires `tree` to be a tree `stretch`-spanner and `k` a
/// (`stretch`+1)-center of it; both are checked because the procedure's
/// guarantee is void without them.
pub fn normalize_shortest_paths(
    g: &Graph,
    tree: &SpanningTree,
    stretch: u32,
    k: &Center,
) -> Result<(SpanningTree, ViolationReport)> {
    if !is_tree_t_spanner(g, tree, stretch)? {
        return Err(Error::precondition(format!(
            "the tree is not a tree {stretch}-spanner of the graph"
        )));
    }
    if !tree.has_center(k, stretch + 1)? {
        return Err(Error::precondition(format!(
            "`{k}` is not a {}-center of the tree (required: {} within distance {})",
            stretch + 1,
            if (stretch + 1).is_multiple_of(2) {
                "a single vertex"
            } else {
                "an adjacent tree-edge pair"
            },
            stretch.div_ceil(2),
        )));
    }

    let k_ids = g.ids_of(&k.labels())?;
    let dg = g.multi_source_distances(&k_ids);
    let mut work = tree.rerooted(g.label(k_ids[0]))?;
    let mut x = violating_ids(g, &work, &k_ids);
    let report_violating: BTreeSet<String> =
        x.iter().map(|&v| g.label(v).to_string()).collect();
    let mut swaps = Vec::new();

    while !x.is_empty() {
        assert!(
            swaps.len() < g.vertex_count(),
            "edge swap loop exceeded |V| iterations"
        );
        // u: violating vertex nearest to K, ties broken lexicographically
        let &u = x
            .iter()
            .min_by_key(|&&v| (dg[v as usize], v))
            .expect("x is non-empty");
        // v: least neighbor one step closer to K; it cannot be violating
        // because u already has the minimum graph distance within X
        let v = g
            .adj_ids(u)
            .iter()
            .copied()
            .find(|&w| dg[w as usize] + 1 == dg[u as usize] && !x.contains(&w))
            .expect("a shortest path to K steps through a non-violating neighbor");

        let old_parent = work
            .parent_of(g.label(u))
            .map(|p| g.require_idx(p))
            .expect("violating vertices are never the root")?;
        let mut parent = work.parent_ids().to_vec();
        parent[u as usize] = v;
        work = SpanningTree::from_parent_ids(work.host_arc(), work.root_id(), parent)?;
        swaps.push((edge_label(g, u, old_parent), edge_label(g, u, v)));

        let next = violating_ids(g, &work, &k_ids);
        debug_assert!(next.len() < x.len(), "the violating set must shrink");
        debug_assert!(next.iter().all(|w| x.contains(w)));
        debug_assert!(is_tree_t_spanner(g, &work, stretch).unwrap());
        debug_assert!(work.has_center(k, stretch + 1).unwrap());
        x = next;
    }

    Ok((
        work,
        ViolationReport {
            violating: report_violating,
            swaps,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path_graph;
    use crate::spanner::bfs_tree_from_center;
    use std::sync::Arc;

    fn square_with_spoke() -> Arc<Graph> {
        // k adjacent to p, q, r; extra edge qr
        Arc::new(Graph::from_edges([("k", "p"), ("k", "q"), ("k", "r"), ("q", "r")]).unwrap())
    }

    #[test]
    fn bfs_trees_have_no_violations() {
        let g = square_with_spoke();
        let k = Center::single("k");
        let t = bfs_tree_from_center(&g, &k).unwrap();
        assert!(violating_set(&g, &t, &k).unwrap().is_empty());
        let (out, report) = normalize_shortest_paths(&g, &t, 3, &k).unwrap();
        assert_eq!(out, t);
        assert!(report.violating.is_empty());
        assert!(report.swaps.is_empty());
    }

    #[test]
    fn detour_tree_has_one_violating_vertex_and_one_swap() {
        let g = square_with_spoke();
        let t = SpanningTree::from_edges(
            Arc::clone(&g),
            "k",
            &[("k", "p"), ("k", "q"), ("q", "r")],
        )
        .unwrap();
        let k = Center::single("k");
        let x = violating_set(&g, &t, &k).unwrap();
        assert_eq!(x, BTreeSet::from(["r".to_string()]));

        let (out, report) = normalize_shortest_paths(&g, &t, 3, &k).unwrap();
        assert_eq!(
            out.edges(),
            vec![
                ("k".to_string(), "p".to_string()),
                ("k".to_string(), "q".to_string()),
                ("k".to_string(), "r".to_string()),
            ]
        );
        assert_eq!(report.violating, BTreeSet::from(["r".to_string()]));
        assert_eq!(
            report.swaps,
            vec![(
                ("q".to_string(), "r".to_string()),
                ("k".to_string(), "r".to_string())
            )]
        );
        assert!(violating_set(&g, &out, &k).unwrap().is_empty());
        assert!(is_tree_t_spanner(&g, &out, 3).unwrap());
        assert!(out.has_center(&k, 4).unwrap());
    }

    #[test]
    fn rejects_a_non_spanner() {
        // spanning path of C5 is not a tree 3-spanner
        let g = Arc::new(crate::graph::cycle_graph(&["a", "b", "c", "d", "e"]));
        let t = SpanningTree::from_edges(
            Arc::clone(&g),
            "a",
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")],
        )
        .unwrap();
        let err = normalize_shortest_paths(&g, &t, 3, &Center::pair("b", "c").unwrap());
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn rejects_a_center_of_the_wrong_parity_or_radius() {
        let g = Arc::new(path_graph(&["a", "b", "c", "d", "e"]));
        let edges: Vec<(String, String)> = g
            .edges()
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let t = SpanningTree::from_edges(Arc::clone(&g), "a", &edges).unwrap();
        // stretch 3 wants a 4-center, i.e. a single vertex within distance 2
        assert!(normalize_shortest_paths(&g, &t, 3, &Center::single("c")).is_ok());
        assert!(matches!(
            normalize_shortest_paths(&g, &t, 3, &Center::pair("b", "c").unwrap()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            normalize_shortest_paths(&g, &t, 3, &Center::single("b")),
            Err(Error::Precondition(_))
        ));
    }
}
