//! Polynomial decision, with witness, of tree 3-spanners of diameter at
//! most 4, plus the trivial stretch 0 and 1 cases.
//!
//! A graph admits a tree 3-spanner of diameter at most 4 iff some vertex u
//! has every component of `G \ N[u]` inside the neighborhood of a single
//! neighbor of u. The witness tree hangs `N(u)` from u and each component
//! from its covering neighbor, so every vertex ends within tree distance 2
//! of the hub.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, UNREACHED};
use crate::tree::SpanningTree;

/// The constructive certificate: the hub, one covering neighbor per
/// component of `G \ N[hub]`, and the resulting tree.
#[derive(Debug, Clone)]
pub struct Diam4Witness {
    pub hub: String,
    /// Sorted component of `G \ N[hub]` -> the neighbor of the hub whose
    /// neighborhood contains it.
    pub assignment: BTreeMap<Vec<String>, String>,
    pub tree: SpanningTree,
}

/// `a` as a subset of `b`, both strictly ascending.
fn is_sorted_subset(a: &[u32], b: &[u32]) -> bool {
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// Decides whether `g` admits a tree 3-spanner of diameter at most 4 and
/// returns the first witness in hub order, or `None`.
///
/// Hubs are scanned lexicographically and each component takes its
/// lexicographically least covering neighbor.
pub fn decide_tree3_diam4(g: &Arc<Graph>) -> Result<Option<Diam4Witness>> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();

    'hubs: for hub in 0..n as u32 {
        // components of g minus the closed neighborhood of the hub
        let mut blocked = vec![false; n];
        blocked[hub as usize] = true;
        for &w in g.adj_ids(hub) {
            blocked[w as usize] = true;
        }
        let mut components: Vec<Vec<u32>> = Vec::new();
        let mut seen = blocked.clone();
        for start in 0..n as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut comp = vec![];
            let mut stack = vec![start];
            seen[start as usize] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in g.adj_ids(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }

        let mut covering: Vec<(Vec<u32>, u32)> = Vec::with_capacity(components.len());
        for comp in components {
            let Some(v) = g
                .adj_ids(hub)
                .iter()
                .copied()
                .find(|&v| is_sorted_subset(&comp, g.adj_ids(v)))
            else {
                continue 'hubs;
            };
            covering.push((comp, v));
        }

        let mut parent = vec![UNREACHED; n];
        parent[hub as usize] = hub;
        for &w in g.adj_ids(hub) {
            parent[w as usize] = hub;
        }
        for (comp, v) in &covering {
            for &x in comp {
                parent[x as usize] = *v;
            }
        }
        let tree = SpanningTree::from_parent_ids(Arc::clone(g), hub, parent)?;
        let assignment = covering
            .into_iter()
            .map(|(comp, v)| {
                (
                    comp.iter().map(|&x| g.label(x).to_string()).collect(),
                    g.label(v).to_string(),
                )
            })
            .collect();
        return Ok(Some(Diam4Witness {
            hub: g.label(hub).to_string(),
            assignment,
            tree,
        }));
    }
    Ok(None)
}

/// The trivial cases of the diameter-(t+1) problem: for stretch 1 the tree
/// must be the graph itself (with diameter at most 2), and for stretch 0
/// only the one-vertex graph qualifies.
pub fn decide_small_t(g: &Arc<Graph>, stretch: u32) -> Result<Option<SpanningTree>> {
    if stretch > 1 {
        return Err(Error::InvalidStretch {
            got: stretch,
            expected: "the trivial decider handles stretch 0 and 1 only",
        });
    }
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    if g.edge_count() != n - 1 {
        // any omitted edge of g would be stretched beyond 1
        return Ok(None);
    }
    if stretch == 0 && n > 1 {
        // an edge joins distinct vertices, so tree distance 0 is impossible
        return Ok(None);
    }
    let root = g.vertices().next().expect("non-empty").to_string();
    let edges: Vec<(String, String)> = g
        .edges()
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let tree = SpanningTree::from_edges(Arc::clone(g), &root, &edges)?;
    if tree.diameter() <= stretch as usize + 1 {
        Ok(Some(tree))
    } else {
        Ok(None)
    }
}
