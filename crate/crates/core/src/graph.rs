//! Immutable undirected simple graphs over string vertex labels.
//!
//! Vertices are kept sorted lexicographically and every operation iterates
//! in that order, so all downstream witnesses are reproducible.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

pub(crate) const UNREACHED: u32 = u32::MAX;

/// An immutable undirected simple graph with string vertex labels.
///
/// No self-loops, no parallel edges; the adjacency structure is symmetric
/// and sorted. Disconnected graphs are legal here; operations that require
/// connectivity reject them explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Vec<u32>>,
    edge_count: usize,
}

fn validate_label(label: &str) -> Result<()> {
    let bad = label.is_empty()
        || label
            .chars()
            .any(|c| c.is_whitespace() || c.is_control() || matches!(c, '#' | '"' | '\\'));
    if bad {
        Err(Error::InvalidLabel(label.to_string()))
    } else {
        Ok(())
    }
}

impl Graph {
    /// Builds a graph from an edge list; vertices are exactly the edge endpoints.
    pub fn from_edges<S, I>(edges: I) -> Result<Graph>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (S, S)>,
    {
        Self::from_parts(std::iter::empty::<&str>(), edges)
    }

    /// Builds a graph from explicit vertices plus an edge list.
    ///
    /// Extra vertices may be isolated; duplicate edges collapse; self-loops
    /// and malformed labels are rejected.
    pub fn from_parts<S, T, V, I>(vertices: V, edges: I) -> Result<Graph>
    where
        S: AsRef<str>,
        T: AsRef<str>,
        V: IntoIterator<Item = S>,
        I: IntoIterator<Item = (T, T)>,
    {
        let mut names: BTreeSet<String> = BTreeSet::new();
        for v in vertices {
            let v = v.as_ref();
            validate_label(v)?;
            names.insert(v.to_string());
        }
        let mut raw_edges: Vec<(String, String)> = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            validate_label(a)?;
            validate_label(b)?;
            if a == b {
                return Err(Error::SelfLoop(a.to_string()));
            }
            names.insert(a.to_string());
            names.insert(b.to_string());
            raw_edges.push((a.to_string(), b.to_string()));
        }

        let labels: Vec<String> = names.into_iter().collect();
        let index: BTreeMap<&str, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i as u32))
            .collect();

        let mut sets: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); labels.len()];
        for (a, b) in &raw_edges {
            let (i, j) = (index[a.as_str()], index[b.as_str()]);
            sets[i as usize].insert(j);
            sets[j as usize].insert(i);
        }
        let adj: Vec<Vec<u32>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph {
            labels,
            adj,
            edge_count,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Vertex labels in lexicographic order.
    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }

    pub fn contains_vertex(&self, label: &str) -> bool {
        self.idx(label).is_some()
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.idx(a), self.idx(b)) {
            (Some(i), Some(j)) => self.adj[i as usize].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    /// Neighbors of `label` in lexicographic order, or `None` for an unknown vertex.
    pub fn neighbors(&self, label: &str) -> Option<impl Iterator<Item = &str>> {
        let i = self.idx(label)?;
        Some(self.adj[i as usize].iter().map(|&j| self.label(j)))
    }

    pub fn degree(&self, label: &str) -> Option<usize> {
        self.idx(label).map(|i| self.adj[i as usize].len())
    }

    /// Edges as (min, max) label pairs, sorted.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs {
                if (i as u32) < j {
                    out.push((self.label(i as u32), self.label(j)));
                }
            }
        }
        out
    }

    /// Exact shortest-path distance from the vertex set `sources` to every
    /// reachable vertex. Unreachable vertices are absent from the result.
    pub fn distances_from<S: AsRef<str>>(&self, sources: &[S]) -> Result<BTreeMap<&str, usize>> {
        let ids = self.ids_of(sources)?;
        if ids.is_empty() {
            return Err(Error::EmptySources);
        }
        let dist = self.multi_source_distances(&ids);
        Ok(dist
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d != UNREACHED)
            .map(|(v, &d)| (self.label(v as u32), d as usize))
            .collect())
    }

    /// Connected components of the graph after deleting `removed`, each
    /// sorted, the list ordered by smallest member.
    pub fn components_without<S: AsRef<str>>(&self, removed: &[S]) -> Result<Vec<Vec<String>>> {
        let removed = self.ids_of(removed)?;
        let mut blocked = vec![false; self.labels.len()];
        for &r in &removed {
            blocked[r as usize] = true;
        }
        let mut seen = blocked.clone();
        let mut out: Vec<Vec<String>> = Vec::new();
        for start in 0..self.labels.len() as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start as usize] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v as usize] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp.into_iter().map(|v| self.label(v).to_string()).collect());
        }
        // components are discovered in order of their smallest member because
        // start vertices scan upward
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        if self.labels.is_empty() {
            return true;
        }
        let dist = self.multi_source_distances(&[0]);
        dist.iter().all(|&d| d != UNREACHED)
    }

    // ---- index-based internals ----

    pub(crate) fn idx(&self, label: &str) -> Option<u32> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .ok()
            .map(|i| i as u32)
    }

    pub(crate) fn require_idx(&self, label: &str) -> Result<u32> {
        self.idx(label)
            .ok_or_else(|| Error::VertexNotFound(label.to_string()))
    }

    pub(crate) fn label(&self, id: u32) -> &str {
        &self.labels[id as usize]
    }

    pub(crate) fn adj_ids(&self, id: u32) -> &[u32] {
        &self.adj[id as usize]
    }

    pub(crate) fn has_edge_ids(&self, a: u32, b: u32) -> bool {
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    pub(crate) fn edge_ids(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs {
                if (i as u32) < j {
                    out.push((i as u32, j));
                }
            }
        }
        out
    }

    pub(crate) fn ids_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<u32>> {
        labels.iter().map(|l| self.require_idx(l.as_ref())).collect()
    }

    /// Multi-source BFS; `UNREACHED` marks vertices not reachable from `sources`.
    pub(crate) fn multi_source_distances(&self, sources: &[u32]) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.labels.len()];
        let mut queue = std::collections::VecDeque::new();
        for &s in sources {
            if dist[s as usize] == UNREACHED {
                dist[s as usize] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize];
            for &w in &self.adj[v as usize] {
                if dist[w as usize] == UNREACHED {
                    dist[w as usize] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Graph eccentricity of a vertex set: max distance to any vertex, or
    /// `None` when some vertex is unreachable.
    pub(crate) fn set_eccentricity(&self, sources: &[u32]) -> Option<u32> {
        let dist = self.multi_source_distances(sources);
        dist.iter().copied().try_fold(0, |acc, d| {
            if d == UNREACHED {
                None
            } else {
                Some(acc.max(d))
            }
        })
    }
}

/// Convenience constructors used across tests and gadget builders.
pub fn path_graph(labels: &[&str]) -> Graph {
    let edges: Vec<_> = labels.windows(2).map(|w| (w[0], w[1])).collect();
    Graph::from_parts(labels.iter().copied(), edges).expect("valid path")
}

pub fn cycle_graph(labels: &[&str]) -> Graph {
    assert!(labels.len() >= 3, "cycle needs at least 3 vertices");
    let mut edges: Vec<_> = labels.windows(2).map(|w| (w[0], w[1])).collect();
    edges.push((labels[labels.len() - 1], labels[0]));
    Graph::from_edges(edges).expect("valid cycle")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c8() -> Graph {
        cycle_graph(&["a", "b", "c", "d", "e", "f", "g", "h"])
    }

    #[test]
    fn distances_on_a_path() {
        let g = path_graph(&["a", "b", "c"]);
        let d = g.distances_from(&["a"]).unwrap();
        assert_eq!(d["a"], 0);
        assert_eq!(d["b"], 1);
        assert_eq!(d["c"], 2);
    }

    #[test]
    fn distances_with_all_sources_are_zero() {
        let g = c8();
        let sources: Vec<&str> = g.vertices().collect();
        let d = g.distances_from(&sources).unwrap();
        assert!(d.values().all(|&v| v == 0));
        assert_eq!(d.len(), 8);
    }

    #[test]
    fn eight_cycle_has_eccentricity_four() {
        let g = c8();
        let d = g.distances_from(&["a"]).unwrap();
        assert_eq!(d.values().copied().max(), Some(4));
    }

    #[test]
    fn distances_reject_empty_or_unknown_sources() {
        let g = path_graph(&["a", "b"]);
        assert!(matches!(
            g.distances_from::<&str>(&[]),
            Err(Error::EmptySources)
        ));
        assert!(matches!(
            g.distances_from(&["zzz"]),
            Err(Error::VertexNotFound(_))
        ));
    }

    #[test]
    fn unreachable_vertices_are_absent() {
        let g = Graph::from_parts(["i"], [("a", "b")]).unwrap();
        let d = g.distances_from(&["a"]).unwrap();
        assert_eq!(d.len(), 2);
        assert!(!d.contains_key("i"));
    }

    #[test]
    fn components_split_at_a_cut_vertex() {
        let g = path_graph(&["a", "b", "c"]);
        let comps = g.components_without(&["b"]).unwrap();
        assert_eq!(comps, vec![vec!["a".to_string()], vec!["c".to_string()]]);
    }

    #[test]
    fn removing_everything_leaves_no_components() {
        let g = c8();
        let all: Vec<&str> = g.vertices().collect();
        assert!(g.components_without(&all).unwrap().is_empty());
    }

    #[test]
    fn c8_minus_closed_neighborhood_leaves_five_vertices() {
        let g = c8();
        for v in ["a", "d", "h"] {
            let mut closed: Vec<String> = g.neighbors(v).unwrap().map(str::to_string).collect();
            closed.push(v.to_string());
            let comps = g.components_without(&closed).unwrap();
            assert_eq!(comps.len(), 1);
            assert_eq!(comps[0].len(), 5);
        }
    }

    #[test]
    fn components_are_disjoint_and_non_adjacent() {
        let g = Graph::from_edges([("a", "b"), ("c", "d"), ("b", "c"), ("e", "f")]).unwrap();
        let comps = g.components_without(&["b"]).unwrap();
        for (i, c1) in comps.iter().enumerate() {
            for c2 in comps.iter().skip(i + 1) {
                for x in c1 {
                    for y in c2 {
                        assert_ne!(x, y);
                        assert!(!g.has_edge(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            Graph::from_edges([("a", "a")]),
            Err(Error::SelfLoop(_))
        ));
        assert!(matches!(
            Graph::from_edges([("a b", "c")]),
            Err(Error::InvalidLabel(_))
        ));
        assert!(matches!(
            Graph::from_edges([("", "c")]),
            Err(Error::InvalidLabel(_))
        ));
    }

    #[test]
    fn parallel_edges_collapse() {
        let g = Graph::from_edges([("a", "b"), ("b", "a"), ("a", "b")]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn edges_are_sorted_and_normalized() {
        let g = Graph::from_edges([("d", "c"), ("b", "a"), ("c", "a")]).unwrap();
        assert_eq!(g.edges(), vec![("a", "b"), ("a", "c"), ("c", "d")]);
    }

    #[test]
    fn connectivity() {
        assert!(c8().is_connected());
        assert!(!Graph::from_edges([("a", "b"), ("c", "d")]).unwrap().is_connected());
        assert!(Graph::from_parts::<&str, &str, _, _>(["x"], []).unwrap().is_connected());
    }
}
