//! Spanning trees stored as parent maps, plus the center type shared by
//! graphs and trees.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, UNREACHED};

/// One vertex, or an ordered pair of vertices that must be adjacent in
/// whatever graph or tree the center is used against.
///
/// The edge count encodes parity: a `d`-center is a single vertex when `d`
/// is even and an adjacent pair when `d` is odd.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Center {
    Single(String),
    Pair(String, String),
}

impl Center {
    pub fn single(v: impl Into<String>) -> Center {
        Center::Single(v.into())
    }

    /// An adjacent pair, normalized lexicographically.
    pub fn pair(a: impl Into<String>, b: impl Into<String>) -> Result<Center> {
        let (a, b) = (a.into(), b.into());
        if a == b {
            return Err(Error::precondition(format!(
                "center pair must consist of two distinct vertices, got `{a}` twice"
            )));
        }
        Ok(if a < b {
            Center::Pair(a, b)
        } else {
            Center::Pair(b, a)
        })
    }

    pub fn labels(&self) -> Vec<&str> {
        match self {
            Center::Single(v) => vec![v],
            Center::Pair(a, b) => vec![a, b],
        }
    }

    /// Number of edges of the center subgraph: 0 for a vertex, 1 for a pair.
    pub fn edge_size(&self) -> u32 {
        match self {
            Center::Single(_) => 0,
            Center::Pair(_, _) => 1,
        }
    }

    /// A `d`-center must satisfy `edge_size == d mod 2`.
    pub fn matches_parity(&self, d: u32) -> bool {
        self.edge_size() == d % 2
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels().contains(&label)
    }
}

impl std::fmt::Display for Center {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Center::Single(v) => write!(f, "{v}"),
            Center::Pair(a, b) => write!(f, "{a},{b}"),
        }
    }
}

/// A spanning tree of a host graph, stored as a parent map rooted anywhere.
///
/// Every tree edge is an edge of the host and the parent chains all reach
/// the root; both are enforced at construction.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    host: Arc<Graph>,
    root: u32,
    parent: Vec<u32>, // parent[root] == root
    depth: Vec<u32>,
}

impl SpanningTree {
    /// Builds a tree from explicit child -> parent entries covering every
    /// non-root vertex.
    pub fn from_parent_map(
        host: Arc<Graph>,
        root: &str,
        parents: &BTreeMap<String, String>,
    ) -> Result<SpanningTree> {
        let root_id = host.require_idx(root)?;
        let n = host.vertex_count();
        let mut parent = vec![UNREACHED; n];
        parent[root_id as usize] = root_id;
        for (child, par) in parents {
            let c = host.require_idx(child)?;
            let p = host.require_idx(par)?;
            if c == root_id {
                return Err(Error::NotSpanningTree(format!(
                    "root `{root}` must not have a parent"
                )));
            }
            if !host.has_edge_ids(c, p) {
                return Err(Error::NotSpanningTree(format!(
                    "`{child}`-`{par}` is not an edge of the host graph"
                )));
            }
            parent[c as usize] = p;
        }
        if let Some(missing) = parent.iter().position(|&p| p == UNREACHED) {
            return Err(Error::NotSpanningTree(format!(
                "vertex `{}` has no parent",
                host.label(missing as u32)
            )));
        }
        Self::from_parent_ids(host, root_id, parent)
    }

    /// Builds a tree from an undirected edge list, orienting parents away
    /// from `root`.
    pub fn from_edges<S: AsRef<str>>(
        host: Arc<Graph>,
        root: &str,
        edges: &[(S, S)],
    ) -> Result<SpanningTree> {
        let root_id = host.require_idx(root)?;
        let n = host.vertex_count();
        if edges.len() != n.saturating_sub(1) {
            return Err(Error::NotSpanningTree(format!(
                "{} edges given but a spanning tree of {n} vertices has {}",
                edges.len(),
                n.saturating_sub(1)
            )));
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = host.require_idx(a)?;
            let j = host.require_idx(b)?;
            if !host.has_edge_ids(i, j) {
                return Err(Error::NotSpanningTree(format!(
                    "`{a}`-`{b}` is not an edge of the host graph"
                )));
            }
            adj[i as usize].push(j);
            adj[j as usize].push(i);
        }
        let mut parent = vec![UNREACHED; n];
        parent[root_id as usize] = root_id;
        let mut stack = vec![root_id];
        let mut reached = 1usize;
        while let Some(v) = stack.pop() {
            for &w in &adj[v as usize] {
                if parent[w as usize] == UNREACHED {
                    parent[w as usize] = v;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached != n {
            return Err(Error::NotSpanningTree(
                "edge set does not connect all vertices".into(),
            ));
        }
        Self::from_parent_ids(host, root_id, parent)
    }

    pub(crate) fn from_parent_ids(
        host: Arc<Graph>,
        root: u32,
        parent: Vec<u32>,
    ) -> Result<SpanningTree> {
        let n = host.vertex_count();
        debug_assert_eq!(parent.len(), n);
        // walk every chain once to compute depths and catch cycles
        let mut depth = vec![UNREACHED; n];
        depth[root as usize] = 0;
        for start in 0..n as u32 {
            let mut chain = Vec::new();
            let mut v = start;
            while depth[v as usize] == UNREACHED {
                chain.push(v);
                if chain.len() > n {
                    return Err(Error::NotSpanningTree(
                        "parent chain does not reach the root".into(),
                    ));
                }
                let p = parent[v as usize];
                if p == UNREACHED || !host.has_edge_ids(v, p) {
                    return Err(Error::NotSpanningTree(format!(
                        "`{}` has no valid parent edge",
                        host.label(v)
                    )));
                }
                v = p;
            }
            let base = depth[v as usize];
            for (k, &u) in chain.iter().rev().enumerate() {
                depth[u as usize] = base + k as u32 + 1;
            }
        }
        Ok(SpanningTree {
            host,
            root,
            parent,
            depth,
        })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn host_arc(&self) -> Arc<Graph> {
        Arc::clone(&self.host)
    }

    pub fn root(&self) -> &str {
        self.host.label(self.root)
    }

    pub fn vertex_count(&self) -> usize {
        self.host.vertex_count()
    }

    pub fn parent_of(&self, label: &str) -> Option<&str> {
        let v = self.host.idx(label)?;
        if v == self.root {
            None
        } else {
            Some(self.host.label(self.parent[v as usize]))
        }
    }

    /// Tree edges as (min, max) label pairs, sorted.
    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = (0..self.parent.len() as u32)
            .filter(|&v| v != self.root)
            .map(|v| {
                let p = self.parent[v as usize];
                let (a, b) = (self.host.label(v), self.host.label(p));
                if a < b {
                    (a.to_string(), b.to_string())
                } else {
                    (b.to_string(), a.to_string())
                }
            })
            .collect();
        out.sort();
        out
    }

    pub fn contains_edge(&self, a: &str, b: &str) -> bool {
        match (self.host.idx(a), self.host.idx(b)) {
            (Some(i), Some(j)) => self.contains_edge_ids(i, j),
            _ => false,
        }
    }

    pub(crate) fn contains_edge_ids(&self, i: u32, j: u32) -> bool {
        (i != self.root && self.parent[i as usize] == j)
            || (j != self.root && self.parent[j as usize] == i)
    }

    /// Length of the unique tree path between two vertices.
    pub fn distance(&self, x: &str, y: &str) -> Result<usize> {
        let i = self.host.require_idx(x)?;
        let j = self.host.require_idx(y)?;
        Ok(self.distance_ids(i, j) as usize)
    }

    pub(crate) fn distance_ids(&self, mut i: u32, mut j: u32) -> u32 {
        let mut di = self.depth[i as usize];
        let mut dj = self.depth[j as usize];
        let mut steps = 0;
        while di > dj {
            i = self.parent[i as usize];
            di -= 1;
            steps += 1;
        }
        while dj > di {
            j = self.parent[j as usize];
            dj -= 1;
            steps += 1;
        }
        while i != j {
            i = self.parent[i as usize];
            j = self.parent[j as usize];
            steps += 2;
        }
        steps
    }

    /// The vertex sequence of the unique tree path from `x` to `y`.
    pub fn path(&self, x: &str, y: &str) -> Result<Vec<String>> {
        let i = self.host.require_idx(x)?;
        let j = self.host.require_idx(y)?;
        let (mut up_i, mut up_j) = (vec![i], vec![j]);
        let (mut a, mut b) = (i, j);
        let (mut da, mut db) = (self.depth[a as usize], self.depth[b as usize]);
        while da > db {
            a = self.parent[a as usize];
            da -= 1;
            up_i.push(a);
        }
        while db > da {
            b = self.parent[b as usize];
            db -= 1;
            up_j.push(b);
        }
        while a != b {
            a = self.parent[a as usize];
            b = self.parent[b as usize];
            up_i.push(a);
            up_j.push(b);
        }
        up_j.pop();
        up_i.extend(up_j.into_iter().rev());
        Ok(up_i
            .into_iter()
            .map(|v| self.host.label(v).to_string())
            .collect())
    }

    /// Tree distance from every vertex to the nearest vertex of `sources`.
    pub(crate) fn distances_to_set(&self, sources: &[u32]) -> Vec<u32> {
        let n = self.parent.len();
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for v in 0..n as u32 {
            if v != self.root {
                let p = self.parent[v as usize];
                adj[v as usize].push(p);
                adj[p as usize].push(v);
            }
        }
        let mut dist = vec![UNREACHED; n];
        let mut queue = std::collections::VecDeque::new();
        for &s in sources {
            if dist[s as usize] == UNREACHED {
                dist[s as usize] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v as usize] {
                if dist[w as usize] == UNREACHED {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Tree distance from `x` to the nearest vertex of the center.
    pub fn distance_to_center(&self, x: &str, k: &Center) -> Result<usize> {
        let i = self.host.require_idx(x)?;
        let ks = self.host.ids_of(&k.labels())?;
        Ok(ks
            .iter()
            .map(|&s| self.distance_ids(i, s))
            .min()
            .expect("center is non-empty") as usize)
    }

    /// Length of a longest path in the tree (two farthest-vertex sweeps).
    pub fn diameter(&self) -> usize {
        if self.parent.is_empty() {
            return 0;
        }
        let d0 = self.distances_to_set(&[self.root]);
        let a = (0..d0.len()).max_by_key(|&v| d0[v]).unwrap() as u32;
        let d1 = self.distances_to_set(&[a]);
        d1.into_iter().max().unwrap() as usize
    }

    /// True iff `k` is a `d`-center of this tree: the parity matches, a pair
    /// is adjacent in the tree, and every vertex lies within `floor(d/2)`.
    pub fn has_center(&self, k: &Center, d: u32) -> Result<bool> {
        let ks = self.host.ids_of(&k.labels())?;
        if !k.matches_parity(d) {
            return Ok(false);
        }
        if let [a, b] = ks[..] {
            if !self.contains_edge_ids(a, b) {
                return Ok(false);
            }
        }
        let ecc = self.distances_to_set(&ks).into_iter().max().unwrap_or(0);
        Ok(ecc <= d / 2)
    }

    /// The same tree re-oriented so that parent chains point at `new_root`.
    pub fn rerooted(&self, new_root: &str) -> Result<SpanningTree> {
        let r = self.host.require_idx(new_root)?;
        if r == self.root {
            return Ok(self.clone());
        }
        let mut parent = self.parent.clone();
        // reverse the chain from the new root up to the old one
        let mut v = r;
        let mut prev = r;
        loop {
            let p = parent[v as usize];
            parent[v as usize] = prev;
            if v == self.root {
                break;
            }
            prev = v;
            v = p;
        }
        parent[r as usize] = r;
        Self::from_parent_ids(Arc::clone(&self.host), r, parent)
    }

    pub(crate) fn root_id(&self) -> u32 {
        self.root
    }

    pub(crate) fn parent_ids(&self) -> &[u32] {
        &self.parent
    }
}

/// Trees compare equal when they span equal hosts with the same edge set;
/// the root is a representation detail.
impl PartialEq for SpanningTree {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.host, &other.host) || *self.host == *other.host)
            && self.edges() == other.edges()
    }
}

impl Eq for SpanningTree {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, path_graph};

    fn tree_of_path(labels: &[&str]) -> SpanningTree {
        let g = Arc::new(path_graph(labels));
        let edges: Vec<(String, String)> = g
            .edges()
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        SpanningTree::from_edges(g, labels[0], &edges).unwrap()
    }

    #[test]
    fn distance_to_self_is_zero() {
        let t = tree_of_path(&["a", "b", "c"]);
        assert_eq!(t.distance("b", "b").unwrap(), 0);
    }

    #[test]
    fn path_endpoints_are_its_length_apart() {
        let t = tree_of_path(&["a", "b", "c", "d", "e", "f"]);
        assert_eq!(t.distance("a", "f").unwrap(), 5);
        assert_eq!(t.diameter(), 5);
    }

    #[test]
    fn single_vertex_tree() {
        let g = Arc::new(Graph::from_parts::<&str, &str, _, _>(["x"], []).unwrap());
        let t = SpanningTree::from_edges::<&str>(g, "x", &[]).unwrap();
        assert_eq!(t.diameter(), 0);
    }

    #[test]
    fn star_has_diameter_two() {
        let g = Arc::new(Graph::from_edges([("hub", "a"), ("hub", "b"), ("hub", "c")]).unwrap());
        let edges: Vec<(String, String)> = g
            .edges()
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let t = SpanningTree::from_edges(g, "hub", &edges).unwrap();
        assert_eq!(t.diameter(), 2);
        assert!(t.has_center(&Center::single("hub"), 2).unwrap());
    }

    #[test]
    fn spanning_path_of_c8_has_diameter_seven() {
        let g = Arc::new(cycle_graph(&["a", "b", "c", "d", "e", "f", "g", "h"]));
        let edges: Vec<(&str, &str)> = vec![
            ("a", "b"),
            ("b", "c"),
            ("c", "d"),
            ("d", "e"),
            ("e", "f"),
            ("f", "g"),
            ("g", "h"),
        ];
        let t = SpanningTree::from_edges(g, "a", &edges).unwrap();
        assert_eq!(t.diameter(), 7);
    }

    #[test]
    fn rejects_non_host_edges_and_bad_counts() {
        let g = Arc::new(cycle_graph(&["a", "b", "c", "d"]));
        let err = SpanningTree::from_edges(Arc::clone(&g), "a", &[("a", "c"), ("a", "b"), ("c", "d")]);
        assert!(matches!(err, Err(Error::NotSpanningTree(_))));
        let err = SpanningTree::from_edges(Arc::clone(&g), "a", &[("a", "b")]);
        assert!(matches!(err, Err(Error::NotSpanningTree(_))));
        let err = SpanningTree::from_edges(g, "a", &[("a", "b"), ("c", "d"), ("a", "b")]);
        assert!(matches!(err, Err(Error::NotSpanningTree(_))));
    }

    #[test]
    fn rerooting_preserves_edges_and_distances() {
        let t = tree_of_path(&["a", "b", "c", "d"]);
        let r = t.rerooted("d").unwrap();
        assert_eq!(r.root(), "d");
        assert_eq!(t.edges(), r.edges());
        assert_eq!(t, r);
        assert_eq!(r.distance("a", "c").unwrap(), 2);
    }

    #[test]
    fn tree_path_sequences() {
        let t = tree_of_path(&["a", "b", "c", "d"]);
        assert_eq!(t.path("a", "d").unwrap(), vec!["a", "b", "c", "d"]);
        assert_eq!(t.path("c", "a").unwrap(), vec!["c", "b", "a"]);
        assert_eq!(t.path("b", "b").unwrap(), vec!["b"]);
    }

    #[test]
    fn center_parity_and_adjacency() {
        let t = tree_of_path(&["a", "b", "c", "d"]);
        // diameter 3: the middle edge is a 3-center, no single vertex is
        let mid = Center::pair("b", "c").unwrap();
        assert!(t.has_center(&mid, 3).unwrap());
        assert!(!t.has_center(&Center::single("b"), 3).unwrap());
        assert!(!t.has_center(&Center::single("b"), 2).unwrap());
        let far = Center::pair("a", "b").unwrap();
        assert!(!t.has_center(&far, 3).unwrap());
        // non tree edge pair
        let g = Arc::new(cycle_graph(&["a", "b", "c", "d"]));
        let t = SpanningTree::from_edges(g, "a", &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        assert!(!t.has_center(&Center::pair("a", "d").unwrap(), 3).unwrap());
        assert!(t.has_center(&Center::pair("b", "c").unwrap(), 3).unwrap());
    }
}
