//! Exhaustive ground-truth engines: spanning-tree enumeration by edge
//! inclusion/exclusion, shortest-paths tree search constrained to a
//! center, and a brute-force SAT solver for tiny instances.
//!
//! Every search is budgeted; running into a cap is reported as an explicit
//! error, never silently presented as "no solution exists".

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::cnf::{CnfInstance, TruthAssignment};
use crate::error::{BudgetResource, Error, Result};
use crate::graph::{Graph, UNREACHED};
use crate::tree::{Center, SpanningTree};

/// Caps for exhaustive searches.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    /// Cap on enumerated spanning trees.
    pub max_trees: u64,
    /// Cap on backtracking nodes.
    pub max_nodes: u64,
    /// Wall-clock bound.
    pub timeout: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_trees: 1_000_000,
            max_nodes: 10_000_000,
            timeout: Duration::from_secs(60),
        }
    }
}

impl SearchBudget {
    pub fn with_max_trees(mut self, max_trees: u64) -> Self {
        self.max_trees = max_trees;
        self
    }

    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }
}

struct Meter<'a> {
    budget: &'a SearchBudget,
    nodes: u64,
    trees: u64,
    start: Instant,
}

impl<'a> Meter<'a> {
    fn new(budget: &'a SearchBudget) -> Self {
        Meter {
            budget,
            nodes: 0,
            trees: 0,
            start: Instant::now(),
        }
    }

    fn node(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Error::BudgetExhausted {
                resource: BudgetResource::Nodes,
            });
        }
        if self.nodes.is_multiple_of(1024) && self.start.elapsed() > self.budget.timeout {
            return Err(Error::BudgetExhausted {
                resource: BudgetResource::Timeout,
            });
        }
        Ok(())
    }

    fn tree(&mut self) -> Result<()> {
        self.trees += 1;
        if self.trees > self.budget.max_trees {
            Err(Error::BudgetExhausted {
                resource: BudgetResource::Trees,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone)]
struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    /// Returns false when both sides were already joined.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            false
        } else {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
            true
        }
    }
}

struct EnumCtx<'a, F> {
    g: &'a Graph,
    edges: &'a [(u32, u32)],
    chosen: Vec<(u32, u32)>,
    meter: Meter<'a>,
    visit: F,
    stopped: bool,
}

impl<F> EnumCtx<'_, F>
where
    F: FnMut(&[(u32, u32)]) -> ControlFlow<()>,
{
    fn rec(&mut self, i: usize, dsu: &Dsu) -> Result<()> {
        self.meter.node()?;
        let n = self.g.vertex_count();
        if self.chosen.len() == n - 1 {
            self.meter.tree()?;
            if (self.visit)(&self.chosen).is_break() {
                self.stopped = true;
            }
            return Ok(());
        }
        if i == self.edges.len() || self.edges.len() - i < n - 1 - self.chosen.len() {
            return Ok(());
        }
        let (a, b) = self.edges[i];
        if dsu.find(a) != dsu.find(b) {
            let mut next = dsu.clone();
            next.union(a, b);
            self.chosen.push((a, b));
            self.rec(i + 1, &next)?;
            self.chosen.pop();
            if self.stopped {
                return Ok(());
            }
        }
        if self.spans_without(i) {
            self.rec(i + 1, dsu)?;
        }
        Ok(())
    }

    /// Can the chosen edges plus the edges after position `i` still span?
    fn spans_without(&self, i: usize) -> bool {
        let n = self.g.vertex_count();
        let mut dsu = Dsu::new(n);
        let mut parts = n as u32;
        for &(a, b) in self.chosen.iter().chain(&self.edges[i + 1..]) {
            if dsu.union(a, b) {
                parts -= 1;
                if parts == 1 {
                    return true;
                }
            }
        }
        parts == 1
    }
}

fn enumerate_raw<F>(g: &Graph, budget: &SearchBudget, visit: F) -> Result<u64>
where
    F: FnMut(&[(u32, u32)]) -> ControlFlow<()>,
{
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let edges = g.edge_ids();
    let mut ctx = EnumCtx {
        g,
        edges: &edges,
        chosen: Vec::with_capacity(g.vertex_count().saturating_sub(1)),
        meter: Meter::new(budget),
        visit,
        stopped: false,
    };
    ctx.rec(0, &Dsu::new(g.vertex_count()))?;
    Ok(ctx.meter.trees)
}

/// Streams every spanning tree of `g` exactly once, in the deterministic
/// edge-inclusion-first order over the sorted edge list. Returns the
/// number of trees visited; `ControlFlow::Break` stops early.
pub fn for_each_spanning_tree<F>(g: &Arc<Graph>, budget: &SearchBudget, mut visit: F) -> Result<u64>
where
    F: FnMut(&SpanningTree) -> ControlFlow<()>,
{
    enumerate_raw(g, budget, |edges| {
        let labeled: Vec<(String, String)> = edges
            .iter()
            .map(|&(a, b)| (g.label(a).to_string(), g.label(b).to_string()))
            .collect();
        let root = g.label(0).to_string();
        let tree = SpanningTree::from_edges(Arc::clone(g), &root, &labeled)
            .expect("enumerated edge sets are spanning trees");
        visit(&tree)
    })
}

/// Collects every spanning tree of `g` (bounded by the budget).
pub fn enumerate_spanning_trees(g: &Arc<Graph>, budget: &SearchBudget) -> Result<Vec<SpanningTree>> {
    let mut out = Vec::new();
    for_each_spanning_tree(g, budget, |t| {
        out.push(t.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// All-pairs distances inside a tree given as an edge list; `scratch`
/// carries reusable adjacency buffers.
fn tree_all_pairs(n: usize, edges: &[(u32, u32)], adj: &mut [Vec<u32>], dist: &mut [u32]) {
    for a in adj.iter_mut() {
        a.clear();
    }
    for &(a, b) in edges {
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row.fill(UNREACHED);
        row[s] = 0;
        queue.clear();
        queue.push_back(s as u32);
        while let Some(v) = queue.pop_front() {
            let dv = row[v as usize];
            for &w in &adj[v as usize] {
                if row[w as usize] == UNREACHED {
                    row[w as usize] = dv + 1;
                    queue.push_back(w);
                }
            }
        }
    }
}

/// First spanning tree of `g` (in enumeration order) that is a tree
/// `stretch`-spanner, with diameter at most `max_diam` when given; `None`
/// certifies that no spanning tree qualifies.
pub fn brute_force_spanner(
    g: &Arc<Graph>,
    stretch: u32,
    max_diam: Option<u32>,
    budget: &SearchBudget,
) -> Result<Option<SpanningTree>> {
    if stretch == 0 {
        return Err(Error::InvalidStretch {
            got: 0,
            expected: "stretch must be positive",
        });
    }
    let n = g.vertex_count();
    let host_edges = g.edge_ids();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut dist = vec![0u32; n * n];
    let mut found: Option<Vec<(u32, u32)>> = None;

    enumerate_raw(g, budget, |edges| {
        tree_all_pairs(n, edges, &mut adj, &mut dist);
        let ok_stretch = host_edges
            .iter()
            .all(|&(x, y)| dist[x as usize * n + y as usize] <= stretch);
        if !ok_stretch {
            return ControlFlow::Continue(());
        }
        if let Some(cap) = max_diam {
            let diameter = dist.iter().copied().max().unwrap_or(0);
            if diameter > cap {
                return ControlFlow::Continue(());
            }
        }
        found = Some(edges.to_vec());
        ControlFlow::Break(())
    })?;

    found
        .map(|edges| {
            let labeled: Vec<(String, String)> = edges
                .iter()
                .map(|&(a, b)| (g.label(a).to_string(), g.label(b).to_string()))
                .collect();
            let root = g.label(0).to_string();
            SpanningTree::from_edges(Arc::clone(g), &root, &labeled)
        })
        .transpose()
}

struct SpsCtx<'a> {
    g: &'a Graph,
    stretch: u32,
    dist: &'a [u32],
    parent: Vec<u32>,
    depth: Vec<u32>,
    meter: Meter<'a>,
}

impl SpsCtx<'_> {
    fn tree_distance(&self, mut a: u32, mut b: u32) -> u32 {
        let (mut da, mut db) = (self.depth[a as usize], self.depth[b as usize]);
        let mut steps = 0;
        while da > db {
            a = self.parent[a as usize];
            da -= 1;
            steps += 1;
        }
        while db > da {
            b = self.parent[b as usize];
            db -= 1;
            steps += 1;
        }
        while a != b {
            a = self.parent[a as usize];
            b = self.parent[b as usize];
            steps += 2;
        }
        steps
    }

    /// Every host edge at `v` with both endpoints placed must respect the
    /// stretch; edges to unplaced vertices are checked when those arrive.
    fn edges_ok(&self, v: u32) -> bool {
        self.g
            .adj_ids(v)
            .iter()
            .all(|&w| self.depth[w as usize] == UNREACHED || self.tree_distance(v, w) <= self.stretch)
    }

    /// Splits the unplaced vertices into host-adjacency components,
    /// keeping their placement order within and across components.
    ///
    /// Stretch constraints only couple host-adjacent vertices, so the
    /// components are independent subproblems; solving them separately
    /// stops a dead end in one gadget from re-exploring the
    /// interchangeable choices of another.
    fn split(&self, remaining: &[u32]) -> Vec<Vec<u32>> {
        let mut pos_of = vec![usize::MAX; self.g.vertex_count()];
        for (i, &v) in remaining.iter().enumerate() {
            pos_of[v as usize] = i;
        }
        let mut comp_of = vec![usize::MAX; remaining.len()];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for i in 0..remaining.len() {
            if comp_of[i] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![];
            let mut stack = vec![i];
            comp_of[i] = id;
            while let Some(j) = stack.pop() {
                members.push(j);
                for &w in self.g.adj_ids(remaining[j]) {
                    let pw = pos_of[w as usize];
                    if pw != usize::MAX && comp_of[pw] == usize::MAX {
                        comp_of[pw] = id;
                        stack.push(pw);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        comps
            .into_iter()
            .map(|members| members.into_iter().map(|j| remaining[j]).collect())
            .collect()
    }

    fn solve(&mut self, remaining: &[u32]) -> Result<bool> {
        if remaining.is_empty() {
            return Ok(true);
        }
        let comps = self.split(remaining);
        if comps.len() > 1 {
            for (done, comp) in comps.iter().enumerate() {
                if !self.solve(comp)? {
                    for earlier in &comps[..done] {
                        for &v in earlier {
                            self.depth[v as usize] = UNREACHED;
                        }
                    }
                    return Ok(false);
                }
            }
            return Ok(true);
        }

        let v = remaining[0];
        let want = self.dist[v as usize];
        for i in 0..self.g.adj_ids(v).len() {
            let p = self.g.adj_ids(v)[i];
            // candidates sit one layer below and are always placed already:
            // a host edge makes them part of this component, ahead of v
            if self.dist[p as usize] + 1 != want {
                continue;
            }
            self.meter.node()?;
            self.parent[v as usize] = p;
            self.depth[v as usize] = self.depth[p as usize] + 1;
            if self.edges_ok(v) && self.solve(&remaining[1..])? {
                return Ok(true);
            }
            self.depth[v as usize] = UNREACHED;
        }
        self.parent[v as usize] = UNREACHED;
        Ok(false)
    }
}

/// Searches the shortest-paths-to-`k` spanning trees of `g` for a tree
/// `stretch`-spanner; any find keeps every vertex within tree distance
/// `floor((stretch+1)/2)` of `k` and so has diameter at most `stretch+1`.
///
/// Every vertex at distance d from `k` picks a parent among its neighbors
/// at distance d-1 (lexicographic order, a pair center keeps its edge),
/// and after each placement every fully placed host edge must already
/// respect the stretch. Because a graph with a k-centered tree
/// stretch-spanner of diameter at most stretch+1 also has a shortest-paths
/// one, `None` certifies that no tree stretch-spanner with
/// (stretch+1)-center `k` exists at all.
pub fn sps_tree_search(
    g: &Arc<Graph>,
    k: &Center,
    stretch: u32,
    budget: &SearchBudget,
) -> Result<Option<SpanningTree>> {
    if stretch == 0 {
        return Err(Error::InvalidStretch {
            got: 0,
            expected: "stretch must be positive",
        });
    }
    let k_ids = g.ids_of(&k.labels())?;
    if let [a, b] = k_ids[..] {
        if !g.has_edge_ids(a, b) {
            let l = k.labels();
            return Err(Error::CenterNotAdjacent(l[0].to_string(), l[1].to_string()));
        }
    }
    let dist = g.multi_source_distances(&k_ids);
    if dist.contains(&UNREACHED) {
        return Err(Error::Disconnected);
    }
    // a pair is only a d-center for odd d; a single vertex within the ball
    // works at either parity since its trees stay within diameter stretch+1
    if matches!(k, Center::Pair(_, _)) && (stretch + 1).is_multiple_of(2) {
        return Ok(None);
    }
    if dist.iter().copied().max().unwrap_or(0) > stretch.div_ceil(2) {
        return Ok(None);
    }

    let n = g.vertex_count();
    // Place vertices layer by layer. Within a layer, flood along host
    // adjacency from the least vertex so that neighbors land consecutively:
    // the stretch constraint between same-layer neighbors then prunes
    // immediately instead of after unrelated branching.
    let mut order: Vec<u32> = Vec::new();
    let max_d = dist.iter().copied().max().unwrap_or(0);
    for d in 1..=max_d {
        let mut remaining: Vec<u32> = (0..n as u32).filter(|&v| dist[v as usize] == d).collect();
        let mut in_layer = vec![false; n];
        while !remaining.is_empty() {
            let pick = remaining
                .iter()
                .position(|&v| {
                    g.adj_ids(v)
                        .iter()
                        .any(|&w| dist[w as usize] == d && in_layer[w as usize])
                })
                .unwrap_or(0);
            let v = remaining.remove(pick);
            in_layer[v as usize] = true;
            order.push(v);
        }
    }

    let mut parent = vec![UNREACHED; n];
    let mut depth = vec![UNREACHED; n];
    let root = k_ids[0];
    parent[root as usize] = root;
    depth[root as usize] = 0;
    if let [_, b] = k_ids[..] {
        parent[b as usize] = root;
        depth[b as usize] = 1;
    }

    let mut ctx = SpsCtx {
        g,
        stretch,
        dist: &dist,
        parent,
        depth,
        meter: Meter::new(budget),
    };
    if ctx.solve(&order)? {
        let tree = SpanningTree::from_parent_ids(Arc::clone(g), root, ctx.parent)?;
        debug_assert!(crate::spanner::is_tree_t_spanner(g, &tree, stretch).unwrap());
        debug_assert!(tree.diameter() as u32 <= stretch + 1);
        debug_assert!(
            !k.matches_parity(stretch + 1) || tree.has_center(k, stretch + 1).unwrap()
        );
        Ok(Some(tree))
    } else {
        Ok(None)
    }
}

const SAT_VARIABLE_CAP: usize = 20;

/// Exhaustive satisfiability for tiny instances; a found assignment comes
/// with the first satisfying variable of each clause as its witness.
pub fn brute_force_sat(instance: &CnfInstance) -> Result<Option<TruthAssignment>> {
    let vars = instance.variables();
    if vars.len() > SAT_VARIABLE_CAP {
        return Err(Error::TooManyVariables {
            count: vars.len(),
            cap: SAT_VARIABLE_CAP,
        });
    }
    let index: BTreeMap<&str, usize> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    // clause -> (variable bit, wanted value)
    let compiled: Vec<Vec<(usize, bool)>> = instance
        .clauses()
        .iter()
        .map(|c| {
            c.literals()
                .iter()
                .map(|l| (index[l.variable.as_str()], l.positive))
                .collect()
        })
        .collect();

    for mask in 0u64..(1u64 << vars.len()) {
        let sat = compiled
            .iter()
            .all(|lits| lits.iter().any(|&(bit, want)| (mask >> bit) & 1 == want as u64));
        if !sat {
            continue;
        }
        let values: BTreeMap<String, bool> = vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), (mask >> i) & 1 == 1))
            .collect();
        let witnesses: BTreeMap<usize, String> = instance
            .clauses()
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                let lit = c
                    .first_satisfied_literal(&values)
                    .expect("assignment satisfies every clause");
                (idx, lit.variable.clone())
            })
            .collect();
        return Ok(Some(TruthAssignment {
            values,
            witnesses: Some(witnesses),
        }));
    }
    Ok(None)
}
