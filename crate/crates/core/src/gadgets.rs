//! Hardness gadgets and counterexample families.
//!
//! `build_f` turns a 3-SAT instance into a clause graph that admits a tree
//! 4-spanner of diameter at most 5 iff the instance is satisfiable; the
//! two conversions between satisfying assignments and spanner trees are
//! constructive in both directions. `build_h` attaches a tail that lifts
//! the equivalence to any stretch t >= 5 at diameter t+1, with `lift_tree`
//! and `project_tree` moving witnesses across. The two `counterexample_*`
//! families show that a tree t-spanner whose best center is a
//! (t+2)-center can never be normalized to shortest paths.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::cnf::{CnfInstance, TruthAssignment};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::normalize::violating_set;
use crate::spanner::is_tree_t_spanner;
use crate::tree::{Center, SpanningTree};

/// The 6x8 clause-coverage matrix: three complementary row pairs, and any
/// row subset covering all eight columns contains a complementary pair.
pub const MATRIX_M: [[u8; 8]; 6] = [
    [1, 1, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 1, 1],
    [1, 1, 0, 0, 1, 1, 0, 0],
    [0, 0, 1, 1, 0, 0, 1, 1],
    [1, 0, 1, 0, 1, 0, 1, 0],
    [0, 1, 0, 1, 0, 1, 0, 1],
];

pub fn matrix_m() -> &'static [[u8; 8]; 6] {
    &MATRIX_M
}

const H_LABELS: [&str; 6] = ["u", "v", "hu", "hu'", "hv", "hv'"];

/// Per-clause vertex bookkeeping of the clause graph.
#[derive(Debug, Clone)]
pub struct ClauseGadget {
    /// Index of the clause in the source instance (0-based).
    pub clause_index: usize,
    /// The clause's variables in literal order.
    pub variables: [String; 3],
    /// The per-clause literal copies, `<var>@c<n>`.
    pub copies: [String; 3],
    /// The eight path vertices `q<k>@c<n>`.
    pub qs: [String; 8],
}

impl ClauseGadget {
    /// The row ordering the matrix applies to: variables interleaved with
    /// their copies.
    pub fn g_order(&self) -> [&str; 6] {
        [
            &self.variables[0],
            &self.copies[0],
            &self.variables[1],
            &self.copies[1],
            &self.variables[2],
            &self.copies[2],
        ]
    }
}

/// The clause graph of an instance plus the naming map that ties gadget
/// vertices back to clauses and variables.
#[derive(Debug, Clone)]
pub struct ReductionGraph {
    graph: Arc<Graph>,
    instance: CnfInstance,
    clause_gadgets: Vec<ClauseGadget>,
    filtered: Vec<usize>,
}

impl ReductionGraph {
    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn instance(&self) -> &CnfInstance {
        &self.instance
    }

    /// u, v and the four handle vertices that pin {u, v} as the only
    /// possible 5-center.
    pub fn h_vertices(&self) -> [&'static str; 6] {
        H_LABELS
    }

    /// Gadgets of the retained clauses, in instance order.
    pub fn clause_gadgets(&self) -> &[ClauseGadget] {
        &self.clause_gadgets
    }

    /// Indices of clauses excluded from the construction because they
    /// contain a variable together with its negation.
    pub fn filtered(&self) -> &[usize] {
        &self.filtered
    }
}

/// Builds the clause graph: a 5-edge handle path through u and v, every
/// variable adjacent to both u and v, and one 11-vertex gadget per
/// retained clause wired through the matrix.
pub fn build_f(instance: &CnfInstance) -> Result<ReductionGraph> {
    for var in instance.variables() {
        if H_LABELS.contains(&var.as_str()) || var.contains('@') {
            return Err(Error::InvalidClause(format!(
                "variable name `{var}` collides with reserved gadget labels"
            )));
        }
    }

    let mut vertices: Vec<String> = H_LABELS.iter().map(|s| s.to_string()).collect();
    vertices.extend(instance.variables().iter().cloned());
    let mut edges: Vec<(String, String)> = vec![
        ("hu".into(), "hu'".into()),
        ("hu'".into(), "u".into()),
        ("u".into(), "v".into()),
        ("v".into(), "hv'".into()),
        ("hv'".into(), "hv".into()),
    ];
    for x in instance.variables() {
        edges.push((x.clone(), "u".into()));
        edges.push((x.clone(), "v".into()));
    }

    let mut clause_gadgets = Vec::new();
    let mut filtered = Vec::new();
    for (idx, clause) in instance.clauses().iter().enumerate() {
        if !clause.has_distinct_variables() {
            filtered.push(idx);
            continue;
        }
        let lits = clause.literals();
        if lits[0].variable == lits[1].variable
            || lits[0].variable == lits[2].variable
            || lits[1].variable == lits[2].variable
        {
            return Err(Error::InvalidClause(format!(
                "clause {idx} repeats a variable with one polarity"
            )));
        }
        let tag = idx + 1;
        let variables: [String; 3] = [
            lits[0].variable.clone(),
            lits[1].variable.clone(),
            lits[2].variable.clone(),
        ];
        let copies: [String; 3] = [
            format!("{}@c{tag}", variables[0]),
            format!("{}@c{tag}", variables[1]),
            format!("{}@c{tag}", variables[2]),
        ];
        let qs: [String; 8] = std::array::from_fn(|k| format!("q{}@c{tag}", k + 1));

        let gadget = ClauseGadget {
            clause_index: idx,
            variables,
            copies,
            qs,
        };
        for (i, gv) in gadget.g_order().iter().enumerate() {
            for (j, q) in gadget.qs.iter().enumerate() {
                if MATRIX_M[i][j] == 1 {
                    edges.push((gv.to_string(), q.clone()));
                }
            }
        }
        for (lit, copy) in lits.iter().zip(&gadget.copies) {
            let side = if lit.positive { "u" } else { "v" };
            edges.push((copy.clone(), side.into()));
        }
        for w in gadget.qs.windows(2) {
            edges.push((w[0].clone(), w[1].clone()));
        }
        vertices.extend(gadget.copies.iter().cloned());
        vertices.extend(gadget.qs.iter().cloned());
        clause_gadgets.push(gadget);
    }

    let graph = Arc::new(Graph::from_parts(vertices, edges)?);
    Ok(ReductionGraph {
        graph,
        instance: instance.clone(),
        clause_gadgets,
        filtered,
    })
}

/// Builds the spanner tree of a satisfying assignment: each variable hangs
/// from u or v by its value, the handle path stays whole, and per clause
/// the witness variable and its copy pick up all eight q vertices through
/// their complementary matrix rows.
///
/// The result is a tree 4-spanner of the clause graph with diameter at
/// most 5 and 5-center {u, v}.
pub fn tree_from_assignment(f: &ReductionGraph, a: &TruthAssignment) -> Result<SpanningTree> {
    let witnesses = a.witnesses.as_ref().ok_or_else(|| {
        Error::precondition("the assignment carries no per-clause witnesses")
    })?;
    for x in f.instance.variables() {
        if !a.values.contains_key(x) {
            return Err(Error::precondition(format!(
                "variable `{x}` has no assigned value"
            )));
        }
    }

    let mut parents: BTreeMap<String, String> = BTreeMap::new();
    parents.insert("v".into(), "u".into());
    parents.insert("hu'".into(), "u".into());
    parents.insert("hu".into(), "hu'".into());
    parents.insert("hv'".into(), "v".into());
    parents.insert("hv".into(), "hv'".into());
    for x in f.instance.variables() {
        let side = if a.values[x] { "u" } else { "v" };
        parents.insert(x.clone(), side.into());
    }

    for gadget in &f.clause_gadgets {
        let clause = &f.instance.clauses()[gadget.clause_index];
        let witness = witnesses.get(&gadget.clause_index).ok_or_else(|| {
            Error::precondition(format!(
                "clause {} has no witness variable",
                gadget.clause_index
            ))
        })?;
        let pos = clause
            .literals()
            .iter()
            .position(|l| &l.variable == witness)
            .ok_or_else(|| {
                Error::precondition(format!(
                    "witness `{witness}` does not occur in clause {}",
                    gadget.clause_index
                ))
            })?;
        let lit = &clause.literals()[pos];
        if a.values[&lit.variable] != lit.positive {
            return Err(Error::UnsatisfiedClause {
                index: gadget.clause_index,
            });
        }

        for (l, copy) in clause.literals().iter().zip(&gadget.copies) {
            let side = if l.positive { "u" } else { "v" };
            parents.insert(copy.clone(), side.into());
        }
        // rows 2*pos and 2*pos+1 are complementary, so every q vertex gets
        // exactly one parent among the witness variable and its copy
        for (j, q) in gadget.qs.iter().enumerate() {
            let parent = if MATRIX_M[2 * pos][j] == 1 {
                &gadget.variables[pos]
            } else {
                debug_assert_eq!(MATRIX_M[2 * pos + 1][j], 1);
                &gadget.copies[pos]
            };
            parents.insert(q.clone(), parent.clone());
        }
    }

    let tree = SpanningTree::from_parent_map(Arc::clone(&f.graph), "u", &parents)?;
    debug_assert!(is_tree_t_spanner(&f.graph, &tree, 4)?);
    debug_assert!(tree.diameter() <= 5);
    Ok(tree)
}

/// Reads a satisfying assignment off a shortest-paths tree 4-spanner of
/// diameter at most 5: a variable is true iff it hangs from u.
///
/// The tree must already be shortest-paths to {u, v}; normalize first
/// otherwise. Witnesses record the first satisfied literal per clause.
pub fn assignment_from_tree(f: &ReductionGraph, t4: &SpanningTree) -> Result<TruthAssignment> {
    let g = &f.graph;
    if !is_tree_t_spanner(g, t4, 4)? {
        return Err(Error::precondition(
            "the tree is not a tree 4-spanner of the clause graph",
        ));
    }
    let k = Center::pair("u", "v")?;
    if !t4.has_center(&k, 5)? {
        return Err(Error::precondition(
            "{u,v} is not a 5-center of the tree (diameter must be at most 5 with edge u-v present)",
        ));
    }
    if !violating_set(g, t4, &k)?.is_empty() {
        return Err(Error::precondition(
            "the tree is not shortest-paths to {u,v}; normalize it first",
        ));
    }

    let mut values: BTreeMap<String, bool> = BTreeMap::new();
    for x in f.instance.variables() {
        match (t4.contains_edge(x, "u"), t4.contains_edge(x, "v")) {
            (true, false) => values.insert(x.clone(), true),
            (false, true) => values.insert(x.clone(), false),
            _ => {
                return Err(Error::precondition(format!(
                    "exactly one of `{x}`-u and `{x}`-v must be a tree edge"
                )))
            }
        };
    }

    let mut witnesses: BTreeMap<usize, String> = BTreeMap::new();
    for (idx, clause) in f.instance.clauses().iter().enumerate() {
        let Some(lit) = clause.first_satisfied_literal(&values) else {
            return Err(Error::UnsatisfiedClause { index: idx });
        };
        witnesses.insert(idx, lit.variable.clone());
    }
    Ok(TruthAssignment {
        values,
        witnesses: Some(witnesses),
    })
}

/// The tail attached between u and v: a path of length t-3 whose middle
/// carries two pendant paths of length floor((t+1)/2), pinning the middle
/// as the only possible (t+1)-center.
#[derive(Debug, Clone)]
pub struct TailGadget {
    pub stretch: u32,
    /// The u,v-path r_1 .. r_{t-2} including its endpoints u and v.
    pub p_vertices: Vec<String>,
    /// First pendant path, starting at its attachment vertex on the path.
    pub p1: Vec<String>,
    /// Second pendant path; for odd stretch it shares the attachment
    /// vertex with the first.
    pub p2: Vec<String>,
    /// The (t+1)-center K' in the middle of the path.
    pub center: Center,
}

impl TailGadget {
    /// Every tail edge: the u,v-path plus both pendant paths.
    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for seq in [&self.p_vertices, &self.p1, &self.p2] {
            for w in seq.windows(2) {
                out.push((w[0].clone(), w[1].clone()));
            }
        }
        out
    }

    /// Labels created by the tail (everything except u and v).
    pub fn new_vertices(&self) -> Vec<String> {
        let mut out: BTreeSet<String> = BTreeSet::new();
        for seq in [&self.p_vertices, &self.p1, &self.p2] {
            out.extend(seq.iter().cloned());
        }
        out.remove("u");
        out.remove("v");
        out.into_iter().collect()
    }
}

/// Attaches the stretch-lifting tail to the clause graph; the union shares
/// exactly {u, v} with it.
pub fn build_h(f: &ReductionGraph, t: u32) -> Result<(Arc<Graph>, TailGadget)> {
    if t < 5 {
        return Err(Error::InvalidStretch {
            got: t,
            expected: "the tail gadget needs stretch at least 5",
        });
    }
    let r_label = |i: u32| -> String {
        if i == 1 {
            "u".into()
        } else if i == t - 2 {
            "v".into()
        } else {
            format!("r{i}@tail")
        }
    };
    let m1 = (t - 1) / 2;
    let m2 = t / 2; // = ceil((t-1)/2)
    let pendant_len = t.div_ceil(2);

    let p_vertices: Vec<String> = (1..=t - 2).map(r_label).collect();
    let p1: Vec<String> = std::iter::once(r_label(m1))
        .chain((1..=pendant_len).map(|i| format!("p1_{i}@tail")))
        .collect();
    let p2: Vec<String> = std::iter::once(r_label(m2))
        .chain((1..=pendant_len).map(|i| format!("p2_{i}@tail")))
        .collect();
    let center = if t % 2 == 1 {
        Center::single(r_label(m1))
    } else {
        Center::pair(r_label(m1), r_label(m2))?
    };
    let tail = TailGadget {
        stretch: t,
        p_vertices,
        p1,
        p2,
        center,
    };

    let mut vertices: Vec<String> = f.graph.vertices().map(str::to_string).collect();
    vertices.extend(tail.new_vertices());
    let mut edges: Vec<(String, String)> = f
        .graph
        .edges()
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    edges.extend(tail.edges());
    let graph = Arc::new(Graph::from_parts(vertices, edges)?);
    Ok((graph, tail))
}

/// Lifts a tree 4-spanner of the clause graph to a tree t-spanner of the
/// tailed graph: the edge u-v is traded for the whole tail, whose middle
/// becomes the (t+1)-center.
pub fn lift_tree(f: &ReductionGraph, t4: &SpanningTree, t: u32) -> Result<SpanningTree> {
    if !t4.contains_edge("u", "v") {
        return Err(Error::precondition("edge u-v must be a tree edge"));
    }
    if !is_tree_t_spanner(&f.graph, t4, 4)? {
        return Err(Error::precondition(
            "the tree is not a tree 4-spanner of the clause graph",
        ));
    }
    let k = Center::pair("u", "v")?;
    if !t4.has_center(&k, 5)? {
        return Err(Error::precondition("{u,v} is not a 5-center of the tree"));
    }

    let (h, tail) = build_h(f, t)?;
    let mut edges: Vec<(String, String)> = t4
        .edges()
        .into_iter()
        .filter(|(a, b)| !(a == "u" && b == "v"))
        .collect();
    edges.extend(tail.edges());
    let root = tail.center.labels()[0].to_string();
    let lifted = SpanningTree::from_edges(Arc::clone(&h), &root, &edges)?;
    debug_assert!(is_tree_t_spanner(&h, &lifted, t)?);
    debug_assert!(lifted.diameter() as u32 <= t + 1);
    Ok(lifted)
}

/// Projects a shortest-paths tree t-spanner of the tailed graph back to a
/// tree 4-spanner of the clause graph: its edges inside the clause graph
/// plus the edge u-v.
pub fn project_tree(f: &ReductionGraph, t_big: &SpanningTree, t: u32) -> Result<SpanningTree> {
    let (h, tail) = build_h(f, t)?;
    if *t_big.host() != *h {
        return Err(Error::precondition(
            "the tree does not span the tailed graph for this stretch",
        ));
    }
    if !is_tree_t_spanner(&h, t_big, t)? {
        return Err(Error::precondition(format!(
            "the tree is not a tree {t}-spanner of the tailed graph"
        )));
    }
    if !t_big.has_center(&tail.center, t + 1)? {
        return Err(Error::precondition(format!(
            "`{}` is not a {}-center of the tree",
            tail.center,
            t + 1
        )));
    }
    if !violating_set(&h, t_big, &tail.center)?.is_empty() {
        return Err(Error::precondition(
            "the tree is not shortest-paths to the tail center; normalize it first",
        ));
    }
    // with shortest paths to the middle of the tail, the whole tail lies
    // in the tree and u-v does not
    debug_assert!(tail.edges().iter().all(|(a, b)| t_big.contains_edge(a, b)));
    debug_assert!(!t_big.contains_edge("u", "v"));

    let mut edges: Vec<(String, String)> = t_big
        .edges()
        .into_iter()
        .filter(|(a, b)| f.graph.contains_vertex(a) && f.graph.contains_vertex(b))
        .collect();
    edges.push(("u".into(), "v".into()));
    let projected = SpanningTree::from_edges(Arc::clone(&f.graph), "u", &edges)?;
    debug_assert!(is_tree_t_spanner(&f.graph, &projected, 4)?);
    debug_assert!(projected.diameter() <= 5);
    Ok(projected)
}

fn norm_edge(a: &str, b: &str) -> (String, String) {
    if a < b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

fn designated_tree(
    g: &Arc<Graph>,
    removed: &[(String, String)],
    root: &str,
) -> Result<SpanningTree> {
    let removed: BTreeSet<(String, String)> = removed.iter().cloned().collect();
    for (a, b) in &removed {
        debug_assert!(g.has_edge(a, b), "removal `{a}`-`{b}` is not an edge");
    }
    let edges: Vec<(String, String)> = g
        .edges()
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .filter(|e| !removed.contains(e))
        .collect();
    SpanningTree::from_edges(Arc::clone(g), root, &edges)
}

/// The odd-stretch family: two (t+2)-cycles through the edge u-v, chords
/// closing the x- and y-runs, and two length-(t-1) feeler paths. The
/// designated tree is a tree t-spanner whose pair {u, v} is a
/// (t+2)-center, yet no tree t-spanner of the graph has a (t+1)-center.
pub fn counterexample_odd(t: u32) -> Result<(Arc<Graph>, SpanningTree, Center)> {
    if t < 3 || t.is_multiple_of(2) {
        return Err(Error::InvalidStretch {
            got: t,
            expected: "the odd counterexample family needs odd stretch at least 3",
        });
    }
    let x = |i: u32| format!("x{i}");
    let y = |i: u32| format!("y{i}");
    // the feeler paths end at x1 and y1 respectively
    let wl = |i: u32| if i == t - 1 { x(1) } else { format!("w{i}") };
    let zl = |i: u32| if i == t - 1 { y(1) } else { format!("z{i}") };

    let mut edges: Vec<(String, String)> = vec![("u".into(), "v".into())];
    edges.push(("u".into(), x(1)));
    for i in 1..t {
        edges.push((x(i), x(i + 1)));
    }
    edges.push((x(t), "v".into()));
    edges.push(("v".into(), y(1)));
    for i in 1..t {
        edges.push((y(i), y(i + 1)));
    }
    edges.push((y(t), "u".into()));
    edges.push((x(1), x(t)));
    edges.push((y(1), y(t)));
    edges.push(("u".into(), wl(1)));
    for i in 1..t - 1 {
        edges.push((wl(i), wl(i + 1)));
    }
    edges.push(("v".into(), zl(1)));
    for i in 1..t - 1 {
        edges.push((zl(i), zl(i + 1)));
    }

    let g = Arc::new(Graph::from_edges(edges)?);
    let lo = t / 2; // floor
    let hi = t / 2 + 1; // ceil, t odd
    let removed = vec![
        norm_edge("v", &x(t)),
        norm_edge("u", &y(t)),
        norm_edge(&x(hi), &x(hi + 1)),
        norm_edge(&y(hi), &y(hi + 1)),
        norm_edge(&wl(lo), &wl(hi)),
        norm_edge(&zl(lo), &zl(hi)),
    ];
    let tree = designated_tree(&g, &removed, "u")?;
    debug_assert!(is_tree_t_spanner(&g, &tree, t)?);
    let center = Center::pair("u", "v")?;
    debug_assert!(tree.has_center(&center, t + 2)?);
    Ok((g, tree, center))
}

/// The even-stretch family: two (t+2)-cycles sharing only u, chords
/// closing the x- and y-runs, and a length-(t-1) path joining x1 to y1.
/// The designated tree is a tree t-spanner with u as a (t+2)-center, yet
/// no tree t-spanner of the graph has a (t+1)-center.
pub fn counterexample_even(t: u32) -> Result<(Arc<Graph>, SpanningTree, Center)> {
    if t < 2 || t % 2 == 1 {
        return Err(Error::InvalidStretch {
            got: t,
            expected: "the even counterexample family needs even stretch at least 2",
        });
    }
    let x = |i: u32| format!("x{i}");
    let y = |i: u32| format!("y{i}");
    // the crossbar runs from x1 to y1
    let wl = |i: u32| {
        if i == 1 {
            x(1)
        } else if i == t {
            y(1)
        } else {
            format!("w{i}")
        }
    };

    let mut edges: Vec<(String, String)> = vec![("u".into(), x(1))];
    for i in 1..=t {
        edges.push((x(i), x(i + 1)));
    }
    edges.push((x(t + 1), "u".into()));
    edges.push(("u".into(), y(1)));
    for i in 1..=t {
        edges.push((y(i), y(i + 1)));
    }
    edges.push((y(t + 1), "u".into()));
    edges.push((x(1), x(t + 1)));
    edges.push((y(1), y(t + 1)));
    for i in 1..t {
        edges.push((wl(i), wl(i + 1)));
    }

    let g = Arc::new(Graph::from_edges(edges)?);
    let half = t / 2;
    let removed = vec![
        norm_edge("u", &x(t + 1)),
        norm_edge("u", &y(t + 1)),
        norm_edge(&x(half + 1), &x(half + 2)),
        norm_edge(&y(half + 1), &y(half + 2)),
        norm_edge(&wl(half), &wl(half + 1)),
    ];
    let tree = designated_tree(&g, &removed, "u")?;
    debug_assert!(is_tree_t_spanner(&g, &tree, t)?);
    let center = Center::single("u");
    debug_assert!(tree.has_center(&center, t + 2)?);
    Ok((g, tree, center))
}
