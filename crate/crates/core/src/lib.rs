//! Tree t-spanners of diameter at most t+1.
//!
//! A tree t-spanner of a graph G is a spanning tree in which every pair of
//! vertices is at most t times as far apart as in G. This crate decides,
//! constructs and verifies tree t-spanners whose own diameter is at most
//! t+1:
//!
//! - [`spanner`] — t-centers, t-stars, t-midsts, the spanner predicate and
//!   BFS trees from a center;
//! - [`normalize`] — edge-swap conversion of a centered tree t-spanner into
//!   a shortest-paths-to-center one;
//! - [`diam4`] — a polynomial decider with witness for tree 3-spanners of
//!   diameter at most 4, plus the trivial stretch 0 and 1 cases;
//! - [`gadgets`] — hardness gadgets: the counterexample families, the
//!   clause graph built from a 3-CNF instance, its stretch-lifting tail,
//!   and the conversions between satisfying assignments and spanner trees;
//! - [`oracle`] — exhaustive ground truth: spanning-tree enumeration,
//!   center-constrained shortest-paths tree search and a tiny SAT solver;
//! - [`io`] — edge-list, tree, JSON and DOT formats.

pub mod cnf;
pub mod diam4;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod normalize;
pub mod oracle;
pub mod spanner;
pub mod tree;

pub use cnf::{Clause, CnfInstance, Literal, TruthAssignment};
pub use diam4::{decide_small_t, decide_tree3_diam4, Diam4Witness};
pub use error::{BudgetResource, Error, Result};
pub use gadgets::{
    assignment_from_tree, build_f, build_h, counterexample_even, counterexample_odd, lift_tree,
    matrix_m, project_tree, tree_from_assignment, ReductionGraph, TailGadget,
};
pub use graph::Graph;
pub use normalize::{normalize_shortest_paths, violating_set, ViolationReport};
pub use oracle::{
    brute_force_sat, brute_force_spanner, enumerate_spanning_trees, for_each_spanning_tree,
    sps_tree_search, SearchBudget,
};
pub use spanner::{
    bfs_tree_from_center, check_midst_separation, find_t_centers, is_t_star, is_tree_t_spanner,
    no_adjacent_pair_at_distance, t_midsts, Midst,
};
pub use tree::{Center, SpanningTree};
