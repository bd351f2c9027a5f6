//! Batch command-line surface over the treespan library.
//!
//! Every subcommand is a thin wrapper around one library call; stdout
//! carries the result in the chosen format, diagnostics go to stderr, and
//! the exit code reports the decision: 0 found/yes, 1 not-found/no, 2
//! invalid input, 3 budget exhausted.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use treespan::graph::Graph;
use treespan::io;
use treespan::{
    brute_force_sat, brute_force_spanner, build_f, build_h, counterexample_even,
    counterexample_odd, decide_tree3_diam4, find_t_centers, is_t_star, is_tree_t_spanner,
    normalize_shortest_paths, sps_tree_search, Center, Error, SearchBudget, SpanningTree,
};

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    El,
    Json,
    Dot,
}

#[derive(Parser)]
#[command(
    name = "treespan",
    version,
    about = "Decide, construct and verify tree t-spanners of diameter at most t+1"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FormatArg {
    /// Output format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct BudgetArgs {
    /// Cap on backtracking nodes.
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Cap on enumerated spanning trees.
    #[arg(long)]
    max_trees: Option<u64>,
    /// Wall-clock bound in seconds.
    #[arg(long)]
    timeout: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        let mut b = SearchBudget::default();
        if let Some(n) = self.max_nodes {
            b = b.with_max_nodes(n);
        }
        if let Some(n) = self.max_trees {
            b = b.with_max_trees(n);
        }
        if let Some(s) = self.timeout {
            b = b.with_timeout(Duration::from_secs(s));
        }
        b
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check that a tree file holds a tree t-spanner of a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        t: u32,
        /// Additionally require a tree diameter bound.
        #[arg(long)]
        max_diam: Option<u32>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// List the t-centers of a graph and decide whether it is a t-star.
    Tstar {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: u32,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Decide whether a graph has a tree 3-spanner of diameter at most 4.
    Decide3d4 {
        #[arg(long)]
        graph: PathBuf,
        /// Write the witness tree to a file (tree format).
        #[arg(long)]
        emit_tree: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Rebuild a centered tree t-spanner into a shortest-paths one.
    Normalize {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        t: u32,
        /// One label, or two comma-separated labels of an adjacent pair.
        #[arg(long)]
        center: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Construct gadget graphs.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Brute-force satisfiability of a DIMACS 3-CNF instance.
    Sat {
        #[arg(long)]
        cnf: PathBuf,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Exhaustive ground-truth searches.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum GenCommand {
    /// The stretch-t family whose best spanner center is a (t+2)-center;
    /// the family parity follows t.
    Counterexample {
        #[arg(long)]
        t: u32,
        /// Write the graph to a file (edge-list format).
        #[arg(long)]
        out_graph: Option<PathBuf>,
        /// Write the designated tree to a file (tree format).
        #[arg(long)]
        out_tree: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// The clause graph of a 3-CNF instance, optionally with the tail
    /// that lifts the equivalence to stretch t >= 5.
    Reduction {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        t: Option<u32>,
        /// Write the graph to a file (edge-list format).
        #[arg(long)]
        out_graph: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Enumerate spanning trees for one passing the stretch (and
    /// diameter) bounds.
    Spanner {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        max_diam: Option<u32>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Search the shortest-paths-to-center spanning trees.
    Sps {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: u32,
        /// One label, or two comma-separated labels of an adjacent pair.
        #[arg(long)]
        center: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        format: FormatArg,
    },
}

fn read_file(path: &Path) -> treespan::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })
}

fn write_file(path: &Path, contents: &str) -> treespan::Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot write {}: {e}", path.display()),
    })
}

/// Graph inputs may be edge-list, JSON or DOT; the leading characters
/// decide.
fn load_graph(path: &Path) -> treespan::Result<Arc<Graph>> {
    let text = read_file(path)?;
    let head = text.trim_start();
    let g = if head.starts_with('{') {
        io::parse_graph_json(&text)?
    } else if head.starts_with("graph") {
        io::parse_dot(&text)?
    } else {
        io::parse_edge_list(&text)?
    };
    Ok(Arc::new(g))
}

fn load_tree(path: &Path, host: &Arc<Graph>) -> treespan::Result<SpanningTree> {
    let text = read_file(path)?;
    if text.trim_start().starts_with('{') {
        io::parse_tree_json(&text, host)
    } else {
        io::parse_tree(&text, host)
    }
}

fn parse_center(spec: &str) -> treespan::Result<Center> {
    let labels: Vec<&str> = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    match labels.as_slice() {
        [one] => Ok(Center::single(*one)),
        [a, b] => Center::pair(*a, *b),
        _ => Err(Error::Precondition(format!(
            "--center takes one label or two comma-separated labels, got `{spec}`"
        ))),
    }
}

fn unsupported(format: Format, what: &str) -> treespan::Result<()> {
    Err(Error::Precondition(format!(
        "--format {} is not available for {what}",
        match format {
            Format::El => "el",
            Format::Json => "json",
            Format::Dot => "dot",
        }
    )))
}

fn graph_json(g: &Graph) -> Value {
    serde_json::from_str(&io::emit_graph_json(g)).expect("canonical graph JSON")
}

fn tree_json(t: &SpanningTree) -> Value {
    serde_json::from_str(&io::emit_tree_json(t)).expect("canonical tree JSON")
}

/// Prints a decided tree in the chosen format: tree text, a JSON payload,
/// or a DOT overlay over its host graph.
fn print_tree(status: &str, tree: &SpanningTree, extra: Value, format: Format) {
    match format {
        Format::El => print!("{}", io::emit_tree(tree)),
        Format::Dot => print!("{}", io::emit_dot(tree.host(), Some(tree))),
        Format::Json => {
            let mut payload = json!({
                "status": status,
                "tree": tree_json(tree),
            });
            if let (Value::Object(map), Value::Object(extra)) = (&mut payload, extra) {
                map.extend(extra);
            }
            println!("{payload}");
        }
    }
}

fn print_not_found(format: Format, detail: &str) {
    match format {
        Format::Json => println!("{}", json!({"status": "not-found", "detail": detail})),
        _ => eprintln!("{detail}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget_exhausted() { 3 } else { 2 })
        }
    }
}

fn run(command: Command) -> treespan::Result<u8> {
    match command {
        Command::Verify {
            graph,
            tree,
            t,
            max_diam,
            format,
        } => {
            let g = load_graph(&graph)?;
            let tree = load_tree(&tree, &g)?;
            let stretch_ok = is_tree_t_spanner(&g, &tree, t)?;
            let diameter = tree.diameter();
            let diam_ok = max_diam.is_none_or(|cap| diameter as u32 <= cap);
            let verified = stretch_ok && diam_ok;
            match format.format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "status": if verified { "found" } else { "not-found" },
                        "stretch_ok": stretch_ok,
                        "diameter": diameter,
                        "diameter_ok": diam_ok,
                    })
                ),
                Format::El => println!(
                    "{}",
                    if verified { "verified" } else { "not a valid spanner" }
                ),
                Format::Dot => print!("{}", io::emit_dot(&g, Some(&tree))),
            }
            Ok(if verified { 0 } else { 1 })
        }

        Command::Tstar { graph, t, format } => {
            let g = load_graph(&graph)?;
            let centers = find_t_centers(&g, t)?;
            let star = is_t_star(&g, t)?;
            match format.format {
                Format::Json => {
                    let list: Vec<Vec<&str>> = centers.iter().map(|c| c.labels()).collect();
                    println!(
                        "{}",
                        json!({
                            "status": if star { "found" } else { "not-found" },
                            "t": t,
                            "is_t_star": star,
                            "centers": list,
                        })
                    );
                }
                Format::El => {
                    for c in &centers {
                        println!("{c}");
                    }
                }
                Format::Dot => unsupported(format.format, "tstar")?,
            }
            Ok(if star { 0 } else { 1 })
        }

        Command::Decide3d4 {
            graph,
            emit_tree,
            format,
        } => {
            let g = load_graph(&graph)?;
            match decide_tree3_diam4(&g)? {
                Some(witness) => {
                    if let Some(path) = emit_tree {
                        write_file(&path, &io::emit_tree(&witness.tree))?;
                    }
                    let assignment: Vec<Value> = witness
                        .assignment
                        .iter()
                        .map(|(comp, cover)| json!({"component": comp, "cover": cover}))
                        .collect();
                    print_tree(
                        "found",
                        &witness.tree,
                        json!({"hub": witness.hub, "assignment": assignment}),
                        format.format,
                    );
                    Ok(0)
                }
                None => {
                    print_not_found(format.format, "no tree 3-spanner of diameter at most 4");
                    Ok(1)
                }
            }
        }

        Command::Normalize {
            graph,
            tree,
            t,
            center,
            format,
        } => {
            let g = load_graph(&graph)?;
            let tree = load_tree(&tree, &g)?;
            let k = parse_center(&center)?;
            let (normalized, report) = normalize_shortest_paths(&g, &tree, t, &k)?;
            if format.format != Format::Json {
                eprintln!(
                    "{} violating vertices, {} swaps",
                    report.violating.len(),
                    report.swaps.len()
                );
            }
            print_tree(
                "found",
                &normalized,
                json!({"report": io::report_json(&report)}),
                format.format,
            );
            Ok(0)
        }

        Command::Gen(GenCommand::Counterexample {
            t,
            out_graph,
            out_tree,
            format,
        }) => {
            let (g, tree, center) = if t % 2 == 1 {
                counterexample_odd(t)?
            } else {
                counterexample_even(t)?
            };
            if let Some(path) = out_graph {
                write_file(&path, &io::emit_edge_list(&g))?;
            }
            if let Some(path) = out_tree {
                write_file(&path, &io::emit_tree(&tree))?;
            }
            match format.format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "status": "found",
                        "graph": graph_json(&g),
                        "tree": tree_json(&tree),
                        "center": center.labels(),
                    })
                ),
                Format::El => {
                    println!("# graph ({} vertices)", g.vertex_count());
                    print!("{}", io::emit_edge_list(&g));
                    println!("# designated tree, center {center}");
                    print!("{}", io::emit_tree(&tree));
                }
                Format::Dot => print!("{}", io::emit_dot(&g, Some(&tree))),
            }
            Ok(0)
        }

        Command::Gen(GenCommand::Reduction {
            cnf,
            t,
            out_graph,
            format,
        }) => {
            let instance = treespan::cnf::parse_dimacs(&read_file(&cnf)?)?;
            let f = build_f(&instance)?;
            let (graph, tail) = match t {
                Some(t) => {
                    let (h, tail) = build_h(&f, t)?;
                    (h, Some(tail))
                }
                None => (Arc::clone(f.graph()), None),
            };
            if let Some(path) = out_graph {
                write_file(&path, &io::emit_edge_list(&graph))?;
            }
            match format.format {
                Format::Json => {
                    let clauses: Vec<Value> = f
                        .clause_gadgets()
                        .iter()
                        .map(|cg| {
                            json!({
                                "clause": cg.clause_index,
                                "variables": cg.variables,
                                "copies": cg.copies,
                                "qs": cg.qs,
                            })
                        })
                        .collect();
                    let mut payload = json!({
                        "status": "found",
                        "graph": graph_json(&graph),
                        "h_vertices": f.h_vertices(),
                        "clauses": clauses,
                        "filtered": f.filtered(),
                    });
                    if let Some(tail) = tail {
                        payload["tail"] = json!({
                            "center": tail.center.labels(),
                            "path": tail.p_vertices,
                            "pendant1": tail.p1,
                            "pendant2": tail.p2,
                        });
                    }
                    println!("{payload}");
                }
                Format::El => print!("{}", io::emit_edge_list(&graph)),
                Format::Dot => print!("{}", io::emit_dot(&graph, None)),
            }
            Ok(0)
        }

        Command::Sat { cnf, format } => {
            let instance = treespan::cnf::parse_dimacs(&read_file(&cnf)?)?;
            match brute_force_sat(&instance)? {
                Some(assignment) => {
                    match format.format {
                        Format::Json => println!(
                            "{}",
                            json!({
                                "status": "found",
                                "assignment": io::assignment_json(&assignment),
                            })
                        ),
                        Format::El => {
                            for (var, value) in &assignment.values {
                                println!("{var} {value}");
                            }
                        }
                        Format::Dot => unsupported(format.format, "sat")?,
                    }
                    Ok(0)
                }
                None => {
                    print_not_found(format.format, "unsatisfiable");
                    Ok(1)
                }
            }
        }

        Command::Oracle(OracleCommand::Spanner {
            graph,
            t,
            max_diam,
            budget,
            format,
        }) => {
            let g = load_graph(&graph)?;
            oracle_outcome(
                brute_force_spanner(&g, t, max_diam, &budget.budget()),
                format.format,
            )
        }

        Command::Oracle(OracleCommand::Sps {
            graph,
            t,
            center,
            budget,
            format,
        }) => {
            let g = load_graph(&graph)?;
            let k = parse_center(&center)?;
            oracle_outcome(sps_tree_search(&g, &k, t, &budget.budget()), format.format)
        }
    }
}

/// Folds a search result into output and exit code, keeping "no such
/// tree" (1) apart from "the search gave up" (3).
fn oracle_outcome(
    outcome: treespan::Result<Option<SpanningTree>>,
    format: Format,
) -> treespan::Result<u8> {
    match outcome {
        Ok(Some(tree)) => {
            print_tree("found", &tree, json!({}), format);
            Ok(0)
        }
        Ok(None) => {
            print_not_found(format, "no qualifying spanning tree exists");
            Ok(1)
        }
        Err(e) if e.is_budget_exhausted() => {
            if format == Format::Json {
                println!(
                    "{}",
                    json!({"status": "budget-exhausted", "detail": e.to_string()})
                );
            } else {
                eprintln!("{e}");
            }
            Ok(3)
        }
        Err(e) => Err(e),
    }
}
