use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cubic_paths::block::{
    assemble_bound, growth_factor_of, solve_block, BlockInstance, BlockValues, Budget, GrowthReport,
};
use cubic_paths::format::{parse_graph, write_block_solution, write_graph};
use cubic_paths::hamiltonize::{hamiltonize, tree_sort, MoveKind};
use cubic_paths::report::{Provenance, ReportDocument};
use cubic_paths::rho::{decode, encode, validity_report};
use cubic_paths::search::{check_conjecture_with_budget, find_extremal, Conjecture, Prune, SearchSpec};
use cubic_paths::{count_paths, tuple_mu, BigUint, Dag, RhoTuple, TupleClass};
use serde_json::json;

#[derive(Parser)]
#[command(name = "cubic-paths", version, about = "Path counts on acyclic 3-regular digraphs")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Reserved; every algorithm is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Node budget for searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Exit with status 2 when a search is cut short by the budget.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Source-to-sink path count and per-vertex counts of a graph file.
    Count { file: PathBuf },
    /// Rewrite a 3-regular graph onto a Hamiltonian path.
    Hamiltonize {
        file: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Decode, encode, count or validate rho-tuples.
    #[command(subcommand)]
    Tuple(TupleCommand),
    /// Exhaustive search for the maximum path count.
    Search(SearchArgs),
    /// Exact block optimisation.
    Block(BlockArgs),
    /// Assemble the growth bound over a window of block lengths.
    Bound {
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        range: Vec<usize>,
        /// CSV with `k,f` columns supplying the block optima.
        #[arg(long)]
        values: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TupleCommand {
    Decode {
        tuple: String,
        #[arg(long, default_value = "boundary")]
        class: TupleClass,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    Encode { file: PathBuf },
    Mu {
        tuple: String,
        #[arg(long, default_value = "boundary")]
        class: TupleClass,
    },
    Validate {
        tuple: String,
        #[arg(long, default_value = "boundary")]
        class: TupleClass,
        #[arg(long, default_value_t = 1)]
        conn: usize,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Tuple length; with `--check`, half the number of vertices.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "boundary")]
    class: TupleClass,
    #[arg(long, default_value_t = 1)]
    conn: usize,
    #[arg(long)]
    simple: bool,
    #[arg(long, value_delimiter = ',')]
    prune: Vec<PruneArg>,
    /// Compare against a closed form: conn, two-ec, fibonacci, simple-conn, simple-two-ec.
    #[arg(long)]
    check: Option<Conjecture>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PruneArg {
    Lemma4,
    Lemma5,
}

#[derive(Args)]
struct BlockArgs {
    #[arg(long, conflicts_with = "range")]
    k: Option<usize>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    range: Vec<usize>,
    /// Where to write the `k,f,g2` table in range mode.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Where to write the optimal block as a graph file.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

struct Outcome {
    text: String,
    doc: ReportDocument,
    incomplete: bool,
}

#[derive(Debug)]
struct Invalid(String);

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => print!("{}", out.doc.to_json()),
            }
            if out.incomplete && cli.strict {
                eprintln!("search incomplete: budget exhausted");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Count { file } => cmd_count(file),
        Command::Hamiltonize { file, output } => cmd_hamiltonize(file, output.as_deref()),
        Command::Tuple(t) => cmd_tuple(t),
        Command::Search(a) => cmd_search(a, cli.budget),
        Command::Block(a) => cmd_block(a, cli.budget),
        Command::Bound { range, values } => cmd_bound(range, values.as_deref(), cli.budget),
    }
}

fn read_graph(path: &Path) -> Result<Dag> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).map_err(|diags| {
        let lines: Vec<String> = diags.iter().map(|d| format!("{}:{d}", path.display())).collect();
        anyhow!(Invalid(lines.join("\n")))
    })
}

fn emit(path: Option<&Path>, text: &str) -> Result<String> {
    match path {
        Some(p) => {
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
            Ok(String::new())
        }
        None => Ok(text.to_string()),
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_count(file: &Path) -> Result<Outcome> {
    let dag = read_graph(file)?;
    let counts = count_paths(&dag)?;
    let text = format!("total {}\nmu {}\n", counts.total, join(&counts.mu));
    let doc = ReportDocument::new(
        "count",
        json!({ "file": file.display().to_string() }),
        json!({ "total": counts.total.to_string(), "mu": counts.mu.iter().map(|m| m.to_string()).collect::<Vec<_>>() }),
    )?;
    Ok(Outcome { text, doc, incomplete: false })
}

fn cmd_hamiltonize(file: &Path, output: Option<&Path>) -> Result<Outcome> {
    let dag = read_graph(file)?;
    let sorted = tree_sort(&dag)?;
    let (out, log) = hamiltonize(&dag)?;
    let before = count_paths(&sorted)?;
    let after = count_paths(&out)?;
    if before.mu.iter().zip(&after.mu).any(|(b, a)| a < b) {
        bail!(
            "path counts decreased\nbefore {}\nafter  {}",
            join(&before.mu),
            join(&after.mu)
        );
    }
    let mut log_lines = vec![format!("order {}", join(&log.order))];
    for m in &log.moves {
        let kind = match m.kind {
            MoveKind::OutgoingMove => "outgoing",
            MoveKind::IncomingMove => "incoming",
        };
        log_lines.push(format!(
            "{kind} move at {}: delete {}->{} {}->{}, add {}->{} {}->{}",
            m.focus, m.deleted[0].0, m.deleted[0].1, m.deleted[1].0, m.deleted[1].1, m.added[0].0,
            m.added[0].1, m.added[1].0, m.added[1].1
        ));
    }
    log_lines.push(format!("total {} -> {}", before.total, after.total));
    let graph_text = write_graph(&out, &log_lines);
    let mut text = emit(output, &graph_text)?;
    if output.is_some() {
        text = log_lines.join("\n") + "\n";
    }
    let doc = ReportDocument::new(
        "hamiltonize",
        json!({ "file": file.display().to_string() }),
        json!({ "graph": graph_text, "log": log, "total_before": before.total.to_string(), "total_after": after.total.to_string() }),
    )?;
    Ok(Outcome { text, doc, incomplete: false })
}

fn parse_tuple(text: &str, class: TupleClass) -> Result<RhoTuple> {
    RhoTuple::parse(text, class).map_err(|e| anyhow!(Invalid(e.to_string())))
}

fn cmd_tuple(cmd: &TupleCommand) -> Result<Outcome> {
    match cmd {
        TupleCommand::Decode { tuple, class, output } => {
            let t = parse_tuple(tuple, *class)?;
            let dag = decode(&t).map_err(|e| anyhow!(Invalid(e.to_string())))?;
            let graph_text = write_graph(&dag, &[format!("decoded from {class} tuple ({t})")]);
            let text = emit(output.as_deref(), &graph_text)?;
            let doc = ReportDocument::new("tuple decode", json!({ "tuple": t.to_string(), "class": class.to_string() }), json!({ "graph": graph_text }))?;
            Ok(Outcome { text, doc, incomplete: false })
        }
        TupleCommand::Encode { file } => {
            let dag = read_graph(file)?;
            let t = encode(&dag).map_err(|e| anyhow!(Invalid(e.to_string())))?;
            let text = format!("{} {}\n", t.class(), t);
            let doc = ReportDocument::new("tuple encode", json!({ "file": file.display().to_string() }), json!({ "tuple": t.to_string(), "class": t.class().to_string() }))?;
            Ok(Outcome { text, doc, incomplete: false })
        }
        TupleCommand::Mu { tuple, class } => {
            let t = parse_tuple(tuple, *class)?;
            let m = tuple_mu(&t).map_err(|e| anyhow!(Invalid(e.to_string())))?;
            let text = format!("arc_mu {}\ntotal {}\n", join(&m.arc_mu), m.total);
            let doc = ReportDocument::new(
                "tuple mu",
                json!({ "tuple": t.to_string(), "class": class.to_string() }),
                json!({ "arc_mu": m.arc_mu.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "total": m.total.to_string() }),
            )?;
            Ok(Outcome { text, doc, incomplete: false })
        }
        TupleCommand::Validate { tuple, class, conn } => {
            let t = parse_tuple(tuple, *class)?;
            let report = validity_report(&t, *conn);
            let mut text = String::new();
            for c in &report.checks {
                text.push_str(&format!("{} {}", c.name, c.holds));
                if let Some(w) = &c.witness {
                    text.push_str(&format!(" {w}"));
                }
                text.push('\n');
            }
            text.push_str(&format!("valid {}\n", report.is_valid()));
            if let Some(f) = report.first_failure() {
                print!("{text}");
                let at = f.witness.as_deref().map(|w| format!(" at {w}")).unwrap_or_default();
                bail!(Invalid(format!("violated condition: {}{at}", f.name)));
            }
            let doc = ReportDocument::new("tuple validate", json!({ "tuple": t.to_string(), "class": class.to_string(), "conn": conn }), &report)?;
            Ok(Outcome { text, doc, incomplete: false })
        }
    }
}

fn cmd_search(a: &SearchArgs, budget: Option<u64>) -> Result<Outcome> {
    let budget_nodes = budget.unwrap_or(u64::MAX);
    let report = match a.check {
        Some(name) => check_conjecture_with_budget(name, a.n, budget_nodes)?,
        None => {
            let mut spec = SearchSpec::new(a.n, a.class, a.conn).with_budget(budget_nodes);
            spec.simple_only = a.simple;
            for p in &a.prune {
                spec = spec.with_prune(match p {
                    PruneArg::Lemma4 => Prune::Lemma4,
                    PruneArg::Lemma5 => Prune::Lemma5,
                });
            }
            find_extremal(&spec)
        }
    };
    let max = report.max_total.as_ref().map_or("none".to_string(), |m| m.to_string());
    let mut text = format!(
        "class {} conn {} tuple-length {}{}\nmax {max}\n",
        report.spec.class,
        report.spec.connectivity,
        report.spec.n,
        if report.spec.simple_only { " simple" } else { "" }
    );
    for w in &report.witnesses {
        text.push_str(&format!("witness {w}\n"));
    }
    if let Some(c) = &report.closed_form_comparison {
        let verdict = match c.equal {
            Some(true) => "equal",
            Some(false) => "not equal",
            None => "no exact value",
        };
        text.push_str(&format!("closed form {} = {} ({verdict})\n", c.formula, c.value));
    }
    if let Some(c) = &report.counterexample {
        text.push_str(&format!("COUNTEREXAMPLE {} total {} exceeds {}\n", c.tuple, c.total, c.bound));
    }
    if !report.complete {
        text.push_str("INCOMPLETE budget exhausted\n");
    }
    let provenance = Provenance {
        budget,
        prunes: report.spec.prunes.iter().map(|p| format!("{p:?}")).collect(),
        complete: report.complete,
    };
    let incomplete = !report.complete;
    let doc = ReportDocument::new("search", &report.spec, &report)?.with_provenance(provenance);
    Ok(Outcome { text, doc, incomplete })
}

fn growth_text(r: &GrowthReport) -> String {
    let mut text = String::new();
    for row in &r.rows {
        text.push_str(&format!(
            "k {} f {} g2 {:.4}{}\n",
            row.k,
            row.f,
            row.g2,
            if row.proven { "" } else { " (not proven)" }
        ));
    }
    text.push_str(&format!("bound base {:.4} at k {}\n", r.bound_base, r.argmax_k));
    match &r.final_block_constant {
        Some(c) => text.push_str(&format!("final block constant {c}\n")),
        None => text.push_str("final block constant not evaluated\n"),
    }
    if !r.rigorous {
        text.push_str("NON-RIGOROUS: some block optimum is not proven\n");
    }
    text
}

fn range_of(range: &[usize]) -> Result<(usize, usize)> {
    match range {
        [lo, hi] => Ok((*lo, *hi)),
        _ => bail!(Invalid("--range takes LO HI".into())),
    }
}

fn cmd_block(a: &BlockArgs, budget: Option<u64>) -> Result<Outcome> {
    let nodes = budget.map_or(Budget::UNLIMITED, Budget::nodes);
    if let Some(k) = a.k {
        let inst = BlockInstance::new(k).map_err(|e| anyhow!(Invalid(e.to_string())))?;
        let sol = solve_block(inst, nodes);
        let g2 = growth_factor_of(&sol.f, k);
        let mut text = format!(
            "k {k}\nf {}\ng2 {g2:.4}\nproven_optimal {}\nnodes {}\n",
            sol.f, sol.proven_optimal, sol.nodes_explored
        );
        let graph = write_block_solution(&sol);
        if let Some(p) = &a.output {
            emit(Some(p), &graph)?;
        } else {
            text.push_str(&graph);
        }
        let doc = ReportDocument::new("block", json!({ "k": k }), json!({ "solution": &sol, "f": sol.f.to_string(), "g2": g2 }))?
            .with_provenance(Provenance { budget, prunes: Vec::new(), complete: sol.proven_optimal });
        return Ok(Outcome { text, doc, incomplete: !sol.proven_optimal });
    }
    let (lo, hi) = range_of(&a.range).map_err(|_| anyhow!(Invalid("give --k or --range".into())))?;
    let r = assemble_bound(lo, hi, BlockValues::Solve(nodes)).map_err(|e| anyhow!(Invalid(e.to_string())))?;
    let mut text = growth_text(&r);
    if let Some(p) = &a.csv {
        emit(Some(p), &r.to_csv())?;
    } else {
        text.push_str(&r.to_csv());
    }
    let doc = ReportDocument::new("block", json!({ "range": [lo, hi] }), &r)?
        .with_provenance(Provenance { budget, prunes: Vec::new(), complete: r.rigorous });
    Ok(Outcome { text, doc, incomplete: !r.rigorous })
}

fn read_values(path: &Path) -> Result<Vec<(usize, BigUint)>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('k') {
            continue;
        }
        let mut cols = line.split(',');
        let parsed = (|| Some((cols.next()?.trim().parse().ok()?, cols.next()?.trim().parse().ok()?)))();
        match parsed {
            Some(row) => out.push(row),
            None => bail!(Invalid(format!("{}:line {}: expected `k,f`", path.display(), idx + 1))),
        }
    }
    Ok(out)
}

fn cmd_bound(range: &[usize], values: Option<&Path>, budget: Option<u64>) -> Result<Outcome> {
    let (lo, hi) = range_of(range)?;
    let known;
    let source = match values {
        Some(p) => {
            known = read_values(p)?;
            BlockValues::Known(&known)
        }
        None => BlockValues::Solve(budget.map_or(Budget::UNLIMITED, Budget::nodes)),
    };
    let r = assemble_bound(lo, hi, source).map_err(|e| anyhow!(Invalid(e.to_string())))?;
    let text = growth_text(&r);
    let doc = ReportDocument::new("bound", json!({ "range": [lo, hi], "values": values.map(|p| p.display().to_string()) }), &r)?
        .with_provenance(Provenance { budget, prunes: Vec::new(), complete: r.rigorous });
    Ok(Outcome { text, doc, incomplete: !r.rigorous })
}
