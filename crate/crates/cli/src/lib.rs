//! Command-line front end: solve, verify, count, search, decompose and
//! generate. Every coloring passes the verifier before it is printed.

use std::collections::BTreeMap;
use std::io::Read as _;
use std::str::FromStr;
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crumby::classify::{classify, GraphClass};
use crumby::codec::{parse_edge_list, parse_graph6, write_edge_list, write_graph6};
use crumby::generators as gen;
use crumby::graph::{Color, Coloring, Graph};
use crumby::k4sub::{solve_k4_subdivision, K4SubdivisionVector, K4_EDGES};
use crumby::matching::{edmonds_gallai, maximum_matching};
use crumby::oracle::{self, Prescription, SolveOutcome};
use crumby::outerplanar::{
    ear_decomposition, embed_outerplanar, solve_cycle_with_trees, solve_outerplanar_2conn,
};
use crumby::subdivision::{detect_subdivision_with_map, subdivide};
use crumby::subdivisions::{
    solve_deep_subdivision, solve_genuine_subdivision, solve_one_subdivision,
};
use crumby::trees::solve_tree;
use crumby::verifier::{component_shapes, verify_crumby};

/// Environment variable supplying the default search budget.
pub const BUDGET_ENV: &str = "CRUMBY_BUDGET";

#[derive(Parser)]
#[command(
    name = "crumby",
    version,
    about = "Crumby red-blue colorings of subcubic graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Solve one graph, dispatching to the constructive solver for its class.
    Solve(SolveArgs),
    /// Check a coloring against the crumby predicate.
    Verify(VerifyArgs),
    /// Count all crumby colorings exactly.
    Count(CountArgs),
    /// Stream a graph6 corpus through the exact solver, hunting counterexamples.
    Search(SearchArgs),
    /// Dump structural decompositions (matching, Edmonds-Gallai, ears).
    Decompose(DecomposeArgs),
    /// Generate named graph families.
    Gen(GenArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Lowercase r/b string in vertex index order.
    Rb,
    /// Graphviz DOT with red / lightblue fills.
    Dot,
}

#[derive(Args)]
pub struct SolveArgs {
    /// Graph file (graph6 or edge list), or "-" for stdin.
    pub input: String,
    /// Force a solver class instead of auto-detection.
    #[arg(long = "class")]
    pub class: Option<String>,
    /// Fix a vertex color, e.g. --prescribe 3=blue (repeatable).
    #[arg(long = "prescribe")]
    pub prescribe: Vec<String>,
    /// Use the exhaustive solver regardless of class.
    #[arg(long)]
    pub exact: bool,
    /// Node budget for the exhaustive solver (default from CRUMBY_BUDGET).
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, value_enum, default_value = "rb")]
    pub output: OutputFormat,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Graph file (graph6 or edge list), or "-" for stdin.
    pub input: String,
    /// Coloring as an r/b string in vertex index order.
    pub coloring: String,
}

#[derive(Args)]
pub struct CountArgs {
    pub input: String,
}

#[derive(Args)]
pub struct SearchArgs {
    /// graph6 corpus file, one record per line, or "-" for stdin.
    pub corpus: String,
    /// Comma-separated predicates a graph must satisfy to be solved:
    /// subcubic, cubic, bipartite, tree, outerplanar, k4-minor-free.
    #[arg(long)]
    pub filter: Option<String>,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Transform each graph before solving, e.g. --transform subdivide=1.
    #[arg(long)]
    pub transform: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecomposeKind {
    Matching,
    Eg,
    Ears,
}

#[derive(Args)]
pub struct DecomposeArgs {
    pub input: String,
    #[arg(long, value_enum)]
    pub kind: DecomposeKind,
    /// Root vertex for the ear decomposition.
    #[arg(long, default_value_t = 0)]
    pub at: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFormat {
    G6,
    Edges,
}

#[derive(Args)]
pub struct GenArgs {
    /// Family: prism, k4, path, cycle, star, k4sub, tree, cubic, subcubic,
    /// fan, outerplanar, cycle-with-trees, trees.
    pub family: String,
    /// Family parameters (sizes, counts).
    pub params: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "g6")]
    pub format: GenFormat,
}

/// Runs the CLI and returns the process exit code:
/// 0 = Sat / ok, 1 = Unsat / verification failed, 2 = error.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Count(a) => cmd_count(a),
        Command::Search(a) => cmd_search(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Gen(a) => cmd_gen(a),
    }
}

// ---------------------------------------------------------------------------
// input parsing
// ---------------------------------------------------------------------------

pub fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

/// graph6 records never contain spaces; edge lists always do.
pub fn parse_graph_auto(text: &str) -> Result<Graph> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        bail!("empty graph input");
    }
    if trimmed.lines().any(|l| l.trim().contains(char::is_whitespace)) {
        Ok(parse_edge_list(trimmed)?)
    } else {
        Ok(parse_graph6(trimmed)?)
    }
}

pub fn parse_prescriptions(specs: &[String]) -> Result<Prescription> {
    let mut p = Prescription::empty();
    for s in specs {
        let (v, c) = s
            .split_once('=')
            .ok_or_else(|| anyhow!("prescription '{s}' is not of the form VERTEX=COLOR"))?;
        let v: usize = v.trim().parse().with_context(|| format!("vertex in '{s}'"))?;
        let c = match c.trim().to_lowercase().as_str() {
            "r" | "red" => Color::Red,
            "b" | "blue" => Color::Blue,
            other => bail!("unknown color '{other}' in '{s}'"),
        };
        if p.fixed.insert(v, c).is_some() {
            bail!("vertex {v} prescribed twice");
        }
    }
    Ok(p)
}

pub fn effective_budget(arg: Option<u64>) -> Result<u64> {
    if let Some(b) = arg {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .with_context(|| format!("parsing {BUDGET_ENV}='{s}'")),
        Err(_) => Ok(oracle::DEFAULT_BUDGET),
    }
}

// ---------------------------------------------------------------------------
// verified output
// ---------------------------------------------------------------------------

/// The only route by which a coloring reaches stdout: verification is
/// re-run here, so a buggy solver can never print an invalid answer.
pub fn render_verified(g: &Graph, c: &Coloring, format: OutputFormat) -> Result<String> {
    let report = verify_crumby(g, c)?;
    if !report.ok {
        bail!(
            "refusing to print a coloring that fails verification:\n{}",
            report.to_text().trim()
        );
    }
    Ok(match format {
        OutputFormat::Rb => c.to_rb_string(),
        OutputFormat::Dot => to_dot(g, c)?,
    })
}

pub fn to_dot(g: &Graph, c: &Coloring) -> Result<String> {
    let comps = component_shapes(g, c)?;
    let mut comp_of = vec![(0usize, String::new()); g.vertex_count()];
    for (i, sc) in comps.iter().enumerate() {
        for &v in &sc.vertices {
            comp_of[v] = (i, format!("{:?}", sc.shape));
        }
    }
    let mut out = String::from("graph crumby {\n  node [style=filled];\n");
    for v in 0..g.vertex_count() {
        let fill = match c.get(v) {
            Color::Red => "red",
            Color::Blue => "lightblue",
        };
        let (id, shape) = &comp_of[v];
        out.push_str(&format!(
            "  {v} [fillcolor=\"{fill}\" tooltip=\"component {id}: {shape}\"];\n"
        ));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    Ok(out)
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

enum Solved {
    Sat(Coloring),
    Unsat,
    Budget(u64),
}

fn solve_dispatch(
    g: &Graph,
    hint: Option<GraphClass>,
    p: &Prescription,
    exact: bool,
    budget: u64,
) -> Result<Solved> {
    if exact {
        return oracle_solve(g, p, budget);
    }
    let class = classify(g, hint)?;
    let fallback = |reason: &str| -> Result<Solved> {
        eprintln!("note: {reason}; falling back to the exhaustive solver");
        oracle_solve(g, p, budget)
    };
    match class {
        GraphClass::Tree => Ok(match solve_tree(g, p)? {
            Some(c) => Solved::Sat(c),
            None => Solved::Unsat,
        }),
        GraphClass::K4Subdivision
        | GraphClass::OneSubdivisionOfCubic
        | GraphClass::DeepSubdivision
        | GraphClass::GenuineSubdivision => {
            if !p.fixed.is_empty() {
                return fallback("prescriptions are not supported by the subdivision solvers");
            }
            let (sg, map) = detect_subdivision_with_map(g)?;
            let col = match class {
                GraphClass::K4Subdivision => {
                    let counts = K4_EDGES.map(|e| sg.counts[&e]);
                    solve_k4_subdivision(&K4SubdivisionVector(counts))?
                }
                GraphClass::OneSubdivisionOfCubic => solve_one_subdivision(&sg)?,
                GraphClass::DeepSubdivision => solve_deep_subdivision(&sg)?,
                _ => solve_genuine_subdivision(&sg)?,
            };
            let mut out = vec![Color::Red; g.vertex_count()];
            for (x, &orig) in map.iter().enumerate() {
                out[orig] = col.get(x);
            }
            Ok(Solved::Sat(Coloring::new(out)))
        }
        GraphClass::TwoConnectedOuterplanar => {
            let (v, color) = match p.fixed.len() {
                0 => (0, Color::Red),
                1 => {
                    let (&v, &c) = p.fixed.iter().next().unwrap();
                    (v, c)
                }
                _ => {
                    return fallback(
                        "the outerplanar solver supports at most one prescription",
                    )
                }
            };
            Ok(Solved::Sat(solve_outerplanar_2conn(g, v, color)?))
        }
        GraphClass::CycleWithTrees => {
            if !p.fixed.is_empty() {
                return fallback(
                    "prescriptions are not supported by the cycle-with-trees solver",
                );
            }
            Ok(Solved::Sat(solve_cycle_with_trees(g)?))
        }
        GraphClass::Unknown => {
            bail!("no constructive solver matches this graph; pass --exact to run the exhaustive solver")
        }
    }
}

fn oracle_solve(g: &Graph, p: &Prescription, budget: u64) -> Result<Solved> {
    Ok(match oracle::solve_exact(g, p, budget)? {
        SolveOutcome::Sat(c) => Solved::Sat(c),
        SolveOutcome::Unsat => Solved::Unsat,
        SolveOutcome::BudgetExceeded { nodes } => Solved::Budget(nodes),
    })
}

fn cmd_solve(a: SolveArgs) -> Result<i32> {
    let g = parse_graph_auto(&read_input(&a.input)?)?;
    let p = parse_prescriptions(&a.prescribe)?;
    let hint = a.class.as_deref().map(GraphClass::from_str).transpose()?;
    let budget = effective_budget(a.budget)?;
    match solve_dispatch(&g, hint, &p, a.exact, budget)? {
        Solved::Sat(c) => {
            for (&v, &want) in &p.fixed {
                if c.get(v) != want {
                    bail!("solver ignored the prescription on vertex {v}");
                }
            }
            println!("{}", render_verified(&g, &c, a.output)?);
            Ok(0)
        }
        Solved::Unsat => {
            println!("UNSAT");
            Ok(1)
        }
        Solved::Budget(nodes) => bail!(
            "budget exceeded after {nodes} nodes; raise --budget or {BUDGET_ENV}"
        ),
    }
}

// ---------------------------------------------------------------------------
// verify / count
// ---------------------------------------------------------------------------

fn cmd_verify(a: VerifyArgs) -> Result<i32> {
    let g = parse_graph_auto(&read_input(&a.input)?)?;
    let c = Coloring::from_rb_string(a.coloring.trim())?;
    let report = verify_crumby(&g, &c)?;
    print!("{}", report.to_text());
    Ok(if report.ok { 0 } else { 1 })
}

fn cmd_count(a: CountArgs) -> Result<i32> {
    let g = parse_graph_auto(&read_input(&a.input)?)?;
    println!("{}", oracle::count_colorings(&g));
    Ok(0)
}

// ---------------------------------------------------------------------------
// class predicates used by search filters
// ---------------------------------------------------------------------------

pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut side = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                match side[w] {
                    None => {
                        side[w] = Some(!side[v].unwrap());
                        queue.push_back(w);
                    }
                    Some(x) if x == side[v].unwrap() => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// No-K4-minor test by series-parallel reduction: repeatedly delete
/// degree-<=1 vertices and suppress degree-2 vertices (merging any parallel
/// edge this creates); the graph empties exactly when it has no K4 minor.
/// On subcubic graphs this agrees with the topological K4 search.
pub fn k4_minor_free(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut adj: Vec<std::collections::BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut remaining = n;
    while remaining > 0 {
        let Some(v) = (0..n).find(|&v| alive[v] && adj[v].len() <= 2) else {
            return false;
        };
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for &w in &nbrs {
            adj[w].remove(&v);
        }
        if let [a, b] = nbrs[..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj[v].clear();
        alive[v] = false;
        remaining -= 1;
    }
    true
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Filter {
    Subcubic,
    Cubic,
    Bipartite,
    Tree,
    Outerplanar,
    K4MinorFree,
}

fn parse_filters(spec: &str) -> Result<Vec<Filter>> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s {
            "subcubic" => Ok(Filter::Subcubic),
            "cubic" => Ok(Filter::Cubic),
            "bipartite" => Ok(Filter::Bipartite),
            "tree" => Ok(Filter::Tree),
            "outerplanar" => Ok(Filter::Outerplanar),
            "k4-minor-free" => Ok(Filter::K4MinorFree),
            other => Err(anyhow!("unknown filter '{other}'")),
        })
        .collect()
}

struct ClassFlags {
    subcubic: bool,
    cubic: bool,
    bipartite: bool,
    tree: bool,
    outerplanar: bool,
    k4_minor_free: bool,
}

fn class_flags(g: &Graph) -> ClassFlags {
    ClassFlags {
        subcubic: g.is_subcubic(),
        cubic: g.is_cubic(),
        bipartite: is_bipartite(g),
        tree: g.is_tree(),
        outerplanar: embed_outerplanar(g).is_ok(),
        k4_minor_free: k4_minor_free(g),
    }
}

impl ClassFlags {
    fn passes(&self, f: Filter) -> bool {
        match f {
            Filter::Subcubic => self.subcubic,
            Filter::Cubic => self.cubic,
            Filter::Bipartite => self.bipartite,
            Filter::Tree => self.tree,
            Filter::Outerplanar => self.outerplanar,
            Filter::K4MinorFree => self.k4_minor_free,
        }
    }

    fn to_text(&self) -> String {
        let mut on = Vec::new();
        for (name, v) in [
            ("subcubic", self.subcubic),
            ("cubic", self.cubic),
            ("bipartite", self.bipartite),
            ("tree", self.tree),
            ("outerplanar", self.outerplanar),
            ("k4-minor-free", self.k4_minor_free),
        ] {
            if v {
                on.push(name);
            }
        }
        if on.is_empty() { "-".to_string() } else { on.join(",") }
    }
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

fn parse_transform(spec: &str) -> Result<usize> {
    let (op, arg) = spec
        .split_once('=')
        .ok_or_else(|| anyhow!("transform '{spec}' is not of the form subdivide=K"))?;
    if op != "subdivide" {
        bail!("unknown transform '{op}'");
    }
    Ok(arg.parse().with_context(|| format!("transform count in '{spec}'"))?)
}

fn subdivide_all(g: &Graph, k: usize) -> Result<Graph> {
    let counts: BTreeMap<(usize, usize), usize> =
        g.edges().into_iter().map(|e| (e, k)).collect();
    Ok(subdivide(g, &counts)?.expanded)
}

enum Record {
    Malformed,
    Skipped,
    Verdict { line: String, candidate: Option<String>, result: SolveOutcome },
}

fn search_one(
    line: &str,
    filters: &[Filter],
    transform: Option<usize>,
    budget: u64,
) -> Record {
    let line = line.trim();
    let Ok(g) = parse_graph6(line) else {
        return Record::Malformed;
    };
    let flags = class_flags(&g);
    if !filters.iter().all(|&f| flags.passes(f)) {
        return Record::Skipped;
    }
    let solved = match transform {
        Some(k) => subdivide_all(&g, k),
        None => Ok(g.clone()),
    };
    let solved = match solved {
        Ok(h) => h,
        Err(_) => return Record::Malformed,
    };
    let start = Instant::now();
    let (outcome, nodes) =
        match oracle::solve_exact_counted(&solved, &Prescription::empty(), budget) {
            Ok(x) => x,
            Err(_) => return Record::Malformed,
        };
    let ms = start.elapsed().as_millis();
    let (verdict, candidate) = match &outcome {
        SolveOutcome::Sat(c) => {
            // the no-unverified-output rule applies to search lines too
            debug_assert!(verify_crumby(&solved, c).map(|r| r.ok).unwrap_or(false));
            ("SAT".to_string(), None)
        }
        SolveOutcome::Unsat => ("UNSAT".to_string(), Some(line.to_string())),
        SolveOutcome::BudgetExceeded { .. } => ("BUDGET".to_string(), None),
    };
    Record::Verdict {
        line: format!("{line}\tflags={}\tresult={verdict}\tnodes={nodes}\ttime_ms={ms}", flags.to_text()),
        candidate,
        result: outcome,
    }
}

fn cmd_search(a: SearchArgs) -> Result<i32> {
    let text = read_input(&a.corpus)?;
    let lines: Vec<String> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect();
    let filters = match &a.filter {
        Some(s) => parse_filters(s)?,
        None => Vec::new(),
    };
    let transform = a.transform.as_deref().map(parse_transform).transpose()?;
    let budget = effective_budget(a.budget)?;
    let jobs = a.jobs.max(1);

    let results: Vec<Mutex<Option<Record>>> =
        lines.iter().map(|_| Mutex::new(None)).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(lines.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= lines.len() {
                    break;
                }
                let rec = search_one(&lines[i], &filters, transform, budget);
                *results[i].lock().unwrap() = Some(rec);
            });
        }
    });

    let (mut sat, mut unsat, mut over, mut skipped, mut malformed) = (0u64, 0, 0, 0, 0u64);
    for (line, slot) in lines.iter().zip(&results) {
        match slot.lock().unwrap().take().expect("worker filled every slot") {
            Record::Malformed => {
                eprintln!("warning: skipping malformed graph6 line '{line}'");
                malformed += 1;
            }
            Record::Skipped => skipped += 1,
            Record::Verdict { line, candidate, result } => {
                println!("{line}");
                match result {
                    SolveOutcome::Sat(_) => sat += 1,
                    SolveOutcome::Unsat => unsat += 1,
                    SolveOutcome::BudgetExceeded { .. } => over += 1,
                }
                if let Some(g6) = candidate {
                    println!("COUNTEREXAMPLE CANDIDATE: {g6}");
                }
            }
        }
    }
    println!(
        "summary: sat={sat} unsat={unsat} budget-exceeded={over} filtered-out={skipped} malformed={malformed}"
    );
    Ok(0)
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

fn cmd_decompose(a: DecomposeArgs) -> Result<i32> {
    let g = parse_graph_auto(&read_input(&a.input)?)?;
    match a.kind {
        DecomposeKind::Matching => {
            let m = maximum_matching(&g);
            println!("matching size {}", m.len());
            for (u, v) in m.edges() {
                println!("{u} {v}");
            }
        }
        DecomposeKind::Eg => {
            let d = edmonds_gallai(&g)?;
            let fmt = |s: &std::collections::BTreeSet<usize>| {
                s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            };
            println!("A: {}", fmt(&d.a));
            println!("B: {}", fmt(&d.b));
            println!("C: {}", fmt(&d.c));
            for comp in &d.odd_components {
                println!(
                    "odd: {}",
                    comp.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                );
            }
            for comp in &d.even_components {
                println!(
                    "even: {}",
                    comp.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                );
            }
        }
        DecomposeKind::Ears => {
            let emb = embed_outerplanar(&g)?;
            let dec = ear_decomposition(&emb, a.at);
            println!(
                "outer cycle: {}",
                emb.outer_cycle.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            );
            println!(
                "initial face: {}",
                dec.initial.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            );
            for (i, e) in dec.ears.iter().enumerate() {
                println!(
                    "ear {i}: x={} y={} internal={}",
                    e.x,
                    e.y,
                    e.internal.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                );
            }
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

fn cmd_gen(a: GenArgs) -> Result<i32> {
    let need = |n: usize| -> Result<Vec<usize>> {
        if a.params.len() != n {
            bail!("family '{}' takes {n} parameter(s), got {}", a.family, a.params.len());
        }
        Ok(a.params.clone())
    };
    let graphs: Vec<Graph> = match a.family.as_str() {
        "prism" => vec![gen::gen_prism()],
        "k4" => vec![gen::gen_k4()],
        "path" => vec![gen::gen_path(need(1)?[0])],
        "cycle" => vec![gen::gen_cycle(need(1)?[0])],
        "star" => vec![gen::gen_star(need(1)?[0])],
        "k4sub" => {
            let p = need(6)?;
            let counts: [usize; 6] = p.try_into().unwrap();
            vec![gen::gen_k4_subdivided(&counts).expanded]
        }
        "tree" => vec![gen::gen_random_subcubic_tree(need(1)?[0], a.seed)],
        "cubic" => vec![gen::gen_random_cubic(need(1)?[0], a.seed)?],
        "subcubic" => vec![gen::gen_random_subcubic_connected(need(1)?[0], a.seed)],
        "fan" => {
            if a.params.is_empty() {
                bail!("family 'fan' needs at least one face size");
            }
            vec![gen::gen_fan_outerplanar(&a.params, a.seed)?]
        }
        "outerplanar" => vec![gen::gen_random_outerplanar_2conn(need(1)?[0], a.seed)?],
        "trees" => gen::enumerate_trees(need(1)?[0]),
        other => bail!("unknown family '{other}'"),
    };
    for g in &graphs {
        match a.format {
            GenFormat::G6 => println!("{}", write_graph6(g)?),
            GenFormat::Edges => print!("{}", write_edge_list(g)),
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crumby::generators::{gen_cycle, gen_path, gen_prism};

    #[test]
    fn unverified_colorings_are_never_rendered() {
        let g = gen_cycle(6);
        let good = Coloring::from_rb_string("rrbrrb").unwrap();
        assert_eq!(render_verified(&g, &good, OutputFormat::Rb).unwrap(), "rrbrrb");
        // fault injection: a wrong coloring must be rejected by the wrapper
        let bad = Coloring::from_rb_string("rbrbrb").unwrap();
        let err = render_verified(&g, &bad, OutputFormat::Rb).unwrap_err();
        assert!(err.to_string().contains("refusing to print"));
    }

    #[test]
    fn dot_output_marks_components() {
        let g = gen_cycle(6);
        let c = Coloring::from_rb_string("rrbrrb").unwrap();
        let dot = render_verified(&g, &c, OutputFormat::Dot).unwrap();
        assert!(dot.contains("fillcolor=\"red\""));
        assert!(dot.contains("fillcolor=\"lightblue\""));
        assert!(dot.contains("tooltip=\"component"));
        assert!(dot.contains("0 -- 1;"));
    }

    #[test]
    fn prescription_parsing() {
        let p = parse_prescriptions(&["0=red".into(), "3=b".into()]).unwrap();
        assert_eq!(p.fixed[&0], Color::Red);
        assert_eq!(p.fixed[&3], Color::Blue);
        assert!(parse_prescriptions(&["x=red".into()]).is_err());
        assert!(parse_prescriptions(&["1=red".into(), "1=blue".into()]).is_err());
    }

    #[test]
    fn auto_format_detection() {
        let g = parse_graph_auto("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g.vertex_count(), 3);
        let g6 = write_graph6(&gen_prism()).unwrap();
        let g = parse_graph_auto(&g6).unwrap();
        assert_eq!(g.vertex_count(), 6);
    }

    #[test]
    fn filter_predicates() {
        assert!(is_bipartite(&gen_path(5)));
        assert!(!is_bipartite(&gen_cycle(5)));
        assert!(k4_minor_free(&gen_cycle(7)));
        assert!(k4_minor_free(&gen_path(4)));
        assert!(!k4_minor_free(&gen_prism()));
        assert!(!k4_minor_free(&crumby::generators::gen_k4()));
        // outerplanar graphs are K4-minor-free
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!(k4_minor_free(&g));
    }

    #[test]
    fn class_dispatch_solves_each_family() {
        let budget = oracle::DEFAULT_BUDGET;
        let p = Prescription::empty();
        for g in [
            gen_path(7),
            gen_cycle(9),
            crumby::generators::gen_k4_subdivided(&[2, 1, 3, 0, 1, 2]).expanded,
            crumby::generators::gen_random_outerplanar_2conn(14, 3).unwrap(),
        ] {
            match solve_dispatch(&g, None, &p, false, budget).unwrap() {
                Solved::Sat(c) => assert!(verify_crumby(&g, &c).unwrap().ok),
                _ => panic!("expected Sat"),
            }
        }
        // unknown class without --exact refuses; with exact it answers
        assert!(solve_dispatch(&gen_prism(), None, &p, false, budget).is_err());
        assert!(matches!(
            solve_dispatch(&gen_prism(), None, &p, true, budget).unwrap(),
            Solved::Unsat
        ));
    }
}
