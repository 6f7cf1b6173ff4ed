//! End-to-end tests running the compiled binary.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

fn crumby(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crumby"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn crumby_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_crumby"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child.stdin.as_mut().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

fn gen_g6(family: &[&str]) -> String {
    let mut args = vec!["gen"];
    args.extend_from_slice(family);
    let out = crumby(&args);
    assert!(out.status.success(), "gen {family:?} failed");
    stdout(&out).trim().to_string()
}

#[test]
fn prism_is_a_counterexample_under_exact_solving() {
    let f = write_temp(&gen_g6(&["prism"]));
    let out = crumby(&["solve", f.path().to_str().unwrap(), "--exact"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).trim(), "UNSAT");
}

#[test]
fn solve_reads_edge_lists_from_stdin() {
    // P4: both end colorings exist; the default dispatch uses the tree solver
    let out = crumby_stdin(&["solve", "-"], "4 3\n0 1\n1 2\n2 3\n");
    assert_eq!(out.status.code(), Some(0));
    let coloring = stdout(&out);
    let coloring = coloring.trim();
    assert_eq!(coloring.len(), 4);
    assert!(coloring.chars().all(|c| c == 'r' || c == 'b'));
}

#[test]
fn verify_distinguishes_good_and_bad_colorings() {
    let c6 = write_temp(&gen_g6(&["cycle", "6"]));
    let path = c6.path().to_str().unwrap();
    let ok = crumby(&["verify", path, "rrbrrb"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = crumby(&["verify", path, "rbrbrb"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("RedIsolated"));
}

#[test]
fn prescriptions_are_honored_and_infeasible_ones_reported() {
    let p3 = write_temp("3 2\n0 1\n1 2\n");
    let path = p3.path().to_str().unwrap();
    let sat = crumby(&["solve", path, "--prescribe", "0=blue"]);
    assert_eq!(sat.status.code(), Some(0));
    assert!(stdout(&sat).trim().starts_with('b'));
    // the middle of P3 can never be blue
    let unsat = crumby(&["solve", path, "--prescribe", "1=blue"]);
    assert_eq!(unsat.status.code(), Some(1));
    assert_eq!(stdout(&unsat).trim(), "UNSAT");
}

#[test]
fn count_matches_known_values() {
    let p2 = write_temp("2 1\n0 1\n");
    let out = crumby(&["count", p2.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2");
}

#[test]
fn dot_output_is_verified_and_well_formed() {
    let c6 = write_temp(&gen_g6(&["cycle", "6"]));
    let out = crumby(&["solve", c6.path().to_str().unwrap(), "--output", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = stdout(&out);
    assert!(dot.starts_with("graph crumby {"));
    assert!(dot.contains("fillcolor="));
}

#[test]
fn unknown_class_requires_exact_flag() {
    let f = write_temp(&gen_g6(&["prism"]));
    let out = crumby(&["solve", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--exact"));
}

#[test]
fn class_hint_conflicts_are_rejected() {
    let f = write_temp(&gen_g6(&["prism"]));
    let out = crumby(&["solve", f.path().to_str().unwrap(), "--class", "tree"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tight_budget_is_an_error_not_a_verdict() {
    let f = write_temp(&gen_g6(&["prism"]));
    let out = crumby(&["solve", f.path().to_str().unwrap(), "--exact", "--budget", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget exceeded"));
}

#[test]
fn budget_env_var_is_honored() {
    let f = write_temp(&gen_g6(&["prism"]));
    let out = Command::new(env!("CARGO_BIN_EXE_crumby"))
        .args(["solve", f.path().to_str().unwrap(), "--exact"])
        .env("CRUMBY_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_round_trips_through_solve() {
    for family in [
        vec!["k4sub", "1", "1", "1", "1", "1", "1"],
        vec!["tree", "10", "--seed", "7"],
        vec!["outerplanar", "12", "--seed", "5"],
        vec!["fan", "4", "5", "3"],
        vec!["path", "6"],
        vec!["cycle", "7"],
        vec!["star", "3"],
    ] {
        let f = write_temp(&gen_g6(&family));
        let out = crumby(&["solve", f.path().to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "family {family:?}");
    }
}

#[test]
fn gen_edges_format_parses_back() {
    let out = crumby(&["gen", "path", "5", "--format", "edges"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("5 4"));
    let solved = crumby_stdin(&["solve", "-"], &text);
    assert_eq!(solved.status.code(), Some(0));
}

#[test]
fn search_flags_the_prism_as_a_candidate() {
    let corpus = format!(
        "{}\n{}\nnot-a-graph6-line!!!!\n{}\n",
        gen_g6(&["cycle", "6"]),
        gen_g6(&["prism"]),
        gen_g6(&["path", "4"])
    );
    let f = write_temp(&corpus);
    let out = crumby(&["search", f.path().to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.matches("result=UNSAT").count(), 1);
    assert_eq!(text.matches("result=SAT").count(), 2);
    assert!(text.contains(&format!("COUNTEREXAMPLE CANDIDATE: {}", gen_g6(&["prism"]))));
    assert!(text.contains("summary: sat=2 unsat=1 budget-exceeded=0 filtered-out=0 malformed=1"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));
    // lines come back in corpus order even with two workers
    let c6 = gen_g6(&["cycle", "6"]);
    let prism = gen_g6(&["prism"]);
    let pos_c6 = text.find(&format!("{c6}\t")).unwrap();
    let pos_prism = text.find(&format!("{prism}\t")).unwrap();
    assert!(pos_c6 < pos_prism);
}

#[test]
fn search_filters_and_transforms() {
    let corpus = format!("{}\n{}\n", gen_g6(&["cycle", "5"]), gen_g6(&["cycle", "6"]));
    let f = write_temp(&corpus);
    // only the even cycle is bipartite; subdividing once keeps it solvable
    let out = crumby(&[
        "search",
        f.path().to_str().unwrap(),
        "--filter",
        "bipartite,subcubic",
        "--transform",
        "subdivide=1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("summary: sat=1 unsat=0 budget-exceeded=0 filtered-out=1 malformed=0"));
}

#[test]
fn decompose_matching_and_eg() {
    let p5 = write_temp("5 4\n0 1\n1 2\n2 3\n3 4\n");
    let path = p5.path().to_str().unwrap();
    let m = crumby(&["decompose", path, "--kind", "matching"]);
    assert!(stdout(&m).starts_with("matching size 2"));
    let eg = crumby(&["decompose", path, "--kind", "eg"]);
    assert!(eg.status.success());
    assert!(stdout(&eg).contains("A:"));
}

#[test]
fn decompose_ears_on_an_outerplanar_graph() {
    let f = write_temp(&gen_g6(&["fan", "4", "4"]));
    let out = crumby(&["decompose", f.path().to_str().unwrap(), "--kind", "ears"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("outer cycle:"));
    assert!(text.contains("ear 0:"));
}
