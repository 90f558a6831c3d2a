use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn tautilt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tautilt")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn algebra_check_reports_dimension_and_rank() {
    let o = tautilt(&["algebra", "check", path(&data("example.quiv"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "admissible, dim 11, pi1 free rank 2\n");
    let o = tautilt(&["algebra", "check", path(&data("a2.quiv"))]);
    assert_eq!(stdout(&o), "admissible, dim 3, pi1 free rank 0\n");
}

#[test]
fn enumerate_a2_is_a_pentagon_with_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("a2.dot");
    let o = tautilt(&[
        "tautilt",
        "enumerate",
        path(&data("a2.quiv")),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("5 pairs, pentagon"));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph mutations {\n"));
    assert!(text.ends_with("}\n"));
    let edges: Vec<&str> = text.lines().filter(|l| l.contains("->")).collect();
    assert_eq!(edges.len(), 10);
    for e in edges {
        let body = e.trim().strip_suffix(';').unwrap();
        let (arrow, attrs) = body.split_once(" [").unwrap();
        let (a, b) = arrow.split_once(" -> ").unwrap();
        assert!(a.starts_with('n') && b.starts_with('n'), "{e}");
        assert!(attrs == "style=solid]" || attrs == "style=dashed]", "{e}");
    }
}

#[test]
fn dual_numbers_have_two_pairs() {
    let o = tautilt(&["tautilt", "enumerate", path(&data("dual.quiv"))]);
    assert_eq!(stdout(&o).lines().next(), Some("2 pairs, 1 exchange edges"));
}

#[test]
fn kronecker_exceeds_the_budget() {
    let o = tautilt(&[
        "--field",
        "p",
        "tautilt",
        "enumerate",
        path(&data("kronecker.quiv")),
        "--budget",
        "12",
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).starts_with("budget of 12 exceeded"));
}

#[test]
fn tau_of_modules() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(data("example.quiv"), dir.path().join("example.quiv")).unwrap();
    std::fs::copy(data("dual.quiv"), dir.path().join("dual.quiv")).unwrap();
    // P_2 is spanned by e_2, b and e
    let p2 = dir.path().join("p2.mod");
    std::fs::write(
        &p2,
        "module over example.quiv\ndim 2 1\ndim 3 1\ndim 4 1\nmap b 1\nmap e 1\n",
    )
    .unwrap();
    let o = tautilt(&["module", "tau", p2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "module over example.quiv\n");
    // over K[x]/x² the simple is its own translate
    let s = dir.path().join("s.mod");
    std::fs::write(&s, "module over dual.quiv\ndim v 1\n").unwrap();
    let o = tautilt(&["module", "tau", s.to_str().unwrap()]);
    assert_eq!(stdout(&o), "module over dual.quiv\ndim v 1\n");
}

#[test]
fn paper_example_passes_and_is_reproducible() {
    let a = tautilt(&["paper-example"]);
    assert_eq!(a.status.code(), Some(0));
    let last = stdout(&a).lines().last().unwrap().to_string();
    assert!(
        last.starts_with("OK: F_λ M(u₁) ≅ M(u); F_λ M(u₂) ≅ M(u); lift via F₂ domain OK"),
        "{last}"
    );
    let j1 = tautilt(&["--json", "--seed", "7", "paper-example"]);
    let j2 = tautilt(&["--json", "--seed", "7", "paper-example"]);
    assert_eq!(j1.stdout, j2.stdout);
    let lines = stdout(&j1);
    for l in lines.lines() {
        serde_json::from_str::<serde_json::Value>(l).unwrap();
    }
    assert!(lines.lines().last().unwrap().contains("\"seed\":7"));
}

#[test]
fn lifted_string_names() {
    let o = tautilt(&[
        "cover",
        "lift-string",
        path(&data("example.quiv")),
        "--grading",
        path(&data("example-z.grading")),
        "--center",
        "1",
        "--string",
        "c^-1 e a d^-1 b",
        "--start",
        "2@0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("lift: 2_0 3_0 1_0 2_0 4_-1 3_-1"));
}

#[test]
fn window_and_pushdown_on_the_line() {
    let w = [
        path(&data("dual.quiv")).to_string(),
        "--grading".into(),
        path(&data("dual-z.grading")).into(),
    ];
    let w: Vec<&str> = w.iter().map(String::as_str).collect();
    let mut args = vec!["cover", "window"];
    args.extend(&w);
    args.extend(["--radius", "4"]);
    let o = tautilt(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("window of radius 4: 9 vertices, 8 arrows, 7 relations, 5 interior\n"));
    let mut args = vec!["cover", "pushdown"];
    args.extend(&w);
    let m = data("line-s0.mod");
    args.extend(["--module", path(&m)]);
    let o = tautilt(&args);
    assert_eq!(stdout(&o), "module over dual.quiv\ndim v 1\n");
}

#[test]
fn orbit_mutation_and_lockstep() {
    let base = [
        path(&data("example.quiv")).to_string(),
        "--grading".into(),
        path(&data("example-z.grading")).into(),
        "--center".into(),
        "1".into(),
        "--radius".into(),
        "12".into(),
    ];
    let base: Vec<&str> = base.iter().map(String::as_str).collect();
    let mut args = vec!["--json", "cover", "verify-commute"];
    args.extend(&base);
    args.extend(["--depth", "2"]);
    let o = tautilt(&args);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["nodes"], 16);

    let mut args = vec!["cover", "mutate-orbit"];
    args.extend(&base);
    args.extend(["--path", "summand:1,summand:0,vertex:2"]);
    let o = tautilt(&args);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("push-down matches base: true").count(), 3, "{out}");
}

#[test]
fn errors_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.quiv");
    std::fs::write(&bad, "vertex 1\narrow a 1 9\n").unwrap();
    let o = tautilt(&["--json", "algebra", "check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["error"], "parse");
    let loop_ = dir.path().join("loop.quiv");
    std::fs::write(&loop_, "vertex 1\narrow a 1 1\n").unwrap();
    assert_eq!(
        tautilt(&["algebra", "check", loop_.to_str().unwrap()]).status.code(),
        Some(3)
    );
    assert_eq!(
        tautilt(&["algebra", "check", "/nonexistent.quiv"]).status.code(),
        Some(3)
    );
    let o = tautilt(&[
        "cover",
        "window",
        path(&data("dual.quiv")),
        "--grading",
        path(&data("dual-z.grading")),
        "--radius",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(3));
}
