use std::path::Path;
use std::process::{Command, Output};

const K4: &str = "graph 4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley-census")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn analyze_k4() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.edges", K4);
    let out = run(&["analyze", "--graph", &k4, "--expect", "aut_order=24", "--expect", "s_transitivity=2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("aut order: 24"), "{text}");
    assert!(text.contains("s-transitivity: 2"), "{text}");
    assert!(text.contains("girth: 3"), "{text}");

    let json = run(&["--format", "json", "analyze", "--graph", &k4]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["aut_order"], "24");
    assert_eq!(v["valency"], 3);
    assert_eq!(v["connected"], true);
}

#[test]
fn analyze_with_supplied_group() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.edges", K4);
    let c4 = write(dir.path(), "c4.gens", "degree 4\norder 4\n# C4\n2 3 4 1\n");
    let out = run(&["analyze", "--graph", &k4, "--group", &c4, "--expect", "group_order=4", "--expect", "s_transitivity=0"]);
    assert_eq!(code(&out), 0, "{}{}", stdout(&out), String::from_utf8_lossy(&out.stderr));
    let bad = write(dir.path(), "c3.gens", "degree 4\norder 3\n2 3 1 4\n");
    // Every permutation is an automorphism of K4.
    assert_eq!(code(&run(&["analyze", "--graph", &k4, "--group", &bad])), 0);
    let wrong = write(dir.path(), "w.gens", "degree 4\norder 5\n2 3 1 4\n");
    assert_eq!(code(&run(&["analyze", "--graph", &k4, "--group", &wrong])), 2);
    let square = write(dir.path(), "square.edges", "graph 4 4\n0 1\n1 2\n2 3\n0 3\n");
    let s = write(dir.path(), "s.gens", "degree 4\norder 2\n2 1 3 4\n");
    // A transposition of adjacent cycle vertices is not an automorphism of the 4-cycle.
    assert_eq!(code(&run(&["analyze", "--graph", &square, "--group", &s])), 1);
}

#[test]
fn mutated_graph_fails_expectation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.edges");
    let p = path.to_str().unwrap();
    let out = run(&["build-graph", "--delta", "2", "--out", p]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("graph 7920 15840"));
    assert_eq!(text.lines().count(), 15841);
    let expect = ["--expect", "valency=4", "--expect", "connected=true", "--expect", "vertex_count=7920"];
    let mut args = vec!["analyze", "--graph", p];
    args.extend(expect);
    assert_eq!(code(&run(&args)), 0);

    // Move one endpoint of the first edge `0 v` to a vertex not adjacent to 0.
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let nbrs: Vec<u32> = lines[1..].iter().filter_map(|l| l.strip_prefix("0 ")).map(|v| v.parse().unwrap()).collect();
    let target = (1..).find(|v| !nbrs.contains(v)).unwrap();
    lines[1] = format!("0 {target}");
    let header = lines.remove(0);
    lines.sort_by_key(|l| {
        let mut it = l.split(' ').map(|x| x.parse::<u32>().unwrap());
        (it.next().unwrap(), it.next().unwrap())
    });
    let mutated = format!("{header}\n{}\n", lines.join("\n"));
    let m = write(dir.path(), "mutated.edges", &mutated);
    let mut args = vec!["analyze", "--graph", m.as_str()];
    args.extend(expect);
    let out = run(&args);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL valency"));
}

#[test]
fn malformed_graph_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.edges", "graph 3 2\n0 1\n1 x\n");
    let out = run(&["analyze", "--graph", &bad]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(code(&run(&["analyze", "--graph", "/nonexistent/g.edges"])), 2);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["classify"])), 2);
    assert_eq!(code(&run(&["classify", "--all", "--case", "m12-m11"])), 2);
    assert_eq!(code(&run(&["classify", "--case", "no-such-case"])), 2);
    assert_eq!(code(&run(&["build-graph", "--delta", "3", "--out", "/tmp/x"])), 2);
    assert_eq!(code(&run(&["--threads", "0", "catalog"])), 2);
    assert_eq!(code(&run(&["analyze", "--graph", "x", "--expect", "colour=red"])), 2);
    assert_eq!(code(&run(&["classify", "--case", "m11-psl2-11", "--out", "/nonexistent/dir/r.json"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn catalog_lists_orders() {
    let out = run(&["--format", "json", "catalog"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let groups = v["groups"].as_array().unwrap();
    assert_eq!(groups.len(), 12);
    let m24 = groups.iter().find(|g| g["name"] == "M24.deg24").unwrap();
    assert_eq!(m24["order"], "244823040");
}

#[test]
fn data_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    for entry in cayley_census::groupdata::catalog() {
        let spec = cayley_census::groupdata::load_group(entry.name).unwrap();
        let order = if entry.name == "M11.deg11" { 7921u32.into() } else { spec.group.order_big() };
        let text = cayley_census::groupdata::format_generator_file(spec.generators(), &order, &[]);
        write(dir.path(), &format!("{}.gens", entry.name), &text);
    }
    let out = Command::new(env!("CARGO_BIN_EXE_cayley-census"))
        .arg("catalog")
        .env(cayley_census::groupdata::DATA_DIR_ENV, dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("M11.deg11"));
}

#[test]
fn reports_are_identical_across_thread_counts() {
    let one = run(&["--threads", "1", "--format", "json", "classify", "--case", "m12-m11"]);
    let four = run(&["--threads", "4", "--format", "json", "classify", "--case", "m12-m11"]);
    assert_eq!(one.stdout, four.stdout);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    let all_hold = v["claims"].as_array().unwrap().iter().all(|c| c["holds"] == true);
    assert_eq!(code(&one), if all_hold { 0 } else { 1 });
}

#[test]
fn obstruction_case_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["--format", "json", "classify", "--case", "m11-psl2-11", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verdict"], "empty");
    assert_eq!(v["obstruction"]["obstructed"], true);
}
