use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_zzprop"));
    c.env("RUST_LOG", "warn");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let p = std::env::temp_dir().join(format!("zzprop-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&p).unwrap();
        TempDir(p)
    }

    fn file(&self, name: &str, body: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).to_str().unwrap().to_string()
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn graph_text(n: usize, edges: &[(usize, usize)]) -> String {
    let mut s = format!("graph {n}\n");
    for (u, v) in edges {
        s.push_str(&format!("edge {u} {v}\n"));
    }
    s
}

fn read(p: &str) -> String {
    std::fs::read_to_string(Path::new(p)).unwrap()
}

#[test]
fn build_model_pipes_into_validate_model() {
    let built = run(&["build-model", "--D", "2", "--depth", "1"]);
    assert!(built.status.success());
    let mut child = bin()
        .args(["validate-model"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&built.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|l| l.split('\t').nth(1) == Some("true")));
}

#[test]
fn validate_model_flags_a_damaged_model() {
    let dir = TempDir::new("damaged");
    let model = dir.path("m.txt");
    assert!(run(&["build-model", "--depth", "1", "--out", &model]).status.success());
    assert!(read(&format!("{model}.levels")).lines().count() >= 17);
    let text = read(&model);
    // drop one E tuple
    let pos = text.find("\ntuple E0_0 ").unwrap();
    let end = text[pos + 1..].find('\n').unwrap() + pos + 1;
    let damaged = format!("{}{}", &text[..pos], &text[end..]);
    let bad = dir.file("bad.txt", &damaged);
    let out = run(&["validate-model", "--in", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("false"));
}

#[test]
fn spectrum_of_a_cycle() {
    let dir = TempDir::new("spectrum");
    let out = dir.path("c4.txt");
    // the 4-cycle as a 2-regular rotation map
    let c4 = "rotmap 4 2\n0 0 1 1\n0 1 3 0\n1 0 2 1\n1 1 0 0\n2 0 3 1\n2 1 1 0\n3 0 0 1\n3 1 2 0\n";
    let g = dir.file("g.txt", c4);
    let spec = run(&["spectrum", "--in", &g]);
    if !spec.status.success() {
        panic!("{}", String::from_utf8_lossy(&spec.stderr));
    }
    assert_eq!(stdout(&spec), "1\n0\n0\n-1\n");
    assert!(run(&["square", "--in", &g, "--out", &out]).status.success());
    assert_eq!(stdout(&run(&["spectrum", "--in", &out])), "1\n1\n0\n0\n");
}

#[test]
fn reduce_then_decode_round_trips() {
    let dir = TempDir::new("reduce");
    let s = dir.file("s.txt", "structure 3\nrel A 2\nrel B 2\ntuple A 0 1\ntuple B 1 1\ntuple A 2 0\n");
    let g = dir.path("g.txt");
    let map = dir.path("map.tsv");
    let out = run(&["reduce", "--in", &s, "--d", "9", "--out", &g, "--map", &map]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!read(&map).is_empty());
    let back = dir.path("back.txt");
    let dec = run(&["decode", "--in", &g, "--d", "9", "--signature", &s, "--out", &back]);
    assert!(dec.status.success(), "{}", String::from_utf8_lossy(&dec.stderr));
    let parse = |p: &str| zzprop::structures::Structure::parse(&read(p)).unwrap();
    assert_eq!(parse(&back), parse(&s));
}

#[test]
fn freeness_verdicts_and_exit_codes() {
    let dir = TempDir::new("freeness");
    let tau = dir.file("tau.ball", "graph 3\nedge 0 1\nedge 1 2\ncenter 1\nradius 1\n");
    let triangles = dir.file("tri.txt", &graph_text(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]));
    let cycle = dir.file("c6.txt", &graph_text(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]));
    let args = |g: &str| -> Vec<String> {
        ["test-freeness", "--graph", g, "--tau", &tau, "--eps", "0.1", "--seed", "7", "--trials", "20"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    };
    let ok = bin().args(args(&triangles)).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).lines().nth(1).unwrap().starts_with("20\t20\t1\t"));
    let far = bin().args(args(&cycle)).output().unwrap();
    assert_eq!(far.status.code(), Some(1));
    let again = bin().args(args(&cycle)).output().unwrap();
    assert_eq!(far.stdout, again.stdout);
}

#[test]
fn regularity_rejects_off_size() {
    let dir = TempDir::new("regularity");
    let k4: Vec<(usize, usize)> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
    let tau = dir.file("k4.ball", &format!("{}center 0\n", graph_text(4, &k4)));
    let g = dir.file("g.txt", &graph_text(5, &k4));
    let out = run(&["test-regularity", "--graph", &g, "--tau", &tau, "--eps", "0.1", "--trials", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let g4 = dir.file("g4.txt", &graph_text(4, &k4));
    let out = run(&["test-regularity", "--graph", &g4, "--tau", &tau, "--eps", "0.1", "--trials", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn gsf_commands() {
    let dir = TempDir::new("gsf");
    let fam = dir.file("f.fam", "marked 3\nmark 0 full\nmark 1 full\nmark 2 full\nedge 0 1\n");
    let g = dir.file("g.txt", &graph_text(5, &[(1, 2), (3, 4)]));
    let out = run(&["gsf-check", "--family", &fam, "--graph", &g, "--cover", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("covers\ttrue"));
    let free = dir.file("free.txt", &graph_text(4, &[(0, 1), (2, 3)]));
    assert_eq!(run(&["gsf-check", "--family", &fam, "--graph", &free]).status.code(), Some(0));

    let tau = dir.file("t.ball", "graph 2\nedge 0 1\ncenter 0\nradius 1\n");
    let real = run(&["gsf-realisations", "--tau", &tau, "--k", "2", "--d", "1"]);
    assert!(real.status.success());
    assert_eq!(stdout(&real).matches("marked").count(), 2);

    let guard = "marked 3\nmark 0 partial\nmark 1 full\nmark 2 partial\nedge 0 1\nedge 1 2\n";
    let both = dir.file("both.fam", &format!("{}---\n{guard}", read(&fam)));
    let aug = run(&["deg2-augment", "--family", &both, "--k", "3", "--n", "7"]);
    assert!(aug.status.success(), "{}", String::from_utf8_lossy(&aug.stderr));
    assert!(stdout(&aug).contains("added\tF[I={1},J={}]"));
}

#[test]
fn usage_and_format_errors_exit_two() {
    let dir = TempDir::new("errors");
    let junk = dir.file("junk.txt", "this is not a graph\n");
    assert_eq!(run(&["spectrum", "--in", &junk]).status.code(), Some(2));
    assert_eq!(run(&["spectrum"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["build-model", "--D", "3", "--depth", "1"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let a = run(&["nontestability-demo", "--depth", "1", "--r", "1"]);
    let b = run(&["nontestability-demo", "--depth", "1", "--r", "1", "--threads", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("elements\t17\n"));
    assert!(text.contains("heuristic\ttrue\n"));
    let fam = run(&["expander-family", "--depth", "2"]);
    assert_eq!(stdout(&fam).lines().count(), 3);
}

#[test]
fn histogram_and_distance() {
    let dir = TempDir::new("hist");
    let c6 = dir.file("c6.txt", &graph_text(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]));
    let tt = dir.file("tt.txt", &graph_text(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]));
    let h = run(&["type-histogram", "--in", &c6, "--r", "1"]);
    assert_eq!(stdout(&h), "type\tcount\tball_size\tcenter_degree\n0\t6\t3\t2\n");
    let d = run(&["sampling-distance", "--a", &c6, "--b", &tt, "--r", "1"]);
    assert_eq!(stdout(&d), "r\tdistance\n1\t1\n");
}
