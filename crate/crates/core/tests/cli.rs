// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const K6D_EDGES: &str = "# K6 on 0..5\n0 1\n0 2\n0 3\n0 4\n0 5\n1 2\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n3 4\n3 5\n4 5\n";
const K6D_ATTRS: &str = "0 0 0\n1 0.5 0\n2 0.5 0\n3 0.5 0\n4 0.5 0\n5 1 0\n";

struct Files {
    dir: TempDir,
}

impl Files {
    fn new(edges: &str, attrs: &str) -> Self {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("edges.txt"), edges).unwrap();
        fs::write(dir.path().join("attrs.txt"), attrs).unwrap();
        Files { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, sub: &str, extra: &[&str]) -> Output {
        self.run_env(sub, extra, &[])
    }

    fn run_env(&self, sub: &str, extra: &[&str], env: &[(&str, &str)]) -> Output {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_krcore"));
        cmd.arg(sub)
            .arg("--graph")
            .arg(self.path("edges.txt"))
            .arg("--attrs")
            .arg(self.path("attrs.txt"))
            .args(extra);
        for (k, v) in env {
            cmd.env(k, v);
        }
        cmd.output().unwrap()
    }
}

fn read(p: &Path) -> String {
    fs::read_to_string(p).unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_writes_cores_and_stats() {
    let f = Files::new(K6D_EDGES, K6D_ATTRS);
    let out = f.path("cores.jsonl");
    let stats = f.path("stats.json");
    let o = f.run(
        "enumerate",
        &["--r", "0.9", "--k", "2", "--out", out.to_str().unwrap(), "--stats", stats.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        read(&out),
        "{\"vertices\":[0,1,2,3,4],\"size\":5}\n{\"vertices\":[1,2,3,4,5],\"size\":5}\n"
    );
    let s: Value = serde_json::from_str(&read(&stats)).unwrap();
    assert_eq!(s["core_count"], 2);
    assert_eq!(s["max_size"], 5);
    assert_eq!(s["avg_size"], 5.0);
    assert!(s["nodes_visited"].as_u64().unwrap() > 0);
    assert!(s["wall_seconds"].is_number());
}

#[test]
fn every_algorithm_agrees() {
    let f = Files::new(K6D_EDGES, K6D_ATTRS);
    let reference = stdout(&f.run("enumerate", &["--r", "0.9", "--k", "2"]));
    for algo in ["basic", "naive", "clique"] {
        let o = f.run("enumerate", &["--r", "0.9", "--k", "2", "--algo", algo]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), reference, "{algo}");
    }
    let o = f.run("oracle", &["--r", "0.9", "--k", "2"]);
    assert_eq!(stdout(&o), reference);
}

#[test]
fn maximum_on_a_path_is_empty() {
    let f = Files::new("0 1\n1 2\n", "0 0 0\n1 0 0\n2 0 0\n");
    let o = f.run("maximum", &["--r", "0.9", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
}

#[test]
fn maximum_reports_one_core() {
    let f = Files::new(K6D_EDGES, K6D_ATTRS);
    for bound in ["naive", "color", "kcore", "kkcore"] {
        let o = f.run("maximum", &["--r", "0.9", "--k", "2", "--bound", bound]);
        assert_eq!(stdout(&o), "{\"vertices\":[0,1,2,3,4],\"size\":5}\n", "{bound}");
    }
}

#[test]
fn bench_writes_one_row_per_bound() {
    let f = Files::new(K6D_EDGES, K6D_ATTRS);
    let o = f.run("bench", &["--r", "0.9", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0][0], "bound");
    assert_eq!(rows.len(), 5);
    let names: Vec<&str> = rows[1..].iter().map(|r| r[0]).collect();
    assert_eq!(names, ["naive", "color", "kcore", "kkcore"]);
    assert!(rows[1..].iter().all(|r| r[1] == "5"));
}

#[test]
fn stats_describes_the_graph() {
    let f = Files::new(K6D_EDGES, K6D_ATTRS);
    let o = f.run("stats", &["--r", "0.9", "--k", "2"]);
    let s: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(s["vertices"], 6);
    assert_eq!(s["edges"], 15);
    assert_eq!(s["dissimilar_edges"], 1);
    assert_eq!(s["components"], 1);
    assert_eq!(s["dissimilar_pairs_in_components"], 1);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let mut edges = String::new();
    let mut attrs = String::new();
    // three disjoint K5s with one dissimilar pair each
    for c in 0..3 {
        let base = c * 10;
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push_str(&format!("{} {}\n", base + u, base + v));
            }
            let x = if u == 4 { 1.0 } else { 0.1 * u as f64 };
            attrs.push_str(&format!("{} {} {}\n", base + u, x + 100.0 * c as f64, 0));
        }
    }
    let f = Files::new(&edges, &attrs);
    let args = ["--r", "0.95", "--k", "2", "--order", "random", "--seed", "3"];
    let one = f.run_env("enumerate", &args, &[("KRCORE_THREADS", "1")]);
    let four = f.run_env("enumerate", &args, &[("KRCORE_THREADS", "4")]);
    assert_eq!(one.status.code(), Some(0));
    assert!(!one.stdout.is_empty());
    assert_eq!(one.stdout, four.stdout);
    let again = f.run_env("enumerate", &args, &[("KRCORE_THREADS", "4")]);
    assert_eq!(four.stdout, again.stdout);
}

#[test]
fn string_ids_round_trip() {
    let f = Files::new(
        "alice bob\nbob carol\ncarol alice\n",
        "alice db:1 ml:1\nbob db:1 ml:1\ncarol db:1 ml:2\n",
    );
    let o = f.run("enumerate", &["--attr-mode", "keywords", "--metric", "jaccard", "--r", "0.6", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "{\"vertices\":[\"alice\",\"bob\",\"carol\"],\"size\":3}\n");
}

#[test]
fn exit_codes() {
    let f = Files::new("0 1\n1 2\n", "0 0 0\n1 3 4\n");
    let o = f.run("enumerate", &["--r", "1", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains('2'));

    let f = Files::new(K6D_EDGES, K6D_ATTRS);
    let o = f.run("enumerate", &["--r", "0.9", "--k", "2", "--node-budget", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = f.run("oracle", &["--r", "0.9", "--k", "2", "--naive-cap", "3"]);
    assert_eq!(o.status.code(), Some(4));
    let o = f.run("enumerate", &["--r", "0.9", "--k", "2", "--algo", "naive", "--naive-cap", "3"]);
    assert_eq!(o.status.code(), Some(4));
    let o = f.run("enumerate", &["--r", "0.9", "--k", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = f.run("enumerate", &["--r", "0.9", "--k", "2", "--metric", "jaccard"]);
    assert_eq!(o.status.code(), Some(2));
    let o = f.run("enumerate", &["--r", "0.9"]);
    assert_eq!(o.status.code(), Some(2));
    let o = f.run_env("enumerate", &["--r", "0.9", "--k", "2"], &[("KRCORE_THREADS", "many")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_name_the_line() {
    let f = Files::new("0 1\n1\n", "0 0 0\n1 0 0\n");
    let o = f.run("enumerate", &["--r", "0.9", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("edges.txt:2"));
}
