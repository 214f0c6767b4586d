use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tmfg_cli::format::ResultDoc;

fn tmfg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tmfg"))
        .args(args)
        .env_remove("TMFG_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K4: &str = "0,0.1,0.2,0.3\n0.1,0,0.4,0.5\n0.2,0.4,0,0.6\n0.3,0.5,0.6,0\n";

#[test]
fn four_by_four_matrix_gives_k4() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "k4.csv", K4);
    let out = tmfg(&["filter", "-i", s(&m)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc: ResultDoc = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.edges.len(), 6);
    let pairs: Vec<(u32, u32)> = doc.edges.iter().map(|e| (e.i, e.j)).collect();
    assert_eq!(pairs, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let want = 0.1 + 0.2 + 0.3 + 0.4 + 0.5 + 0.6;
    assert!((doc.total_weight.0 - want).abs() < 1e-15);
    assert_eq!(doc.cliques.as_deref(), Some(&[[0, 1, 2, 3]][..]));
    assert_eq!(doc.separators.as_deref(), Some(&[][..]));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.csv");
    assert_eq!(code(&tmfg(&["gen", "--dist", "pareto(2)", "-p", "40", "--seed", "5", "-o", s(&m)])), 0);
    for format in ["json", "edge-tsv", "dot"] {
        for method in ["tmfg", "tmfg-a", "pmfg"] {
            let args = ["filter", "-i", s(&m), "--method", method, "--format", format];
            let (a, b) = (tmfg(&args), tmfg(&args));
            assert_eq!(code(&a), 0);
            assert_eq!(a.stdout, b.stdout, "{method} {format}");
        }
    }
}

#[test]
fn weights_round_trip_through_every_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.csv");
    tmfg(&["gen", "--dist", "factor(3,200)", "-p", "25", "-o", s(&m)]);
    let json: ResultDoc = serde_json::from_slice(&tmfg(&["filter", "-i", s(&m)]).stdout).unwrap();
    let tsv = String::from_utf8(tmfg(&["filter", "-i", s(&m), "--format", "edge-tsv"]).stdout).unwrap();
    let rows: Vec<(u32, u32, f64)> = tsv
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), json.edges.len());
    for (r, e) in rows.iter().zip(&json.edges) {
        assert_eq!((r.0, r.1), (e.i, e.j));
        assert_eq!(r.2.to_bits(), e.weight.0.to_bits());
    }
    // the generated CSV itself reads back to the oracle's exact values
    let w = tmfg::synth::generate(&tmfg::synth::MatrixSpec::new(
        tmfg::synth::Family::parse("factor(3,200)").unwrap(),
        25,
        0,
    ))
    .unwrap();
    let back = tmfg::synth::read_matrix_csv(std::fs::File::open(&m).unwrap(), tmfg::Transform::Raw).unwrap();
    assert_eq!(w.to_dense(), back.to_dense());
}

#[test]
fn dot_output_has_only_vertices_edges_and_weight_labels() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "k4.csv", K4);
    let dot = String::from_utf8(tmfg(&["filter", "-i", s(&m), "--format", "dot"]).stdout).unwrap();
    let body: Vec<&str> = dot.lines().skip(1).collect();
    assert_eq!(body[0], "graph tmfg {");
    assert_eq!(body[1..5], ["  0;", "  1;", "  2;", "  3;"]);
    assert_eq!(body[5], "  0 -- 1 [label=\"1.0000000000000001e-1\"];");
    assert_eq!(body.len(), 1 + 4 + 6 + 1);
}

#[test]
fn validate_passes_clean_output_and_flags_a_deleted_edge() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.csv");
    tmfg(&["gen", "-p", "30", "--seed", "2", "-o", s(&m)]);
    let r = dir.path().join("r.json");
    tmfg(&["filter", "-i", s(&m), "-o", s(&r)]);
    let ok = tmfg(&["validate", s(&r)]);
    assert_eq!(code(&ok), 0);
    assert!(String::from_utf8_lossy(&ok.stdout).ends_with("result: pass\n"));

    let mut doc: ResultDoc = serde_json::from_slice(&std::fs::read(&r).unwrap()).unwrap();
    let gone = doc.edges.remove(7);
    doc.total_weight.0 -= gone.weight.0;
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, serde_json::to_vec(&doc).unwrap()).unwrap();
    let bad = tmfg(&["validate", s(&broken)]);
    assert_eq!(code(&bad), 1);
    let text = String::from_utf8_lossy(&bad.stdout);
    assert!(text.contains("FAIL edge count: 83 edges, expected 3p-6 = 84"), "{text}");
    assert!(text.contains("PASS planar"));
}

#[test]
fn flipped_output_skips_the_chordality_check() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.csv");
    tmfg(&["gen", "-p", "60", "--seed", "8", "-o", s(&m)]);
    let r = dir.path().join("r.json");
    tmfg(&["filter", "-i", s(&m), "--method", "tmfg-t1", "-o", s(&r)]);
    let out = tmfg(&["validate", s(&r)]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS planar"));
    assert!(!text.contains("chordal"), "{text}");
}

#[test]
fn input_errors_exit_with_two_and_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let asym = write(dir.path(), "a.csv", "a,b,c,d\n0,1,2,3\n1,0,4,5\n2,4,0,6\n3,5,7,0\n");
    let out = tmfg(&["filter", "-i", s(&asym)]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 5"), "{err}");

    let nan = write(dir.path(), "n.csv", "0,1,2,3\n1,0,x,5\n2,4,0,6\n3,5,6,0\n");
    let out = tmfg(&["filter", "-i", s(&nan)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let neg = write(dir.path(), "g.csv", "0,-1,2,3\n-1,0,4,5\n2,4,0,6\n3,5,6,0\n");
    assert_eq!(code(&tmfg(&["filter", "-i", s(&neg)])), 2);

    let junk = write(dir.path(), "j.json", "{\"method\": ");
    assert_eq!(code(&tmfg(&["validate", s(&junk)])), 2);
    assert_eq!(code(&tmfg(&["filter", "-i", "/nonexistent/file.csv"])), 2);
    assert_eq!(code(&tmfg(&["filter"])), 2);
}

#[test]
fn entropy_score_needs_a_time_series() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "k4.csv", K4);
    assert_eq!(code(&tmfg(&["filter", "-i", s(&m), "--score", "entropy"])), 2);

    let mut series = String::from("a,b,c,d,e,f\n");
    for t in 0..50u32 {
        let x: Vec<String> = (0..6u32)
            .map(|j| format!("{}", ((t * 7 + j * 13) % 17) as f64 + (j as f64) * 0.1 * t as f64))
            .collect();
        series.push_str(&x.join(","));
        series.push('\n');
    }
    let ts = write(dir.path(), "ts.csv", &series);
    let out = tmfg(&["filter", "-i", s(&ts), "--input-format", "series", "--score", "entropy"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc: ResultDoc = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.edges.len(), 12);
    assert_eq!(doc.nodes[4].name.as_deref(), Some("e"));
}

#[test]
fn output_directory_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_tmfg"))
        .args(["gen", "-p", "10", "--seed", "4"])
        .env("TMFG_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert!(dir.path().join("uniform-p10-seed4-sample0.csv").exists());
}

#[test]
fn pmfg_against_itself_is_exactly_one() {
    let out = tmfg(&["compare", "--dist", "uniform", "--methods", "pmfg", "--samples", "1", "-p", "30"]);
    assert_eq!(code(&out), 0);
    let doc: tmfg_cli::commands::compare::CompareDoc = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.rows[0].mean_ratio[0].0, 1.0);
}

#[test]
fn replay_reproduces_outputs_and_notices_changes() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.csv");
    tmfg(&["gen", "--dist", "beta(3,0.5)", "-p", "30", "-o", s(&m)]);
    let c = dir.path().join("c.txt");
    let args = [
        "compare", "--dist", "pareto(1)", "--methods", "tmfg,tmfg-s", "--samples", "2", "-p", "40,50",
        "--format", "table", "--timing", "--jobs", "2", "-o", s(&c),
    ];
    assert_eq!(code(&tmfg(&args)), 0);
    let r = dir.path().join("r.tsv");
    tmfg(&["filter", "-i", s(&m), "--format", "edge-tsv", "--timing", "-o", s(&r)]);
    for f in [&m, &c, &r] {
        let out = tmfg(&["replay", s(f)]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    let text = std::fs::read_to_string(&m).unwrap().replacen("e-1,", "e-2,", 1);
    std::fs::write(&m, text).unwrap();
    let out = tmfg(&["replay", s(&r)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("has changed"));
}
