//! End-to-end tests of the `blockcut` binary: output files, stdout
//! reports, determinism across runs and worker counts, and the exit-code
//! contract (1 runtime, 2 usage, 3 I/O or parse).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use blockcut::DetectionDocument;

fn blockcut() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_blockcut"));
    cmd.env_remove("BLOCKCUT_THREADS");
    cmd
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary should spawn")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "expected success, got {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data_path(name: &str) -> PathBuf {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data")).join(name)
}

fn write_bridge(dir: &Path) -> PathBuf {
    let path = dir.join("bridge.edges");
    fs::write(&path, "n 6\n0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n2 3\n").unwrap();
    path
}

#[test]
fn generate_writes_canonical_graph_and_truth_labels() {
    let dir = tempfile::tempdir().unwrap();
    let args = |g: &str, t: &str| {
        let mut cmd = blockcut();
        cmd.args(["generate", "--n1", "40", "--n2", "24", "--cin", "8", "--cout", "2"])
            .args(["--seed", "3"])
            .arg("--out")
            .arg(dir.path().join(g))
            .arg("--truth")
            .arg(dir.path().join(t));
        cmd
    };

    let report = stdout_of(&run(&mut args("a.edges", "a.truth")));
    assert!(report.contains("n = 64"), "report: {report}");
    assert!(report.contains("mean degree = "), "report: {report}");

    let text = fs::read_to_string(dir.path().join("a.edges")).unwrap();
    let g = blockcut::Graph::parse_edge_list_str(&text).unwrap();
    assert_eq!(g.vertex_count(), 64);

    let truth = fs::read_to_string(dir.path().join("a.truth")).unwrap();
    let labels: Vec<&str> = truth.lines().collect();
    assert_eq!(labels.len(), 64);
    assert!(labels[..40].iter().all(|&l| l == "1"));
    assert!(labels[40..].iter().all(|&l| l == "2"));

    stdout_of(&run(&mut args("b.edges", "b.truth")));
    assert_eq!(text, fs::read_to_string(dir.path().join("b.edges")).unwrap());
    assert_eq!(truth, fs::read_to_string(dir.path().join("b.truth")).unwrap());
}

#[test]
fn missing_required_flag_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(blockcut()
        .args(["generate", "--n1", "5", "--n2", "5", "--cin", "3", "--cout", "1"])
        .arg("--out")
        .arg(dir.path().join("g.edges")));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_variant_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_bridge(dir.path());
    let out = run(blockcut()
        .args(["detect", "--variant", "fancy"])
        .arg("--graph")
        .arg(&graph)
        .arg("--out")
        .arg(dir.path().join("r.json")));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn detect_reports_the_bridge_split() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_bridge(dir.path());
    let result = dir.path().join("r.json");
    let csv = dir.path().join("sweep.csv");

    let report = stdout_of(&run(blockcut()
        .args(["detect", "--variant", "standard"])
        .arg("--graph")
        .arg(&graph)
        .arg("--out")
        .arg(&result)
        .arg("--sweep-csv")
        .arg(&csv)));
    assert!(report.contains("q = -4.63001523e0"), "report: {report}");

    let doc: DetectionDocument =
        serde_json::from_str(&fs::read_to_string(&result).unwrap()).unwrap();
    assert_eq!(doc.n, 6);
    assert_eq!(doc.m, 7);
    assert_eq!(doc.variant, "standard");
    assert_eq!((doc.n1, doc.n2), (3, 3));
    assert_eq!(doc.m_out, 1);
    assert!((doc.q - -4.630015225985206).abs() < 1e-12);
    let swapped: Vec<u8> = doc.labels.iter().map(|&l| 3 - l).collect();
    assert!(doc.labels == [1, 1, 1, 2, 2, 2] || swapped == [1, 1, 1, 2, 2, 2]);

    let curve = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = curve.lines().collect();
    assert_eq!(lines[0], "size,q");
    assert_eq!(lines.len(), 8);
    let q_of = |line: &str| line.split(',').nth(1).unwrap().to_string();
    assert_eq!(q_of(lines[1]), q_of(lines[7]));
}

#[test]
fn detect_missing_graph_exits_3_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let result = dir.path().join("r.json");
    let out = run(blockcut()
        .arg("detect")
        .arg("--graph")
        .arg(dir.path().join("nope.edges"))
        .arg("--out")
        .arg(&result));
    assert_eq!(out.status.code(), Some(3));
    assert!(!result.exists());
}

#[test]
fn detect_propagates_non_convergence_as_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_bridge(dir.path());
    let out = run(blockcut()
        .args(["detect", "--tol", "1e-300", "--max-iter", "3"])
        .arg("--graph")
        .arg(&graph)
        .arg("--out")
        .arg(dir.path().join("r.json")));
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("did not reach residual"), "stderr: {err}");
}

#[test]
fn detect_recovers_the_karate_factions() {
    let dir = tempfile::tempdir().unwrap();
    let result = dir.path().join("karate.json");
    stdout_of(&run(blockcut()
        .args(["detect", "--variant", "dc"])
        .arg("--graph")
        .arg(data_path("karate.edges"))
        .arg("--out")
        .arg(&result)));

    let doc: DetectionDocument =
        serde_json::from_str(&fs::read_to_string(&result).unwrap()).unwrap();
    let truth: Vec<u8> = fs::read_to_string(data_path("karate.truth"))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.trim().parse().unwrap())
        .collect();
    assert_eq!(doc.labels.len(), truth.len());
    let same = doc
        .labels
        .iter()
        .zip(&truth)
        .filter(|(a, b)| a == b)
        .count();
    assert!(same.max(34 - same) >= 32, "agreement {}", same.max(34 - same));
}

#[test]
fn sweep_rejects_cin_above_csum() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(blockcut()
        .args(["sweep", "--n1", "10", "--n2", "10", "--cin-list", "120", "--csum", "100"])
        .arg("--out")
        .arg(dir.path().join("s.csv")));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_curve_is_deterministic_with_symmetric_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let run_sweep = |name: &str| {
        let path = dir.path().join(name);
        stdout_of(&run(blockcut()
            .args(["sweep", "--n1", "30", "--n2", "30", "--cin-list", "9,8"])
            .args(["--csum", "10", "--seed", "5"])
            .arg("--out")
            .arg(&path)));
        fs::read_to_string(path).unwrap()
    };

    let first = run_sweep("s1.csv");
    assert_eq!(first, run_sweep("s2.csv"));

    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines[0], "c_in,size,q");
    assert_eq!(lines.len(), 1 + 2 * 61);
    for chunk in lines[1..].chunks(61) {
        let field = |line: &str, k: usize| line.split(',').nth(k).unwrap().to_string();
        assert!(chunk.iter().all(|l| field(l, 0) == field(chunk[0], 0)));
        assert_eq!(field(chunk[0], 2), field(chunk[60], 2));
    }
}

#[test]
fn accuracy_csv_is_thread_invariant_and_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let run_accuracy = |name: &str, threads: Option<&str>| {
        let path = dir.path().join(name);
        let mut cmd = blockcut();
        if let Some(t) = threads {
            cmd.env("BLOCKCUT_THREADS", t);
        }
        stdout_of(&run(cmd
            .args(["accuracy", "--n", "40", "--cin-from", "28", "--cin-to", "30"])
            .args(["--cin-step", "2", "--csum", "40", "--reps", "3", "--seed", "7"])
            .arg("--out")
            .arg(&path)));
        fs::read_to_string(path).unwrap()
    };

    let masked = |text: &str| -> Vec<String> {
        text.lines()
            .map(|l| l.split(',').take(4).collect::<Vec<_>>().join(","))
            .collect()
    };
    let serial = run_accuracy("a1.csv", None);
    let threaded = run_accuracy("a3.csv", Some("3"));
    assert_eq!(masked(&serial), masked(&threaded));

    let lines: Vec<&str> = serial.lines().collect();
    assert_eq!(lines[0], "# c_sum = 4.00000000e1");
    assert_eq!(lines[1], "# c_in_critical = 2.44721360e1");
    assert_eq!(lines[2], "c_in,replicate,fraction_correct,eigen_iterations,wall_time");
    assert_eq!(lines.len(), 3 + 2 * 4);
    for chunk in lines[3..].chunks(4) {
        let field = |line: &str, k: usize| line.split(',').nth(k).unwrap().to_string();
        let replicates: Vec<String> = chunk.iter().map(|l| field(l, 1)).collect();
        assert_eq!(replicates, ["0", "1", "2", "mean"]);
        for line in chunk {
            let fraction: f64 = field(line, 2).parse().unwrap();
            assert!((0.0..=1.0).contains(&fraction), "fraction {fraction}");
        }
    }
}

#[test]
fn accuracy_rejects_odd_n_and_bad_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let base = |cmd: &mut Command| {
        cmd.args(["--cin-from", "28", "--cin-to", "28", "--csum", "40", "--reps", "1"])
            .arg("--out")
            .arg(dir.path().join("a.csv"));
    };

    let mut odd = blockcut();
    odd.args(["accuracy", "--n", "9"]);
    base(&mut odd);
    assert_eq!(run(&mut odd).status.code(), Some(2));

    let mut bad_threads = blockcut();
    bad_threads.env("BLOCKCUT_THREADS", "zebra");
    bad_threads.args(["accuracy", "--n", "10"]);
    base(&mut bad_threads);
    assert_eq!(run(&mut bad_threads).status.code(), Some(2));
}

#[test]
fn oracle_check_matches_the_pipeline_on_the_bridge() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_bridge(dir.path());
    let report = stdout_of(&run(blockcut()
        .args(["oracle-check", "--variant", "standard"])
        .arg("--graph")
        .arg(&graph)));
    assert!(report.contains("pipeline q: -4.63001523e0"), "report: {report}");
    assert!(report.contains("oracle q: -4.63001523e0"), "report: {report}");
    assert!(report.contains("pipeline q equals sweep max: true"), "report: {report}");
    assert!(report.contains("fraction correct vs oracle: 1.00000000e0"), "report: {report}");
}

#[test]
fn oracle_check_rejects_graphs_beyond_the_exhaustive_limit() {
    let out = run(blockcut()
        .arg("oracle-check")
        .arg("--graph")
        .arg(data_path("karate.edges")));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("exhaustive-search limit"), "stderr: {err}");
}
