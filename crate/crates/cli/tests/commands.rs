use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_bandmin");
const EXAMPLE_MESH: &str = "(2 3 4)(1 3 5)(1 2 4 5 6)(1 3 6 7)(2 3 6 8)(3 4 5 7 8)(4 6 8)(5 6 7)\n";

fn bandmin(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .env_remove("BANDMIN_THREADS")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("p8.txt"), EXAMPLE_MESH).unwrap();
    fs::write(dir.path().join("path5.txt"), "5\n2\n1 3\n2 4\n3 5\n4\n").unwrap();
    fs::write(dir.path().join("disc.txt"), "4\n2\n1\n4\n3\n").unwrap();
    let identity: String = (1..=8).map(|k| format!("{k}\n")).collect();
    fs::write(dir.path().join("id8.txt"), identity).unwrap();
    dir
}

#[test]
fn gibbs_prints_numbering_and_bandwidth() {
    let dir = workspace();
    let out = bandmin(dir.path(), &["gibbs", "--mesh", "path5.txt"]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("bandwidth=4\n"));

    let out = bandmin(dir.path(), &["gibbs", "--mesh", "p8.txt", "--out", "g"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "bandwidth=19\n");
    let written = fs::read_to_string(dir.path().join("g/numbering.txt")).unwrap();
    let evaluated = bandmin(
        dir.path(),
        &["eval", "--mesh", "p8.txt", "--numbering", "g/numbering.txt"],
    );
    assert_eq!(written.lines().count(), 8);
    assert_eq!(stdout(&evaluated), "bandwidth=19\n");
}

#[test]
fn gibbs_rejects_disconnected_mesh() {
    let dir = workspace();
    let out = bandmin(dir.path(), &["gibbs", "--mesh", "disc.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not connected"));
}

#[test]
fn eval_examples() {
    let dir = workspace();
    let out = bandmin(
        dir.path(),
        &["eval", "--mesh", "p8.txt", "--numbering", "id8.txt"],
    );
    assert_eq!(stdout(&out), "bandwidth=18\n");

    fs::write(dir.path().join("swap.txt"), "8\n2\n3\n4\n5\n6\n7\n1\n").unwrap();
    let out = bandmin(
        dir.path(),
        &["eval", "--mesh", "p8.txt", "--numbering", "swap.txt"],
    );
    assert_eq!(stdout(&out), "bandwidth=23\n");

    fs::write(dir.path().join("dup.txt"), "1\n2\n3\n4\n5\n6\n7\n7\n").unwrap();
    let out = bandmin(
        dir.path(),
        &["eval", "--mesh", "p8.txt", "--numbering", "dup.txt"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bijection"));

    let out = bandmin(
        dir.path(),
        &["eval", "--mesh", "path5.txt", "--numbering", "id8.txt"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("size mismatch"));
}

#[test]
fn evolve_is_deterministic_and_reports_summary() {
    let dir = workspace();
    fs::write(
        dir.path().join("run.conf"),
        "# short GA\nscheme = ga\npopulation_size = 20\npc = 0.6\npm = 0.2\nxover = breadth_first\nmax_evaluations = 3000\nsnapshot_every = 500\nseed = 4\n",
    )
    .unwrap();
    let args = ["evolve", "--grid", "8x8", "--config", "run.conf"];
    let a = bandmin(dir.path(), &args);
    let b = bandmin(dir.path(), &args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("evaluations,best,mean\n"));

    let summary = stderr(&a);
    let fields: Vec<(&str, &str)> = summary
        .trim()
        .split(' ')
        .map(|f| f.split_once('=').unwrap())
        .collect();
    assert_eq!(fields[0].0, "gibbs");
    let gibbs: f64 = fields[0].1.parse().unwrap();
    let best: f64 = fields[1].1.parse().unwrap();
    let pct: f64 = fields[2].1.parse().unwrap();
    assert!(pct >= 0.0);
    assert!((pct - 100.0 * (gibbs - best) / gibbs).abs() <= 1e-9 * pct.abs().max(1.0));
}

#[test]
fn evolve_budget_equal_to_population() {
    let dir = workspace();
    fs::write(
        dir.path().join("tiny.conf"),
        "scheme = ga\npopulation_size = 50\nmax_evaluations = 50\n",
    )
    .unwrap();
    let out = bandmin(
        dir.path(),
        &[
            "evolve",
            "--grid",
            "5x5",
            "--config",
            "tiny.conf",
            "--out",
            "o",
        ],
    );
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("o/trace.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.lines().nth(1).unwrap().starts_with("50,"));
    let summary = fs::read_to_string(dir.path().join("o/summary.txt")).unwrap();
    assert_eq!(summary, stdout(&out));
}

#[test]
fn evolve_rejects_unknown_key() {
    let dir = workspace();
    fs::write(
        dir.path().join("bad.conf"),
        "pc = 0.5\nmutation_rate = 0.3\n",
    )
    .unwrap();
    let out = bandmin(
        dir.path(),
        &["evolve", "--grid", "5x5", "--config", "bad.conf"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("`mutation_rate`"));
}

#[test]
fn genmesh_examples() {
    let dir = workspace();
    let out = bandmin(dir.path(), &["genmesh", "--grid", "2x2"]);
    assert_eq!(stdout(&out), "4\n2 3 4\n1 4\n1 4\n1 2 3\n");

    bandmin(
        dir.path(),
        &["genmesh", "--grid", "39x39", "--out", "a.txt"],
    );
    bandmin(
        dir.path(),
        &["genmesh", "--grid", "39x39", "--out", "b.txt"],
    );
    let a = fs::read_to_string(dir.path().join("a.txt")).unwrap();
    assert_eq!(a.lines().next(), Some("1521"));
    assert_eq!(a, fs::read_to_string(dir.path().join("b.txt")).unwrap());

    let out = bandmin(
        dir.path(),
        &[
            "genmesh", "--random", "10", "0.2", "7", "--format", "inline",
        ],
    );
    assert!(stdout(&out).starts_with('('));

    let out = bandmin(dir.path(), &["genmesh", "--grid", "1x5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let dir = workspace();
    assert_eq!(bandmin(dir.path(), &["gibbs"]).status.code(), Some(2));
    assert_eq!(bandmin(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        bandmin(dir.path(), &["gibbs", "--mesh", "missing.txt"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bandmin(
            dir.path(),
            &["gibbs", "--mesh", "p8.txt", "--format", "xml"]
        )
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn sweep_writes_traces_and_aggregate() {
    let dir = workspace();
    fs::write(
        dir.path().join("plan.txt"),
        "mesh = p8.txt\nrepetitions = 3\nbase_seed = 11\nmu = 1\nlambda = 7\nmax_evaluations = 500\n",
    )
    .unwrap();
    let out = bandmin(dir.path(), &["sweep", "--plan", "plan.txt", "--out", "s"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let traces: Vec<_> = fs::read_dir(dir.path().join("s/traces")).unwrap().collect();
    assert_eq!(traces.len(), 3);
    let aggregate = fs::read_to_string(dir.path().join("s/aggregate.csv")).unwrap();
    assert_eq!(aggregate.lines().count(), 2);

    // Aggregate statistics recomputed from the per-run traces.
    let finals: Vec<f64> = (0..3)
        .map(|r| {
            let csv = fs::read_to_string(
                dir.path()
                    .join(format!("s/traces/variant000_rep{r:03}.csv")),
            )
            .unwrap();
            csv.lines()
                .last()
                .unwrap()
                .split(',')
                .nth(1)
                .unwrap()
                .parse()
                .unwrap()
        })
        .collect();
    let mean = finals.iter().sum::<f64>() / 3.0;
    let row: Vec<&str> = aggregate.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[2], "3");
    assert!((row[4].parse::<f64>().unwrap() - mean).abs() < 1e-6);
}

#[test]
fn sweep_records_failures_and_continues() {
    let dir = workspace();
    fs::write(
        dir.path().join("plan.txt"),
        "grid = 4x4\nrepetitions = 2\nscheme = ga\npopulation_size = 10\nmax_evaluations = 5, 200\n",
    )
    .unwrap();
    let out = bandmin(dir.path(), &["sweep", "--plan", "plan.txt", "--out", "s"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "runs=4 failures=2 out=s\n");
    let runs = fs::read_to_string(dir.path().join("s/runs.csv")).unwrap();
    assert_eq!(runs.matches("error:").count(), 2);
    assert_eq!(
        fs::read_dir(dir.path().join("s/traces")).unwrap().count(),
        2
    );
}

#[test]
fn sweep_repeats_identically_and_seeds_differ() {
    let dir = workspace();
    fs::write(
        dir.path().join("plan.txt"),
        "grid = 6x6\nrepetitions = 2\nbase_seed = 3\ninit = random\nmax_evaluations = 1000\npm_rand = 1, 1\n",
    )
    .unwrap();
    for name in ["a", "b"] {
        let out = bandmin(dir.path(), &["sweep", "--plan", "plan.txt", "--out", name]);
        assert!(out.status.success());
    }
    let read = |p: &str| fs::read_to_string(dir.path().join(p)).unwrap();
    assert_eq!(read("a/aggregate.csv"), read("b/aggregate.csv"));
    assert_eq!(read("a/runs.csv"), read("b/runs.csv"));
    // Same settings, different derived seeds.
    assert_ne!(
        read("a/traces/variant000_rep000.csv"),
        read("a/traces/variant001_rep000.csv")
    );
}
