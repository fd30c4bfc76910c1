use std::path::Path;
use std::process::{Command, Output};

use sdnsim::cli::report::{parse_metrics, METRICS_HEADER};
use sdnsim::Mode;

fn sdnsim(args: &[&str], config: &Path) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sdnsim"));
    let (sub, rest) = args.split_first().expect("subcommand");
    cmd.arg(sub).arg(config).args(rest);
    cmd.output().expect("binary runs")
}

fn config_file(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("scenario.cfg");
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sweep_writes_fourteen_ordered_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(dir.path(), "");
    let out = dir.path().join("out");
    let o = sdnsim(&["sweep", "--out", out.to_str().unwrap(), "--quiet"], &cfg);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());

    let text = std::fs::read_to_string(out.join("metrics.csv")).unwrap();
    assert_eq!(text.lines().next().unwrap(), METRICS_HEADER.join(","));
    let reports = parse_metrics(&text).unwrap();
    assert_eq!(reports.len(), 14);
    for (i, r) in reports.iter().enumerate() {
        assert_eq!(r.n, 20 + 30 * (i / 2));
        assert_eq!(r.mode, if i % 2 == 0 { Mode::Traditional } else { Mode::Sdn });
    }
    for chart in ["latency.svg", "capacity.svg", "pdr.svg", "queue.svg", "utilization.svg"] {
        let svg = std::fs::read_to_string(out.join(chart)).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains("<polyline"), "{chart}");
        assert!(svg.contains(">nodes<"), "{chart} lacks an x-axis label");
    }
    let comparison = std::fs::read_to_string(out.join("comparison.csv")).unwrap();
    assert!(comparison.lines().any(|l| l.starts_with("50,0.25,0.3,")));
}

#[test]
fn sweep_prints_headline_unless_quiet() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(dir.path(), "sweep.end = 80\n");
    let out = dir.path().join("out");
    let o = sdnsim(&["sweep", "--out", out.to_str().unwrap()], &cfg);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("n=50: capex reduction 0.25"));
}

#[test]
fn seed_flag_changes_results() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(dir.path(), "seeds_per_point = 1\n");
    let a = sdnsim(&["simulate", "--n", "50", "--mode", "traditional"], &cfg);
    let b = sdnsim(&["simulate", "--n", "50", "--mode", "traditional", "--seed", "9"], &cfg);
    let c = sdnsim(&["simulate", "--n", "50", "--mode", "traditional", "--seed", "1"], &cfg);
    assert!(a.status.success() && b.status.success());
    assert_ne!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn simulate_emits_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(dir.path(), "");
    let o = sdnsim(&["simulate", "--n", "50", "--mode", "sdn"], &cfg);
    assert!(o.status.success());
    let reports = parse_metrics(&stdout(&o)).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!((reports[0].n, reports[0].mode), (50, Mode::Sdn));
}

#[test]
fn cost_reports_hardware_reduction() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(dir.path(), "");
    let o = sdnsim(&["cost", "--n", "50"], &cfg);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "metric,traditional,sdn,reduction");
    assert!(text.lines().any(|l| l == "hardware,5000,3750,0.25"));
    assert!(text.lines().any(|l| l == "opex,1500,1050,0.3"));
}

#[test]
fn capacity_and_resources_tables() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(dir.path(), "");
    let o = sdnsim(&["capacity", "--n", "50"], &cfg);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(1).unwrap().starts_with("50,traditional,700000,0,"));

    let o = sdnsim(&["resources"], &cfg);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 181);
    assert!(text.lines().any(|l| l.starts_with("180,100,")));
}

#[test]
fn config_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(dir.path(), "seed = 2\ntopology.link_probability = 1.5\n");
    let o = sdnsim(&["cost", "--n", "50"], &cfg);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("topology.link_probability") && err.contains("line 2"), "{err}");

    let missing = dir.path().join("absent.cfg");
    assert_eq!(sdnsim(&["resources"], &missing).status.code(), Some(1));
}

#[test]
fn model_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(dir.path(), "reference_n = 51\n");
    let out = dir.path().join("out");
    let o = sdnsim(&["sweep", "--out", out.to_str().unwrap()], &cfg);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("51"));
}
