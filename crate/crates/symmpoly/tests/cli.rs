use std::process::{Command, Output};

use symmpoly::io::read_jsonl;

fn symmpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symmpoly")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn assert_usage_error(args: &[&str]) {
    let o = symmpoly(args);
    assert_eq!(o.status.code(), Some(2), "{args:?}");
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    assert!(err.starts_with("error: "));
}

fn single_trailing_newline(s: &str) -> bool {
    s.ends_with('\n') && !s.ends_with("\n\n")
}

#[test]
fn sample_writes_closed_polygons() {
    let o = symmpoly(&["sample", "--space", "pol2", "--n", "10", "--count", "3", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(single_trailing_newline(&text));
    let polys = read_jsonl(text.as_bytes()).unwrap();
    assert_eq!(polys.len(), 3);
    for p in &polys {
        assert!(p.is_closed() && p.n() == 10 && p.closure_residual() <= 1e-10);
    }
}

#[test]
fn seed_defaults_to_fixed_constant() {
    let a = symmpoly(&["sample", "--space", "arm3", "--n", "6", "--count", "2"]);
    let b = symmpoly(&["sample", "--space", "arm3", "--n", "6", "--count", "2", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bounds_row() {
    let o = symmpoly(&["bounds", "--dim", "2", "--k", "2", "--n", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,k,n,value,clipped,asymptote_coeff"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..3], ["b2", "2", "100"]);
    assert!((row[3].parse::<f64>().unwrap() - 0.336007).abs() < 1e-6);
    assert!(lines.next().is_none());
    assert!(single_trailing_newline(&text));
}

#[test]
fn bounds_table_without_k() {
    let text = stdout(&symmpoly(&["bounds", "--dim", "3", "--n", "12"]));
    assert_eq!(text.lines().count(), 1 + 7);
    assert!(text.lines().nth(1).unwrap().starts_with("b3,1,12,"));
}

#[test]
fn usage_and_domain_errors_exit_2() {
    assert_usage_error(&["sample", "--bogus"]);
    assert_usage_error(&["frobnicate"]);
    assert_usage_error(&["sample", "--space", "pol4"]);
    assert_usage_error(&["sample", "--n", "2"]);
    assert_usage_error(&["sample", "--n", "-3"]);
    assert_usage_error(&["sample", "--workers", "0"]);
    assert_usage_error(&["bounds", "--dim", "4"]);
    assert_usage_error(&["bounds", "--dim", "2", "--k", "96", "--n", "100"]);
    assert_usage_error(&["tv", "--space", "pol2", "--n", "20", "--count", "1000", "--bins", "50"]);
    assert_usage_error(&["verify", "--level", "shallow"]);
}

#[test]
fn worker_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    for cmd in [
        vec!["sample", "--space", "pol3", "--n", "8", "--count", "3000"],
        vec!["stats", "--space", "pol3", "--n", "20", "--count", "5000"],
        vec!["tv", "--space", "pol2", "--n", "30", "--count", "20000", "--bins", "8"],
    ] {
        let mut outputs = Vec::new();
        for w in ["1", "4"] {
            let grid = dir.path().join(format!("grid_{w}.csv"));
            let mut args = cmd.clone();
            args.extend(["--workers", w]);
            if cmd[0] == "tv" {
                args.extend(["--out", grid.to_str().unwrap()]);
            }
            let o = symmpoly(&args);
            assert_eq!(o.status.code(), Some(0), "{args:?}");
            let grid_bytes = std::fs::read(&grid).unwrap_or_default();
            outputs.push((o.stdout, grid_bytes));
        }
        assert_eq!(outputs[0], outputs[1], "{cmd:?}");
    }
}

#[test]
fn stats_summarizes_each_functional() {
    let text = stdout(&symmpoly(&["stats", "--space", "pol3", "--n", "20", "--count", "2000"]));
    let names: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(5).unwrap()).collect();
    assert_eq!(names, ["kappa", "theta_1", "tau_total", "tau_1"]);
    assert!(text.starts_with("space,n,count,seed,excluded,functional,mean,variance,std_error\n"));
}

#[test]
fn tv_grid_file() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.csv");
    let o = symmpoly(&["tv", "--space", "pol3", "--n", "30", "--count", "10000", "--bins", "4", "--out", grid.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let summary = stdout(&o);
    assert!(summary.lines().nth(1).unwrap().starts_with("pol3,arm3,30,1,10000,4,"));
    let grid = std::fs::read_to_string(grid).unwrap();
    assert!(grid.starts_with("cell,bin_1,bin_2,bin_3,lower_1,lower_2,lower_3,freq_a,freq_b\n"));
    assert_eq!(grid.lines().count(), 1 + 64);
    let total_a: f64 = grid.lines().skip(1).map(|l| l.rsplit(',').nth(1).unwrap().parse::<f64>().unwrap()).sum();
    assert!((total_a - 1.0).abs() < 1e-12);
}

#[test]
fn density_check_passes() {
    let o = symmpoly(&["density-check"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("check,measured,threshold,status\n"));
    assert_eq!(text.lines().count(), 1 + 5);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",PASS")));
}
