//! Desk-scale acceptance run, seed 7. Prints one line per criterion with
//! its checks underneath, and exits nonzero if any criterion fails.

use std::process::ExitCode;

use symmpoly::verify::{Check, Level, Suite, CRITERIA, DEFAULT_SEED};
use symmpoly::{cli, Parallel};

const TITLES: [&str; 10] = [
    "closure and perimeter of closed polygons",
    "turning and torsion moments on open arms",
    "expected total curvature of closed polygons",
    "expectation transfer between arms and closed polygons",
    "binned TV against segment bounds",
    "bound formula identities and limits",
    "variance bounds for curvature and torsion",
    "Chebyshev tail fractions",
    "random-matrix densities",
    "verify output independent of worker count",
];

fn report(id: u8, checks: &[Check]) -> bool {
    let pass = checks.iter().all(|c| c.pass);
    println!("criterion {id:>2} {}: {}", if pass { "PASS" } else { "FAIL" }, TITLES[id as usize - 1]);
    for c in checks {
        println!("    {:<4} {:<42} measured {:<24e} threshold {:e}", if c.pass { "ok" } else { "FAIL" }, c.name, c.measured, c.threshold);
    }
    pass
}

fn verify_csv(workers: usize, dir: &std::path::Path) -> (i32, Vec<u8>) {
    let path = dir.join(format!("verify_w{workers}.csv"));
    let args = ["symmpoly", "verify", "--level", "desk", "--seed", "7", "--workers", &workers.to_string(), "--out", path.to_str().unwrap()];
    let code = cli::run(args);
    (code, std::fs::read(&path).unwrap_or_default())
}

fn main() -> ExitCode {
    let exec = Parallel::new(4).expect("worker pool");
    let suite = Suite::new(DEFAULT_SEED, Level::Desk, &exec);
    let mut passed = 0;
    for id in CRITERIA {
        let ok = if id == 10 {
            let dir = tempfile::tempdir().expect("temp dir");
            let (code1, one) = verify_csv(1, dir.path());
            let (code4, four) = verify_csv(4, dir.path());
            let differing = one.iter().zip(&four).filter(|(a, b)| a != b).count() + one.len().abs_diff(four.len());
            let checks = [
                Check::at_least(10, "verify_csv_bytes_workers_1", one.len() as f64, 1.0),
                Check::at_most(10, "verify_csv_bytes_differing_1_vs_4", differing as f64, 0.0),
                Check::at_most(10, "verify_exit_code_mismatch", (code1 != code4) as u8 as f64, 0.0),
            ];
            report(id, &checks)
        } else {
            match suite.criterion(id) {
                Ok(checks) => report(id, &checks),
                Err(e) => {
                    println!("criterion {id:>2} FAIL: {} ({e})", TITLES[id as usize - 1]);
                    false
                }
            }
        };
        passed += ok as usize;
    }
    let total = CRITERIA.count();
    println!("acceptance: {passed}/{total} criteria passed");
    if passed == total {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
