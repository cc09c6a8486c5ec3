//! JSONL polygon records and the CSV tables emitted by the CLI.
//!
//! A polygon record is one line of the form
//! `{"dim": 2, "closed": true, "edges": [[x, y], ...]}` with every
//! coordinate written at 17 significant digits, so reading back a written
//! file recovers each double exactly.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::Deserialize;
use symmpoly_core::bounds::BoundEvaluation;
use symmpoly_core::lab::{EnsembleSummary, GridHistogram};
use symmpoly_core::Polygon;

use crate::verify::Check;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    dim: u64,
    closed: bool,
    edges: Vec<Vec<f64>>,
}

fn parse_record(text: &str) -> Result<Polygon, String> {
    let rec: Record = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if rec.dim != 2 && rec.dim != 3 {
        return Err(format!("dim must be 2 or 3, got {}", rec.dim));
    }
    let dim = rec.dim as usize;
    let mut edges = Vec::with_capacity(rec.edges.len());
    for (i, e) in rec.edges.iter().enumerate() {
        if e.len() != dim {
            return Err(format!("edge {} has {} coordinates, expected {dim}", i + 1, e.len()));
        }
        edges.push([e[0], e[1], if dim == 3 { e[2] } else { 0.0 }]);
    }
    Polygon::new(dim, rec.closed, edges).map_err(|e| e.to_string())
}

fn push_double(out: &mut String, x: f64) {
    write!(out, "{x:.16e}").unwrap();
}

/// One JSONL record, without the trailing newline.
pub fn polygon_record(p: &Polygon) -> String {
    let mut out = format!("{{\"dim\": {}, \"closed\": {}, \"edges\": [", p.dim(), p.is_closed());
    for (i, e) in p.edges().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push('[');
        for (j, &x) in e[..p.dim()].iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            push_double(&mut out, x);
        }
        out.push(']');
    }
    out.push_str("]}");
    out
}

pub fn write_jsonl<W: Write>(mut w: W, polygons: &[Polygon]) -> io::Result<()> {
    for p in polygons {
        writeln!(w, "{}", polygon_record(p))?;
    }
    w.flush()
}

/// Reads records until end of input. Line numbers in errors are 1-based.
pub fn read_jsonl<R: BufRead>(r: R) -> Result<Vec<Polygon>, IoError> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        out.push(parse_record(&line).map_err(|message| IoError::Parse { line: i + 1, message })?);
    }
    Ok(out)
}

pub fn write_ensemble(path: &Path, polygons: &[Polygon]) -> Result<(), IoError> {
    Ok(write_jsonl(BufWriter::new(File::create(path)?), polygons)?)
}

pub fn read_ensemble(path: &Path) -> Result<Vec<Polygon>, IoError> {
    read_jsonl(BufReader::new(File::open(path)?))
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// One row per functional.
pub fn summary_csv(s: &EnsembleSummary) -> String {
    let mut out = String::from("space,n,count,seed,excluded,functional,mean,variance,std_error\n");
    for r in &s.records {
        writeln!(out, "{},{},{},{},{},{},{},{},{}", s.space, s.n, s.count, s.seed, s.excluded, r.name, r.mean, r.variance, r.std_error).unwrap();
    }
    out
}

pub fn bounds_csv(rows: &[BoundEvaluation]) -> String {
    let mut out = String::from("family,k,n,value,clipped,asymptote_coeff\n");
    for e in rows {
        writeln!(out, "{},{},{},{},{},{}", e.family.name(), e.params.k, e.params.n, opt(e.value), opt(e.clipped()), opt(e.asymptote_coeff)).unwrap();
    }
    out
}

/// Cell frequencies of both samples, with the per-axis bin index of each
/// cell and the bin's lower edge.
pub fn grid_csv(g: &GridHistogram) -> String {
    let mut out = String::from("cell");
    for axis in 1..=g.dim {
        write!(out, ",bin_{axis}").unwrap();
    }
    for axis in 1..=g.dim {
        write!(out, ",lower_{axis}").unwrap();
    }
    out.push_str(",freq_a,freq_b\n");
    for (cell, fa, fb) in g.frequencies() {
        write!(out, "{cell}").unwrap();
        let coords = g.cell_coords(cell);
        for &c in &coords {
            write!(out, ",{c}").unwrap();
        }
        for (&c, &(lo, hi)) in coords.iter().zip(&g.ranges) {
            write!(out, ",{}", lo + (hi - lo) * c as f64 / g.bins_per_axis as f64).unwrap();
        }
        writeln!(out, ",{fa},{fb}").unwrap();
    }
    out
}

fn num(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-4 {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

/// `check,measured,threshold,status` rows, as written by `verify` and
/// `density-check`.
pub fn checks_csv(checks: &[Check]) -> String {
    let mut out = String::from("check,measured,threshold,status\n");
    for c in checks {
        writeln!(out, "{},{},{},{}", c.name, num(c.measured), num(c.threshold), if c.pass { "PASS" } else { "FAIL" }).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_format() {
        let p = Polygon::planar(false, &[[1.0, -0.5], [0.25, 0.0]]).unwrap();
        assert_eq!(
            polygon_record(&p),
            r#"{"dim": 2, "closed": false, "edges": [[1.0000000000000000e0, -5.0000000000000000e-1], [2.5000000000000000e-1, 0.0000000000000000e0]]}"#
        );
    }

    #[test]
    fn parse_errors_name_the_line() {
        let good = polygon_record(&Polygon::spatial(true, vec![[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]]).unwrap());
        let text = format!("{good}\n{{\"dim\": 4, \"closed\": true, \"edges\": [[1,2,3,4]]}}\n");
        match read_jsonl(text.as_bytes()) {
            Err(IoError::Parse { line: 2, message }) => assert!(message.contains("dim")),
            other => panic!("{other:?}"),
        }
        let text = format!("{good}\n{good}\n{{\"dim\": 3, \"closed\": true, \"edges\": [[1,2]]}}\n");
        assert!(matches!(read_jsonl(text.as_bytes()), Err(IoError::Parse { line: 3, .. })));
        assert!(matches!(read_jsonl("not json\n".as_bytes()), Err(IoError::Parse { line: 1, .. })));
        assert!(matches!(read_jsonl("{\"dim\": 2, \"closed\": true}\n".as_bytes()), Err(IoError::Parse { line: 1, .. })));
    }

    #[test]
    fn empty_input_is_empty_list() {
        assert!(read_jsonl("".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn checks_table() {
        let rows = [Check::at_most(1, "a", 0.5, 1.0), Check::at_least(1, "b", 0.5, 1.0)];
        assert_eq!(checks_csv(&rows), "check,measured,threshold,status\na,0.5,1,PASS\nb,0.5,1,FAIL\n");
    }
}
