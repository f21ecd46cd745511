//! CSV and JSON file formats.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a file
//! written twice from the same data is byte-identical and reads back exactly.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::front::FrontApproximation;
use crate::metrics::ProfileCurve;

fn header(prefix: &str, count: usize) -> impl Iterator<Item = String> + '_ {
    (1..=count).map(move |i| format!("{prefix}_{i}"))
}

fn fmt_all(values: &[f64]) -> impl Iterator<Item = String> + '_ {
    values.iter().map(|v| v.to_string())
}

/// Front CSV: `run_index, w_1..w_r, x_1..x_n, f_1..f_r, c_bar`.
pub fn write_front_csv<W: Write>(front: &FrontApproximation, out: W) -> Result<()> {
    let r = front.num_objectives;
    let n = front.num_variables;
    let mut w = csv::Writer::from_writer(out);
    let mut head = vec!["run_index".to_string()];
    head.extend(header("w", r));
    head.extend(header("x", n));
    head.extend(header("f", r));
    head.push("c_bar".into());
    w.write_record(&head)
        .map_err(|e| Error::io("front csv", e))?;
    for p in &front.points {
        let mut rec = vec![p.run_index.to_string()];
        rec.extend(fmt_all(p.weight.entries()));
        rec.extend(fmt_all(&p.x));
        rec.extend(fmt_all(&p.fx));
        rec.push(p.c_bar.to_string());
        w.write_record(&rec)
            .map_err(|e| Error::io("front csv", e))?;
    }
    w.flush().map_err(|e| Error::io("front csv", e))
}

/// Rows of points under a `prefix_1..prefix_k` header.
pub fn write_points_csv<W: Write>(prefix: &str, points: &[Vec<f64>], out: W) -> Result<()> {
    let k = points.first().map_or(0, Vec::len);
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(prefix, k))
        .map_err(|e| Error::io("points csv", e))?;
    for p in points {
        w.write_record(fmt_all(p))
            .map_err(|e| Error::io("points csv", e))?;
    }
    w.flush().map_err(|e| Error::io("points csv", e))
}

/// Reads an objective-space front with header `f_1,...,f_r`.
pub fn read_front_csv(path: &Path) -> Result<Vec<Vec<f64>>> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| Error::io(path, e))?;
    parse_front_csv(&text).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(path, message),
        other => other,
    })
}

pub fn parse_front_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let head = rdr
        .headers()
        .map_err(|e| Error::parse("<front>", e))?
        .clone();
    let r = head.len();
    for (i, name) in head.iter().enumerate() {
        if name != format!("f_{}", i + 1) {
            return Err(Error::parse(
                "<front>",
                format!(
                    "expected header f_1..f_{r}, found `{name}` in column {}",
                    i + 1
                ),
            ));
        }
    }
    let mut points = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::parse("<front>", e))?;
        let row = rec
            .iter()
            .map(|s| s.parse::<f64>().ok().filter(|v| v.is_finite()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                Error::parse("<front>", format!("bad number on data row {}", line + 1))
            })?;
        points.push(row);
    }
    Ok(points)
}

/// Profile CSV: `tau, rho_<solver>...`. Curves must share breakpoints.
pub fn write_profile_csv<W: Write>(curves: &[ProfileCurve], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut head = vec!["tau".to_string()];
    head.extend(curves.iter().map(|c| format!("rho_{}", c.solver_id)));
    w.write_record(&head)
        .map_err(|e| Error::io("profile csv", e))?;
    let taus = curves.first().map_or(&[][..], |c| &c.tau_breakpoints[..]);
    for (k, tau) in taus.iter().enumerate() {
        let mut rec = vec![tau.to_string()];
        rec.extend(curves.iter().map(|c| c.rho_values[k].to_string()));
        w.write_record(&rec)
            .map_err(|e| Error::io("profile csv", e))?;
    }
    w.flush().map_err(|e| Error::io("profile csv", e))
}

/// Pretty JSON followed by a newline.
pub fn write_json<T: Serialize + ?Sized, W: Write>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Error::io("json", e))?;
    out.write_all(b"\n").map_err(|e| Error::io("json", e))
}

/// Creates `path` and hands a buffered writer to `f`.
pub fn write_file<F>(path: &Path, f: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> Result<()>,
{
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    f(&mut w)?;
    w.flush().map_err(|e| Error::io(path, e))
}
