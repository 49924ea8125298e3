//! CSV and JSON writers for datasets.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::sweeps::Dataset;

pub const PROGRAM: &str = "wedge-cot";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Exponent form with 17 significant digits, enough to read back the same float.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

fn provenance_line(key: &str, value: &str) -> String {
    // keep the comment block one line per entry
    let clean: String = value
        .chars()
        .map(|c| if c == '\n' { ' ' } else { c })
        .collect();
    format!("# {key}={clean}\n")
}

pub fn write_csv<W: Write>(dataset: &Dataset, out: W) -> Result<()> {
    dataset.validate()?;
    let mut out = BufWriter::new(out);
    let mut head = format!("# {PROGRAM} v{VERSION}\n");
    for (k, v) in &dataset.provenance {
        head.push_str(&provenance_line(k, v));
    }
    out.write_all(head.as_bytes())?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(dataset.headers()).map_err(io)?;
    for row in &dataset.rows {
        w.write_record(row.iter().map(|v| format_value(*v)))
            .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_json(dataset: &Dataset) -> Result<Value> {
    dataset.validate()?;
    let mut meta = Map::new();
    meta.insert("program".into(), json!(PROGRAM));
    meta.insert("version".into(), json!(VERSION));
    for (k, v) in &dataset.provenance {
        meta.insert(k.clone(), json!(v));
    }
    Ok(json!({
        "meta": meta,
        "columns": dataset.headers(),
        "rows": dataset.rows,
    }))
}

pub fn write_json<W: Write>(dataset: &Dataset, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    serde_json::to_writer_pretty(&mut out, &to_json(dataset)?)
        .map_err(|e| Error::Io(e.to_string()))?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

/// Writes `dataset` to `destination`, or to `stdout` when there is none.
pub fn serialize<W: Write>(
    dataset: &Dataset,
    format: Format,
    destination: Option<&Path>,
    stdout: W,
) -> Result<()> {
    match destination {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))?;
            match format {
                Format::Csv => write_csv(dataset, file),
                Format::Json => write_json(dataset, file),
            }
        }
        None => match format {
            Format::Csv => write_csv(dataset, stdout),
            Format::Json => write_json(dataset, stdout),
        },
    }
}

/// Provenance entries, column headers and rows.
pub type CsvTable = (Vec<(String, String)>, Vec<String>, Vec<Vec<f64>>);

/// Parses a CSV produced by [`write_csv`] back into provenance, headers and rows.
pub fn read_csv(text: &str) -> Result<CsvTable> {
    let mut provenance = Vec::new();
    let mut body = String::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# ") {
            if let Some((k, v)) = rest.split_once('=') {
                provenance.push((k.to_string(), v.to_string()));
            }
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let io = |e: csv::Error| Error::Io(e.to_string());
    let headers = r
        .headers()
        .map_err(io)?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(io)?;
        let row = rec
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|e| Error::Io(format!("bad number '{f}': {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok((provenance, headers, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweeps::Column;

    fn sample() -> Dataset {
        let mut d = Dataset::new(
            vec![Column::new("x", "eV"), Column::new("y", "au")],
            vec![vec![0.1, 1.0 / 3.0], vec![1e-300, -2.5e10]],
        )
        .unwrap();
        d.push_provenance("rho_a0", 200.0);
        d
    }

    #[test]
    fn csv_layout_and_round_trip() {
        let mut buf = Vec::new();
        write_csv(&sample(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], format!("# wedge-cot v{VERSION}"));
        assert_eq!(lines[1], "# rho_a0=200");
        assert_eq!(lines[2], "x_eV,y_au");
        let (prov, headers, rows) = read_csv(&text).unwrap();
        assert_eq!(prov, vec![("rho_a0".to_string(), "200".to_string())]);
        assert_eq!(headers, ["x_eV", "y_au"]);
        assert_eq!(rows, sample().rows);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let mut buf = Vec::new();
        write_json(&sample(), &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        let rows: Vec<Vec<f64>> = serde_json::from_value(v["rows"].clone()).unwrap();
        assert_eq!(rows, sample().rows);
        assert_eq!(v["meta"]["rho_a0"], "200");
        assert_eq!(v["columns"][1], "y_au");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [
            0.1,
            1.0 / 3.0,
            std::f64::consts::PI,
            1e-310,
            123_456_789.123_456_78,
        ] {
            assert_eq!(format_value(v).parse::<f64>().unwrap(), v);
        }
    }
}
