//! Rendering of result documents as JSON lines, CSV or aligned text.

use std::io::{self, Write};

use clap::ValueEnum;
use frobcoh::rootsums::{root_expr, user_root_coords};
use frobcoh::{RootSystem, TChar, Weight};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One result: a JSON payload plus the same content as a table.
pub struct Doc {
    pub p: u64,
    pub r: Option<u32>,
    pub degree: Option<usize>,
    pub result: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// a check inside this document came out negative
    pub failed: bool,
}

impl Doc {
    pub fn new(p: u64, header: Vec<&'static str>) -> Self {
        Doc { p, r: None, degree: None, result: Value::Null, header, rows: Vec::new(), failed: false }
    }

    pub fn r(mut self, r: u32) -> Self {
        self.r = Some(r);
        self
    }

    pub fn degree(mut self, d: usize) -> Self {
        self.degree = Some(d);
        self
    }
}

pub fn omega(w: &Weight) -> Value {
    json!(w.0)
}

/// `(1,0,-1)`, with the root-lattice expression appended when there is one.
pub fn weight_text(rs: &RootSystem, user: &Weight) -> String {
    match user_root_coords(rs, user) {
        Some(m) if m.iter().any(|&c| c != 0) => format!("{user} = {}", root_expr(&m)),
        _ => user.to_string(),
    }
}

/// Character in user coordinates: JSON list and table rows.
pub fn tchar(rs: &RootSystem, t: &TChar) -> (Value, Vec<Vec<String>>) {
    let mut items: Vec<(Weight, u64)> = t.iter().map(|(w, m)| (rs.weight_to_user(w), *m)).collect();
    items.sort();
    let json = items.iter().map(|(w, m)| json!({"omega": omega(w), "mult": m})).collect();
    let rows = items.iter().map(|(w, m)| vec![weight_text(rs, w), m.to_string()]).collect();
    (Value::Array(json), rows)
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or(String::new(), |v| v.to_string())
}

pub fn emit(rs: &RootSystem, docs: &[Doc], format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let label = rs.label().to_string();
    match format {
        Format::Json => {
            for d in docs {
                let v = json!({
                    "schema": 1,
                    "system": {"type": label, "rank": rs.rank()},
                    "p": d.p,
                    "r": d.r,
                    "degree": d.degree,
                    "result": d.result,
                });
                writeln!(out, "{v}")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut head = vec!["type", "p", "r", "degree"];
            if let Some(d) = docs.first() {
                head.extend(d.header.iter().copied());
            }
            w.write_record(&head).map_err(io::Error::other)?;
            for d in docs {
                for row in &d.rows {
                    let mut rec = vec![label.clone(), d.p.to_string(), opt(d.r), opt(d.degree)];
                    rec.extend(row.iter().cloned());
                    w.write_record(&rec).map_err(io::Error::other)?;
                }
            }
            w.flush()?;
        }
        Format::Text => {
            for (i, d) in docs.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                let mut title = format!("{label} p={}", d.p);
                if let Some(r) = d.r {
                    title += &format!(" r={r}");
                }
                if let Some(n) = d.degree {
                    title += &format!(" degree={n}");
                }
                writeln!(out, "# {title}")?;
                let mut width: Vec<usize> = d.header.iter().map(|h| h.len()).collect();
                for row in &d.rows {
                    for (k, c) in row.iter().enumerate() {
                        width[k] = width[k].max(c.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| {
                    let n = cells.len();
                    cells
                        .into_iter()
                        .enumerate()
                        .map(|(k, c)| if k + 1 == n { c.to_string() } else { format!("{c:<w$}", w = width[k]) })
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                writeln!(out, "{}", line(d.header.clone()))?;
                for row in &d.rows {
                    writeln!(out, "{}", line(row.iter().map(|s| s.as_str()).collect()))?;
                }
                if d.rows.is_empty() {
                    writeln!(out, "(none)")?;
                }
            }
        }
    }
    Ok(())
}
