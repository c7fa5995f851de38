//! Rendering of command results as JSON, CSV or aligned text.

use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, RunConfig};

/// A command result: the JSON payload plus a flat table projection.
pub struct Output {
    pub command: String,
    pub result: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    version: &'static str,
    command: &'a str,
    config: &'a RunConfig,
    result: &'a Value,
}

pub fn render(out: &Output, config: &RunConfig) -> String {
    match config.format {
        Format::Json => {
            let env = Envelope {
                version: hilbfock::VERSION,
                command: &out.command,
                config,
                result: &out.result,
            };
            let mut s = serde_json::to_string_pretty(&env).expect("serializable report");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&out.columns).expect("in-memory write");
            for row in &out.rows {
                w.write_record(row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
        }
        Format::Text => text_table(&out.columns, &out.rows),
    }
}

fn text_table(columns: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut s = line(columns.to_vec());
    for row in rows {
        s.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    s
}
