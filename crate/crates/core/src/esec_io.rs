//! Tabular text format for event-chain matrices.
//!
//! ```text
//! esec <label>
//! frames <f1> <f2> ... <fk>
//! <30 rows of comma-separated symbols>
//! ```
//!
//! Row order: ten touching rows, ten static rows, ten dynamic rows, each
//! block in the canonical pair order.

use std::io::{BufRead, BufReader, Read, Write};

use crate::encoder::ESecMatrix;
use crate::error::{EsecError, Result};
use crate::relations::{Dsr, RelationTriple, Ssr, Tnr};

fn parse_err(line: usize, message: impl Into<String>) -> EsecError {
    EsecError::Parse {
        line,
        message: message.into(),
    }
}

pub fn save_esec<W: Write>(matrix: &ESecMatrix, mut out: W) -> Result<()> {
    writeln!(out, "esec {}", matrix.label)?;
    let frames: Vec<String> = matrix.column_frames.iter().map(|f| f.to_string()).collect();
    writeln!(out, "frames {}", frames.join(" "))?;
    for pair in 0..10 {
        let row: Vec<&str> = matrix.columns.iter().map(|c| c[pair].tnr.as_str()).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    for pair in 0..10 {
        let row: Vec<&str> = matrix.columns.iter().map(|c| c[pair].ssr.as_str()).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    for pair in 0..10 {
        let row: Vec<&str> = matrix.columns.iter().map(|c| c[pair].dsr.as_str()).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn load_esec<R: Read>(input: R) -> Result<ESecMatrix> {
    let reader = BufReader::new(input);
    let mut lines = reader.lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty input"))?;
    let header = header?;
    let label = header
        .strip_prefix("esec ")
        .ok_or_else(|| parse_err(1, "expected `esec <label>` header"))?
        .trim()
        .to_string();
    if label.is_empty() {
        return Err(parse_err(1, "missing label"));
    }

    let (_, frames_line) = lines
        .next()
        .ok_or_else(|| parse_err(2, "missing frames line"))?;
    let frames_line = frames_line?;
    let frames_str = frames_line
        .strip_prefix("frames ")
        .ok_or_else(|| parse_err(2, "expected `frames <f1> ...`"))?;
    let column_frames: Vec<usize> = frames_str
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(2, format!("bad frame `{t}`"))))
        .collect::<Result<_>>()?;
    let k = column_frames.len();
    if k == 0 {
        return Err(parse_err(2, "matrix needs at least one column"));
    }

    let mut rows: Vec<Vec<String>> = Vec::with_capacity(30);
    for (lineno, line) in lines {
        let lineno = lineno + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<String> = line.split(',').map(|c| c.trim().to_string()).collect();
        if cells.len() != k {
            return Err(parse_err(
                lineno,
                format!("row has {} cells, expected {k}", cells.len()),
            ));
        }
        rows.push(cells);
    }
    if rows.len() != 30 {
        return Err(parse_err(
            0,
            format!("expected 30 relation rows, found {}", rows.len()),
        ));
    }

    let mut columns = vec![[RelationTriple::UNDEFINED; 10]; k];
    for pair in 0..10 {
        for col in 0..k {
            let t = Tnr::parse(&rows[pair][col])
                .ok_or_else(|| parse_err(3 + pair, format!("bad TNR `{}`", rows[pair][col])))?;
            let s = Ssr::parse(&rows[10 + pair][col]).ok_or_else(|| {
                parse_err(13 + pair, format!("bad SSR `{}`", rows[10 + pair][col]))
            })?;
            let d = Dsr::parse(&rows[20 + pair][col]).ok_or_else(|| {
                parse_err(23 + pair, format!("bad DSR `{}`", rows[20 + pair][col]))
            })?;
            columns[col][pair] = RelationTriple { tnr: t, ssr: s, dsr: d };
        }
    }

    Ok(ESecMatrix {
        label,
        columns,
        column_frames,
    })
}
