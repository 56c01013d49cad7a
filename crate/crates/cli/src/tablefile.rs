//! Permutation table files.
//!
//! ```text
//! QPPTABLE v1 N=<N>
//! <pi(0)>
//! ...
//! <pi(N-1)>
//! ```
//!
//! Decimal, one value per line, every line newline-terminated.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use qpp_core::PermutationTable;
use thiserror::Error;

const MAGIC: &str = "QPPTABLE v1 N=";

#[derive(Debug, Error)]
pub enum TableFileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed table: {0}")]
    Format(String),
}

pub fn render(table: &PermutationTable) -> String {
    let mut out = String::with_capacity(table.as_slice().len() * 6 + 32);
    let _ = writeln!(out, "{MAGIC}{}", table.modulus());
    for v in table.as_slice() {
        let _ = writeln!(out, "{v}");
    }
    out
}

pub fn parse(text: &str) -> Result<PermutationTable, TableFileError> {
    let bad = |msg: String| TableFileError::Format(msg);
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| bad("missing final newline".into()))?;
    let mut lines = body.split('\n');
    let header = lines.next().unwrap_or_default();
    let n: usize = header
        .strip_prefix(MAGIC)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad(format!("bad header {header:?}")))?;
    let map = lines
        .enumerate()
        .map(|(i, line)| {
            line.parse::<u32>()
                .map_err(|_| bad(format!("line {}: {line:?}", i + 2)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if map.len() != n {
        return Err(bad(format!(
            "header says N={n}, found {} entries",
            map.len()
        )));
    }
    PermutationTable::from_map(map).map_err(|e| bad(e.to_string()))
}

pub fn write(path: &Path, table: &PermutationTable) -> Result<(), TableFileError> {
    fs::write(path, render(table)).map_err(|source| TableFileError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read(path: &Path) -> Result<PermutationTable, TableFileError> {
    let text = fs::read_to_string(path).map_err(|source| TableFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}
