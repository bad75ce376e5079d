//! Bundled snapshot of the published best-known-code comparison table.
//!
//! The snapshot is data, not code; rows don't name their defining set, so
//! each row is resolved to the candidate specs in its theorem family whose
//! closed-form (n, codeword count, d_L) reproduce the row before any
//! enumeration runs against it.

use crate::code::DefiningSetSpec;
use crate::error::{Error, Result};
use crate::oracle::predict;
use crate::ring::Z4;

const SNAPSHOT_CSV: &str = include_str!("../data/table2.csv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub m: u32,
    pub n: u64,
    pub k1: u32,
    pub k2: u32,
    pub best_known_dl: Option<u64>,
    pub our_dl: u64,
    pub theorem: u8,
}

impl TableRow {
    pub fn codeword_count(&self) -> u64 {
        4u64.pow(self.k1) * 2u64.pow(self.k2)
    }
}

#[derive(Debug, Clone)]
pub struct TableIISnapshot {
    pub rows: Vec<TableRow>,
}

impl TableIISnapshot {
    pub fn bundled() -> TableIISnapshot {
        parse_csv(SNAPSHOT_CSV).expect("bundled snapshot must parse")
    }

    pub fn rows_for_m(&self, m: u32) -> Vec<&TableRow> {
        self.rows.iter().filter(|r| r.m == m).collect()
    }
}

pub fn parse_csv(text: &str) -> Result<TableIISnapshot> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or_default().trim();
    if header != "m,n,k1,k2,best_known_dL,our_dL,theorem" {
        return Err(Error::ShapeMismatch(format!(
            "unexpected snapshot header `{header}`"
        )));
    }
    let mut rows = Vec::new();
    for (idx, raw) in lines.enumerate() {
        let line = idx + 2;
        if raw.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = raw.trim().split(',').collect();
        if cols.len() != 7 {
            return Err(Error::ConfigParse {
                line,
                msg: format!("expected 7 columns, got {}", cols.len()),
            });
        }
        let num = |s: &str| -> Result<u64> {
            s.parse().map_err(|_| Error::ConfigParse {
                line,
                msg: format!("bad number `{s}`"),
            })
        };
        let best = match cols[4].trim() {
            "" | "-" => None,
            v => Some(num(v)?),
        };
        rows.push(TableRow {
            m: num(cols[0])? as u32,
            n: num(cols[1])?,
            k1: num(cols[2])? as u32,
            k2: num(cols[3])? as u32,
            best_known_dl: best,
            our_dl: num(cols[5])?,
            theorem: num(cols[6])? as u8,
        });
    }
    Ok(TableIISnapshot { rows })
}

/// All specs in the row's theorem family whose closed forms reproduce the
/// row's (n, codeword count, d_L).
pub fn candidate_specs(row: &TableRow) -> Vec<DefiningSetSpec> {
    let family: Vec<DefiningSetSpec> = match row.theorem {
        1 => (0..4).map(|t| DefiningSetSpec::Single(Z4(t))).collect(),
        2 => vec![
            DefiningSetSpec::Pair(Z4(0), Z4(2)),
            DefiningSetSpec::Pair(Z4(1), Z4(3)),
        ],
        3 => (0..4).map(|t| DefiningSetSpec::Complement(Z4(t))).collect(),
        _ => Vec::new(),
    };
    family
        .into_iter()
        .filter(|&spec| {
            predict(row.m, spec).is_ok_and(|p| {
                p.n == row.n && p.codeword_count == row.codeword_count() && p.d_lee == row.our_dl
            })
        })
        .collect()
}
