//! Expected decompositions transcribed from published tables.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::Partition;
use crate::hopf::HopfKind;
use crate::presentations::{Functor, FunctorSpec, PresentationError};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed table file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed cell {cell:?}: {reason}")]
    Cell { cell: String, reason: String },
    #[error(transparent)]
    Spec(#[from] PresentationError),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableFile {
    pub figures: Vec<Figure>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Figure {
    pub caption: String,
    pub columns: Vec<Column>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Column {
    pub functor: Functor,
    pub rank: u8,
    pub hopf: HopfKind,
    /// Degree to cell text: `"0"`, `"?"` or a sum like `"2[31^2]+[2^21]"`.
    pub cells: BTreeMap<u32, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expected {
    Zero,
    Unknown,
    Decomposition {
        entries: BTreeMap<Partition, u64>,
        /// Partitions listed more than once in the cell; their multiplicities are summed.
        duplicates: Vec<Partition>,
    },
}

impl Expected {
    pub fn entries(&self) -> Option<BTreeMap<Partition, u64>> {
        match self {
            Expected::Zero => Some(BTreeMap::new()),
            Expected::Unknown => None,
            Expected::Decomposition { entries, .. } => Some(entries.clone()),
        }
    }
}

pub fn parse_cell(cell: &str) -> Result<Expected, TableError> {
    let bad = |reason: &str| TableError::Cell {
        cell: cell.to_string(),
        reason: reason.to_string(),
    };
    let t = cell.trim();
    match t {
        "?" => return Ok(Expected::Unknown),
        "0" => return Ok(Expected::Zero),
        _ => {}
    }
    let mut entries = BTreeMap::new();
    let mut duplicates = Vec::new();
    for term in t.split('+') {
        let term = term.trim();
        let open = term.find('[').ok_or_else(|| bad("missing '['"))?;
        let mult = match &term[..open] {
            "" => 1,
            m => m.parse::<u64>().map_err(|_| bad("bad multiplicity"))?,
        };
        let p: Partition = term[open..]
            .parse()
            .map_err(|e: crate::combinatorics::CombinatoricsError| bad(&e.to_string()))?;
        if mult == 0 {
            return Err(bad("zero multiplicity"));
        }
        let slot = entries.entry(p.clone()).or_insert(0);
        if *slot > 0 {
            duplicates.push(p);
        }
        *slot += mult;
    }
    Ok(Expected::Decomposition {
        entries,
        duplicates,
    })
}

#[derive(Clone, Debug)]
pub struct TableEntry {
    pub caption: String,
    pub spec: FunctorSpec,
    pub degree: u32,
    pub raw: String,
    pub expected: Expected,
}

impl TableFile {
    pub fn load(path: &Path) -> Result<Self, TableError> {
        let text = std::fs::read_to_string(path).map_err(|source| TableError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn entries(&self) -> Result<Vec<TableEntry>, TableError> {
        let mut out = Vec::new();
        for fig in &self.figures {
            for col in &fig.columns {
                let spec = FunctorSpec::new(col.functor, col.rank, col.hopf, None)?;
                for (degree, raw) in &col.cells {
                    out.push(TableEntry {
                        caption: fig.caption.clone(),
                        spec,
                        degree: *degree,
                        raw: raw.clone(),
                        expected: parse_cell(raw)?,
                    });
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells() {
        assert_eq!(parse_cell("0").unwrap(), Expected::Zero);
        assert_eq!(parse_cell(" ? ").unwrap(), Expected::Unknown);
        let e = parse_cell("2[31^2]+[2^21]+[21^3]").unwrap();
        let m = e.entries().unwrap();
        assert_eq!(m[&"[3,1,1]".parse().unwrap()], 2);
        assert_eq!(m.len(), 3);
        match parse_cell("[6]+2[51]+[6]").unwrap() {
            Expected::Decomposition { entries, duplicates } => {
                assert_eq!(entries[&"[6]".parse().unwrap()], 2);
                assert_eq!(duplicates.len(), 1);
            }
            _ => panic!(),
        }
        assert!(parse_cell("2").is_err());
        assert!(parse_cell("0[4]").is_err());
    }
}
