//! JSON description of a counting instance.
//!
//! ```json
//! {"sr": [0, 0, 1], "sc": [1, 0, 0], "mask": [["*", 0, "*"], ["*", "*", 2], [0, "*", "*"]]}
//! ```
//!
//! `mask` cells are nonnegative integers (pinned values) or `"*"` (free).
//! `mask` may be omitted for an all-free grid; `sc` defaults to `sr`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Cell, EntryMask, MarginOffsets, TableProblem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MaskCell {
    Fixed(u64),
    Free(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub sr: Vec<i64>,
    #[serde(default)]
    pub sc: Option<Vec<i64>>,
    #[serde(default)]
    pub mask: Option<Vec<Vec<MaskCell>>>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn offsets(&self) -> MarginOffsets {
        MarginOffsets::new(self.sr.clone(), self.sc.clone().unwrap_or_else(|| self.sr.clone()))
    }

    pub fn mask(&self) -> Result<EntryMask> {
        let Some(rows) = &self.mask else {
            return Ok(EntryMask::all_free(self.sr.len()));
        };
        let rows = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| match c {
                        MaskCell::Fixed(v) => Ok(Cell::Fixed(*v)),
                        MaskCell::Free(s) if s == "*" => Ok(Cell::Free),
                        MaskCell::Free(s) => {
                            Err(Error::Parse(format!("mask cell {s:?} is neither a number nor \"*\"")))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        EntryMask::from_rows(rows)
    }

    pub fn problem(&self, r: i64) -> Result<TableProblem> {
        Ok(TableProblem::new(self.offsets(), self.mask()?, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mask_cells() {
        let f = ProblemFile::parse(r#"{"sr": [0, 0], "mask": [["*", 1], [0, "*"]]}"#).unwrap();
        let m = f.mask().unwrap();
        assert_eq!(m.get(0, 0), Cell::Free);
        assert_eq!(m.get(0, 1), Cell::Fixed(1));
        assert_eq!(f.offsets().sc, vec![0, 0]);
    }

    #[test]
    fn rejects_bad_cells_and_shapes() {
        let f = ProblemFile::parse(r#"{"sr": [0, 0], "mask": [["x", 1], [0, "*"]]}"#).unwrap();
        assert!(matches!(f.mask(), Err(Error::Parse(_))));
        let f = ProblemFile::parse(r#"{"sr": [0, 0], "mask": [["*"], [0, "*"]]}"#).unwrap();
        assert!(matches!(f.mask(), Err(Error::Shape(_))));
        assert!(ProblemFile::parse(r#"{"sr": [0], "mask": [[-1]]}"#).is_err());
    }
}
