//! OEIS b-files: one `index value` pair per line, `#` comments.

use std::path::Path;

use num_bigint::BigInt;

use crate::engine::CountValue;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BFile {
    /// Strictly increasing indices.
    pub entries: Vec<(i64, BigInt)>,
}

/// Non-fatal observations made while parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BFileWarning {
    /// Index `found` follows `previous` without the values in between.
    IndexGap { line: usize, previous: i64, found: i64 },
}

impl BFile {
    pub fn parse(text: &str) -> Result<(Self, Vec<BFileWarning>)> {
        let mut entries: Vec<(i64, BigInt)> = Vec::new();
        let mut warnings = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = no + 1;
            let bad = |what: &str| Error::Parse(format!("b-file line {lineno}: {what}: {raw:?}"));
            let mut fields = line.split_whitespace();
            let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(bad("expected `index value`"));
            };
            let idx: i64 = idx.parse().map_err(|_| bad("bad index"))?;
            let val: BigInt = val.parse().map_err(|_| bad("bad value"))?;
            if let Some(&(prev, _)) = entries.last() {
                if idx <= prev {
                    return Err(bad("indices must increase"));
                }
                if idx != prev + 1 {
                    warnings.push(BFileWarning::IndexGap {
                        line: lineno,
                        previous: prev,
                        found: idx,
                    });
                }
            }
            entries.push((idx, val));
        }
        Ok((BFile { entries }, warnings))
    }

    pub fn max_index(&self) -> Option<i64> {
        self.entries.last().map(|e| e.0)
    }
}

pub fn load_bfile(path: &Path) -> Result<(BFile, Vec<BFileWarning>)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    BFile::parse(&text)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: i64,
    pub expected: BigInt,
    pub computed: BigInt,
}

/// Outcome of comparing computed counts with a b-file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Comparison {
    /// Entries whose position fell inside the computed sequence.
    pub compared: usize,
    /// Entries outside it.
    pub skipped: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl Comparison {
    pub fn is_match(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares `seq` (positions 0, 1, ...) with `b`, where b-file index `i`
/// corresponds to position `i + offset`.
pub fn compare(seq: &[CountValue], b: &BFile, offset: i64) -> Comparison {
    let mut out = Comparison::default();
    for (idx, val) in &b.entries {
        let pos = idx + offset;
        let Some(c) = usize::try_from(pos).ok().and_then(|p| seq.get(p)) else {
            out.skipped += 1;
            continue;
        };
        out.compared += 1;
        let computed = BigInt::from(c.0.clone());
        if &computed != val && out.first_mismatch.is_none() {
            out.first_mismatch = Some(Mismatch {
                index: *idx,
                expected: val.clone(),
                computed,
            });
        }
    }
    out
}
