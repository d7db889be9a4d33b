//! Historical group-stage scoreboards.
//!
//! Dataset files are JSON:
//!
//! ```json
//! {
//!   "year": 2010,
//!   "groups": [
//!     {"name": "A", "teams": ["RSA", "MEX", "URU", "FRA"],
//!      "gf": [3, 3, 4, 1], "ga": [5, 2, 0, 4], "pts": [4, 4, 7, 1]}
//!   ],
//!   "expected_counts": [2]
//! }
//! ```
//!
//! `teams` and `expected_counts` are optional. `pts` may be `"*"` to leave
//! points unconstrained.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::worldcup::{Points, ScoreBoard};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Group {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub teams: Option<Vec<String>>,
    pub gf: Vec<u64>,
    pub ga: Vec<u64>,
    pub pts: Points,
}

impl Group {
    pub fn board(&self) -> ScoreBoard {
        ScoreBoard {
            gf: self.gf.clone(),
            ga: self.ga.clone(),
            pts: self.pts.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDataset {
    pub year: i32,
    pub groups: Vec<Group>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_counts: Option<Vec<u64>>,
}

impl GroupDataset {
    pub fn parse(text: &str) -> Result<Self> {
        let ds: GroupDataset = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        ds.validate()?;
        Ok(ds)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |group: &str, field: &str, message: String| Error::Validation {
            group: group.to_string(),
            field: field.to_string(),
            message,
        };
        for g in &self.groups {
            if g.name.chars().count() != 1 {
                return Err(fail(&g.name, "name", "group names are single letters".into()));
            }
            let n = g.gf.len();
            if n < 2 {
                return Err(fail(&g.name, "gf", format!("need at least 2 teams, got {n}")));
            }
            if g.ga.len() != n {
                return Err(fail(&g.name, "ga", format!("expected {n} entries, got {}", g.ga.len())));
            }
            if let Some(p) = g.pts.concrete() {
                if p.len() != n {
                    return Err(fail(&g.name, "pts", format!("expected {n} entries, got {}", p.len())));
                }
            }
            if let Some(t) = &g.teams {
                if t.len() != n {
                    return Err(fail(&g.name, "teams", format!("expected {n} entries, got {}", t.len())));
                }
            }
            let (f, a): (u64, u64) = (g.gf.iter().sum(), g.ga.iter().sum());
            if f != a {
                return Err(fail(
                    &g.name,
                    "ga",
                    format!("goals for total {f} differs from goals against total {a}"),
                ));
            }
        }
        if let Some(e) = &self.expected_counts {
            if e.len() != self.groups.len() {
                return Err(fail(
                    "*",
                    "expected_counts",
                    format!("{} groups but {} expected counts", self.groups.len(), e.len()),
                ));
            }
        }
        Ok(())
    }
}

pub fn load_group_dataset(path: &Path) -> Result<GroupDataset> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    GroupDataset::parse(&text)
}

/// Transcribed group-stage scoreboards shipped with the crate.
pub const BUNDLED: &[(i32, &str)] = &[
    (1998, include_str!("../data/worldcup_1998.json")),
    (2002, include_str!("../data/worldcup_2002.json")),
    (2006, include_str!("../data/worldcup_2006.json")),
    (2010, include_str!("../data/worldcup_2010.json")),
    (2014, include_str!("../data/worldcup_2014.json")),
];

pub fn bundled(year: i32) -> Result<GroupDataset> {
    let (_, text) = BUNDLED
        .iter()
        .find(|(y, _)| *y == year)
        .ok_or_else(|| Error::InvalidArgument(format!("no bundled dataset for {year}")))?;
    GroupDataset::parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_group() {
        let ds = GroupDataset::parse(
            r#"{"year": 2014, "groups": [{"name": "A", "gf": [0,0,0,0], "ga": [0,0,0,0], "pts": [3,3,3,3]}]}"#,
        )
        .unwrap();
        assert_eq!(ds.groups.len(), 1);
        assert_eq!(
            ds.groups[0].board(),
            ScoreBoard::new(vec![0; 4], vec![0; 4], vec![3; 4])
        );
        assert_eq!(ds.expected_counts, None);
    }

    #[test]
    fn goal_mismatch_names_group_and_field() {
        let err = GroupDataset::parse(
            r#"{"year": 2014, "groups": [{"name": "C", "gf": [1,0,0,0], "ga": [0,0,0,0], "pts": [3,3,3,3]}]}"#,
        )
        .unwrap_err();
        match err {
            Error::Validation { group, field, .. } => {
                assert_eq!(group, "C");
                assert_eq!(field, "ga");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(GroupDataset::parse("{\"year\": }"), Err(Error::Parse(_))));
        assert!(matches!(
            GroupDataset::parse(r#"{"year": 1, "groups": [], "extra": 1}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn expected_counts_must_align() {
        let err = GroupDataset::parse(
            r#"{"year": 1, "groups": [{"name": "A", "gf": [0,0], "ga": [0,0], "pts": [1,1]}], "expected_counts": [1, 2]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
    }

    #[test]
    fn wildcard_points() {
        let ds = GroupDataset::parse(
            r#"{"year": 1, "groups": [{"name": "A", "gf": [1,1,1,1], "ga": [1,1,1,1], "pts": "*"}]}"#,
        )
        .unwrap();
        assert_eq!(ds.groups[0].pts, Points::wildcard());
    }

    #[test]
    fn bundled_datasets_load() {
        for (year, _) in BUNDLED {
            let ds = bundled(*year).unwrap();
            assert_eq!(ds.year, *year);
            assert_eq!(ds.groups.len(), 8);
            assert_eq!(ds.expected_counts.as_ref().map(Vec::len), Some(8));
        }
        assert!(bundled(1990).is_err());
    }
}
