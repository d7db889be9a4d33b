//! Round-robin scoreboard reconstruction.
//!
//! A scoreboard lists, per team, goals for (GF), goals against (GA) and
//! points. [`find_scenarios`] enumerates every assignment of a score to each
//! of the `C(n, 2)` matches that reproduces it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::{count_tables, CountValue, Limits};
use crate::error::{Error, Result};
use crate::model::{ConcreteMargins, EntryMask};

/// Points for a win, a draw and a loss.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointsRule {
    pub win: u64,
    pub draw: u64,
    pub loss: u64,
}

impl PointsRule {
    pub fn new(win: u64, draw: u64, loss: u64) -> Result<Self> {
        if win > draw && draw > loss {
            Ok(PointsRule { win, draw, loss })
        } else {
            Err(Error::InvalidRule(format!(
                "need win > draw > loss, got {win}/{draw}/{loss}"
            )))
        }
    }

    /// Points earned by each side for a final score `a`-`b`.
    pub fn award(&self, a: u64, b: u64) -> (u64, u64) {
        match a.cmp(&b) {
            std::cmp::Ordering::Greater => (self.win, self.loss),
            std::cmp::Ordering::Equal => (self.draw, self.draw),
            std::cmp::Ordering::Less => (self.loss, self.win),
        }
    }
}

impl Default for PointsRule {
    fn default() -> Self {
        PointsRule {
            win: 3,
            draw: 1,
            loss: 0,
        }
    }
}

/// The points column of a scoreboard: either concrete or unconstrained.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Points {
    Concrete(Vec<u64>),
    Wildcard(Wildcard),
}

/// Serialized as the string `"*"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Wildcard;

impl Serialize for Wildcard {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str("*")
    }
}

impl<'de> Deserialize<'de> for Wildcard {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "*" {
            Ok(Wildcard)
        } else {
            Err(serde::de::Error::custom("expected \"*\""))
        }
    }
}

impl Points {
    pub fn wildcard() -> Self {
        Points::Wildcard(Wildcard)
    }

    pub fn concrete(&self) -> Option<&[u64]> {
        match self {
            Points::Concrete(v) => Some(v),
            Points::Wildcard(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScoreBoard {
    pub gf: Vec<u64>,
    pub ga: Vec<u64>,
    pub pts: Points,
}

impl ScoreBoard {
    pub fn new(gf: Vec<u64>, ga: Vec<u64>, pts: Vec<u64>) -> Self {
        ScoreBoard {
            gf,
            ga,
            pts: Points::Concrete(pts),
        }
    }

    pub fn with_wildcard(gf: Vec<u64>, ga: Vec<u64>) -> Self {
        ScoreBoard {
            gf,
            ga,
            pts: Points::wildcard(),
        }
    }

    pub fn n(&self) -> usize {
        self.gf.len()
    }

    /// Shape and goal-balance checks. Points totals outside the range a
    /// round robin can produce are not an error; such boards have no scenario.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n < 2 {
            return Err(Error::InvalidBoard(format!("need at least 2 teams, got {n}")));
        }
        if self.ga.len() != n {
            return Err(Error::InvalidBoard(format!(
                "gf has {n} entries but ga has {}",
                self.ga.len()
            )));
        }
        if let Some(p) = self.pts.concrete() {
            if p.len() != n {
                return Err(Error::InvalidBoard(format!(
                    "gf has {n} entries but pts has {}",
                    p.len()
                )));
            }
        }
        let (f, a): (u64, u64) = (self.gf.iter().sum(), self.ga.iter().sum());
        if f != a {
            return Err(Error::InvalidBoard(format!(
                "goals for total {f} differs from goals against total {a}"
            )));
        }
        Ok(())
    }

    /// Same board with team `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let apply = |v: &[u64]| {
            let mut out = vec![0; v.len()];
            for (i, &x) in v.iter().enumerate() {
                out[perm[i]] = x;
            }
            out
        };
        ScoreBoard {
            gf: apply(&self.gf),
            ga: apply(&self.ga),
            pts: match &self.pts {
                Points::Concrete(p) => Points::Concrete(apply(p)),
                w => w.clone(),
            },
        }
    }

    /// The matrix problem whose solutions are in bijection with this board's
    /// scenarios when points are ignored: entry `(i, j)` is goals by `i`
    /// against `j`, rows sum to GF, columns to GA, diagonal zero.
    pub fn margin_problem(&self) -> Result<ConcreteMargins> {
        ConcreteMargins::from_targets(self.gf.clone(), self.ga.clone(), EntryMask::zero_diagonal(self.n()))
    }
}

/// All pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn match_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// One score per match; `scores[k]` belongs to `match_pairs(n)[k]` and
/// reads (goals by the lower-indexed team, goals by the other).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Scenario {
    pub n: usize,
    pub scores: Vec<(u64, u64)>,
}

impl Scenario {
    pub fn new(n: usize, scores: Vec<(u64, u64)>) -> Result<Self> {
        if scores.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::InvalidArgument(format!(
                "{n} teams play {} matches, got {} scores",
                n * n.saturating_sub(1) / 2,
                scores.len()
            )));
        }
        Ok(Scenario { n, scores })
    }

    /// Score of the match between `i` and `j`, seen from `i`.
    pub fn score(&self, i: usize, j: usize) -> (u64, u64) {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        // Index of (lo, hi) in match_pairs order.
        let k = lo * (2 * self.n - lo - 1) / 2 + (hi - lo - 1);
        let (a, b) = self.scores[k];
        if i < j {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Scenario for the board relabelled by `perm`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut scores = vec![(0, 0); self.scores.len()];
        for (k, (i, j)) in match_pairs(n).into_iter().enumerate() {
            let (pi, pj) = (perm[i], perm[j]);
            let (a, b) = self.scores[k];
            let (lo, hi, s) = if pi < pj { (pi, pj, (a, b)) } else { (pj, pi, (b, a)) };
            scores[lo * (2 * n - lo - 1) / 2 + (hi - lo - 1)] = s;
        }
        Scenario { n, scores }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match_pairs(self.n)
            .iter()
            .zip(&self.scores)
            .map(|(&(i, j), &(a, b))| format!("{}-{}:{a}-{b}", i + 1, j + 1))
            .collect();
        f.write_str(&parts.join(","))
    }
}

pub fn points_of(s: &Scenario, rule: &PointsRule) -> Vec<u64> {
    let mut pts = vec![0; s.n];
    for (&(i, j), &(a, b)) in match_pairs(s.n).iter().zip(&s.scores) {
        let (pi, pj) = rule.award(a, b);
        pts[i] += pi;
        pts[j] += pj;
    }
    pts
}

pub fn derive_board(s: &Scenario, rule: &PointsRule) -> ScoreBoard {
    let mut gf = vec![0; s.n];
    let mut ga = vec![0; s.n];
    for (&(i, j), &(a, b)) in match_pairs(s.n).iter().zip(&s.scores) {
        gf[i] += a;
        ga[i] += b;
        gf[j] += b;
        ga[j] += a;
    }
    ScoreBoard::new(gf, ga, points_of(s, rule))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverLimits {
    /// Maximum number of search nodes one call may visit.
    pub max_nodes: u64,
}

impl SolverLimits {
    pub const DEFAULT_MAX_NODES: u64 = 500_000_000;
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits {
            max_nodes: Self::DEFAULT_MAX_NODES,
        }
    }
}

/// Result of [`find_scenarios`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioSearch {
    pub count: CountValue,
    /// Enumerated scenarios, lexicographic in the flattened score sequence;
    /// at most `list_limit` of them.
    pub scenarios: Vec<Scenario>,
    /// Search nodes visited (one per tentative match score, plus the root).
    pub nodes: u64,
}

struct Search<'a> {
    rule: &'a PointsRule,
    pairs: Vec<(usize, usize)>,
    /// Last match index each team takes part in.
    last_match: Vec<usize>,
    /// For each match index, matches left per team after it is played.
    remaining_after: Vec<Vec<u64>>,
    gf: Vec<u64>,
    ga: Vec<u64>,
    pts: Option<Vec<u64>>,
    scores: Vec<(u64, u64)>,
    count: u64,
    listed: Vec<Scenario>,
    list_limit: usize,
    nodes: u64,
    max_nodes: u64,
    n: usize,
}

impl Search<'_> {
    fn team_ok(&self, t: usize, left: u64) -> bool {
        let Some(pts) = &self.pts else {
            return true;
        };
        let p = pts[t];
        if left == 0 {
            return p == 0;
        }
        let (lo, hi) = (self.rule.loss * left, self.rule.win * left);
        (lo..=hi).contains(&p)
    }

    fn walk(&mut self, k: usize) -> Result<()> {
        if k == self.pairs.len() {
            self.count += 1;
            if self.listed.len() < self.list_limit {
                self.listed.push(Scenario {
                    n: self.n,
                    scores: self.scores.clone(),
                });
            }
            return Ok(());
        }
        let (i, j) = self.pairs[k];
        let i_last = self.last_match[i] == k;
        let j_last = self.last_match[j] == k;
        // a: goals by i (conceded by j); b: goals by j (conceded by i).
        let a_hi = self.gf[i].min(self.ga[j]);
        let b_hi = self.gf[j].min(self.ga[i]);
        // A team's last match must absorb everything it has left.
        let (mut a_lo, mut b_lo) = (0, 0);
        if i_last {
            a_lo = a_lo.max(self.gf[i]);
            b_lo = b_lo.max(self.ga[i]);
        }
        if j_last {
            b_lo = b_lo.max(self.gf[j]);
            a_lo = a_lo.max(self.ga[j]);
        }
        if a_lo > a_hi || b_lo > b_hi {
            return Ok(());
        }
        for a in a_lo..=a_hi {
            for b in b_lo..=b_hi {
                self.nodes += 1;
                if self.nodes > self.max_nodes {
                    return Err(Error::ResourceLimit {
                        what: "scenario search nodes",
                        limit: self.max_nodes,
                    });
                }
                let (pi, pj) = self.rule.award(a, b);
                if let Some(pts) = &self.pts {
                    if pts[i] < pi || pts[j] < pj {
                        continue;
                    }
                }
                self.apply(i, j, a, b, pi, pj, false);
                let left = &self.remaining_after[k];
                let ok = self.team_ok(i, left[i]) && self.team_ok(j, left[j]) && self.goals_ok(k);
                if ok {
                    self.scores.push((a, b));
                    let r = self.walk(k + 1);
                    self.scores.pop();
                    if let Err(e) = r {
                        self.apply(i, j, a, b, pi, pj, true);
                        return Err(e);
                    }
                }
                self.apply(i, j, a, b, pi, pj, true);
            }
        }
        Ok(())
    }

    /// Every team's outstanding goals must fit into its outstanding matches.
    fn goals_ok(&self, k: usize) -> bool {
        let left = &self.remaining_after[k];
        let open_ga: u64 = (0..self.n).filter(|&t| left[t] > 0).map(|t| self.ga[t]).sum();
        let open_gf: u64 = (0..self.n).filter(|&t| left[t] > 0).map(|t| self.gf[t]).sum();
        (0..self.n).all(|t| {
            if left[t] == 0 {
                self.gf[t] == 0 && self.ga[t] == 0
            } else {
                self.gf[t] <= open_ga - self.ga[t] && self.ga[t] <= open_gf - self.gf[t]
            }
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn apply(&mut self, i: usize, j: usize, a: u64, b: u64, pi: u64, pj: u64, undo: bool) {
        if undo {
            self.gf[i] += a;
            self.ga[j] += a;
            self.gf[j] += b;
            self.ga[i] += b;
            if let Some(p) = &mut self.pts {
                p[i] += pi;
                p[j] += pj;
            }
        } else {
            self.gf[i] -= a;
            self.ga[j] -= a;
            self.gf[j] -= b;
            self.ga[i] -= b;
            if let Some(p) = &mut self.pts {
                p[i] -= pi;
                p[j] -= pj;
            }
        }
    }
}

/// Counts (and optionally lists, up to `list_limit`) every scenario whose
/// derived board equals `b`.
pub fn find_scenarios(
    b: &ScoreBoard,
    rule: &PointsRule,
    list_limit: Option<usize>,
    limits: &SolverLimits,
) -> Result<ScenarioSearch> {
    b.validate()?;
    let n = b.n();
    let pairs = match_pairs(n);
    let mut last_match = vec![0; n];
    let mut left = vec![(n - 1) as u64; n];
    let mut remaining_after = Vec::with_capacity(pairs.len());
    for (k, &(i, j)) in pairs.iter().enumerate() {
        last_match[i] = k;
        last_match[j] = k;
        left[i] -= 1;
        left[j] -= 1;
        remaining_after.push(left.clone());
    }
    let mut search = Search {
        rule,
        pairs,
        last_match,
        remaining_after,
        gf: b.gf.clone(),
        ga: b.ga.clone(),
        pts: b.pts.concrete().map(<[u64]>::to_vec),
        scores: Vec::new(),
        count: 0,
        listed: Vec::new(),
        list_limit: list_limit.unwrap_or(0),
        nodes: 1,
        max_nodes: limits.max_nodes,
        n,
    };
    let feasible_points = search
        .pts
        .as_ref()
        .is_none_or(|p| (0..n).all(|t| search.team_ok(t, (n - 1) as u64)) && points_total_possible(p, rule, n));
    if feasible_points {
        search.walk(0)?;
    }
    Ok(ScenarioSearch {
        count: CountValue::from(search.count),
        scenarios: search.listed,
        nodes: search.nodes,
    })
}

/// `sum(pts) = (win + loss) * w + 2 * draw * d` with `w + d = C(n, 2)`.
fn points_total_possible(pts: &[u64], rule: &PointsRule, n: usize) -> bool {
    let total: u64 = pts.iter().sum();
    let matches = (n * (n - 1) / 2) as u64;
    (0..=matches).any(|w| (rule.win + rule.loss) * w + 2 * rule.draw * (matches - w) == total)
}

pub fn unique_board(b: &ScoreBoard, rule: &PointsRule, limits: &SolverLimits) -> Result<bool> {
    Ok(find_scenarios(b, rule, None, limits)?.count == CountValue::from(1u64))
}

/// Wildcard-points count via the matrix engine, for cross-checking.
pub fn count_via_tables(b: &ScoreBoard, limits: &Limits) -> Result<CountValue> {
    b.validate()?;
    count_tables(&b.margin_problem()?, limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(b: &ScoreBoard) -> ScenarioSearch {
        find_scenarios(b, &PointsRule::default(), Some(usize::MAX), &SolverLimits::default()).unwrap()
    }

    #[test]
    fn rule_validation() {
        assert!(PointsRule::new(3, 1, 0).is_ok());
        assert!(PointsRule::new(2, 1, 0).is_ok());
        assert!(PointsRule::new(1, 1, 0).is_err());
        assert!(PointsRule::new(3, 0, 0).is_err());
    }

    #[test]
    fn points_spot_values() {
        let rule = PointsRule::default();
        let s = Scenario::new(4, vec![(0, 0); 6]).unwrap();
        assert_eq!(points_of(&s, &rule), vec![3, 3, 3, 3]);
        let s = Scenario::new(2, vec![(1, 0)]).unwrap();
        assert_eq!(points_of(&s, &rule), vec![3, 0]);
        let s = Scenario::new(3, vec![(1, 0), (0, 2), (2, 2)]).unwrap();
        assert_eq!(points_of(&s, &rule), vec![3, 1, 4]);
    }

    #[test]
    fn derive_spot_values() {
        let rule = PointsRule::default();
        let b = derive_board(&Scenario::new(2, vec![(2, 1)]).unwrap(), &rule);
        assert_eq!(b, ScoreBoard::new(vec![2, 1], vec![1, 2], vec![3, 0]));
        // 1 beats 2, 2 beats 3, 3 beats 4, 4 beats 1, all 1-0; 1-3 and 2-4 goalless.
        let s = Scenario::new(4, vec![(1, 0), (0, 0), (0, 1), (1, 0), (0, 0), (1, 0)]).unwrap();
        let b = derive_board(&s, &rule);
        assert_eq!(b.gf, vec![1, 1, 1, 1]);
        assert_eq!(b.ga, vec![1, 1, 1, 1]);
    }

    #[test]
    fn scenario_spot_counts() {
        assert_eq!(
            solve(&ScoreBoard::new(vec![0; 4], vec![0; 4], vec![3; 4])).count,
            1u64.into()
        );
        assert_eq!(
            solve(&ScoreBoard::new(vec![0; 4], vec![0; 4], vec![0; 4])).count,
            0u64.into()
        );
        assert_eq!(
            solve(&ScoreBoard::new(vec![1; 4], vec![1; 4], vec![3; 4])).count,
            3u64.into()
        );
        assert_eq!(
            solve(&ScoreBoard::with_wildcard(vec![1; 4], vec![1; 4])).count,
            9u64.into()
        );
    }

    #[test]
    fn uniqueness() {
        let l = SolverLimits::default();
        let r = PointsRule::default();
        assert!(unique_board(&ScoreBoard::new(vec![0; 4], vec![0; 4], vec![3; 4]), &r, &l).unwrap());
        assert!(!unique_board(&ScoreBoard::new(vec![1; 4], vec![1; 4], vec![3; 4]), &r, &l).unwrap());
        assert!(!unique_board(&ScoreBoard::new(vec![0; 4], vec![0; 4], vec![0; 4]), &r, &l).unwrap());
    }

    #[test]
    fn invalid_boards() {
        let l = SolverLimits::default();
        let r = PointsRule::default();
        for b in [
            ScoreBoard::new(vec![1, 0], vec![0, 0], vec![3, 0]),
            ScoreBoard::new(vec![0], vec![0], vec![0]),
            ScoreBoard::new(vec![0, 0], vec![0, 0, 0], vec![1, 1]),
            ScoreBoard::new(vec![0, 0], vec![0, 0], vec![1]),
        ] {
            assert!(matches!(find_scenarios(&b, &r, None, &l), Err(Error::InvalidBoard(_))));
        }
    }

    #[test]
    fn listing_is_lexicographic() {
        let res = solve(&ScoreBoard::with_wildcard(vec![1; 4], vec![1; 4]));
        assert_eq!(res.scenarios.len(), 9);
        let mut sorted = res.scenarios.clone();
        sorted.sort();
        assert_eq!(res.scenarios, sorted);
    }

    #[test]
    fn node_budget() {
        let b = ScoreBoard::with_wildcard(vec![3; 4], vec![3; 4]);
        let err = find_scenarios(&b, &PointsRule::default(), None, &SolverLimits { max_nodes: 5 }).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }

    #[test]
    fn score_lookup_and_relabel() {
        let s = Scenario::new(4, vec![(1, 0), (2, 0), (3, 0), (4, 0), (5, 0), (6, 0)]).unwrap();
        assert_eq!(s.score(2, 3), (6, 0));
        assert_eq!(s.score(3, 2), (0, 6));
        assert_eq!(s.score(1, 2), (4, 0));
        let perm = [3, 2, 1, 0];
        let t = s.relabel(&perm);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(t.score(perm[i], perm[j]), s.score(i, j));
                }
            }
        }
        let rule = PointsRule::default();
        assert_eq!(derive_board(&t, &rule), derive_board(&s, &rule).relabel(&perm));
    }

    #[test]
    fn two_point_rule() {
        let rule = PointsRule::new(2, 1, 0).unwrap();
        let b = ScoreBoard::new(vec![1, 0], vec![0, 1], vec![2, 0]);
        let res = find_scenarios(&b, &rule, Some(10), &SolverLimits::default()).unwrap();
        assert_eq!(res.count, 1u64.into());
        assert_eq!(res.scenarios[0].scores, vec![(1, 0)]);
    }
}
