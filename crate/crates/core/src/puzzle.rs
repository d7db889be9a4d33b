//! Scoreboard puzzles: given GF, GA and points, recover every match score.
//!
//! Puzzles are made by rejection sampling. A random scenario is drawn, its
//! board derived, and the board kept if the solver finds exactly one scenario.
//!
//! Randomness is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`) with
//! scores drawn by `Rng::gen_range(0..=max_goal)`. Both are specified
//! algorithms with platform-independent output, so a seed identifies a
//! puzzle on every machine.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parallel::par_map;
use crate::worldcup::{derive_board, find_scenarios, match_pairs, PointsRule, Scenario, ScoreBoard, SolverLimits};

/// Increment between per-attempt seeds (the 64-bit golden ratio).
const ATTEMPT_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Puzzle {
    pub board: ScoreBoard,
    pub rule: PointsRule,
    pub solution: Scenario,
    pub solutions_count: u64,
    /// Seed the puzzle was requested with.
    pub seed: u64,
    /// Attempt index that produced it; the scenario seed is
    /// [`attempt_seed`]`(seed, attempt)`.
    pub attempt: u32,
    /// Backtracking nodes the solver visited on the board.
    pub difficulty: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuzzleBook {
    pub n: usize,
    pub max_goal: u64,
    pub rule: PointsRule,
    pub master_seed: u64,
    pub sorted_by_difficulty: bool,
    pub puzzles: Vec<Puzzle>,
}

/// Generation settings shared by [`make_puzzle`] and [`make_book`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PuzzleParams {
    pub n: usize,
    pub max_goal: u64,
    pub rule: PointsRule,
    pub max_attempts: u32,
    pub limits: SolverLimits,
}

impl PuzzleParams {
    pub const DEFAULT_MAX_ATTEMPTS: u32 = 10_000;

    pub fn new(n: usize, max_goal: u64) -> Self {
        PuzzleParams {
            n,
            max_goal,
            rule: PointsRule::default(),
            max_attempts: Self::DEFAULT_MAX_ATTEMPTS,
            limits: SolverLimits::default(),
        }
    }
}

pub fn attempt_seed(seed: u64, attempt: u32) -> u64 {
    seed.wrapping_add(u64::from(attempt).wrapping_mul(ATTEMPT_STRIDE))
}

/// Every match score uniform on `{0..=max_goal}^2`, deterministic in `seed`.
pub fn random_scenario(n: usize, max_goal: u64, seed: u64) -> Scenario {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scores = match_pairs(n)
        .iter()
        .map(|_| (rng.gen_range(0..=max_goal), rng.gen_range(0..=max_goal)))
        .collect();
    Scenario { n, scores }
}

pub fn make_puzzle(params: &PuzzleParams, seed: u64, require_unique: bool) -> Result<Puzzle> {
    if params.max_attempts == 0 {
        return Err(Error::InvalidArgument("max_attempts must be at least 1".into()));
    }
    if params.n < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 teams, got {}",
            params.n
        )));
    }
    for attempt in 0..params.max_attempts {
        let solution = random_scenario(params.n, params.max_goal, attempt_seed(seed, attempt));
        let board = derive_board(&solution, &params.rule);
        let search = find_scenarios(&board, &params.rule, None, &params.limits)?;
        let count = search
            .count
            .to_u64()
            .expect("scenario counts are enumerated one by one");
        if count == 1 || !require_unique {
            return Ok(Puzzle {
                board,
                rule: params.rule,
                solution,
                solutions_count: count,
                seed,
                attempt,
                difficulty: search.nodes,
            });
        }
    }
    Err(Error::ExhaustedAttempts {
        attempts: params.max_attempts,
        index: None,
    })
}

/// `count` unique puzzles with seeds `master_seed + index`, generated in
/// parallel and assembled in index order.
pub fn make_book(
    params: &PuzzleParams,
    count: usize,
    master_seed: u64,
    sorted_by_difficulty: bool,
) -> Result<PuzzleBook> {
    if count == 0 {
        return Err(Error::InvalidArgument("book needs at least one puzzle".into()));
    }
    let indices: Vec<usize> = (0..count).collect();
    let results = par_map(&indices, |&i| {
        make_puzzle(params, master_seed.wrapping_add(i as u64), true)
    });
    let mut puzzles = Vec::with_capacity(count);
    for (index, r) in results.into_iter().enumerate() {
        match r {
            Ok(p) => puzzles.push(p),
            Err(Error::ExhaustedAttempts { attempts, .. }) => {
                return Err(Error::ExhaustedAttempts {
                    attempts,
                    index: Some(index),
                })
            }
            Err(e) => return Err(e),
        }
    }
    if sorted_by_difficulty {
        puzzles.sort_by_key(|p| p.difficulty);
    }
    Ok(PuzzleBook {
        n: params.n,
        max_goal: params.max_goal,
        rule: params.rule,
        master_seed,
        sorted_by_difficulty,
        puzzles,
    })
}
