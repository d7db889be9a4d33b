//! Exact counting of nonnegative integer matrices with prescribed margins,
//! polynomial fitting of the resulting counts, and round-robin scoreboard
//! reconstruction.

pub mod bfile;
pub mod cli;
pub mod dataset;
pub mod engine;
pub mod error;
pub mod fit;
pub mod model;
mod parallel;
pub mod poly;
pub mod problem_file;
pub mod puzzle;
pub mod worldcup;

pub use engine::{count_bruteforce, count_problem, count_tables, enumerate_tables, CountValue, Limits, TableMatrix};
pub use error::{Error, Result};
pub use fit::{fit_general, fit_sn, FitMode, FitReport};
pub use model::{Cell, ConcreteMargins, EntryMask, MarginOffsets, TableProblem, ValidatedProblem};
pub use poly::RationalPolynomial;
pub use puzzle::{make_book, make_puzzle, Puzzle, PuzzleBook, PuzzleParams};
pub use worldcup::{find_scenarios, Points, PointsRule, Scenario, ScenarioSearch, ScoreBoard, SolverLimits};
