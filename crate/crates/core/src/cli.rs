//! Command-line front end.
//!
//! Every subcommand writes either human-readable text or, with
//! `--format machine`, one record per line of space-separated `key=value`
//! pairs. Values never contain spaces and counts are exact decimal strings.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 validation error,
//! 3 verification or comparison failure, 4 resource limit.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bfile::{compare, load_bfile, BFileWarning};
use crate::dataset::{bundled, load_group_dataset, GroupDataset};
use crate::engine::{count_bruteforce, count_problem, CountValue, Limits};
use crate::error::{Error, Result};
use crate::fit::{fit_general, fit_sn, zero_diagonal_counter, FitMode, FitReport, GeneralFitOptions};
use crate::model::{reduce_fixed, validate_problem, EntryMask, MarginOffsets, TableProblem};
use crate::parallel::par_map;
use crate::problem_file::ProblemFile;
use crate::puzzle::{make_book, make_puzzle, Puzzle, PuzzleParams};
use crate::worldcup::{find_scenarios, PointsRule, ScoreBoard, SolverLimits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "goaltally",
    version,
    about = "Exact counting of round-robin goal tallies and scoreboard scenarios"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,

    /// Memoized states allowed per count.
    #[arg(long, default_value_t = Limits::DEFAULT_MAX_MEMO_ENTRIES, global = true)]
    pub max_memo: u64,

    /// Matrices allowed per enumeration.
    #[arg(long, default_value_t = Limits::DEFAULT_MAX_YIELDS, global = true)]
    pub max_yields: u64,

    /// Search nodes allowed per scenario search or brute-force count.
    #[arg(long, default_value_t = SolverLimits::DEFAULT_MAX_NODES, global = true)]
    pub max_nodes: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Matrix side (number of teams).
    #[arg(long)]
    pub n: Option<usize>,

    /// All margins r and a zero diagonal.
    #[arg(long, conflicts_with = "problem")]
    pub zero_diagonal: bool,

    /// JSON file with offsets and mask.
    #[arg(long)]
    pub problem: Option<PathBuf>,
}

impl InstanceArgs {
    /// Offsets and mask; without `--zero-diagonal` or `--problem` the grid is
    /// all free (ordinary magic squares).
    fn resolve(&self) -> Result<(MarginOffsets, EntryMask)> {
        if let Some(path) = &self.problem {
            let f = ProblemFile::load(path)?;
            if let Some(n) = self.n {
                if n != f.sr.len() {
                    return Err(Error::InvalidArgument(format!(
                        "--n {n} disagrees with the problem file (n = {})",
                        f.sr.len()
                    )));
                }
            }
            return Ok((f.offsets(), f.mask()?));
        }
        let n = self
            .n
            .ok_or_else(|| Error::InvalidArgument("--n is required without --problem".into()))?;
        if n == 0 {
            return Err(Error::InvalidArgument("--n must be at least 1".into()));
        }
        let mask = if self.zero_diagonal {
            EntryMask::zero_diagonal(n)
        } else {
            EntryMask::all_free(n)
        };
        Ok((MarginOffsets::zero(n), mask))
    }
}

#[derive(Debug, Args)]
pub struct RuleArgs {
    #[arg(long, default_value_t = 3)]
    pub win: u64,
    #[arg(long, default_value_t = 1)]
    pub draw: u64,
    #[arg(long, default_value_t = 0)]
    pub loss: u64,
}

impl RuleArgs {
    fn rule(&self) -> Result<PointsRule> {
        PointsRule::new(self.win, self.draw, self.loss)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count tables at one value of r.
    Count {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        /// Use the unmemoized brute-force counter.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Counts for r = 0..=r-max.
    Seq {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        r_max: i64,
    },
    /// Fit the zero-diagonal counting polynomial for n teams.
    Poly {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Economical)]
        mode: ModeArg,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Fit a counting polynomial for arbitrary offsets and mask.
    Fitgen {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        r_start: i64,
        #[arg(long, default_value_t = 3)]
        windows: usize,
        #[arg(long, default_value_t = 24)]
        max_degree: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Count (and list) the match scores consistent with a scoreboard.
    Scenarios {
        #[arg(long, value_delimiter = ',')]
        gf: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        ga: Vec<u64>,
        #[arg(
            long,
            value_delimiter = ',',
            required_unless_present = "wildcard_pts",
            conflicts_with = "wildcard_pts"
        )]
        pts: Option<Vec<u64>>,
        /// Leave points unconstrained.
        #[arg(long)]
        wildcard_pts: bool,
        /// Print the scenarios themselves.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 1000)]
        list_limit: usize,
        #[command(flatten)]
        rule: RuleArgs,
    },
    /// Solve every group of a dataset file.
    Groups {
        #[arg(required_unless_present = "bundled", conflicts_with = "bundled")]
        file: Option<PathBuf>,
        /// Use a shipped dataset (1998, 2002, 2006, 2010, 2014).
        #[arg(long)]
        bundled: Option<i32>,
        #[command(flatten)]
        rule: RuleArgs,
    },
    /// Generate one scoreboard puzzle.
    Puzzle {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_goal: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Accept boards with several solutions.
        #[arg(long)]
        allow_multiple: bool,
        #[arg(long, default_value_t = PuzzleParams::DEFAULT_MAX_ATTEMPTS)]
        max_attempts: u32,
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        rule: RuleArgs,
    },
    /// Generate a book of unique-solution puzzles.
    Book {
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_goal: u64,
        #[arg(long, default_value_t = 0)]
        master_seed: u64,
        /// Order puzzles by increasing difficulty.
        #[arg(long)]
        sort: bool,
        #[arg(long, default_value_t = PuzzleParams::DEFAULT_MAX_ATTEMPTS)]
        max_attempts: u32,
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        rule: RuleArgs,
    },
    /// Compare computed counts against a local OEIS b-file.
    OeisCheck {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        bfile: PathBuf,
        /// b-file index i is compared with r = i + offset.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        offset: i64,
        /// Largest r to compute; later entries are skipped.
        #[arg(long, default_value_t = 30)]
        r_max: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Plain,
    Economical,
}

impl From<ModeArg> for FitMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Plain => FitMode::Plain,
            ModeArg::Economical => FitMode::Economical,
        }
    }
}

/// Parses `argv` (including the program name), runs the command, and returns
/// the process exit code.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn compact(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let limits = Limits {
        max_memo_entries: cli.max_memo,
        max_yields: cli.max_yields,
        max_bruteforce_nodes: cli.max_nodes,
    };
    let solver = SolverLimits {
        max_nodes: cli.max_nodes,
    };
    let machine = cli.format == OutputFormat::Machine;

    match &cli.command {
        Command::Count {
            instance,
            r,
            bruteforce,
        } => {
            let (offsets, mask) = instance.resolve()?;
            let vp = validate_problem(&TableProblem::new(offsets, mask, *r))?;
            let value = if *bruteforce {
                match reduce_fixed(&vp) {
                    Ok(m) => count_bruteforce(&m, &limits)?,
                    Err(Error::InfeasibleFixed { .. }) => CountValue::zero(),
                    Err(e) => return Err(e),
                }
            } else {
                count_problem(&vp, &limits)?
            };
            if machine {
                writeln!(out, "count n={} r={r} value={value}", vp.problem().n()).map_err(io)?;
            } else {
                writeln!(out, "{value}").map_err(io)?;
            }
        }
        Command::Seq { instance, r_max } => {
            let (offsets, mask) = instance.resolve()?;
            let base = TableProblem::new(offsets, mask, 0);
            let rs: Vec<i64> = (0..=*r_max).collect();
            let counts = par_map(&rs, |&r| count_problem(&validate_problem(&base.with_r(r))?, &limits))
                .into_iter()
                .collect::<Result<Vec<_>>>()?;
            if machine {
                for (r, c) in rs.iter().zip(&counts) {
                    writeln!(out, "seq n={} r={r} count={c}", base.n()).map_err(io)?;
                }
            } else {
                writeln!(
                    out,
                    "{}",
                    counts.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                )
                .map_err(io)?;
            }
        }
        Command::Poly { n, mode, json } => {
            let rs_needed = crate::fit::FitPlan::new(*n, (*mode).into())?.samples_needed() + crate::fit::FRESH_POINTS;
            let rs: Vec<i64> = (0..rs_needed as i64).collect();
            let mut counter = zero_diagonal_counter(*n, limits);
            // Sample in parallel up front; the fitter reads from the cache.
            let cache = par_map(&rs, |&r| zero_diagonal_counter(*n, limits)(r));
            let report = fit_sn(*n, (*mode).into(), |r| match cache.get(r as usize) {
                Some(v) => v.clone(),
                None => counter(r),
            })?;
            write_fit(out, machine, "poly", &report)?;
            if let Some(p) = json {
                write_json(p, &report)?;
            }
        }
        Command::Fitgen {
            problem,
            r_start,
            windows,
            max_degree,
            json,
        } => {
            let f = ProblemFile::load(problem)?;
            let options = GeneralFitOptions {
                constant_windows: *windows,
                max_degree: *max_degree,
            };
            let report = fit_general(&f.offsets(), &f.mask()?, *r_start, options, |vp| {
                count_problem(vp, &limits)
            })?;
            write_fit(out, machine, "fitgen", &report)?;
            if let Some(p) = json {
                write_json(p, &report)?;
            }
        }
        Command::Scenarios {
            gf,
            ga,
            pts,
            wildcard_pts,
            list,
            list_limit,
            rule,
        } => {
            let rule = rule.rule()?;
            let board = match pts {
                Some(p) if !*wildcard_pts => ScoreBoard::new(gf.clone(), ga.clone(), p.clone()),
                _ => ScoreBoard::with_wildcard(gf.clone(), ga.clone()),
            };
            let res = find_scenarios(&board, &rule, list.then_some(*list_limit), &solver)?;
            if machine {
                writeln!(out, "scenarios count={} nodes={}", res.count, res.nodes).map_err(io)?;
                for (i, s) in res.scenarios.iter().enumerate() {
                    writeln!(out, "scenario index={i} scores={s}").map_err(io)?;
                }
            } else {
                writeln!(out, "count: {}", res.count).map_err(io)?;
                for s in &res.scenarios {
                    writeln!(out, "  {}", s.to_string().replace(',', "  ")).map_err(io)?;
                }
            }
        }
        Command::Groups {
            file,
            bundled: year,
            rule,
        } => {
            let rule = rule.rule()?;
            let ds: GroupDataset = match (file, year) {
                (Some(path), _) => load_group_dataset(path)?,
                (None, Some(y)) => bundled(*y)?,
                (None, None) => unreachable!("clap requires a dataset"),
            };
            run_groups(&ds, &rule, &solver, machine, out)?;
        }
        Command::Puzzle {
            n,
            max_goal,
            seed,
            allow_multiple,
            max_attempts,
            json,
            rule,
        } => {
            let params = PuzzleParams {
                n: *n,
                max_goal: *max_goal,
                rule: rule.rule()?,
                max_attempts: *max_attempts,
                limits: solver,
            };
            let p = make_puzzle(&params, *seed, !*allow_multiple)?;
            write_puzzle(out, machine, None, &p)?;
            if let Some(path) = json {
                write_json(path, &p)?;
            }
        }
        Command::Book {
            count,
            n,
            max_goal,
            master_seed,
            sort,
            max_attempts,
            json,
            rule,
        } => {
            let params = PuzzleParams {
                n: *n,
                max_goal: *max_goal,
                rule: rule.rule()?,
                max_attempts: *max_attempts,
                limits: solver,
            };
            let book = make_book(&params, *count, *master_seed, *sort)?;
            if machine {
                writeln!(
                    out,
                    "book n={} max_goal={} master_seed={} puzzles={} sorted={}",
                    book.n,
                    book.max_goal,
                    book.master_seed,
                    book.puzzles.len(),
                    book.sorted_by_difficulty
                )
                .map_err(io)?;
            } else {
                writeln!(
                    out,
                    "Puzzle book: {} puzzles, {} teams, scores up to {}",
                    book.puzzles.len(),
                    book.n,
                    book.max_goal
                )
                .map_err(io)?;
            }
            for (i, p) in book.puzzles.iter().enumerate() {
                write_puzzle(out, machine, Some(i), p)?;
            }
            if let Some(path) = json {
                write_json(path, &book)?;
            }
        }
        Command::OeisCheck {
            instance,
            bfile,
            offset,
            r_max,
        } => {
            let (offsets, mask) = instance.resolve()?;
            let (b, warnings) = load_bfile(bfile)?;
            for w in &warnings {
                let BFileWarning::IndexGap { line, previous, found } = w;
                writeln!(err, "warning: b-file line {line}: index {found} follows {previous}").map_err(io)?;
            }
            let top = b.max_index().map_or(-1, |m| (m + offset).min(*r_max));
            let base = TableProblem::new(offsets, mask, 0);
            let rs: Vec<i64> = (0..=top).collect();
            let counts = par_map(&rs, |&r| count_problem(&validate_problem(&base.with_r(r))?, &limits))
                .into_iter()
                .collect::<Result<Vec<_>>>()?;
            let cmp = compare(&counts, &b, *offset);
            let status = if cmp.is_match() { "match" } else { "mismatch" };
            if machine {
                let mut line = format!(
                    "oeis n={} offset={offset} compared={} skipped={} status={status}",
                    base.n(),
                    cmp.compared,
                    cmp.skipped
                );
                if let Some(m) = &cmp.first_mismatch {
                    line.push_str(&format!(
                        " index={} expected={} computed={}",
                        m.index, m.expected, m.computed
                    ));
                }
                writeln!(out, "{line}").map_err(io)?;
            } else {
                match &cmp.first_mismatch {
                    None => writeln!(out, "match: {} entries compared, {} skipped", cmp.compared, cmp.skipped),
                    Some(m) => writeln!(
                        out,
                        "mismatch at index {}: b-file has {}, computed {}",
                        m.index, m.expected, m.computed
                    ),
                }
                .map_err(io)?;
            }
            if let Some(m) = cmp.first_mismatch {
                return Err(Error::ComparisonFailure(format!("b-file index {} differs", m.index)));
            }
        }
    }
    Ok(())
}

fn write_fit(out: &mut dyn Write, machine: bool, tag: &str, report: &FitReport) -> Result<()> {
    let samples: Vec<String> = report
        .samples_used
        .iter()
        .map(|s| format!("{}:{}", s.r, s.count))
        .collect();
    let checks: Vec<String> = report
        .verification
        .iter()
        .map(|c| format!("{}:{}", compact(&c.name), if c.passed { "pass" } else { "fail" }))
        .collect();
    if machine {
        let mut line = tag.to_string();
        if let Some(n) = report.n {
            line.push_str(&format!(" n={n}"));
        }
        if let Some(m) = report.mode {
            line.push_str(&format!(" mode={m}"));
        }
        line.push_str(&format!(
            " degree={} polynomial={}",
            report.polynomial.degree().map_or(-1, |d| d as i64),
            compact(&report.polynomial.to_string())
        ));
        if let Some(f) = &report.factored {
            line.push_str(&format!(" factored={}", compact(f)));
        }
        line.push_str(&format!(
            " window={}..{} samples={} fresh={} checks={} valid={}",
            report.window.0,
            report.window.1,
            samples.join(","),
            join(&report.extra_points_checked),
            checks.join(","),
            report.is_valid()
        ));
        writeln!(out, "{line}").map_err(io)?;
    } else {
        writeln!(out, "polynomial: {}", report.polynomial).map_err(io)?;
        if let Some(f) = &report.factored {
            writeln!(out, "factored:   {f}").map_err(io)?;
        }
        writeln!(
            out,
            "degree:     {}",
            report.polynomial.degree().map_or(-1, |d| d as i64)
        )
        .map_err(io)?;
        writeln!(
            out,
            "fitted from r = {}..{}: {}",
            report.window.0,
            report.window.1,
            samples.join(" ")
        )
        .map_err(io)?;
        writeln!(out, "checks:     {}", checks.join(" ")).map_err(io)?;
    }
    Ok(())
}

fn write_puzzle(out: &mut dyn Write, machine: bool, index: Option<usize>, p: &Puzzle) -> Result<()> {
    let pts = p.board.pts.concrete().map(join).unwrap_or_else(|| "*".into());
    if machine {
        let idx = index.map(|i| format!(" index={i}")).unwrap_or_default();
        writeln!(
            out,
            "puzzle{idx} seed={} attempt={} gf={} ga={} pts={} solutions={} difficulty={} solution={}",
            p.seed,
            p.attempt,
            join(&p.board.gf),
            join(&p.board.ga),
            pts,
            p.solutions_count,
            p.difficulty,
            p.solution
        )
        .map_err(io)?;
        return Ok(());
    }
    if let Some(i) = index {
        writeln!(out, "\nPuzzle {} (seed {}, difficulty {})", i + 1, p.seed, p.difficulty).map_err(io)?;
    } else {
        writeln!(out, "Puzzle (seed {}, difficulty {})", p.seed, p.difficulty).map_err(io)?;
    }
    writeln!(out, "team   GF  GA  PTS").map_err(io)?;
    let concrete = p.board.pts.concrete();
    for t in 0..p.board.n() {
        let pt = concrete.map_or("*".to_string(), |v| v[t].to_string());
        writeln!(out, "{:<6}{:>3} {:>3} {:>4}", t + 1, p.board.gf[t], p.board.ga[t], pt).map_err(io)?;
    }
    writeln!(out, "solutions: {}", p.solutions_count).map_err(io)?;
    writeln!(out, "answer:    {}", p.solution.to_string().replace(',', "  ")).map_err(io)?;
    Ok(())
}

fn run_groups(
    ds: &GroupDataset,
    rule: &PointsRule,
    solver: &SolverLimits,
    machine: bool,
    out: &mut dyn Write,
) -> Result<()> {
    let results = par_map(&ds.groups, |g| find_scenarios(&g.board(), rule, None, solver))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut mismatched = Vec::new();
    if !machine {
        writeln!(out, "{} group stage", ds.year).map_err(io)?;
    }
    for (k, (g, res)) in ds.groups.iter().zip(&results).enumerate() {
        let expected = ds.expected_counts.as_ref().map(|e| e[k]);
        let unique = res.count == CountValue::from(1u64);
        let status = match expected {
            None => "unchecked",
            Some(e) if res.count == CountValue::from(e) => "ok",
            Some(_) => "mismatch",
        };
        if status == "mismatch" {
            mismatched.push(g.name.clone());
        }
        let exp = expected.map_or("-".to_string(), |e| e.to_string());
        if machine {
            writeln!(
                out,
                "group year={} name={} count={} expected={exp} unique={unique} status={status}",
                ds.year, g.name, res.count
            )
            .map_err(io)?;
        } else {
            writeln!(
                out,
                "  {}: {:>4} scenarios (expected {exp}){}{}",
                g.name,
                res.count,
                if unique { "  unique" } else { "" },
                if status == "mismatch" { "  MISMATCH" } else { "" }
            )
            .map_err(io)?;
        }
    }
    if mismatched.is_empty() {
        Ok(())
    } else {
        Err(Error::ComparisonFailure(format!(
            "computed counts differ from expected for group(s) {}",
            mismatched.join(",")
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("goaltally").chain(args.iter().copied());
        let code = run_command(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn count_derangements() {
        assert_eq!(
            run(&["count", "--n", "4", "--r", "1", "--zero-diagonal"]),
            (0, "9\n".into(), String::new())
        );
    }

    #[test]
    fn seq_prints_list() {
        let (code, out, _) = run(&["seq", "--n", "5", "--r-max", "3", "--zero-diagonal"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1, 44, 870, 9480\n");
    }

    #[test]
    fn scenarios_count() {
        let (code, out, _) = run(&["scenarios", "--gf", "0,0,0,0", "--ga", "0,0,0,0", "--pts", "3,3,3,3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "count: 1\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(&["count", "--n", "4"]).0, 1);
        assert_eq!(run(&["bogus"]).0, 1);
        assert_eq!(run(&["--help"]).0, 0);
        assert_eq!(run(&["count", "--n", "4", "--r", "-1", "--zero-diagonal"]).0, 2);
        assert_eq!(run(&["scenarios", "--gf", "1,0", "--ga", "0,0", "--wildcard-pts"]).0, 2);
        assert_eq!(
            run(&["--max-memo", "2", "count", "--n", "5", "--r", "5", "--zero-diagonal"]).0,
            4
        );
        assert_eq!(
            run(&["scenarios", "--gf", "1,1", "--ga", "1,1", "--pts", "1,1", "--win", "1"]).0,
            2
        );
    }

    #[test]
    fn machine_output() {
        let (code, out, _) = run(&[
            "--format",
            "machine",
            "seq",
            "--n",
            "4",
            "--r-max",
            "2",
            "--zero-diagonal",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "seq n=4 r=0 count=1\nseq n=4 r=1 count=9\nseq n=4 r=2 count=42\n");
        let (_, out, _) = run(&["--format", "machine", "poly", "--n", "3"]);
        assert_eq!(
            out,
            "poly n=3 mode=economical degree=1 polynomial=r+1 factored=(r+1) window=0..0 samples=0:1 \
             fresh=1,2,3 checks=degree:pass,roots:pass,reciprocity:pass,freshr=1:pass,freshr=2:pass,freshr=3:pass valid=true\n"
        );
    }
}
