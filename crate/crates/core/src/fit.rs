//! Reconstruction of counting polynomials from finitely many exact counts.
//!
//! For the zero-diagonal family, `S_n(r)` has degree `n^2 - 3n + 1`, vanishes
//! at `r = -1, ..., -(n-2)`, and satisfies `S_n(-(n-1) - r) = -S_n(r)`.
//! [`fit_sn`] either interpolates through `degree + 1` counts ([`FitMode::Plain`])
//! or uses that structure to solve for far fewer unknowns
//! ([`FitMode::Economical`]): writing `S_n = P * Q` with
//! `P(r) = (r + 1)...(r + n - 2)`, the reflection forces `Q` to be odd (n even)
//! or even (n odd) in `u = r + (n - 1)/2`, so only every other power of `u`
//! appears. For `n = 4` that leaves two unknowns, fixed by `S_4(0)` and `S_4(1)`.
//!
//! [`fit_general`] handles arbitrary offsets and masks by finite-difference
//! degree detection followed by plain interpolation.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::engine::{count_problem, CountValue, Limits};
use crate::error::{Error, Result};
use crate::model::{validate_problem, EntryMask, MarginOffsets, TableProblem, ValidatedProblem};
use crate::poly::{format_factored, rat, ratio, solve_linear, RationalPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FitMode {
    Plain,
    Economical,
}

impl std::str::FromStr for FitMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(FitMode::Plain),
            "economical" => Ok(FitMode::Economical),
            other => Err(Error::InvalidArgument(format!("unknown fit mode {other:?}"))),
        }
    }
}

impl fmt::Display for FitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitMode::Plain => "plain",
            FitMode::Economical => "economical",
        })
    }
}

/// Structure of `S_n` used for fitting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitPlan {
    pub n: usize,
    pub degree: usize,
    /// `-1, ..., -(n - 2)`
    pub known_roots: Vec<i64>,
    /// `-(n - 1)/2`, the centre of the reflection `r -> -(n-1) - r`.
    pub center: BigRational,
    pub mode: FitMode,
}

impl FitPlan {
    pub fn new(n: usize, mode: FitMode) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("fit_sn needs n >= 3, got {n}")));
        }
        Ok(FitPlan {
            n,
            degree: expected_degree(n)? as usize,
            known_roots: (1..=n as i64 - 2).map(|k| -k).collect(),
            center: ratio(-(n as i64 - 1), 2),
            mode,
        })
    }

    /// Degree of the cofactor `Q` once the known roots are divided out.
    pub fn quotient_degree(&self) -> usize {
        (self.n - 1) * (self.n - 3)
    }

    /// Powers of `u` that can appear in `Q`.
    pub fn quotient_powers(&self) -> Vec<usize> {
        let dq = self.quotient_degree();
        (dq % 2..=dq).step_by(2).collect()
    }

    /// Number of counts the fit itself consumes (fresh verification excluded).
    pub fn samples_needed(&self) -> usize {
        match self.mode {
            FitMode::Plain => self.degree + 1,
            FitMode::Economical => self.quotient_powers().len(),
        }
    }
}

/// `n^2 - 3n + 1`
pub fn expected_degree(n: usize) -> Result<i64> {
    let n = i64::try_from(n).map_err(|_| Error::InvalidArgument("n too large".into()))?;
    Ok(n * n - 3 * n + 1)
}

/// Outcome of one structural or pointwise check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub r: i64,
    pub count: CountValue,
}

/// Result of a fit: the polynomial, the counts it was built from, and the
/// verification record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitReport {
    pub polynomial: RationalPolynomial,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mode: Option<FitMode>,
    /// Side length, when the fit is for the zero-diagonal family.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    pub samples_used: Vec<Sample>,
    pub verification: Vec<Check>,
    pub extra_points_checked: Vec<i64>,
    /// First and last `r` of the interpolation window.
    pub window: (i64, i64),
    /// Factored form, when known roots were divided out.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factored: Option<String>,
}

impl FitReport {
    pub fn is_valid(&self) -> bool {
        self.verification.iter().all(|c| c.passed)
    }

    fn failures(&self) -> String {
        self.verification
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn count_to_rational(c: &CountValue) -> BigRational {
    BigRational::from_integer(BigInt::from(c.0.clone()))
}

/// Structural checks for a candidate `S_n`: degree, vanishing at the known
/// roots, and the reflection identity `p(-(n-1) - r) + p(r) == 0`, expanded
/// symbolically.
pub fn verify_structure(p: &RationalPolynomial, n: usize) -> Vec<Check> {
    let expected = expected_degree(n).unwrap_or(i64::MIN);
    let actual = p.degree().map_or(-1, |d| d as i64);
    let degree = Check::new(
        "degree",
        actual == expected,
        format!("expected {expected}, got {actual}"),
    );

    let bad_roots: Vec<i64> = (1..=(n as i64 - 2))
        .filter(|&k| !p.eval_int(-k).is_zero())
        .map(|k| -k)
        .collect();
    let roots = Check::new(
        "roots",
        bad_roots.is_empty(),
        if bad_roots.is_empty() {
            String::new()
        } else {
            format!("nonzero at {bad_roots:?}")
        },
    );

    let reflected = p.compose_linear(&rat(-(n as i64 - 1)), &rat(-1));
    let sum = &reflected + p;
    let reciprocity = Check::new(
        "reciprocity",
        sum.is_zero(),
        if sum.is_zero() {
            String::new()
        } else {
            format!("p(-(n-1)-r) + p(r) = {sum}")
        },
    );
    vec![degree, roots, reciprocity]
}

/// `(r + 1)(r + 2)...(r + k)`
pub fn known_root_product(k: usize) -> RationalPolynomial {
    (1..=k as i64).fold(RationalPolynomial::constant(BigRational::one()), |acc, c| {
        &acc * &RationalPolynomial::linear(rat(c))
    })
}

/// Divides out `(r + 1)...(r + n - 2)` exactly.
pub fn factor_known_roots(p: &RationalPolynomial, n: usize) -> Result<RationalPolynomial> {
    let (q, rem) = p.div_rem(&known_root_product(n.saturating_sub(2)));
    if rem.is_zero() {
        Ok(q)
    } else {
        Err(Error::NonzeroRemainder)
    }
}

/// Exact evaluation at any integer, including negative ones.
pub fn evaluate_poly(p: &RationalPolynomial, r: i64) -> BigRational {
    p.eval_int(r)
}

fn fresh_checks<F>(p: &RationalPolynomial, rs: &[i64], counter: &mut F) -> Result<Vec<Check>>
where
    F: FnMut(i64) -> Result<CountValue>,
{
    rs.iter()
        .map(|&r| {
            let c = count_to_rational(&counter(r)?);
            let v = p.eval_int(r);
            let detail = if v == c {
                String::new()
            } else {
                format!("count {c}, polynomial {v}")
            };
            Ok(Check::new(&format!("fresh r={r}"), v == c, detail))
        })
        .collect()
}

/// Number of fresh points checked past the fit window.
pub const FRESH_POINTS: usize = 3;

/// Fits `S_n(r)` from counts supplied by `counter` (called with `r >= 0`).
pub fn fit_sn<F>(n: usize, mode: FitMode, mut counter: F) -> Result<FitReport>
where
    F: FnMut(i64) -> Result<CountValue>,
{
    let plan = FitPlan::new(n, mode)?;
    let needed = plan.samples_needed() as i64;
    let samples: Vec<Sample> = (0..needed)
        .map(|r| Ok(Sample { r, count: counter(r)? }))
        .collect::<Result<_>>()?;

    let polynomial = match mode {
        FitMode::Plain => {
            let pts: Vec<_> = samples
                .iter()
                .map(|s| (rat(s.r), count_to_rational(&s.count)))
                .collect();
            RationalPolynomial::interpolate(&pts)?
        }
        FitMode::Economical => economical(&plan, &samples)?,
    };

    let mut verification = verify_structure(&polynomial, n);
    let extra: Vec<i64> = (needed..needed + FRESH_POINTS as i64).collect();
    verification.extend(fresh_checks(&polynomial, &extra, &mut counter)?);

    let factored = factor_known_roots(&polynomial, n)
        .ok()
        .map(|q| format_factored(n - 2, &q));
    let report = FitReport {
        polynomial,
        mode: Some(mode),
        n: Some(n),
        samples_used: samples,
        verification,
        extra_points_checked: extra,
        window: (0, needed - 1),
        factored,
    };
    if report.is_valid() {
        Ok(report)
    } else {
        Err(Error::VerificationFailure(report.failures()))
    }
}

fn economical(plan: &FitPlan, samples: &[Sample]) -> Result<RationalPolynomial> {
    let powers = plan.quotient_powers();
    let roots = known_root_product(plan.n - 2);
    let shift = -plan.center.clone();
    // Q(r_i) = S(r_i) / P(r_i); P > 0 for r >= 0.
    let mut matrix = Vec::with_capacity(samples.len());
    let mut rhs = Vec::with_capacity(samples.len());
    for s in samples {
        let r = rat(s.r);
        let u = &r + &shift;
        matrix.push(powers.iter().map(|&e| num_traits::pow(u.clone(), e)).collect());
        rhs.push(count_to_rational(&s.count) / roots.eval(&r));
    }
    let coeffs = solve_linear(matrix, rhs)?;
    let u_of_r = RationalPolynomial::linear(shift);
    let quotient = powers
        .iter()
        .zip(&coeffs)
        .fold(RationalPolynomial::zero(), |acc, (&e, c)| {
            &acc + &u_of_r.pow(e).scale(c)
        });
    Ok(&roots * &quotient)
}

/// Tuning for [`fit_general`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneralFitOptions {
    /// Consecutive equal finite differences required to accept a degree.
    pub constant_windows: usize,
    /// Give up (NotPolynomial) beyond this degree.
    pub max_degree: usize,
}

impl Default for GeneralFitOptions {
    fn default() -> Self {
        GeneralFitOptions {
            constant_windows: 3,
            max_degree: 24,
        }
    }
}

/// `k`-th forward differences of `values`.
pub fn finite_differences(values: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut cur = values.to_vec();
    for _ in 0..k {
        cur = cur.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    cur
}

/// Smallest `k` whose `k`-th differences have at least `windows` entries,
/// all equal.
pub fn detect_degree(values: &[BigInt], windows: usize) -> Option<usize> {
    (0..values.len()).find(|&k| {
        let d = finite_differences(values, k);
        d.len() >= windows && d.windows(2).all(|w| w[0] == w[1])
    })
}

/// Fits the count of tables with margins `r + offsets` and the given mask as
/// a polynomial in `r`, sampling from `r_start` upward.
pub fn fit_general<F>(
    offsets: &MarginOffsets,
    mask: &EntryMask,
    r_start: i64,
    options: GeneralFitOptions,
    mut counter: F,
) -> Result<FitReport>
where
    F: FnMut(&ValidatedProblem) -> Result<CountValue>,
{
    let base = TableProblem::new(offsets.clone(), mask.clone(), r_start);
    let mut count_at = |r: i64| -> Result<CountValue> { counter(&validate_problem(&base.with_r(r))?) };

    let first = attempt_general(r_start, options, &mut count_at)?;
    match first {
        Attempt::Fit(report) => Ok(report),
        Attempt::Failed { degree, detail } => {
            match attempt_general(r_start + degree as i64 + 1, options, &mut count_at)? {
                Attempt::Fit(report) => Ok(report),
                Attempt::Failed { detail: again, .. } => Err(Error::NotPolynomial(format!(
                    "from r={r_start}: {detail}; retry: {again}"
                ))),
            }
        }
    }
}

enum Attempt {
    Fit(FitReport),
    Failed { degree: usize, detail: String },
}

fn attempt_general<F>(start: i64, options: GeneralFitOptions, count_at: &mut F) -> Result<Attempt>
where
    F: FnMut(i64) -> Result<CountValue>,
{
    let mut samples: Vec<Sample> = Vec::new();
    let mut values: Vec<BigInt> = Vec::new();
    let degree = loop {
        let r = start + samples.len() as i64;
        let count = count_at(r)?;
        values.push(BigInt::from(count.0.clone()));
        samples.push(Sample { r, count });
        if let Some(d) = detect_degree(&values, options.constant_windows) {
            break d;
        }
        if samples.len() > options.max_degree + options.constant_windows {
            return Err(Error::NotPolynomial(format!(
                "no constant differences up to degree {} from r={start}",
                options.max_degree
            )));
        }
    };

    let pts: Vec<_> = samples[..=degree]
        .iter()
        .map(|s| (rat(s.r), count_to_rational(&s.count)))
        .collect();
    let polynomial = if values.iter().all(Zero::is_zero) {
        RationalPolynomial::zero()
    } else {
        RationalPolynomial::interpolate(&pts)?
    };

    let mut verification: Vec<Check> = samples[degree + 1..]
        .iter()
        .map(|s| {
            let ok = polynomial.eval_int(s.r) == count_to_rational(&s.count);
            Check::new(&format!("sample r={}", s.r), ok, String::new())
        })
        .collect();
    let next = start + samples.len() as i64;
    let extra: Vec<i64> = (next..next + FRESH_POINTS as i64).collect();
    verification.extend(fresh_checks(&polynomial, &extra, count_at)?);

    let report = FitReport {
        polynomial,
        mode: None,
        n: None,
        samples_used: samples,
        verification,
        extra_points_checked: extra,
        window: (start, start + degree as i64),
        factored: None,
    };
    Ok(if report.is_valid() {
        Attempt::Fit(report)
    } else {
        Attempt::Failed {
            degree,
            detail: report.failures(),
        }
    })
}

/// Counter for the zero-diagonal family backed by the memoized engine.
pub fn zero_diagonal_counter(n: usize, limits: Limits) -> impl FnMut(i64) -> Result<CountValue> {
    move |r| count_problem(&validate_problem(&TableProblem::zero_diagonal(n, r))?, &limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Cell;

    fn s4() -> RationalPolynomial {
        RationalPolynomial::from_ints(&[30, 83, 90, 50, 15, 2]).scale(&ratio(1, 30))
    }

    #[test]
    fn plan_structure() {
        let p = FitPlan::new(4, FitMode::Economical).unwrap();
        assert_eq!(p.degree, 5);
        assert_eq!(p.known_roots, vec![-1, -2]);
        assert_eq!(p.quotient_powers(), vec![1, 3]);
        assert_eq!(p.samples_needed(), 2);
        let p = FitPlan::new(5, FitMode::Economical).unwrap();
        assert_eq!(p.quotient_powers(), vec![0, 2, 4, 6, 8]);
        let p = FitPlan::new(3, FitMode::Economical).unwrap();
        assert_eq!(p.quotient_powers(), vec![0]);
        assert!(FitPlan::new(2, FitMode::Plain).is_err());
    }

    #[test]
    fn structure_checks() {
        assert!(verify_structure(&s4(), 4).iter().all(|c| c.passed));
        assert!(verify_structure(&RationalPolynomial::from_ints(&[1, 1]), 3)
            .iter()
            .all(|c| c.passed));
        let c = verify_structure(&RationalPolynomial::from_ints(&[1]), 4);
        assert!(!c[0].passed);
    }

    #[test]
    fn factoring() {
        assert_eq!(
            factor_known_roots(&s4(), 4).unwrap(),
            RationalPolynomial::from_ints(&[15, 19, 9, 2]).scale(&ratio(1, 30))
        );
        assert_eq!(
            factor_known_roots(&RationalPolynomial::from_ints(&[1, 1]), 3).unwrap(),
            RationalPolynomial::from_ints(&[1])
        );
        assert_eq!(
            factor_known_roots(&RationalPolynomial::from_ints(&[1, 0, 1]), 3),
            Err(Error::NonzeroRemainder)
        );
    }

    #[test]
    fn economical_s4_uses_two_counts() {
        let mut calls = Vec::new();
        let report = fit_sn(4, FitMode::Economical, |r| {
            calls.push(r);
            zero_diagonal_counter(4, Limits::default())(r)
        })
        .unwrap();
        assert_eq!(report.polynomial, s4());
        assert_eq!(report.samples_used.iter().map(|s| s.r).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(report.extra_points_checked, vec![2, 3, 4]);
        assert_eq!(calls, vec![0, 1, 2, 3, 4]);
        assert_eq!(
            report.factored.as_deref(),
            Some("(1/30)*(r + 1)*(r + 2)*(2*r^3 + 9*r^2 + 19*r + 15)")
        );
    }

    #[test]
    fn wrong_counter_fails_verification() {
        // Feeding S_4(r) + 1 cannot satisfy the structure.
        let mut inner = zero_diagonal_counter(4, Limits::default());
        let err = fit_sn(4, FitMode::Plain, |r| Ok(CountValue(inner(r)?.0 + 1u32))).unwrap_err();
        assert!(matches!(err, Error::VerificationFailure(_)), "{err:?}");
    }

    #[test]
    fn degree_detection() {
        let cube: Vec<BigInt> = (0..8).map(|x: i64| BigInt::from(x * x * x)).collect();
        assert_eq!(detect_degree(&cube, 3), Some(3));
        let ones = vec![BigInt::from(1); 3];
        assert_eq!(detect_degree(&ones, 3), Some(0));
        assert_eq!(detect_degree(&ones[..2], 3), None);
    }

    fn general(offsets: MarginOffsets, mask: EntryMask, r_start: i64) -> Result<FitReport> {
        fit_general(&offsets, &mask, r_start, GeneralFitOptions::default(), |p| {
            count_problem(p, &Limits::default())
        })
    }

    #[test]
    fn general_fits() {
        let r = general(MarginOffsets::zero(1), EntryMask::all_free(1), 0).unwrap();
        assert_eq!(r.polynomial, RationalPolynomial::from_ints(&[1]));
        let r = general(MarginOffsets::zero(2), EntryMask::all_free(2), 0).unwrap();
        assert_eq!(r.polynomial, RationalPolynomial::from_ints(&[1, 1]));
        let r = general(MarginOffsets::zero(4), EntryMask::zero_diagonal(4), 0).unwrap();
        assert_eq!(r.polynomial, s4());
        assert_eq!(r.window, (0, 5));
    }

    #[test]
    fn general_with_pinned_entry() {
        // 2x2 all-free, margins r, entry (0,0) pinned to 3: exactly one table
        // for r >= 3 and none below.
        let mut mask = EntryMask::all_free(2);
        mask.set(0, 0, Cell::Fixed(3));
        let r = general(MarginOffsets::zero(2), mask.clone(), 3).unwrap();
        assert_eq!(r.polynomial, RationalPolynomial::from_ints(&[1]));
        // From r = 0 the leading zeros look constant, verification fails, and
        // the retry from r = 1 never sees constant differences.
        let err = general(MarginOffsets::zero(2), mask, 0).unwrap_err();
        assert!(matches!(err, Error::NotPolynomial(_)), "{err:?}");
    }

    #[test]
    fn general_retry_recovers() {
        // f(0) = 7 breaks the polynomial (r-1)(r-2) + 7, but f(0..3) = 7, 7, 7
        // fakes degree 0; the retry from r = 1 finds degree 2.
        let f = |r: i64| if r == 0 { 7 } else { (r - 1) * (r - 2) + 7 };
        let report = fit_general(
            &MarginOffsets::zero(1),
            &EntryMask::all_free(1),
            0,
            GeneralFitOptions::default(),
            |p| Ok(CountValue::from(f(p.problem().r) as u64)),
        )
        .unwrap();
        assert_eq!(report.polynomial, RationalPolynomial::from_ints(&[9, -3, 1]));
        assert_eq!(report.window, (1, 3));
    }

    #[test]
    fn general_negative_margin() {
        let err = general(MarginOffsets::new(vec![-2, 0], vec![-1, -1]), EntryMask::all_free(2), 0).unwrap_err();
        assert!(matches!(err, Error::NegativeMargin { .. }));
    }

    #[test]
    fn general_not_polynomial() {
        let opts = GeneralFitOptions {
            constant_windows: 3,
            max_degree: 4,
        };
        // 2^r is never polynomial.
        let err = fit_general(&MarginOffsets::zero(1), &EntryMask::all_free(1), 0, opts, |p| {
            Ok(CountValue::from(1u64 << p.problem().r))
        })
        .unwrap_err();
        assert!(matches!(err, Error::NotPolynomial(_)));
    }
}
