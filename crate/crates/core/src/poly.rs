//! Univariate polynomials in `r` with exact rational coefficients, plus the
//! exact linear algebra used to interpolate them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational polynomial; coefficients in ascending powers of `r`.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial is
/// the empty vector and the last coefficient (if any) is the leading one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `r + c`
    pub fn linear(c: BigRational) -> Self {
        Self::new(vec![c, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::constant(BigRational::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, r: i64) -> BigRational {
        self.eval(&rat(r))
    }

    /// Symbolic substitution `r -> a + b*r`.
    pub fn compose_linear(&self, a: &BigRational, b: &BigRational) -> Self {
        let inner = Self::new(vec![a.clone(), b.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &inner) + &Self::constant(c.clone()))
    }

    /// Polynomial long division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(deg) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if deg < d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); deg - d + 1];
        for k in (0..=deg - d).rev() {
            let q = &rem[k + d] / &lead;
            if !q.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &q * c;
                }
            }
            quot[k] = q;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    /// Least common multiple of all coefficient denominators (1 for zero).
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Writes the polynomial as `(1/L) * P` with `P` integral; returns
    /// `(L, coefficients of P)` in ascending powers.
    pub fn integer_normalized(&self) -> (BigInt, Vec<BigInt>) {
        let l = self.denominator_lcm();
        let ints = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        (l, ints)
    }

    /// Interpolates the unique polynomial of degree `< points.len()` through
    /// the given points by solving the Vandermonde system exactly.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Result<Self> {
        let k = points.len();
        let matrix: Vec<Vec<BigRational>> = points
            .iter()
            .map(|(x, _)| {
                let mut row = Vec::with_capacity(k);
                let mut p = BigRational::one();
                for _ in 0..k {
                    row.push(p.clone());
                    p *= x;
                }
                row
            })
            .collect();
        let rhs: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
        solve_linear(matrix, rhs).map(Self::new)
    }
}

/// Solves the square system `A x = b` by Gaussian elimination over the
/// rationals (exact; no pivoting heuristics needed beyond a nonzero pivot).
pub fn solve_linear(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Result<Vec<BigRational>> {
    let k = b.len();
    if a.len() != k || a.iter().any(|row| row.len() != k) {
        return Err(Error::Shape("linear system must be square".into()));
    }
    for col in 0..k {
        let pivot = (col..k).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularSystem)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in &mut a[col][col..] {
            *x = &*x * &inv;
        }
        b[col] = &b[col] * &inv;
        let pivot_row = a[col].clone();
        for row in 0..k {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone();
            for (x, p) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * p;
            }
            let delta = &factor * &b[col];
            b[row] -= delta;
        }
    }
    Ok(b)
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: Self) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        RationalPolynomial::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: Self) -> RationalPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

fn write_int_poly(f: &mut fmt::Formatter<'_>, ints: &[BigInt]) -> fmt::Result {
    let mut first = true;
    for (power, c) in ints.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        let unit = mag.is_one() && power > 0;
        if !unit {
            write!(f, "{mag}")?;
        }
        match power {
            0 => {}
            1 if unit => f.write_str("r")?,
            1 => f.write_str("*r")?,
            p if unit => write!(f, "r^{p}")?,
            p => write!(f, "*r^{p}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Expanded display, normalized as `(integer polynomial)/L`, e.g.
/// `(2*r^5 + 15*r^4 + 50*r^3 + 90*r^2 + 83*r + 30)/30`.
impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, ints) = self.integer_normalized();
        if l.is_one() {
            write_int_poly(f, &ints)
        } else {
            f.write_str("(")?;
            write_int_poly(f, &ints)?;
            write!(f, ")/{l}")
        }
    }
}

/// Factored display: `(1/L)*(r + 1)*(r + 2)*(quotient)` given the roots
/// `-1, ..., -k` that were divided out and the remaining quotient.
pub fn format_factored(root_count: usize, quotient: &RationalPolynomial) -> String {
    struct Ints<'a>(&'a [BigInt]);
    impl fmt::Display for Ints<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_int_poly(f, self.0)
        }
    }
    let (l, ints) = quotient.integer_normalized();
    let mut parts = Vec::new();
    if !l.is_one() {
        parts.push(format!("(1/{l})"));
    }
    for k in 1..=root_count {
        parts.push(format!("(r + {k})"));
    }
    let q = Ints(&ints).to_string();
    if parts.is_empty() || q != "1" {
        parts.push(format!("({q})"));
    }
    parts.join("*")
}

fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => BigInt::from_str(s.trim())
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
    }
}

/// Serialized as a list of `"num/den"` (or `"num"`) strings, ascending powers.
impl Serialize for RationalPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for RationalPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(RationalPolynomial::new)
            .map_err(serde::de::Error::custom)
    }
}
