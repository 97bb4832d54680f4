//! Arbitrary-precision integers, exact rationals and dense linear algebra
//! over the rationals.
//!
//! The big-number types come from `num-bigint` / `num-rational`; this module
//! adds the constructors, formatting and matrix routines the rest of the
//! crate needs. Every value here is immutable once built and `Send + Sync`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;

/// Exact fraction, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds the reduced fraction `num / den`.
pub fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let den = den.into();
    if den.is_zero() {
        return Err(Error::invalid("zero denominator"));
    }
    Ok(Rational::new(num.into(), den))
}

/// Shorthand for an integer-valued rational.
pub fn int(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

/// Renders `num/den`, or just `num` when the denominator is one.
pub fn format_exact(value: &Rational) -> String {
    value.to_string()
}

/// Parses `"a/b"` or `"a"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::invalid(format!("not a rational: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            rat(n, d)
        }
        None => Ok(int(text.parse::<BigInt>().map_err(|_| bad())?)),
    }
}

fn pow10(exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), exp as usize)
}

fn scale_pow10(value: &Rational, exp: i64) -> Rational {
    let factor = pow10(exp.unsigned_abs() as u32);
    if exp >= 0 {
        value * int(factor)
    } else {
        value / int(factor)
    }
}

/// Rounds half-to-even to the nearest integer.
fn round_half_even(value: &Rational) -> BigInt {
    let floor = value.floor();
    let frac = value - &floor;
    let mut q = floor.to_integer();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    if frac > half || (frac == half && q.is_odd()) {
        q += 1;
    }
    q
}

/// Decimal rendering with `digits` significant digits, rounded half-to-even
/// from the exact value.
///
/// Follows `%g` conventions: trailing zeros are dropped, and scientific
/// notation (`1.5e-7`) is used when the decimal exponent is below -4 or at
/// least `digits`. Output never depends on the process locale.
pub fn to_decimal_string(value: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let abs = value.abs();

    // Decimal exponent e with 10^e <= |value| < 10^(e+1).
    let mut exp = abs.numer().to_string().len() as i64 - abs.denom().to_string().len() as i64;
    while scale_pow10(&abs, -exp) < Rational::one() {
        exp -= 1;
    }
    while scale_pow10(&abs, -exp) >= int(10) {
        exp += 1;
    }

    let mut mantissa = round_half_even(&scale_pow10(&abs, digits as i64 - 1 - exp));
    if mantissa == pow10(digits as u32) {
        mantissa = pow10(digits as u32 - 1);
        exp += 1;
    }
    let s = mantissa.to_string();
    debug_assert_eq!(s.len(), digits);

    let body = if exp < -4 || exp >= digits as i64 {
        let frac = s[1..].trim_end_matches('0');
        if frac.is_empty() {
            format!("{}e{}", &s[..1], exp)
        } else {
            format!("{}.{}e{}", &s[..1], frac, exp)
        }
    } else if exp >= 0 {
        let split = exp as usize + 1;
        let frac = s[split..].trim_end_matches('0');
        if frac.is_empty() {
            s[..split].to_string()
        } else {
            format!("{}.{}", &s[..split], frac)
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("0.{}{}", zeros, s.trim_end_matches('0'))
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Nearest `f64` to an exact rational (via the 17-digit decimal rendering).
pub fn to_f64(value: &Rational) -> f64 {
    to_decimal_string(value, 17).parse().unwrap_or(f64::NAN)
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::invalid(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged rows"));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for integer test matrices.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| ((i + 1)..self.cols).all(|j| self[(i, j)].is_zero()))
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::invalid(format!(
                "vector of length {} does not match {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| dot(self.row(i), x))
            .collect())
    }

    /// Exact determinant by Gaussian elimination, pivoting on the first
    /// nonzero entry of each column.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::invalid(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            for r in (col + 1)..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] / &p;
                for c in col..n {
                    let delta = &factor * &a[(col, c)];
                    a[(r, c)] -= delta;
                }
            }
        }
        Ok(det)
    }

    /// Solves `self · x = rhs` exactly.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_square() {
            return Err(Error::invalid("solve needs a square matrix"));
        }
        if rhs.len() != self.rows {
            return Err(Error::invalid(format!(
                "right-hand side of length {} for {} equations",
                rhs.len(),
                self.rows
            )));
        }
        let rhs_matrix = RationalMatrix::new(rhs.len(), 1, rhs.to_vec())?;
        let x = self.gauss_jordan(rhs_matrix)?.entries;
        debug_assert_eq!(self.mul_vec(&x)?, rhs);
        Ok(x)
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        if !self.is_square() {
            return Err(Error::invalid("inverse needs a square matrix"));
        }
        self.gauss_jordan(Self::identity(self.rows))
    }

    /// Reduces `[self | rhs]` to `[I | self⁻¹ rhs]`.
    fn gauss_jordan(&self, mut rhs: RationalMatrix) -> Result<RationalMatrix> {
        let n = self.rows;
        let mut a = self.clone();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                rhs.swap_rows(pivot, col);
            }
            let p = a[(col, col)].clone();
            if !p.is_one() {
                for c in col..n {
                    a[(col, c)] /= &p;
                }
                for c in 0..rhs.cols {
                    rhs[(col, c)] /= &p;
                }
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for c in col..n {
                    let delta = &factor * &a[(col, c)];
                    a[(r, c)] -= delta;
                }
                for c in 0..rhs.cols {
                    let delta = &factor * &rhs[(col, c)];
                    rhs[(r, c)] -= delta;
                }
            }
        }
        Ok(rhs)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_exact).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}
