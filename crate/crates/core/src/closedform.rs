//! Exact `p(n, k)` from the two product formulas, plus the known closed forms
//! for `k = n` and `k = n - 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{factorial, Rational};
use crate::sequences::{s_spec, t_spec};

/// `n` sticks, polygon size `k`, with `3 <= k <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Problem {
    n: usize,
    k: usize,
}

impl Problem {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("n must satisfy n >= 3, got n = {n}")));
        }
        if k < 3 {
            return Err(Error::invalid(format!("k must satisfy k >= 3, got k = {k}")));
        }
        if k > n {
            return Err(Error::invalid(format!(
                "k must satisfy k <= n, got k = {k} > n = {n}"
            )));
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Every valid problem with `n <= n_max`, ordered by `n` then `k`.
    pub fn all_up_to(n_max: usize) -> Vec<Problem> {
        (3..=n_max)
            .flat_map(|n| (3..=n).map(move |k| Problem { n, k }))
            .collect()
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, k={})", self.n, self.k)
    }
}

/// An exact probability in `(0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Probability(Rational);

impl Probability {
    /// `1 / denominator`.
    fn reciprocal(denominator: BigInt) -> Result<Self> {
        if denominator <= BigInt::zero() {
            return Err(Error::InternalInconsistency(format!(
                "non-positive product {denominator}"
            )));
        }
        Ok(Self(Rational::new(BigInt::one(), denominator)))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_rational(self) -> Rational {
        self.0
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `1 / (prod_{l=1}^{k-1} T(k,l)(n) · prod_{i=1}^{n-k+1} T(k,k-1)(n-i))`.
pub fn p_formula1(prob: Problem) -> Result<Probability> {
    let (n, k) = (prob.n, prob.k);
    let mut denom = BigInt::one();
    for ell in 1..k {
        denom *= t_spec(k, ell)?.eval(n)?;
    }
    let last = t_spec(k, k - 1)?;
    for i in 1..=(n - k + 1) {
        denom *= last.eval(n - i)?;
    }
    Probability::reciprocal(denom)
}

/// `1 / (prod_{l=1}^{k-3} T(k,l)(n) · prod_{i=1}^{n-k+3} S(k)(i))`.
pub fn p_formula2(prob: Problem) -> Result<Probability> {
    let (n, k) = (prob.n, prob.k);
    let mut denom = BigInt::one();
    for ell in 1..=(k - 3) {
        denom *= t_spec(k, ell)?.eval(n)?;
    }
    let s = s_spec(k)?;
    for i in 1..=(n - k + 3) {
        denom *= s.eval(i)?;
    }
    Probability::reciprocal(denom)
}

/// Evaluates both formulas and insists they agree.
pub fn p_auto(prob: Problem) -> Result<Probability> {
    let a = p_formula1(prob)?;
    let b = p_formula2(prob)?;
    if a != b {
        return Err(Error::InternalInconsistency(format!(
            "formulas disagree at {prob}: {a} vs {b}"
        )));
    }
    Ok(a)
}

/// `1 / (n-1)!`, the probability that no n-gon forms from `n` sticks.
pub fn p_ngon(n: usize) -> Result<Probability> {
    if n < 3 {
        return Err(Error::invalid(format!("n must satisfy n >= 3, got n = {n}")));
    }
    Probability::reciprocal(factorial(n as u64 - 1))
}

/// `1 / ((2n - 5) · 2^(n-3) · (n-3)!)`.
pub fn p_n_minus_1_gon(n: usize) -> Result<Probability> {
    if n < 4 {
        return Err(Error::invalid(format!("n must satisfy n >= 4, got n = {n}")));
    }
    let denom = BigInt::from(2 * n - 5) * (BigInt::one() << (n - 3)) * factorial(n as u64 - 3);
    Probability::reciprocal(denom)
}
