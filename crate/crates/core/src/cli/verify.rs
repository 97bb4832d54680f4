//! The `verify` suites. Each suite stops at its first mismatch.

use std::fmt;

use num_traits::One;

use crate::closedform::{p_auto, p_formula1, p_formula2, p_n_minus_1_gon, p_ngon, Problem};
use crate::error::Result;
use crate::exactmath::{factorial, int, rat, Rational};
use crate::polytope::{build_transform, volume_oracle};
use crate::sequences::check_k4_identity;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyBounds {
    pub formula_n_max: usize,
    pub special_n_max: usize,
    pub k4_identity_n_max: usize,
    pub lemma_n_max: usize,
    pub oracle_n_max: usize,
}

impl Default for VerifyBounds {
    fn default() -> Self {
        Self {
            formula_n_max: 40,
            special_n_max: 20,
            k4_identity_n_max: 50,
            lemma_n_max: 12,
            oracle_n_max: 9,
        }
    }
}

impl VerifyBounds {
    pub fn with_oracle_bound(oracle_n_max: usize) -> Self {
        Self {
            oracle_n_max,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: usize,
    pub scope: String,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PASS {}: {} problems ({})", self.name, self.checked, self.scope)
    }
}

/// First disagreement found by a suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub suite: &'static str,
    pub at: String,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FAIL {} at {}: {} != {}",
            self.suite, self.at, self.left, self.right
        )
    }
}

type SuiteOutcome = std::result::Result<usize, Mismatch>;

fn compare(
    suite: &'static str,
    at: impl fmt::Display,
    left: Result<Rational>,
    right: Result<Rational>,
) -> std::result::Result<(), Mismatch> {
    let show = |r: &Result<Rational>| match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("<{e}>"),
    };
    match (&left, &right) {
        (Ok(a), Ok(b)) if a == b => Ok(()),
        _ => Err(Mismatch {
            suite,
            at: at.to_string(),
            left: show(&left),
            right: show(&right),
        }),
    }
}

fn formula_equivalence(bounds: &VerifyBounds) -> SuiteOutcome {
    let problems = Problem::all_up_to(bounds.formula_n_max);
    for &p in &problems {
        compare(
            "formula-equivalence",
            p,
            p_formula1(p).map(|v| v.into_rational()),
            p_formula2(p).map(|v| v.into_rational()),
        )?;
    }
    Ok(problems.len())
}

fn special_cases(bounds: &VerifyBounds) -> SuiteOutcome {
    const SUITE: &str = "special-cases";
    let auto = |n, k| Ok(p_auto(Problem::new(n, k)?)?.into_rational());
    let mut checked = 0;
    for (n, k, d) in [(3, 3, 2), (4, 3, 6), (5, 3, 30)] {
        compare(SUITE, format!("(n={n}, k={k})"), auto(n, k), rat(1, d))?;
        checked += 1;
    }
    for n in 3..=bounds.special_n_max {
        let expected = Rational::new(One::one(), factorial(n as u64 - 1));
        compare(SUITE, format!("(n={n}, k={n})"), auto(n, n), Ok(expected.clone()))?;
        compare(
            SUITE,
            format!("p_ngon({n})"),
            p_ngon(n).map(|v| v.into_rational()),
            Ok(expected),
        )?;
        checked += 1;
    }
    for n in 4..=bounds.special_n_max {
        compare(
            SUITE,
            format!("(n={n}, k={})", n - 1),
            auto(n, n - 1),
            p_n_minus_1_gon(n).map(|v| v.into_rational()),
        )?;
        checked += 1;
    }
    match check_k4_identity(bounds.k4_identity_n_max) {
        Ok(report) => {
            if let Some((n, lhs, rhs)) = report.counterexample {
                return Err(Mismatch {
                    suite: SUITE,
                    at: format!("T(4,1)({n}) vs S(4)({n}) - S(4)({})", n - 2),
                    left: lhs.to_string(),
                    right: rhs.to_string(),
                });
            }
            checked += report.checked;
        }
        Err(e) => {
            return Err(Mismatch {
                suite: SUITE,
                at: "k=4 identity".into(),
                left: format!("<{e}>"),
                right: String::new(),
            })
        }
    }
    Ok(checked)
}

fn lemma_inverse(bounds: &VerifyBounds) -> SuiteOutcome {
    const SUITE: &str = "lemma-inverse";
    let problems = Problem::all_up_to(bounds.lemma_n_max);
    for &p in &problems {
        let transform = build_transform(p);
        if let Err(e) = &transform {
            return Err(Mismatch {
                suite: SUITE,
                at: p.to_string(),
                left: format!("<{e}>"),
                right: "inverse rows from sequences".into(),
            });
        }
        let det = transform.and_then(|t| t.forward.det());
        compare(SUITE, format!("det(forward) {p}"), det, Ok(int(1)))?;
    }
    Ok(problems.len())
}

fn oracle_volume(bounds: &VerifyBounds) -> SuiteOutcome {
    let problems = Problem::all_up_to(bounds.oracle_n_max);
    for &p in &problems {
        let scaled = volume_oracle(p).map(|v| v * int(factorial(p.n() as u64)));
        compare(
            "oracle-volume",
            p,
            scaled,
            p_auto(p).map(|v| v.into_rational()),
        )?;
    }
    Ok(problems.len())
}

/// Runs every suite in order, stopping at the first failing one.
pub fn run_suites(bounds: &VerifyBounds) -> (Vec<SuiteReport>, Option<Mismatch>) {
    type Suite = fn(&VerifyBounds) -> SuiteOutcome;
    let suites: [(&'static str, String, Suite); 4] = [
        (
            "formula-equivalence",
            format!("3 <= k <= n <= {}", bounds.formula_n_max),
            formula_equivalence,
        ),
        (
            "special-cases",
            format!(
                "known values, k = n and k = n-1 to n = {}, k=4 identity to n = {}",
                bounds.special_n_max, bounds.k4_identity_n_max
            ),
            special_cases,
        ),
        (
            "lemma-inverse",
            format!("3 <= k <= n <= {}", bounds.lemma_n_max),
            lemma_inverse,
        ),
        (
            "oracle-volume",
            format!("3 <= k <= n <= {}", bounds.oracle_n_max),
            oracle_volume,
        ),
    ];
    let mut reports = Vec::new();
    for (name, scope, suite) in suites {
        match suite(bounds) {
            Ok(checked) => reports.push(SuiteReport {
                name,
                checked,
                scope,
            }),
            Err(m) => return (reports, Some(m)),
        }
    }
    (reports, None)
}
