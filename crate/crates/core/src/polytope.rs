//! Geometry of the no-k-gon region.
//!
//! With the sorted stick lengths `u_1 < ... < u_n`, no k-gon can be formed
//! exactly when `u` lies in
//!
//! ```text
//! E(n,k) = { 0 < u_1,
//!            u_{i-1} < u_i                       for 2 <= i <= k-1,
//!            u_{i-k+1} + ... + u_{i-1} < u_i     for k <= i <= n,
//!            u_n <= 1 }
//! ```
//!
//! and `p(n, k) = n! · vol(E(n,k))`. The change of variables
//! `v_i = u_i - (lower bound of u_i)` is unit lower triangular, so it keeps
//! volume, and it maps `E(n,k)` onto a simplex whose edge lengths are
//! reciprocals of generalized Fibonacci numbers.
//!
//! [`volume_oracle`] gets the same volume without any of that: it enumerates
//! the vertices of the halfspace description directly and takes a
//! determinant.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::closedform::Problem;
use crate::error::{Error, Result};
use crate::exactmath::{dot, factorial, int, Rational, RationalMatrix};
use crate::sequences::{t_spec, SequenceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    /// `normal · x < offset`
    Strict,
    /// `normal · x <= offset`
    NonStrict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub normal: Vec<Rational>,
    pub offset: Rational,
    pub sense: Sense,
}

impl Constraint {
    fn value(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x)
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs = self.value(x);
        match self.sense {
            Sense::Strict => lhs < self.offset,
            Sense::NonStrict => lhs <= self.offset,
        }
    }

    pub fn holds_closed(&self, x: &[Rational]) -> bool {
        self.value(x) <= self.offset
    }

    pub fn is_active(&self, x: &[Rational]) -> bool {
        self.value(x) == self.offset
    }
}

/// A list of constraints `normal · x (<|<=) offset` in `dim` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfspaceSystem {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
}

impl HalfspaceSystem {
    fn check_dim(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::invalid(format!(
                "point has dimension {}, expected {}",
                x.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Membership with the exact strict/non-strict senses.
    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        self.check_dim(x)?;
        Ok(self.constraints.iter().all(|c| c.holds(x)))
    }

    /// Membership in the closure.
    pub fn contains_closed(&self, x: &[Rational]) -> Result<bool> {
        self.check_dim(x)?;
        Ok(self.constraints.iter().all(|c| c.holds_closed(x)))
    }

    /// Indices of the constraints that hold with equality at `x`.
    pub fn active(&self, x: &[Rational]) -> Result<Vec<usize>> {
        self.check_dim(x)?;
        Ok(self
            .constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_active(x))
            .map(|(i, _)| i)
            .collect())
    }
}

/// The volume-preserving map `u -> v` and its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformPair {
    pub forward: RationalMatrix,
    pub inverse: RationalMatrix,
}

/// Vertices of the image simplex in `v`-coordinates; the first is the origin
/// and vertex `j` is `e_j` scaled by a reciprocal sequence value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexVertices {
    pub vertices: Vec<Vec<Rational>>,
}

impl SimplexVertices {
    /// Edge length along `e_j`, for `j` in `1..=n`.
    pub fn edge(&self, j: usize) -> &Rational {
        &self.vertices[j][j - 1]
    }
}

/// Indicator row with `1` at each of the (1-based) positions in `ones` and
/// `-1` at `minus`.
fn signed_row(dim: usize, ones: impl IntoIterator<Item = usize>, minus: Option<usize>) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); dim];
    for j in ones {
        row[j - 1] = Rational::one();
    }
    if let Some(i) = minus {
        row[i - 1] = -Rational::one();
    }
    row
}

/// Halfspace description of `E(n,k)`, `n + 1` constraints in a fixed order:
/// `-u_1 < 0`, then `u_{i-1} - u_i < 0` for `2 <= i <= k-1`, then
/// `sum_{j=i-k+1}^{i-1} u_j - u_i < 0` for `k <= i <= n`, then `u_n <= 1`.
pub fn build_system(prob: Problem) -> HalfspaceSystem {
    let (n, k) = (prob.n(), prob.k());
    let mut constraints = Vec::with_capacity(n + 1);
    let strict = |normal| Constraint {
        normal,
        offset: Rational::zero(),
        sense: Sense::Strict,
    };
    constraints.push(strict(signed_row(n, [], Some(1))));
    for i in 2..k {
        constraints.push(strict(signed_row(n, [i - 1], Some(i))));
    }
    for i in k..=n {
        constraints.push(strict(signed_row(n, (i + 1 - k)..i, Some(i))));
    }
    constraints.push(Constraint {
        normal: signed_row(n, [n], None),
        offset: Rational::one(),
        sense: Sense::NonStrict,
    });
    HalfspaceSystem { dim: n, constraints }
}

/// `v = forward · u` with `v_1 = u_1`, `v_i = u_i - u_{i-1}` for
/// `2 <= i <= k-1` and `v_i = u_i - (u_{i-k+1} + ... + u_{i-1})` otherwise.
fn forward_matrix(prob: Problem) -> RationalMatrix {
    let (n, k) = (prob.n(), prob.k());
    let mut m = RationalMatrix::identity(n);
    for i in 2..=n {
        let lo = if i < k { i - 1 } else { i + 1 - k };
        for j in lo..i {
            m[(i - 1, j - 1)] = -Rational::one();
        }
    }
    m
}

/// The sequences `T(k,1), ..., T(k,k-1)`, built once per problem.
struct TFamily {
    specs: Vec<SequenceSpec>,
}

impl TFamily {
    fn new(k: usize) -> Result<Self> {
        Ok(Self {
            specs: (1..k).map(|ell| t_spec(k, ell)).collect::<Result<_>>()?,
        })
    }

    fn eval(&self, ell: usize, m: usize) -> Result<BigInt> {
        self.specs[ell - 1].eval(m)
    }

    fn last(&self, m: usize) -> Result<BigInt> {
        self.specs[self.specs.len() - 1].eval(m)
    }
}

fn lemma_row(prob: Problem, family: &TFamily, m: usize) -> Result<Vec<Rational>> {
    let (n, k) = (prob.n(), prob.k());
    if m < 1 || m > n {
        return Err(Error::invalid(format!("row index must lie in 1..={n}, got {m}")));
    }
    let mut row = vec![Rational::zero(); n];
    for ell in 1..=m.min(k - 1) {
        row[ell - 1] = int(family.eval(ell, m)?);
    }
    if m >= k {
        for i in 1..=(m + 1 - k) {
            row[k - 2 + i] = int(family.last(m - i)?);
        }
    }
    Ok(row)
}

/// Coefficients `(a_{m,1}, ..., a_{m,n})` with `u_m = sum_j a_{m,j} v_j`,
/// read off the sequences `T(k, ·)` without inverting anything.
pub fn lemma_coeffs(prob: Problem, m: usize) -> Result<Vec<Rational>> {
    lemma_row(prob, &TFamily::new(prob.k())?, m)
}

/// Forward map plus its inverse. The inverse is computed both by Gauss-Jordan
/// and from [`lemma_coeffs`]; a disagreement is an error.
pub fn build_transform(prob: Problem) -> Result<TransformPair> {
    let forward = forward_matrix(prob);
    let inverted = forward.inverse()?;
    let family = TFamily::new(prob.k())?;
    let rows = (1..=prob.n())
        .map(|m| lemma_row(prob, &family, m))
        .collect::<Result<Vec<_>>>()?;
    let from_lemma = RationalMatrix::from_rows(rows)?;
    if inverted != from_lemma {
        let m = (0..prob.n())
            .find(|&i| inverted.row(i) != from_lemma.row(i))
            .unwrap_or(0);
        return Err(Error::InternalInconsistency(format!(
            "inverse row {} differs at {prob}: inversion {:?} vs sequences {:?}",
            m + 1,
            inverted.row(m).iter().map(ToString::to_string).collect::<Vec<_>>(),
            from_lemma.row(m).iter().map(ToString::to_string).collect::<Vec<_>>(),
        )));
    }
    Ok(TransformPair {
        forward,
        inverse: inverted,
    })
}

/// Origin plus `e_l / T(k,l)(n)` for `l <= k-1` and
/// `e_{k-1+i} / T(k,k-1)(n-i)` for `1 <= i <= n-k+1`.
pub fn simplex_vertices(prob: Problem) -> Result<SimplexVertices> {
    let (n, k) = (prob.n(), prob.k());
    let family = TFamily::new(k)?;
    let mut scales = Vec::with_capacity(n);
    for ell in 1..k {
        scales.push(family.eval(ell, n)?);
    }
    for i in 1..=(n + 1 - k) {
        scales.push(family.last(n - i)?);
    }
    let mut vertices = vec![vec![Rational::zero(); n]];
    for (j, s) in scales.into_iter().enumerate() {
        let mut vertex = vec![Rational::zero(); n];
        vertex[j] = Rational::new(BigInt::one(), s);
        vertices.push(vertex);
    }
    Ok(SimplexVertices { vertices })
}

/// `(1/n!) · prod(edge lengths)` of the image simplex.
pub fn volume_closed(prob: Problem) -> Result<Rational> {
    let simplex = simplex_vertices(prob)?;
    let edges: Rational = (1..=prob.n()).map(|j| simplex.edge(j).clone()).product();
    Ok(edges / int(factorial(prob.n() as u64)))
}

/// Vertices of the closure of `E(n,k)`: vertex `j` is the solution of the
/// `n` constraints other than constraint `j`, all taken with equality.
pub fn enumerate_vertices(system: &HalfspaceSystem) -> Result<Vec<Vec<Rational>>> {
    let count = system.constraints.len();
    if count != system.dim + 1 {
        return Err(Error::DegeneratePolytope(format!(
            "{} constraints in dimension {} is not a simplex description",
            count, system.dim
        )));
    }
    (0..count)
        .into_par_iter()
        .map(|dropped| {
            let kept: Vec<&Constraint> = system
                .constraints
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != dropped)
                .map(|(_, c)| c)
                .collect();
            let a = RationalMatrix::from_rows(kept.iter().map(|c| c.normal.clone()).collect())?;
            let b: Vec<Rational> = kept.iter().map(|c| c.offset.clone()).collect();
            let x = a.solve(&b).map_err(|e| match e {
                Error::Singular => Error::DegeneratePolytope(format!(
                    "constraints without #{dropped} are linearly dependent"
                )),
                other => other,
            })?;
            if !system.constraints[dropped].holds_closed(&x) {
                return Err(Error::DegeneratePolytope(format!(
                    "candidate vertex without #{dropped} violates it"
                )));
            }
            Ok(x)
        })
        .collect()
}

/// `vol(E(n,k))` by vertex enumeration: `|det(V_j - V_0)| / n!` where `V_0`
/// is the vertex opposite the cap `u_n <= 1`. Uses neither the change of
/// variables nor any sequence.
pub fn volume_oracle(prob: Problem) -> Result<Rational> {
    let system = build_system(prob);
    let vertices = enumerate_vertices(&system)?;
    let n = system.dim;
    let base = &vertices[n];
    let mut columns = RationalMatrix::zeros(n, n);
    for (c, vertex) in vertices[..n].iter().enumerate() {
        for r in 0..n {
            columns[(r, c)] = &vertex[r] - &base[r];
        }
    }
    let det = columns.det()?;
    if det.is_zero() {
        return Err(Error::DegeneratePolytope(format!("flat vertex set at {prob}")));
    }
    Ok(det.abs() / int(factorial(n as u64)))
}

/// Whether `u` lies in `E(n,k)` (strict lower bounds, `u_n <= 1`).
pub fn membership(prob: Problem, u: &[Rational]) -> Result<bool> {
    build_system(prob).contains(u)
}
