//! Generalized Fibonacci sequences: each term past the initial segment is
//! the sum of the preceding `order` terms.
//!
//! Indices are 1-based throughout. Two families are built here for a polygon
//! size `k` (both of order `k - 1`):
//!
//! - [`t_spec`]`(k, ell)`: `ell - 1` zeros followed by ones up to index `k - 1`.
//! - [`s_spec`]`(k)`: `1, 1, 2, 4, ..., 2^(k-3)`.

use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A linear recurrence of the form `a(m) = a(m-1) + ... + a(m-order)`
/// together with its values at indices `1..=order`.
///
/// Evaluated terms are memoized in an append-only cache shared by all
/// readers of the instance.
pub struct SequenceSpec {
    order: usize,
    initial: Vec<BigInt>,
    cache: RwLock<Vec<BigInt>>,
}

impl SequenceSpec {
    pub fn new(order: usize, initial: Vec<BigInt>) -> Result<Self> {
        if order < 2 {
            return Err(Error::invalid(format!("order must be at least 2, got {order}")));
        }
        if initial.len() != order {
            return Err(Error::invalid(format!(
                "order {order} needs {order} initial terms, got {}",
                initial.len()
            )));
        }
        Ok(Self {
            order,
            cache: RwLock::new(initial.clone()),
            initial,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Values at indices `1..=order`.
    pub fn initial(&self) -> &[BigInt] {
        &self.initial
    }

    /// Term `n` (1-based).
    pub fn eval(&self, n: usize) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::invalid("sequence indices start at 1"));
        }
        {
            let cache = self.cache.read().unwrap_or_else(|e| e.into_inner());
            if let Some(v) = cache.get(n - 1) {
                return Ok(v.clone());
            }
        }
        let mut cache = self.cache.write().unwrap_or_else(|e| e.into_inner());
        // Sliding window sum: next = 2·last − term leaving the window.
        while cache.len() < n {
            let len = cache.len();
            let next: BigInt = if len == self.order {
                cache.iter().sum()
            } else {
                let last = &cache[len - 1];
                last + last - &cache[len - 1 - self.order]
            };
            cache.push(next);
        }
        Ok(cache[n - 1].clone())
    }

    /// The first `count` terms.
    pub fn terms(&self, count: usize) -> Vec<BigInt> {
        if count == 0 {
            return Vec::new();
        }
        // Populates the cache up to `count`.
        let _ = self.eval(count);
        let cache = self.cache.read().unwrap_or_else(|e| e.into_inner());
        cache[..count].to_vec()
    }
}

impl Clone for SequenceSpec {
    fn clone(&self) -> Self {
        let cache = self.cache.read().unwrap_or_else(|e| e.into_inner()).clone();
        Self {
            order: self.order,
            initial: self.initial.clone(),
            cache: RwLock::new(cache),
        }
    }
}

impl PartialEq for SequenceSpec {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.initial == other.initial
    }
}

impl Eq for SequenceSpec {}

impl fmt::Debug for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SequenceSpec")
            .field("order", &self.order)
            .field("initial", &self.initial)
            .finish()
    }
}

/// The sequence `T(k, ell)`: order `k - 1`, zero at indices `1..ell`, one at
/// indices `ell..=k-1`.
pub fn t_spec(k: usize, ell: usize) -> Result<SequenceSpec> {
    if k < 3 {
        return Err(Error::invalid(format!("k must be at least 3, got {k}")));
    }
    if ell < 1 || ell > k - 1 {
        return Err(Error::invalid(format!(
            "ell must lie in 1..={}, got {ell}",
            k - 1
        )));
    }
    let initial = (1..k)
        .map(|i| if i < ell { BigInt::zero() } else { BigInt::one() })
        .collect();
    SequenceSpec::new(k - 1, initial)
}

/// The sequence `S(k)`: order `k - 1`, starting `1, 1, 2, 4, ..., 2^(k-3)`.
pub fn s_spec(k: usize) -> Result<SequenceSpec> {
    if k < 3 {
        return Err(Error::invalid(format!("k must be at least 3, got {k}")));
    }
    let initial = std::iter::once(BigInt::one())
        .chain((2..k).map(|i| BigInt::one() << (i - 2)))
        .collect();
    SequenceSpec::new(k - 1, initial)
}

/// Outcome of [`check_k4_identity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub n_max: usize,
    pub checked: usize,
    /// First `(n, T(4,1)(n), S(4)(n) - S(4)(n-2))` that disagrees.
    pub counterexample: Option<(usize, BigInt, BigInt)>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `T(4,1)(n) = S(4)(n) - S(4)(n-2)` for `3 <= n <= n_max`.
pub fn check_k4_identity(n_max: usize) -> Result<IdentityReport> {
    if n_max < 3 {
        return Err(Error::invalid(format!("n_max must be at least 3, got {n_max}")));
    }
    let t = t_spec(4, 1)?;
    let s = s_spec(4)?;
    let mut checked = 0;
    for n in 3..=n_max {
        let lhs = t.eval(n)?;
        let rhs = s.eval(n)? - s.eval(n - 2)?;
        checked += 1;
        if lhs != rhs {
            return Ok(IdentityReport {
                n_max,
                checked,
                counterexample: Some((n, lhs, rhs)),
            });
        }
    }
    Ok(IdentityReport {
        n_max,
        checked,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn eval_examples() {
        let fib = SequenceSpec::new(2, big(&[1, 1])).unwrap();
        assert_eq!(fib.eval(5).unwrap(), BigInt::from(5));
        assert_eq!(t_spec(4, 3).unwrap().eval(5).unwrap(), BigInt::from(2));
        assert_eq!(s_spec(4).unwrap().eval(6).unwrap(), BigInt::from(13));
        assert_eq!(t_spec(5, 2).unwrap().eval(6).unwrap(), BigInt::from(6));
    }

    #[test]
    fn eval_rejects_index_zero() {
        let s = s_spec(3).unwrap();
        assert!(matches!(s.eval(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn eval_out_of_order_queries_agree() {
        let a = s_spec(5).unwrap();
        let b = s_spec(5).unwrap();
        let high = a.eval(60).unwrap();
        for n in 1..=60 {
            assert_eq!(a.eval(n).unwrap(), b.eval(n).unwrap());
        }
        assert_eq!(b.eval(60).unwrap(), high);
    }

    #[test]
    fn t_spec_initial_terms() {
        let s = t_spec(3, 2).unwrap();
        assert_eq!((s.order(), s.initial()), (2, &big(&[0, 1])[..]));
        let s = t_spec(4, 1).unwrap();
        assert_eq!((s.order(), s.initial()), (3, &big(&[1, 1, 1])[..]));
        let s = t_spec(5, 3).unwrap();
        assert_eq!((s.order(), s.initial()), (4, &big(&[0, 0, 1, 1])[..]));
    }

    #[test]
    fn t_spec_rejects_bad_ell() {
        assert!(t_spec(4, 0).is_err());
        assert!(t_spec(4, 4).is_err());
        assert!(t_spec(2, 1).is_err());
    }

    #[test]
    fn s_spec_initial_terms() {
        assert_eq!(s_spec(3).unwrap().initial(), &big(&[1, 1])[..]);
        assert_eq!(s_spec(4).unwrap().initial(), &big(&[1, 1, 2])[..]);
        assert_eq!(s_spec(6).unwrap().initial(), &big(&[1, 1, 2, 4, 8])[..]);
        assert!(s_spec(2).is_err());
    }

    #[test]
    fn new_validates_shape() {
        assert!(SequenceSpec::new(1, big(&[1])).is_err());
        assert!(SequenceSpec::new(3, big(&[1, 1])).is_err());
    }

    #[test]
    fn terms_prefix() {
        assert_eq!(s_spec(4).unwrap().terms(6), big(&[1, 1, 2, 4, 7, 13]));
        assert_eq!(t_spec(3, 1).unwrap().terms(5), big(&[1, 1, 2, 3, 5]));
        assert_eq!(t_spec(4, 3).unwrap().terms(5), big(&[0, 0, 1, 1, 2]));
        assert!(s_spec(3).unwrap().terms(0).is_empty());
    }

    #[test]
    fn k4_identity_small() {
        let t = t_spec(4, 1).unwrap();
        let s = s_spec(4).unwrap();
        assert_eq!(t.eval(3).unwrap(), BigInt::from(1));
        assert_eq!(s.eval(3).unwrap() - s.eval(1).unwrap(), BigInt::from(1));
        assert_eq!(t.eval(4).unwrap(), BigInt::from(3));
        assert_eq!(s.eval(4).unwrap() - s.eval(2).unwrap(), BigInt::from(3));
        assert_eq!(t.eval(5).unwrap(), BigInt::from(5));
        assert_eq!(s.eval(5).unwrap() - s.eval(3).unwrap(), BigInt::from(5));
        let report = check_k4_identity(5).unwrap();
        assert!(report.passed());
        assert_eq!(report.checked, 3);
        assert!(check_k4_identity(2).is_err());
    }

    #[test]
    fn shared_across_threads() {
        let s = std::sync::Arc::new(s_spec(7).unwrap());
        let handles: Vec<_> = (0..4)
            .map(|i| {
                let s = s.clone();
                std::thread::spawn(move || s.eval(40 + 10 * i).unwrap())
            })
            .collect();
        let values: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        let fresh = s_spec(7).unwrap();
        for (i, v) in values.into_iter().enumerate() {
            assert_eq!(v, fresh.eval(40 + 10 * i).unwrap());
        }
    }
}
