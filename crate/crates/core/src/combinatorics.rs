//! Exact integer combinatorics of the Johnson scheme.
//!
//! Binomial coefficients use the zero-extension `C(n, k) = 0` for `k < 0` or
//! `k > n`, so every alternating sum below can be written without case splits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactRational = BigRational;

/// `C(n, k)` with the zero-extension for out-of-range `k`.
pub fn binom(n: i64, k: i64) -> Result<ExactInt> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!(
            "binomial with negative upper index n={n}"
        )));
    }
    Ok(binom_ext(n, k))
}

/// Binomial used inside formulas whose arguments may drift negative.
/// Any negative argument yields zero.
pub(crate) fn binom_ext(n: i64, k: i64) -> ExactInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}

/// `C(n, k)` for small arguments used in index arithmetic.
pub(crate) fn binom_u64(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// Eigenvalue `λ_i(n, w) = (w − i)(n − w − i) − i` of the Johnson graph `J(n, w)`.
pub fn eigenvalue(i: i64, n: i64, w: i64) -> Result<ExactInt> {
    if i < 0 || w < i || 2 * w > n {
        return Err(Error::InvalidArgument(format!(
            "eigenvalue index out of range: need 0 <= i <= w <= n/2, got i={i}, w={w}, n={n}"
        )));
    }
    Ok(eigenvalue_ext(i, n, w))
}

pub(crate) fn eigenvalue_ext(i: i64, n: i64, w: i64) -> ExactInt {
    BigInt::from(w - i) * BigInt::from(n - w - i) - BigInt::from(i)
}

/// Multiplicity `C(n, i) − C(n, i − 1)` of the `i`-th eigenvalue.
pub fn multiplicity(i: i64, n: i64) -> Result<ExactInt> {
    if n < 0 || i < 0 || i > n {
        return Err(Error::InvalidArgument(format!(
            "multiplicity index out of range: need 0 <= i <= n, got i={i}, n={n}"
        )));
    }
    Ok(binom_ext(n, i) - binom_ext(n, i - 1))
}

/// Eberlein polynomial `E_k(i, w, n) = Σ_j (−1)^j C(i, j) C(w − i, k − j) C(n − w − i, k − j)`.
///
/// `E_k(i, w, n)` times `f(x)` is the sum of a `λ_i`-eigenfunction `f` over the
/// distance-`k` sphere around `x`.
pub fn eberlein(k: i64, i: i64, w: i64, n: i64) -> Result<ExactInt> {
    if k < 0 || k > w || i < 0 || i > w || 2 * w > n {
        return Err(Error::InvalidArgument(format!(
            "eberlein arguments out of range: need 0 <= k,i <= w <= n/2, got k={k}, i={i}, w={w}, n={n}"
        )));
    }
    Ok(eberlein_ext(k, i, w, n))
}

/// Unchecked Eberlein sum. Valid for any `J(n, w)` with `w` on either side of
/// `n / 2`; the defining sum is symmetric under `w ↔ n − w`.
pub(crate) fn eberlein_ext(k: i64, i: i64, w: i64, n: i64) -> ExactInt {
    let mut acc = BigInt::zero();
    for j in 0..=k.max(0) {
        let term = binom_ext(i, j) * binom_ext(w - i, k - j) * binom_ext(n - w - i, k - j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub(crate) fn factorial(m: u64) -> ExactInt {
    (1..=m).fold(BigInt::one(), |acc, t| acc * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactInt {
        BigInt::from(v)
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(6, 3).unwrap(), int(20));
        assert_eq!(binom(5, -1).unwrap(), int(0));
        assert_eq!(binom(0, 0).unwrap(), int(1));
        assert_eq!(binom(4, 7).unwrap(), int(0));
        assert!(binom(-1, 0).is_err());
    }

    #[test]
    fn binom_matches_pascal() {
        for n in 1..30 {
            for k in 0..=n {
                assert_eq!(
                    binom_ext(n, k),
                    binom_ext(n - 1, k) + binom_ext(n - 1, k - 1)
                );
            }
        }
        assert_eq!(binom_u64(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eigenvalue(0, 6, 3).unwrap(), int(9));
        assert_eq!(eigenvalue(3, 8, 3).unwrap(), int(-3));
        assert_eq!(eigenvalue(2, 7, 3).unwrap(), int(0));
        assert!(eigenvalue(4, 8, 3).is_err());
        assert!(eigenvalue(0, 5, 3).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity(0, 9).unwrap(), int(1));
        assert_eq!(multiplicity(1, 9).unwrap(), int(8));
        assert_eq!(multiplicity(3, 12).unwrap(), int(154));
        assert!(multiplicity(10, 9).is_err());
    }

    #[test]
    fn eberlein_examples() {
        for n in 0..12 {
            for w in 0..=n / 2 {
                for i in 0..=w {
                    assert_eq!(eberlein(0, i, w, n).unwrap(), int(1));
                }
            }
        }
        assert_eq!(eberlein(1, 1, 3, 9).unwrap(), int(9));
        assert_eq!(eberlein(2, 1, 3, 9).unwrap(), int(0));
        assert!(eberlein(4, 1, 3, 9).is_err());
    }

    #[test]
    fn eberlein_is_symmetric_under_complement() {
        for n in 0..12 {
            for w in 0..=n {
                for i in 0..=w.min(n - w) {
                    for k in 0..=n {
                        assert_eq!(eberlein_ext(k, i, w, n), eberlein_ext(k, i, n - w, n));
                    }
                }
            }
        }
    }

    #[test]
    fn first_eberlein_is_eigenvalue_and_rows_sum_correctly() {
        for n in 0..=14 {
            for w in 0..=n / 2 {
                let total: ExactInt = (0..=w).map(|i| multiplicity(i, n).unwrap()).sum();
                assert_eq!(total, binom_ext(n, w));
                for i in 0..=w {
                    if w >= 1 {
                        assert_eq!(eberlein(1, i, w, n).unwrap(), eigenvalue(i, n, w).unwrap());
                    }
                    let row: ExactInt = (0..=w).map(|k| eberlein(k, i, w, n).unwrap()).sum();
                    if i == 0 {
                        assert_eq!(row, binom_ext(n, w));
                    } else {
                        assert_eq!(row, int(0));
                    }
                }
            }
        }
    }
}
