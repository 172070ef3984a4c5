//! Series identifiers, their index ranges, and exact summands.

use std::fmt;

use thiserror::Error;

use super::term::{sum_terms, HyperTerm};
use crate::arith::{ArithError, LaurentRatFunc, QFraction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("series {0} requires the parameter n")]
    MissingN(SeriesId),
    #[error("series {0} does not take the parameter n")]
    ExtraneousN(SeriesId),
    #[error("index {k} outside the range of series {id}")]
    OutOfRange { id: SeriesId, k: i64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Every series whose summand the suite needs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum SeriesId {
    /// `q^{k²} [6k+1] (q;q²)_k² (q²;q⁴)_k / (q⁴;q⁴)_k³`, `k >= 0`.
    J2Lhs,
    /// `(-1)^k q^{3k²} [6k+1] (q;q²)_k³ / (q⁴;q⁴)_k³`, `k >= 0`.
    L2Lhs,
    /// `(-1)^k [6k+1] (q;q²)_k³ / (q⁴;q⁴)_k³`, `k >= 0`: `L2Lhs` without the
    /// `q^{3k²}` weight, the left side of the identity certified by the second pair.
    SecondLhs,
    /// `q^{k²} (q;q²)_k / (q⁴;q⁴)_k`, `0 <= k <= (n-1)/2` for odd `n`.
    SunLhs,
    /// `G(n,k)` of the first pair, `1 <= k <= n`.
    A2Rhs,
    /// Reversed form of `A2Rhs`, `0 <= k <= n-1`.
    A3Rhs,
    /// `G(n,k)` of the second pair, `1 <= k <= n`.
    SecondRhs,
    /// `(-1)^k q^{(4n-k)k} (q;q²)_{2n-k-1} (q;q²)_k² / ((1-q)(q⁴;q⁴)_{n-1}² (q⁴;q⁴)_k)`, `0 <= k <= n-1`.
    Second2Rhs,
    /// `q^{k²} (q^{1-n};q²)_k (q^{n+1};q²)_k / ((q;q²)_k (q⁴;q⁴)_k)`, `0 <= k <= (n-1)/2`.
    WhippleLhs,
}

impl SeriesId {
    pub const ALL: [SeriesId; 9] = [
        SeriesId::J2Lhs,
        SeriesId::L2Lhs,
        SeriesId::SecondLhs,
        SeriesId::SunLhs,
        SeriesId::A2Rhs,
        SeriesId::A3Rhs,
        SeriesId::SecondRhs,
        SeriesId::Second2Rhs,
        SeriesId::WhippleLhs,
    ];

    pub fn takes_n(self) -> bool {
        !matches!(
            self,
            SeriesId::J2Lhs | SeriesId::L2Lhs | SeriesId::SecondLhs
        )
    }

    fn requires_odd_n(self) -> bool {
        matches!(self, SeriesId::SunLhs | SeriesId::WhippleLhs)
    }

    /// Inclusive index range; `None` as the upper end means unbounded.
    pub fn index_range(self, n: Option<i64>) -> Result<(i64, Option<i64>), QError> {
        let n = self.check_n(n)?;
        Ok(match self {
            SeriesId::J2Lhs | SeriesId::L2Lhs | SeriesId::SecondLhs => (0, None),
            SeriesId::SunLhs | SeriesId::WhippleLhs => (0, Some((n - 1) / 2)),
            SeriesId::A2Rhs | SeriesId::SecondRhs => (1, Some(n)),
            SeriesId::A3Rhs | SeriesId::Second2Rhs => (0, Some(n - 1)),
        })
    }

    fn check_n(self, n: Option<i64>) -> Result<i64, QError> {
        match (self.takes_n(), n) {
            (true, None) => Err(QError::MissingN(self)),
            (false, Some(_)) => Err(QError::ExtraneousN(self)),
            (false, None) => Ok(0),
            (true, Some(n)) => {
                if n < 1 {
                    return Err(QError::InvalidParameter(format!(
                        "n = {n} must be positive"
                    )));
                }
                if self.requires_odd_n() && n % 2 == 0 {
                    return Err(QError::InvalidParameter(format!("n = {n} must be odd")));
                }
                Ok(n)
            }
        }
    }

    /// Summand as a factored term, without range checks.
    pub(crate) fn raw_term(self, n: i64, k: i64) -> HyperTerm {
        type T = HyperTerm;
        let q4 = |c: i64| T::qpoch(4, 4, c);
        let q1 = |c: i64| T::qpoch(1, 2, c);
        let q2 = |c: i64| T::qpoch(2, 4, c);
        match self {
            SeriesId::J2Lhs => {
                T::q_power(k * k) * T::qint(6 * k + 1) * q1(k).pow(2) * q2(k) / q4(k).pow(3)
            }
            SeriesId::L2Lhs => {
                T::sign(k) * T::q_power(3 * k * k) * T::qint(6 * k + 1) * q1(k).pow(3)
                    / q4(k).pow(3)
            }
            SeriesId::SecondLhs => T::sign(k) * T::qint(6 * k + 1) * q1(k).pow(3) / q4(k).pow(3),
            SeriesId::SunLhs => T::q_power(k * k) * q1(k) / q4(k),
            SeriesId::A2Rhs => {
                T::q_power((n - k) * (n - k)) * q2(n) * q1(n - k) * q1(n + k - 1)
                    / (T::binomial(1) * q4(n - 1).pow(2) * q4(n - k) * q2(k))
            }
            SeriesId::A3Rhs => {
                T::q_power(k * k) * q2(n) * q1(k) * q1(2 * n - k - 1)
                    / (T::binomial(1) * q4(n - 1).pow(2) * q4(k) * q2(n - k))
            }
            SeriesId::SecondRhs => {
                T::sign(n + k) * q1(n + k - 1) * q1(n - k).pow(2)
                    / (T::binomial(1) * q4(n - 1).pow(2) * q4(n - k))
            }
            SeriesId::Second2Rhs => {
                T::sign(k) * T::q_power((4 * n - k) * k) * q1(2 * n - k - 1) * q1(k).pow(2)
                    / (T::binomial(1) * q4(n - 1).pow(2) * q4(k))
            }
            SeriesId::WhippleLhs => {
                T::q_power(k * k) * T::qpoch(1 - n, 2, k) * T::qpoch(n + 1, 2, k) / (q1(k) * q4(k))
            }
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SeriesId::J2Lhs => "J2_LHS",
            SeriesId::L2Lhs => "L2_LHS",
            SeriesId::SecondLhs => "SECOND_LHS",
            SeriesId::SunLhs => "SUN_LHS",
            SeriesId::A2Rhs => "A2_RHS",
            SeriesId::A3Rhs => "A3_RHS",
            SeriesId::SecondRhs => "SECOND_RHS",
            SeriesId::Second2Rhs => "SECOND2_RHS",
            SeriesId::WhippleLhs => "WHIPPLE_LHS",
        };
        f.write_str(s)
    }
}

/// Factored `k`-th summand, range-checked.
pub fn summand_term(id: SeriesId, n: Option<i64>, k: i64) -> Result<HyperTerm, QError> {
    let (lo, hi) = id.index_range(n)?;
    if k < lo || hi.is_some_and(|h| k > h) {
        return Err(QError::OutOfRange { id, k });
    }
    Ok(id.raw_term(n.unwrap_or(0), k))
}

/// Exact `k`-th summand in reduced form.
pub fn summand(id: SeriesId, n: Option<i64>, k: i64) -> Result<LaurentRatFunc, QError> {
    Ok(summand_term(id, n, k)?.to_fraction()?.reduce())
}

/// Unreduced sum of the summands from the start of the range through `upper`.
pub fn partial_sum_fraction(id: SeriesId, n: Option<i64>, upper: i64) -> Result<QFraction, QError> {
    let (lo, hi) = id.index_range(n)?;
    if upper < lo || hi.is_some_and(|h| upper > h) {
        return Err(QError::OutOfRange { id, k: upper });
    }
    let nn = n.unwrap_or(0);
    Ok(sum_terms((lo..=upper).map(|k| id.raw_term(nn, k)))?)
}

/// Exact partial sum in reduced form.
pub fn partial_sum(id: SeriesId, n: Option<i64>, upper: i64) -> Result<LaurentRatFunc, QError> {
    Ok(partial_sum_fraction(id, n, upper)?.reduce())
}
