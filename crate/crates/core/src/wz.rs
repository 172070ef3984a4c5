//! The two q-WZ pairs, their telescoping certificate, and the finite
//! identities that follow from them.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{LaurentRatFunc, QFraction, Rational};
use crate::qobjects::{sum_terms, HyperTerm, QError, SeriesId};
use crate::CheckResult;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum WzPairId {
    /// Weights `q^{(n-k)²}`; the sum over `n` of `F(n,0)` is the `J2Lhs` series.
    PairJ2,
    /// Weights `(-1)^{n+k}`; the sum over `n` of `F(n,0)` is the `SecondLhs` series.
    PairL2,
}

impl fmt::Display for WzPairId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WzPairId::PairJ2 => "PAIR_J2",
            WzPairId::PairL2 => "PAIR_L2",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Which {
    F,
    G,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum IdentityId {
    IdA2,
    IdA3,
    IdSecond,
    IdSecond2,
    IdWhipple,
}

impl IdentityId {
    pub const ALL: [IdentityId; 5] = [
        IdentityId::IdA2,
        IdentityId::IdA3,
        IdentityId::IdSecond,
        IdentityId::IdSecond2,
        IdentityId::IdWhipple,
    ];
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityId::IdA2 => "ID_A2",
            IdentityId::IdA3 => "ID_A3",
            IdentityId::IdSecond => "ID_SECOND",
            IdentityId::IdSecond2 => "ID_SECOND2",
            IdentityId::IdWhipple => "ID_WHIPPLE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WzError {
    #[error("n = {0} must be positive")]
    NonPositiveN(i64),
    #[error("n = {0} must be odd for the Whipple specialization")]
    EvenN(i64),
    #[error(transparent)]
    Series(#[from] QError),
}

/// `F(n,k)` or `G(n,k)` in factored form. Out-of-support `k` gives the zero term.
pub fn wz_hyper_term(pair: WzPairId, which: Which, n: i64, k: i64) -> HyperTerm {
    type T = HyperTerm;
    let q4 = |c: i64| T::qpoch(4, 4, c);
    let q1 = |c: i64| T::qpoch(1, 2, c);
    let q2 = |c: i64| T::qpoch(2, 4, c);
    match (pair, which) {
        (WzPairId::PairJ2, Which::F) => {
            T::q_power((n - k) * (n - k))
                * T::qint(6 * n - 2 * k + 1)
                * q2(n)
                * q1(n - k)
                * q1(n + k)
                / (q4(n).pow(2) * q4(n - k) * q2(k))
        }
        (WzPairId::PairJ2, Which::G) => {
            T::q_power((n - k) * (n - k)) * q2(n) * q1(n - k) * q1(n + k - 1)
                / (T::binomial(1) * q4(n - 1).pow(2) * q4(n - k) * q2(k))
        }
        (WzPairId::PairL2, Which::F) => {
            T::sign(n + k) * T::qint(6 * n - 2 * k + 1) * q1(n + k) * q1(n - k).pow(2)
                / (q4(n).pow(2) * q4(n - k))
        }
        (WzPairId::PairL2, Which::G) => {
            T::sign(n + k) * q1(n + k - 1) * q1(n - k).pow(2)
                / (T::binomial(1) * q4(n - 1).pow(2) * q4(n - k))
        }
    }
}

/// Exact reduced value of `F(n,k)` or `G(n,k)`.
pub fn wz_term(pair: WzPairId, which: Which, n: u64, k: i64) -> LaurentRatFunc {
    wz_hyper_term(pair, which, n as i64, k)
        .to_fraction()
        .expect("WZ terms have no poles")
        .reduce()
}

fn verdict(label: String, diff: QFraction) -> CheckResult {
    if diff.is_zero() {
        CheckResult::pass(label)
    } else {
        CheckResult::fail(label, Some(diff.reduce()))
    }
}

/// Checks `F(n,k-1) - F(n,k) = G(n+1,k) - G(n,k)` exactly.
pub fn check_telescoping(pair: WzPairId, n: u64, k: u64) -> CheckResult {
    let (n, k) = (n as i64, k as i64);
    let t = |w, a, b| wz_hyper_term(pair, w, a, b);
    let terms = [
        t(Which::F, n, k - 1),
        -t(Which::F, n, k),
        -t(Which::G, n + 1, k),
        t(Which::G, n, k),
    ];
    let diff = sum_terms(terms).expect("WZ terms have no poles");
    verdict(format!("{pair} n={n} k={k}"), diff)
}

/// Telescoping checks on `0 <= n <= n_max`, `1 <= k <= n + 2`, in grid order.
pub fn check_telescoping_grid(pair: WzPairId, n_max: u64) -> Vec<CheckResult> {
    let cells: Vec<(u64, u64)> = (0..=n_max)
        .flat_map(|n| (1..=n + 2).map(move |k| (n, k)))
        .collect();
    cells
        .into_par_iter()
        .map(|(n, k)| check_telescoping(pair, n, k))
        .collect()
}

/// The two sides of an identity instance, unreduced.
pub fn identity_sides(id: IdentityId, n: i64) -> Result<(QFraction, QFraction), WzError> {
    if n < 1 {
        return Err(WzError::NonPositiveN(n));
    }
    let rhs_sum = |s: SeriesId| -> Result<QFraction, WzError> {
        Ok(crate::qobjects::partial_sum_fraction(
            s,
            Some(n),
            s.index_range(Some(n))?.1.unwrap(),
        )?)
    };
    let lhs_sum = |s: SeriesId| -> Result<QFraction, WzError> {
        Ok(crate::qobjects::partial_sum_fraction(s, None, n - 1)?)
    };
    Ok(match id {
        IdentityId::IdA2 => (lhs_sum(SeriesId::J2Lhs)?, rhs_sum(SeriesId::A2Rhs)?),
        IdentityId::IdA3 => (lhs_sum(SeriesId::J2Lhs)?, rhs_sum(SeriesId::A3Rhs)?),
        IdentityId::IdSecond => (lhs_sum(SeriesId::SecondLhs)?, rhs_sum(SeriesId::SecondRhs)?),
        IdentityId::IdSecond2 => (lhs_sum(SeriesId::L2Lhs)?, rhs_sum(SeriesId::Second2Rhs)?),
        IdentityId::IdWhipple => {
            if n % 2 == 0 {
                return Err(WzError::EvenN(n));
            }
            let e = (1 - n * n) / 8;
            let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
            (
                rhs_sum(SeriesId::WhippleLhs)?,
                QFraction::monomial(&Rational::from_integer(sign.into()), e),
            )
        }
    })
}

/// Checks one identity instance exactly.
pub fn check_identity(id: IdentityId, n: u64) -> Result<CheckResult, WzError> {
    let (lhs, rhs) = identity_sides(id, n as i64)?;
    Ok(verdict(format!("{id} n={n}"), lhs.sub(&rhs)))
}

/// `Σ_{n<m} F(n,0)` against `Σ_{k=1}^{m} G(m,k)`: the double telescoping that
/// turns the certificate into the finite identity.
pub fn check_certificate_sum(pair: WzPairId, m: u64) -> CheckResult {
    let m = m as i64;
    let left = sum_terms((0..m).map(|n| wz_hyper_term(pair, Which::F, n, 0))).expect("no poles");
    let right = sum_terms((1..=m).map(|k| wz_hyper_term(pair, Which::G, m, k))).expect("no poles");
    verdict(format!("{pair} certificate sum m={m}"), left.sub(&right))
}

/// The right side of `IdA2` against that of `IdA3`.
pub fn check_reversal(n: u64) -> CheckResult {
    let n = n as i64;
    let a2 = crate::qobjects::partial_sum_fraction(SeriesId::A2Rhs, Some(n), n).expect("n >= 1");
    let a3 =
        crate::qobjects::partial_sum_fraction(SeriesId::A3Rhs, Some(n), n - 1).expect("n >= 1");
    verdict(format!("A2/A3 reversal n={n}"), a2.sub(&a3))
}

/// The `IdSecond` right side with `q` replaced by `1/q`, against the `IdSecond2`
/// right side.
pub fn check_inversion(n: u64) -> CheckResult {
    let n = n as i64;
    let inverted = sum_terms((1..=n).map(|k| SeriesId::SecondRhs.raw_term(n, k).invert_variable()))
        .expect("no poles");
    let second2 = crate::qobjects::partial_sum_fraction(SeriesId::Second2Rhs, Some(n), n - 1)
        .expect("n >= 1");
    verdict(
        format!("SECOND/SECOND2 inversion n={n}"),
        inverted.sub(&second2),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Poly, RatFunc};

    #[test]
    fn wz_term_examples() {
        assert_eq!(
            wz_term(WzPairId::PairJ2, Which::F, 0, 0),
            LaurentRatFunc::one()
        );
        assert_eq!(
            wz_term(WzPairId::PairJ2, Which::G, 1, 1),
            LaurentRatFunc::one()
        );
        assert!(wz_term(WzPairId::PairJ2, Which::F, 0, 1).is_zero());
        assert!(wz_term(WzPairId::PairL2, Which::G, 0, 1).is_zero());
    }

    #[test]
    fn telescoping_examples() {
        assert!(check_telescoping(WzPairId::PairJ2, 0, 1).passed);
        assert!(check_telescoping(WzPairId::PairJ2, 2, 1).passed);
        assert!(check_telescoping(WzPairId::PairL2, 1, 1).passed);
    }

    #[test]
    fn telescoping_detects_a_broken_pair() {
        // Replacing F by q·F breaks the certificate at (0,1).
        let t = |w, a, b| wz_hyper_term(WzPairId::PairJ2, w, a, b);
        let terms = [
            HyperTerm::q_power(1) * t(Which::F, 0, 0),
            -t(Which::F, 0, 1),
            -t(Which::G, 1, 1),
            t(Which::G, 0, 1),
        ];
        assert!(!sum_terms(terms).unwrap().is_zero());
    }

    #[test]
    fn identity_examples() {
        assert!(check_identity(IdentityId::IdA2, 1).unwrap().passed);
        for n in 2..=6 {
            for id in [
                IdentityId::IdA2,
                IdentityId::IdA3,
                IdentityId::IdSecond,
                IdentityId::IdSecond2,
            ] {
                let r = check_identity(id, n).unwrap();
                assert!(r.passed, "{}", r.case_label);
                assert!(r.witness.is_none());
            }
        }
        assert!(check_identity(IdentityId::IdWhipple, 3).unwrap().passed);
        assert_eq!(
            check_identity(IdentityId::IdWhipple, 4),
            Err(WzError::EvenN(4))
        );
        assert_eq!(
            check_identity(IdentityId::IdA2, 0),
            Err(WzError::NonPositiveN(0))
        );
    }

    #[test]
    fn whipple_three_by_hand() {
        // q·LHS + 1 = Φ₃² / ((1+q)(1+q²)) before the monomial collapse; after
        // reduction both sides are -1/q.
        let (lhs, rhs) = identity_sides(IdentityId::IdWhipple, 3).unwrap();
        let expected = LaurentRatFunc::new(RatFunc::from(Poly::from_i64s(&[-1])), -1);
        assert_eq!(lhs.reduce(), expected);
        assert_eq!(rhs.reduce(), expected);
    }

    #[test]
    fn failing_identity_reports_witness() {
        let (lhs, _) = identity_sides(IdentityId::IdA2, 3).unwrap();
        let wrong = lhs.add(&QFraction::one());
        let r = verdict("x".into(), wrong.sub(&lhs));
        assert!(!r.passed);
        assert_eq!(r.witness.unwrap(), LaurentRatFunc::one());
    }

    #[test]
    fn certificate_sum_and_symmetries() {
        for m in 1..=5 {
            assert!(check_certificate_sum(WzPairId::PairJ2, m).passed);
            assert!(check_certificate_sum(WzPairId::PairL2, m).passed);
            assert!(check_reversal(m).passed);
            assert!(check_inversion(m).passed);
        }
    }

    /// `(q⁻¹;q⁻²)_k = (-1)^k q^{-k²} (q;q²)_k`, checked at rational points against
    /// the squared variant, which does not hold.
    #[test]
    fn inverted_odd_factorial() {
        let inv = |q: &Rational, k: i64| -> Rational {
            let qi = q.recip();
            (0..k).fold(rat(1, 1), |acc, j| {
                acc * (rat(1, 1) - crate::arith::pow_i(&qi, 2 * j + 1))
            })
        };
        for k in 1..6 {
            let t = HyperTerm::sign(k) * HyperTerm::q_power(-k * k) * HyperTerm::qpoch(1, 2, k);
            let squared =
                HyperTerm::sign(k) * HyperTerm::q_power(k * k) * HyperTerm::qpoch(1, 2, k);
            for q in [rat(1, 2), rat(2, 5)] {
                assert_eq!(inv(&q, k), t.eval(&q).unwrap());
                assert_ne!(inv(&q, k).pow(2), squared.eval(&q).unwrap());
            }
        }
    }
}
