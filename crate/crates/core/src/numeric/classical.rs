//! The classical series for `1/π`, the q-Gamma function and the scans of
//! `q → 1⁻`.

use std::fmt;
use std::ops::RangeInclusive;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::product::qpoch_core;
use super::{eval_series, lt, EvalReport, NumCtx, NumError};
use crate::arith::Rational;
use crate::qobjects::SeriesId;

/// The two classical series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classical {
    /// `Σ (6k+1)(1/2)_k³/(k!³ 4^k) = 4/π`.
    Pi1,
    /// `Σ (-1)^k (6k+1)(1/2)_k³/(k!³ 8^k) = 2√2/π`.
    Pi2,
}

impl fmt::Display for Classical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classical::Pi1 => "PI1",
            Classical::Pi2 => "PI2",
        })
    }
}

fn ratio(which: Classical, k: i64) -> Rational {
    // t_{k+1}/t_k = (6k+7)(2k+1)³/(32(6k+1)(k+1)³), times -1/2 for Pi2.
    let num = BigInt::from(6 * k + 7) * BigInt::from(2 * k + 1).pow(3);
    let den = BigInt::from(32) * BigInt::from(6 * k + 1) * BigInt::from(k + 1).pow(3);
    let r = Rational::new(num, den);
    match which {
        Classical::Pi1 => r,
        Classical::Pi2 => -r / Rational::from_integer(BigInt::from(2)),
    }
}

/// Exact terms `t_0..=t_upper`.
pub fn classical_terms(which: Classical, upper: u64) -> Vec<Rational> {
    let mut out = Vec::with_capacity(upper as usize + 1);
    let mut t = Rational::one();
    for k in 0..=upper {
        if k > 0 {
            t *= ratio(which, k as i64 - 1);
        }
        out.push(t.clone());
    }
    out
}

/// `4/π` or `2√2/π` from the floating-point constants.
pub fn classical_target(which: Classical, ctx: &mut NumCtx) -> BigFloat {
    let pi = ctx.pi();
    match which {
        Classical::Pi1 => ctx.div(&ctx.int(4), &pi),
        Classical::Pi2 => {
            let r2 = ctx.sqrt(&ctx.int(2));
            ctx.div(&ctx.mul(&ctx.int(2), &r2), &pi)
        }
    }
}

/// Sums the series exactly until the tail is below `10^{-digits-5}`, then
/// rounds once. Consecutive ratios are at most `1/4` (resp. `1/8`) in size, so
/// the tail after `t_K` is at most `|t_K|/3` (resp. `|t_K|/7`).
pub fn eval_classical(which: Classical, digits: u32) -> Result<EvalReport, NumError> {
    let mut ctx = NumCtx::new(digits)?;
    let eps = Rational::new(BigInt::one(), BigInt::from(10).pow(digits + 5));
    let tail_div = Rational::from_integer(BigInt::from(match which {
        Classical::Pi1 => 3,
        Classical::Pi2 => 7,
    }));
    let mut t = Rational::one();
    let mut sum = Rational::zero();
    let mut k: u64 = 0;
    loop {
        sum += &t;
        let tail = t.abs() / &tail_div;
        if tail <= eps {
            let value = ctx.rational(&sum);
            let tail = ctx.rational(&tail);
            let rounding = ctx.mul(&value.abs(), &ctx.ulps(2));
            return Ok(EvalReport {
                value,
                tail_bound: ctx.add(&tail, &rounding),
                terms_used: k + 1,
            });
        }
        t *= ratio(which, k as i64);
        k += 1;
    }
}

fn check_rational_q(q: &Rational) -> Result<(), NumError> {
    if !q.is_positive() || *q >= Rational::one() {
        return Err(NumError::QOutOfRange);
    }
    Ok(())
}

/// `Γ_q(x) = (q;q)_∞/(q^x;q)_∞ · (1-q)^{1-x}` for `x > 0`, `0 < q < 1`.
///
/// Positive integers `x = n` use the finite form `∏_{j<n}[j]_q` in exact
/// arithmetic, so `Γ_q(1) = Γ_q(2) = 1` exactly. Otherwise `q^x` and
/// `(1-q)^{1-x}` are formed as `exp(x ln q)` and `exp((1-x) ln(1-q))`, with `q`
/// rounded to the working precision.
pub fn q_gamma(x: &Rational, q: &Rational, digits: u32) -> Result<EvalReport, NumError> {
    check_rational_q(q)?;
    if !x.is_positive() {
        return Err(NumError::InvalidArgument("x must be positive".to_string()));
    }
    let mut ctx = NumCtx::new(digits)?;
    if x.is_integer() {
        let n = x.to_integer();
        let mut exact = Rational::one();
        let mut qj = q.clone();
        let mut j = BigInt::one();
        while j < n {
            exact *= (Rational::one() - &qj) / (Rational::one() - q);
            qj *= q;
            j += 1;
        }
        let value = ctx.rational(&exact);
        let tail_bound = ctx.mul(&value.abs(), &ctx.ulps(1));
        return Ok(EvalReport {
            value,
            tail_bound,
            terms_used: 1,
        });
    }
    let qf = ctx.rational(q);
    let xf = ctx.rational(x);
    let one = ctx.int(1);
    let ln_q = ctx.ln(&qf);
    let y = ctx.mul(&xf, &ln_q);
    let a = ctx.exp(&y);
    let a_err = ctx.mul(&ctx.ulps(4), &ctx.add(&one, &y.abs()));
    let one_minus_q = ctx.sub(&one, &qf);
    let ln_one_minus_q = ctx.ln(&one_minus_q);
    let z = ctx.mul(&ctx.sub(&one, &xf), &ln_one_minus_q);
    let scale = ctx.exp(&z);
    let scale_err = ctx.mul(&ctx.ulps(4), &ctx.add(&one, &z.abs()));
    let rel_eps = ctx.div(&ctx.pow10(-(digits as i64) - 5), &ctx.int(8));
    let (num, r_num, t_num) = qpoch_core(&qf, &ctx.ulps(1), &qf, 1, &rel_eps, &ctx)?;
    let (den, r_den, t_den) = if lt(&a, &one) {
        qpoch_core(&a, &a_err, &qf, 1, &rel_eps, &ctx)?
    } else {
        // x < 0 is excluded, so q^x < 1; guard against rounding at tiny x.
        return Err(NumError::InvalidArgument(
            "x too close to 0 for this precision".to_string(),
        ));
    };
    let value = ctx.mul(&ctx.div(&num, &den), &scale);
    let rel = ctx.add(&ctx.add(&r_num, &r_den), &ctx.add(&scale_err, &ctx.ulps(4)));
    let tail_bound = ctx.mul(&value.abs(), &ctx.mul(&ctx.int(2), &rel));
    Ok(EvalReport {
        value,
        tail_bound,
        terms_used: t_num + t_den,
    })
}

/// Which series is scanned towards which constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LimitTarget {
    /// `J2Lhs → 4/π`.
    A1ToPi1,
    /// `L2Lhs → 2√2/π`.
    A11ToPi2,
}

impl LimitTarget {
    pub fn series(self) -> SeriesId {
        match self {
            LimitTarget::A1ToPi1 => SeriesId::J2Lhs,
            LimitTarget::A11ToPi2 => SeriesId::L2Lhs,
        }
    }

    pub fn classical(self) -> Classical {
        match self {
            LimitTarget::A1ToPi1 => Classical::Pi1,
            LimitTarget::A11ToPi2 => Classical::Pi2,
        }
    }
}

impl fmt::Display for LimitTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitTarget::A1ToPi1 => "A1_TO_PI1",
            LimitTarget::A11ToPi2 => "A11_TO_PI2",
        })
    }
}

/// One point `q_j = 1 - 2^{-j}` of a scan.
#[derive(Clone, Debug)]
pub struct LimitPoint {
    pub j: u32,
    pub q: Rational,
    pub value: EvalReport,
    /// `|value - target|`.
    pub distance: BigFloat,
}

/// Evaluates the series at `q_j = 1 - 2^{-j}` for each `j` in `js` (within
/// `2..=16`) to `digits` digits and reports the distance to the constant.
pub fn limit_scan(
    target: LimitTarget,
    js: RangeInclusive<u32>,
    digits: u32,
) -> Result<Vec<LimitPoint>, NumError> {
    if *js.start() < 2 || *js.end() > 16 {
        return Err(NumError::InvalidArgument(
            "j range must lie within 2..=16".to_string(),
        ));
    }
    if digits == 0 {
        return Err(NumError::ZeroDigits);
    }
    let js: Vec<u32> = js.collect();
    js.par_iter()
        .map(|&j| {
            let mut ctx = NumCtx::new(digits)?;
            let q = Rational::one() - Rational::new(BigInt::one(), BigInt::one() << j as usize);
            let qf = ctx.rational(&q);
            let eps = ctx.pow10(-(digits as i64));
            let value = eval_series(target.series(), &qf, &eps, &ctx)?;
            let c = classical_target(target.classical(), &mut ctx);
            let distance = ctx.sub(&value.value, &c).abs();
            Ok(LimitPoint {
                j,
                q,
                value,
                distance,
            })
        })
        .collect()
}

/// True iff the distances strictly decrease along the scan.
pub fn strictly_decreasing(points: &[LimitPoint]) -> bool {
    points
        .windows(2)
        .all(|w| lt(&w[1].distance, &w[0].distance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::numeric::le;

    fn within(a: &BigFloat, b: &BigFloat, bound: &BigFloat, ctx: &NumCtx) -> bool {
        le(&ctx.sub(a, b).abs(), bound)
    }

    fn factorial(n: u64) -> BigInt {
        (1..=n).fold(BigInt::one(), |a, b| a * b)
    }

    #[test]
    fn terms_match_factorials() {
        let terms = classical_terms(Classical::Pi1, 20);
        let terms2 = classical_terms(Classical::Pi2, 20);
        for k in 0..=20u64 {
            // (1/2)_k = (2k)!/(4^k k!)
            let half = Rational::new(
                factorial(2 * k),
                BigInt::from(4).pow(k as u32) * factorial(k),
            );
            let base = half.clone() * &half * &half / Rational::from_integer(factorial(k).pow(3))
                * Rational::from_integer(BigInt::from(6 * k + 1));
            let p1 = base.clone() / Rational::from_integer(BigInt::from(4).pow(k as u32));
            let mut p2 = base / Rational::from_integer(BigInt::from(8).pow(k as u32));
            if k % 2 == 1 {
                p2 = -p2;
            }
            assert_eq!(terms[k as usize], p1, "k={k}");
            assert_eq!(terms2[k as usize], p2, "k={k}");
        }
        assert_eq!(classical_terms(Classical::Pi1, 0), vec![Rational::one()]);
    }

    #[test]
    fn classical_values() {
        for which in [Classical::Pi1, Classical::Pi2] {
            let r = eval_classical(which, 40).unwrap();
            let mut ctx = NumCtx::new(40).unwrap();
            let c = classical_target(which, &mut ctx);
            assert!(within(&r.value, &c, &ctx.pow10(-40), &ctx), "{which}");
        }
    }

    #[test]
    fn gamma_at_integers() {
        for q in [rat(1, 2), rat(9, 10)] {
            for x in [1, 2] {
                let r = q_gamma(&rat(x, 1), &q, 30).unwrap();
                let ctx = NumCtx::new(30).unwrap();
                assert_eq!(
                    super::super::ordering(&r.value, &ctx.int(1)),
                    Some(std::cmp::Ordering::Equal)
                );
            }
            // Γ_q(3) = [2]_q = 1 + q.
            let r = q_gamma(&rat(3, 1), &q, 30).unwrap();
            let mut ctx = NumCtx::new(30).unwrap();
            let expected = ctx.rational(&(Rational::one() + &q));
            assert!(within(&r.value, &expected, &ctx.ulps(4), &ctx));
        }
    }

    #[test]
    fn gamma_recurrence_at_half() {
        // Γ_q(3/2) = [1/2]_q Γ_q(1/2) with [1/2]_q = (1 - q^{1/2})/(1 - q).
        let q = rat(1, 4);
        let a = q_gamma(&rat(1, 2), &q, 30).unwrap();
        let b = q_gamma(&rat(3, 2), &q, 30).unwrap();
        let ctx = NumCtx::new(30).unwrap();
        let factor = ctx.div(&ctx.int(2), &ctx.int(3));
        let expected = ctx.mul(&a.value, &factor);
        assert!(within(&b.value, &expected, &ctx.pow10(-30), &ctx));
    }

    #[test]
    fn gamma_near_one_approaches_sqrt_pi() {
        let q = Rational::one() - rat(1, 1024);
        let r = q_gamma(&rat(1, 2), &q, 20).unwrap();
        let mut ctx = NumCtx::new(20).unwrap();
        let pi = ctx.pi();
        let root = ctx.sqrt(&pi);
        assert!(within(&r.value, &root, &ctx.pow10(-2), &ctx));
    }

    #[test]
    fn gamma_rejects_bad_input() {
        assert_eq!(
            q_gamma(&rat(1, 2), &rat(1, 1), 10).unwrap_err(),
            NumError::QOutOfRange
        );
        assert!(q_gamma(&rat(0, 1), &rat(1, 2), 10).is_err());
    }

    #[test]
    fn scan_rejects_bad_range() {
        assert!(limit_scan(LimitTarget::A1ToPi1, 1..=4, 20).is_err());
        assert!(limit_scan(LimitTarget::A1ToPi1, 4..=17, 20).is_err());
    }

    #[test]
    fn scans_approach_constants() {
        for t in [LimitTarget::A1ToPi1, LimitTarget::A11ToPi2] {
            let pts = limit_scan(t, 4..=10, 30).unwrap();
            assert!(strictly_decreasing(&pts), "{t}");
            let ctx = NumCtx::new(30).unwrap();
            assert!(lt(&pts.last().unwrap().distance, &ctx.pow10(-2)), "{t}");
        }
    }
}
