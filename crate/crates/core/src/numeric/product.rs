//! Infinite q-Pochhammer products and the numeric identity checks.

use std::fmt;

use astro_float::BigFloat;

use super::{check_eps, check_q, eval_series, le, EvalReport, NumCtx, NumError, TERM_CAP};
use crate::arith::Rational;
use crate::qobjects::SeriesId;
use crate::CheckResult;

/// `∏_{m>=0}(1 - a s^m)` for `0 < a, s < 1`, stopped once the relative error
/// bound is at most `rel_eps`. `a_err` bounds the relative error of `a` and
/// `s_ulps` that of `s` in units of `2^{-prec}`.
///
/// Returns the value, its relative error bound and the number of factors.
pub(crate) fn qpoch_core(
    a: &BigFloat,
    a_err: &BigFloat,
    s: &BigFloat,
    s_ulps: u64,
    rel_eps: &BigFloat,
    ctx: &NumCtx,
) -> Result<(BigFloat, BigFloat, u64), NumError> {
    let one = ctx.int(1);
    let half = ctx.div(&one, &ctx.int(2));
    let one_minus_s = ctx.sub(&one, s);
    let mut value = ctx.int(1);
    let mut x = a.clone();
    // Running sums of x_j/(1-x_j) and (j+1)x_j/(1-x_j): the computed x_j
    // carries relative error a_err plus (j+1)(1+s_ulps) roundings, which the
    // factor 1 - x_j amplifies by x_j/(1-x_j).
    let mut amp = ctx.int(0);
    let mut amp_weighted = ctx.int(0);
    let mut m: u64 = 0;
    loop {
        // Tail ∏_{j>=m}(1 - x_j) lies in [e^{-δ}, 1] with δ = 2x_m/(1-s) once
        // x_m <= 1/2, so the relative truncation error is at most 2δ for δ <= 1/2.
        if le(&x, &half) {
            let delta = ctx.div(&ctx.mul(&ctx.int(2), &x), &one_minus_s);
            if le(&delta, &half) {
                let powers = ctx.mul(&amp_weighted, &ctx.ulps(1 + s_ulps));
                let own = ctx.ulps(2 * m + 2);
                let rounding = ctx.add(&ctx.add(&powers, &own), &ctx.mul(&amp, a_err));
                let rel = ctx.mul(&ctx.int(2), &ctx.add(&delta, &rounding));
                if le(&rel, rel_eps) {
                    return Ok((value, rel, m.max(1)));
                }
            }
        }
        if m >= TERM_CAP {
            return Err(NumError::TermCap(TERM_CAP));
        }
        let f = ctx.sub(&one, &x);
        let g = ctx.div(&x, &f);
        amp = ctx.add(&amp, &g);
        amp_weighted = ctx.add(&amp_weighted, &ctx.mul(&g, &ctx.int(m as i64 + 1)));
        value = ctx.mul(&value, &f);
        x = ctx.mul(&x, s);
        m += 1;
    }
}

/// `(q^{base_exp}; q^{step})_∞` with relative error bound at most `rel_eps`.
fn qpoch_rel(
    base_exp: u32,
    step: u32,
    q: &BigFloat,
    rel_eps: &BigFloat,
    ctx: &NumCtx,
) -> Result<(BigFloat, BigFloat, u64), NumError> {
    if base_exp == 0 || step == 0 {
        return Err(NumError::InvalidArgument(
            "base_exp and step must be positive".to_string(),
        ));
    }
    let p = ctx.prec();
    let a = q.powi(base_exp as usize, p, super::RM);
    let s = q.powi(step as usize, p, super::RM);
    let a_err = ctx.ulps(2 * base_exp as u64);
    qpoch_core(&a, &a_err, &s, 2 * step as u64, rel_eps, ctx)
}

/// `(q^{base_exp}; q^{step})_∞` to absolute accuracy `eps`.
pub fn eval_qpoch_inf(
    base_exp: u32,
    step: u32,
    q: &BigFloat,
    eps: &BigFloat,
    ctx: &NumCtx,
) -> Result<EvalReport, NumError> {
    check_q(q, ctx)?;
    check_eps(eps, ctx)?;
    let (value, rel, terms) = qpoch_rel(base_exp, step, q, eps, ctx)?;
    // The product lies in (0, 1), so the relative bound is also absolute.
    Ok(EvalReport {
        value,
        tail_bound: rel,
        terms_used: terms,
    })
}

/// Factor of a product side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    OnePlusQ,
    OneMinusQ,
    /// `(q^{base_exp}; q^{step})_∞`.
    QPoch {
        base_exp: u32,
        step: u32,
    },
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::OnePlusQ => f.write_str("(1+q)"),
            Factor::OneMinusQ => f.write_str("(1-q)"),
            Factor::QPoch { base_exp, step } => write!(f, "(q^{base_exp};q^{step})"),
        }
    }
}

/// One side of a numeric identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Series(SeriesId),
    /// `∏ factor^power`.
    Product(Vec<(Factor, i32)>),
}

/// The numerically checked infinite identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NumIdentity {
    A1,
    A11,
    Slater,
    ProdFact,
}

impl NumIdentity {
    pub const ALL: [NumIdentity; 4] = [
        NumIdentity::A1,
        NumIdentity::A11,
        NumIdentity::Slater,
        NumIdentity::ProdFact,
    ];
}

impl fmt::Display for NumIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NumIdentity::A1 => "A1",
            NumIdentity::A11 => "A11",
            NumIdentity::Slater => "SLATER",
            NumIdentity::ProdFact => "PRODFACT",
        };
        f.write_str(s)
    }
}

fn qp(base_exp: u32, step: u32) -> Factor {
    Factor::QPoch { base_exp, step }
}

/// Left and right sides of an identity.
pub fn identity_sides(which: NumIdentity) -> (Side, Side) {
    match which {
        NumIdentity::A1 => (
            Side::Series(SeriesId::J2Lhs),
            Side::Product(vec![
                (Factor::OnePlusQ, 1),
                (qp(2, 4), 1),
                (qp(6, 4), 1),
                (qp(4, 4), -2),
            ]),
        ),
        NumIdentity::A11 => (
            Side::Series(SeriesId::L2Lhs),
            Side::Product(vec![(qp(3, 4), 1), (qp(5, 4), 1), (qp(4, 4), -2)]),
        ),
        NumIdentity::Slater => (
            Side::Series(SeriesId::SunLhs),
            Side::Product(vec![(qp(2, 4), 2), (qp(1, 2), -1)]),
        ),
        NumIdentity::ProdFact => (
            Side::Product(vec![(qp(1, 2), 1), (Factor::OneMinusQ, -1)]),
            Side::Product(vec![(qp(3, 4), 1), (qp(5, 4), 1)]),
        ),
    }
}

/// Value and relative error bound of one factor.
fn eval_factor(
    f: Factor,
    q: &BigFloat,
    rel_eps: &BigFloat,
    ctx: &NumCtx,
) -> Result<(BigFloat, BigFloat, u64), NumError> {
    let one = ctx.int(1);
    match f {
        Factor::OnePlusQ => Ok((ctx.add(&one, q), ctx.ulps(1), 1)),
        Factor::OneMinusQ => {
            // Subtraction of exact operands is correctly rounded.
            Ok((ctx.sub(&one, q), ctx.ulps(1), 1))
        }
        Factor::QPoch { base_exp, step } => qpoch_rel(base_exp, step, q, rel_eps, ctx),
    }
}

/// `∏ factor^power` to absolute accuracy `eps`.
///
/// With factor relative errors `r_i`, the product has relative error at most
/// `4 Σ |p_i| r_i` while that sum is at most `1/4`.
pub fn eval_product(
    factors: &[(Factor, i32)],
    q: &BigFloat,
    eps: &BigFloat,
    ctx: &NumCtx,
) -> Result<EvalReport, NumError> {
    check_q(q, ctx)?;
    check_eps(eps, ctx)?;
    let weight: i64 = factors
        .iter()
        .map(|(_, p)| p.unsigned_abs() as i64)
        .sum::<i64>()
        .max(1);
    let quarter = ctx.div(&ctx.int(1), &ctx.int(4));
    let mut target = ctx.div(eps, &ctx.int(8 * weight));
    for _ in 0..8 {
        let mut value = ctx.int(1);
        let mut rel_sum = ctx.int(0);
        let mut terms = 0;
        let mut ops: u64 = 0;
        for &(f, p) in factors {
            let (v, r, t) = eval_factor(f, q, &target, ctx)?;
            terms += t;
            let pw = v.powi(p.unsigned_abs() as usize, ctx.prec(), super::RM);
            let pw = if p < 0 { ctx.div(&ctx.int(1), &pw) } else { pw };
            value = ctx.mul(&value, &pw);
            rel_sum = ctx.add(&rel_sum, &ctx.mul(&ctx.int(p.unsigned_abs() as i64), &r));
            ops += 2 * p.unsigned_abs() as u64 + 2;
        }
        if !le(&rel_sum, &quarter) {
            return Err(NumError::InvalidArgument(
                "product factors too inaccurate at this precision".to_string(),
            ));
        }
        let rel = ctx.add(&ctx.mul(&ctx.int(4), &rel_sum), &ctx.ulps(2 * ops));
        let bound = ctx.mul(&value.abs(), &rel);
        if le(&bound, eps) {
            return Ok(EvalReport {
                value,
                tail_bound: bound,
                terms_used: terms.max(1),
            });
        }
        // Large values need tighter factors; rescale and retry.
        target = ctx.div(&ctx.mul(&target, eps), &ctx.mul(&bound, &ctx.int(2)));
    }
    Err(NumError::InvalidArgument(
        "product bound not met at this precision".to_string(),
    ))
}

/// Evaluates either kind of side.
pub fn eval_side(
    side: &Side,
    q: &BigFloat,
    eps: &BigFloat,
    ctx: &NumCtx,
) -> Result<EvalReport, NumError> {
    match side {
        Side::Series(id) => eval_series(*id, q, eps, ctx),
        Side::Product(f) => eval_product(f, q, eps, ctx),
    }
}

/// Outcome of a numeric identity check with the evaluated sides.
#[derive(Clone, Debug)]
pub struct NumericCheck {
    pub result: CheckResult,
    pub lhs: EvalReport,
    pub rhs: EvalReport,
    /// `|lhs - rhs|`.
    pub difference: BigFloat,
    /// `10^{-digits}` plus both error bounds.
    pub allowed: BigFloat,
}

/// Compares two sides at `q` with `digits` decimal digits. Each side gets half
/// of `10^{-digits-5}`; the check passes iff the difference is at most
/// `10^{-digits}` plus both error bounds.
pub fn check_product_identity(
    label: &str,
    lhs: &Side,
    rhs: &Side,
    q: &Rational,
    digits: u32,
) -> Result<NumericCheck, NumError> {
    let mut ctx = NumCtx::new(digits)?;
    let qf = ctx.rational(q);
    let eps = ctx.div(&ctx.pow10(-(digits as i64) - 5), &ctx.int(2));
    let l = eval_side(lhs, &qf, &eps, &ctx)?;
    let r = eval_side(rhs, &qf, &eps, &ctx)?;
    let difference = ctx.sub(&l.value, &r.value).abs();
    let allowed = ctx.add(
        &ctx.pow10(-(digits as i64)),
        &ctx.add(&l.tail_bound, &r.tail_bound),
    );
    let label = format!("{label} q={q} digits={digits}");
    let result = if le(&difference, &allowed) {
        CheckResult::pass(label)
    } else {
        CheckResult::fail(label, None)
    };
    Ok(NumericCheck {
        result,
        lhs: l,
        rhs: r,
        difference,
        allowed,
    })
}

/// Checks one of the listed identities at a rational `q`.
pub fn check_identity_numeric(
    which: NumIdentity,
    q: &Rational,
    digits: u32,
) -> Result<NumericCheck, NumError> {
    let (l, r) = identity_sides(which);
    check_product_identity(&which.to_string(), &l, &r, q, digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn leading_behaviour_near_zero() {
        let ctx = NumCtx::new(30).unwrap();
        let q = ctx.pow2(-20);
        let r = eval_qpoch_inf(2, 4, &q, &ctx.pow10(-25), &ctx).unwrap();
        let expected = ctx.sub(&ctx.int(1), &ctx.pow2(-40));
        assert!(le(&ctx.sub(&r.value, &expected).abs(), &ctx.pow2(-39)));
    }

    #[test]
    fn reproducible() {
        let mut ctx = NumCtx::new(40).unwrap();
        let q = ctx.rational(&rat(1, 2));
        let a = eval_qpoch_inf(4, 4, &q, &ctx.pow10(-40), &ctx).unwrap();
        let b = eval_qpoch_inf(4, 4, &q, &ctx.pow10(-40), &ctx).unwrap();
        assert_eq!(a.value, b.value);
        assert!(le(&ctx.int(0), &a.value));
        assert!(le(&a.tail_bound, &ctx.pow10(-40)));
    }

    #[test]
    fn euler_pentagonal() {
        // (q;q)_∞ = Σ (-1)^k q^{k(3k-1)/2} over all integers k.
        let mut ctx = NumCtx::new(40).unwrap();
        let q = ctx.rational(&rat(1, 3));
        let r = eval_qpoch_inf(1, 1, &q, &ctx.pow10(-45), &ctx).unwrap();
        let mut s = ctx.int(0);
        for k in -40i64..=40 {
            let e = (k * (3 * k - 1) / 2) as usize;
            let t = q.powi(e, ctx.prec(), super::super::RM);
            s = if k % 2 == 0 {
                ctx.add(&s, &t)
            } else {
                ctx.sub(&s, &t)
            };
        }
        assert!(le(&ctx.sub(&s, &r.value).abs(), &ctx.pow10(-44)));
    }

    #[test]
    fn identities_hold() {
        for which in NumIdentity::ALL {
            for q in [rat(1, 4), rat(1, 2), rat(2, 3)] {
                let c = check_identity_numeric(which, &q, 30).unwrap();
                assert!(c.result.passed, "{}", c.result.case_label);
            }
        }
    }

    #[test]
    fn series_matches_product_tightly() {
        let c = check_identity_numeric(NumIdentity::A1, &rat(1, 2), 60).unwrap();
        assert!(c.result.passed);
        let ctx = NumCtx::new(60).unwrap();
        assert!(le(&c.difference, &ctx.mul(&ctx.int(2), &ctx.pow10(-60))));
    }

    #[test]
    fn missing_factor_fails() {
        let (l, r) = identity_sides(NumIdentity::A1);
        let Side::Product(mut f) = r else {
            unreachable!()
        };
        f.retain(|(x, _)| *x != Factor::OnePlusQ);
        let c =
            check_product_identity("A1-perturbed", &l, &Side::Product(f), &rat(1, 2), 50).unwrap();
        assert!(!c.result.passed);
    }

    #[test]
    fn bad_q() {
        assert_eq!(
            check_identity_numeric(NumIdentity::A1, &rat(3, 2), 10).unwrap_err(),
            NumError::QOutOfRange
        );
        assert_eq!(
            check_identity_numeric(NumIdentity::A1, &rat(1, 2), 0).unwrap_err(),
            NumError::ZeroDigits
        );
    }
}
