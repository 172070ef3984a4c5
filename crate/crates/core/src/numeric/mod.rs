//! Arbitrary-precision evaluation of the infinite series and products, with
//! rigorous bounds on truncation and rounding.
//!
//! Every [`EvalReport`] carries a `tail_bound` that covers both the neglected
//! tail and the accumulated rounding error of the evaluation.

mod classical;
mod product;
mod series;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::Rational;

pub use classical::{
    classical_target, classical_terms, eval_classical, limit_scan, q_gamma, strictly_decreasing,
    Classical, LimitPoint, LimitTarget,
};
pub use product::{
    check_identity_numeric, check_product_identity, eval_product, eval_qpoch_inf, eval_side,
    identity_sides, Factor, NumIdentity, NumericCheck, Side,
};
pub use series::{eval_series, partial_sum_numeric};

/// Hard cap on the number of terms or factors of any single evaluation.
pub const TERM_CAP: u64 = 1_000_000;

const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("q must lie strictly between 0 and 1")]
    QOutOfRange,
    #[error("eps must be positive")]
    NonPositiveEps,
    #[error("digits must be at least 1")]
    ZeroDigits,
    #[error("series {0} has no numeric evaluator")]
    UnsupportedSeries(crate::qobjects::SeriesId),
    #[error("tail bound not met within {0} terms; precision insufficient for this q")]
    TermCap(u64),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("floating-point failure: {0}")]
    Float(String),
}

/// Value with a bound on its total error, and the number of terms or factors used.
#[derive(Clone, Debug)]
pub struct EvalReport {
    pub value: BigFloat,
    pub tail_bound: BigFloat,
    pub terms_used: u64,
}

/// Precision and constant cache for one evaluation.
pub struct NumCtx {
    digits: u32,
    prec: usize,
    consts: Consts,
}

impl NumCtx {
    /// Working precision `ceil(digits·log₂10) + 64` bits.
    pub fn new(digits: u32) -> Result<Self, NumError> {
        if digits == 0 {
            return Err(NumError::ZeroDigits);
        }
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
        Ok(Self {
            digits,
            prec: bits,
            consts: Consts::new().map_err(|e| NumError::Float(format!("{e:?}")))?,
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn int(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.prec)
    }

    pub fn bigint(&mut self, v: &BigInt) -> BigFloat {
        // Wide enough to hold the integer exactly.
        let p = self.prec.max(v.bits() as usize + 64);
        BigFloat::parse(&v.to_string(), Radix::Dec, p, RM, &mut self.consts)
    }

    /// Correctly rounded value of an exact rational.
    pub fn rational(&mut self, r: &Rational) -> BigFloat {
        let n = self.bigint(r.numer());
        let d = self.bigint(r.denom());
        self.div(&n, &d)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.prec, RM)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.prec, RM, &mut self.consts)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.prec, RM, &mut self.consts)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.consts.pi(self.prec, RM)
    }

    /// `10^e` for any integer `e`.
    pub fn pow10(&self, e: i64) -> BigFloat {
        let t = BigFloat::from_u64(10, self.prec).powi(e.unsigned_abs() as usize, self.prec, RM);
        if e < 0 {
            t.reciprocal(self.prec, RM)
        } else {
            t
        }
    }

    /// `2^e`, exact.
    pub fn pow2(&self, e: i64) -> BigFloat {
        let mut x = BigFloat::from_u64(1, self.prec);
        x.set_exponent((e + 1) as i32);
        x
    }

    /// `count · 2^{-prec}`: a relative rounding allowance for `count` operations.
    pub fn ulps(&self, count: u64) -> BigFloat {
        self.mul(
            &BigFloat::from_u64(count.max(1), self.prec),
            &self.pow2(-(self.prec as i64)),
        )
    }

    /// Decimal rendering with the working number of significant digits.
    pub fn render(&mut self, x: &BigFloat) -> String {
        render(x, self.digits as usize + 5, &mut self.consts)
    }

    /// Decimal rendering with `sig` significant digits.
    pub fn render_sig(&mut self, x: &BigFloat, sig: usize) -> String {
        render(x, sig.max(1), &mut self.consts)
    }
}

fn render(x: &BigFloat, sig: usize, cc: &mut Consts) -> String {
    let s = x
        .format(Radix::Dec, RM, cc)
        .unwrap_or_else(|_| "NaN".to_string());
    shorten(&s, sig)
}

/// Trims a `d.ddd…e±x` mantissa to `sig` significant digits (truncating).
fn shorten(s: &str, sig: usize) -> String {
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, Some(e)),
        None => (s, None),
    };
    let mut out = String::new();
    let mut digits = 0;
    for ch in mant.chars() {
        if ch.is_ascii_digit() {
            if digits >= sig {
                continue;
            }
            digits += 1;
        }
        out.push(ch);
    }
    if out.ends_with('.') {
        out.push('0');
    }
    match exp {
        Some(e) => format!("{out}e{e}"),
        None => out,
    }
}

pub(crate) fn le(a: &BigFloat, b: &BigFloat) -> bool {
    matches!(a.cmp(b), Some(c) if c <= 0)
}

pub(crate) fn lt(a: &BigFloat, b: &BigFloat) -> bool {
    matches!(a.cmp(b), Some(c) if c < 0)
}

#[cfg(test)]
pub(crate) fn ordering(a: &BigFloat, b: &BigFloat) -> Option<std::cmp::Ordering> {
    a.cmp(b).map(|c| c.cmp(&0))
}

pub(crate) fn check_q(q: &BigFloat, ctx: &NumCtx) -> Result<(), NumError> {
    if q.is_nan() || !lt(&ctx.int(0), q) || !lt(q, &ctx.int(1)) {
        return Err(NumError::QOutOfRange);
    }
    Ok(())
}

pub(crate) fn check_eps(eps: &BigFloat, ctx: &NumCtx) -> Result<(), NumError> {
    if eps.is_nan() || !lt(&ctx.int(0), eps) {
        return Err(NumError::NonPositiveEps);
    }
    Ok(())
}
