//! The infinite series by term recurrence.

use astro_float::BigFloat;

use super::{check_eps, check_q, le, lt, EvalReport, NumCtx, NumError, TERM_CAP};
use crate::qobjects::SeriesId;

/// Terms `t_k` produced by their consecutive ratios, together with a bound
/// `β_k >= |t_{j+1}/t_j|` valid for every `j >= k`.
///
/// With `x = q^{2k+1}`, `1 - q^{4k+2} = (1 - x)(1 + x) <= 1 - q^{4k+4}` and
/// `[m+6]/[m] <= (m+6)/m` on `0 < q < 1` give
/// `J2Lhs: g·x/(1+x)²`, `L2Lhs: g·(x/(1+x))³`, `SunLhs: x/(1+x)` with
/// `g = (6k+7)/(6k+1)`. Each bound is nonincreasing in `k`.
struct TermStream<'a> {
    id: SeriesId,
    ctx: &'a NumCtx,
    k: u64,
    term: BigFloat,
    q2: BigFloat,
    q4: BigFloat,
    q6: BigFloat,
    /// `q^{2k+1}` for the current `k`.
    odd: BigFloat,
    /// `q^{4k+2}`.
    twice_odd: BigFloat,
    /// `q^{4k+4}`.
    quad: BigFloat,
    /// `q^{6k+1}` and `q^{6k+7}`.
    six_lo: BigFloat,
    six_hi: BigFloat,
}

impl<'a> TermStream<'a> {
    fn new(id: SeriesId, q: &BigFloat, ctx: &'a NumCtx) -> Result<Self, NumError> {
        if !matches!(id, SeriesId::J2Lhs | SeriesId::L2Lhs | SeriesId::SunLhs) {
            return Err(NumError::UnsupportedSeries(id));
        }
        let q2 = ctx.mul(q, q);
        let q4 = ctx.mul(&q2, &q2);
        let q6 = ctx.mul(&q4, &q2);
        let six_hi = ctx.mul(&q6, q);
        Ok(Self {
            id,
            ctx,
            k: 0,
            term: ctx.int(1),
            odd: q.clone(),
            twice_odd: q2.clone(),
            quad: q4.clone(),
            six_lo: q.clone(),
            six_hi,
            q2,
            q4,
            q6,
        })
    }

    fn one_minus(&self, x: &BigFloat) -> BigFloat {
        self.ctx.sub(&self.ctx.int(1), x)
    }

    /// Bound on `|t_{k+1}/t_k|` at the current `k`.
    fn beta(&self) -> BigFloat {
        let c = self.ctx;
        let k = self.k as i64;
        let growth = c.div(&c.int(6 * k + 7), &c.int(6 * k + 1));
        let y = c.div(&self.odd, &c.add(&c.int(1), &self.odd));
        match self.id {
            SeriesId::J2Lhs => {
                let x = c.div(&y, &c.add(&c.int(1), &self.odd));
                c.mul(&x, &growth)
            }
            SeriesId::L2Lhs => c.mul(&c.mul(&c.mul(&y, &y), &y), &growth),
            _ => y,
        }
    }

    /// Advance from `t_k` to `t_{k+1}`.
    fn advance(&mut self) {
        let c = self.ctx;
        let odd = self.one_minus(&self.odd);
        let den = self.one_minus(&self.quad);
        let ratio = match self.id {
            SeriesId::J2Lhs => {
                // q^{2k+1} [6k+7]/[6k+1] (1-q^{2k+1})² (1-q^{4k+2}) / (1-q^{4k+4})³
                let qint = c.div(&self.one_minus(&self.six_hi), &self.one_minus(&self.six_lo));
                let num = c.mul(&c.mul(&odd, &odd), &self.one_minus(&self.twice_odd));
                let den3 = c.mul(&c.mul(&den, &den), &den);
                c.mul(&c.mul(&self.odd, &qint), &c.div(&num, &den3))
            }
            SeriesId::L2Lhs => {
                // -q^{6k+3} [6k+7]/[6k+1] (1-q^{2k+1})³ / (1-q^{4k+4})³
                let qint = c.div(&self.one_minus(&self.six_hi), &self.one_minus(&self.six_lo));
                let w = c.mul(&c.mul(&self.odd, &self.odd), &self.odd);
                let r = c.div(&odd, &den);
                let r3 = c.mul(&c.mul(&r, &r), &r);
                c.mul(&c.mul(&w, &qint), &r3).neg()
            }
            _ => {
                // q^{2k+1} (1-q^{2k+1}) / (1-q^{4k+4})
                c.mul(&self.odd, &c.div(&odd, &den))
            }
        };
        self.term = c.mul(&self.term, &ratio);
        self.k += 1;
        self.odd = c.mul(&self.odd, &self.q2);
        self.twice_odd = c.mul(&self.twice_odd, &self.q4);
        self.quad = c.mul(&self.quad, &self.q4);
        self.six_lo = c.mul(&self.six_lo, &self.q6);
        self.six_hi = c.mul(&self.six_hi, &self.q6);
    }
}

/// Rounding allowance for `terms` recurrence steps at `q`: each step costs at
/// most 16 roundings, each amplified by at most `1/(1-q)` through `1 - q^m`.
fn rounding(abs_sum: &BigFloat, terms: u64, one_minus_q: &BigFloat, ctx: &NumCtx) -> BigFloat {
    let ulps = ctx.ulps(16 * terms + 16);
    ctx.div(&ctx.mul(abs_sum, &ulps), one_minus_q)
}

/// Sums `J2Lhs`, `L2Lhs` or the infinite `SunLhs` (Slater) series until the
/// truncation and rounding bound is at most `eps`.
pub fn eval_series(
    id: SeriesId,
    q: &BigFloat,
    eps: &BigFloat,
    ctx: &NumCtx,
) -> Result<EvalReport, NumError> {
    check_q(q, ctx)?;
    check_eps(eps, ctx)?;
    let mut s = TermStream::new(id, q, ctx)?;
    let one_minus_q = ctx.sub(&ctx.int(1), q);
    let mut sum = ctx.int(1);
    let mut abs_sum = ctx.int(1);
    loop {
        let beta = s.beta();
        if lt(&beta, &ctx.int(1)) {
            let t = s.term.abs();
            let tail = ctx.div(&ctx.mul(&t, &beta), &ctx.sub(&ctx.int(1), &beta));
            let bound = ctx.add(
                &ctx.mul(&ctx.int(2), &tail),
                &rounding(&abs_sum, s.k + 1, &one_minus_q, ctx),
            );
            if le(&bound, eps) {
                return Ok(EvalReport {
                    value: sum,
                    tail_bound: bound,
                    terms_used: s.k + 1,
                });
            }
        }
        if s.k + 1 >= TERM_CAP {
            return Err(NumError::TermCap(TERM_CAP));
        }
        s.advance();
        sum = ctx.add(&sum, &s.term);
        abs_sum = ctx.add(&abs_sum, &s.term.abs());
    }
}

/// `Σ_{k=0}^{upper} t_k` in floating point.
pub fn partial_sum_numeric(
    id: SeriesId,
    q: &BigFloat,
    upper: u64,
    ctx: &NumCtx,
) -> Result<BigFloat, NumError> {
    check_q(q, ctx)?;
    let mut s = TermStream::new(id, q, ctx)?;
    let mut sum = ctx.int(1);
    for _ in 0..upper {
        s.advance();
        sum = ctx.add(&sum, &s.term);
    }
    Ok(sum)
}
