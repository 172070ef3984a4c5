//! The q-congruences themselves.

use std::fmt;

use num_bigint::BigInt;

use super::cover::cover_sum;
use super::{
    invert_mod, mod_reduce, mod_reduce_fraction, modulus_build, CongruenceError, ModulusContext,
    ModulusKind,
};
use crate::arith::cyclotomic::{is_prime, is_prime_power};
use crate::arith::{LaurentPoly, LaurentRatFunc, Poly, RatFunc, Rational};
use crate::qobjects::{sum_terms, HyperTerm, SeriesId};
use crate::wz::WzPairId;
use crate::CheckResult;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Path {
    /// Arithmetic in `Z[q]/((qⁿ - 1)²)`, requires denominators coprime to the modulus.
    Modular,
    /// Exact summation followed by cyclotomic multiplicity counts.
    Exact,
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Path::Modular => "modular",
            Path::Exact => "exact",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CongruenceConfig {
    /// Largest composite `n` sent down the exact path.
    pub composite_bound: u64,
    /// Allow `PairL2` for odd `n` that are not prime powers.
    pub exploratory_l2: bool,
}

impl Default for CongruenceConfig {
    fn default() -> Self {
        Self {
            composite_bound: 27,
            exploratory_l2: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CongruenceReport {
    pub result: CheckResult,
    pub path: Path,
}

fn signed_q_power(e: i64) -> HyperTerm {
    HyperTerm::sign(e) * HyperTerm::q_power(e)
}

fn check_odd(n: u64) -> Result<(), CongruenceError> {
    match n {
        0 => Err(CongruenceError::ZeroN),
        n if n % 2 == 0 => Err(CongruenceError::EvenN(n)),
        _ => Ok(()),
    }
}

/// `q^{(n²-1)/8} Σ_{k} q^{k²}(q;q²)_k/(q⁴;q⁴)_k - (-1)^{(n²-1)/8}`.
fn modsun_terms(n: u64) -> Vec<HyperTerm> {
    let n = n as i64;
    assert_eq!((n * n - 1) % 8, 0);
    let e = (n * n - 1) / 8;
    let mut terms: Vec<HyperTerm> = (0..=(n - 1) / 2)
        .map(|k| HyperTerm::q_power(e) * SeriesId::SunLhs.raw_term(n, k))
        .collect();
    terms.push(-HyperTerm::sign(e));
    terms
}

fn intro_exponent(pair: WzPairId, n: i64) -> i64 {
    match pair {
        WzPairId::PairJ2 => (1 - n) / 2,
        WzPairId::PairL2 => -((n - 1) * (n + 5)) / 8,
    }
}

/// `Σ_{k<n} a_k - [n](-q)^{e}` for the series attached to `pair`.
fn intro_terms(pair: WzPairId, n: u64) -> Vec<HyperTerm> {
    let n = n as i64;
    let series = match pair {
        WzPairId::PairJ2 => SeriesId::J2Lhs,
        WzPairId::PairL2 => SeriesId::SecondLhs,
    };
    let mut terms: Vec<HyperTerm> = (0..n).map(|k| series.raw_term(0, k)).collect();
    terms.push(-(HyperTerm::qint(n) * signed_q_power(intro_exponent(pair, n))));
    terms
}

fn residue_witness(residue: Poly) -> LaurentRatFunc {
    LaurentRatFunc::from(RatFunc::from(residue))
}

/// Modular verdict; the witness is the residue of the difference.
fn run_modular(
    terms: &[HyperTerm],
    ctx: &ModulusContext,
    label: String,
) -> Result<CheckResult, CongruenceError> {
    let s = cover_sum(terms, ctx)?;
    let num = s.numerator_mod(ctx);
    if num.is_zero() {
        return Ok(CheckResult::pass(label));
    }
    let inv = invert_mod(&s.denominator_mod(ctx).to_rational(), ctx.modulus())?;
    let residue = (&num.to_rational() * &inv).rem_monic(ctx.modulus())?;
    Ok(CheckResult::fail(label, Some(residue_witness(residue))))
}

/// Exact verdict from cyclotomic multiplicities of the summed difference.
fn run_exact(
    terms: Vec<HyperTerm>,
    ctx: &ModulusContext,
    label: String,
) -> Result<CheckResult, CongruenceError> {
    let diff = sum_terms(terms)?;
    if diff.is_zero() {
        return Ok(CheckResult::pass(label));
    }
    let mut passed = true;
    for &(d, need) in ctx.support() {
        let (v, e) = diff.cyclotomic_balance(d, need);
        if v < e {
            return Err(CongruenceError::GcdNotCoprime);
        }
        if v - e < need {
            passed = false;
        }
    }
    if passed {
        return Ok(CheckResult::pass(label));
    }
    let residue = match mod_reduce_fraction(&diff, ctx) {
        Ok(r) => r,
        Err(_) => mod_reduce(&diff.reduce(), ctx)?,
    };
    Ok(CheckResult::fail(
        label,
        Some(residue_witness(residue.residue().clone())),
    ))
}

fn residue_of(
    terms: Vec<HyperTerm>,
    ctx: &ModulusContext,
    path: Path,
) -> Result<Poly, CongruenceError> {
    match path {
        Path::Modular => {
            let s = cover_sum(&terms, ctx)?;
            let num = s.numerator_mod(ctx).to_rational();
            if num.is_zero() {
                return Ok(num);
            }
            let inv = invert_mod(&s.denominator_mod(ctx).to_rational(), ctx.modulus())?;
            Ok((&num * &inv).rem_monic(ctx.modulus())?)
        }
        Path::Exact => {
            let diff = sum_terms(terms)?;
            let r = match mod_reduce_fraction(&diff, ctx) {
                Ok(r) => r,
                Err(_) => mod_reduce(&diff.reduce(), ctx)?,
            };
            Ok(r.residue().clone())
        }
    }
}

/// `Σ_{k=0}^{(n-1)/2} q^{k²}(q;q²)_k/(q⁴;q⁴)_k ≡ (-q)^{(1-n²)/8} (mod Φₙ(q)²)`,
/// on the modular path.
pub fn verify_modsun(n: u64) -> Result<CheckResult, CongruenceError> {
    verify_modsun_with(n, Path::Modular)
}

pub fn verify_modsun_with(n: u64, path: Path) -> Result<CheckResult, CongruenceError> {
    check_odd(n)?;
    let ctx = modulus_build(n, ModulusKind::PhiSquared)?;
    let label = format!("MODSUN n={n}");
    match path {
        Path::Modular => run_modular(&modsun_terms(n), &ctx, label),
        Path::Exact => run_exact(modsun_terms(n), &ctx, label),
    }
}

/// Residue of `q^{(n²-1)/8}·LHS - (-1)^{(n²-1)/8}` modulo `Φₙ²`.
pub fn modsun_residue(n: u64, path: Path) -> Result<Poly, CongruenceError> {
    check_odd(n)?;
    let ctx = modulus_build(n, ModulusKind::PhiSquared)?;
    residue_of(modsun_terms(n), &ctx, path)
}

fn intro_path(pair: WzPairId, n: u64, cfg: &CongruenceConfig) -> Result<Path, CongruenceError> {
    check_odd(n)?;
    if pair == WzPairId::PairL2 && !is_prime_power(n) && !cfg.exploratory_l2 {
        return Err(CongruenceError::NotPrimePower(n));
    }
    if is_prime(n) {
        Ok(Path::Modular)
    } else if n <= cfg.composite_bound {
        Ok(Path::Exact)
    } else {
        Err(CongruenceError::BeyondCompositeBound(
            n,
            cfg.composite_bound,
        ))
    }
}

/// `Σ_{k=0}^{n-1} a_k ≡ [n](-q)^{e} (mod [n]Φₙ(q))`, with `a_k` the summand of
/// the series attached to `pair`; the path is chosen from `n`.
pub fn verify_intro(
    pair: WzPairId,
    n: u64,
    cfg: &CongruenceConfig,
) -> Result<CongruenceReport, CongruenceError> {
    let path = intro_path(pair, n, cfg)?;
    let result = verify_intro_with(pair, n, path, cfg)?;
    Ok(CongruenceReport { result, path })
}

/// As [`verify_intro`] on a forced path. The modular path fails with
/// `NonInvertibleDenominator` when a summand denominator meets the modulus.
pub fn verify_intro_with(
    pair: WzPairId,
    n: u64,
    path: Path,
    cfg: &CongruenceConfig,
) -> Result<CheckResult, CongruenceError> {
    check_odd(n)?;
    if pair == WzPairId::PairL2 && !is_prime_power(n) && !cfg.exploratory_l2 {
        return Err(CongruenceError::NotPrimePower(n));
    }
    let ctx = modulus_build(n, ModulusKind::NPhi)?;
    let label = format!("{pair} n={n}");
    match path {
        Path::Modular => run_modular(&intro_terms(pair, n), &ctx, label),
        Path::Exact => run_exact(intro_terms(pair, n), &ctx, label),
    }
}

/// Residue of `Σ a_k - [n](-q)^{e}` modulo `[n]Φₙ` along the chosen path.
pub fn intro_residue(pair: WzPairId, n: u64, path: Path) -> Result<Poly, CongruenceError> {
    check_odd(n)?;
    let ctx = modulus_build(n, ModulusKind::NPhi)?;
    residue_of(intro_terms(pair, n), &ctx, path)
}

/// `(1-q^{n-2j+1})(1-q^{n+2j-1}) + (1-q^{2j-1})² q^{n-2j+1} = (1-qⁿ)²` as
/// Laurent polynomials.
pub fn check_factor_identity(n: i64, j: i64) -> bool {
    let one = LaurentPoly::one();
    let mono = |e: i64| LaurentPoly::monomial(Rational::from_integer(BigInt::from(1)), e);
    let bin = |e: i64| &one - &mono(e);
    let a = n - 2 * j + 1;
    let lhs = &(&bin(a) * &bin(n + 2 * j - 1)) + &(&(&bin(2 * j - 1) * &bin(2 * j - 1)) * &mono(a));
    let rhs = &bin(n) * &bin(n);
    lhs == rhs
}
