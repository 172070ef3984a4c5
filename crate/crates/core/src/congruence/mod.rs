//! q-congruences modulo `Φₙ(q)²` and `[n]Φₙ(q)`, and the classical p-adic
//! congruence they refine.
//!
//! A rational function `A/B` in lowest terms is congruent to zero modulo `M`
//! when `M | A` and `gcd(B, M) = 1`. Two evaluation paths decide this:
//! a modular one working in `Z[q]/((qⁿ - 1)²)`, which every modulus here
//! divides, and an exact one that sums the series as a [`QFraction`] and counts
//! cyclotomic multiplicities.

mod cover;
mod padic;
mod verify;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::arith::cyclotomic::{divisors, is_prime};
use crate::arith::{
    cyclotomic_z, gcd_ext, ArithError, CycIndex, LaurentRatFunc, Poly, QFraction, ZPoly,
};
use crate::CheckResult;

pub use padic::{euler_number, legendre_symbol, verify_sun, verify_sun_with, PadicWitness};
pub use verify::{
    check_factor_identity, intro_residue, modsun_residue, verify_intro, verify_intro_with,
    verify_modsun, verify_modsun_with, CongruenceConfig, CongruenceReport, Path,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("n = {0} must be odd")]
    EvenN(u64),
    #[error("n must be positive")]
    ZeroN,
    #[error("n = {0} is not an odd prime power")]
    NotPrimePower(u64),
    #[error("n = {0} exceeds the composite bound {1} of the exact path")]
    BeyondCompositeBound(u64, u64),
    #[error("denominator is not invertible modulo the modulus")]
    NonInvertibleDenominator,
    #[error("denominator shares a factor with the modulus; the congruence is ill-posed")]
    GcdNotCoprime,
    #[error("p = {0} must be a prime")]
    NotPrime(u64),
    #[error("p = {0} must be at least 5")]
    SmallPrime(u64),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ModulusKind {
    /// `Φₙ(q)²`.
    PhiSquared,
    /// `[n] Φₙ(q)`.
    NPhi,
}

impl fmt::Display for ModulusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModulusKind::PhiSquared => "PHI_SQUARED",
            ModulusKind::NPhi => "N_PHI",
        })
    }
}

/// An odd modulus together with its cyclotomic factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusContext {
    n: u64,
    kind: ModulusKind,
    modulus: Poly,
    modulus_z: ZPoly,
    support: Vec<(u64, u32)>,
}

impl ModulusContext {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn kind(&self) -> ModulusKind {
        self.kind
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub(crate) fn modulus_z(&self) -> &ZPoly {
        &self.modulus_z
    }

    /// `(d, multiplicity)` of every `Φ_d` dividing the modulus.
    pub fn support(&self) -> &[(u64, u32)] {
        &self.support
    }

    pub fn degree(&self) -> usize {
        self.modulus_z.degree().unwrap_or(0)
    }
}

/// Builds `Φₙ²` or `[n]Φₙ` for odd `n`.
pub fn modulus_build(n: u64, kind: ModulusKind) -> Result<ModulusContext, CongruenceError> {
    if n == 0 {
        return Err(CongruenceError::ZeroN);
    }
    if n % 2 == 0 {
        return Err(CongruenceError::EvenN(n));
    }
    let phi = cyclotomic_z(CycIndex::new(n)?);
    let (modulus_z, support) = match kind {
        ModulusKind::PhiSquared => (&*phi * &*phi, vec![(n, 2)]),
        ModulusKind::NPhi => {
            let qint = ZPoly::new(vec![1.into(); n as usize]);
            let support = divisors(n)
                .into_iter()
                .filter(|&d| d > 1 || n == 1)
                .map(|d| (d, if d == n && n > 1 { 2 } else { 1 }))
                .collect();
            (&qint * &*phi, support)
        }
    };
    assert!(modulus_z.is_monic(), "modulus must be monic");
    if kind == ModulusKind::NPhi && is_prime(n) {
        assert_eq!(modulus_z, &*phi * &*phi, "[p] = Φ_p for prime p");
    }
    Ok(ModulusContext {
        n,
        kind,
        modulus: modulus_z.to_rational(),
        modulus_z,
        support,
    })
}

/// A residue class in `Q[q]/M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly<'a> {
    residue: Poly,
    ctx: &'a ModulusContext,
}

impl<'a> ModPoly<'a> {
    pub fn new(p: &Poly, ctx: &'a ModulusContext) -> Self {
        let residue = p.rem_monic(&ctx.modulus).expect("modulus is monic");
        Self { residue, ctx }
    }

    pub fn residue(&self) -> &Poly {
        &self.residue
    }

    pub fn context(&self) -> &'a ModulusContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// Multiplicative inverse, if the residue is a unit.
    pub fn inverse(&self) -> Result<Self, CongruenceError> {
        Ok(Self {
            residue: invert_mod(&self.residue, &self.ctx.modulus)?,
            ctx: self.ctx,
        })
    }
}

impl<'a> Add for &ModPoly<'a> {
    type Output = ModPoly<'a>;
    fn add(self, rhs: Self) -> ModPoly<'a> {
        ModPoly {
            residue: &self.residue + &rhs.residue,
            ctx: self.ctx,
        }
    }
}

impl<'a> Sub for &ModPoly<'a> {
    type Output = ModPoly<'a>;
    fn sub(self, rhs: Self) -> ModPoly<'a> {
        ModPoly {
            residue: &self.residue - &rhs.residue,
            ctx: self.ctx,
        }
    }
}

impl<'a> Neg for &ModPoly<'a> {
    type Output = ModPoly<'a>;
    fn neg(self) -> ModPoly<'a> {
        ModPoly {
            residue: -&self.residue,
            ctx: self.ctx,
        }
    }
}

impl<'a> Mul for &ModPoly<'a> {
    type Output = ModPoly<'a>;
    fn mul(self, rhs: Self) -> ModPoly<'a> {
        ModPoly::new(&(&self.residue * &rhs.residue), self.ctx)
    }
}

/// Inverse of `a` modulo a monic `m` by the extended Euclidean algorithm.
pub(crate) fn invert_mod(a: &Poly, m: &Poly) -> Result<Poly, CongruenceError> {
    let a = a.rem_monic(m)?;
    if a.is_zero() {
        return Err(CongruenceError::NonInvertibleDenominator);
    }
    let (g, s, _) = gcd_ext(&a, m)?;
    if !g.is_one() {
        return Err(CongruenceError::NonInvertibleDenominator);
    }
    Ok(s.rem_monic(m)?)
}

fn q_power_mod(e: i64, m: &Poly) -> Result<Poly, CongruenceError> {
    let base = if e < 0 {
        invert_mod(&Poly::q(), m)?
    } else {
        Poly::q()
    };
    let mut acc = Poly::one();
    for _ in 0..e.unsigned_abs() {
        acc = (&acc * &base).rem_monic(m)?;
    }
    Ok(acc)
}

/// Residue of `q^shift · num / den` in `Q[q]/M`.
pub fn mod_reduce<'a>(
    r: &LaurentRatFunc,
    ctx: &'a ModulusContext,
) -> Result<ModPoly<'a>, CongruenceError> {
    let m = &ctx.modulus;
    let inv_den = invert_mod(r.den(), m)?;
    let mut residue = (&r.num().rem_monic(m)? * &inv_den).rem_monic(m)?;
    if r.shift() != 0 {
        residue = (&residue * &q_power_mod(r.shift(), m)?).rem_monic(m)?;
    }
    Ok(ModPoly { residue, ctx })
}

/// Residue of an unreduced [`QFraction`] whose denominator is a unit mod `M`.
pub(crate) fn mod_reduce_fraction<'a>(
    f: &QFraction,
    ctx: &'a ModulusContext,
) -> Result<ModPoly<'a>, CongruenceError> {
    let m = &ctx.modulus;
    let shares_factor = f
        .den_binomials()
        .keys()
        .any(|&b| ctx.support.iter().any(|&(d, _)| b as u64 % d == 0));
    if shares_factor {
        return Err(CongruenceError::NonInvertibleDenominator);
    }
    let num = f.numerator().rem_monic(&ctx.modulus_z)?.to_rational();
    if num.is_zero() {
        return Ok(ModPoly { residue: num, ctx });
    }
    let den = f
        .den_poly()
        .scale(f.den_const())
        .rem_monic(&ctx.modulus_z)?
        .to_rational();
    let inv_den = invert_mod(&den, m)?;
    let mut residue = (&num * &inv_den).rem_monic(m)?;
    if f.shift() != 0 {
        residue = (&residue * &q_power_mod(f.shift(), m)?).rem_monic(m)?;
    }
    Ok(ModPoly { residue, ctx })
}

/// `r ≡ 0 (mod m)` for a reduced `r`: `m` divides the numerator and the
/// denominator is coprime to `m`. Powers of `q` count on the side they sit.
pub fn congruent_zero(r: &LaurentRatFunc, m: &Poly) -> Result<CheckResult, CongruenceError> {
    let label = format!("({r}) mod ({m})");
    let (mut num, mut den) = (r.num().clone(), r.den().clone());
    if r.shift() > 0 {
        num = num.shift_up(r.shift() as usize);
    } else {
        den = den.shift_up(r.shift().unsigned_abs() as usize);
    }
    if r.is_zero() {
        return Ok(CheckResult::pass(label));
    }
    if !gcd_ext(&den, m)?.0.is_one() {
        return Err(CongruenceError::GcdNotCoprime);
    }
    let (_, rem) = num.div_rem(m)?;
    Ok(if rem.is_zero() {
        CheckResult::pass(label)
    } else {
        CheckResult::fail(
            label,
            Some(LaurentRatFunc::from(crate::arith::RatFunc::from(rem))),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RatFunc;

    fn p(v: &[i64]) -> Poly {
        Poly::from_i64s(v)
    }

    #[test]
    fn modulus_examples() {
        let m = modulus_build(3, ModulusKind::PhiSquared).unwrap();
        assert_eq!(m.modulus(), &p(&[1, 2, 3, 2, 1]));
        let m2 = modulus_build(3, ModulusKind::NPhi).unwrap();
        assert_eq!(m2.modulus(), m.modulus());
        let m9 = modulus_build(9, ModulusKind::NPhi).unwrap();
        assert_eq!(m9.degree(), 14);
        let phi3 = crate::arith::cyclotomic(CycIndex::new(3).unwrap());
        let phi9 = crate::arith::cyclotomic(CycIndex::new(9).unwrap());
        assert_eq!(m9.modulus(), &(&phi3 * &phi9.pow(2)));
        assert_eq!(m9.support(), &[(3, 1), (9, 2)]);
        assert_eq!(
            modulus_build(4, ModulusKind::NPhi),
            Err(CongruenceError::EvenN(4))
        );
    }

    #[test]
    fn mod_reduce_examples() {
        let ctx = modulus_build(3, ModulusKind::PhiSquared).unwrap();
        let one = mod_reduce(&LaurentRatFunc::one(), &ctx).unwrap();
        assert_eq!(one.residue(), &Poly::one());

        let qinv = LaurentRatFunc::new(RatFunc::one(), -1);
        let r = mod_reduce(&qinv, &ctx).unwrap();
        assert!(r.residue().degree().unwrap() <= 3);
        let check = (&Poly::q() * r.residue()).rem_monic(ctx.modulus()).unwrap();
        assert_eq!(check, Poly::one());

        let bad = LaurentRatFunc::from(RatFunc::new(Poly::one(), p(&[1, 0, 0, -1])).unwrap());
        assert_eq!(
            mod_reduce(&bad, &ctx),
            Err(CongruenceError::NonInvertibleDenominator)
        );
    }

    #[test]
    fn congruent_zero_examples() {
        let phi3 = p(&[1, 1, 1]);
        let m = phi3.pow(2);
        let r =
            LaurentRatFunc::from(RatFunc::new(m.clone(), &p(&[1, 1]) * &p(&[1, 0, 1])).unwrap());
        assert!(congruent_zero(&r, &m).unwrap().passed);
        let one = congruent_zero(&LaurentRatFunc::one(), &m).unwrap();
        assert!(!one.passed);
        assert_eq!(one.witness.unwrap(), LaurentRatFunc::one());
        let ill = LaurentRatFunc::from(RatFunc::new(Poly::one(), phi3.clone()).unwrap());
        assert_eq!(
            congruent_zero(&ill, &phi3),
            Err(CongruenceError::GcdNotCoprime)
        );
    }

    #[test]
    fn fraction_residue_matches_reduced_residue() {
        let ctx = modulus_build(5, ModulusKind::PhiSquared).unwrap();
        let f = crate::qobjects::partial_sum_fraction(crate::qobjects::SeriesId::J2Lhs, None, 3)
            .unwrap();
        let a = mod_reduce_fraction(&f, &ctx).unwrap();
        let b = mod_reduce(&f.reduce(), &ctx).unwrap();
        assert_eq!(a, b);
    }
}
