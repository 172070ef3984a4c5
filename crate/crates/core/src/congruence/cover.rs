//! Arithmetic in `Z[q]/((qⁿ - 1)²)`.
//!
//! With `u = qⁿ - 1` and `u² = 0`, every power of `q` has the two-term normal
//! form `q^{an+b} = q^b (1 + u)^a = (1 - a) q^b + a q^{b+n}` for any integer
//! `a` and `0 <= b < n`. Multiplying by `q^e` or by `1 - q^m` is therefore
//! linear in `n`, and negative powers of `q` cost nothing extra.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{CongruenceError, ModulusContext};
use crate::arith::ZPoly;
use crate::qobjects::HyperTerm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct CoverPoly {
    n: usize,
    c: Vec<BigInt>,
}

impl CoverPoly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            c: vec![BigInt::zero(); 2 * n],
        }
    }

    pub fn one(n: usize) -> Self {
        let mut p = Self::zero(n);
        p.c[0] = BigInt::one();
        p
    }

    /// `self += c · q^e`.
    fn add_monomial(&mut self, c: &BigInt, e: i64) {
        let n = self.n as i64;
        let (a, b) = (e.div_euclid(n), e.rem_euclid(n) as usize);
        match a {
            0 => self.c[b] += c,
            1 => self.c[b + self.n] += c,
            _ => {
                self.c[b] += c * (1 - a);
                self.c[b + self.n] += c * a;
            }
        }
    }

    pub fn mul_q_power(&self, e: i64) -> Self {
        if e == 0 {
            return self.clone();
        }
        let mut out = Self::zero(self.n);
        for (i, c) in self.c.iter().enumerate() {
            if !c.is_zero() {
                out.add_monomial(c, i as i64 + e);
            }
        }
        out
    }

    /// `self · (1 - q^m)`.
    pub fn mul_binomial(&mut self, m: usize) {
        let shifted = self.mul_q_power(m as i64);
        for (a, b) in self.c.iter_mut().zip(shifted.c) {
            *a -= b;
        }
    }

    pub fn scale(&mut self, k: &BigInt) {
        if !k.is_one() {
            for a in &mut self.c {
                *a *= k;
            }
        }
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a += b;
        }
    }

    pub fn to_zpoly(&self) -> ZPoly {
        ZPoly::new(self.c.clone())
    }
}

/// The numerator `N` and binomial denominator `D` of a sum of terms, with
/// `Σ t_k = N / (L · D)` for the integer `L` and `D = ∏ (1 - q^m)^{e_m}`.
pub(crate) struct CoverSum {
    pub numerator: CoverPoly,
    pub den_const: BigInt,
    pub den: BTreeMap<usize, u32>,
}

/// Sums `terms` in `Z[q]/((qⁿ - 1)²)` over their common binomial denominator.
///
/// Fails with `NonInvertibleDenominator` when some denominator binomial
/// `1 - q^m` is divisible by a cyclotomic factor of the modulus, which happens
/// exactly when `d | m` for some `Φ_d` in the support.
pub(crate) fn cover_sum(
    terms: &[HyperTerm],
    ctx: &ModulusContext,
) -> Result<CoverSum, CongruenceError> {
    let n = ctx.n() as usize;
    let mut live = Vec::with_capacity(terms.len());
    for t in terms {
        if t.is_pole() {
            return Err(CongruenceError::Arith(crate::arith::ArithError::Pole));
        }
        if !t.is_zero() {
            live.push(t);
        }
    }
    let den_const = live
        .iter()
        .fold(BigInt::one(), |acc, t| acc.lcm(t.coeff().denom()));

    let mut den: BTreeMap<usize, u32> = BTreeMap::new();
    let mut acc = CoverPoly::zero(n);
    for t in live {
        let mut need: BTreeMap<usize, u32> = BTreeMap::new();
        for (&m, &e) in t.factors() {
            if e < 0 {
                need.insert(m, (-e) as u32);
            }
        }
        for &m in need.keys() {
            if ctx.support().iter().any(|&(d, _)| m as u64 % d == 0) {
                return Err(CongruenceError::NonInvertibleDenominator);
            }
        }
        // Lift the running numerator to the enlarged denominator.
        for (&m, &e) in &need {
            let have = den.get(&m).copied().unwrap_or(0);
            for _ in have..e {
                acc.mul_binomial(m);
            }
            if e > have {
                den.insert(m, e);
            }
        }
        // The new term over the same denominator.
        let mut p = CoverPoly::one(n);
        for (&m, &e) in t.factors() {
            if e > 0 {
                for _ in 0..e {
                    p.mul_binomial(m);
                }
            }
        }
        for (&m, &e) in &den {
            let own = need.get(&m).copied().unwrap_or(0);
            for _ in own..e {
                p.mul_binomial(m);
            }
        }
        let mut p = p.mul_q_power(t.shift());
        p.scale(&(t.coeff().numer() * (&den_const / t.coeff().denom())));
        acc.add_assign(&p);
    }
    Ok(CoverSum {
        numerator: acc,
        den_const,
        den,
    })
}

impl CoverSum {
    /// `N mod M`; zero exactly when the sum is congruent to zero.
    pub fn numerator_mod(&self, ctx: &ModulusContext) -> ZPoly {
        self.numerator
            .to_zpoly()
            .rem_monic(ctx.modulus_z())
            .expect("modulus is monic")
    }

    /// `L · D mod M`.
    pub fn denominator_mod(&self, ctx: &ModulusContext) -> ZPoly {
        let mut d = CoverPoly::one(ctx.n() as usize);
        for (&m, &e) in &self.den {
            for _ in 0..e {
                d.mul_binomial(m);
            }
        }
        d.scale(&self.den_const);
        d.to_zpoly()
            .rem_monic(ctx.modulus_z())
            .expect("modulus is monic")
    }
}
