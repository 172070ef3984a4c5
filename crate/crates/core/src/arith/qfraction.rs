//! Fractions whose denominators are products of binomials `1 - q^m`.
//!
//! Every summand in this crate has such a denominator, and `1 - q^m` can be
//! multiplied in or divided out in linear time, so sums of a few dozen terms
//! with denominators of degree several thousand stay cheap. Reduction to a
//! canonical [`LaurentRatFunc`] happens only on request, by stripping
//! cyclotomic factors `Φ_d` from the numerator.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cyclotomic::{div_cyclotomic, divisors, mobius};
use super::laurent::pow_i;
use super::poly::ZPoly;
use super::ratfunc::{LaurentRatFunc, RatFunc};
use super::rational::Rational;
use super::ArithError;

/// `q^shift · num / (den_const · ∏_m (1 - q^m)^{e_m})`.
///
/// `num` is an integer polynomial with nonzero constant term (or zero), and
/// `den_const` is positive. The expanded binomial product is cached.
#[derive(Clone, Debug)]
pub struct QFraction {
    num: ZPoly,
    shift: i64,
    den_const: BigInt,
    den: BTreeMap<usize, u32>,
    den_poly: ZPoly,
}

impl QFraction {
    pub fn zero() -> Self {
        Self {
            num: ZPoly::zero(),
            shift: 0,
            den_const: BigInt::one(),
            den: BTreeMap::new(),
            den_poly: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(ZPoly::one())
    }

    pub fn from_poly(p: ZPoly) -> Self {
        let mut out = Self::zero();
        out.num = p;
        out.normalize();
        out
    }

    /// `c · q^e` for a rational `c`.
    pub fn monomial(c: &Rational, e: i64) -> Self {
        let mut out = Self::from_poly(ZPoly::constant(c.numer().clone()));
        out.shift += e;
        out.den_const = c.denom().clone();
        out.normalize();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn den_const(&self) -> &BigInt {
        &self.den_const
    }

    /// Binomial exponents `m -> e_m` of the denominator.
    pub fn den_binomials(&self) -> &BTreeMap<usize, u32> {
        &self.den
    }

    /// `∏_m (1 - q^m)^{e_m}`, expanded.
    pub fn den_poly(&self) -> &ZPoly {
        &self.den_poly
    }

    fn normalize(&mut self) {
        match self.num.low_degree() {
            None => *self = Self::zero_keep(),
            Some(0) => {}
            Some(k) => {
                self.num = self.num.shift_down(k);
                self.shift += k as i64;
            }
        }
    }

    fn zero_keep() -> Self {
        Self::zero()
    }

    /// Multiply by `c · q^s · ∏ (1 - q^m)^{e_m}` with signed exponents.
    pub fn mul_factors(&mut self, c: &Rational, s: i64, factors: &BTreeMap<usize, i64>) {
        if self.is_zero() {
            return;
        }
        if c.is_zero() {
            *self = Self::zero();
            return;
        }
        if !c.numer().is_one() {
            self.num = self.num.scale(c.numer());
        }
        self.den_const *= c.denom();
        self.shift += s;
        for (&m, &e) in factors {
            if e > 0 {
                for _ in 0..e {
                    self.num.mul_binomial(m);
                }
            } else {
                for _ in 0..(-e) {
                    self.den_poly.mul_binomial(m);
                }
                *self.den.entry(m).or_insert(0) += (-e) as u32;
            }
        }
        self.normalize();
    }

    /// `self · (1 - q^m)^{-e}` applied to the denominator only.
    fn lift_den(&self, target: &BTreeMap<usize, u32>) -> ZPoly {
        let mut p = self.num.clone();
        for (&m, &e) in target {
            let have = self.den.get(&m).copied().unwrap_or(0);
            for _ in have..e {
                p.mul_binomial(m);
            }
        }
        p
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { rhs.neg() } else { rhs.clone() };
        }
        let mut den = self.den.clone();
        for (&m, &e) in &rhs.den {
            let slot = den.entry(m).or_insert(0);
            *slot = (*slot).max(e);
        }
        let den_const = self.den_const.lcm(&rhs.den_const);
        let s = self.shift.min(rhs.shift);
        let a = self
            .lift_den(&den)
            .scale(&(&den_const / &self.den_const))
            .shift_up((self.shift - s) as usize);
        let b = rhs
            .lift_den(&den)
            .scale(&(&den_const / &rhs.den_const))
            .shift_up((rhs.shift - s) as usize);
        let num = if negate { &a - &b } else { &a + &b };
        let mut den_poly = self.den_poly.clone();
        for (&m, &e) in &den {
            let have = self.den.get(&m).copied().unwrap_or(0);
            for _ in have..e {
                den_poly.mul_binomial(m);
            }
        }
        let mut out = Self {
            num,
            shift: s,
            den_const,
            den,
            den_poly,
        };
        out.normalize();
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, true)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.num = -&out.num;
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (&m, &e) in &rhs.den {
            *den.entry(m).or_insert(0) += e;
        }
        let mut out = Self {
            num: &self.num * &rhs.num,
            shift: self.shift + rhs.shift,
            den_const: &self.den_const * &rhs.den_const,
            den,
            den_poly: &self.den_poly * &rhs.den_poly,
        };
        out.normalize();
        out
    }

    /// Exponents `d -> E_d` of `Φ_d` in the binomial product, together with the
    /// sign: `∏ (1 - q^m)^{e_m} = (-1)^{Σ e_m} ∏ Φ_d^{E_d}`.
    pub fn den_cyclotomic_exponents(&self) -> (BTreeMap<u64, u32>, bool) {
        let mut out = BTreeMap::new();
        let mut parity = 0u32;
        for (&m, &e) in &self.den {
            parity += e;
            for d in divisors(m as u64) {
                *out.entry(d).or_insert(0) += e;
            }
        }
        (out, parity % 2 == 1)
    }

    /// `(v, e)`: `v` is the multiplicity of `Φ_d` in the numerator (capped at
    /// `e + extra`) and `e` its exponent in the unreduced denominator.
    pub fn cyclotomic_balance(&self, d: u64, extra: u32) -> (u32, u32) {
        let e = self
            .den
            .iter()
            .filter(|(&m, _)| m as u64 % d == 0)
            .map(|(_, &e)| e)
            .sum();
        let v = super::cyclotomic::cyclotomic_valuation(&self.num, d, e + extra);
        (v, e)
    }

    /// Canonical reduced form.
    pub fn reduce(&self) -> LaurentRatFunc {
        if self.is_zero() {
            return LaurentRatFunc::zero();
        }
        let (exps, negative) = self.den_cyclotomic_exponents();
        let mut num = self.num.clone();
        let mut remaining = BTreeMap::new();
        for (&d, &e) in &exps {
            let mut left = e;
            while left > 0 {
                match div_cyclotomic(&num, d) {
                    Some(next) => {
                        num = next;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                remaining.insert(d, left);
            }
        }
        let den = expand_cyclotomic_product(&remaining);
        let mut scale = BigRational::from_integer(self.den_const.clone()).recip();
        if negative {
            scale = -scale;
        }
        let frac = RatFunc::from_reduced_parts(num.to_rational().scale(&scale), den.to_rational());
        LaurentRatFunc::new(frac, self.shift)
    }

    /// Exact value at a rational point.
    pub fn eval(&self, q: &Rational) -> Result<Rational, ArithError> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        let qz = |p: &ZPoly| -> Rational {
            p.coeffs().iter().rev().fold(Rational::zero(), |acc, c| {
                acc * q + Rational::from_integer(c.clone())
            })
        };
        let d = qz(&self.den_poly) * Rational::from_integer(self.den_const.clone());
        if d.is_zero() || (q.is_zero() && self.shift < 0) {
            return Err(ArithError::Pole);
        }
        Ok(qz(&self.num) / d * pow_i(q, self.shift))
    }
}

/// `∏ Φ_d^{c_d}` expanded, computed from binomials via Möbius inversion.
pub fn expand_cyclotomic_product(exps: &BTreeMap<u64, u32>) -> ZPoly {
    let mut beta: BTreeMap<u64, i64> = BTreeMap::new();
    let mut sign_flip = false;
    for (&d, &c) in exps {
        if c == 0 {
            continue;
        }
        if d == 1 {
            // Φ_1 = -(1 - q)
            *beta.entry(1).or_insert(0) += c as i64;
            sign_flip ^= c % 2 == 1;
            continue;
        }
        for m in divisors(d) {
            let mu = mobius(d / m) as i64;
            if mu != 0 {
                *beta.entry(m).or_insert(0) += mu * c as i64;
            }
        }
    }
    let mut p = ZPoly::one();
    for (&m, &b) in &beta {
        for _ in 0..b.max(0) {
            p.mul_binomial(m as usize);
        }
    }
    for (&m, &b) in &beta {
        for _ in 0..(-b).max(0) {
            p = p
                .div_binomial(m as usize)
                .expect("cyclotomic product is a polynomial");
        }
    }
    if sign_flip {
        p = -p;
    }
    p
}

impl fmt::Display for QFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^({}) * ({})", self.shift, self.num)?;
        if !self.den.is_empty() || !self.den_const.is_one() {
            write!(f, " / ({}", self.den_const)?;
            for (m, e) in &self.den {
                write!(f, " * (1 - q^{m})^{e}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl PartialEq for QFraction {
    /// Equality of values, by cross-multiplication.
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::cyclotomic::{cyclotomic_z, CycIndex};
    use crate::arith::poly::Poly;
    use crate::arith::rational::rat;

    fn f(factors: &[(usize, i64)], s: i64, c: Rational) -> QFraction {
        let mut out = QFraction::one();
        out.mul_factors(&c, s, &factors.iter().copied().collect());
        out
    }

    #[test]
    fn expand_matches_direct_product() {
        let exps: BTreeMap<u64, u32> = [(1, 2), (3, 1), (4, 2), (12, 1)].into_iter().collect();
        let mut direct = ZPoly::one();
        for (&d, &c) in &exps {
            for _ in 0..c {
                direct = &direct * &*cyclotomic_z(CycIndex::new(d).unwrap());
            }
        }
        assert_eq!(expand_cyclotomic_product(&exps), direct);
    }

    #[test]
    fn reduce_cancels_shared_cyclotomics() {
        // (1-q)^2 / (1-q^4) = (1-q)/((1+q)(1+q^2))
        let x = f(&[(1, 2), (4, -1)], 0, rat(1, 1));
        let r = x.reduce();
        assert_eq!(r.num(), &Poly::from_i64s(&[1, -1]));
        assert_eq!(r.den(), &Poly::from_i64s(&[1, 1, 1, 1]));
        assert_eq!(r.shift(), 0);
    }

    #[test]
    fn addition_matches_rational_evaluation() {
        let a = f(&[(3, 1), (2, -2)], -2, rat(-3, 2));
        let b = f(&[(1, 1), (6, -1)], 1, rat(5, 7));
        let s = a.add(&b);
        let d = a.sub(&b);
        for q in [rat(1, 3), rat(2, 5), rat(-4, 3)] {
            let av = a.eval(&q).unwrap();
            let bv = b.eval(&q).unwrap();
            assert_eq!(s.eval(&q).unwrap(), &av + &bv);
            assert_eq!(d.eval(&q).unwrap(), &av - &bv);
            assert_eq!(a.mul(&b).eval(&q).unwrap(), &av * &bv);
            assert_eq!(s.reduce().eval(&q).unwrap(), &av + &bv);
        }
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn cyclotomic_balance_counts_both_sides() {
        // Φ_3^2 Φ_5 / (1-q^3)^2  ->  numerator v_3 = 2, denominator e_3 = 2
        let num = &(&*cyclotomic_z(CycIndex::new(3).unwrap())
            * &*cyclotomic_z(CycIndex::new(3).unwrap()))
            * &*cyclotomic_z(CycIndex::new(5).unwrap());
        let mut x = QFraction::from_poly(num);
        x.mul_factors(&rat(1, 1), 0, &[(3usize, -2i64)].into_iter().collect());
        assert_eq!(x.cyclotomic_balance(3, 1), (2, 2));
        assert_eq!(x.cyclotomic_balance(5, 0), (0, 0));
        assert_eq!(x.cyclotomic_balance(1, 5), (0, 2));
    }
}
