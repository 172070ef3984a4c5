//! Reduced rational functions in `q`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use super::gcd::gcd;
use super::laurent::{pow_i, LaurentPoly};
use super::poly::Poly;
use super::rational::Rational;
use super::ArithError;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Reduce `num / den` to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = gcd(&num, &den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g)?.0, den.div_rem(&g)?.0)
        };
        let lead = den.leading().expect("nonzero").recip();
        Ok(Self {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    /// Trusts the caller that the parts are coprime and `den` is monic.
    pub(crate) fn from_reduced_parts(num: Poly, den: Poly) -> Self {
        debug_assert!(den.is_monic());
        if num.is_zero() {
            return Self::zero();
        }
        Self { num, den }
    }

    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from(Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Evaluate at a rational point that is not a pole.
    pub fn eval(&self, q: &Rational) -> Result<Rational, ArithError> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return Err(ArithError::Pole);
        }
        Ok(self.num.eval(q) / d)
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Self {
        let a = &self.num * &rhs.den;
        let b = &rhs.num * &self.den;
        let n = if negate { &a - &b } else { &a + &b };
        Self::new(n, &self.den * &rhs.den).expect("product of nonzero denominators")
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: Self) -> RatFunc {
        self.combine(rhs, false)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: Self) -> RatFunc {
        self.combine(rhs, true)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: Self) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Div for &RatFunc {
    type Output = Result<RatFunc, ArithError>;
    fn div(self, rhs: Self) -> Result<RatFunc, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Build a reduced rational function.
pub fn ratfunc_make(num: Poly, den: Poly) -> Result<RatFunc, ArithError> {
    RatFunc::new(num, den)
}

/// `q^shift · num / den`: a rational function whose numerator may carry
/// negative powers of `q`.
///
/// Canonical form: the inner function is reduced, and neither its numerator
/// nor its denominator is divisible by `q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentRatFunc {
    shift: i64,
    frac: RatFunc,
}

impl LaurentRatFunc {
    pub fn new(frac: RatFunc, shift: i64) -> Self {
        if frac.is_zero() {
            return Self::zero();
        }
        let a = frac.num.low_degree().unwrap_or(0);
        let b = frac.den.low_degree().unwrap_or(0);
        Self {
            shift: shift + a as i64 - b as i64,
            frac: RatFunc {
                num: frac.num.shift_down(a),
                den: frac.den.shift_down(b),
            },
        }
    }

    pub fn zero() -> Self {
        Self {
            shift: 0,
            frac: RatFunc::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from(RatFunc::one())
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// The `q`-free rational function multiplying `q^shift`.
    pub fn frac(&self) -> &RatFunc {
        &self.frac
    }

    pub fn num(&self) -> &Poly {
        &self.frac.num
    }

    pub fn den(&self) -> &Poly {
        &self.frac.den
    }

    pub fn is_zero(&self) -> bool {
        self.frac.is_zero()
    }

    /// Multiply by `q^k`.
    pub fn mul_q_power(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            shift: self.shift + k,
            frac: self.frac.clone(),
        }
    }

    /// Substitute `q -> 1/q`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.frac.num.degree().unwrap_or(0) as i64;
        let dd = self.frac.den.degree().unwrap_or(0) as i64;
        let frac = RatFunc::new(self.frac.num.reversed(), self.frac.den.reversed())
            .expect("reversal keeps a nonzero denominator");
        Self::new(frac, dd - dn - self.shift)
    }

    pub fn eval(&self, q: &Rational) -> Result<Rational, ArithError> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        if q.is_zero() {
            return Err(ArithError::Pole);
        }
        Ok(self.frac.eval(q)? * pow_i(q, self.shift))
    }

    /// Plain rational function, valid when the shift is nonnegative.
    pub fn to_ratfunc(&self) -> Option<RatFunc> {
        if self.shift < 0 {
            return None;
        }
        Some(RatFunc {
            num: self.frac.num.shift_up(self.shift as usize),
            den: self.frac.den.clone(),
        })
    }

    /// `(numerator, k)` with `self = numerator / (q^k · den)`, numerator a polynomial.
    pub fn cleared(&self) -> (Poly, u64) {
        if self.shift >= 0 {
            (self.frac.num.shift_up(self.shift as usize), 0)
        } else {
            (self.frac.num.clone(), self.shift.unsigned_abs())
        }
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -rhs } else { rhs.clone() };
        }
        let s = self.shift.min(rhs.shift);
        let a = RatFunc {
            num: self.frac.num.shift_up((self.shift - s) as usize),
            den: self.frac.den.clone(),
        };
        let b = RatFunc {
            num: rhs.frac.num.shift_up((rhs.shift - s) as usize),
            den: rhs.frac.den.clone(),
        };
        let sum = if negate { &a - &b } else { &a + &b };
        Self::new(sum, s)
    }
}

impl From<RatFunc> for LaurentRatFunc {
    fn from(frac: RatFunc) -> Self {
        Self::new(frac, 0)
    }
}

impl From<LaurentPoly> for LaurentRatFunc {
    fn from(p: LaurentPoly) -> Self {
        Self::new(RatFunc::from(p.body().clone()), p.shift())
    }
}

impl Add for &LaurentRatFunc {
    type Output = LaurentRatFunc;
    fn add(self, rhs: Self) -> LaurentRatFunc {
        self.combine(rhs, false)
    }
}

impl Sub for &LaurentRatFunc {
    type Output = LaurentRatFunc;
    fn sub(self, rhs: Self) -> LaurentRatFunc {
        self.combine(rhs, true)
    }
}

impl Mul for &LaurentRatFunc {
    type Output = LaurentRatFunc;
    fn mul(self, rhs: Self) -> LaurentRatFunc {
        LaurentRatFunc::new(&self.frac * &rhs.frac, self.shift + rhs.shift)
    }
}

impl Div for &LaurentRatFunc {
    type Output = Result<LaurentRatFunc, ArithError>;
    fn div(self, rhs: Self) -> Result<LaurentRatFunc, ArithError> {
        Ok(LaurentRatFunc::new(
            (&self.frac / &rhs.frac)?,
            self.shift - rhs.shift,
        ))
    }
}

impl Neg for &LaurentRatFunc {
    type Output = LaurentRatFunc;
    fn neg(self) -> LaurentRatFunc {
        LaurentRatFunc {
            shift: self.shift,
            frac: -&self.frac,
        }
    }
}

impl fmt::Display for LaurentRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shift {
            0 => write!(f, "{}", self.frac),
            _ if self.is_zero() => write!(f, "0"),
            1 => write!(f, "q * ({})", self.frac),
            s => write!(f, "q^({s}) * ({})", self.frac),
        }
    }
}
