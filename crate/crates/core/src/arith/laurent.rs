//! Laurent polynomials `q^shift · body`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{write_terms, Poly};
use super::rational::Rational;

/// `q^shift · body`, with `body(0) != 0` unless the value is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    body: Poly,
    shift: i64,
}

impl LaurentPoly {
    /// Canonicalizes by moving powers of `q` out of the body into the shift.
    pub fn new(body: Poly, shift: i64) -> Self {
        match body.low_degree() {
            None => Self::zero(),
            Some(0) => Self { body, shift },
            Some(k) => Self {
                body: body.shift_down(k),
                shift: shift + k as i64,
            },
        }
    }

    pub fn zero() -> Self {
        Self {
            body: Poly::zero(),
            shift: 0,
        }
    }

    pub fn one() -> Self {
        Self::from(Poly::one())
    }

    /// `c · q^e`.
    pub fn monomial(c: Rational, e: i64) -> Self {
        Self::new(Poly::constant(c), e)
    }

    /// `(-q)^e` for any integer `e`.
    pub fn neg_q_power(e: i64) -> Self {
        let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(BigRational::from_integer(sign.into()), e)
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Lowest and highest exponents present.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        self.body
            .degree()
            .map(|d| (self.shift, self.shift + d as i64))
    }

    /// Split as `q^shift · body` with `shift <= 0` folded into a denominator:
    /// returns `(numerator, k)` such that `self = numerator / q^k`, `k >= 0`.
    pub fn to_poly_over_q_power(&self) -> (Poly, u64) {
        if self.shift >= 0 {
            (self.body.shift_up(self.shift as usize), 0)
        } else {
            (self.body.clone(), self.shift.unsigned_abs())
        }
    }

    /// Evaluate at a nonzero rational.
    pub fn eval(&self, q: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let base = self.body.eval(q);
        base * pow_i(q, self.shift)
    }
}

/// `q^e` for integer `e` (`q != 0` when `e < 0`).
pub(crate) fn pow_i(q: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    let b = if e < 0 { q.recip() } else { q.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &b;
    }
    acc
}

impl From<Poly> for LaurentPoly {
    fn from(p: Poly) -> Self {
        Self::new(p, 0)
    }
}

fn align(a: &LaurentPoly, b: &LaurentPoly) -> (Poly, Poly, i64) {
    let s = a.shift.min(b.shift);
    (
        a.body.shift_up((a.shift - s) as usize),
        b.body.shift_up((b.shift - s) as usize),
        s,
    )
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, s) = align(self, rhs);
        LaurentPoly::new(&a + &b, s)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::new(&self.body * &rhs.body, self.shift + rhs.shift)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            body: -&self.body,
            shift: self.shift,
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.body.coeffs(), self.shift)
    }
}

/// Construct the canonical Laurent polynomial `q^shift · body`.
pub fn laurent_canon(body: Poly, shift: i64) -> LaurentPoly {
    LaurentPoly::new(body, shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_shift() {
        let l = laurent_canon(Poly::from_i64s(&[0, 0, 1]), -3);
        assert_eq!(l.body(), &Poly::one());
        assert_eq!(l.shift(), -1);
    }

    #[test]
    fn whipple_right_side_for_three() {
        // (1 - 9) / 8 = -1
        let l = LaurentPoly::neg_q_power((1 - 9) / 8);
        assert_eq!(l.body(), &Poly::from_i64s(&[-1]));
        assert_eq!(l.shift(), -1);
        assert_eq!(LaurentPoly::neg_q_power(0), LaurentPoly::one());
    }

    #[test]
    fn zero_has_zero_shift() {
        let z = laurent_canon(Poly::zero(), 7);
        assert_eq!(z.shift(), 0);
        assert!(z.is_zero());
    }

    #[test]
    fn aligned_arithmetic() {
        let a = laurent_canon(Poly::from_i64s(&[1, 1]), -2); // q^-2 + q^-1
        let b = laurent_canon(Poly::from_i64s(&[-1]), -1); // -q^-1
        let s = &a + &b;
        assert_eq!(s, LaurentPoly::monomial(Rational::one(), -2));
        let p = &a * &b;
        assert_eq!(p, laurent_canon(Poly::from_i64s(&[-1, -1]), -3));
        assert_eq!(s.to_string(), "q^(-2)");
    }

    #[test]
    fn evaluation() {
        let a = laurent_canon(Poly::from_i64s(&[1, 1]), -1);
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(a.eval(&half), Rational::from_integer(3.into()));
    }
}
