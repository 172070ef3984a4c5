//! q-hypergeometric terms in factored form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_traits::{One, Zero};

use crate::arith::{ArithError, QFraction, Rational};

/// `coeff · q^shift · ∏_m (1 - q^m)^{e_m}` with `m >= 1` and signed `e_m`.
///
/// Factors `1 - q^0 = 0` are tracked separately through `zero_order`, the net
/// number of such factors in the numerator. A positive order makes the term
/// zero; this is how `1/(q^4;q^4)_m = 0` for negative `m` falls out of the
/// standard extension `(a;q)_{-m} = 1/(a q^{-m};q)_m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HyperTerm {
    coeff: Rational,
    shift: i64,
    factors: BTreeMap<usize, i64>,
    zero_order: i32,
}

impl HyperTerm {
    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn constant(c: Rational) -> Self {
        Self {
            coeff: c,
            shift: 0,
            factors: BTreeMap::new(),
            zero_order: 0,
        }
    }

    /// `±1` according to the parity of `e`.
    pub fn sign(e: i64) -> Self {
        Self::constant(Rational::from_integer(
            if e.rem_euclid(2) == 0 { 1 } else { -1 }.into(),
        ))
    }

    /// `q^e`.
    pub fn q_power(e: i64) -> Self {
        Self {
            shift: e,
            ..Self::one()
        }
    }

    /// `1 - q^e` for any integer `e`; negative exponents are normalized via
    /// `1 - q^{-a} = -q^{-a} (1 - q^a)`.
    pub fn binomial(e: i64) -> Self {
        let mut t = Self::one();
        t.push_binomial(e, 1);
        t
    }

    fn push_binomial(&mut self, e: i64, times: i64) {
        match e.cmp(&0) {
            std::cmp::Ordering::Greater => {
                *self.factors.entry(e as usize).or_insert(0) += times;
            }
            std::cmp::Ordering::Equal => self.zero_order += times as i32,
            std::cmp::Ordering::Less => {
                if times.rem_euclid(2) == 1 {
                    self.coeff = -&self.coeff;
                }
                self.shift += e * times;
                *self.factors.entry((-e) as usize).or_insert(0) += times;
            }
        }
        self.factors.retain(|_, v| *v != 0);
    }

    /// `(q^base; q^step)_count`, including negative `count` through
    /// `(a;q)_{-m} = 1 / ∏_{j=1}^{m} (1 - a q^{-j})`.
    pub fn qpoch(base: i64, step: i64, count: i64) -> Self {
        assert!(step >= 1, "q-shifted factorial step must be positive");
        let mut t = Self::one();
        if count >= 0 {
            for j in 0..count {
                t.push_binomial(base + j * step, 1);
            }
        } else {
            for j in 1..=(-count) {
                t.push_binomial(base - j * step, -1);
            }
        }
        t
    }

    /// The q-integer `[a] = (1 - q^a)/(1 - q)`; `[0] = 0`.
    pub fn qint(a: i64) -> Self {
        let mut t = Self::binomial(a);
        t.push_binomial(1, -1);
        t
    }

    pub fn pow(&self, e: i32) -> Self {
        let mut acc = Self::one();
        let base = if e < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        acc
    }

    /// The same term with `q` replaced by `1/q`, using
    /// `1 - q^{-m} = -q^{-m} (1 - q^m)`.
    pub fn invert_variable(&self) -> Self {
        let mut t = self.clone();
        t.shift = -self.shift;
        for (&m, &e) in &self.factors {
            t.shift -= m as i64 * e;
            if e.rem_euclid(2) == 1 {
                t.coeff = -t.coeff;
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero() || self.zero_order > 0
    }

    pub fn is_pole(&self) -> bool {
        !self.coeff.is_zero() && self.zero_order < 0
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn factors(&self) -> &BTreeMap<usize, i64> {
        &self.factors
    }

    /// Expand into a [`QFraction`].
    pub fn to_fraction(&self) -> Result<QFraction, ArithError> {
        if self.is_zero() {
            return Ok(QFraction::zero());
        }
        if self.is_pole() {
            return Err(ArithError::Pole);
        }
        let mut f = QFraction::one();
        f.mul_factors(&self.coeff, self.shift, &self.factors);
        Ok(f)
    }

    /// Exact value at a rational point.
    pub fn eval(&self, q: &Rational) -> Result<Rational, ArithError> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        if self.is_pole() {
            return Err(ArithError::Pole);
        }
        let pow = |e: i64| -> Result<Rational, ArithError> {
            if q.is_zero() && e < 0 {
                return Err(ArithError::Pole);
            }
            let b = if e < 0 { q.recip() } else { q.clone() };
            Ok((0..e.abs()).fold(Rational::one(), |acc, _| acc * &b))
        };
        let mut v = self.coeff.clone() * pow(self.shift)?;
        for (&m, &e) in &self.factors {
            let b = Rational::one() - pow(m as i64)?;
            if b.is_zero() {
                return Err(ArithError::Pole);
            }
            let f = if e < 0 { b.recip() } else { b };
            for _ in 0..e.abs() {
                v *= &f;
            }
        }
        Ok(v)
    }
}

impl Mul for HyperTerm {
    type Output = HyperTerm;
    fn mul(mut self, rhs: HyperTerm) -> HyperTerm {
        self.coeff *= rhs.coeff;
        self.shift += rhs.shift;
        self.zero_order += rhs.zero_order;
        for (m, e) in rhs.factors {
            *self.factors.entry(m).or_insert(0) += e;
        }
        self.factors.retain(|_, v| *v != 0);
        self
    }
}

impl Div for HyperTerm {
    type Output = HyperTerm;
    fn div(mut self, rhs: HyperTerm) -> HyperTerm {
        assert!(
            !rhs.coeff.is_zero(),
            "division by a zero hypergeometric term"
        );
        self.coeff /= rhs.coeff;
        self.shift -= rhs.shift;
        self.zero_order -= rhs.zero_order;
        for (m, e) in rhs.factors {
            *self.factors.entry(m).or_insert(0) -= e;
        }
        self.factors.retain(|_, v| *v != 0);
        self
    }
}

impl Neg for HyperTerm {
    type Output = HyperTerm;
    fn neg(mut self) -> HyperTerm {
        self.coeff = -self.coeff;
        self
    }
}

impl fmt::Display for HyperTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.coeff)?;
        if self.shift != 0 {
            write!(f, " * q^({})", self.shift)?;
        }
        for (m, e) in &self.factors {
            write!(f, " * (1 - q^{m})^({e})")?;
        }
        if self.zero_order < 0 {
            write!(f, " / 0^{}", -self.zero_order)?;
        }
        Ok(())
    }
}

/// Sum of q-hypergeometric terms as a single [`QFraction`].
///
/// Nested Horner evaluation over consecutive term ratios:
/// `t_0 (1 + r_1 (1 + r_2 (⋯ (1 + r_K))))`. Each ratio has only a handful of
/// binomial factors, so every step is linear in the running degree.
pub fn sum_terms<I>(terms: I) -> Result<QFraction, ArithError>
where
    I: IntoIterator<Item = HyperTerm>,
{
    let terms: Vec<HyperTerm> = terms.into_iter().filter(|t| !t.is_zero()).collect();
    if terms.iter().any(HyperTerm::is_pole) {
        return Err(ArithError::Pole);
    }
    let Some(first) = terms.first() else {
        return Ok(QFraction::zero());
    };
    let one = QFraction::one();
    let mut acc = QFraction::one();
    for pair in terms.windows(2).rev() {
        let ratio = pair[1].clone() / pair[0].clone();
        debug_assert_eq!(ratio.zero_order, 0);
        acc.mul_factors(&ratio.coeff, ratio.shift, &ratio.factors);
        acc = acc.add(&one);
    }
    acc.mul_factors(&first.coeff, first.shift, &first.factors);
    Ok(acc)
}
