//! Dense univariate polynomials in `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::{Coeff, FieldCoeff};
use super::ArithError;

/// Dense polynomial; index `i` of the coefficient vector holds the coefficient of `q^i`.
///
/// The highest stored coefficient is always nonzero, so the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DensePoly<C> {
    coeffs: Vec<C>,
}

/// Polynomial over the rationals.
pub type Poly = DensePoly<BigRational>;

/// Polynomial over the integers.
pub type ZPoly = DensePoly<BigInt>;

impl<C: Coeff> DensePoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// `1 - q^m` (zero when `m == 0`).
    pub fn binomial(m: usize) -> Self {
        let mut p = Self::one();
        p.mul_binomial(m);
        p
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| C::from_i64(v)).collect())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `q^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Exponent of the lowest nonzero term.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Divide by `q^k`; the low `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        if k >= self.coeffs.len() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// In-place multiplication by `1 - q^m`.
    pub fn mul_binomial(&mut self, m: usize) {
        if self.is_zero() {
            return;
        }
        if m == 0 {
            self.coeffs.clear();
            return;
        }
        let old_len = self.coeffs.len();
        self.coeffs.resize(old_len + m, C::zero());
        for i in (m..old_len + m).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0].sub_assign_ref(&lo[i - m]);
        }
        self.trim();
    }

    /// Exact division by `1 - q^m`; `None` when `1 - q^m` does not divide `self`.
    pub fn div_binomial(&self, m: usize) -> Option<Self> {
        if m == 0 {
            return None;
        }
        let Some(deg) = self.degree() else {
            return Some(Self::zero());
        };
        if deg < m {
            return None;
        }
        let qlen = deg - m + 1;
        let mut quot: Vec<C> = Vec::with_capacity(qlen);
        for i in 0..qlen {
            let mut c = self.coeffs[i].clone();
            if i >= m {
                c.add_assign_ref(&quot[i - m]);
            }
            quot.push(c);
        }
        // (1 - q^m) * quot must reproduce the top m coefficients.
        for i in qlen..=deg {
            let mut c = self.coeffs[i].clone();
            if i >= m {
                c.add_assign_ref(&quot[i - m]);
            }
            if !c.is_zero() {
                return None;
            }
        }
        Some(Self::new(quot))
    }

    /// Polynomial long division by a monic divisor; works over any ring.
    pub fn div_rem_monic(&self, d: &Self) -> Result<(Self, Self), ArithError> {
        let dd = d.degree().ok_or(ArithError::DivisionByZero)?;
        if !d.is_monic() {
            return Err(ArithError::NotMonic);
        }
        let Some(deg) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if deg < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![C::zero(); deg - dd + 1];
        let support: Vec<(usize, &C)> = d.coeffs[..dd]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for i in (0..=deg - dd).rev() {
            let lead = std::mem::replace(&mut rem[i + dd], C::zero());
            if lead.is_zero() {
                continue;
            }
            for &(j, c) in &support {
                rem[i + j].sub_assign_ref(&lead.mul_ref(c));
            }
            quot[i] = lead;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Remainder modulo a monic divisor.
    pub fn rem_monic(&self, d: &Self) -> Result<Self, ArithError> {
        Ok(self.div_rem_monic(d)?.1)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x);
            acc.add_assign_ref(c);
        }
        acc
    }

    /// Coefficient reversal `q^deg * p(1/q)`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> DensePoly<D> {
        DensePoly::new(self.coeffs.iter().map(f).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = self.coeffs.clone();
        out.resize(n, C::zero());
        for (o, c) in out.iter_mut().zip(&rhs.coeffs) {
            if negate {
                o.sub_assign_ref(c);
            } else {
                o.add_assign_ref(c);
            }
        }
        Self::new(out)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        let rhs_support: Vec<(usize, &C)> = rhs
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs_support {
                out[i + j].add_assign_ref(&a.mul_ref(b));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl<C: FieldCoeff> DensePoly<C> {
    /// Euclidean division; `deg(rem) < deg(d)`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), ArithError> {
        let lead = d.leading().ok_or(ArithError::DivisionByZero)?;
        let inv = lead.inv_ref();
        let monic = d.scale(&inv);
        let (q, r) = self.div_rem_monic(&monic)?;
        Ok((q.scale(&inv), r))
    }

    /// Scale to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.inv_ref()),
            _ => self.clone(),
        }
    }
}

impl ZPoly {
    pub fn to_rational(&self) -> Poly {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl Poly {
    /// Splits off a positive common denominator: `self = z / den`.
    pub fn to_integer_parts(&self) -> (ZPoly, BigInt) {
        use num_integer::Integer;
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let z = self.map(|c| (c * BigRational::from_integer(den.clone())).to_integer());
        (z, den)
    }
}

impl<C: Coeff> Add for &DensePoly<C> {
    type Output = DensePoly<C>;
    fn add(self, rhs: Self) -> DensePoly<C> {
        self.add_impl(rhs, false)
    }
}

impl<C: Coeff> Sub for &DensePoly<C> {
    type Output = DensePoly<C>;
    fn sub(self, rhs: Self) -> DensePoly<C> {
        self.add_impl(rhs, true)
    }
}

impl<C: Coeff> Mul for &DensePoly<C> {
    type Output = DensePoly<C>;
    fn mul(self, rhs: Self) -> DensePoly<C> {
        self.mul_impl(rhs)
    }
}

impl<C: Coeff> Neg for &DensePoly<C> {
    type Output = DensePoly<C>;
    fn neg(self) -> DensePoly<C> {
        DensePoly {
            coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect(),
        }
    }
}

impl<C: Coeff> Add for DensePoly<C> {
    type Output = DensePoly<C>;
    fn add(self, rhs: Self) -> DensePoly<C> {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for DensePoly<C> {
    type Output = DensePoly<C>;
    fn sub(self, rhs: Self) -> DensePoly<C> {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for DensePoly<C> {
    type Output = DensePoly<C>;
    fn mul(self, rhs: Self) -> DensePoly<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for DensePoly<C> {
    type Output = DensePoly<C>;
    fn neg(self) -> DensePoly<C> {
        -&self
    }
}

/// Writes `c*q^k` terms in ascending order, e.g. `1 - q + 3*q^2`.
pub(crate) fn write_terms<C: Coeff>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[C],
    offset: i64,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = i as i64 + offset;
        let neg = c.is_negative();
        let abs = if neg { c.neg_ref() } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let unit = abs.is_one();
        match (e, unit) {
            (0, _) => write!(f, "{abs}")?,
            (_, true) => {}
            (_, false) => write!(f, "{abs}*")?,
        }
        match e {
            0 => {}
            1 => write!(f, "q")?,
            e if e < 0 => write!(f, "q^({e})")?,
            e => write!(f, "q^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<C: Coeff> fmt::Display for DensePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        ZPoly::from_i64s(v)
    }

    fn p(v: &[i64]) -> Poly {
        Poly::from_i64s(v)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
    }

    #[test]
    fn geometric_factorization() {
        let (q, r) = p(&[-1, 0, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn additive_inverse_is_empty() {
        let s = &p(&[1, 0, 1]) + &p(&[-1, 0, -1]);
        assert!(s.is_zero());
        assert!(s.coeffs().is_empty());
        assert_eq!(s.degree(), None);
    }

    #[test]
    fn divide_by_zero_polynomial() {
        assert_eq!(
            p(&[1, 2]).div_rem(&Poly::zero()),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn non_monic_division_over_rationals() {
        // (2q^2 + 3q + 1) = (2q + 1)(q + 1)
        let (q, r) = p(&[1, 3, 2]).div_rem(&p(&[1, 2])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[0, 0, 1]).div_rem(&p(&[1, 2])).unwrap();
        assert_eq!(&(&q * &p(&[1, 2])) + &r, p(&[0, 0, 1]));
        assert_eq!(r.degree(), Some(0));
    }

    #[test]
    fn binomial_multiply_and_divide() {
        let mut a = z(&[3, -1, 4, 1, -5]);
        let orig = a.clone();
        a.mul_binomial(3);
        assert_eq!(a, &orig * &ZPoly::binomial(3));
        assert_eq!(a.div_binomial(3), Some(orig.clone()));
        assert_eq!(orig.div_binomial(2), None);
        assert_eq!(z(&[1, 0, -1]).div_binomial(1), Some(z(&[1, 1])));
    }

    #[test]
    fn monic_remainder_over_integers() {
        let m = z(&[1, 1, 1]);
        let (q, r) = z(&[0, 0, 0, 0, 1]).div_rem_monic(&m).unwrap();
        assert_eq!(&(&q * &m) + &r, z(&[0, 0, 0, 0, 1]));
        assert_eq!(r, z(&[0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(z(&[1, -1, 0, 3]).to_string(), "1 - q + 3*q^3");
        assert_eq!(ZPoly::zero().to_string(), "0");
        assert_eq!(z(&[0, -1]).to_string(), "-q");
    }

    #[test]
    fn eval_at_one() {
        assert_eq!(z(&[1, 1, 1, 1]).eval(&BigInt::from(1)), BigInt::from(4));
    }
}
