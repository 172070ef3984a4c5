//! q-shifted factorials, q-integers, and the summands of every series in the
//! verification suite.

mod series;
mod term;

use num_bigint::BigInt;

use crate::arith::{LaurentPoly, Poly, ZPoly};

pub use series::{partial_sum, partial_sum_fraction, summand, summand_term, QError, SeriesId};
pub use term::{sum_terms, HyperTerm};

/// Parameters of `(q^base_exp; q^step)_count`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QPochSpec {
    pub base_exp: i64,
    pub step: u64,
    pub count: u64,
}

impl QPochSpec {
    pub fn new(base_exp: i64, step: u64, count: u64) -> Result<Self, QError> {
        if step == 0 {
            return Err(QError::InvalidParameter("step must be at least 1".into()));
        }
        Ok(Self {
            base_exp,
            step,
            count,
        })
    }
}

/// `∏_{j<count} (1 - q^{base_exp + j·step})` as a Laurent polynomial.
pub fn q_pochhammer(spec: QPochSpec) -> LaurentPoly {
    let mut body = ZPoly::one();
    let mut shift = 0i64;
    let mut negate = false;
    for j in 0..spec.count as i64 {
        let e = spec.base_exp + j * spec.step as i64;
        match e {
            0 => return LaurentPoly::zero(),
            e if e > 0 => body.mul_binomial(e as usize),
            e => {
                // 1 - q^e = -q^e (1 - q^{-e})
                negate = !negate;
                shift += e;
                body.mul_binomial((-e) as usize);
            }
        }
    }
    let body = if negate { -body } else { body };
    LaurentPoly::new(body.to_rational(), shift)
}

/// `[n] = 1 + q + ... + q^{n-1}`, with `[0] = 0`.
pub fn q_integer(n: u64) -> Poly {
    ZPoly::new(vec![BigInt::from(1); n as usize]).to_rational()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{laurent_canon, rat, Rational};

    #[test]
    fn two_factor_expansion() {
        let p = q_pochhammer(QPochSpec::new(1, 2, 2).unwrap());
        assert_eq!(p, LaurentPoly::from(Poly::from_i64s(&[1, -1, 0, -1, 1])));
    }

    #[test]
    fn empty_product() {
        assert_eq!(
            q_pochhammer(QPochSpec::new(4, 4, 0).unwrap()),
            LaurentPoly::one()
        );
    }

    #[test]
    fn negative_base_single_factor() {
        // (q^-2; q^2)_1 = 1 - q^-2
        let p = q_pochhammer(QPochSpec::new(1 - 3, 2, 1).unwrap());
        assert_eq!(p, laurent_canon(Poly::from_i64s(&[-1, 0, 1]), -2));
        assert_eq!(p.shift(), -2);
    }

    #[test]
    fn zero_factor_kills_product() {
        assert!(q_pochhammer(QPochSpec::new(-4, 2, 3).unwrap()).is_zero());
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_integer(1), Poly::one());
        assert_eq!(q_integer(3), Poly::from_i64s(&[1, 1, 1]));
        assert!(q_integer(0).is_zero());
        assert_eq!(
            q_integer(7).eval(&Rational::from_integer(1.into())),
            rat(7, 1)
        );
    }

    #[test]
    fn zero_step_rejected() {
        assert!(QPochSpec::new(1, 0, 3).is_err());
    }
}
