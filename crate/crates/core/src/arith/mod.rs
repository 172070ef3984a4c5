//! Exact arithmetic: rationals, dense and Laurent polynomials, reduced rational
//! functions, extended gcd and cyclotomic polynomials.

mod coeff;
pub mod cyclotomic;
mod gcd;
mod laurent;
mod poly;
mod qfraction;
mod ratfunc;
mod rational;

use thiserror::Error;

pub use coeff::{Coeff, FieldCoeff};
pub use cyclotomic::{cyclotomic, cyclotomic_z, CycIndex};
pub use gcd::{gcd, gcd_ext};
#[cfg(test)]
pub(crate) use laurent::pow_i;
pub use laurent::{laurent_canon, LaurentPoly};
pub use poly::{DensePoly, Poly, ZPoly};
pub use qfraction::{expand_cyclotomic_product, QFraction};
pub use ratfunc::{ratfunc_make, LaurentRatFunc, RatFunc};
pub use rational::{parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("divisor is not monic")]
    NotMonic,
    #[error("cyclotomic index must be at least 1")]
    InvalidCycIndex,
    #[error("evaluation at a pole")]
    Pole,
}

/// Polynomial ring operation selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivRem,
}

/// Result of [`poly_arith`]: a single polynomial or a quotient/remainder pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyArith {
    Single(Poly),
    DivRem(Poly, Poly),
}

/// Exact ring arithmetic on rational polynomials.
pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<PolyArith, ArithError> {
    Ok(match op {
        PolyOp::Add => PolyArith::Single(a + b),
        PolyOp::Sub => PolyArith::Single(a - b),
        PolyOp::Mul => PolyArith::Single(a * b),
        PolyOp::DivRem => {
            let (q, r) = a.div_rem(b)?;
            PolyArith::DivRem(q, r)
        }
    })
}
