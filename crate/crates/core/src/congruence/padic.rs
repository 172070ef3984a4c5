//! Euler numbers, Legendre symbols, and the classical congruence modulo `p³`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::CongruenceError;
use crate::arith::cyclotomic::is_prime;
use crate::arith::Rational;
use crate::CheckResult;

/// Exact difference of the two sides and its `p`-adic valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicWitness {
    pub p: u64,
    pub difference: Rational,
    /// `None` for a zero difference.
    pub valuation: Option<i64>,
}

/// `E_m` from `Σ_j C(m, 2j) E_{2j} = 0`, `E_0 = 1`; zero for odd `m`.
pub fn euler_number(m: u64) -> BigInt {
    if m % 2 == 1 {
        return BigInt::zero();
    }
    let half = (m / 2) as usize;
    let mut e: Vec<BigInt> = Vec::with_capacity(half + 1);
    e.push(BigInt::one());
    for h in 1..=half {
        let mm = 2 * h as u64;
        // Binomials C(mm, 2j) by the multiplicative recurrence along the row.
        let mut binom = BigInt::one();
        let mut acc = BigInt::zero();
        for i in 0..mm {
            if i % 2 == 0 {
                acc += &binom * &e[(i / 2) as usize];
            }
            binom = binom * (mm - i) / (i + 1);
        }
        e.push(-acc);
    }
    e.pop().unwrap()
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre_symbol(a: &BigInt, p: u64) -> Result<i8, CongruenceError> {
    if p == 2 || !is_prime(p) {
        return Err(CongruenceError::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let a = a.mod_floor(&pb);
    if a.is_zero() {
        return Ok(0);
    }
    let r = a.modpow(&BigInt::from((p - 1) / 2), &pb);
    Ok(if r.is_one() { 1 } else { -1 })
}

fn valuation(x: &BigInt, p: &BigInt) -> i64 {
    let mut v = 0;
    let mut x = x.abs();
    while (&x % p).is_zero() {
        x /= p;
        v += 1;
    }
    v
}

/// `Σ_{k=0}^{(p-1)/2} C(2k,k)/8^k - (2/p) - (-2/p)(p²/4)E_{p-3}`.
pub fn sun_difference(p: u64) -> Result<Rational, CongruenceError> {
    if !is_prime(p) {
        return Err(CongruenceError::NotPrime(p));
    }
    if p < 5 {
        return Err(CongruenceError::SmallPrime(p));
    }
    let mut central = BigInt::one();
    let mut sum = Rational::zero();
    let mut eight = BigInt::one();
    for k in 0..=(p - 1) / 2 {
        if k > 0 {
            central = central * (2 * (2 * k - 1)) / k;
            eight *= 8;
        }
        sum += Rational::new(central.clone(), eight.clone());
    }
    let two = legendre_symbol(&BigInt::from(2), p)?;
    let minus_two = legendre_symbol(&BigInt::from(-2), p)?;
    let pp = BigInt::from(p) * BigInt::from(p);
    let tail = Rational::new(
        pp * euler_number(p - 3) * BigInt::from(minus_two),
        BigInt::from(4),
    );
    Ok(sum - Rational::from_integer(BigInt::from(two)) - tail)
}

/// Checks the congruence modulo `p³` for a prime `p >= 5`.
pub fn verify_sun(p: u64) -> Result<(PadicWitness, CheckResult), CongruenceError> {
    verify_sun_with(p, 3)
}

/// As [`verify_sun`] with a chosen minimum valuation.
pub fn verify_sun_with(
    p: u64,
    min_valuation: i64,
) -> Result<(PadicWitness, CheckResult), CongruenceError> {
    let d = sun_difference(p)?;
    let pb = BigInt::from(p);
    let label = format!("SUN p={p}");
    let valuation = if d.is_zero() {
        None
    } else {
        Some(valuation(d.numer(), &pb) - valuation(d.denom(), &pb))
    };
    let passed = valuation.map_or(true, |v| v >= min_valuation);
    let witness = PadicWitness {
        p,
        difference: d,
        valuation,
    };
    let result = if passed {
        CheckResult::pass(label)
    } else {
        CheckResult::fail(label, None)
    };
    Ok((witness, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn euler_numbers() {
        let expected = [1i64, -1, 5, -61, 1385, -50521, 2702765];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(euler_number(2 * i as u64), BigInt::from(e));
        }
        assert!(euler_number(7).is_zero());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(&BigInt::from(1), 7).unwrap(), 1);
        assert_eq!(legendre_symbol(&BigInt::from(2), 5).unwrap(), -1);
        assert_eq!(legendre_symbol(&BigInt::from(-1), 5).unwrap(), 1);
        assert_eq!(legendre_symbol(&BigInt::from(10), 5).unwrap(), 0);
        assert!(legendre_symbol(&BigInt::from(1), 9).is_err());
        assert!(legendre_symbol(&BigInt::from(1), 2).is_err());
    }

    #[test]
    fn sun_at_five() {
        let (w, r) = verify_sun(5).unwrap();
        assert!(r.passed);
        assert_eq!(w.difference, rat(-125, 32));
        assert_eq!(w.valuation, Some(3));
        let (_, strict) = verify_sun_with(5, 4).unwrap();
        assert!(!strict.passed);
    }

    #[test]
    fn sun_small_primes() {
        for p in [7, 11, 13] {
            assert!(verify_sun(p).unwrap().1.passed, "p={p}");
        }
        assert_eq!(verify_sun(9).unwrap_err(), CongruenceError::NotPrime(9));
        assert_eq!(verify_sun(3).unwrap_err(), CongruenceError::SmallPrime(3));
    }
}
