//! Cyclotomic polynomials and the elementary number theory around them.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use super::poly::{Poly, ZPoly};
use super::ArithError;

/// Index `n >= 1` of a cyclotomic polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycIndex(u64);

impl CycIndex {
    pub fn new(n: u64) -> Result<Self, ArithError> {
        if n == 0 {
            return Err(ArithError::InvalidCycIndex);
        }
        Ok(Self(n))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// True for `p^k` with `p` prime and `k >= 1`.
pub fn is_prime_power(n: u64) -> bool {
    factorize(n).len() == 1
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i8 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

type Cache = RwLock<HashMap<u64, Arc<ZPoly>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `Φ_n(q)` with integer coefficients, memoized across threads.
pub fn cyclotomic_z(n: CycIndex) -> Arc<ZPoly> {
    let n = n.get();
    if let Some(p) = cache().read().expect("cyclotomic cache poisoned").get(&n) {
        return Arc::clone(p);
    }
    // q^n - 1 divided by every Φ_d with d a proper divisor.
    let mut acc = ZPoly::monomial(BigInt::from(1), n as usize);
    acc = &acc - &ZPoly::one();
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let phi = cyclotomic_z(CycIndex(d));
        let (quot, rem) = acc
            .div_rem_monic(&phi)
            .expect("cyclotomic polynomials are monic");
        debug_assert!(rem.is_zero());
        acc = quot;
    }
    let arc = Arc::new(acc);
    cache()
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(n)
        .or_insert_with(|| Arc::clone(&arc))
        .clone()
}

/// `Φ_n(q)` over the rationals.
pub fn cyclotomic(n: CycIndex) -> Poly {
    cyclotomic_z(n).to_rational()
}

/// Exact division by `Φ_d`, or `None` if `Φ_d` does not divide `p`.
///
/// Uses `Φ_d = ∏_{m | d} (1 - q^m)^{μ(d/m)}` for `d >= 2` (and `Φ_1 = -(1 - q)`),
/// so the cost is `O(τ(d) · deg p)` additions.
pub fn div_cyclotomic(p: &ZPoly, d: u64) -> Option<ZPoly> {
    if p.is_zero() {
        return Some(ZPoly::zero());
    }
    if d == 1 {
        return p.div_binomial(1).map(|q| -q);
    }
    let mut acc = p.clone();
    let mut divide = Vec::new();
    for m in divisors(d) {
        match mobius(d / m) {
            -1 => acc.mul_binomial(m as usize),
            1 => divide.push(m as usize),
            _ => {}
        }
    }
    for m in divide {
        acc = acc.div_binomial(m)?;
    }
    Some(acc)
}

/// Multiplicity of `Φ_d` in `p`, stopping once `cap` is reached.
pub fn cyclotomic_valuation(p: &ZPoly, d: u64, cap: u32) -> u32 {
    if p.is_zero() {
        return cap;
    }
    let mut v = 0;
    let mut cur = p.clone();
    while v < cap {
        match div_cyclotomic(&cur, d) {
            Some(next) => {
                cur = next;
                v += 1;
            }
            None => break,
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi(n: u64) -> Arc<ZPoly> {
        cyclotomic_z(CycIndex::new(n).unwrap())
    }

    #[test]
    fn small_cases() {
        assert_eq!(*phi(1), ZPoly::from_i64s(&[-1, 1]));
        assert_eq!(*phi(2), ZPoly::from_i64s(&[1, 1]));
        assert_eq!(*phi(3), ZPoly::from_i64s(&[1, 1, 1]));
        assert_eq!(*phi(4), ZPoly::from_i64s(&[1, 0, 1]));
        assert_eq!(*phi(6), ZPoly::from_i64s(&[1, -1, 1]));
    }

    #[test]
    fn zero_index_rejected() {
        assert_eq!(CycIndex::new(0), Err(ArithError::InvalidCycIndex));
    }

    #[test]
    fn phi_105_has_minus_two() {
        let p = phi(105);
        assert_eq!(p.degree(), Some(48));
        assert!(p.coeffs().contains(&BigInt::from(-2)));
    }

    #[test]
    fn number_theory_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(totient(105), 48);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert!(is_prime_power(27));
        assert!(!is_prime_power(15));
        assert!(!is_prime_power(1));
        assert!(is_prime(97));
        assert!(!is_prime(1));
    }

    #[test]
    fn binomial_division_matches_long_division() {
        for d in 1..40u64 {
            let target = ZPoly::from_i64s(&[3, 0, -2, 5, 1]);
            let product = &target * &phi(d);
            assert_eq!(div_cyclotomic(&product, d), Some(target.clone()), "d={d}");
            let (_, r) = target.div_rem_monic(&phi(d)).unwrap();
            assert_eq!(div_cyclotomic(&target, d).is_some(), r.is_zero(), "d={d}");
        }
    }

    #[test]
    fn valuation_counts_repeated_factors() {
        let p = &(&*phi(3) * &*phi(3)) * &*phi(5);
        assert_eq!(cyclotomic_valuation(&p, 3, 10), 2);
        assert_eq!(cyclotomic_valuation(&p, 5, 10), 1);
        assert_eq!(cyclotomic_valuation(&p, 3, 1), 1);
        assert_eq!(cyclotomic_valuation(&p, 7, 10), 0);
    }
}
