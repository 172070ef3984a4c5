//! Extended Euclid over the rationals.

use super::poly::Poly;
use super::ArithError;

/// Extended gcd `(g, s, t)` with `g` monic and `g = s*a + t*b`.
///
/// Uses the monic remainder sequence: every remainder is rescaled to leading
/// coefficient one before the next division.
pub fn gcd_ext(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly), ArithError> {
    if a.is_zero() && b.is_zero() {
        return Err(ArithError::GcdOfZeros);
    }
    let normalize = |p: &Poly, s: Poly, t: Poly| -> (Poly, Poly, Poly) {
        match p.leading() {
            Some(l) if !num_traits::One::is_one(l) => {
                let inv = l.recip();
                (p.scale(&inv), s.scale(&inv), t.scale(&inv))
            }
            _ => (p.clone(), s, t),
        }
    };
    let (mut r0, mut s0, mut t0) = normalize(a, Poly::one(), Poly::zero());
    let (mut r1, mut s1, mut t1) = normalize(b, Poly::zero(), Poly::one());
    if r0.is_zero() {
        std::mem::swap(&mut r0, &mut r1);
        std::mem::swap(&mut s0, &mut s1);
        std::mem::swap(&mut t0, &mut t1);
    }
    while !r1.is_zero() {
        let (quot, rem) = r0.div_rem(&r1)?;
        let s2 = &s0 - &(&quot * &s1);
        let t2 = &t0 - &(&quot * &t1);
        let (r2, s2, t2) = normalize(&rem, s2, t2);
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if cfg!(debug_assertions) {
        let combo = &(&s0 * a) + &(&t0 * b);
        assert_eq!(combo, r0, "Bezout identity violated");
    }
    Ok((r0, s0, t0))
}

/// Monic gcd.
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly, ArithError> {
    Ok(gcd_ext(a, b)?.0)
}
