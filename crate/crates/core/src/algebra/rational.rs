//! Arbitrary-precision rationals plus the few integer utilities the rest of
//! the crate needs: exact roots, squarefree decomposition, parsing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Exact rational number with arbitrary-size numerator and denominator.
///
/// `num_rational::BigRational` already maintains the invariants we need:
/// `gcd(|numerator|, denominator) = 1` and `denominator >= 1`.
pub type Rational = num_rational::BigRational;

/// Shorthand for a small rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` (optionally signed) into a rational.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let t = s.trim();
    t.parse::<Rational>()
        .map_err(|_| AlgebraError::Parse(t.to_string()))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact integer k-th root, if `n` is a perfect k-th power.
pub fn exact_nth_root_int(n: &BigInt, k: u32) -> Option<BigInt> {
    if k == 0 {
        return None;
    }
    if n.is_negative() && k % 2 == 0 {
        return None;
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact rational k-th root, if it exists.
pub fn exact_nth_root(q: &Rational, k: u32) -> Option<Rational> {
    let n = exact_nth_root_int(q.numer(), k)?;
    let d = exact_nth_root_int(q.denom(), k)?;
    Some(Rational::new(n, d))
}

/// Writes a nonzero integer as `d * m^2` with `d` squarefree.
///
/// Factors out primes below 10^6 and then handles the cofactor, which at that
/// point is 1, prime, a prime square, or a product of two distinct large
/// primes as long as |n| < 10^18. Returns `None` when the cofactor cannot be
/// classified (never the case for the discriminants arising here).
pub fn squarefree_decompose(n: &BigInt) -> Option<(i64, BigInt)> {
    if n.is_zero() {
        return None;
    }
    let mut d: i64 = if n.is_negative() { -1 } else { 1 };
    let mut m = BigInt::one();
    let mut rest = n.abs();

    let try_prime = |p: u64, rest: &mut BigInt, d: &mut i64, m: &mut BigInt| {
        let pb = BigInt::from(p);
        let mut e = 0u32;
        while (&*rest % &pb).is_zero() {
            *rest /= &pb;
            e += 1;
        }
        if e % 2 == 1 {
            *d = d.checked_mul(p as i64)?;
        }
        if e >= 2 {
            *m *= num_traits::pow(pb, (e / 2) as usize);
        }
        Some(())
    };

    try_prime(2, &mut rest, &mut d, &mut m)?;
    let mut p = 3u64;
    while p <= 1_000_000 && rest > BigInt::one() {
        try_prime(p, &mut rest, &mut d, &mut m)?;
        p += 2;
    }

    if rest > BigInt::one() {
        // No prime factor below 10^6 remains.
        if let Some(r) = exact_nth_root_int(&rest, 2) {
            m *= r;
        } else if rest < BigInt::from(10u64).pow(18) {
            // prime or product of two distinct large primes: squarefree
            d = d.checked_mul(rest.to_i64()?)?;
        } else {
            return None;
        }
    }
    Some((d, m))
}

/// Writes a nonzero rational as `d * r^2` with `d` a squarefree integer.
pub fn squarefree_decompose_rational(q: &Rational) -> Option<(i64, Rational)> {
    if q.is_zero() {
        return None;
    }
    // p/q = (p*q) / q^2
    let prod = q.numer() * q.denom();
    let (d, m) = squarefree_decompose(&prod)?;
    Some((d, Rational::new(m, q.denom().clone())))
}

/// Greatest common divisor of two positive rationals: the generator of the
/// lattice `aZ + bZ`.
pub fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let den = a.denom().lcm(b.denom());
    let an = a.numer() * (&den / a.denom());
    let bn = b.numer() * (&den / b.denom());
    Rational::new(an.gcd(&bn), den)
}

/// True when `q` is an integer `<= 0`.
pub fn is_nonpositive_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-5", "0", "22/7", "-9/2"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert!(parse_rational("x/y").is_err());
        // normalisation on parse
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
    }

    #[test]
    fn exact_roots() {
        assert_eq!(
            exact_nth_root(&rat(27, 8), 3).unwrap(),
            rat(3, 2),
        );
        assert!(exact_nth_root(&rat(2, 1), 2).is_none());
        assert_eq!(exact_nth_root(&rat(-8, 1), 3).unwrap(), rat(-2, 1));
        assert!(exact_nth_root(&rat(-4, 1), 2).is_none());
    }

    #[test]
    fn squarefree_decomposition() {
        let (d, m) = squarefree_decompose(&BigInt::from(-128)).unwrap();
        assert_eq!(d, -2);
        assert_eq!(m, BigInt::from(8));
        let (d, m) = squarefree_decompose(&BigInt::from(500)).unwrap();
        assert_eq!(d, 5);
        assert_eq!(m, BigInt::from(10));
        let (d, m) = squarefree_decompose_rational(&rat(-27, 4)).unwrap();
        assert_eq!(d, -3);
        assert_eq!(&m * &m * rat_int(d), rat(-27, 4));
    }

    #[test]
    fn lattice_gcd() {
        assert_eq!(rational_gcd(&rat(1, 2), &rat(1, 3)), rat(1, 6));
        assert_eq!(rational_gcd(&rat(3, 8), &rat(1, 4)), rat(1, 8));
        assert_eq!(rational_gcd(&rat(2, 1), &Rational::zero()), rat(2, 1));
    }
}
