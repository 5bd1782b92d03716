//! Exact rational scalars.
//!
//! All exact arithmetic in this crate runs over `Rat` (arbitrary-precision
//! rationals, always reduced, positive denominator — `num` guarantees both).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// `p/q` as a rational.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a rational.
pub fn rati(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Parse `"p"` or `"p/q"`.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {num:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {den:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// Render as `p` or `p/q`.
pub fn rat_to_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn denom_u64(r: &Rat) -> u64 {
    r.denom().to_u64().expect("denominator too large")
}

/// Largest integer <= r.
pub fn rat_floor(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

pub fn rat_floor_i64(r: &Rat) -> i64 {
    rat_floor(r).to_i64().expect("floor out of i64 range")
}

pub fn rat_ceil_i64(r: &Rat) -> i64 {
    r.ceil().to_integer().to_i64().expect("ceil out of i64 range")
}

/// Euler totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Divisors of n in ascending order.
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
    large.reverse();
    small.extend(large);
    small
}

pub fn lcm_i64(a: i64, b: i64) -> i64 {
    (a / a.gcd(&b)) * b
}

/// Exact rational upper bound for sqrt(r), r >= 0.
pub fn sqrt_upper(r: &Rat) -> Rat {
    assert!(!r.is_negative(), "sqrt of negative rational");
    if r.is_zero() {
        return Rat::zero();
    }
    // sqrt(p/q) = sqrt(p*q)/q <= (isqrt(p*q)+1)/q
    let pq = r.numer() * r.denom();
    let root = pq.sqrt();
    Rat::new(root + BigInt::one(), r.denom().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(rat_from_str("3/4").unwrap(), rat(3, 4));
        assert_eq!(rat_from_str("-7").unwrap(), rati(-7));
        assert_eq!(rat_to_str(&rat(6, 4)), "3/2");
        assert!(rat_from_str("1/0").is_err());
    }

    #[test]
    fn phi_and_divisors() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(18), 6);
        assert_eq!(euler_phi(48), 16);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn sqrt_upper_bounds() {
        let r = rat(2, 1);
        let u = sqrt_upper(&r);
        assert!(&u * &u >= r);
        let r = rat(49, 4);
        let u = sqrt_upper(&r);
        assert!(&u * &u >= r);
        assert!(u <= rat(9, 2));
    }
}
