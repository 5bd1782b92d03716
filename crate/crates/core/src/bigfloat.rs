//! Arbitrary-precision real and complex arithmetic for upper-half-plane
//! evaluation, on top of astro-float. Every value carries its precision in
//! bits; binary operations compute at the minimum of the two.

use std::cell::RefCell;
use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num::bigint::BigInt;


use crate::error::{Error, Result};
use crate::rational::Rat;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

#[derive(Clone, Debug)]
pub struct BigReal {
    v: BigFloat,
    prec: usize,
}

impl BigReal {
    pub fn zero(prec: usize) -> Self {
        BigReal { v: BigFloat::from_i64(0, prec), prec }
    }

    pub fn from_i64(x: i64, prec: usize) -> Self {
        BigReal { v: BigFloat::from_i64(x, prec), prec }
    }

    pub fn from_f64(x: f64, prec: usize) -> Self {
        BigReal { v: BigFloat::from_f64(x, prec), prec }
    }

    pub fn from_bigint(x: &BigInt, prec: usize) -> Self {
        let (sign, digits) = x.to_u64_digits();
        if digits.is_empty() {
            return Self::zero(prec);
        }
        // from_words treats the slice as a little-endian mantissa with value
        // int(words) * 2^(e - 64*len); e = 64*len makes it exactly the integer
        let s = if sign == num::bigint::Sign::Minus { Sign::Neg } else { Sign::Pos };
        let mut v = BigFloat::from_words(&digits, s, (64 * digits.len()) as i32);
        v.set_precision(prec.max(64 * digits.len()), RM).expect("set precision");
        BigReal { v, prec }
    }

    pub fn from_rat(x: &Rat, prec: usize) -> Self {
        let num = Self::from_bigint(x.numer(), prec + 64);
        let den = Self::from_bigint(x.denom(), prec + 64);
        let mut v = num.v.div(&den.v, prec, RM);
        v.set_precision(prec, RM).expect("set precision");
        BigReal { v, prec }
    }

    pub fn pi(prec: usize) -> Self {
        let v = CONSTS.with(|c| c.borrow_mut().pi(prec, RM));
        BigReal { v, prec }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative()
    }

    fn bin(&self, o: &Self, f: impl FnOnce(&BigFloat, &BigFloat, usize) -> BigFloat) -> Self {
        let prec = self.prec.min(o.prec);
        BigReal { v: f(&self.v, &o.v, prec), prec }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.bin(o, |a, b, p| a.add(b, p, RM))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.bin(o, |a, b, p| a.sub(b, p, RM))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.bin(o, |a, b, p| a.mul(b, p, RM))
    }

    pub fn div(&self, o: &Self) -> Self {
        self.bin(o, |a, b, p| a.div(b, p, RM))
    }

    pub fn neg(&self) -> Self {
        BigReal { v: self.v.neg(), prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigReal { v: self.v.abs(), prec: self.prec }
    }

    pub fn sqrt(&self) -> Self {
        BigReal { v: self.v.sqrt(self.prec, RM), prec: self.prec }
    }

    pub fn exp(&self) -> Self {
        let v = CONSTS.with(|c| self.v.exp(self.prec, RM, &mut c.borrow_mut()));
        BigReal { v, prec: self.prec }
    }

    pub fn sin(&self) -> Self {
        let v = CONSTS.with(|c| self.v.sin(self.prec, RM, &mut c.borrow_mut()));
        BigReal { v, prec: self.prec }
    }

    pub fn cos(&self) -> Self {
        let v = CONSTS.with(|c| self.v.cos(self.prec, RM, &mut c.borrow_mut()));
        BigReal { v, prec: self.prec }
    }

    pub fn powi(&self, mut n: u64) -> Self {
        let mut acc = Self::from_i64(1, self.prec);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn cmp(&self, o: &Self) -> Ordering {
        match self.v.cmp(&o.v) {
            Some(c) => c.cmp(&0),
            None => Ordering::Equal,
        }
    }

    pub fn min(&self, o: &Self) -> Self {
        if self.cmp(o) == Ordering::Less { self.clone() } else { o.clone() }
    }

    pub fn max(&self, o: &Self) -> Self {
        if self.cmp(o) == Ordering::Greater { self.clone() } else { o.clone() }
    }

    /// Approximate conversion for reporting.
    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        match self.v.as_raw_parts() {
            Some((words, _, sign, exp, _)) => {
                let hi = *words.last().unwrap_or(&0) as f64;
                let lo = if words.len() >= 2 { words[words.len() - 2] as f64 } else { 0.0 };
                let mant = hi + lo / 2f64.powi(64);
                let v = mant * 2f64.powi(exp - 64);
                if sign == Sign::Neg {
                    -v
                } else {
                    v
                }
            }
            None => f64::NAN,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        BigComplex { re: BigReal::zero(prec), im: BigReal::zero(prec) }
    }

    pub fn one(prec: usize) -> Self {
        BigComplex { re: BigReal::from_i64(1, prec), im: BigReal::zero(prec) }
    }

    pub fn i(prec: usize) -> Self {
        BigComplex { re: BigReal::zero(prec), im: BigReal::from_i64(1, prec) }
    }

    pub fn from_rats(re: &Rat, im: &Rat, prec: usize) -> Self {
        BigComplex { re: BigReal::from_rat(re, prec), im: BigReal::from_rat(im, prec) }
    }

    pub fn prec(&self) -> usize {
        self.re.prec().min(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        BigComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        BigComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Self {
        BigComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        BigComplex { re, im }
    }

    pub fn scale(&self, s: &BigReal) -> Self {
        BigComplex { re: self.re.mul(s), im: self.im.mul(s) }
    }

    pub fn mul_i(&self) -> Self {
        BigComplex { re: self.im.neg(), im: self.re.clone() }
    }

    pub fn abs2(&self) -> BigReal {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> BigReal {
        self.abs2().sqrt()
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = o.abs2();
        let num = self.mul(&o.conj());
        BigComplex { re: num.re.div(&d), im: num.im.div(&d) }
    }

    pub fn inv(&self) -> Self {
        Self::one(self.prec()).div(self)
    }

    pub fn powi(&self, mut n: u64) -> Self {
        let mut acc = Self::one(self.prec());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn powi_signed(&self, n: i64) -> Self {
        if n < 0 {
            self.powi(n.unsigned_abs()).inv()
        } else {
            self.powi(n as u64)
        }
    }

    /// Principal square root: argument in (-pi/2, pi/2] for arguments of
    /// self in (-pi, pi]. Half-angle formulas, no transcendentals.
    pub fn sqrt_principal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroSqrt);
        }
        let r = self.abs();
        let two = BigReal::from_i64(2, self.prec());
        if !self.re.is_negative() {
            let a = r.add(&self.re).div(&two).sqrt();
            let b = self.im.div(&a.mul(&two));
            Ok(BigComplex { re: a, im: b })
        } else {
            // sign(0) = +1 puts the negative real axis on the +i branch
            let b_abs = r.sub(&self.re).div(&two).sqrt();
            let b = if self.im.is_negative() { b_abs.neg() } else { b_abs };
            let a = self.im.div(&b.mul(&two));
            Ok(BigComplex { re: a, im: b })
        }
    }

    /// e^{2 pi i z} = e^{-2 pi Im z} (cos(2 pi Re z) + i sin(2 pi Re z)).
    pub fn exp_2pi_i(&self) -> Self {
        let prec = self.prec();
        let two_pi = BigReal::pi(prec).mul(&BigReal::from_i64(2, prec));
        let mag = self.im.neg().mul(&two_pi).exp();
        let phase = self.re.mul(&two_pi);
        BigComplex {
            re: phase.cos().mul(&mag),
            im: phase.sin().mul(&mag),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn rational_conversion() {
        let x = BigReal::from_rat(&rat(-355, 113), 192);
        assert!(close(x.to_f64(), -355.0 / 113.0, 1e-15));
        let big = BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap();
        let y = BigReal::from_bigint(&big, 256);
        assert!(close(y.to_f64(), 1.2345678901234568e29, 1e14));
    }

    #[test]
    fn pi_value() {
        let pi = BigReal::pi(192);
        assert!(close(pi.to_f64(), std::f64::consts::PI, 1e-15));
    }

    #[test]
    fn precision_propagates_min() {
        let a = BigReal::from_i64(1, 256);
        let b = BigReal::from_i64(3, 128);
        assert_eq!(a.div(&b).prec(), 128);
    }

    #[test]
    fn principal_sqrt_branches() {
        let p = 192;
        // sqrt(-1) = +i
        let m1 = BigComplex::new(BigReal::from_i64(-1, p), BigReal::zero(p));
        let s = m1.sqrt_principal().unwrap();
        assert!(close(s.re.to_f64(), 0.0, 1e-40));
        assert!(close(s.im.to_f64(), 1.0, 1e-40));
        // sqrt(-i * i) = sqrt(1) = 1
        let z = BigComplex::i(p).mul_i().neg(); // -i*i = 1
        let s = z.sqrt_principal().unwrap();
        assert!(close(s.re.to_f64(), 1.0, 1e-40));
        // sqrt of -2i tau at tau = (1+i)/2: -2i(1+i)/2 = 1 - i, right half-plane
        let tau = BigComplex::from_rats(&rat(1, 2), &rat(1, 2), p);
        let z = tau.mul_i().scale(&BigReal::from_i64(-2, p));
        let s = z.sqrt_principal().unwrap();
        assert!(s.re.to_f64() > 0.0);
        let sq = s.mul(&s);
        assert!(close(sq.re.to_f64(), 1.0, 1e-30));
        assert!(close(sq.im.to_f64(), -1.0, 1e-30));
        assert!(BigComplex::zero(p).sqrt_principal().is_err());
    }

    #[test]
    fn exp_2pi_i_unit() {
        let p = 192;
        // z = 1/4 -> e^{pi i /2} = i
        let z = BigComplex::from_rats(&rat(1, 4), &rat(0, 1), p);
        let w = z.exp_2pi_i();
        assert!(close(w.re.to_f64(), 0.0, 1e-50));
        assert!(close(w.im.to_f64(), 1.0, 1e-50));
        // z = i -> e^{-2 pi}
        let z = BigComplex::i(p);
        let w = z.exp_2pi_i();
        assert!(close(w.re.to_f64(), (-2.0 * std::f64::consts::PI).exp(), 1e-17));
    }

    #[test]
    fn powi_signed() {
        let p = 128;
        let z = BigComplex::from_rats(&rat(3, 2), &rat(-1, 3), p);
        let a = z.powi(5).mul(&z.powi_signed(-5));
        assert!(close(a.re.to_f64(), 1.0, 1e-30));
        assert!(close(a.im.to_f64(), 0.0, 1e-30));
    }
}
