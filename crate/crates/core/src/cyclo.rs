//! Arithmetic in cyclotomic fields Q(zeta_n).
//!
//! Elements are polynomials in zeta_n reduced modulo the n-th cyclotomic
//! polynomial, with rational coefficients. Binary operations on elements of
//! different conductors lift both sides into Q(zeta_lcm) first, so mixed
//! expressions like `zeta(9,3) * zeta(18,5)` just work.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num::{One, Signed, Zero};

use crate::rational::{divisors, euler_phi, lcm_i64, rat_to_str, Rat};

/// Dense polynomial over Q, ascending degree, no trailing zeros.
type Poly = Vec<Rat>;

fn poly_trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder of a by b (b nonzero).
fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem: Poly = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let f = &rem[dr] / lead;
        quot[dr - db] = f.clone();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                let v = &rem[dr - db + k] - &f * bk;
                rem[dr - db + k] = v;
            }
        }
        poly_trim(&mut rem);
        if rem.len() <= db {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
fn poly_ext_gcd(a: &[Rat], b: &[Rat]) -> (Poly, Poly, Poly) {
    let mut r0: Poly = a.to_vec();
    let mut r1: Poly = b.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0: Poly = vec![Rat::one()];
    let mut s1: Poly = Vec::new();
    let mut t0: Poly = Vec::new();
    let mut t1: Poly = vec![Rat::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let qs = poly_mul(&q, &s1);
        let qt = poly_mul(&q, &t1);
        let s_new = poly_sub(&s0, &qs);
        let t_new = poly_sub(&t0, &qt);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s_new;
        t0 = t1;
        t1 = t_new;
    }
    // normalize to monic gcd
    if let Some(lead) = r0.last().cloned() {
        if !lead.is_one() {
            for c in r0.iter_mut() {
                *c = &*c / &lead;
            }
            for c in s0.iter_mut() {
                *c = &*c / &lead;
            }
            for c in t0.iter_mut() {
                *c = &*c / &lead;
            }
        }
    }
    (r0, s0, t0)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Poly {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), Rat::zero());
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    poly_trim(&mut out);
    out
}

static CYCLO_CACHE: RwLock<Option<HashMap<u64, Arc<Poly>>>> = RwLock::new(None);

/// The n-th cyclotomic polynomial, by exact division of x^n - 1 by the
/// product of Phi_d over proper divisors d. Cached.
pub fn cyclotomic_poly(n: u64) -> Arc<Poly> {
    assert!(n >= 1);
    if let Some(map) = CYCLO_CACHE.read().unwrap().as_ref() {
        if let Some(p) = map.get(&n) {
            return p.clone();
        }
    }
    let result = if n == 1 {
        // x - 1
        vec![-Rat::one(), Rat::one()]
    } else {
        let mut prod: Poly = vec![Rat::one()];
        for d in divisors(n) {
            if d < n {
                let phi_d = cyclotomic_poly(d);
                prod = poly_mul(&prod, &phi_d);
            }
        }
        let mut xn1 = vec![Rat::zero(); n as usize + 1];
        xn1[0] = -Rat::one();
        xn1[n as usize] = Rat::one();
        let (q, r) = poly_divmod(&xn1, &prod);
        assert!(r.is_empty(), "x^n - 1 not divisible by product of Phi_d");
        q
    };
    assert_eq!(result.len() as u64 - 1, euler_phi(n));
    let arc = Arc::new(result);
    let mut guard = CYCLO_CACHE.write().unwrap();
    guard
        .get_or_insert_with(HashMap::new)
        .entry(n)
        .or_insert_with(|| arc.clone());
    arc
}

/// Element of Q(zeta_n): coefficients of 1, z, ..., z^{phi(n)-1} mod Phi_n.
#[derive(Clone, Debug)]
pub struct CycloElement {
    conductor: u64,
    coeffs: Vec<Rat>,
}

impl CycloElement {
    pub fn zero(n: u64) -> Self {
        CycloElement {
            conductor: n,
            coeffs: vec![Rat::zero(); euler_phi(n) as usize],
        }
    }

    pub fn one(n: u64) -> Self {
        Self::from_rat(n, Rat::one())
    }

    pub fn from_rat(n: u64, r: Rat) -> Self {
        let mut e = Self::zero(n);
        if !e.coeffs.is_empty() {
            e.coeffs[0] = r;
        } else {
            // phi(1) = 1, never empty; defensive
            e.coeffs.push(r);
        }
        e
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// zeta_n^m, any integer m.
    pub fn zeta_pow(n: u64, m: i64) -> Self {
        let nn = n as i64;
        let k = m.rem_euclid(nn) as usize;
        let mut poly = vec![Rat::zero(); k + 1];
        poly[k] = Rat::one();
        Self::from_poly(n, poly)
    }

    fn from_poly(n: u64, mut poly: Poly) -> Self {
        let phi = cyclotomic_poly(n);
        poly_trim(&mut poly);
        let (_, rem) = poly_divmod(&poly, &phi);
        let deg = euler_phi(n) as usize;
        let mut coeffs = rem;
        coeffs.resize(deg.max(1), Rat::zero());
        CycloElement { conductor: n, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.first().is_some_and(|c| c.is_one())
            && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational part if the element is rational, else None.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Lift into Q(zeta_m) where self.conductor divides m.
    pub fn lift(&self, m: u64) -> Self {
        assert!(
            m % self.conductor == 0,
            "cannot lift conductor {} into {}",
            self.conductor,
            m
        );
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut poly = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * step] = c.clone();
            }
        }
        Self::from_poly(m, poly)
    }

    fn unified(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            (self.clone(), other.clone())
        } else {
            let l = lcm_i64(self.conductor as i64, other.conductor as i64) as u64;
            (self.lift(l), other.lift(l))
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.unified(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c = -c.clone();
        }
        a
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.unified(other);
        let prod = poly_mul(&a.coeffs, &b.coeffs);
        Self::from_poly(a.conductor, prod)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c = &*c * r;
        }
        a
    }

    /// Field inverse. None for zero.
    pub fn invert(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi = cyclotomic_poly(self.conductor);
        let mut f = self.coeffs.clone();
        poly_trim(&mut f);
        let (g, s, _) = poly_ext_gcd(&f, &phi);
        // Phi_n is irreducible over Q, so gcd is 1 for nonzero f
        assert!(g.len() == 1 && g[0].is_one(), "cyclotomic gcd not 1");
        Some(Self::from_poly(self.conductor, s))
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self
                .invert()
                .expect("inverse of zero in pow")
                .pow(-e);
        }
        let mut result = Self::one(self.conductor);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Complex conjugate: zeta -> zeta^{-1}.
    pub fn conj(&self) -> Self {
        let n = self.conductor as i64;
        let mut acc = Self::zero(self.conductor);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&Self::zeta_pow(self.conductor, -(i as i64) % n).scale(c));
            }
        }
        acc
    }
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.unified(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloElement {}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{}", rat_to_str(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", rat_to_str(&mag))?;
                }
                if i == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", i)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rati;

    #[test]
    fn cyclotomic_polys() {
        // Phi_1 = x-1, Phi_2 = x+1, Phi_6 = x^2-x+1, Phi_9 = x^6+x^3+1
        assert_eq!(*cyclotomic_poly(2), vec![Rat::one(), Rat::one()]);
        assert_eq!(
            *cyclotomic_poly(6),
            vec![Rat::one(), -Rat::one(), Rat::one()]
        );
        let p9 = cyclotomic_poly(9);
        assert_eq!(p9.len(), 7);
        assert!(p9[0].is_one() && p9[3].is_one() && p9[6].is_one());
    }

    #[test]
    fn roots_of_unity() {
        for n in 2..=48u64 {
            let z = CycloElement::zeta_pow(n, 1);
            assert!(z.pow(n as i64).is_one(), "zeta_{n}^{n} != 1");
            // Phi_n(zeta_n) = 0
            let phi = cyclotomic_poly(n);
            let mut acc = CycloElement::zero(n);
            for (i, c) in phi.iter().enumerate() {
                acc = acc.add(&z.pow(i as i64).scale(c));
            }
            assert!(acc.is_zero(), "Phi_{n}(zeta_{n}) != 0");
        }
    }

    #[test]
    fn sqrt3_in_q_zeta9() {
        // (zeta_9^3 - zeta_9^-3)^2 = -3
        let z3 = CycloElement::zeta_pow(9, 3);
        let zm3 = CycloElement::zeta_pow(9, -3);
        let d = z3.sub(&zm3);
        let sq = d.mul(&d);
        assert_eq!(sq, CycloElement::from_rat(9, rati(-3)));
    }

    #[test]
    fn zeta18_pow9_is_minus_one() {
        let z = CycloElement::zeta_pow(18, 9);
        assert_eq!(z, CycloElement::from_rat(18, rati(-1)));
    }

    #[test]
    fn field_inverse() {
        let z = CycloElement::zeta_pow(6, 1);
        let zi = z.invert().unwrap();
        assert!(z.mul(&zi).is_one());
        let e = CycloElement::zeta_pow(9, 2).add(&CycloElement::from_rat(9, rati(5)));
        let ei = e.invert().unwrap();
        assert!(e.mul(&ei).is_one());
        assert!(CycloElement::zero(9).invert().is_none());
    }

    #[test]
    fn conductor_lifting() {
        let a = CycloElement::zeta_pow(9, 1);
        let b = CycloElement::zeta_pow(18, 2);
        // zeta_18^2 = zeta_9
        assert_eq!(a, b);
        let c = CycloElement::zeta_pow(6, 1).mul(&CycloElement::zeta_pow(9, 1));
        // zeta_6 * zeta_9 = zeta_18^{3+2}
        assert_eq!(c, CycloElement::zeta_pow(18, 5));
    }

    #[test]
    fn conjugation() {
        let z = CycloElement::zeta_pow(9, 2);
        assert_eq!(z.conj(), CycloElement::zeta_pow(9, -2));
        let s = z.add(&z.conj());
        assert_eq!(s.conj(), s);
    }
}
