//! Truncated Puiseux series: sparse q-expansions with exponents in (1/M)*Z.
//!
//! Truncation is exclusive: coefficients are known for exponents strictly
//! below `trunc`. Each series carries its own exponent denominator M; binary
//! operations rescale to the lcm. Exponents may be negative down to a
//! configurable floor (a guard against runaway computations).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicI64, Ordering};

use num::{One, Signed, ToPrimitive, Zero};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::rational::{lcm_i64, rat_to_str, rati, Rat};

/// Sentinel truncation order for exact series (2^40).
pub fn infinite_order() -> Rat {
    rati(1 << 40)
}

static NEG_EXP_FLOOR: AtomicI64 = AtomicI64::new(-10);

/// Exponent floor in q-units (default -10). Terms below this panic.
pub fn set_negative_exponent_floor(floor: i64) {
    NEG_EXP_FLOOR.store(floor, Ordering::Relaxed);
}

fn neg_exp_floor() -> i64 {
    NEG_EXP_FLOOR.load(Ordering::Relaxed)
}

#[derive(Clone, Debug)]
pub struct PuiseuxSeries<C: Coeff> {
    /// Exponent denominator M: key k encodes exponent k/M.
    exp_den: i64,
    terms: BTreeMap<i64, C>,
    /// Exclusive truncation order, in exponent units.
    trunc: Rat,
}

/// Outcome of an exact comparison to a given order.
#[derive(Clone, Debug, PartialEq)]
pub enum Compare<C> {
    Equal,
    Mismatch { exponent: Rat, left: C, right: C },
}

impl<C: Coeff> PuiseuxSeries<C> {
    pub fn zero(trunc: Rat) -> Self {
        PuiseuxSeries {
            exp_den: 1,
            terms: BTreeMap::new(),
            trunc: trunc.min(infinite_order()),
        }
    }

    pub fn one() -> Self {
        Self::from_term(Rat::zero(), C::one())
    }

    /// coeff * q^exponent, exact (truncation at the sentinel order).
    pub fn from_term(exponent: Rat, coeff: C) -> Self {
        let m = exponent.denom().to_i64().expect("exponent denominator overflow");
        let mut s = PuiseuxSeries {
            exp_den: m,
            terms: BTreeMap::new(),
            trunc: infinite_order(),
        };
        if !coeff.is_zero() {
            let k = (exponent.numer()).to_i64().expect("exponent overflow");
            s.insert(k, coeff);
        }
        s
    }

    pub fn exp_den(&self) -> i64 {
        self.exp_den
    }

    pub fn trunc(&self) -> &Rat {
        &self.trunc
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn key_to_exp(&self, k: i64) -> Rat {
        Rat::new(k.into(), self.exp_den.into())
    }

    /// Least stored exponent.
    pub fn ord(&self) -> Option<Rat> {
        self.terms.keys().next().map(|&k| self.key_to_exp(k))
    }

    /// Lower bound for the order: the least exponent, or trunc for zero series.
    fn ord_lb(&self) -> Rat {
        self.ord().unwrap_or_else(|| self.trunc.clone())
    }

    fn insert(&mut self, k: i64, c: C) {
        debug_assert!(!c.is_zero());
        let floor = neg_exp_floor() * self.exp_den;
        assert!(
            k >= floor,
            "exponent {}/{} fell below the negative-exponent floor {}",
            k,
            self.exp_den,
            neg_exp_floor()
        );
        self.terms.insert(k, c);
    }

    fn add_at(&mut self, k: i64, c: &C) {
        if c.is_zero() {
            return;
        }
        let floor = neg_exp_floor() * self.exp_den;
        assert!(k >= floor, "exponent below negative-exponent floor");
        match self.terms.get_mut(&k) {
            Some(v) => {
                v.acc(c);
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    /// Scaled-key bound for the truncation (first excluded key).
    fn trunc_key(&self) -> i64 {
        let t = &self.trunc * rati(self.exp_den);
        t.ceil().to_integer().to_i64().unwrap_or(i64::MAX)
    }

    /// Rescale so the exponent denominator becomes `m` (a multiple of M).
    pub fn with_exp_den(&self, m: i64) -> Self {
        assert!(m % self.exp_den == 0, "new denominator must be a multiple");
        if m == self.exp_den {
            return self.clone();
        }
        let f = m / self.exp_den;
        let terms = self.terms.iter().map(|(&k, c)| (k * f, c.clone())).collect();
        PuiseuxSeries {
            exp_den: m,
            terms,
            trunc: self.trunc.clone(),
        }
    }

    /// Reduce the exponent denominator by the gcd of all keys and M.
    pub fn normalize(&mut self) {
        let mut g = self.exp_den;
        for &k in self.terms.keys() {
            g = num::integer::gcd(g, k.abs());
            if g == 1 {
                return;
            }
        }
        if g > 1 {
            self.exp_den /= g;
            self.terms = std::mem::take(&mut self.terms)
                .into_iter()
                .map(|(k, c)| (k / g, c))
                .collect();
        }
    }

    pub fn coeff_at(&self, exponent: &Rat) -> C {
        let scaled = exponent * rati(self.exp_den);
        if !scaled.denom().is_one() {
            return C::zero();
        }
        let k = scaled.to_integer().to_i64().expect("exponent overflow");
        self.terms.get(&k).cloned().unwrap_or_else(C::zero)
    }

    /// Iterate (exponent, coefficient) in ascending exponent order.
    pub fn iter_terms(&self) -> impl Iterator<Item = (Rat, &C)> + '_ {
        self.terms.iter().map(|(&k, c)| (self.key_to_exp(k), c))
    }

    pub fn truncate_to(&self, t: &Rat) -> Self {
        let mut out = self.clone();
        out.trunc = t.min(&self.trunc).clone();
        let bound = out.trunc_key();
        out.terms.retain(|&k, _| k < bound);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = lcm_i64(self.exp_den, other.exp_den);
        let mut a = self.with_exp_den(m);
        let b = other.with_exp_den(m);
        a.trunc = a.trunc.min(b.trunc.clone());
        let bound = a.trunc_key();
        a.terms.retain(|&k, _| k < bound);
        for (&k, c) in b.terms.iter() {
            if k < bound {
                a.add_at(k, c);
            }
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc.clone());
        }
        let mut out = self.clone();
        out.terms = std::mem::take(&mut out.terms)
            .into_iter()
            .filter_map(|(k, v)| {
                let p = v.mul_ref(c);
                (!p.is_zero()).then_some((k, p))
            })
            .collect();
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero(self.trunc.clone());
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.scale_rat(r);
        }
        out
    }

    /// Multiply by the exact monomial coeff * q^exponent.
    pub fn mul_monomial(&self, exponent: &Rat, coeff: &C) -> Self {
        if coeff.is_zero() {
            return Self::zero(&self.trunc + exponent);
        }
        let m = lcm_i64(self.exp_den, exponent.denom().to_i64().expect("overflow"));
        let s = self.with_exp_den(m);
        let shift = (exponent * rati(m)).to_integer().to_i64().expect("overflow");
        let mut out = PuiseuxSeries {
            exp_den: m,
            terms: BTreeMap::new(),
            trunc: (&s.trunc + exponent).min(infinite_order()),
        };
        for (&k, c) in s.terms.iter() {
            let p = c.mul_ref(coeff);
            if !p.is_zero() {
                out.insert(k + shift, p);
            }
        }
        out
    }

    /// Cauchy product. Truncation: min(T_a + ord(b), T_b + ord(a)).
    pub fn mul(&self, other: &Self) -> Self {
        let m = lcm_i64(self.exp_den, other.exp_den);
        let a = self.with_exp_den(m);
        let b = other.with_exp_den(m);
        let trunc = (&a.trunc + b.ord_lb())
            .min(&b.trunc + a.ord_lb())
            .min(infinite_order());
        let mut out = PuiseuxSeries {
            exp_den: m,
            terms: BTreeMap::new(),
            trunc,
        };
        let bound = out.trunc_key();
        for (&ka, ca) in a.terms.iter() {
            for (&kb, cb) in b.terms.iter() {
                let k = ka + kb;
                if k >= bound {
                    break;
                }
                out.add_at(k, &ca.mul_ref(cb));
            }
        }
        out
    }

    /// Multiply by the exact linear factor (1 - u * q^exponent).
    pub fn mul_linear(&self, exponent: &Rat, u: &C) -> Self {
        let shifted = self.mul_monomial(exponent, &(-u.clone()));
        self.add(&shifted)
    }

    /// Divide by (1 - u * q^exponent), exponent > 0. Exact to self.trunc.
    pub fn divide_linear(&self, exponent: &Rat, u: &C) -> Self {
        assert!(exponent.is_positive(), "divide_linear needs exponent > 0");
        let m = lcm_i64(self.exp_den, exponent.denom().to_i64().expect("overflow"));
        let s = self.with_exp_den(m);
        let step = (exponent * rati(m)).to_integer().to_i64().expect("overflow");
        let bound = s.trunc_key();
        let mut out = PuiseuxSeries {
            exp_den: m,
            terms: BTreeMap::new(),
            trunc: s.trunc.clone(),
        };
        // The quotient satisfies out[k] = in[k] + u * out[k - step]; process
        // each residue class mod step as an independent running accumulation.
        let mut starts: BTreeMap<i64, i64> = BTreeMap::new();
        for &k in s.terms.keys() {
            let r = k.rem_euclid(step);
            starts.entry(r).and_modify(|v| *v = (*v).min(k)).or_insert(k);
        }
        for (_, &k0) in starts.iter() {
            let mut running = C::zero();
            let mut k = k0;
            while k < bound {
                running = running.mul_ref(u);
                if let Some(c) = s.terms.get(&k) {
                    running.acc(c);
                }
                if !running.is_zero() {
                    out.insert(k, running.clone());
                }
                k += step;
            }
        }
        out
    }

    /// Rescale every exponent (and the truncation order) by a positive
    /// rational: the series of tau -> f*tau.
    pub fn scale_exponents(&self, f: &Rat) -> Self {
        assert!(f.is_positive());
        let den = f.denom().to_i64().expect("overflow");
        let num = f.numer().to_i64().expect("overflow");
        let mut out = PuiseuxSeries {
            exp_den: self.exp_den * den,
            terms: self
                .terms
                .iter()
                .map(|(&j, c)| (j * num, c.clone()))
                .collect(),
            trunc: (&self.trunc * f).min(infinite_order()),
        };
        out.normalize();
        out
    }

    /// q -> q^k: every exponent (and the truncation order) multiplied by k.
    pub fn substitute_q_power(&self, k: i64) -> Self {
        assert!(k >= 1);
        let mut out = PuiseuxSeries {
            exp_den: self.exp_den,
            terms: self
                .terms
                .iter()
                .map(|(&j, c)| (j * k, c.clone()))
                .collect(),
            trunc: (&self.trunc * rati(k)).min(infinite_order()),
        };
        out.normalize();
        out
    }

    /// Series inverse. Errors on the zero series or a non-invertible
    /// leading coefficient. The result is known below T - 2*ord(self).
    pub fn invert(&self) -> Result<Self> {
        let (&k0, c0) = self.terms.iter().next().ok_or(Error::ZeroInverse)?;
        let c0_inv = c0.inv().ok_or(Error::NonInvertibleLeading)?;
        let m = self.exp_den;
        let e0 = self.key_to_exp(k0);
        // self = c0 q^{e0} (1 + g); invert 1 + g by the convolution
        // recurrence on the monoid generated by supp(g).
        let g: Vec<(i64, C)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(&k, c)| (k - k0, c.mul_ref(&c0_inv)))
            .collect();
        let t_inv = (&self.trunc - &e0) - &e0; // known below T - 2 e0
        let bound_exp = (&t_inv + &e0) * rati(m); // in keys of (1+g)^{-1}
        let bound = bound_exp.ceil().to_integer().to_i64().unwrap_or(i64::MAX);

        let mut h: BTreeMap<i64, C> = BTreeMap::new();
        h.insert(0, C::one());
        let mut work: std::collections::BTreeSet<i64> =
            g.iter().map(|(k, _)| *k).filter(|&k| k < bound).collect();
        while let Some(&k) = work.iter().next() {
            work.remove(&k);
            if h.contains_key(&k) {
                continue;
            }
            let mut acc = C::zero();
            for (j, gj) in g.iter() {
                if *j > k {
                    break;
                }
                if let Some(hk) = h.get(&(k - j)) {
                    acc.acc(&(-gj.mul_ref(hk)));
                }
            }
            if !acc.is_zero() {
                h.insert(k, acc);
                for (j, _) in g.iter() {
                    let next = k + j;
                    if next < bound && !h.contains_key(&next) {
                        work.insert(next);
                    }
                }
            }
        }

        let mut out = PuiseuxSeries {
            exp_den: m,
            terms: BTreeMap::new(),
            trunc: t_inv.min(infinite_order()),
        };
        let out_bound = out.trunc_key();
        for (k, c) in h {
            let key = k - k0;
            if key < out_bound {
                let v = c.mul_ref(&c0_inv);
                if !v.is_zero() {
                    out.insert(key, v);
                }
            }
        }
        Ok(out)
    }

    pub fn pow_i(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::one().truncate_to(&self.trunc));
        }
        let (mut base, mut e) = if n < 0 {
            (self.invert()?, (-n) as u64)
        } else {
            (self.clone(), n as u64)
        };
        let mut result: Option<Self> = None;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    Some(r) => r.mul(&base),
                    None => base.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result.unwrap())
    }

    /// Add `q^shift * s` into self, keeping self's truncation.
    pub fn add_shifted(&mut self, s: &Self, shift: &Rat) {
        debug_assert!(
            &(&s.trunc + shift) >= &self.trunc,
            "shifted summand is known to a lower order than the accumulator"
        );
        let shift_den = shift.denom().to_i64().expect("overflow");
        let m = lcm_i64(self.exp_den, lcm_i64(s.exp_den, shift_den));
        if m != self.exp_den {
            *self = self.with_exp_den(m);
        }
        let s = s.with_exp_den(m);
        let delta = (shift * rati(m)).to_integer().to_i64().expect("overflow");
        let bound = self.trunc_key();
        for (&k, c) in s.terms.iter() {
            let key = k + delta;
            if key >= bound {
                break;
            }
            self.add_at(key, c);
        }
    }

    /// Exact comparison below `t`. Errors if `t` exceeds either truncation.
    pub fn compare_to_order(&self, other: &Self, t: &Rat) -> Result<Compare<C>> {
        let tmin = self.trunc.clone().min(other.trunc.clone());
        if t > &tmin {
            return Err(Error::TruncationExceeded(
                rat_to_str(t),
                rat_to_str(&tmin),
            ));
        }
        let m = lcm_i64(self.exp_den, other.exp_den);
        let a = self.with_exp_den(m);
        let b = other.with_exp_den(m);
        let bound_exp = t * rati(m);
        let mut keys: Vec<i64> = a
            .terms
            .keys()
            .chain(b.terms.keys())
            .copied()
            .filter(|&k| Rat::from_integer(k.into()) < bound_exp)
            .collect();
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            let ca = a.terms.get(&k).cloned().unwrap_or_else(C::zero);
            let cb = b.terms.get(&k).cloned().unwrap_or_else(C::zero);
            if ca != cb {
                return Ok(Compare::Mismatch {
                    exponent: a.key_to_exp(k),
                    left: ca,
                    right: cb,
                });
            }
        }
        Ok(Compare::Equal)
    }

    /// Terms whose exponent is congruent to j modulo the positive integer md.
    pub fn dissect(&self, j: i64, md: i64) -> Self {
        assert!(md >= 1);
        let step = md * self.exp_den;
        let want = (j * self.exp_den).rem_euclid(step);
        let mut out = self.clone();
        out.terms.retain(|&k, _| k.rem_euclid(step) == want);
        out
    }

    /// If every stored exponent has the same fractional part, return it.
    pub fn exponent_class_mod1(&self) -> Option<Rat> {
        let mut cls: Option<Rat> = None;
        for (e, _) in self.iter_terms() {
            let frac = &e - e.floor();
            match &cls {
                None => cls = Some(frac),
                Some(c) if *c == frac => {}
                _ => return None,
            }
        }
        cls
    }
}

/// Truncated product of (1 - u q^{a + k s}) for k in 0..n (or unbounded).
///
/// For `n = None` the product runs while the factor exponent stays below the
/// truncation order; every factor exponent must be positive or the product
/// would not stabilize. Finite products accept nonpositive exponents.
pub fn pochhammer<C: Coeff>(
    a_exp: &Rat,
    u: &C,
    step: &Rat,
    n: Option<u64>,
    t: &Rat,
) -> Result<PuiseuxSeries<C>> {
    assert!(step.is_positive(), "pochhammer step must be positive");
    let mut out = PuiseuxSeries::<C>::one().truncate_to(t);
    match n {
        Some(n) => {
            // ascending exponent order keeps intermediate orders as high as
            // possible when some exponents are negative
            let mut exps: Vec<Rat> = (0..n).map(|k| a_exp + step * rati(k as i64)).collect();
            exps.sort();
            // exact polynomial: do not truncate intermediate products
            out = PuiseuxSeries::<C>::one();
            for e in exps {
                out = out.mul_linear(&e, u);
            }
            out = out.truncate_to(t);
        }
        None => {
            let mut k = 0i64;
            loop {
                let e = a_exp + step * rati(k);
                if &e >= t {
                    break;
                }
                if !e.is_positive() {
                    return Err(Error::InfiniteProductExponent(rat_to_str(&e)));
                }
                out = out.mul_linear(&e, u);
                k += 1;
            }
            out = out.truncate_to(t);
        }
    }
    Ok(out)
}

/// Truncated 1 / prod (1 - u q^{a + k s}), all exponents positive.
pub fn inv_pochhammer<C: Coeff>(
    a_exp: &Rat,
    u: &C,
    step: &Rat,
    n: Option<u64>,
    t: &Rat,
) -> Result<PuiseuxSeries<C>> {
    assert!(step.is_positive());
    let mut out = PuiseuxSeries::<C>::one().truncate_to(t);
    let mut k = 0i64;
    loop {
        if let Some(n) = n {
            if k as u64 >= n {
                break;
            }
        }
        let e = a_exp + step * rati(k);
        if &e >= t {
            break;
        }
        if !e.is_positive() {
            return Err(Error::InfiniteProductExponent(rat_to_str(&e)));
        }
        out = out.divide_linear(&e, u);
        k += 1;
    }
    Ok(out)
}

impl<C: Coeff> fmt::Display for PuiseuxSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.iter_terms() {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "({})", c)?;
            } else if e.denom().is_one() {
                write!(f, "({})*q^{}", c, e.numer())?;
            } else {
                write!(f, "({})*q^({})", c, rat_to_str(&e))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if self.trunc < infinite_order() {
            write!(f, " + O(q^({}))", rat_to_str(&self.trunc))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rati};

    type QS = PuiseuxSeries<Rat>;

    fn q() -> QS {
        QS::from_term(rati(1), Rat::one())
    }

    #[test]
    fn from_term_basics() {
        let one = QS::from_term(Rat::zero(), Rat::one());
        assert!(one.coeff_at(&Rat::zero()).is_one());
        let s = QS::from_term(rat(11, 60), Rat::one());
        assert_eq!(s.exp_den(), 60);
        assert_eq!(*s.trunc(), infinite_order());
    }

    #[test]
    fn add_cancellation() {
        // (1 + q) + (1 - q) = 2
        let a = QS::one().add(&q());
        let b = QS::one().sub(&q());
        let s = a.add(&b);
        assert_eq!(s.num_terms(), 1);
        assert_eq!(s.coeff_at(&Rat::zero()), rati(2));
    }

    #[test]
    fn exponent_lattice_merge() {
        let a = QS::from_term(rat(1, 2), Rat::one());
        let b = QS::from_term(rat(1, 3), Rat::one());
        let s = a.add(&b);
        assert_eq!(s.exp_den(), 6);
        assert!(s.coeff_at(&rat(1, 2)).is_one());
        assert!(s.coeff_at(&rat(1, 3)).is_one());
    }

    #[test]
    fn geometric_inverse() {
        // (1 - q) * (1 + q + q^2 + ...) = 1
        let t = rati(20);
        let geo = QS::one().truncate_to(&t).divide_linear(&rati(1), &Rat::one());
        let prod = QS::one().sub(&q()).mul(&geo);
        assert_eq!(prod.compare_to_order(&QS::one(), &t).unwrap(), Compare::Equal);
    }

    #[test]
    fn invert_one_minus_q() {
        let f = QS::one().sub(&q()).truncate_to(&rati(10));
        let inv = f.invert().unwrap();
        for k in 0..10 {
            assert!(inv.coeff_at(&rati(k)).is_one());
        }
    }

    #[test]
    fn invert_monomial_prefactor() {
        // 1 / (q^{1/2} (1 + q)) = q^{-1/2} (1 - q + q^2 - ...)
        let f = QS::from_term(rat(1, 2), Rat::one())
            .mul(&QS::one().add(&q()))
            .truncate_to(&rati(8));
        let inv = f.invert().unwrap();
        assert_eq!(inv.ord().unwrap(), rat(-1, 2));
        assert_eq!(inv.coeff_at(&rat(1, 2)), rati(-1));
        assert_eq!(inv.coeff_at(&rat(3, 2)), rati(1));
        let prod = f.mul(&inv);
        assert_eq!(
            prod.compare_to_order(&QS::one(), &rati(6)).unwrap(),
            Compare::Equal
        );
    }

    #[test]
    fn substitute_power() {
        let s = QS::one().add(&q()).substitute_q_power(2);
        assert!(s.coeff_at(&rati(2)).is_one());
        assert!(s.coeff_at(&rati(1)).is_zero());
        // composition law
        let f = QS::one().add(&q()).add(&QS::from_term(rat(1, 2), rati(3)));
        let a = f.substitute_q_power(2).substitute_q_power(3);
        let b = f.substitute_q_power(6);
        assert_eq!(a.compare_to_order(&b, &rati(100)).unwrap(), Compare::Equal);
    }

    #[test]
    fn pochhammer_euler() {
        // (q;q)_infty = 1 - q - q^2 + q^5 + q^7 - q^12 - ...
        let t = rati(15);
        let p = pochhammer(&rati(1), &Rat::one(), &rati(1), None, &t).unwrap();
        assert_eq!(p.coeff_at(&rati(0)), rati(1));
        assert_eq!(p.coeff_at(&rati(1)), rati(-1));
        assert_eq!(p.coeff_at(&rati(2)), rati(-1));
        assert_eq!(p.coeff_at(&rati(3)), rati(0));
        assert_eq!(p.coeff_at(&rati(5)), rati(1));
        assert_eq!(p.coeff_at(&rati(7)), rati(1));
        assert_eq!(p.coeff_at(&rati(12)), rati(-1));
    }

    #[test]
    fn pochhammer_zero_factors() {
        let p = pochhammer(&rati(3), &Rat::one(), &rati(1), Some(0), &rati(10)).unwrap();
        assert!(p.coeff_at(&Rat::zero()).is_one());
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn pochhammer_negative_exponents() {
        // (-q^{-5}; q^2)_3 = (1+q^{-5})(1+q^{-3})(1+q^{-1})
        let p = pochhammer(&rati(-5), &(-Rat::one()), &rati(2), Some(3), &rati(10)).unwrap();
        assert_eq!(p.ord().unwrap(), rati(-9));
        assert!(p.coeff_at(&rati(-5)).is_one());
        assert!(p.coeff_at(&rati(0)).is_one());
    }

    #[test]
    fn pochhammer_infinite_rejects_nonpositive() {
        assert!(pochhammer(&rati(0), &Rat::one(), &rati(1), None, &rati(5)).is_err());
        assert!(pochhammer(&rati(-2), &Rat::one(), &rati(1), None, &rati(5)).is_err());
    }

    #[test]
    fn compare_mismatch_and_window() {
        let a = QS::one().add(&q());
        let b = QS::one().sub(&q());
        match a.compare_to_order(&b, &rati(5)).unwrap() {
            Compare::Mismatch { exponent, left, right } => {
                assert_eq!(exponent, rati(1));
                assert_eq!(left, rati(1));
                assert_eq!(right, rati(-1));
            }
            Compare::Equal => panic!("expected mismatch"),
        }
        // mismatch beyond the window is invisible
        let c = QS::one().add(&q()).add(&QS::from_term(rati(5), Rat::one()));
        assert_eq!(
            a.compare_to_order(&c, &rati(5)).unwrap(),
            Compare::Equal
        );
    }

    #[test]
    fn compare_exceeding_truncation_errors() {
        let a = QS::one().truncate_to(&rati(5));
        assert!(a.compare_to_order(&QS::one(), &rati(6)).is_err());
    }

    #[test]
    fn mul_truncation_propagation() {
        // T = min(T_a + ord(b), T_b + ord(a))
        let a = q().truncate_to(&rati(5)); // ord 1, T 5
        let b = QS::from_term(rati(2), Rat::one()).truncate_to(&rati(7)); // ord 2, T 7
        let p = a.mul(&b);
        assert_eq!(*p.trunc(), rati(7).min(rati(8)));
    }

    #[test]
    fn dissect_parity() {
        let s = QS::one()
            .add(&q())
            .add(&QS::from_term(rati(2), rati(5)))
            .add(&QS::from_term(rati(3), rati(7)));
        let even = s.dissect(0, 2);
        let odd = s.dissect(1, 2);
        assert_eq!(even.num_terms(), 2);
        assert_eq!(odd.num_terms(), 2);
        assert_eq!(even.add(&odd).compare_to_order(&s, &rati(4)).unwrap(), Compare::Equal);
    }
}
