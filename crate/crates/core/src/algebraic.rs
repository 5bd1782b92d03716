//! Symbolic algebraic scalars and matrices: sums of terms
//! c * prod atom^e with atoms cos(r pi), sin(r pi), e^{i r pi}, sqrt(n).
//!
//! Atoms stay symbolic until either numeric evaluation at a requested
//! precision, or exact embedding into a cyclotomic field (cos(a pi / b) =
//! (zeta_{2b}^a + zeta_{2b}^{-a})/2 and friends; sqrt(n) via the quadratic
//! Gauss sum in Q(zeta_{4n})). The embedding is what lets the paper-style
//! equalities such as cos(9 pi/10) = -sin(2 pi/5) be decided exactly.

use std::fmt;

use num::{One, Signed, ToPrimitive, Zero};

use crate::bigfloat::{BigComplex, BigReal};
use crate::cyclo::CycloElement;
use crate::rational::{rat, rati, Rat};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Prim {
    /// cos(r * pi)
    CosPi(Rat),
    /// sin(r * pi)
    SinPi(Rat),
    /// e^{i r pi}
    ExpPi(Rat),
    /// sqrt of a positive integer
    Sqrt(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: Rat,
    /// (atom, power) with nonzero integer powers, sorted for canonical form.
    pub factors: Vec<(Prim, i32)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgScalar {
    pub terms: Vec<Term>,
}

fn normalize_factors(mut f: Vec<(Prim, i32)>) -> Vec<(Prim, i32)> {
    f.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Prim, i32)> = Vec::new();
    for (p, e) in f {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some((q, eq)) if *q == p => {
                *eq += e;
            }
            _ => out.push((p, e)),
        }
    }
    out.retain(|(_, e)| *e != 0);
    out
}

impl AlgScalar {
    pub fn zero() -> Self {
        AlgScalar { terms: Vec::new() }
    }

    pub fn from_rat(r: Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        AlgScalar {
            terms: vec![Term { coeff: r, factors: Vec::new() }],
        }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn term(coeff: Rat, factors: Vec<(Prim, i32)>) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        AlgScalar {
            terms: vec![Term {
                coeff,
                factors: normalize_factors(factors),
            }],
        }
    }

    /// zeta_n^k = e^{2 pi i k / n}.
    pub fn zeta(n: i64, k: i64) -> Self {
        Self::term(Rat::one(), vec![(Prim::ExpPi(rat(2 * k, n)), 1)])
    }

    pub fn cos_pi(r: Rat) -> Self {
        Self::term(Rat::one(), vec![(Prim::CosPi(r), 1)])
    }

    pub fn sin_pi(r: Rat) -> Self {
        Self::term(Rat::one(), vec![(Prim::SinPi(r), 1)])
    }

    pub fn exp_pi_i(r: Rat) -> Self {
        Self::term(Rat::one(), vec![(Prim::ExpPi(r), 1)])
    }

    pub fn sqrt_int(n: u64) -> Self {
        Self::term(Rat::one(), vec![(Prim::Sqrt(n), 1)])
    }

    pub fn is_zero_syntactic(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for t in &o.terms {
            match terms.iter_mut().find(|u| u.factors == t.factors) {
                Some(u) => u.coeff += &t.coeff,
                None => terms.push(t.clone()),
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        AlgScalar { terms }
    }

    pub fn neg(&self) -> Self {
        AlgScalar {
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: -t.coeff.clone(), factors: t.factors.clone() })
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for a in &self.terms {
            for b in &o.terms {
                let mut f = a.factors.clone();
                f.extend(b.factors.iter().cloned());
                let t = Self::term(&a.coeff * &b.coeff, f);
                out = out.add(&t);
            }
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        AlgScalar {
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: &t.coeff * r, factors: t.factors.clone() })
                .collect(),
        }
    }

    /// Inverse of a single-term scalar whose atoms are units (ExpPi, Sqrt).
    pub fn inv_unit(&self) -> Self {
        assert_eq!(self.terms.len(), 1, "inv_unit needs a single term");
        let t = &self.terms[0];
        assert!(
            t.factors
                .iter()
                .all(|(p, _)| matches!(p, Prim::ExpPi(_) | Prim::Sqrt(_))),
            "inv_unit needs unit atoms"
        );
        AlgScalar {
            terms: vec![Term {
                coeff: t.coeff.recip(),
                factors: t.factors.iter().map(|(p, e)| (p.clone(), -e)).collect(),
            }],
        }
    }

    /// True when the scalar is a single term +-(root of unity).
    pub fn is_root_of_unity(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].coeff.abs().is_one()
            && self.terms[0]
                .factors
                .iter()
                .all(|(p, _)| matches!(p, Prim::ExpPi(_)))
    }

    pub fn eval(&self, prec: usize) -> BigComplex {
        let pi = BigReal::pi(prec);
        let mut acc = BigComplex::zero(prec);
        for t in &self.terms {
            let mut v = BigComplex::new(BigReal::from_rat(&t.coeff, prec), BigReal::zero(prec));
            for (p, e) in &t.factors {
                let base = match p {
                    Prim::CosPi(r) => {
                        let x = BigReal::from_rat(r, prec).mul(&pi);
                        BigComplex::new(x.cos(), BigReal::zero(prec))
                    }
                    Prim::SinPi(r) => {
                        let x = BigReal::from_rat(r, prec).mul(&pi);
                        BigComplex::new(x.sin(), BigReal::zero(prec))
                    }
                    Prim::ExpPi(r) => {
                        let x = BigReal::from_rat(r, prec).mul(&pi);
                        BigComplex::new(x.cos(), x.sin())
                    }
                    Prim::Sqrt(n) => BigComplex::new(
                        BigReal::from_i64(*n as i64, prec).sqrt(),
                        BigReal::zero(prec),
                    ),
                };
                v = v.mul(&base.powi_signed(*e as i64));
            }
            acc = acc.add(&v);
        }
        acc
    }

    /// Exact embedding into a cyclotomic field. None if some atom inverse
    /// does not exist (a zero cosine, say).
    pub fn to_cyclo(&self) -> Option<CycloElement> {
        let mut acc = CycloElement::zero(1);
        for t in &self.terms {
            let mut v = CycloElement::from_rat(1, t.coeff.clone());
            for (p, e) in &t.factors {
                let base = prim_to_cyclo(p);
                let powed = if *e >= 0 {
                    base.pow(*e as i64)
                } else {
                    base.invert()?.pow((-*e) as i64)
                };
                v = v.mul(&powed);
            }
            acc = acc.add(&v);
        }
        Some(acc)
    }

    /// Exact equality via the cyclotomic embedding.
    pub fn eq_exact(&self, o: &Self) -> Option<bool> {
        let d = self.sub(o).to_cyclo()?;
        Some(d.is_zero())
    }
}

fn prim_to_cyclo(p: &Prim) -> CycloElement {
    match p {
        Prim::ExpPi(r) => zeta_of_rat(r),
        Prim::CosPi(r) => {
            let z = zeta_of_rat(r);
            z.add(&z.conj()).scale(&rat(1, 2))
        }
        Prim::SinPi(r) => {
            // sin = (z - z^{-1}) / (2i), i = zeta_4
            let z = zeta_of_rat(r);
            let i = CycloElement::zeta_pow(4, 1);
            let inv_2i = i.scale(&rati(2)).invert().expect("2i invertible");
            z.sub(&z.conj()).mul(&inv_2i)
        }
        Prim::Sqrt(n) => sqrt_as_cyclo(*n),
    }
}

/// e^{i r pi} as an exact root of unity: r = a/b -> zeta_{2b}^a.
fn zeta_of_rat(r: &Rat) -> CycloElement {
    let a = r.numer().to_i64().expect("phase overflow");
    let b = r.denom().to_i64().expect("phase overflow");
    CycloElement::zeta_pow((2 * b) as u64, a)
}

/// sqrt(n) in Q(zeta_{4s}) for the squarefree part s, by the quadratic
/// Gauss sum: sum_{a mod 4s} zeta_{4s}^{a^2} = (1+i) sqrt(4s).
pub fn sqrt_as_cyclo(n: u64) -> CycloElement {
    assert!(n >= 1);
    let mut s = n;
    let mut square = 1u64;
    let mut d = 2u64;
    while d * d <= s {
        while s % (d * d) == 0 {
            s /= d * d;
            square *= d;
        }
        d += 1;
    }
    if s == 1 {
        return CycloElement::from_rat(1, rati(square as i64));
    }
    let m = 4 * s;
    let mut g = CycloElement::zero(m);
    for a in 0..m {
        g = g.add(&CycloElement::zeta_pow(m, ((a * a) % m) as i64));
    }
    // g = (1+i) sqrt(4s) = 2 (1+i) sqrt(s)
    let i = CycloElement::zeta_pow(4, 1);
    let denom = CycloElement::one(4).add(&i).scale(&rati(2));
    let root = g.mul(&denom.invert().expect("1+i invertible"));
    root.scale(&rati(square as i64))
}

impl fmt::Display for AlgScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", t.coeff)?;
            for (p, e) in &t.factors {
                let name = match p {
                    Prim::CosPi(r) => format!("cos({}pi)", r),
                    Prim::SinPi(r) => format!("sin({}pi)", r),
                    Prim::ExpPi(r) => format!("e^({}pi i)", r),
                    Prim::Sqrt(n) => format!("sqrt({n})"),
                };
                if *e == 1 {
                    write!(f, "*{}", name)?;
                } else {
                    write!(f, "*{}^{}", name, e)?;
                }
            }
        }
        Ok(())
    }
}

/// Dense matrix of algebraic scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<AlgScalar>>,
}

impl AlgMatrix {
    pub fn from_entries(entries: Vec<Vec<AlgScalar>>) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        assert!(entries.iter().all(|r| r.len() == cols));
        AlgMatrix { rows, cols, entries }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { AlgScalar::one() } else { AlgScalar::zero() })
                    .collect()
            })
            .collect();
        Self::from_entries(entries)
    }

    pub fn diagonal(d: Vec<AlgScalar>) -> Self {
        let n = d.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { d[i].clone() } else { AlgScalar::zero() })
                    .collect()
            })
            .collect();
        Self::from_entries(entries)
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows == self.cols
            && self
                .entries
                .iter()
                .enumerate()
                .all(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .all(|(j, e)| i == j || e.is_zero_syntactic())
                })
    }

    /// Inverse of a diagonal matrix of unit atoms.
    pub fn diagonal_inverse(&self) -> Self {
        assert!(self.is_diagonal(), "diagonal inverse of non-diagonal matrix");
        let d = (0..self.rows)
            .map(|i| self.entries[i][i].inv_unit())
            .collect();
        Self::diagonal(d)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let entries = (0..self.rows)
            .map(|i| {
                (0..o.cols)
                    .map(|j| {
                        let mut acc = AlgScalar::zero();
                        for k in 0..self.cols {
                            acc = acc.add(&self.entries[i][k].mul(&o.entries[k][j]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Self::from_entries(entries)
    }

    pub fn scale(&self, s: &AlgScalar) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.mul(s)).collect())
            .collect();
        Self::from_entries(entries)
    }

    /// 2x2 block assembly: [[a, b], [c, d]].
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut entries = Vec::new();
        for i in 0..a.rows {
            let mut row = a.entries[i].clone();
            row.extend(b.entries[i].iter().cloned());
            entries.push(row);
        }
        for i in 0..c.rows {
            let mut row = c.entries[i].clone();
            row.extend(d.entries[i].iter().cloned());
            entries.push(row);
        }
        Self::from_entries(entries)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_entries(vec![vec![AlgScalar::zero(); cols]; rows])
    }

    pub fn eval(&self, prec: usize) -> Vec<Vec<BigComplex>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.eval(prec)).collect())
            .collect()
    }

    /// Entrywise exact equality via the cyclotomic embedding.
    pub fn eq_exact(&self, o: &Self) -> Option<bool> {
        if self.rows != o.rows || self.cols != o.cols {
            return Some(false);
        }
        for (ra, rb) in self.entries.iter().zip(o.entries.iter()) {
            for (a, b) in ra.iter().zip(rb.iter()) {
                match a.eq_exact(b) {
                    Some(true) => {}
                    other => return other,
                }
            }
        }
        Some(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_embedding() {
        for n in [2u64, 3, 5, 6, 7, 8, 12] {
            let s = sqrt_as_cyclo(n);
            let sq = s.mul(&s);
            assert_eq!(
                sq,
                CycloElement::from_rat(1, rati(n as i64)),
                "sqrt({n})^2 != {n}"
            );
            // numeric cross-check of the sign (positive root)
            let v = AlgScalar::sqrt_int(n).eval(128);
            assert!(v.re.to_f64() > 0.0);
        }
        assert_eq!(sqrt_as_cyclo(4), CycloElement::from_rat(1, rati(2)));
        assert_eq!(sqrt_as_cyclo(18), sqrt_as_cyclo(2).scale(&rati(3)));
    }

    #[test]
    fn sqrt_gauss_sum_sign() {
        // the Gauss-sum value must be +sqrt(n), not -sqrt(n)
        for n in [2u64, 3, 5] {
            let c = sqrt_as_cyclo(n);
            // embed numerically by evaluating the cyclotomic element
            let m = 4 * n;
            let mut acc = 0.0f64;
            for (k, coeff) in c.coeffs().iter().enumerate() {
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / (m as f64);
                acc += coeff.to_f64().unwrap() * theta.cos();
            }
            assert!((acc - (n as f64).sqrt()).abs() < 1e-9, "sqrt({n}) sign");
        }
    }

    #[test]
    fn cos_sin_identities() {
        // cos(9 pi/10) = -sin(2 pi/5)
        let lhs = AlgScalar::cos_pi(rat(9, 10));
        let rhs = AlgScalar::sin_pi(rat(2, 5)).neg();
        assert_eq!(lhs.eq_exact(&rhs), Some(true));
        // cos(pi/10) = sin(2 pi/5)
        let lhs = AlgScalar::cos_pi(rat(1, 10));
        let rhs = AlgScalar::sin_pi(rat(2, 5));
        assert_eq!(lhs.eq_exact(&rhs), Some(true));
        // and a false one
        let lhs = AlgScalar::cos_pi(rat(1, 10));
        let rhs = AlgScalar::sin_pi(rat(1, 5));
        assert_eq!(lhs.eq_exact(&rhs), Some(false));
    }

    #[test]
    fn matrix_algebra() {
        let z = AlgScalar::zeta(60, -1);
        let l = AlgMatrix::diagonal(vec![z.clone(), AlgScalar::zeta(60, 11)]);
        let li = l.diagonal_inverse();
        let prod = l.mul(&li);
        assert_eq!(prod.eq_exact(&AlgMatrix::identity(2)), Some(true));
        assert!(z.is_root_of_unity());
        assert!(!AlgScalar::sqrt_int(2).is_root_of_unity());
    }

    #[test]
    fn numeric_eval_matches_embedding() {
        let x = AlgScalar::cos_pi(rat(3, 7))
            .mul(&AlgScalar::sqrt_int(5))
            .add(&AlgScalar::zeta(9, 2).scale(&rat(1, 3)));
        let v = x.eval(192);
        let theta = std::f64::consts::PI;
        let expect_re = (3.0 * theta / 7.0).cos() * 5f64.sqrt()
            + (2.0 * 2.0 * theta / 9.0).cos() / 3.0;
        let expect_im = (2.0 * 2.0 * theta / 9.0).sin() / 3.0;
        assert!((v.re.to_f64() - expect_re).abs() < 1e-12);
        assert!((v.im.to_f64() - expect_im).abs() < 1e-12);
    }
}
