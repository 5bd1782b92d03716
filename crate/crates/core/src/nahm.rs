//! Generalized Nahm sums: lattice enumeration of
//! sum_n q^{(1/2) n^T (AD) n + B^T n + C} / prod_i (q^{d_i}; q^{d_i})_{n_i}.
//!
//! `NahmQuadruple` carries the (A, B, C, D) data with an exact positive-
//! definiteness certificate (rational LDL^T with positive pivots). The
//! enumeration box comes from a certified rational lower bound on the least
//! eigenvalue of AD; inside the box, the innermost loop breaks early once
//! the (convex) exponent passes the truncation order beyond its vertex.
//!
//! The section-5 example sums reuse the same engine in adaptive-box mode:
//! some of those displayed quadratic forms are only positive on the closed
//! positive cone (AD singular), so the box is grown until no accepted
//! lattice point reaches half of it.

use num::{Signed, Zero};
use serde::Deserialize;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::rational::{rat_ceil_i64, rat_from_str, rat_to_str, rati, sqrt_upper, Rat};
use crate::series::PuiseuxSeries;

/// Symmetric quadratic exponent data: (1/2) n^T M n + B^T n + C.
#[derive(Clone, Debug)]
pub struct QuadForm {
    pub m: Vec<Vec<Rat>>,
    pub b: Vec<Rat>,
    pub c: Rat,
}

impl QuadForm {
    pub fn rank(&self) -> usize {
        self.b.len()
    }

    pub fn exponent(&self, n: &[i64]) -> Rat {
        let mut acc = self.c.clone();
        for (i, &ni) in n.iter().enumerate() {
            if ni == 0 {
                continue;
            }
            acc += &self.b[i] * rati(ni);
            for (j, &nj) in n.iter().enumerate() {
                if nj != 0 {
                    acc += &self.m[i][j] * rati(ni * nj) / rati(2);
                }
            }
        }
        acc
    }

    /// Coefficients (quad, lin) of the exponent along coordinate `last` with
    /// all other coordinates fixed to `n`: e(x) = quad*x^2 + lin*x + const.
    fn line_coeffs(&self, n: &[i64], last: usize) -> (Rat, Rat) {
        let quad = &self.m[last][last] / rati(2);
        let mut lin = self.b[last].clone();
        for (j, &nj) in n.iter().enumerate() {
            if j != last && nj != 0 {
                lin += &self.m[last][j] * rati(nj);
            }
        }
        (quad, lin)
    }
}

/// (A, B, C, D) with rational A and AD symmetric positive definite.
#[derive(Clone, Debug)]
pub struct NahmQuadruple {
    a: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    c: Rat,
    d: Vec<i64>,
    ad: Vec<Vec<Rat>>,
}

#[derive(Deserialize)]
struct QuadrupleJson {
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    b: Vec<String>,
    #[serde(rename = "C")]
    c: String,
    #[serde(rename = "D")]
    d: Vec<i64>,
}

impl NahmQuadruple {
    pub fn new(a: Vec<Vec<Rat>>, b: Vec<Rat>, c: Rat, d: Vec<i64>) -> Result<Self> {
        let r = b.len();
        if a.len() != r || a.iter().any(|row| row.len() != r) || d.len() != r || r == 0 {
            return Err(Error::ParameterRange(
                "quadruple dimensions are inconsistent".into(),
            ));
        }
        if d.iter().any(|&di| di <= 0) {
            return Err(Error::ParameterRange("D entries must be positive".into()));
        }
        let mut ad = vec![vec![Rat::zero(); r]; r];
        for i in 0..r {
            for j in 0..r {
                ad[i][j] = &a[i][j] * rati(d[j]);
            }
        }
        for i in 0..r {
            for j in (i + 1)..r {
                if ad[i][j] != ad[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        ldlt_pivots(&ad)?;
        Ok(NahmQuadruple { a, b, c, d, ad })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: QuadrupleJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let a = j
            .a
            .iter()
            .map(|row| row.iter().map(|s| rat_from_str(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let b = j.b.iter().map(|s| rat_from_str(s)).collect::<Result<Vec<_>>>()?;
        let c = rat_from_str(&j.c)?;
        Self::new(a, b, c, j.d)
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    pub fn matrix_a(&self) -> &[Vec<Rat>] {
        &self.a
    }

    pub fn vector_b(&self) -> &[Rat] {
        &self.b
    }

    pub fn scalar_c(&self) -> &Rat {
        &self.c
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    pub fn form(&self) -> QuadForm {
        QuadForm {
            m: self.ad.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
        }
    }

    /// Certified rational lower bound for the least eigenvalue of AD.
    pub fn eigen_lower_bound(&self) -> Rat {
        min_eigen_lower_bound(&self.ad)
    }

    /// Box bound from the spec formula: any n with exponent < t satisfies
    /// n_i <= ceil((|B| + sqrt(|B|^2 + 2 lambda (t - C))) / lambda).
    pub fn box_bound(&self, t: &Rat) -> i64 {
        let lambda = self.eigen_lower_bound();
        let b_norm_sq: Rat = self.b.iter().map(|x| x * x).sum();
        let b_norm = sqrt_upper(&b_norm_sq);
        let gap = (t - &self.c).max(Rat::zero());
        let disc = &b_norm_sq + rati(2) * &lambda * &gap;
        let bound = (&b_norm + sqrt_upper(&disc)) / &lambda;
        rat_ceil_i64(&bound).max(1)
    }
}

/// Exact LDL^T pivots of a symmetric rational matrix. Errors when a pivot
/// is not strictly positive (matrix not positive definite).
pub fn ldlt_pivots(m: &[Vec<Rat>]) -> Result<Vec<Rat>> {
    let r = m.len();
    let mut l = vec![vec![Rat::zero(); r]; r];
    let mut piv = vec![Rat::zero(); r];
    for j in 0..r {
        let mut dj = m[j][j].clone();
        for k in 0..j {
            dj -= &l[j][k] * &l[j][k] * &piv[k];
        }
        if !dj.is_positive() {
            return Err(Error::NotPositiveDefinite {
                index: j,
                pivot: rat_to_str(&dj),
            });
        }
        piv[j] = dj;
        for i in (j + 1)..r {
            let mut v = m[i][j].clone();
            for k in 0..j {
                v -= &l[i][k] * &l[j][k] * &piv[k];
            }
            l[i][j] = &v / &piv[j];
        }
    }
    Ok(piv)
}

fn is_positive_definite_shifted(m: &[Vec<Rat>], mu: &Rat) -> bool {
    let r = m.len();
    let mut shifted = m.to_vec();
    for (i, row) in shifted.iter_mut().enumerate().take(r) {
        row[i] = &row[i] - mu;
    }
    ldlt_pivots(&shifted).is_ok()
}

/// Rational lower bound for the least eigenvalue of a symmetric positive
/// definite matrix, by bisection on "M - mu I has positive LDL^T pivots".
pub fn min_eigen_lower_bound(m: &[Vec<Rat>]) -> Rat {
    let mut hi = m
        .iter()
        .enumerate()
        .map(|(i, row)| row[i].clone())
        .min()
        .expect("nonempty matrix");
    assert!(
        ldlt_pivots(m).is_ok(),
        "eigenvalue bound requested for a non-positive-definite matrix"
    );
    let mut lo = Rat::zero();
    for _ in 0..64 {
        let mid = (&lo + &hi) / rati(2);
        if is_positive_definite_shifted(m, &mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        if lo.is_positive() && &hi - &lo < &hi / rati(1024) {
            break;
        }
    }
    assert!(lo.is_positive(), "bisection failed to certify a positive bound");
    lo
}

/// How the enumeration box is determined.
#[derive(Clone, Debug)]
pub enum BoxMode {
    /// Fixed rigorous per-coordinate bound (positive definite AD).
    Rigorous(i64),
    /// Start from a guess and double until no accepted point reaches half
    /// the box in any of the outer coordinates.
    Adaptive(i64),
}

/// Hard cap on enumerated lattice points.
const ENUMERATION_CAP: u64 = 200_000_000;

pub struct Enumeration<C: Coeff> {
    pub series: PuiseuxSeries<C>,
    /// Max accepted value per coordinate (diagnostics / exhaustiveness).
    pub max_coord: Vec<i64>,
    pub points: u64,
}

/// Core enumerator. `extra` multiplies each lattice term by
/// (1 + q^{l.n + l0}); `box_scale` inflates the box (exhaustiveness tests).
pub fn enumerate_sum<C: Coeff>(
    form: &QuadForm,
    d: &[i64],
    extra: Option<(&[i64], i64)>,
    t: &Rat,
    mode: BoxMode,
    box_scale: i64,
) -> Result<Enumeration<C>> {
    let r = form.rank();
    assert_eq!(d.len(), r);
    let mut bound = match mode {
        BoxMode::Rigorous(b) => b.saturating_mul(box_scale),
        BoxMode::Adaptive(b) => b.max(4).saturating_mul(box_scale),
    };
    let adaptive = matches!(mode, BoxMode::Adaptive(_));
    loop {
        let sep = SepBound::new(form, bound);
        // exponents can dip below zero (negative C or linear terms); build
        // partial products far enough that every shifted term still covers
        // the requested order
        let lb_global = sep.global_min(&form.c);
        let t_build = t - lb_global.min(Rat::zero());
        let mut st = EnumState {
            form,
            d,
            extra,
            t,
            t_build,
            bound,
            sep,
            acc: PuiseuxSeries::<C>::zero(t.clone()),
            max_coord: vec![0; r],
            points: 0,
            prefix: vec![0; r],
        };
        let unit = PuiseuxSeries::<C>::one().truncate_to(&st.t_build.clone());
        st.descend(0, &unit, form.c.clone())?;
        let grown = adaptive
            && st
                .max_coord
                .iter()
                .take(r.saturating_sub(1))
                .any(|&mc| 2 * mc >= bound);
        if !grown {
            let mut s = st.acc;
            s.normalize();
            return Ok(Enumeration {
                series: s,
                max_coord: st.max_coord,
                points: st.points,
            });
        }
        bound = bound.saturating_mul(2);
        if bound > 1 << 24 {
            return Err(Error::EnumerationOverflow(st.points));
        }
    }
}

/// Separable lower bound for the exponent inside the box [0, bound]^r:
/// Q(n) >= C + sum_l phi_l(n_l) with phi_l(x) = (M_ll/2) x^2 + w_l x, where
/// w_l soaks up the most negative possible cross terms. Used to prune outer
/// loop levels rigorously (the partial-sum lower bound).
struct SepBound {
    quad: Vec<Rat>,
    lin: Vec<Rat>,
    /// tail_min[j] = sum_{l > j} min_{x in [0, bound]} phi_l(x)
    tail_min: Vec<Rat>,
    tail_min_all: Rat,
}

impl SepBound {
    fn new(form: &QuadForm, bound: i64) -> Self {
        let r = form.rank();
        let mut quad = Vec::with_capacity(r);
        let mut lin = Vec::with_capacity(r);
        for l in 0..r {
            quad.push(&form.m[l][l] / rati(2));
            let mut w = form.b[l].clone();
            for lp in 0..r {
                if lp != l && form.m[l][lp].is_negative() {
                    w += &form.m[l][lp] * rati(bound) / rati(2);
                }
            }
            lin.push(w);
        }
        let phi_min = |l: usize| -> Rat {
            // min of a convex quadratic over integer x in [0, bound]
            if quad[l].is_zero() {
                return if lin[l].is_negative() {
                    &lin[l] * rati(bound)
                } else {
                    Rat::zero()
                };
            }
            let vertex = -&lin[l] / (rati(2) * &quad[l]);
            let mut best = Rat::zero();
            for x in [
                Rat::zero(),
                rati(bound),
                vertex.floor().max(Rat::zero()).min(rati(bound)),
                vertex.ceil().max(Rat::zero()).min(rati(bound)),
            ] {
                let v = &quad[l] * &x * &x + &lin[l] * &x;
                if v < best {
                    best = v;
                }
            }
            best
        };
        let mut tail_min = vec![Rat::zero(); r];
        for j in (0..r.saturating_sub(1)).rev() {
            tail_min[j] = &tail_min[j + 1] + phi_min(j + 1);
        }
        let tail_min_all = &tail_min[0] + phi_min(0);
        SepBound { quad, lin, tail_min, tail_min_all }
    }

    fn phi(&self, l: usize, x: i64) -> Rat {
        let xr = rati(x);
        &self.quad[l] * &xr * &xr + &self.lin[l] * &xr
    }

    /// Lower bound for the whole exponent over the box: C + sum_l min phi_l.
    fn global_min(&self, c: &Rat) -> Rat {
        // tail_min[0] covers l >= 1; add the l = 0 minimum via a fake level
        c + &self.tail_min_all
    }
}

struct EnumState<'a, C: Coeff> {
    form: &'a QuadForm,
    d: &'a [i64],
    extra: Option<(&'a [i64], i64)>,
    t: &'a Rat,
    t_build: Rat,
    bound: i64,
    sep: SepBound,
    acc: PuiseuxSeries<C>,
    max_coord: Vec<i64>,
    points: u64,
    prefix: Vec<i64>,
}

impl<C: Coeff> EnumState<'_, C> {
    /// Iterate coordinate `j` with coordinates > j at zero, carrying the
    /// partial product `cur` of 1/(q^{d_l};q^{d_l})_{n_l} for l <= j and the
    /// separable bound `phi_acc` = C + sum_{l<j} phi_l(n_l).
    fn descend(&mut self, j: usize, cur: &PuiseuxSeries<C>, phi_acc: Rat) -> Result<()> {
        let r = self.form.rank();
        let last = j == r - 1;
        let mut s = cur.clone();
        let one = C::one();
        // the last coordinate is pruned by its exact convex break, never by
        // the box; outer coordinates stay inside the (adaptive) box
        let cap = if last { 1 << 26 } else { self.bound };
        for nj in 0..=cap {
            if last && nj == cap {
                return Err(Error::EnumerationOverflow(self.points));
            }
            if nj > 0 {
                s = s.divide_linear(&rati(self.d[j] * nj), &one);
            }
            self.prefix[j] = nj;
            if last {
                let e = self.form.exponent(&self.prefix);
                if &e < self.t {
                    self.accept(&s, &e)?;
                } else {
                    // exponent along this coordinate is convex; once past
                    // the vertex there is nothing left below t
                    let (quad, lin) = self.form.line_coeffs(&self.prefix, j);
                    if quad.is_positive() {
                        let vertex = -&lin / (rati(2) * &quad);
                        if rati(nj) >= vertex {
                            break;
                        }
                    } else if !lin.is_negative() {
                        break;
                    }
                }
            } else {
                let phi_j = self.sep.phi(j, nj);
                let lb = &phi_acc + &phi_j + &self.sep.tail_min[j];
                if &lb >= self.t {
                    // phi_j is convex in nj: past its vertex the bound only
                    // grows, so the rest of this loop level is empty
                    let past_vertex = if self.sep.quad[j].is_positive() {
                        rati(nj) >= -&self.sep.lin[j] / (rati(2) * &self.sep.quad[j])
                    } else {
                        !self.sep.lin[j].is_negative()
                    };
                    if past_vertex {
                        break;
                    }
                    continue;
                }
                self.descend(j + 1, &s, &phi_acc + &phi_j)?;
            }
        }
        self.prefix[j] = 0;
        Ok(())
    }

    fn accept(&mut self, s: &PuiseuxSeries<C>, e: &Rat) -> Result<()> {
        self.points += 1;
        if self.points > ENUMERATION_CAP {
            return Err(Error::EnumerationOverflow(self.points));
        }
        for (mc, &p) in self.max_coord.iter_mut().zip(self.prefix.iter()) {
            *mc = (*mc).max(p);
        }
        self.acc.add_shifted(s, e);
        if let Some((l, l0)) = self.extra {
            let shift: Rat = l
                .iter()
                .zip(self.prefix.iter())
                .map(|(&li, &ni)| rati(li * ni))
                .sum::<Rat>()
                + rati(l0);
            let e2 = e + &shift;
            if &e2 < self.t {
                self.acc.add_shifted(s, &e2);
            }
        }
        Ok(())
    }
}

/// The generalized Nahm sum of a certified quadruple, truncated at `t`.
pub fn nahm_sum<C: Coeff>(quad: &NahmQuadruple, t: &Rat) -> Result<PuiseuxSeries<C>> {
    let bound = quad.box_bound(t);
    let e = enumerate_sum::<C>(
        &quad.form(),
        quad.symmetrizer(),
        None,
        t,
        BoxMode::Rigorous(bound),
        1,
    )?;
    Ok(e.series)
}

/// nahm_sum with an inflated box, for exhaustiveness testing.
pub fn nahm_sum_with_box_scale<C: Coeff>(
    quad: &NahmQuadruple,
    t: &Rat,
    box_scale: i64,
) -> Result<PuiseuxSeries<C>> {
    let bound = quad.box_bound(t);
    let e = enumerate_sum::<C>(
        &quad.form(),
        quad.symmetrizer(),
        None,
        t,
        BoxMode::Rigorous(bound),
        box_scale,
    )?;
    Ok(e.series)
}

/// Lattice points with exponent below `t`, for property tests.
pub fn nahm_lattice_points(quad: &NahmQuadruple, t: &Rat) -> Result<Vec<(Vec<i64>, Rat)>> {
    let bound = quad.box_bound(t);
    let form = quad.form();
    let r = form.rank();
    let mut out = Vec::new();
    let mut n = vec![0i64; r];
    loop {
        let e = form.exponent(&n);
        if &e < t {
            out.push((n.clone(), e));
        }
        // odometer over the rigorous box
        let mut j = 0;
        loop {
            if j == r {
                return Ok(out);
            }
            n[j] += 1;
            if n[j] <= bound {
                break;
            }
            n[j] = 0;
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::series::Compare;
    use crate::QSeries;
    use num::One;

    fn quad_rr() -> NahmQuadruple {
        NahmQuadruple::new(vec![vec![rati(2)]], vec![rati(0)], rati(0), vec![1]).unwrap()
    }

    #[test]
    fn rr_sum_low_order() {
        // 1 + q + q^2 + q^3 + 2q^4 + 2q^5 + 3q^6 (partitions with parts
        // differing by >= 2)
        let s: QSeries = nahm_sum(&quad_rr(), &rati(7)).unwrap();
        let expect = [1, 1, 1, 1, 2, 2, 3];
        for (k, &c) in expect.iter().enumerate() {
            assert_eq!(s.coeff_at(&rati(k as i64)), rati(c), "coeff of q^{k}");
        }
    }

    #[test]
    fn leading_term_is_qc() {
        let q = NahmQuadruple::new(
            vec![vec![rati(2)]],
            vec![rati(1)],
            rat(11, 60),
            vec![1],
        )
        .unwrap();
        let s: QSeries = nahm_sum(&q, &rati(3)).unwrap();
        assert_eq!(s.ord().unwrap(), rat(11, 60));
    }

    #[test]
    fn positive_definiteness_certificate() {
        // AD = [[2,3],[3,6]] is pd; [[1,2],[2,1]] is not
        assert!(NahmQuadruple::new(
            vec![vec![rati(2), rati(1)], vec![rati(3), rati(2)]],
            vec![rati(0), rati(0)],
            rati(0),
            vec![1, 3],
        )
        .is_ok());
        let bad = NahmQuadruple::new(
            vec![vec![rati(1), rati(2)], vec![rati(2), rati(1)]],
            vec![rati(0), rati(0)],
            rati(0),
            vec![1, 1],
        );
        match bad {
            Err(Error::NotPositiveDefinite { .. }) => {}
            other => panic!("expected pd failure, got {other:?}"),
        }
    }

    #[test]
    fn asymmetric_ad_rejected() {
        let bad = NahmQuadruple::new(
            vec![vec![rati(2), rati(1)], vec![rati(1), rati(2)]],
            vec![rati(0), rati(0)],
            rati(0),
            vec![1, 3],
        );
        assert!(matches!(bad, Err(Error::NotSymmetric(_, _))));
    }

    #[test]
    fn eigen_bound_is_a_lower_bound() {
        let q = NahmQuadruple::new(
            vec![vec![rati(2), rati(1)], vec![rati(3), rati(2)]],
            vec![rati(0), rati(0)],
            rati(0),
            vec![1, 3],
        )
        .unwrap();
        let lam = q.eigen_lower_bound();
        assert!(lam.is_positive());
        // AD = [[2,3],[3,6]]: eigenvalues (8 +- sqrt(52))/2, min ~ 0.394
        assert!(lam < rat(2, 5));
        assert!(lam > rat(1, 4));
    }

    #[test]
    fn json_parsing() {
        let q = NahmQuadruple::from_json(
            r#"{"A": [["2","1"],["3","2"]], "B": ["0","0"], "C": "0", "D": [1,3]}"#,
        )
        .unwrap();
        assert_eq!(q.rank(), 2);
        assert!(NahmQuadruple::from_json(r#"{"A": [["2"]], "B": ["0"], "C": "1/0", "D": [1]}"#).is_err());
    }

    #[test]
    fn kr_b1_matches_product_side() {
        // sum q^{n1^2+3n1n2+3n2^2}/((q;q)_{n1}(q^3;q^3)_{n2}) = 1/(q,q^3,q^6,q^8;q^9)
        let q = NahmQuadruple::new(
            vec![vec![rati(2), rati(1)], vec![rati(3), rati(2)]],
            vec![rati(0), rati(0)],
            rati(0),
            vec![1, 3],
        )
        .unwrap();
        let t = rati(30);
        let s: QSeries = nahm_sum(&q, &t).unwrap();
        let mut prod = QSeries::one().truncate_to(&t);
        for a in [1i64, 3, 6, 8] {
            prod = crate::series::inv_pochhammer(&rati(a), &Rat::one(), &rati(9), None, &t)
                .unwrap()
                .mul(&prod);
        }
        assert_eq!(s.compare_to_order(&prod, &t).unwrap(), Compare::Equal);
    }

    #[test]
    fn brute_force_oracle_rank2() {
        // naive nested loop with a generous fixed bound
        let q = NahmQuadruple::new(
            vec![vec![rati(2), rati(1)], vec![rati(3), rati(2)]],
            vec![rat(1, 2), rati(1)],
            rat(-1, 8),
            vec![1, 3],
        )
        .unwrap();
        let t = rati(12);
        let s: QSeries = nahm_sum(&q, &t).unwrap();
        let form = q.form();
        let mut oracle = QSeries::zero(t.clone());
        for n1 in 0..40i64 {
            for n2 in 0..40i64 {
                let e = form.exponent(&[n1, n2]);
                if e >= t {
                    continue;
                }
                let mut term = QSeries::one().truncate_to(&(&t - &e));
                for k in 1..=n1 {
                    term = term.divide_linear(&rati(k), &Rat::one());
                }
                for k in 1..=n2 {
                    term = term.divide_linear(&rati(3 * k), &Rat::one());
                }
                oracle.add_shifted(&term, &e);
            }
        }
        assert_eq!(s.compare_to_order(&oracle, &t).unwrap(), Compare::Equal);
    }

    #[test]
    fn box_doubling_stability() {
        let q = quad_rr();
        let t = rati(25);
        let a: QSeries = nahm_sum(&q, &t).unwrap();
        let b: QSeries = nahm_sum_with_box_scale(&q, &t, 2).unwrap();
        assert_eq!(a.compare_to_order(&b, &t).unwrap(), Compare::Equal);
    }
}
