//! Builders for the named product-form series: Dedekind eta and eta
//! quotients, Weber's functions, the generalized Dedekind eta, the theta
//! series g_{j,m} / h_{j,m} (sum and product forms, cross-asserted), the
//! crank generating function, and the J triple products.

use num::{One, Signed, ToPrimitive, Zero};

use crate::coeff::Coeff;
use crate::cyclo::CycloElement;
use crate::error::{Error, Result};
use crate::rational::{rat, rat_to_str, rati, sqrt_upper, Rat};
use crate::series::{inv_pochhammer, pochhammer, Compare, PuiseuxSeries};
use crate::{QSeries, ZSeries};

/// eta(m*tau) as a q-series: q^{m/24} (q^m; q^m)_infty, m > 0.
pub fn eta_series(m: &Rat, t: &Rat) -> QSeries {
    assert!(m.is_positive(), "eta scale must be positive");
    let pref = m / rati(24);
    let t_part = t - &pref;
    let prod = pochhammer(m, &Rat::one(), m, None, &t_part).expect("positive exponents");
    prod.mul_monomial(&pref, &Rat::one())
}

/// prod_i eta(m_i * tau)^{e_i}.
pub fn eta_quotient(factors: &[(Rat, i64)], t: &Rat) -> QSeries {
    assert!(!factors.is_empty());
    let pref: Rat = factors
        .iter()
        .map(|(m, e)| m / rati(24) * rati(*e))
        .sum();
    let t_part = t - &pref;
    let mut out = QSeries::one().truncate_to(&t_part);
    for (m, e) in factors {
        assert!(m.is_positive());
        if *e > 0 {
            let p = pochhammer(m, &Rat::one(), m, None, &t_part).expect("positive exponents");
            for _ in 0..*e {
                out = out.mul(&p);
            }
        } else if *e < 0 {
            let p = inv_pochhammer(m, &Rat::one(), m, None, &t_part).expect("positive exponents");
            for _ in 0..(-*e) {
                out = out.mul(&p);
            }
        }
    }
    out.mul_monomial(&pref, &Rat::one())
}

/// Weber f: q^{-1/48} (-q^{1/2}; q)_infty.
pub fn weber_f(t: &Rat) -> QSeries {
    let pref = rat(-1, 48);
    let prod = pochhammer(&rat(1, 2), &-Rat::one(), &rati(1), None, &(t - &pref)).unwrap();
    prod.mul_monomial(&pref, &Rat::one())
}

/// Weber f1: q^{-1/48} (q^{1/2}; q)_infty.
pub fn weber_f1(t: &Rat) -> QSeries {
    let pref = rat(-1, 48);
    let prod = pochhammer(&rat(1, 2), &Rat::one(), &rati(1), None, &(t - &pref)).unwrap();
    prod.mul_monomial(&pref, &Rat::one())
}

/// Weber f2: q^{1/24} (-q; q)_infty.
pub fn weber_f2(t: &Rat) -> QSeries {
    let pref = rat(1, 24);
    let prod = pochhammer(&rati(1), &-Rat::one(), &rati(1), None, &(t - &pref)).unwrap();
    prod.mul_monomial(&pref, &Rat::one())
}

/// B(x) = x^2 - x + 1/6 from the generalized eta prefactor.
pub fn eta_b(x: &Rat) -> Rat {
    x * x - x + rat(1, 6)
}

/// Generalized Dedekind eta E_{g,h}^{(N)} over Q(zeta_N):
/// q^{B(g/N)/2} prod_{m>=1} (1 - z^h q^{m-1+g/N})(1 - z^{-h} q^{m-g/N}).
///
/// Any integer g is accepted; factors with nonpositive exponent (finitely
/// many) are multiplied in as exact polynomials, so index shifts like
/// E_{g+N,h} = -z^{-h} E_{g,h} hold on the nose.
pub fn gen_dedekind_eta(n: u64, g: i64, h: i64, t: &Rat) -> Result<ZSeries> {
    let nn = n as i64;
    if g.rem_euclid(nn) == 0 && h.rem_euclid(nn) == 0 {
        return Err(Error::GenEtaZeroIndex);
    }
    let zh = CycloElement::zeta_pow(n, h);
    let zhn = CycloElement::zeta_pow(n, -h);
    let gn = rat(g, nn);
    let pref = eta_b(&gn) / rati(2);

    // collect factor (exponent, unit) pairs; two families m-1+g/N and m-g/N
    let mut neg: Vec<(Rat, CycloElement)> = Vec::new();
    let t_pos_bound = t - &pref + rati(1);
    let mut pos: Vec<(Rat, CycloElement)> = Vec::new();
    for (family, unit) in [(&gn - rati(1), zh), (-&gn, zhn)] {
        let mut m = 1i64;
        loop {
            let e = &family + rati(m);
            if e > t_pos_bound {
                break;
            }
            if e.is_positive() {
                pos.push((e, unit.clone()));
            } else {
                neg.push((e, unit.clone()));
            }
            m += 1;
        }
    }
    // exact part first (most negative exponent first)
    neg.sort_by(|a, b| a.0.cmp(&b.0));
    let mut exact = ZSeries::one();
    let mut ord_exact = Rat::zero();
    for (e, u) in &neg {
        exact = exact.mul_linear(e, u);
        if e.is_negative() {
            ord_exact += e;
        }
    }
    let t_pos = t - &pref - &ord_exact;
    let mut prod = exact.truncate_to(&t_pos);
    for (e, u) in &pos {
        if e < &t_pos {
            prod = prod.mul_linear(e, u);
        }
    }
    Ok(prod
        .mul_monomial(&pref, &CycloElement::one(n))
        .truncate_to(&(t + &ord_exact)))
}

/// Reduce a theta index (j, m) into 0 <= j <= m using the period/reflection
/// relations. Returns (j_normalized, g_sign, h_sign_is_plus):
/// every reduction leaves h invariant while g may pick up a sign.
fn theta_normalize(j: &Rat, m: &Rat) -> (Rat, i64) {
    let two_m = m * rati(2);
    let mut j = j.clone() - (j / &two_m).floor() * &two_m; // j mod 2m in [0, 2m)
    let mut g_sign = 1i64;
    // period g_{j+2m} = -g_j applied floor(j/2m) times already; reflections:
    if j > *m {
        j = &two_m - &j;
        g_sign = -g_sign;
    }
    (j, g_sign)
}

fn theta_sum<C: Coeff>(j: &Rat, m: &Rat, alternating: bool, t: &Rat) -> PuiseuxSeries<C> {
    // exponent(k) = (2mk + j)^2 / (4m)
    let four_m = m * rati(4);
    let two_m = m * rati(2);
    let s = sqrt_upper(&(&four_m * t));
    let k_lo = ((-j - &s) / &two_m).floor().to_integer().to_i64().unwrap();
    let k_hi = ((-j + &s) / &two_m).ceil().to_integer().to_i64().unwrap();
    let mut out = PuiseuxSeries::<C>::zero(t.clone());
    let one = PuiseuxSeries::<C>::one();
    for k in k_lo..=k_hi {
        let u = &two_m * rati(k) + j;
        let e = &u * &u / &four_m;
        if &e >= t {
            continue;
        }
        let sign = alternating && k.rem_euclid(2) == 1;
        let c = if sign { -C::one() } else { C::one() };
        out.add_shifted(&one.scale(&c), &e);
    }
    out
}

fn theta_product(j: &Rat, m: &Rat, kind_g: bool, t: &Rat) -> QSeries {
    // requires 0 <= j <= m; j = m yields the zero series for g
    let pref = j * j / (m * rati(4));
    let t_part = t - &pref;
    let two_m = m * rati(2);
    let u = if kind_g { Rat::one() } else { -Rat::one() };
    if kind_g && j == m {
        return QSeries::zero(t.clone());
    }
    let mut out = pochhammer(&two_m, &Rat::one(), &two_m, None, &t_part).unwrap();
    for a in [m + j, m - j] {
        if a.is_zero() {
            // h with j = m: (-q^0; q^{2m}) = 2 (-q^{2m}; q^{2m})
            out = out.scale_rat(&rati(2));
            let p = pochhammer(&two_m, &u, &two_m, None, &t_part).unwrap();
            out = out.mul(&p);
        } else {
            let p = pochhammer(&a, &u, &two_m, None, &t_part).unwrap();
            out = out.mul(&p);
        }
    }
    out.mul_monomial(&pref, &Rat::one())
}

fn theta_build(j: &Rat, m: &Rat, kind_g: bool, t: &Rat) -> Result<QSeries> {
    assert!(m.is_positive(), "theta index m must be positive");
    assert!(
        *j.denom() <= 2u32.into() && *m.denom() <= 2u32.into(),
        "theta indices must be half-integers"
    );
    let sum = theta_sum::<Rat>(j, m, kind_g, t);
    let (jn, g_sign) = theta_normalize(j, m);
    let mut prod = theta_product(&jn, m, kind_g, t);
    if kind_g && g_sign < 0 {
        prod = prod.neg();
    }
    match sum.compare_to_order(&prod, t).expect("same truncation") {
        Compare::Equal => Ok(sum),
        Compare::Mismatch { exponent, .. } => Err(Error::ThetaMismatch(rat_to_str(&exponent))),
    }
}

/// g_{j,m} = sum_k (-1)^k q^{m(k + j/2m)^2}, asserted against its triple
/// product form before being returned.
pub fn theta_g(j: &Rat, m: &Rat, t: &Rat) -> Result<QSeries> {
    theta_build(j, m, true, t)
}

/// h_{j,m} = sum_k q^{m(k + j/2m)^2}, asserted against its product form.
pub fn theta_h(j: &Rat, m: &Rat, t: &Rat) -> Result<QSeries> {
    theta_build(j, m, false, t)
}

/// Crank generating function (q;q)_inf / ((zq;q)_inf (q/z; q)_inf) over the
/// cyclotomic ring of z. z = 1 degenerates to 1/(q;q)_inf.
pub fn crank_gf(z: &CycloElement, t: &Rat) -> ZSeries {
    let n = z.conductor();
    let one = CycloElement::one(n);
    let zinv = z.invert().expect("crank twist must be invertible");
    let mut out: ZSeries = pochhammer(&rati(1), &one, &rati(1), None, t).unwrap();
    let mut k = 1i64;
    while &rati(k) < t {
        out = out.divide_linear(&rati(k), z);
        out = out.divide_linear(&rati(k), &zinv);
        k += 1;
    }
    out
}

/// J_m = (q^m; q^m)_infty.
pub fn j_m(m: i64, t: &Rat) -> QSeries {
    assert!(m >= 1);
    pochhammer(&rati(m), &Rat::one(), &rati(m), None, t).unwrap()
}

/// J_{a,m} = (q^a, q^{m-a}, q^m; q^m)_infty, 0 < a < m.
pub fn j_product(a: i64, m: i64, t: &Rat) -> Result<QSeries> {
    if !(0 < a && a < m) {
        return Err(Error::ParameterRange(format!(
            "J_{{a,m}} needs 0 < a < m, got a={a}, m={m}"
        )));
    }
    let step = rati(m);
    let p1 = pochhammer(&rati(a), &Rat::one(), &step, None, t).unwrap();
    let p2 = pochhammer(&rati(m - a), &Rat::one(), &step, None, t).unwrap();
    let p3 = pochhammer(&step, &Rat::one(), &step, None, t).unwrap();
    Ok(p1.mul(&p2).mul(&p3))
}

fn coeff_pow<C: Coeff>(c: &C, n: i64) -> C {
    let base = if n < 0 {
        c.inv().expect("coefficient must be invertible")
    } else {
        c.clone()
    };
    let mut acc = C::one();
    let mut p = base;
    let mut e = n.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_ref(&p);
        }
        e >>= 1;
        if e > 0 {
            p = p.mul_ref(&p);
        }
    }
    acc
}

/// Bilateral Jacobi triple product sum in base q^step with z = c * q^w:
/// sum_n (-1)^n q^{step * n(n-1)/2} z^n.
pub fn jtp_sum<C: Coeff>(z_exp: &Rat, z_coeff: &C, step: &Rat, t: &Rat) -> PuiseuxSeries<C> {
    assert!(step.is_positive());
    // exponent(n) = step*n(n-1)/2 + w*n < t on a bounded n-interval
    // n^2*step + n*(2w - step) - 2t < 0
    let a = step.clone();
    let b = z_exp * rati(2) - step;
    let disc = &b * &b + rati(8) * &a * t;
    if disc.is_negative() {
        return PuiseuxSeries::<C>::zero(t.clone());
    }
    let s = sqrt_upper(&disc);
    let n_lo = ((-&b - &s) / (rati(2) * &a)).floor().to_integer().to_i64().unwrap();
    let n_hi = ((-&b + &s) / (rati(2) * &a)).ceil().to_integer().to_i64().unwrap();
    let mut out = PuiseuxSeries::<C>::zero(t.clone());
    let one = PuiseuxSeries::<C>::one();
    for n in n_lo..=n_hi {
        let e = step * rat(n * (n - 1), 2) + z_exp * rati(n);
        if &e >= t {
            continue;
        }
        let mut c = coeff_pow(z_coeff, n);
        if n.rem_euclid(2) == 1 {
            c = -c;
        }
        out.add_shifted(&one.scale(&c), &e);
    }
    out
}

/// (z, q^step/z, q^step; q^step)_infty with z = c * q^w. Factors with
/// nonpositive exponent (finitely many when w > 0) are multiplied exactly.
pub fn jtp_product<C: Coeff>(
    z_exp: &Rat,
    z_coeff: &C,
    step: &Rat,
    t: &Rat,
) -> PuiseuxSeries<C> {
    assert!(step.is_positive() && z_exp.is_positive());
    let z_inv = z_coeff.inv().expect("coefficient must be invertible");
    let mut neg: Vec<(Rat, C)> = Vec::new();
    let mut pos: Vec<(Rat, C)> = Vec::new();
    for (start, u) in [
        (z_exp.clone(), z_coeff.clone()),
        (step - z_exp, z_inv),
        (step.clone(), C::one()),
    ] {
        let mut k = 0i64;
        loop {
            let e = &start + step * rati(k);
            if &e >= t {
                break;
            }
            if e.is_positive() {
                pos.push((e, u.clone()));
            } else {
                neg.push((e, u.clone()));
            }
            k += 1;
        }
    }
    neg.sort_by(|x, y| x.0.cmp(&y.0));
    let mut exact = PuiseuxSeries::<C>::one();
    let mut ord_exact = Rat::zero();
    for (e, u) in &neg {
        exact = exact.mul_linear(e, u);
        if e.is_negative() {
            ord_exact += e;
        }
    }
    let t_pos = t - &ord_exact;
    let mut out = exact.truncate_to(&t_pos);
    for (e, u) in &pos {
        if e < &t_pos {
            out = out.mul_linear(e, u);
        }
    }
    out.truncate_to(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn eta_basics() {
        let e = eta_series(&Rat::one(), &rati(3));
        assert!(e.coeff_at(&rat(1, 24)).is_one());
        assert_eq!(e.coeff_at(&rat(25, 24)), rati(-1));
        assert_eq!(e.coeff_at(&rat(49, 24)), rati(-1));
        let e24 = eta_series(&rati(24), &rati(30));
        assert_eq!(e24.ord().unwrap(), rati(1));
    }

    #[test]
    fn weber_leading_terms() {
        let t = rati(5);
        let f2 = weber_f2(&t);
        assert_eq!(f2.ord().unwrap(), rat(1, 24));
        let f = weber_f(&t);
        assert!(f.coeff_at(&(rat(-1, 48) + rat(1, 2))).is_one());
        // f1 * f2 equals the product of their q-parts, checked directly
        let f1 = weber_f1(&rati(31));
        let f2 = weber_f2(&rati(31));
        let lhs = f1.mul(&f2);
        let pref = rat(-1, 48) + rat(1, 24);
        let t_part = rati(30);
        let p1 = pochhammer(&rat(1, 2), &Rat::one(), &rati(1), None, &t_part).unwrap();
        let p2 = pochhammer(&rati(1), &-Rat::one(), &rati(1), None, &t_part).unwrap();
        let rhs = p1.mul(&p2).mul_monomial(&pref, &Rat::one());
        assert_eq!(lhs.compare_to_order(&rhs, &rati(30)).unwrap(), Compare::Equal);
    }

    #[test]
    fn gen_eta_shift_rules() {
        let t = rati(12);
        let n = 9u64;
        for (g, h) in [(1i64, 0i64), (2, 3), (4, 7), (0, 1)] {
            let e = gen_dedekind_eta(n, g, h, &t).unwrap();
            // E_{g,h+N} = E_{g,h}
            let e2 = gen_dedekind_eta(n, g, h + n as i64, &t).unwrap();
            assert_eq!(e.compare_to_order(&e2, &rati(10)).unwrap(), Compare::Equal);
            // E_{g+N,h} = -zeta^{-h} E_{g,h}
            let e3 = gen_dedekind_eta(n, g + n as i64, h, &t).unwrap();
            let rhs = e.scale(&CycloElement::zeta_pow(n, -h).neg());
            assert_eq!(e3.compare_to_order(&rhs, &rati(8)).unwrap(), Compare::Equal);
        }
        assert!(gen_dedekind_eta(9, 0, 0, &t).is_err());
        assert!(gen_dedekind_eta(9, 9, 18, &t).is_err());
    }

    #[test]
    fn gen_eta_leading_exponent() {
        // B(1/2) = -1/12, so E^{(2)}_{1,0} has leading exponent -1/24
        let e = gen_dedekind_eta(2, 1, 0, &rati(5)).unwrap();
        assert_eq!(e.ord().unwrap(), rat(-1, 24));
    }

    #[test]
    fn theta_g01_squares() {
        // g_{0,1} = 1 - 2q + 2q^4 - 2q^9 + ...
        let g = theta_g(&Rat::zero(), &Rat::one(), &rati(12)).unwrap();
        assert_eq!(g.coeff_at(&rati(0)), rati(1));
        assert_eq!(g.coeff_at(&rati(1)), rati(-2));
        assert_eq!(g.coeff_at(&rati(4)), rati(2));
        assert_eq!(g.coeff_at(&rati(9)), rati(-2));
        assert_eq!(g.coeff_at(&rati(2)), rati(0));
    }

    #[test]
    fn theta_g_mm_is_zero() {
        let g = theta_g(&rati(3), &rati(3), &rati(20)).unwrap();
        assert!(g.is_zero());
        let g = theta_g(&rat(5, 2), &rat(5, 2), &rati(20)).unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn theta_half_integer_indices() {
        let g = theta_g(&rat(1, 2), &rat(5, 2), &rati(15)).unwrap();
        assert_eq!(g.ord().unwrap(), rat(1, 40));
        let h = theta_h(&rat(1, 2), &rat(5, 2), &rati(15)).unwrap();
        assert_eq!(h.ord().unwrap(), rat(1, 40));
    }

    #[test]
    fn j_products() {
        // J_{1,5} = 1 - q - q^4 + ... ; symmetric in a <-> m-a
        let t = rati(11);
        let j15 = j_product(1, 5, &t).unwrap();
        assert_eq!(j15.coeff_at(&rati(0)), rati(1));
        assert_eq!(j15.coeff_at(&rati(1)), rati(-1));
        assert_eq!(j15.coeff_at(&rati(4)), rati(-1));
        let j45 = j_product(4, 5, &t).unwrap();
        assert_eq!(j15.compare_to_order(&j45, &rati(10)).unwrap(), Compare::Equal);
        assert!(j_product(5, 5, &t).is_err());
        assert!(j_product(0, 5, &t).is_err());
    }

    #[test]
    fn crank_degenerates_at_z_one() {
        let t = rati(12);
        let f = crank_gf(&CycloElement::one(1), &t);
        let inv_poch: ZSeries =
            inv_pochhammer(&rati(1), &CycloElement::one(1), &rati(1), None, &t).unwrap();
        assert_eq!(f.compare_to_order(&inv_poch, &rati(11)).unwrap(), Compare::Equal);
    }

    #[test]
    fn jtp_identity_spot() {
        let t = rati(20);
        // z = q and z = q^2 degenerate: a product factor hits 1 - q^0
        for w in [rati(1), rati(2)] {
            let lhs = jtp_product::<Rat>(&w, &Rat::one(), &rati(1), &t);
            let rhs = jtp_sum::<Rat>(&w, &Rat::one(), &rati(1), &t);
            assert!(lhs.is_zero());
            assert!(rhs.is_zero());
        }
        // generic half-integer exponent and a wider base
        for (w, s) in [(rat(3, 2), rati(1)), (rat(1, 3), rati(1)), (rati(2), rati(5))] {
            let lhs = jtp_product::<Rat>(&w, &Rat::one(), &s, &t);
            let rhs = jtp_sum::<Rat>(&w, &Rat::one(), &s, &t);
            assert_eq!(lhs.compare_to_order(&rhs, &rati(19)).unwrap(), Compare::Equal);
        }
    }
}
