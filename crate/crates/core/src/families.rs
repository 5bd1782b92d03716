//! The named sum families: Rogers-Ramanujan / Andrews-Gordon / Bressoud
//! sums, the Capparelli and Kanade-Russell double sums, Bressoud's older
//! nested identity, its overpartition analogue, and the remaining example
//! families, together with their infinite-product sides.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::nahm::{enumerate_sum, BoxMode, QuadForm};
use crate::rational::{rat, rat_floor_i64, rati, Rat};
use crate::series::{inv_pochhammer, pochhammer};
use crate::QSeries;

fn quadform(m: Vec<Vec<i64>>, m_den: i64, b: Vec<Rat>, c: Rat) -> QuadForm {
    let mm = m
        .into_iter()
        .map(|row| row.into_iter().map(|x| rat(x, m_den)).collect())
        .collect();
    QuadForm { m: mm, b, c }
}

fn run_engine(
    form: &QuadForm,
    d: &[i64],
    extra: Option<(&[i64], i64)>,
    t: &Rat,
) -> Result<QSeries> {
    Ok(enumerate_sum::<Rat>(form, d, extra, t, BoxMode::Adaptive(8), 1)?.series)
}

/// Tail-sum quadratic form: N_1^2 + ... + N_r^2 with N_j = n_j + ... + n_r
/// gives M_{ab} = 2 min(a,b) (as the "AD" matrix of (1/2) n^T M n).
fn tail_sum_matrix(r: usize, scale: i64) -> Vec<Vec<i64>> {
    (1..=r)
        .map(|a| (1..=r).map(|b| 2 * scale * (a.min(b) as i64)).collect())
        .collect()
}

/// Andrews-Gordon sum x_{2k+1,i}: direct enumeration over n_1..n_{k-1} of
/// q^{N_1^2+...+N_{k-1}^2 + N_i+...+N_{k-1}} / prod (q;q)_{n_j}.
pub fn andrews_gordon_sum(k: u32, i: u32, t: &Rat) -> Result<QSeries> {
    check_ki(k, i, 2, k)?;
    let r = (k - 1) as usize;
    let b = (1..=r)
        .map(|l| rati((l as i64 - i as i64 + 1).max(0)))
        .collect();
    let form = quadform(tail_sum_matrix(r, 1), 1, b, Rat::zero());
    run_engine(&form, &vec![1; r], None, t)
}

/// Bressoud sum x_{2k,i}: as Andrews-Gordon but (q^2;q^2)_{n_{k-1}} last.
pub fn bressoud_sum(k: u32, i: u32, t: &Rat) -> Result<QSeries> {
    check_ki(k, i, 2, k)?;
    let r = (k - 1) as usize;
    let b = (1..=r)
        .map(|l| rati((l as i64 - i as i64 + 1).max(0)))
        .collect();
    let form = quadform(tail_sum_matrix(r, 1), 1, b, Rat::zero());
    let mut d = vec![1; r];
    d[r - 1] = 2;
    run_engine(&form, &d, None, t)
}

fn check_ki(k: u32, i: u32, k_min: u32, i_max: u32) -> Result<()> {
    if k < k_min || i < 1 || i > i_max {
        return Err(Error::ParameterRange(format!(
            "need k >= {k_min} and 1 <= i <= {i_max}, got k={k}, i={i}"
        )));
    }
    Ok(())
}

/// Capparelli sums a_1, a_2 (which = 1 or 2).
pub fn capparelli_sum(which: u8, t: &Rat) -> Result<QSeries> {
    let m = vec![vec![4, 6], vec![6, 12]];
    let d = [1i64, 3];
    match which {
        1 => {
            let form = quadform(m, 1, vec![Rat::zero(), Rat::zero()], Rat::zero());
            run_engine(&form, &d, None, t)
        }
        2 => {
            let form = quadform(m, 1, vec![rati(1), rati(3)], Rat::zero());
            let extra = [2i64, 3];
            run_engine(&form, &d, Some((&extra, 1)), t)
        }
        _ => Err(Error::ParameterRange(format!("capparelli index {which}"))),
    }
}

/// Kanade-Russell sums b_1, b_2, b_3 (which = 1, 2 or 3).
pub fn kanade_russell_sum(which: u8, t: &Rat) -> Result<QSeries> {
    let b = match which {
        1 => vec![rati(0), rati(0)],
        2 => vec![rati(1), rati(3)],
        3 => vec![rati(2), rati(3)],
        _ => return Err(Error::ParameterRange(format!("kanade-russell index {which}"))),
    };
    let form = quadform(vec![vec![2, 3], vec![3, 6]], 1, b, Rat::zero());
    run_engine(&form, &[1, 3], None, t)
}

/// Iterate weakly decreasing tuples n_1 >= ... >= n_len >= 0 with n_1 <= cap.
fn decreasing_tuples(len: usize, cap: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; len];
    fn rec(j: usize, len: usize, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if j == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..=hi {
            cur[j] = v;
            rec(j + 1, len, v, cur, out);
        }
        cur[j] = 0;
    }
    rec(0, len, cap, &mut cur, &mut out);
    out
}

/// Bressoud's nested sum (the older identity): for n_1 >= ... >= n_{k-1} >= 0,
/// (-q^{1-2n_1};q^2)_{n_1} q^{2(n_1^2+...+n_{k-1}^2+n_i+...+n_{k-1})}
/// / ((q^2;q^2)_{n_1-n_2} ... (q^2;q^2)_{n_{k-1}}).
///
/// The prefactor has negative exponents; pulled into the q-power it leaves
/// q^{n_1^2 + ...} (-q;q^2)_{n_1}, which is what gets assembled here. The
/// verbatim product is cross-checked in tests.
pub fn bressoud_eq38_sum(k: u32, i: u32, t: &Rat) -> Result<QSeries> {
    check_ki(k, i, 2, k)?;
    let len = (k - 1) as usize;
    let cap = isqrt_rat(t);
    let mut acc = QSeries::zero(t.clone());
    for tuple in decreasing_tuples(len, cap) {
        let n1 = tuple[0];
        // exponent after absorbing the prefactor's q-powers
        let mut e = rati(n1 * n1);
        for &nj in &tuple[1..] {
            e += rati(2 * nj * nj);
        }
        for j in (i as usize)..=len {
            e += rati(2 * tuple[j - 1]);
        }
        if &e >= t {
            continue;
        }
        let mut term = QSeries::one().truncate_to(&(t - &e));
        // (-q;q^2)_{n_1}
        for s in 0..n1 {
            term = term.mul_linear(&rati(2 * s + 1), &-Rat::one());
        }
        for j in 0..len {
            let next = if j + 1 < len { tuple[j + 1] } else { 0 };
            for mth in 1..=(tuple[j] - next) {
                term = term.divide_linear(&rati(2 * mth), &Rat::one());
            }
        }
        acc.add_shifted(&term, &e);
    }
    Ok(acc)
}

/// The strictly verbatim term of the nested Bressoud sum, for cross-checks:
/// (-q^{1-2n_1};q^2)_{n_1} q^{2(sum n_j^2 + n_i + ...)} / (diff pochhammers).
pub fn bressoud_eq38_term_verbatim(tuple: &[i64], i: u32, t: &Rat) -> QSeries {
    let n1 = tuple[0];
    let len = tuple.len();
    let mut e = Rat::zero();
    for &nj in tuple {
        e += rati(2 * nj * nj);
    }
    for j in (i as usize)..=len {
        e += rati(2 * tuple[j - 1]);
    }
    // exact monomial first so intermediate exponents stay nonnegative
    let mut term = QSeries::from_term(e, Rat::one());
    let mut exps: Vec<i64> = (0..n1).map(|s| 1 - 2 * n1 + 2 * s).collect();
    exps.sort_unstable();
    for u in exps {
        term = term.mul_linear(&rati(u), &-Rat::one());
    }
    let mut term = term.truncate_to(t);
    for j in 0..len {
        let next = if j + 1 < len { tuple[j + 1] } else { 0 };
        for mth in 1..=(tuple[j] - next) {
            term = term.divide_linear(&rati(2 * mth), &Rat::one());
        }
    }
    term
}

/// Overpartition analogue of the nested Bressoud sum:
/// (-q^{2-2n_1};q^2)_{n_1-1} (-q^{1-2n_1};q^2)_{n_1} (1+q^{2n_i})
/// q^{2(sum n_j^2 + n_{i+1}+...+n_{k-1})} / (diff pochhammers),
/// with n_k = 0 and the n_1 = 0 term equal to 1 under the standard
/// (a;q)_{-1} = 1/(1 - a/q) convention.
pub fn hjwz_sum(k: u32, i: u32, t: &Rat) -> Result<QSeries> {
    check_ki(k, i, 2, k)?;
    let len = (k - 1) as usize;
    // absorbed form: q^{n_1 + 2(n_2^2+..) + 2(n_{i+1}+..)} (-q;q)_{2n_1 - 1} ...
    let cap = rat_floor_i64(t).max(0);
    let mut acc = QSeries::zero(t.clone());
    acc.add_shifted(&QSeries::one(), &Rat::zero()); // n_1 = 0 term
    let mut running = QSeries::one().truncate_to(t); // (-q;q)_{2 n_1 - 1}
    for n1 in 1..=cap {
        for u in [2 * n1 - 2, 2 * n1 - 1] {
            if u >= 1 && &rati(u) < t {
                running = running.mul_linear(&rati(u), &-Rat::one());
            }
        }
        for rest in decreasing_tuples(len - 1, n1.min(isqrt_rat(&(t / rati(2))))) {
            if rest.first().copied().unwrap_or(0) > n1 {
                continue;
            }
            let mut tuple = vec![n1];
            tuple.extend(rest);
            let mut e = rati(n1);
            for &nj in &tuple[1..] {
                e += rati(2 * nj * nj);
            }
            for j in (i as usize + 1)..=len {
                e += rati(2 * tuple[j - 1]);
            }
            if &e >= t {
                continue;
            }
            let mut term = running.clone();
            let ni = if (i as usize) <= len { tuple[i as usize - 1] } else { 0 };
            if ni == 0 {
                term = term.scale_rat(&rati(2));
            } else {
                term = term.mul_linear(&rati(2 * ni), &-Rat::one());
            }
            for j in 0..len {
                let next = if j + 1 < len { tuple[j + 1] } else { 0 };
                for mth in 1..=(tuple[j] - next) {
                    term = term.divide_linear(&rati(2 * mth), &Rat::one());
                }
            }
            acc.add_shifted(&term.truncate_to(&(t - &e)), &e);
        }
    }
    Ok(acc)
}

/// The verbatim overpartition term for n_1 >= 1 tuples, for cross-checks.
pub fn hjwz_term_verbatim(tuple: &[i64], i: u32, t: &Rat) -> QSeries {
    let n1 = tuple[0];
    assert!(n1 >= 1);
    let len = tuple.len();
    let mut e = Rat::zero();
    for &nj in tuple {
        e += rati(2 * nj * nj);
    }
    for j in (i as usize + 1)..=len {
        e += rati(2 * tuple[j - 1]);
    }
    let mut term = QSeries::from_term(e, Rat::one());
    let mut exps: Vec<i64> = Vec::new();
    for s in 0..(n1 - 1) {
        exps.push(2 - 2 * n1 + 2 * s);
    }
    for s in 0..n1 {
        exps.push(1 - 2 * n1 + 2 * s);
    }
    exps.sort_unstable();
    for u in exps {
        term = term.mul_linear(&rati(u), &-Rat::one());
    }
    let ni = if (i as usize) <= len { tuple[i as usize - 1] } else { 0 };
    if ni == 0 {
        term = term.scale_rat(&rati(2));
    } else {
        term = term.mul_linear(&rati(2 * ni), &-Rat::one());
    }
    let mut term = term.truncate_to(t);
    for j in 0..len {
        let next = if j + 1 < len { tuple[j + 1] } else { 0 };
        for mth in 1..=(tuple[j] - next) {
            term = term.divide_linear(&rati(2 * mth), &Rat::one());
        }
    }
    term
}

fn isqrt_rat(t: &Rat) -> i64 {
    let f = rat_floor_i64(t).max(0);
    let mut r = 0i64;
    while (r + 1) * (r + 1) <= f {
        r += 1;
    }
    r + 1
}

/// Auxiliary Andrews-Gordon-type sums with (q^2;q^2)/(q^4;q^4) denominators,
/// modulus 2k+3: exponent N_1^2+...+N_k^2 + 2N_i + 2N_{i+2} + ... (every
/// second tail sum starting at i). Defined by a sum only for k >= 2.
pub fn weber_ag_sum(k: u32, i: u32, t: &Rat) -> Result<QSeries> {
    check_ki(k, i, 2, k + 1)?;
    let r = k as usize;
    let b = (1..=r)
        .map(|l| {
            // 2 * #{j : j = i, i+2, i+4, ..., j <= l}
            if (l as i64) < i as i64 {
                Rat::zero()
            } else {
                rati(2 * ((l as i64 - i as i64) / 2 + 1))
            }
        })
        .collect();
    let form = quadform(tail_sum_matrix(r, 1), 1, b, Rat::zero());
    let mut d = vec![2i64; r];
    d[r - 1] = 4;
    run_engine(&form, &d, None, t)
}

/// Rank k+2 sums with binomial exponents and modulus 8k+12 products:
/// variables (m_1, m_2, n_1..n_k), denominators
/// (q;q)(q;q)(q^2;q^2)(q^4;q^4)...(q^4;q^4).
pub fn double_ag_sum(k: u32, i: u32, t: &Rat) -> Result<QSeries> {
    check_ki(k, i, 1, k + 1)?;
    let kk = k as usize;
    let r = kk + 2;
    let mut mm = vec![vec![Rat::zero(); r]; r];
    mm[0][0] = rati(1);
    mm[0][1] = rati(1);
    mm[1][0] = rati(1);
    mm[1][1] = rati(2);
    mm[1][2] = rati(2);
    mm[2][1] = rati(2);
    for a in 1..=kk {
        for bb in 1..=kk {
            mm[a + 1][bb + 1] = rati(8 * (a.min(bb) as i64));
        }
    }
    let mut b = vec![rat(1, 2), rati(1)];
    for l in 1..=kk {
        b.push(rati(4 * ((l as i64) - (i as i64) + 1).max(0)));
    }
    let form = QuadForm { m: mm, b, c: Rat::zero() };
    let mut d = vec![1i64, 1];
    d.push(2);
    for _ in 2..=kk {
        d.push(4);
    }
    run_engine(&form, &d, None, t)
}

/// Fixed example sums, keyed by a stable id like "d222-mod10-x1".
pub fn example_sum(id: &str, t: &Rat) -> Result<QSeries> {
    let (m, den, b, d, extra, half): (
        Vec<Vec<i64>>,
        i64,
        Vec<i64>,
        Vec<i64>,
        Option<(Vec<i64>, i64)>,
        bool,
    ) = match id {
        // 3i^2+2j^2+k^2+4ij+2ik+2jk over (q^2;q^2)^3, mod-10 products
        "d222-mod10-x1" => (ex3_m(), 1, vec![0, 0, 0], vec![2, 2, 2], None, false),
        "d222-mod10-x2" => (ex3_m(), 1, vec![2, 2, 0], vec![2, 2, 2], None, false),
        "d222-mod10-x3" => (ex3_m(), 1, vec![1, 0, 1], vec![2, 2, 2], None, false),
        "d222-mod10-x4" => (ex3_m(), 1, vec![3, 2, 1], vec![2, 2, 2], None, false),
        // (1/2)i^2+5j^2+4k^2+2ij+2ik+8jk, denominators (q;q)(q^2;q^2)^2
        "d122-mod20-x1" => (ex4_m(), 2, vec![1, 0, 0], vec![1, 2, 2], None, false),
        "d122-mod20-x2" => (ex4_m(), 2, vec![1, 8, 8], vec![1, 2, 2], None, false),
        // 2i^2+j^2+k^2+2ij+2ik+jk over (q;q)^3, mod-5 squared products
        "d111-mod5-x1" => (ex5_m(), 1, vec![0, 0, 0], vec![1, 1, 1], None, false),
        "d111-mod5-x2" => (ex5_m(), 1, vec![2, 1, 1], vec![1, 1, 1], None, false),
        "d111-mod5-x3" => (ex5_m(), 1, vec![1, 1, 0], vec![1, 1, 1], None, false),
        // i^2-2ij+2j^2 over (q^2;q^2)^2, mod-8 products
        "d22-mod8-x1" => (ex8_m(), 1, vec![0, 0], vec![2, 2], None, false),
        "d22-mod8-x2" => (ex8_m(), 1, vec![0, 2], vec![2, 2], None, false),
        // same form over (q^2;q^2)(q^4;q^4), mod-3/12 products
        "d24-mod12-x1" => (ex8_m(), 1, vec![0, 0], vec![2, 4], None, false),
        "d24-mod12-x2" => (ex8_m(), 1, vec![0, 2], vec![2, 4], None, false),
        // 2i^2+j^2+k^2+2ij-2ik over (q^2;q^2)^3 (AD only semidefinite)
        "d222-eta-x1" => (ex10_m(), 1, vec![0, 0, 1], vec![2, 2, 2], None, false),
        "d222-eta-x2" => (ex10_m(), 1, vec![2, 2, -1], vec![2, 2, 2], None, true),
        "d222-eta-x3" => (ex10_m(), 1, vec![0, 1, 0], vec![2, 2, 2], None, false),
        "d222-eta-x4" => (ex10_m(), 1, vec![2, 1, 0], vec![2, 2, 2], None, false),
        // 4i^2+2j^2+k^2+4ij-2ik-2jk over (q^2;q^2)^3, mod-12 products
        "d222-mod12-x1" => (ex11_m(), 1, vec![0, 0, 0], vec![2, 2, 2], None, false),
        "d222-mod12-x2" => (ex11_m(), 1, vec![2, 0, 0], vec![2, 2, 2], None, false),
        "d222-mod12-x3" => (ex11_m(), 1, vec![4, 2, 0], vec![2, 2, 2], None, false),
        // (1/2)i^2+2j^2+k^2+ij+2jk, denominators (q;q)^2(q^2;q^2)
        "d112-mod8-x1" => (ex12_m(), 2, vec![1, 0, 0], vec![1, 1, 2], None, false),
        "d112-mod8-x2" => (ex12_m(), 2, vec![1, 4, 4], vec![1, 1, 2], None, false),
        // 2i^2-4ij+3j^2 over (q^4;q^4)(q^8;q^8), mod-5 products (x48 pair)
        "d48-mod5-x1" => (ex13_m(), 1, vec![-2, 2], vec![4, 8], None, false),
        "d48-mod5-x2" => (ex13_m(), 1, vec![-2, 4], vec![4, 8], None, false),
        _ => return Err(Error::UnknownName(id.into())),
    };
    let b = b.iter().map(|&x| rat(x, den)).collect();
    let form = quadform(m, 1, b, Rat::zero());
    let s = match &extra {
        Some((l, l0)) => run_engine(&form, &d, Some((l, *l0)), t)?,
        None => run_engine(&form, &d, None, t)?,
    };
    Ok(if half { s.scale_rat(&rat(1, 2)) } else { s })
}

fn ex3_m() -> Vec<Vec<i64>> {
    vec![vec![6, 4, 2], vec![4, 4, 2], vec![2, 2, 2]]
}
fn ex4_m() -> Vec<Vec<i64>> {
    vec![vec![1, 2, 2], vec![2, 10, 8], vec![2, 8, 8]]
}
fn ex5_m() -> Vec<Vec<i64>> {
    vec![vec![4, 2, 2], vec![2, 2, 1], vec![2, 1, 2]]
}
fn ex8_m() -> Vec<Vec<i64>> {
    vec![vec![2, -2], vec![-2, 4]]
}
fn ex10_m() -> Vec<Vec<i64>> {
    vec![vec![4, 2, -2], vec![2, 2, 0], vec![-2, 0, 2]]
}
fn ex11_m() -> Vec<Vec<i64>> {
    vec![vec![8, 4, -2], vec![4, 4, -2], vec![-2, -2, 2]]
}
fn ex12_m() -> Vec<Vec<i64>> {
    vec![vec![1, 1, 0], vec![1, 4, 2], vec![0, 2, 2]]
}
fn ex13_m() -> Vec<Vec<i64>> {
    vec![vec![4, -4], vec![-4, 6]]
}

/// A Pochhammer-ratio product: prod over numer / prod over denom of
/// (sign q^a; q^step)_infty.
pub fn poch_ratio(
    numer: &[(Rat, i64, Rat)],
    denom: &[(Rat, i64, Rat)],
    t: &Rat,
) -> QSeries {
    let mut out = QSeries::one().truncate_to(t);
    for (a, sign, step) in numer {
        let u = if *sign < 0 { -Rat::one() } else { Rat::one() };
        out = out.mul(&pochhammer(a, &u, step, None, t).expect("positive exponents"));
    }
    for (a, sign, step) in denom {
        let u = if *sign < 0 { -Rat::one() } else { Rat::one() };
        out = out.mul(&inv_pochhammer(a, &u, step, None, t).expect("positive exponents"));
    }
    out
}

fn pr(a: i64, sign: i64, step: i64) -> (Rat, i64, Rat) {
    (rati(a), sign, rati(step))
}

/// Product side of Andrews-Gordon: (q^i, q^{2k+1-i}, q^{2k+1}; q^{2k+1}) / (q;q).
pub fn andrews_gordon_product(k: u32, i: u32, t: &Rat) -> QSeries {
    let m = 2 * k as i64 + 1;
    let i = i as i64;
    poch_ratio(
        &[pr(i, 1, m), pr(m - i, 1, m), pr(m, 1, m)],
        &[pr(1, 1, 1)],
        t,
    )
}

pub fn bressoud_product(k: u32, i: u32, t: &Rat) -> QSeries {
    let m = 2 * k as i64;
    let i = i as i64;
    poch_ratio(
        &[pr(i, 1, m), pr(m - i, 1, m), pr(m, 1, m)],
        &[pr(1, 1, 1)],
        t,
    )
}

pub fn capparelli_product(which: u8, t: &Rat) -> QSeries {
    match which {
        1 => poch_ratio(
            &[pr(2, -1, 6), pr(3, -1, 6), pr(4, -1, 6), pr(6, -1, 6)],
            &[],
            t,
        ),
        2 => poch_ratio(
            &[pr(1, -1, 6), pr(3, -1, 6), pr(5, -1, 6), pr(6, -1, 6)],
            &[],
            t,
        ),
        _ => panic!("capparelli index"),
    }
}

pub fn kanade_russell_product(which: u8, t: &Rat) -> QSeries {
    let residues: [i64; 4] = match which {
        1 => [1, 3, 6, 8],
        2 => [2, 3, 6, 7],
        3 => [3, 4, 5, 6],
        _ => panic!("kanade-russell index"),
    };
    let denom: Vec<_> = residues.iter().map(|&a| pr(a, 1, 9)).collect();
    poch_ratio(&[], &denom, t)
}

/// (-q;q^2)(q^i, q^{2k+3-i}, q^{2k+3}; q^{2k+3}) / (q^2;q^2). Valid for
/// k >= 1 (the k = 1 vector is defined by this product alone).
pub fn weber_ag_product(k: u32, i: u32, t: &Rat) -> QSeries {
    let m = 2 * k as i64 + 3;
    let i = i as i64;
    poch_ratio(
        &[pr(1, -1, 2), pr(i, 1, m), pr(m - i, 1, m), pr(m, 1, m)],
        &[pr(2, 1, 2)],
        t,
    )
}

/// (q^{4i}, q^{8k+12-4i}, q^{8k+12}; q^{8k+12}) / (q;q).
pub fn double_ag_product(k: u32, i: u32, t: &Rat) -> QSeries {
    let m = 8 * k as i64 + 12;
    let i = 4 * i as i64;
    poch_ratio(
        &[pr(i, 1, m), pr(m - i, 1, m), pr(m, 1, m)],
        &[pr(1, 1, 1)],
        t,
    )
}

/// (q^2;q^4)(q^{2i-1}, q^{4k-2i+1}, q^{4k}; q^{4k}) / (q;q).
pub fn bressoud_eq38_product(k: u32, i: u32, t: &Rat) -> QSeries {
    let m = 4 * k as i64;
    let a = 2 * i as i64 - 1;
    poch_ratio(
        &[pr(2, 1, 4), pr(a, 1, m), pr(m - a, 1, m), pr(m, 1, m)],
        &[pr(1, 1, 1)],
        t,
    )
}

/// (-q;q)(q^{2i-1}, q^{4k-1-2i}, q^{4k-2}; q^{4k-2}) / (q;q).
pub fn hjwz_product(k: u32, i: u32, t: &Rat) -> QSeries {
    let m = 4 * k as i64 - 2;
    let a = 2 * i as i64 - 1;
    poch_ratio(
        &[pr(1, -1, 1), pr(a, 1, m), pr(m - a, 1, m), pr(m, 1, m)],
        &[pr(1, 1, 1)],
        t,
    )
}

/// Product sides for the fixed example sums.
pub fn example_product(id: &str, t: &Rat) -> Result<QSeries> {
    let s = match id {
        "d222-mod10-x1" => poch_ratio(&[pr(1, -1, 2)], &[pr(2, 1, 10), pr(8, 1, 10)], t),
        "d222-mod10-x2" => poch_ratio(&[pr(1, -1, 2)], &[pr(4, 1, 10), pr(6, 1, 10)], t),
        "d222-mod10-x3" => poch_ratio(&[pr(2, -1, 2)], &[pr(2, 1, 10), pr(8, 1, 10)], t),
        "d222-mod10-x4" => poch_ratio(&[pr(2, -1, 2)], &[pr(4, 1, 10), pr(6, 1, 10)], t),
        "d122-mod20-x1" => poch_ratio(&[pr(1, -1, 1)], &[pr(4, 1, 20), pr(16, 1, 20)], t),
        "d122-mod20-x2" => poch_ratio(&[pr(1, -1, 1)], &[pr(8, 1, 20), pr(12, 1, 20)], t),
        "d111-mod5-x1" => poch_ratio(
            &[],
            &[pr(1, 1, 5), pr(1, 1, 5), pr(4, 1, 5), pr(4, 1, 5)],
            t,
        ),
        "d111-mod5-x2" => poch_ratio(
            &[],
            &[pr(2, 1, 5), pr(2, 1, 5), pr(3, 1, 5), pr(3, 1, 5)],
            t,
        ),
        "d111-mod5-x3" => poch_ratio(&[pr(5, 1, 5)], &[pr(1, 1, 1)], t),
        "d22-mod8-x1" => poch_ratio(
            &[pr(2, 1, 2), pr(2, 1, 2), pr(2, 1, 2), pr(3, 1, 8), pr(5, 1, 8), pr(8, 1, 8)],
            &[pr(1, 1, 1), pr(1, 1, 1), pr(4, 1, 4), pr(4, 1, 4)],
            t,
        ),
        "d22-mod8-x2" => poch_ratio(
            &[pr(2, 1, 2), pr(2, 1, 2), pr(2, 1, 2), pr(1, 1, 8), pr(7, 1, 8), pr(8, 1, 8)],
            &[pr(1, 1, 1), pr(1, 1, 1), pr(4, 1, 4), pr(4, 1, 4)],
            t,
        ),
        "d24-mod12-x1" => poch_ratio(
            &[pr(2, 1, 2), pr(2, 1, 2), pr(2, 1, 2), pr(3, 1, 3), pr(3, 1, 3)],
            &[pr(1, 1, 1), pr(1, 1, 1), pr(4, 1, 4), pr(4, 1, 4), pr(6, 1, 6)],
            t,
        ),
        "d24-mod12-x2" => poch_ratio(
            &[pr(2, 1, 2), pr(2, 1, 2), pr(6, 1, 6), pr(6, 1, 6)],
            &[pr(1, 1, 1), pr(3, 1, 3), pr(4, 1, 4), pr(4, 1, 4)],
            t,
        ),
        "d222-eta-x1" => poch_ratio(
            &[pr(3, 1, 3), pr(3, 1, 3), pr(4, 1, 4)],
            &[pr(1, 1, 1), pr(2, 1, 2), pr(6, 1, 6)],
            t,
        ),
        "d222-eta-x2" => poch_ratio(
            &[pr(4, 1, 4), pr(6, 1, 6), pr(6, 1, 6)],
            &[pr(2, 1, 2), pr(2, 1, 2), pr(3, 1, 3)],
            t,
        ),
        "d222-eta-x3" => poch_ratio(
            &[pr(2, 1, 2), pr(2, 1, 2), pr(3, 1, 3), pr(3, 1, 3)],
            &[pr(1, 1, 1), pr(1, 1, 1), pr(4, 1, 4), pr(6, 1, 6)],
            t,
        ),
        "d222-eta-x4" => poch_ratio(
            &[pr(2, 1, 2), pr(6, 1, 6), pr(6, 1, 6)],
            &[pr(1, 1, 1), pr(3, 1, 3), pr(4, 1, 4)],
            t,
        ),
        "d222-mod12-x1" => mod12_product(5, t),
        "d222-mod12-x2" => mod12_product(3, t),
        "d222-mod12-x3" => mod12_product(1, t),
        "d112-mod8-x1" => poch_ratio(
            &[pr(1, -1, 1)],
            &[pr(1, 1, 8), pr(4, 1, 8), pr(7, 1, 8)],
            t,
        ),
        "d112-mod8-x2" => poch_ratio(
            &[pr(1, -1, 1)],
            &[pr(3, 1, 8), pr(4, 1, 8), pr(5, 1, 8)],
            t,
        ),
        // (-1;q^4) = 2(-q^4;q^4)
        "d48-mod5-x1" => poch_ratio(
            &[pr(4, -1, 4), pr(2, 1, 5), pr(3, 1, 5), pr(5, 1, 5)],
            &[pr(1, 1, 4), pr(3, 1, 4), pr(4, 1, 4)],
            t,
        )
        .scale_rat(&rati(2)),
        "d48-mod5-x2" => poch_ratio(
            &[pr(4, -1, 4), pr(1, 1, 5), pr(4, 1, 5), pr(5, 1, 5)],
            &[pr(1, 1, 4), pr(3, 1, 4), pr(4, 1, 4)],
            t,
        )
        .scale_rat(&rati(2)),
        _ => return Err(Error::UnknownName(id.into())),
    };
    Ok(s)
}

fn mod12_product(a: i64, t: &Rat) -> QSeries {
    poch_ratio(
        &[
            pr(2, 1, 2),
            pr(2, 1, 2),
            pr(2, 1, 2),
            pr(a, 1, 12),
            pr(12 - a, 1, 12),
            pr(12, 1, 12),
        ],
        &[pr(1, 1, 1), pr(1, 1, 1), pr(4, 1, 4), pr(4, 1, 4)],
        t,
    )
}

/// All fixed example ids, in catalog order.
pub fn example_ids() -> Vec<&'static str> {
    vec![
        "d222-mod10-x1",
        "d222-mod10-x2",
        "d222-mod10-x3",
        "d222-mod10-x4",
        "d122-mod20-x1",
        "d122-mod20-x2",
        "d111-mod5-x1",
        "d111-mod5-x2",
        "d111-mod5-x3",
        "d22-mod8-x1",
        "d22-mod8-x2",
        "d24-mod12-x1",
        "d24-mod12-x2",
        "d222-eta-x1",
        "d222-eta-x2",
        "d222-eta-x3",
        "d222-eta-x4",
        "d222-mod12-x1",
        "d222-mod12-x2",
        "d222-mod12-x3",
        "d112-mod8-x1",
        "d112-mod8-x2",
        "d48-mod5-x1",
        "d48-mod5-x2",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Compare;

    #[test]
    fn ag_is_rr_at_k2() {
        let t = rati(25);
        let g = andrews_gordon_sum(2, 2, &t).unwrap();
        let expect = [1i64, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6];
        for (n, &c) in expect.iter().enumerate() {
            assert_eq!(g.coeff_at(&rati(n as i64)), rati(c));
        }
        let h = andrews_gordon_sum(2, 1, &t).unwrap();
        assert_eq!(h.coeff_at(&rati(0)), rati(1));
        assert_eq!(h.coeff_at(&rati(1)), rati(0));
        assert_eq!(h.coeff_at(&rati(2)), rati(1));
    }

    #[test]
    fn ag_t1_is_one() {
        for k in 2..=5 {
            let s = andrews_gordon_sum(k, 1, &rati(1)).unwrap();
            assert_eq!(s.num_terms(), 1);
            assert!(s.coeff_at(&Rat::zero()).is_one());
        }
    }

    #[test]
    fn ag_parameter_range() {
        assert!(andrews_gordon_sum(1, 1, &rati(5)).is_err());
        assert!(andrews_gordon_sum(3, 0, &rati(5)).is_err());
        assert!(andrews_gordon_sum(3, 4, &rati(5)).is_err());
    }

    #[test]
    fn bressoud_k2_matches_product() {
        let t = rati(20);
        let s = bressoud_sum(2, 2, &t).unwrap();
        let p = bressoud_product(2, 2, &t);
        assert_eq!(s.compare_to_order(&p, &t).unwrap(), Compare::Equal);
        let s = bressoud_sum(3, 1, &rati(30)).unwrap();
        let p = bressoud_product(3, 1, &rati(30));
        assert_eq!(s.compare_to_order(&p, &rati(30)).unwrap(), Compare::Equal);
    }

    #[test]
    fn capparelli_low_order() {
        let t = rati(12);
        let a1 = capparelli_sum(1, &t).unwrap();
        let p1 = capparelli_product(1, &t);
        assert_eq!(a1.compare_to_order(&p1, &t).unwrap(), Compare::Equal);
        let a2 = capparelli_sum(2, &t).unwrap();
        // n = 0 contributes 1 + q
        assert!(a2.coeff_at(&rati(0)).is_one());
        assert!(a2.coeff_at(&rati(1)).is_one());
        let p2 = capparelli_product(2, &t);
        assert_eq!(a2.compare_to_order(&p2, &t).unwrap(), Compare::Equal);
    }

    #[test]
    fn kanade_russell_low_order() {
        let t = rati(15);
        for which in 1..=3u8 {
            let s = kanade_russell_sum(which, &t).unwrap();
            let p = kanade_russell_product(which, &t);
            assert_eq!(
                s.compare_to_order(&p, &t).unwrap(),
                Compare::Equal,
                "KR {which}"
            );
        }
        let b3 = kanade_russell_sum(3, &t).unwrap();
        assert_eq!(b3.ord().unwrap(), Rat::zero());
        assert!(b3.coeff_at(&Rat::zero()).is_one());
    }

    #[test]
    fn bressoud_eq38_verbatim_matches_absorbed() {
        let t = rati(25);
        for k in [2u32, 3] {
            for i in 1..=k {
                let fast = bressoud_eq38_sum(k, i, &t).unwrap();
                let mut verbatim = QSeries::zero(t.clone());
                for tuple in decreasing_tuples((k - 1) as usize, 5) {
                    let term = bressoud_eq38_term_verbatim(&tuple, i, &t);
                    verbatim = verbatim.add(&term);
                }
                assert_eq!(
                    fast.compare_to_order(&verbatim, &rati(20)).unwrap(),
                    Compare::Equal,
                    "k={k} i={i}"
                );
            }
        }
    }

    #[test]
    fn bressoud_eq38_matches_product() {
        let t = rati(20);
        let s = bressoud_eq38_sum(2, 1, &t).unwrap();
        let p = bressoud_eq38_product(2, 1, &t);
        assert_eq!(s.compare_to_order(&p, &t).unwrap(), Compare::Equal);
    }

    #[test]
    fn hjwz_verbatim_matches_absorbed() {
        let t = rati(20);
        for k in [2u32, 3] {
            for i in 1..=k {
                let fast = hjwz_sum(k, i, &t).unwrap();
                let mut verbatim = QSeries::zero(t.clone());
                verbatim.add_shifted(&QSeries::one(), &Rat::zero());
                for tuple in decreasing_tuples((k - 1) as usize, 6) {
                    if tuple[0] == 0 {
                        continue;
                    }
                    let term = hjwz_term_verbatim(&tuple, i, &t);
                    verbatim = verbatim.add(&term);
                }
                assert_eq!(
                    fast.compare_to_order(&verbatim, &rati(7)).unwrap(),
                    Compare::Equal,
                    "k={k} i={i}"
                );
            }
        }
    }

    #[test]
    fn hjwz_matches_product() {
        let t = rati(18);
        let s = hjwz_sum(2, 2, &t).unwrap();
        let p = hjwz_product(2, 2, &t);
        assert_eq!(s.compare_to_order(&p, &t).unwrap(), Compare::Equal);
        let s = hjwz_sum(2, 1, &t).unwrap();
        let p = hjwz_product(2, 1, &t);
        assert_eq!(s.compare_to_order(&p, &t).unwrap(), Compare::Equal);
    }

    #[test]
    fn example_sums_match_products_low_order() {
        let t = rati(14);
        for id in example_ids() {
            let s = example_sum(id, &t).unwrap();
            let p = example_product(id, &t).unwrap();
            assert_eq!(
                s.compare_to_order(&p, &t).unwrap(),
                Compare::Equal,
                "example {id}"
            );
        }
    }

    #[test]
    fn weber_ag_matches_product_low_order() {
        let t = rati(14);
        for (k, i) in [(2u32, 1u32), (2, 2), (2, 3), (3, 1), (3, 4)] {
            let s = weber_ag_sum(k, i, &t).unwrap();
            let p = weber_ag_product(k, i, &t);
            assert_eq!(
                s.compare_to_order(&p, &t).unwrap(),
                Compare::Equal,
                "weber-ag k={k} i={i}"
            );
        }
    }

    #[test]
    fn double_ag_matches_product_low_order() {
        let t = rati(14);
        for (k, i) in [(1u32, 1u32), (1, 2), (2, 1), (2, 3)] {
            let s = double_ag_sum(k, i, &t).unwrap();
            let p = double_ag_product(k, i, &t);
            assert_eq!(
                s.compare_to_order(&p, &t).unwrap(),
                Compare::Equal,
                "double-ag k={k} i={i}"
            );
        }
    }
}
