//! Catalog of the sum = product and exact series identities, each
//! executable as an exact coefficient comparison to a requested order.

use std::sync::Arc;

use num::{One, Zero};
use serde::Serialize;

use crate::cyclo::CycloElement;
use crate::error::{Error, Result};
use crate::families;
use crate::products::{crank_gf, eta_quotient, gen_dedekind_eta, j_product, theta_g, j_m};
use crate::rational::{rat, rat_to_str, rati, Rat};
use crate::series::Compare;
use crate::{QSeries, ZSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Proved,
    Conjectural,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub pass: bool,
    /// Mismatch site when failing: exponent and the two coefficients.
    pub detail: Option<String>,
}

type Check = Arc<dyn Fn(&Rat) -> Result<CheckOutcome> + Send + Sync>;

#[derive(Clone)]
pub struct IdentityCase {
    pub name: String,
    /// Stable catalog tag grouping related identities.
    pub tag: String,
    pub status: Status,
    pub default_order: i64,
    pub ring: &'static str,
    check: Check,
}

impl IdentityCase {
    pub fn run(&self, order: &Rat) -> Result<CheckOutcome> {
        (self.check)(order)
    }
}

#[derive(Serialize)]
pub struct IdentitySummary {
    pub name: String,
    pub tag: String,
    pub status: Status,
    pub default_order: i64,
    pub ring: &'static str,
}

fn outcome_q(a: &QSeries, b: &QSeries, t: &Rat) -> Result<CheckOutcome> {
    match a.compare_to_order(b, t)? {
        Compare::Equal => Ok(CheckOutcome { pass: true, detail: None }),
        Compare::Mismatch { exponent, left, right } => Ok(CheckOutcome {
            pass: false,
            detail: Some(format!(
                "q^({}): {} vs {}",
                rat_to_str(&exponent),
                left,
                right
            )),
        }),
    }
}

fn outcome_z(a: &ZSeries, b: &ZSeries, t: &Rat) -> Result<CheckOutcome> {
    match a.compare_to_order(b, t)? {
        Compare::Equal => Ok(CheckOutcome { pass: true, detail: None }),
        Compare::Mismatch { exponent, left, right } => Ok(CheckOutcome {
            pass: false,
            detail: Some(format!(
                "q^({}): {} vs {}",
                rat_to_str(&exponent),
                left,
                right
            )),
        }),
    }
}

fn lift_q(s: &QSeries) -> ZSeries {
    let mut out = ZSeries::zero(s.trunc().clone());
    for (e, c) in s.iter_terms() {
        out.add_shifted(
            &ZSeries::from_term(e.clone(), CycloElement::from_rat(1, c.clone())),
            &Rat::zero(),
        );
    }
    out
}

fn case(
    name: impl Into<String>,
    tag: impl Into<String>,
    status: Status,
    default_order: i64,
    ring: &'static str,
    check: Check,
) -> IdentityCase {
    IdentityCase {
        name: name.into(),
        tag: tag.into(),
        status,
        default_order,
        ring,
        check,
    }
}

/// The full identity catalog.
pub fn registry_identities() -> Vec<IdentityCase> {
    let mut cases: Vec<IdentityCase> = Vec::new();

    // Rogers-Ramanujan pair
    for (name, i) in [("rr-1", 2u32), ("rr-2", 1u32)] {
        cases.push(case(
            name,
            "rogers-ramanujan",
            Status::Proved,
            200,
            "Q",
            Arc::new(move |t: &Rat| {
                let s = families::andrews_gordon_sum(2, i, t)?;
                let p = families::andrews_gordon_product(2, i, t);
                outcome_q(&s, &p, t)
            }),
        ));
    }

    // Andrews-Gordon and Bressoud families
    for k in 2..=5u32 {
        for i in 1..=k {
            cases.push(case(
                format!("ag-{}-i{}", 2 * k + 1, i),
                "andrews-gordon",
                Status::Proved,
                100,
                "Q",
                Arc::new(move |t: &Rat| {
                    let s = families::andrews_gordon_sum(k, i, t)?;
                    let p = families::andrews_gordon_product(k, i, t);
                    outcome_q(&s, &p, t)
                }),
            ));
            cases.push(case(
                format!("bres-{}-i{}", 2 * k, i),
                "bressoud",
                Status::Proved,
                100,
                "Q",
                Arc::new(move |t: &Rat| {
                    let s = families::bressoud_sum(k, i, t)?;
                    let p = families::bressoud_product(k, i, t);
                    outcome_q(&s, &p, t)
                }),
            ));
        }
    }

    // Capparelli
    for which in 1..=2u8 {
        cases.push(case(
            format!("cap-{which}"),
            "capparelli",
            Status::Proved,
            100,
            "Q",
            Arc::new(move |t: &Rat| {
                let s = families::capparelli_sum(which, t)?;
                let p = families::capparelli_product(which, t);
                outcome_q(&s, &p, t)
            }),
        ));
    }

    // Kanade-Russell mod 9 (open; finite-order consistency only)
    for which in 1..=3u8 {
        cases.push(case(
            format!("kr-{which}"),
            "kanade-russell-mod9",
            Status::Conjectural,
            100,
            "Q",
            Arc::new(move |t: &Rat| {
                let s = families::kanade_russell_sum(which, t)?;
                let p = families::kanade_russell_product(which, t);
                outcome_q(&s, &p, t)
            }),
        ));
    }

    // auxiliary families
    for k in 2..=3u32 {
        for i in 1..=(k + 1) {
            cases.push(case(
                format!("w1-mod{}-i{}", 2 * k + 3, i),
                "weber-andrews-gordon",
                Status::Proved,
                40,
                "Q",
                Arc::new(move |t: &Rat| {
                    let s = families::weber_ag_sum(k, i, t)?;
                    let p = families::weber_ag_product(k, i, t);
                    outcome_q(&s, &p, t)
                }),
            ));
        }
    }
    for k in 1..=2u32 {
        for i in 1..=(k + 1) {
            cases.push(case(
                format!("w2-mod{}-i{}", 8 * k + 12, i),
                "double-andrews-gordon",
                Status::Proved,
                40,
                "Q",
                Arc::new(move |t: &Rat| {
                    let s = families::double_ag_sum(k, i, t)?;
                    let p = families::double_ag_product(k, i, t);
                    outcome_q(&s, &p, t)
                }),
            ));
        }
    }
    for k in 2..=3u32 {
        for i in 1..=k {
            cases.push(case(
                format!("bres38-{}-i{}", 4 * k, i),
                "bressoud-nested",
                Status::Proved,
                60,
                "Q",
                Arc::new(move |t: &Rat| {
                    let s = families::bressoud_eq38_sum(k, i, t)?;
                    let p = families::bressoud_eq38_product(k, i, t);
                    outcome_q(&s, &p, t)
                }),
            ));
            cases.push(case(
                format!("hjwz-{}-i{}", 4 * k - 2, i),
                "overpartition-bressoud",
                Status::Proved,
                60,
                "Q",
                Arc::new(move |t: &Rat| {
                    let s = families::hjwz_sum(k, i, t)?;
                    let p = families::hjwz_product(k, i, t);
                    outcome_q(&s, &p, t)
                }),
            ));
        }
    }

    // fixed example sums
    for id in families::example_ids() {
        let rank3 = id.contains("111") || id.contains("222") || id.contains("122") || id.contains("112");
        cases.push(case(
            id,
            "example-family",
            Status::Proved,
            if rank3 { 40 } else { 60 },
            "Q",
            Arc::new(move |t: &Rat| {
                let s = families::example_sum(id, t)?;
                let p = families::example_product(id, t)?;
                outcome_q(&s, &p, t)
            }),
        ));
    }

    // crank 3-dissection at primitive ninth roots of unity
    for j in [1i64, 2, 4] {
        cases.push(case(
            format!("crank-3dissect-z{j}"),
            "crank-dissection",
            Status::Proved,
            60,
            "Q(zeta9)",
            Arc::new(move |t: &Rat| {
                let (lhs, rhs) = crank_dissection_sides(j, t)?;
                outcome_z(&lhs, &rhs, t)
            }),
        ));
    }

    // 2-dissections in J-notation
    cases.push(case(
        "jid-1",
        "eta-2-dissection",
        Status::Proved,
        200,
        "Q",
        Arc::new(|t: &Rat| {
            let (lhs, rhs, _, _) = jid_sides(1, t)?;
            outcome_q(&lhs, &rhs, t)
        }),
    ));
    cases.push(case(
        "jid-2",
        "eta-2-dissection",
        Status::Proved,
        200,
        "Q",
        Arc::new(|t: &Rat| {
            let (lhs, rhs, _, _) = jid_sides(2, t)?;
            outcome_q(&lhs, &rhs, t)
        }),
    ));

    // the same dissections as eta-quotient identities with fractional scales
    for which in 1..=2u8 {
        cases.push(case(
            format!("etaid-{which}"),
            "eta-2-dissection",
            Status::Proved,
            30,
            "Q",
            Arc::new(move |t: &Rat| {
                let (lhs, rhs) = etaid_sides(which, t);
                outcome_q(&lhs, &rhs, t)
            }),
        ));
    }

    // generalized-eta representations of the mod 9 components
    for which in 1..=3u8 {
        cases.push(case(
            format!("kr-geneta-{which}"),
            "kanade-russell-mod9",
            Status::Conjectural,
            45,
            "Q(zeta9)",
            Arc::new(move |t: &Rat| {
                let (lhs, rhs) = kr_geneta_sides(which, t)?;
                outcome_z(&lhs, &rhs, t)
            }),
        ));
    }

    // eta-quotient representations of the Capparelli components
    for which in 1..=2u8 {
        cases.push(case(
            format!("cap-eta-{which}"),
            "capparelli",
            Status::Proved,
            60,
            "Q",
            Arc::new(move |t: &Rat| {
                let (lhs, rhs) = cap_eta_sides(which, t)?;
                outcome_q(&lhs, &rhs, t)
            }),
        ));
    }

    // theta-over-eta representation of the mod-5 third component
    cases.push(case(
        "d111-mod5-x3-theta",
        "example-family",
        Status::Proved,
        30,
        "Q",
        Arc::new(|t: &Rat| {
            let lhs = families::example_sum("d111-mod5-x3", t)?
                .mul_monomial(&rat(1, 6), &Rat::one());
            let slack = t + rati(1);
            let g1 = theta_g(&rat(1, 2), &rat(5, 2), &slack)?;
            let g3 = theta_g(&rat(3, 2), &rat(5, 2), &slack)?;
            let eta2 = eta_quotient(&[(rati(1), -2)], &slack);
            let rhs = g1.mul(&g3).mul(&eta2).truncate_to(t);
            outcome_q(&lhs, &rhs, t)
        }),
    ));

    cases
}

/// Both sides of the crank 3-dissection for z = zeta_9^j.
pub fn crank_dissection_sides(j: i64, t: &Rat) -> Result<(ZSeries, ZSeries)> {
    let z = CycloElement::zeta_pow(9, j);
    let lhs = crank_gf(&z, t);
    let one = CycloElement::one(9);
    let j27 = |a: i64| -> Result<ZSeries> { Ok(lift_q(&j_product(a, 27, t)?)) };
    let j27_full = lift_q(&j_m(27, t));
    let inv = j27_full.invert()?;
    let c0 = j27(6)?.mul(&j27(12)?);
    let c1 = j27(3)?.mul(&j27(12)?);
    let c2 = j27(3)?.mul(&j27(6)?);
    // (1 - z + z^2 + z^5) and (z^2 - z - z^4)
    let w1 = one
        .sub(&z)
        .add(&z.pow(2))
        .add(&z.pow(5));
    let w2 = z.pow(2).sub(&z).sub(&z.pow(4));
    let rhs = c0
        .sub(&c1.scale(&w1).mul_monomial(&rati(1), &one))
        .add(&c2.scale(&w2).mul_monomial(&rati(2), &one))
        .mul(&inv)
        .truncate_to(t);
    Ok((lhs, rhs))
}

/// J-notation 2-dissection sides plus the two displayed components
/// (even-part candidate, odd-part candidate with its q-power stripped).
pub fn jid_sides(which: u8, t: &Rat) -> Result<(QSeries, QSeries, QSeries, QSeries)> {
    let j = |m: i64| j_m(m, t);
    let (lhs, a, b, sign): (QSeries, QSeries, QSeries, i64) = match which {
        1 => {
            let lhs = j(3).mul(&j(1).invert()?).truncate_to(t);
            // J4 J6 J16 J24^2 / (J2^2 J8 J12 J48)
            let a = j(4)
                .mul(&j(6))
                .mul(&j(16))
                .mul(&j(24))
                .mul(&j(24))
                .mul(&j(2).pow_i(2)?.invert()?)
                .mul(&j(8).invert()?)
                .mul(&j(12).invert()?)
                .mul(&j(48).invert()?);
            // J4 J6 J8^2 J48 / (J2^2 J4 J16 J24)
            let b = j(4)
                .mul(&j(6))
                .mul(&j(8).pow_i(2)?)
                .mul(&j(48))
                .mul(&j(2).pow_i(2)?.invert()?)
                .mul(&j(4).invert()?)
                .mul(&j(16).invert()?)
                .mul(&j(24).invert()?);
            (lhs, a, b, 1)
        }
        2 => {
            let lhs = j(1).mul(&j(3).invert()?).truncate_to(t);
            // J2 J12 J16 J24^2 / (J6^2 J8 J12 J48)
            let a = j(2)
                .mul(&j(12))
                .mul(&j(16))
                .mul(&j(24).pow_i(2)?)
                .mul(&j(6).pow_i(2)?.invert()?)
                .mul(&j(8).invert()?)
                .mul(&j(12).invert()?)
                .mul(&j(48).invert()?);
            // J2 J12 J8^2 J48 / (J4 J6^2 J16 J24)
            let b = j(2)
                .mul(&j(12))
                .mul(&j(8).pow_i(2)?)
                .mul(&j(48))
                .mul(&j(4).invert()?)
                .mul(&j(6).pow_i(2)?.invert()?)
                .mul(&j(16).invert()?)
                .mul(&j(24).invert()?);
            (lhs, a, b, -1)
        }
        _ => return Err(Error::ParameterRange("jid index".into())),
    };
    let qb = b.mul_monomial(&rati(1), &Rat::one()).scale_rat(&rati(sign));
    let rhs = a.add(&qb).truncate_to(t);
    Ok((lhs, rhs, a.truncate_to(t), b.truncate_to(t)))
}

/// The eta-quotient form of the 2-dissections, at fractional arguments.
pub fn etaid_sides(which: u8, t: &Rat) -> (QSeries, QSeries) {
    let q = |fs: &[(i64, i64, i64)]| -> QSeries {
        // (num, den, exp) meaning eta((num/den) tau)^exp
        let factors: Vec<(Rat, i64)> = fs.iter().map(|&(n, d, e)| (rat(n, d), e)).collect();
        eta_quotient(&factors, t)
    };
    match which {
        1 => {
            let lhs = q(&[(1, 4, 1), (1, 6, 2), (1, 2, -1), (1, 3, -1), (1, 12, -1)]);
            let r1 = q(&[(4, 3, 1), (2, 1, 2), (2, 3, -1), (1, 1, -1), (4, 1, -1)]);
            let r2 = q(&[(2, 3, 2), (4, 1, 1), (1, 3, -1), (4, 3, -1), (2, 1, -1)]);
            (lhs, r1.add(&r2))
        }
        _ => {
            let lhs = q(&[(1, 2, 2), (1, 12, 1), (1, 1, -1), (1, 4, -1), (1, 6, -1)]);
            let r1 = q(&[(4, 3, 1), (2, 1, 2), (2, 3, -1), (1, 1, -1), (4, 1, -1)]);
            let r2 = q(&[(2, 3, 2), (4, 1, 1), (1, 3, -1), (4, 3, -1), (2, 1, -1)]);
            (lhs, r1.sub(&r2))
        }
    }
}

/// q^{c_i} b_i(q) against 1/(E_{g,0}(9 tau) E_{g',0}(9 tau)).
pub fn kr_geneta_sides(which: u8, t: &Rat) -> Result<(ZSeries, ZSeries)> {
    let (pref, g1, g2) = match which {
        1 => (rat(-1, 18), 1i64, 3i64),
        2 => (rat(5, 18), 2, 3),
        3 => (rat(11, 18), 3, 4),
        _ => return Err(Error::ParameterRange("kr index".into())),
    };
    let sum = families::kanade_russell_sum(which, &(t - &pref))?;
    let lhs = lift_q(&sum.mul_monomial(&pref, &Rat::one()));
    let slack = t + rati(1);
    let t9 = &slack / rati(9) + rati(1);
    let e1 = gen_dedekind_eta(9, g1, 0, &t9)?.substitute_q_power(9);
    let e2 = gen_dedekind_eta(9, g2, 0, &t9)?.substitute_q_power(9);
    let rhs = e1.mul(&e2).invert()?.truncate_to(t);
    Ok((lhs, rhs))
}

/// q^{c_i} a_i(q) against its eta quotient.
pub fn cap_eta_sides(which: u8, t: &Rat) -> Result<(QSeries, QSeries)> {
    let (pref, factors): (Rat, Vec<(Rat, i64)>) = match which {
        1 => (
            rat(-1, 24),
            vec![
                (rati(4), 1),
                (rati(6), 2),
                (rati(2), -1),
                (rati(3), -1),
                (rati(12), -1),
            ],
        ),
        2 => (
            rat(5, 24),
            vec![
                (rati(2), 2),
                (rati(12), 1),
                (rati(1), -1),
                (rati(4), -1),
                (rati(6), -1),
            ],
        ),
        _ => return Err(Error::ParameterRange("capparelli index".into())),
    };
    let sum = families::capparelli_sum(which, &(t - &pref))?;
    let lhs = sum.mul_monomial(&pref, &Rat::one());
    let rhs = eta_quotient(&factors, t);
    Ok((lhs, rhs))
}

/// Report line of the dissection suite.
#[derive(Clone, Debug, Serialize)]
pub struct DissectionCheck {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

/// The 2-dissections with the independent parity-extraction cross-check:
/// the displayed first summand must equal the even-exponent part and the
/// second (with its sign and q) the odd part.
pub fn check_eta_dissections(t: &Rat) -> Result<Vec<DissectionCheck>> {
    let mut out = Vec::new();
    for which in 1..=2u8 {
        let (lhs, rhs, a, b) = jid_sides(which, t)?;
        let sign = if which == 1 { 1 } else { -1 };
        let identity = lhs.compare_to_order(&rhs, t)?;
        out.push(DissectionCheck {
            name: format!("jid-{which}"),
            pass: identity == Compare::Equal,
            detail: mismatch_detail(&identity),
        });
        let even = lhs.dissect(0, 2);
        let odd = lhs.dissect(1, 2);
        let even_cmp = even.compare_to_order(&a, t)?;
        out.push(DissectionCheck {
            name: format!("jid-{which}-even-part"),
            pass: even_cmp == Compare::Equal,
            detail: mismatch_detail(&even_cmp),
        });
        let qb = b
            .mul_monomial(&rati(1), &Rat::one())
            .scale_rat(&rati(sign))
            .truncate_to(t);
        let odd_cmp = odd.compare_to_order(&qb, t)?;
        out.push(DissectionCheck {
            name: format!("jid-{which}-odd-part"),
            pass: odd_cmp == Compare::Equal,
            detail: mismatch_detail(&odd_cmp),
        });
    }
    Ok(out)
}

fn mismatch_detail(c: &Compare<Rat>) -> Option<String> {
    match c {
        Compare::Equal => None,
        Compare::Mismatch { exponent, left, right } => Some(format!(
            "q^({}): {} vs {}",
            rat_to_str(exponent),
            left,
            right
        )),
    }
}

pub fn find_identity(name: &str) -> Result<IdentityCase> {
    registry_identities()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::UnknownName(name.into()))
}

/// Catalog listing with an optional substring/status filter.
pub fn list_identities(filter: Option<&str>) -> Vec<IdentitySummary> {
    registry_identities()
        .iter()
        .filter(|c| match filter {
            None => true,
            Some("conjectural") => c.status == Status::Conjectural,
            Some("proved") => c.status == Status::Proved,
            Some("cyclotomic") => c.ring.starts_with("Q(")
                && c.tag == "crank-dissection",
            Some(f) => c.name.contains(f) || c.tag.contains(f),
        })
        .map(|c| IdentitySummary {
            name: c.name.clone(),
            tag: c.tag.clone(),
            status: c.status,
            default_order: c.default_order,
            ring: c.ring,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shape() {
        let all = list_identities(None);
        assert!(all.len() >= 40, "catalog has {}", all.len());
        let names: std::collections::HashSet<_> = all.iter().map(|c| c.name.clone()).collect();
        assert_eq!(names.len(), all.len(), "duplicate identity names");
        let conj = list_identities(Some("conjectural"));
        // the three sum-product cases plus their generalized-eta forms
        assert_eq!(conj.iter().filter(|c| c.tag == "kanade-russell-mod9").count(), 6);
        let cyc = list_identities(Some("cyclotomic"));
        assert_eq!(cyc.len(), 3);
    }

    #[test]
    fn rr_checks_pass() {
        let c = find_identity("rr-1").unwrap();
        let out = c.run(&rati(60)).unwrap();
        assert!(out.pass, "{:?}", out.detail);
        assert!(find_identity("nope").is_err());
    }

    #[test]
    fn constant_window_passes_trivially() {
        let c = find_identity("jid-1").unwrap();
        let out = c.run(&rati(1)).unwrap();
        assert!(out.pass);
    }

    #[test]
    fn crank_dissection_low_order() {
        for j in [1i64, 2, 4] {
            let (lhs, rhs) = crank_dissection_sides(j, &rati(20)).unwrap();
            assert_eq!(
                lhs.compare_to_order(&rhs, &rati(20)).unwrap(),
                Compare::Equal,
                "crank z = zeta9^{j}"
            );
        }
    }

    #[test]
    fn jid_and_parity_low_order() {
        let checks = check_eta_dissections(&rati(40)).unwrap();
        assert_eq!(checks.len(), 6);
        for c in &checks {
            assert!(c.pass, "{}: {:?}", c.name, c.detail);
        }
    }

    #[test]
    fn etaid_low_order() {
        for which in 1..=2u8 {
            let (lhs, rhs) = etaid_sides(which, &rati(10));
            assert_eq!(
                lhs.compare_to_order(&rhs, &rati(10)).unwrap(),
                Compare::Equal,
                "etaid-{which}"
            );
        }
    }

    #[test]
    fn kr_geneta_low_order() {
        for which in 1..=3u8 {
            let (lhs, rhs) = kr_geneta_sides(which, &rati(15)).unwrap();
            assert_eq!(
                lhs.compare_to_order(&rhs, &rati(15)).unwrap(),
                Compare::Equal,
                "kr-geneta-{which}"
            );
        }
    }

    #[test]
    fn cap_eta_low_order() {
        for which in 1..=2u8 {
            let (lhs, rhs) = cap_eta_sides(which, &rati(25)).unwrap();
            assert_eq!(
                lhs.compare_to_order(&rhs, &rati(25)).unwrap(),
                Compare::Equal,
                "cap-eta-{which}"
            );
        }
    }
}
