//! Transformation data: the matrices, automorphy factors and vector-valued
//! cases behind each modular transformation law, plus the exact cyclotomic
//! verification of the alpha-constant identities.

use std::sync::Arc;

use num::{One, Zero};
use serde::Serialize;

use crate::algebraic::{AlgMatrix, AlgScalar};
use crate::cyclo::CycloElement;
use crate::error::{Error, Result};
use crate::families;
use crate::products::{theta_g, weber_f};
use crate::rational::{rat, rati, Rat};
use crate::QSeries;

/// a_ij = cos((2i-1)(2j-1) pi / 2k), size floor(k/2).
pub fn matrix_a(k: i64) -> Result<AlgMatrix> {
    if k < 2 {
        return Err(Error::ParameterRange(format!("matrix A needs k >= 2, got {k}")));
    }
    let n = (k / 2) as usize;
    let entries = (1..=n as i64)
        .map(|i| {
            (1..=n as i64)
                .map(|j| AlgScalar::cos_pi(rat((2 * i - 1) * (2 * j - 1), 2 * k)))
                .collect()
        })
        .collect();
    Ok(AlgMatrix::from_entries(entries))
}

/// Lambda_k = diag(e^{pi i (2i-1)^2 / 2k}), size floor(k/2).
pub fn matrix_lambda(k: i64) -> Result<AlgMatrix> {
    if k < 2 {
        return Err(Error::ParameterRange(format!("Lambda needs k >= 2, got {k}")));
    }
    let n = (k / 2) as usize;
    let d = (1..=n as i64)
        .map(|i| AlgScalar::exp_pi_i(rat((2 * i - 1) * (2 * i - 1), 2 * k)))
        .collect();
    Ok(AlgMatrix::diagonal(d))
}

/// Lambda-tilde_k = diag(e^{-pi i (2i-1)^2 / 2k}), size floor((k+1)/2).
pub fn matrix_lambda_tilde(k: i64) -> Result<AlgMatrix> {
    if k < 2 {
        return Err(Error::ParameterRange(format!("Lambda~ needs k >= 2, got {k}")));
    }
    let n = ((k + 1) / 2) as usize;
    let d = (1..=n as i64)
        .map(|i| AlgScalar::exp_pi_i(rat(-(2 * i - 1) * (2 * i - 1), 2 * k)))
        .collect();
    Ok(AlgMatrix::diagonal(d))
}

/// Lambda-hat_m = diag(e^{-pi i (2i-1)^2 / 4m}), size floor(m/2).
pub fn matrix_lambda_hat(m: i64) -> Result<AlgMatrix> {
    if m < 2 {
        return Err(Error::ParameterRange(format!("Lambda^ needs m >= 2, got {m}")));
    }
    let n = (m / 2) as usize;
    let d = (1..=n as i64)
        .map(|i| AlgScalar::exp_pi_i(rat(-(2 * i - 1) * (2 * i - 1), 4 * m)))
        .collect();
    Ok(AlgMatrix::diagonal(d))
}

/// B_k, size floor((k+1)/2), with the odd-k half column.
pub fn matrix_b(k: i64) -> Result<AlgMatrix> {
    if k < 2 {
        return Err(Error::ParameterRange(format!("matrix B needs k >= 2, got {k}")));
    }
    let n = ((k + 1) / 2) as usize;
    let entries = (1..=n as i64)
        .map(|i| {
            (1..=n as i64)
                .map(|j| {
                    if k % 2 == 1 && j == (k + 1) / 2 {
                        // (1/2) cos((i-1) pi)
                        AlgScalar::cos_pi(rati(i - 1)).scale(&rat(1, 2))
                    } else {
                        AlgScalar::cos_pi(rat((i - 1) * (2 * j - 1), k))
                    }
                })
                .collect()
        })
        .collect();
    Ok(AlgMatrix::from_entries(entries))
}

/// C_k, size floor((k+1)/2): first column 1/2, then cos((2i-1)(j-1) pi / k).
pub fn matrix_c(k: i64) -> Result<AlgMatrix> {
    if k < 2 {
        return Err(Error::ParameterRange(format!("matrix C needs k >= 2, got {k}")));
    }
    let n = ((k + 1) / 2) as usize;
    let entries = (1..=n as i64)
        .map(|i| {
            (1..=n as i64)
                .map(|j| {
                    if j == 1 {
                        AlgScalar::from_rat(rat(1, 2))
                    } else {
                        AlgScalar::cos_pi(rat((2 * i - 1) * (j - 1), k))
                    }
                })
                .collect()
        })
        .collect();
    Ok(AlgMatrix::from_entries(entries))
}

/// alpha_k = 1 / (2 sqrt(3) sin(k pi / 9)), k in {1, 2, 4}.
pub fn alpha(k: i64) -> Result<AlgScalar> {
    if ![1, 2, 4].contains(&k) {
        return Err(Error::ParameterRange(format!("alpha index {k}")));
    }
    Ok(AlgScalar::term(
        rat(1, 2),
        vec![
            (crate::algebraic::Prim::Sqrt(3), -1),
            (crate::algebraic::Prim::SinPi(rat(k, 9)), -1),
        ],
    ))
}

/// The 3x3 S-matrix of the mod-9 triple: [[a1,a2,a4],[a2,-a4,-a1],[a4,-a1,a2]].
pub fn alpha_matrix() -> AlgMatrix {
    let a1 = alpha(1).unwrap();
    let a2 = alpha(2).unwrap();
    let a4 = alpha(4).unwrap();
    AlgMatrix::from_entries(vec![
        vec![a1.clone(), a2.clone(), a4.clone()],
        vec![a2.clone(), a4.neg(), a1.neg()],
        vec![a4, a1.neg(), a2],
    ])
}

/// P Lambda^{-1} P for a diagonal Lambda of unit atoms (the Gamma_0(N)
/// corner composition of T and S data).
pub fn compose_gamma0(p: &AlgMatrix, lambda: &AlgMatrix) -> AlgMatrix {
    p.mul(&lambda.diagonal_inverse()).mul(p)
}

/// One exact identity check in Q(zeta_18).
#[derive(Clone, Debug, Serialize)]
pub struct CycloCheck {
    pub name: String,
    pub pass: bool,
}

/// Exact verification of the nine alpha-constant identities, together with
/// the zeta_18^9 = -1 reduction and the sqrt(3) relation they rest on.
/// Everything is computed in Q(zeta_18); alpha_t embeds there as
/// -1 / ((zeta_18^6 - zeta_18^{-6})(zeta_18^t - zeta_18^{-t})).
pub fn cyclo_constant_check() -> Vec<CycloCheck> {
    let z9 = |k: i64| CycloElement::zeta_pow(9, k);
    let z18 = |k: i64| CycloElement::zeta_pow(18, k);
    let one = CycloElement::one(18);

    let alpha_exact = |t: i64| -> CycloElement {
        let s3 = z18(6).sub(&z18(-6)); // sqrt(3) i
        let st = z18(t).sub(&z18(-t)); // 2 i sin(t pi / 9)
        s3.mul(&st).neg().invert().expect("nonzero")
    };

    let mut checks = Vec::new();
    let mut push = |name: &str, lhs: CycloElement, rhs: CycloElement| {
        checks.push(CycloCheck {
            name: name.to_string(),
            pass: lhs == rhs,
        });
    };

    // zeta_18^9 = -1 and (zeta_9^3 - zeta_9^{-3})^2 = -3
    push("zeta18^9 = -1", z18(9), one.neg());
    push(
        "(zeta9^3 - zeta9^-3)^2 = -3",
        z9(3).sub(&z9(-3)).pow(2),
        CycloElement::from_rat(18, rati(-3)),
    );
    // zeta_18^{11} (1 - zeta_9^8) = 1 - zeta_9
    push(
        "zeta18^11 (1 - zeta9^8) = 1 - zeta9",
        z18(11).mul(&one.sub(&z9(8))),
        one.sub(&z9(1)),
    );

    // row 1: common denominator (1 - zeta_9^{-1})(1 - zeta_3^{-1})
    let den1 = one.sub(&z9(-1)).mul(&one.sub(&z9(-3)));
    let den1_inv = den1.invert().expect("nonzero");
    let a11 = z18(5).mul(&den1_inv);
    let a12 = z18(5)
        .mul(&one.sub(&z9(1)).add(&z9(2)).add(&z9(5)))
        .neg()
        .mul(&den1_inv);
    let a13 = z18(5).mul(&z9(2).sub(&z9(1)).sub(&z9(4))).mul(&den1_inv);
    push("a11 = alpha1", a11, alpha_exact(1));
    push("a12 = alpha2", a12, alpha_exact(2));
    push("a13 = alpha4", a13, alpha_exact(4));

    // row 2: zeta_9^2 / ((1 - zeta_9^{-2})(1 - zeta_3^{-1}))
    let den2 = one.sub(&z9(-2)).mul(&one.sub(&z9(-3)));
    let den2_inv = den2.invert().expect("nonzero");
    let a21 = z9(2).mul(&den2_inv);
    let a22 = z9(2)
        .mul(&one.sub(&z9(2)).add(&z9(4)).add(&z9(10)))
        .neg()
        .mul(&den2_inv);
    let a23 = z9(2).mul(&z9(4).sub(&z9(2)).sub(&z9(8))).mul(&den2_inv);
    push("a21 = alpha2", a21, alpha_exact(2));
    push("a22 = -alpha4", a22, alpha_exact(4).neg());
    push("a23 = -alpha1", a23, alpha_exact(1).neg());

    // row 3: zeta_9 / ((1 - zeta_9^{-4})(1 - zeta_3^{-1}))
    let den3 = one.sub(&z9(-4)).mul(&one.sub(&z9(-3)));
    let den3_inv = den3.invert().expect("nonzero");
    let a31 = z9(1).mul(&den3_inv);
    let a32 = z9(1)
        .mul(&one.sub(&z9(4)).add(&z9(8)).add(&z9(20)))
        .neg()
        .mul(&den3_inv);
    let a33 = z9(1).mul(&z9(8).sub(&z9(4)).sub(&z9(16))).mul(&den3_inv);
    push("a31 = alpha4", a31, alpha_exact(4));
    push("a32 = -alpha1", a32, alpha_exact(1).neg());
    push("a33 = alpha2", a33, alpha_exact(2).neg().neg());

    checks
}

/// Automorphy factor: coeff * ((a_re + i a_im) tau + (b_re + i b_im))^{1/2},
/// or just the coefficient when no square root is present.
#[derive(Clone, Debug)]
pub struct AutoFactor {
    pub coeff: AlgScalar,
    pub sqrt_arg: Option<(Rat, Rat, Rat, Rat)>, // (a_re, a_im, b_re, b_im)
}

impl AutoFactor {
    pub fn constant(coeff: AlgScalar) -> Self {
        AutoFactor { coeff, sqrt_arg: None }
    }

    pub fn one() -> Self {
        Self::constant(AlgScalar::one())
    }

    /// coeff * (-2 i tau)^{1/2}
    pub fn sqrt_minus_2i_tau(coeff: AlgScalar) -> Self {
        AutoFactor {
            coeff,
            sqrt_arg: Some((Rat::zero(), rati(-2), Rat::zero(), Rat::zero())),
        }
    }

    /// coeff * sqrt(n tau + 1)
    pub fn sqrt_n_tau_plus_1(coeff: AlgScalar, n: i64) -> Self {
        AutoFactor {
            coeff,
            sqrt_arg: Some((rati(n), Rat::zero(), Rat::one(), Rat::zero())),
        }
    }
}

/// How a rule is expected to verify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Expectation {
    Pass,
    Fail,
}

type Builder = Arc<dyn Fn(&Rat) -> Result<QSeries> + Send + Sync>;

/// One component of a vector-valued case: a full series builder (prefactor
/// included) at a requested truncation order.
#[derive(Clone)]
pub struct Component {
    pub label: String,
    pub builder: Builder,
}

impl Component {
    pub fn new(label: impl Into<String>, builder: Builder) -> Self {
        Component { label: label.into(), builder }
    }
}

/// X(-1/(n tau)) = auto(tau) * matrix * X(tau).
#[derive(Clone)]
pub struct SRule {
    pub n: i64,
    pub auto: AutoFactor,
    pub matrix: AlgMatrix,
}

/// X(tau / (n tau + 1)) = auto(tau) * matrix * X(tau).
#[derive(Clone)]
pub struct GammaRule {
    pub n: i64,
    pub auto: AutoFactor,
    pub matrix: AlgMatrix,
    pub expect: Expectation,
}

#[derive(Clone)]
pub struct TransformCase {
    pub name: String,
    pub group: String,
    /// N of the Gamma_0(N) corner map used by the composition lemma.
    pub level: i64,
    pub components: Vec<Component>,
    /// Diagonal T-matrix: entry i is a single e^{pi i r} atom.
    pub t_matrix: AlgMatrix,
    pub s_rule: Option<SRule>,
    pub gamma_rules: Vec<GammaRule>,
    /// Sample points (re, im) for the numeric verification.
    pub sample_taus: Vec<(Rat, Rat)>,
}

fn shifted(pref: Rat, f: impl Fn(&Rat) -> Result<QSeries> + Send + Sync + 'static) -> Builder {
    Arc::new(move |t: &Rat| {
        let inner = f(&(t - &pref))?;
        Ok(inner.mul_monomial(&pref, &Rat::one()))
    })
}

fn default_taus() -> Vec<(Rat, Rat)> {
    vec![
        (Rat::zero(), rati(1)),
        (rat(1, 5), rat(1, 2)),
        (rat(-1, 3), rat(2, 3)),
    ]
}

fn t_diag_exp(phases: Vec<Rat>) -> AlgMatrix {
    AlgMatrix::diagonal(phases.into_iter().map(AlgScalar::exp_pi_i).collect())
}

/// coeff c/sqrt(k) as a single algebraic term.
fn over_sqrt(c: Rat, k: u64) -> AlgScalar {
    AlgScalar::term(c, vec![(crate::algebraic::Prim::Sqrt(k), -1)])
}

fn sin_m(entries: Vec<Vec<(i64, i64, i64)>>) -> AlgMatrix {
    // (c, a, b) meaning c * sin(a pi / b)
    AlgMatrix::from_entries(
        entries
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|(c, a, b)| AlgScalar::sin_pi(rat(a, b)).scale(&rati(c)))
                    .collect()
            })
            .collect(),
    )
}

/// The full catalog of vector-valued transformation cases.
pub fn registry_transform_cases() -> Vec<TransformCase> {
    let mut cases = Vec::new();

    // Rogers-Ramanujan pair on SL(2,Z), with the sin-form S-matrix
    cases.push(TransformCase {
        name: "rr".into(),
        group: "SL(2,Z)".into(),
        level: 1,
        components: vec![
            Component::new(
                "q^(-1/60) G(q)",
                shifted(rat(-1, 60), |t| families::andrews_gordon_sum(2, 2, t)),
            ),
            Component::new(
                "q^(11/60) H(q)",
                shifted(rat(11, 60), |t| families::andrews_gordon_sum(2, 1, t)),
            ),
        ],
        t_matrix: t_diag_exp(vec![rat(-1, 30), rat(11, 30)]),
        s_rule: Some(SRule {
            n: 1,
            auto: AutoFactor::constant(over_sqrt(rati(2), 5)),
            matrix: sin_m(vec![
                vec![(1, 2, 5), (1, 1, 5)],
                vec![(1, 1, 5), (-1, 2, 5)],
            ]),
        }),
        gamma_rules: vec![],
        sample_taus: default_taus(),
    });

    // Kanade-Russell mod 9 triple on Gamma_0(3)
    cases.push(TransformCase {
        name: "kr-mod9".into(),
        group: "Gamma0(3)".into(),
        level: 3,
        components: vec![
            Component::new(
                "q^(-1/18) b1(q)",
                shifted(rat(-1, 18), |t| families::kanade_russell_sum(1, t)),
            ),
            Component::new(
                "q^(5/18) b2(q)",
                shifted(rat(5, 18), |t| families::kanade_russell_sum(2, t)),
            ),
            Component::new(
                "q^(11/18) b3(q)",
                shifted(rat(11, 18), |t| families::kanade_russell_sum(3, t)),
            ),
        ],
        t_matrix: t_diag_exp(vec![rat(-1, 9), rat(5, 9), rat(11, 9)]),
        s_rule: Some(SRule {
            n: 3,
            auto: AutoFactor::one(),
            matrix: alpha_matrix(),
        }),
        gamma_rules: vec![],
        sample_taus: default_taus(),
    });

    // Capparelli pair on Gamma_0(3)
    cases.push(TransformCase {
        name: "capparelli".into(),
        group: "Gamma0(3)".into(),
        level: 3,
        components: vec![
            Component::new(
                "q^(-1/24) a1(q)",
                shifted(rat(-1, 24), |t| families::capparelli_sum(1, t)),
            ),
            Component::new(
                "q^(5/24) a2(q)",
                shifted(rat(5, 24), |t| families::capparelli_sum(2, t)),
            ),
        ],
        t_matrix: t_diag_exp(vec![rat(-1, 12), rat(5, 12)]),
        s_rule: Some(SRule {
            n: 3,
            auto: AutoFactor::constant(over_sqrt(rati(1), 2)),
            matrix: AlgMatrix::from_entries(vec![
                vec![AlgScalar::one(), AlgScalar::one()],
                vec![AlgScalar::one(), AlgScalar::one().neg()],
            ]),
        }),
        gamma_rules: vec![],
        sample_taus: default_taus(),
    });

    // theta vectors G_k^{(1)} (odd) and G_k^{(0)} (even) on Gamma_0(4)
    for k in 2..=5i64 {
        cases.push(theta_odd_case(k));
        cases.push(theta_even_case(k));
    }

    // Andrews-Gordon vectors on SL(2,Z), moduli 5, 7, 9
    for k in 2..=4u32 {
        cases.push(ag_case(k));
    }

    // Bressoud vectors on Gamma_0(4)
    for k in 2..=4u32 {
        cases.push(bressoud_even_case(k));
        cases.push(bressoud_odd_case(k));
    }

    // section-5 examples
    for k in 1..=3u32 {
        cases.push(weber_ag_case(k));
    }
    for k in 1..=2u32 {
        cases.push(double_ag_case(k));
    }
    cases.push(d222_mod10_case());
    cases.push(d122_mod20_case());
    cases.push(d111_mod5_case());
    for k in 2..=3u32 {
        cases.push(bres38_case(k));
    }
    for k in 2..=3u32 {
        cases.push(hjwz_case(k));
    }
    cases.push(d22_mod8_case());
    cases.push(d24_mod12_case());
    cases.push(d222_eta_case(0));
    cases.push(d222_eta_case(1));
    cases.push(d222_mod12_case());
    cases.push(d112_mod8_case());
    cases.push(d48_mod5_case());

    cases
}

pub fn find_case(name: &str) -> Result<TransformCase> {
    registry_transform_cases()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::UnknownName(name.into()))
}

fn theta_odd_case(k: i64) -> TransformCase {
    let mut components = Vec::new();
    let mut phases = Vec::new();
    let mut j = 1;
    while j < k {
        let jj = j;
        components.push(Component::new(
            format!("g_{{{jj},{k}}}"),
            Arc::new(move |t: &Rat| theta_g(&rati(jj), &rati(k), t)),
        ));
        phases.push(rat(jj * jj, 2 * k));
        j += 2;
    }
    let a = matrix_a(k).unwrap();
    let lambda = matrix_lambda(k).unwrap();
    let gamma_matrix = compose_gamma0(&a, &lambda);
    TransformCase {
        name: format!("gk-odd-{k}"),
        group: "Gamma0(4)".into(),
        level: 4,
        components,
        t_matrix: t_diag_exp(phases),
        s_rule: Some(SRule {
            n: 4,
            auto: AutoFactor::sqrt_minus_2i_tau(over_sqrt(rati(2), k as u64)),
            matrix: a,
        }),
        gamma_rules: vec![GammaRule {
            n: 4,
            auto: AutoFactor::sqrt_n_tau_plus_1(AlgScalar::from_rat(rat(4, k)), 4),
            matrix: gamma_matrix,
            expect: Expectation::Pass,
        }],
        sample_taus: default_taus(),
    }
}

fn theta_even_case(k: i64) -> TransformCase {
    let mut components = Vec::new();
    let mut phases = Vec::new();
    let mut j = 0;
    while j < k {
        let jj = j;
        components.push(Component::new(
            format!("g_{{{jj},{k}}}"),
            Arc::new(move |t: &Rat| theta_g(&rati(jj), &rati(k), t)),
        ));
        phases.push(rat(jj * jj, 2 * k));
        j += 2;
    }
    let b = matrix_b(k).unwrap();
    let c = matrix_c(k).unwrap();
    let lt = matrix_lambda_tilde(k).unwrap();
    let gamma_matrix = b.mul(&lt).mul(&c);
    TransformCase {
        name: format!("gk-even-{k}"),
        group: "Gamma0(4)".into(),
        level: 4,
        components,
        t_matrix: t_diag_exp(phases),
        s_rule: None,
        gamma_rules: vec![GammaRule {
            n: 4,
            auto: AutoFactor::sqrt_n_tau_plus_1(AlgScalar::from_rat(rat(4, k)), 4),
            matrix: gamma_matrix,
            expect: Expectation::Pass,
        }],
        sample_taus: default_taus(),
    }
}

fn ag_case(k: u32) -> TransformCase {
    let m = 2 * k as i64 + 1;
    let mut components = Vec::new();
    let mut phases = Vec::new();
    for r in 1..=k as i64 {
        let i = (k as i64 + 1 - r) as u32;
        let pref = rat((2 * r - 1) * (2 * r - 1), 8 * m) - rat(1, 24);
        components.push(Component::new(
            format!("q^({}) x_{{{m},{i}}}", crate::rational::rat_to_str(&pref)),
            shifted(pref, move |t| families::andrews_gordon_sum(k, i, t)),
        ));
        phases.push(rat((2 * r - 1) * (2 * r - 1), 4 * m) - rat(1, 12));
    }
    TransformCase {
        name: format!("ag-{m}"),
        group: "SL(2,Z)".into(),
        level: 1,
        components,
        t_matrix: t_diag_exp(phases),
        s_rule: Some(SRule {
            n: 1,
            auto: AutoFactor::constant(over_sqrt(rati(2), m as u64)),
            matrix: matrix_a(m).unwrap(),
        }),
        gamma_rules: vec![],
        sample_taus: default_taus(),
    }
}

fn bressoud_even_case(k: u32) -> TransformCase {
    let kk = k as i64;
    let mut components = Vec::new();
    let mut phases = Vec::new();
    let mut j = 0i64;
    while j < kk {
        let i = (kk - j) as u32;
        let pref = rat(j * j, 4 * kk) - rat(1, 24);
        components.push(Component::new(
            format!("q^({}) x_{{{},{i}}}", crate::rational::rat_to_str(&pref), 2 * kk),
            shifted(pref, move |t| families::bressoud_sum(k, i, t)),
        ));
        phases.push(rat(j * j, 2 * kk) - rat(1, 12));
        j += 2;
    }
    let b = matrix_b(kk).unwrap();
    let c = matrix_c(kk).unwrap();
    let lt = matrix_lambda_tilde(kk).unwrap();
    TransformCase {
        name: format!("bres-{}-even", 2 * kk),
        group: "Gamma0(4)".into(),
        level: 4,
        components,
        t_matrix: t_diag_exp(phases),
        s_rule: None,
        // constant 4/k (not 2/k): with C_k's half-column the multiplier
        // matrix is unimodular only at this normalization, and the measured
        // multiplier confirms it
        gamma_rules: vec![GammaRule {
            n: 4,
            auto: AutoFactor::constant(
                AlgScalar::exp_pi_i(rat(1, 3)).scale(&rat(4, kk)),
            ),
            matrix: b.mul(&lt).mul(&c),
            expect: Expectation::Pass,
        }],
        sample_taus: default_taus(),
    }
}

fn bressoud_odd_case(k: u32) -> TransformCase {
    let kk = k as i64;
    let mut components = Vec::new();
    let mut phases = Vec::new();
    let mut j = 1i64;
    while j < kk {
        let i = (kk - j) as u32;
        let pref = rat(j * j, 4 * kk) - rat(1, 24);
        components.push(Component::new(
            format!("q^({}) x_{{{},{i}}}", crate::rational::rat_to_str(&pref), 2 * kk),
            shifted(pref, move |t| families::bressoud_sum(k, i, t)),
        ));
        phases.push(rat(j * j, 2 * kk) - rat(1, 12));
        j += 2;
    }
    let a = matrix_a(kk).unwrap();
    let lambda = matrix_lambda(kk).unwrap();
    TransformCase {
        name: format!("bres-{}-odd", 2 * kk),
        group: "Gamma0(4)".into(),
        level: 4,
        components,
        t_matrix: t_diag_exp(phases),
        s_rule: None,
        gamma_rules: vec![GammaRule {
            n: 4,
            auto: AutoFactor::constant(
                AlgScalar::exp_pi_i(rat(1, 3)).scale(&rat(4, kk)),
            ),
            matrix: compose_gamma0(&a, &lambda),
            expect: Expectation::Pass,
        }],
        sample_taus: default_taus(),
    }
}

fn weber_ag_case(k: u32) -> TransformCase {
    let m = 2 * k as i64 + 3;
    let mut components = Vec::new();
    let mut phases = Vec::new();
    for r in 1..=(k as i64 + 1) {
        let i = (k as i64 + 2 - r) as u32;
        let pref = rat((2 * r - 1) * (2 * r - 1), 8 * m) - rat(1, 8);
        let label = format!("q^({}) x_{{{m},{i}}}", crate::rational::rat_to_str(&pref));
        let builder: Builder = if k == 1 {
            // the modulus-5 instance is defined by its product side
            shifted(pref, move |t| Ok(families::weber_ag_product(1, i, t)))
        } else {
            shifted(pref, move |t| families::weber_ag_sum(k, i, t))
        };
        components.push(Component::new(label, builder));
        phases.push(rat((2 * r - 1) * (2 * r - 1), 4 * m) - rat(1, 4));
    }
    let a = matrix_a(m).unwrap();
    // the theta block sits at tau/2, so the corner map excursion passes
    // through -1/(8 sigma) and the T-excursion is squared: the diagonal is
    // Lambda^{-2}, not Lambda^{-1}
    let n = (m / 2) as usize;
    let lambda_sq_inv = AlgMatrix::diagonal(
        (1..=n as i64)
            .map(|i| AlgScalar::exp_pi_i(rat(-(2 * i - 1) * (2 * i - 1), m)))
            .collect(),
    );
    TransformCase {
        name: format!("w1-mod{m}"),
        group: "Gamma0(4)".into(),
        level: 4,
        components,
        t_matrix: t_diag_exp(phases),
        s_rule: None,
        gamma_rules: vec![GammaRule {
            n: 4,
            auto: AutoFactor::constant(
                AlgScalar::exp_pi_i(rat(1, 4)).scale(&rat(4, m)),
            ),
            matrix: a.mul(&lambda_sq_inv).mul(&a),
            expect: Expectation::Pass,
        }],
        sample_taus: default_taus(),
    }
}

fn double_ag_case(k: u32) -> TransformCase {
    let m = 2 * k as i64 + 3;
    let mut components = Vec::new();
    let mut phases = Vec::new();
    for r in 1..=(k as i64 + 1) {
        let i = (k as i64 + 2 - r) as u32;
        let pref = rat((2 * r - 1) * (2 * r - 1), 2 * m) - rat(1, 24);
        components.push(Component::new(
            format!("q^({}) x_{{{m},{i}}}", crate::rational::rat_to_str(&pref)),
            shifted(pref, move |t| families::double_ag_sum(k, i, t)),
        ));
        phases.push(rat((2 * r - 1) * (2 * r - 1), m) - rat(1, 12));
    }
    let a = matrix_a(m).unwrap();
    let lh = matrix_lambda_hat(m).unwrap();
    TransformCase {
        name: format!("w2-mod{}", 8 * k + 12),
        group: "Gamma0(4)".into(),
        level: 4,
        components,
        t_matrix: t_diag_exp(phases),
        s_rule: None,
        gamma_rules: vec![GammaRule {
            n: 4,
            auto: AutoFactor::constant(
                AlgScalar::exp_pi_i(rat(1, 3)).scale(&rat(4, m)),
            ),
            matrix: a.mul(&lh).mul(&a),
            expect: Expectation::Pass,
        }],
        sample_taus: default_taus(),
    }
}

fn example_components(ids: &[&'static str], prefs: &[Rat]) -> Vec<Component> {
    ids.iter()
        .zip(prefs.iter())
        .map(|(id, pref)| {
            let id: &'static str = id;
            Component::new(
                format!("q^({}) {id}", crate::rational::rat_to_str(pref)),
                shifted(pref.clone(), move |t| families::example_sum(id, t)),
            )
        })
        .collect()
}

fn d222_mod10_case() -> TransformCase {
    let a5 = sin_m(vec![
        vec![(1, 2, 5), (1, 1, 5)],
        vec![(1, 1, 5), (-1, 2, 5)],
    ]);
    let s2 = AlgScalar::sqrt_int(2);
    let m_blk = AlgMatrix::block2(
        &a5.scale(&s2),
        &AlgMatrix::zero(2, 2),
        &AlgMatrix::zero(2, 2),
        &a5.scale(&s2.inv_unit()),
    );
    let p = AlgMatrix::diagonal(vec![
        AlgScalar::zeta(80, 3),
        AlgScalar::zeta(80, -13),
        AlgScalar::zeta(80, 3),
        AlgScalar::zeta(80, -13),
    ]);
    let n_blk = AlgMatrix::block2(&AlgMatrix::zero(2, 2), &a5, &a5, &AlgMatrix::zero(2, 2));
    TransformCase {
        name: "d222-mod10".into(),
        group: "Gamma0(2)".into(),
        level: 2,
        components: example_components(
            &["d222-mod10-x1", "d222-mod10-x2", "d222-mod10-x3", "d222-mod10-x4"],
            &[rat(-3, 40), rat(13, 40), rat(1, 20), rat(9, 20)],
        ),
        t_matrix: t_diag_exp(vec![rat(-3, 20), rat(13, 20), rat(1, 10), rat(9, 10)]),
        s_rule: None,
        gamma_rules: vec![GammaRule {
            n: 2,
            auto: AutoFactor::constant(AlgScalar::from_rat(rat(4, 5))),
            matrix: m_blk.mul(&p).mul(&n_blk),
            expect: Expectation::Pass,
        }],
        sample_taus: default_taus(),
    }
}

fn d122_mod20_case() -> TransformCase {
    let s5 = sin_m(vec![
        vec![(1, 2, 5), (1, 1, 5)],
        vec![(1, 1, 5), (-1, 2, 5)],
    ]);
    let p = AlgMatrix::diagonal(vec![AlgScalar::zeta(10, 1), AlgScalar::zeta(10, -1)]);
    TransformCase {
        name: "d122-mod20".into(),
        group: "Gamma0(4)".into(),
        level: 4,
        components: example_components(
            &["d122-mod20-x1", "d122-mod20-x2"],
            &[rat(-1, 40), rat(31, 40)],
        ),
        t_matrix: t_diag_exp(vec![rat(-1, 20), rat(31, 20)]),
        s_rule: None,
        gamma_rules: vec![GammaRule {
            n: 4,
            auto: AutoFactor::constant(AlgScalar::from_rat(rat(4, 5))),
            matrix: s5.mul(&p).mul(&s5),
            expect: Expectation::Pass,
        }],
        sample_taus: default_taus(),
    }
}

fn d111_mod5_case() -> TransformCase {
    // entries are products of two sines
    let s1 = AlgScalar::sin_pi(rat(1, 5));
    let s2 = AlgScalar::sin_pi(rat(2, 5));
    let two = rati(2);
    let mat = AlgMatrix::from_entries(vec![
        vec![s2.mul(&s2), s1.mul(&s1), s1.mul(&s2).scale(&two)],
        vec![s1.mul(&s1), s2.mul(&s2), s1.mul(&s2).scale(&two).neg()],
        vec![s1.mul(&s2), s1.mul(&s2).neg(), s1.mul(&s1).sub(&s2.mul(&s2))],
    ]);
    TransformCase {
        name: "d111-mod5".into(),
        group: "SL(2,Z)".into(),
        level: 1,
        components: example_components(
            &["d111-mod5-x1", "d111-mod5-x2", "d111-mod5-x3"],
            &[rat(-1, 30), rat(11, 30), rat(1, 6)],
        ),
        t_matrix: t_diag_exp(vec![rat(-1, 15), rat(11, 15), rat(1, 3)]),
        s_rule: Some(SRule {
            n: 1,
            auto: AutoFactor::constant(AlgScalar::from_rat(rat(4, 5))),
            matrix: mat,
        }),
        gamma_rules: vec![],
        sample_taus: default_taus(),
    }
}

fn bres38_case(k: u32) -> TransformCase {
    let kk = k as i64;
    let mut components = Vec::new();
    let mut phases = Vec::new();
    for r in 1..=kk {
        let i = (kk + 1 - r) as u32;
        let pref = rat((2 * r - 1) * (2 * r - 1), 8 * kk) - rat(1, 8);
        components.push(Component::new(
            format!("q^({}) x_{{{},{i}}}", crate::rational::rat_to_str(&pref), 2 * kk),
            shifted(pref, move |t| families::bressoud_eq38_sum(k, i, t)),
        ));
        phases.push(rat((2 * r - 1) * (2 * r - 1), 4 * kk) - rat(1, 4));
    }
    TransformCase {
        name: format!("bres38-{}", 4 * kk),
        group: "Gamma0(4)".into(),
        level: 4,
        components,
        t_matrix: t_diag_exp(phases),
        s_rule: Some(SRule {
            n: 4,
            // sqrt(2/k)
            auto: AutoFactor::constant(
                AlgScalar::sqrt_int(2).mul(&over_sqrt(Rat::one(), kk as u64)),
            ),
            matrix: matrix_a(2 * kk).unwrap(),
        }),
        gamma_rules: vec![],
        sample_taus: default_taus(),
    }
}

fn hjwz_case(k: u32) -> TransformCase {
    let kk = k as i64;
    let m = 2 * kk - 1;
    let mut components = Vec::new();
    let mut phases = Vec::new();
    for r in 1..=kk {
        let i = (kk + 1 - r) as u32;
        let pref = rat((r - 1) * (r - 1), m);
        components.push(Component::new(
            format!("q^({}) x_{{{m},{i}}}", crate::rational::rat_to_str(&pref)),
            shifted(pref, move |t| families::hjwz_sum(k, i, t)),
        ));
        phases.push(rat(2 * (r - 1) * (r - 1), m));
    }
    let b = matrix_b(m).unwrap();
    let c = matrix_c(m).unwrap();
    let lt = matrix_lambda_tilde(m).unwrap();
    TransformCase {
        name: format!("hjwz-{}", 4 * kk - 2),
        group: "Gamma0(4)".into(),
        level: 4,
        components,
        t_matrix: t_diag_exp(phases),
        s_rule: None,
        gamma_rules: vec![GammaRule {
            n: 4,
            auto: AutoFactor::constant(
                AlgScalar::exp_pi_i(rat(1, 2)).scale(&rat(2, m)),
            ),
            matrix: b.mul(&lt).mul(&c),
            expect: Expectation::Pass,
        }],
        sample_taus: default_taus(),
    }
}

fn d22_mod8_case() -> TransformCase {
    TransformCase {
        name: "d22-mod8".into(),
        group: "Gamma0(4)".into(),
        level: 4,
        components: example_components(
            &["d22-mod8-x1", "d22-mod8-x2"],
            &[rat(-5, 48), rat(19, 48)],
        ),
        t_matrix: t_diag_exp(vec![rat(-5, 24), rat(19, 24)]),
        s_rule: Some(SRule {
            n: 4,
            auto: AutoFactor::one(),
            matrix: sin_m(vec![
                vec![(1, 3, 8), (1, 1, 8)],
                vec![(1, 1, 8), (-1, 3, 8)],
            ]),
        }),
        gamma_rules: vec![],
        sample_taus: default_taus(),
    }
}

fn d24_mod12_case() -> TransformCase {
    let zi = AlgScalar::exp_pi_i(rat(1, 2));
    let z12 = AlgScalar::zeta(12, 1);
    let coeff = AlgScalar::zeta(12, -7)
        .mul(&over_sqrt(rati(1), 3))
        .neg();
    let mat = AlgMatrix::from_entries(vec![
        vec![zi, z12.scale(&rati(2))],
        vec![z12.clone(), AlgScalar::zeta(12, -1).neg()],
    ]);
    TransformCase {
        name: "d24-mod12".into(),
        group: "Gamma0(4)".into(),
        level: 4,
        components: example_components(
            &["d24-mod12-x1", "d24-mod12-x2"],
            &[rat(-1, 6), rat(1, 6)],
        ),
        t_matrix: t_diag_exp(vec![rat(-1, 3), rat(1, 3)]),
        s_rule: None,
        gamma_rules: vec![GammaRule {
            n: 4,
            auto: AutoFactor::constant(coeff),
            matrix: mat,
            expect: Expectation::Pass,
        }],
        sample_taus: default_taus(),
    }
}

fn d222_eta_case(which: usize) -> TransformCase {
    let z8 = AlgScalar::zeta(8, 1);
    let z24_11 = AlgScalar::zeta(24, 11);
    let mat = AlgMatrix::from_entries(vec![
        vec![
            z8.scale(&rati(2)).add(&z24_11),
            z8.scale(&rati(2)).sub(&z24_11.scale(&rati(2))),
        ],
        vec![z8.sub(&z24_11), z8.add(&z24_11.scale(&rati(2)))],
    ]);
    let (name, ids, prefs, phases) = if which == 0 {
        (
            "d222-eta-a",
            ["d222-eta-x1", "d222-eta-x2"],
            [rat(1, 24), rat(3, 8)],
            vec![rat(1, 12), rat(3, 4)],
        )
    } else {
        (
            "d222-eta-b",
            ["d222-eta-x3", "d222-eta-x4"],
            [rat(-1, 12), rat(1, 4)],
            vec![rat(-1, 6), rat(1, 2)],
        )
    };
    TransformCase {
        name: name.into(),
        group: "Gamma0(4)".into(),
        level: 4,
        components: example_components(&ids, &prefs),
        t_matrix: t_diag_exp(phases),
        s_rule: None,
        gamma_rules: vec![GammaRule {
            n: 4,
            auto: AutoFactor::constant(AlgScalar::from_rat(rat(1, 3))),
            matrix: mat,
            expect: Expectation::Pass,
        }],
        sample_taus: default_taus(),
    }
}

fn d222_mod12_case() -> TransformCase {
    TransformCase {
        name: "d222-mod12".into(),
        group: "Gamma0(4)".into(),
        level: 4,
        components: example_components(
            &["d222-mod12-x1", "d222-mod12-x2", "d222-mod12-x3"],
            &[rat(-1, 8), rat(5, 24), rat(7, 8)],
        ),
        t_matrix: t_diag_exp(vec![rat(-1, 4), rat(5, 12), rat(7, 4)]),
        s_rule: Some(SRule {
            n: 4,
            auto: AutoFactor::constant(
                AlgScalar::sqrt_int(2).mul(&over_sqrt(rati(1), 3)),
            ),
            matrix: sin_m(vec![
                vec![(1, 5, 12), (1, 1, 4), (1, 1, 12)],
                vec![(1, 1, 4), (-1, 1, 4), (-1, 1, 4)],
                vec![(1, 1, 12), (-1, 1, 4), (1, 5, 12)],
            ]),
        }),
        gamma_rules: vec![],
        sample_taus: default_taus(),
    }
}

fn d112_mod8_case() -> TransformCase {
    let coeff = AlgScalar::zeta(48, 7).mul(&over_sqrt(rati(2), 2));
    TransformCase {
        name: "d112-mod8".into(),
        group: "Gamma0(4)".into(),
        level: 4,
        components: example_components(
            &["d112-mod8-x1", "d112-mod8-x2"],
            &[rat(-1, 48), rat(23, 48)],
        ),
        t_matrix: t_diag_exp(vec![rat(-1, 24), rat(23, 24)]),
        s_rule: None,
        gamma_rules: vec![GammaRule {
            n: 4,
            auto: AutoFactor::constant(coeff),
            matrix: AlgMatrix::from_entries(vec![
                vec![AlgScalar::one(), AlgScalar::one()],
                vec![AlgScalar::one(), AlgScalar::one().neg()],
            ]),
            expect: Expectation::Pass,
        }],
        sample_taus: default_taus(),
    }
}

/// The negative-control pair: modular on <T, [[1,0],[8,1]]> but not on
/// Gamma_0(4). The tau/(8 tau + 1) rule is expected to pass; the candidate
/// Gamma_0(4) rule (the same shape with the doubled-level diagonal) must
/// fail, because the true image involves the Weber-f companion vector.
fn d48_mod5_case() -> TransformCase {
    let a5 = matrix_a(5).unwrap();
    let p1 = AlgMatrix::diagonal(vec![
        AlgScalar::zeta(120, 11),
        AlgScalar::zeta(120, -181),
    ]);
    let p2 = AlgMatrix::diagonal(vec![
        AlgScalar::zeta(240, 11),
        AlgScalar::zeta(240, -181),
    ]);
    TransformCase {
        name: "d48-mod5".into(),
        group: "<T, [[1,0],[8,1]]> in Gamma0(4)".into(),
        level: 8,
        components: example_components(
            &["d48-mod5-x1", "d48-mod5-x2"],
            &[rat(1, 15), rat(4, 15)],
        ),
        t_matrix: t_diag_exp(vec![rat(2, 15), rat(8, 15)]),
        s_rule: None,
        gamma_rules: vec![
            GammaRule {
                n: 8,
                auto: AutoFactor::constant(AlgScalar::from_rat(rat(4, 5))),
                matrix: a5.mul(&p1).mul(&a5),
                expect: Expectation::Pass,
            },
            GammaRule {
                n: 4,
                auto: AutoFactor::constant(AlgScalar::sqrt_int(2).scale(&rat(4, 5))),
                matrix: a5.mul(&p2).mul(&a5),
                expect: Expectation::Fail,
            },
        ],
        sample_taus: vec![
            (Rat::zero(), rat(1, 2)),
            (rat(1, 5), rat(1, 2)),
            (Rat::zero(), rat(3, 5)),
        ],
    }
}

/// The companion vector of the negative control: the same eta-quotient
/// profile with Weber f(4 tau) in place of f_2(4 tau). The paper's actual
/// tau/(4 tau + 1) image of X lands on this vector; exposed for the
/// cross-check that explains the expected failure.
pub fn d48_companion_components() -> Vec<Component> {
    // 2 f(4 tau) eta(2 tau) / (eta(tau) eta(4 tau)) G_5^{(1)}(tau/2)
    // expanded componentwise: the same prefactor exponents shifted by the
    // f_2 -> f swap: q^{1/15} -> q^{1/15 - 1/16 - 1/48}... assembled directly
    // from the displayed right side instead.
    let make = |idx: usize| -> Builder {
        Arc::new(move |t: &Rat| {
            let slack = t + rati(2);
            let f4 = weber_f(&(&slack / rati(4))).substitute_q_power(4);
            let eta2 = crate::products::eta_series(&rati(2), &slack);
            let eta1 = crate::products::eta_series(&rati(1), &slack);
            let eta4 = crate::products::eta_series(&rati(4), &slack);
            let g_half = theta_g(&rat(2 * idx as i64 + 1, 2), &rat(5, 2), &(&slack * rati(2)))?
                .scale_exponents(&rat(1, 2));
            let num = f4.mul(&eta2).mul(&g_half).scale_rat(&rati(2));
            let den = eta1.mul(&eta4);
            Ok(num.mul(&den.invert()?).truncate_to(t))
        })
    };
    vec![
        Component::new("2 f(4t) eta(2t)/(eta eta4) g_{1/2,5/2}(t/2)", make(0)),
        Component::new("2 f(4t) eta(2t)/(eta eta4) g_{3/2,5/2}(t/2)", make(1)),
    ]
}

/// Serializable registry summary for the CLI list command.
#[derive(Serialize)]
pub struct CaseSummary {
    pub name: String,
    pub group: String,
    pub level: i64,
    pub components: Vec<String>,
    pub matrix_shape: (usize, usize),
    pub has_s_rule: bool,
    pub gamma_rules: usize,
    pub expect_fail_rules: usize,
}

pub fn registry_summaries() -> Vec<CaseSummary> {
    registry_transform_cases()
        .iter()
        .map(|c| CaseSummary {
            name: c.name.clone(),
            group: c.group.clone(),
            level: c.level,
            components: c.components.iter().map(|x| x.label.clone()).collect(),
            matrix_shape: (c.t_matrix.rows, c.t_matrix.cols),
            has_s_rule: c.s_rule.is_some(),
            gamma_rules: c.gamma_rules.len(),
            expect_fail_rules: c
                .gamma_rules
                .iter()
                .filter(|g| g.expect == Expectation::Fail)
                .count(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_a_examples() {
        // A_5 equals the sin-form matrix entrywise (exactly)
        let a5 = matrix_a(5).unwrap();
        let sin_form = sin_m(vec![
            vec![(1, 2, 5), (1, 1, 5)],
            vec![(1, 1, 5), (-1, 2, 5)],
        ]);
        assert_eq!(a5.eq_exact(&sin_form), Some(true));
        // A_2 is 1x1 [cos pi/4]
        let a2 = matrix_a(2).unwrap();
        assert_eq!(a2.rows, 1);
        assert_eq!(
            a2.entries[0][0].eq_exact(&AlgScalar::cos_pi(rat(1, 4))),
            Some(true)
        );
        assert!(matrix_a(1).is_err());
    }

    #[test]
    fn matrix_a_symmetric() {
        for k in 2..=12 {
            let a = matrix_a(k).unwrap();
            for i in 0..a.rows {
                for j in 0..a.cols {
                    assert_eq!(
                        a.entries[i][j].eq_exact(&a.entries[j][i]),
                        Some(true),
                        "A_{k} not symmetric at ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn lambda_matrices() {
        let l5 = matrix_lambda(5).unwrap();
        assert_eq!(
            l5.entries[0][0].eq_exact(&AlgScalar::exp_pi_i(rat(1, 10))),
            Some(true)
        );
        assert_eq!(
            l5.entries[1][1].eq_exact(&AlgScalar::exp_pi_i(rat(9, 10))),
            Some(true)
        );
        // every T-matrix entry is a root of unity
        for case in registry_transform_cases() {
            for i in 0..case.t_matrix.rows {
                assert!(
                    case.t_matrix.entries[i][i].is_root_of_unity(),
                    "case {} T entry {i}",
                    case.name
                );
            }
        }
    }

    #[test]
    fn b_c_matrices_k3() {
        // B_3 is 2x2 with second column (1/2, -1/2)^T
        let b3 = matrix_b(3).unwrap();
        assert_eq!(b3.rows, 2);
        assert_eq!(
            b3.entries[0][1].eq_exact(&AlgScalar::from_rat(rat(1, 2))),
            Some(true)
        );
        assert_eq!(
            b3.entries[1][1].eq_exact(&AlgScalar::from_rat(rat(-1, 2))),
            Some(true)
        );
        // C_k first column all 1/2
        for k in [2i64, 3, 5, 6] {
            let c = matrix_c(k).unwrap();
            for i in 0..c.rows {
                assert_eq!(
                    c.entries[i][0].eq_exact(&AlgScalar::from_rat(rat(1, 2))),
                    Some(true)
                );
            }
        }
    }

    #[test]
    fn alpha_values() {
        let a1 = alpha(1).unwrap().eval(128);
        assert!((a1.re.to_f64() - 0.844029).abs() < 1e-5);
        let a2 = alpha(2).unwrap().eval(128).re.to_f64();
        let a4 = alpha(4).unwrap().eval(128).re.to_f64();
        assert!(a2 > a4 && a4 > 0.0);
        assert!(alpha(3).is_err());
    }

    #[test]
    fn compose_identity() {
        let i2 = AlgMatrix::identity(2);
        let composed = compose_gamma0(&i2, &AlgMatrix::diagonal(vec![
            AlgScalar::one(),
            AlgScalar::one(),
        ]));
        assert_eq!(composed.eq_exact(&AlgMatrix::identity(2)), Some(true));
    }

    #[test]
    fn cyclo_constants_all_pass() {
        let checks = cyclo_constant_check();
        assert_eq!(checks.len(), 12);
        for c in &checks {
            assert!(c.pass, "failed: {}", c.name);
        }
    }

    #[test]
    fn registry_is_populated() {
        let cases = registry_transform_cases();
        assert!(cases.len() >= 30, "only {} cases", cases.len());
        let names: std::collections::HashSet<_> = cases.iter().map(|c| c.name.clone()).collect();
        assert_eq!(names.len(), cases.len(), "duplicate case names");
        let x48 = cases.iter().find(|c| c.name == "d48-mod5").unwrap();
        assert!(x48
            .gamma_rules
            .iter()
            .any(|g| g.expect == Expectation::Fail));
        assert!(find_case("rr").is_ok());
        assert!(find_case("nope").is_err());
    }
}
