// Solve for the actual multiplier matrix M in X(tau/(n tau+1)) = M X(tau)
// from d sample points, and print it against the registered candidate.
use nahmvv_core::bigfloat::BigComplex;
use nahmvv_core::eval::{eval_series_certified, truncation_hint, RatMobius};
use nahmvv_core::rational::{rat, rati, Rat};
use nahmvv_core::transforms::find_case;
use num::Zero;

fn eval_comp(
    case: &nahmvv_core::transforms::TransformCase,
    idx: usize,
    tau: &BigComplex,
    prec: usize,
) -> BigComplex {
    let im = tau.im.to_f64();
    let mut th = truncation_hint(im, prec);
    loop {
        let s = (case.components[idx].builder)(&rati(2 * th)).unwrap();
        let out = eval_series_certified(&s, tau, prec, &rati(th)).unwrap();
        if out.converged {
            return out.value;
        }
        th *= 2;
    }
}

fn main() {
    let name = std::env::args().nth(1).unwrap();
    let n: i64 = std::env::args().nth(2).unwrap().parse().unwrap();
    let prec = 192usize;
    let case = find_case(&name).unwrap();
    let d = case.components.len();
    let taus: Vec<BigComplex> = (0..d)
        .map(|k| BigComplex::from_rats(&rat(k as i64, 7), &rat(k as i64 + 2, 2), prec))
        .collect();
    // build matrices: for each sample, L(tau) and X(tau)
    let mut xs = Vec::new();
    let mut ls = Vec::new();
    for tau in &taus {
        let arg = RatMobius::gamma0_corner(n).apply(tau).unwrap();
        let x: Vec<BigComplex> = (0..d).map(|i| eval_comp(&case, i, tau, prec)).collect();
        let l: Vec<BigComplex> = (0..d).map(|i| eval_comp(&case, i, &arg, prec)).collect();
        xs.push(x);
        ls.push(l);
    }
    // solve row by row: for row i, unknowns m_{i0..i,d-1}: sum_j m_ij X_j(tau_s) = L_i(tau_s)
    // Gaussian elimination on the d x d system with complex entries
    for i in 0..d {
        let mut a: Vec<Vec<BigComplex>> = (0..d)
            .map(|s| {
                let mut row = xs[s].clone();
                row.push(ls[s][i].clone());
                row
            })
            .collect();
        for c in 0..d {
            // pivot
            let piv = (c..d)
                .max_by(|&r1, &r2| {
                    a[r1][c]
                        .abs()
                        .to_f64()
                        .partial_cmp(&a[r2][c].abs().to_f64())
                        .unwrap()
                })
                .unwrap();
            a.swap(c, piv);
            let inv = a[c][c].inv();
            for cc in c..=d {
                a[c][cc] = a[c][cc].mul(&inv);
            }
            for r in 0..d {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for cc in c..=d {
                        a[r][cc] = a[r][cc].sub(&f.mul(&a[c][cc]));
                    }
                }
            }
        }
        for j in 0..d {
            let (re, im) = a[j][d].to_f64_pair();
            print!("  m[{i}][{j}] = {re:+.12} {im:+.12}i");
        }
        println!();
    }
    println!("--- candidate (first gamma rule, coeff included):");
    if let Some(g) = case.gamma_rules.iter().find(|g| g.n == n) {
        let coeff = nahmvv_core::transforms::AutoFactor::constant(g.auto.coeff.clone());
        let _ = coeff;
        let c = g.auto.coeff.eval(prec);
        let m = g.matrix.eval(prec);
        for i in 0..d {
            for j in 0..d {
                let v = m[i][j].mul(&c);
                let (re, im) = v.to_f64_pair();
                print!("  c[{i}][{j}] = {re:+.12} {im:+.12}i");
            }
            println!();
        }
    }
}
