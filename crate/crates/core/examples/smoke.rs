use nahmvv_core::rational::{rat, rati, Rat};
use nahmvv_core::transforms::registry_transform_cases;
use nahmvv_core::verify::verify_case;
use num::Zero;

fn main() {
    let filter: Vec<String> = std::env::args().skip(1).collect();
    for case in registry_transform_cases() {
        if !filter.is_empty() && !filter.iter().any(|f| case.name.contains(f)) {
            continue;
        }
        let taus = if case.name == "d48-mod5" {
            vec![(Rat::zero(), rat(1, 2))]
        } else {
            vec![(Rat::zero(), rati(1))]
        };
        let start = std::time::Instant::now();
        match verify_case(&case, 192, Some(&taus), 1e-25, 1e-3) {
            Ok(rep) => {
                let worst = rep.taus[0]
                    .rules
                    .iter()
                    .filter(|r| !r.expect_fail)
                    .map(|r| r.residual)
                    .fold(0.0f64, f64::max);
                println!(
                    "{:14} {:>5} ok={} t_exact={} worst={:.2e} ({} rules, {:.1}s)",
                    case.name,
                    case.group.chars().take(5).collect::<String>(),
                    rep.ok,
                    rep.t_exact,
                    worst,
                    rep.taus[0].rules.len(),
                    start.elapsed().as_secs_f32()
                );
                if !rep.ok {
                    for r in &rep.taus[0].rules {
                        println!(
                            "    {:30} residual={:.3e} pass={} conv={} branch={}",
                            r.rule, r.residual, r.pass, r.converged, r.branch_sign_mismatch
                        );
                    }
                }
            }
            Err(e) => println!("{:14} ERROR: {e}", case.name),
        }
    }
}
