use nahmvv_core::identities::{find_identity, registry_identities};
use nahmvv_core::rational::rati;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let order: i64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(0);
    let filter = args.get(1).cloned().unwrap_or_default();
    for c in registry_identities() {
        if !filter.is_empty() && !c.name.contains(&filter) {
            continue;
        }
        let t = if order > 0 { rati(order) } else { rati(c.default_order) };
        let start = std::time::Instant::now();
        match c.run(&t) {
            Ok(out) => {
                if !out.pass {
                    println!("FAIL {:18} order {}: {:?}", c.name, t, out.detail);
                } else if std::env::var("VERBOSE").is_ok() {
                    println!("ok   {:18} order {} ({:.1}s)", c.name, t, start.elapsed().as_secs_f32());
                }
            }
            Err(e) => println!("ERR  {:18}: {e}", c.name),
        }
    }
    let _ = find_identity("rr-1");
    println!("done");
}
