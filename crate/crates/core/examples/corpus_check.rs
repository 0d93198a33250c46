// quick dev harness: which corpus identities verify?
use hypertrans::verify::{corpus, verify_series, verify_numeric};
fn main() {
    for name in ["sextic_a", "sextic_b", "vidunas32", "quintic_a", "quintic_b"] {
        let spec = corpus::all().into_iter().find(|s| s.name == name).unwrap();
        let t0 = std::time::Instant::now();
        match verify_series(&spec, 12) {
            Ok(r) => println!("{name:12} series(12) pass={} mismatch={:?} ({:?})", r.pass, r.first_mismatch, t0.elapsed()),
            Err(e) => println!("{name:12} series(12) ERROR {e}"),
        }
    }
    // series-mode entries first (fast exactness check)
    for spec in corpus::all() {
        let t0 = std::time::Instant::now();
        match &spec.check {
            hypertrans::verify::CheckMode::Series { order } => {
                match verify_series(&spec, *order) {
                    Ok(r) => println!("{:12} series pass={} mismatch={:?} ({:?})", spec.name, r.pass, r.first_mismatch, t0.elapsed()),
                    Err(e) => println!("{:12} series ERROR {e}", spec.name),
                }
            }
            hypertrans::verify::CheckMode::Ode { .. } => {
                match verify_series(&spec, 20) {
                    Ok(r) => println!("{:12} (as series) pass={} mismatch={:?} ({:?})", spec.name, r.pass, r.first_mismatch, t0.elapsed()),
                    Err(e) => println!("{:12} series ERROR {e}", spec.name),
                }
            }
            hypertrans::verify::CheckMode::Numeric { points, precision_bits, tolerance } => {
                match verify_numeric(&spec, points, *precision_bits, tolerance) {
                    Ok(r) => {
                        println!("{:12} numeric pass={} ({:?})", spec.name, r.pass, t0.elapsed());
                        for c in &r.combos {
                            println!("    branches {:?} pass={} max_res={}", c.branches, c.pass, c.max_residual);
                            for p in &c.points {
                                if let Some(rej) = &p.rejected { println!("      point {} REJECTED: {rej}", p.point); }
                            }
                        }
                    }
                    Err(e) => println!("{:12} numeric ERROR {e}", spec.name),
                }
            }
        }
    }
}
