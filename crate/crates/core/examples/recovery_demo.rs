//! Run the bundled recovery experiments and print their error levels.

use std::time::Instant;
use wavesamp_core::*;

fn main() {
    let tol = Tolerances::default();
    for (name, n_range, window) in [("bspline2", 3i64, (-2.0, 2.0)), ("bspline4", 4, (-3.0, 3.0)), ("shannon", 5, (-2.0, 2.0))] {
        let gen = builtin_generator(name).unwrap();
        let mut cfg = RecoveryConfig::for_generator(&gen);
        cfg.central_window = window;
        let t0 = Instant::now();
        match recovery_experiment(&gen, n_range, &cfg, &tol) {
            Ok(r) => println!(
                "{name}: sup_error = {:.3e}  samples = {}  ({:.2?})",
                r.sup_error,
                r.sample_count,
                t0.elapsed()
            ),
            Err(e) => println!("{name}: error {e}"),
        }
    }
    let gen = builtin_generator("bspline3").unwrap();
    let cfg = RecoveryConfig::for_generator(&gen);
    match recovery_experiment(&gen, 3, &cfg, &tol) {
        Ok(_) => println!("bspline3: unexpectedly succeeded"),
        Err(e) => println!("bspline3: properly refused: {e}"),
    }
}
