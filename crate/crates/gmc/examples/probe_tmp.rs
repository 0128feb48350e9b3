use gmc::*;
use std::sync::Arc;
use std::f64::consts::FRAC_PI_4;

fn main() {
    let cone = Arc::new(Cone::circular(2, &[1.0, 1.0], FRAC_PI_4).unwrap());
    let base = 5.0 * FRAC_PI_4;
    let dir = |off: f64| vec![(base + off).cos(), (base + off).sin()];
    // both atoms demand more mass than attainable -> boundary
    for (w1, w2) in [(0.9, 0.7), (2.0, 1.5), (0.35, 0.3)] {
        let measure = Arc::new(
            DiscreteMeasure::new(
                Arc::clone(&cone),
                &[(dir(0.3), w1), (dir(-0.25), w2)],
                1e-9,
            )
            .unwrap(),
        );
        let report = solve(&measure, &SolverConfig::default()).unwrap();
        println!(
            "mu=({w1},{w2}): conv={} ({}) active={} lambda={:.5} resid={:.3e} cov={:.6} iters={}",
            report.converged, report.termination, report.constraint_active,
            report.kkt_lambda, report.residual, report.covolume, report.iterations
        );
    }
}
