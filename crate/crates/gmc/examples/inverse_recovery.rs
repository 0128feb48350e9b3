//! Forward-then-inverse round trip: pick a shape, read off its scaled
//! surface measure, hand that measure to the solver, and compare the
//! recovered support vector.

use gmc::gaussian::covolume_and_surface;
use gmc::{build_grid, solve, Cone, DiscreteMeasure, GridResolution, GridScheme, SolverConfig,
    WulffShape};
use std::f64::consts::FRAC_PI_4;
use std::sync::Arc;

fn main() {
    let cone = Arc::new(Cone::circular(2, &[1.0, 1.0], FRAC_PI_4).expect("valid cone"));
    let base = 5.0 * FRAC_PI_4;
    let dir = |off: f64| vec![(base + off).cos(), (base + off).sin()];
    let seed_measure = Arc::new(
        DiscreteMeasure::new(
            Arc::clone(&cone),
            &[(dir(0.35), 1.0), (dir(0.0), 1.0), (dir(-0.3), 1.0)],
            1e-9,
        )
        .unwrap(),
    );

    for alpha in [1.0, 2.0] {
        let cfg = SolverConfig {
            alpha,
            ..SolverConfig::default()
        };
        let grid = build_grid(
            &cone,
            GridResolution::Total(cfg.grid_resolution),
            GridScheme::AngularProduct,
            0,
        )
        .expect("grid");

        let truth = vec![0.62, 0.71, 0.63];
        let shape = WulffShape::new(Arc::clone(&seed_measure), truth.clone()).unwrap();
        let (cov, surface) = covolume_and_surface(&shape, &grid).unwrap();
        let mu: Vec<f64> = surface
            .masses
            .iter()
            .map(|s| cov.powf(alpha - 1.0) * s)
            .collect();
        let target = Arc::new(seed_measure.with_weights(mu).unwrap());

        let report = solve(&target, &cfg).expect("solve");
        println!("alpha = {alpha}");
        println!("  planted f  = {truth:?}");
        println!("  recovered  = {:?}", report.support);
        println!("  residual   = {:.3e} ({})", report.residual, report.termination);
        let worst = truth
            .iter()
            .zip(&report.support)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        println!("  max |Δf|   = {worst:.3e}\n");
    }
}
