//! Central finite differences of the objective against the analytic
//! gradient `g_j = μ_j − γ̄^{α−1} S_j`, per component.

use gmc::{build_grid, eval_objective, gradient, Cone, DiscreteMeasure, GridResolution,
    GridScheme, SolverConfig, WulffShape};
use std::f64::consts::FRAC_PI_4;
use std::sync::Arc;

fn main() {
    let cone = Arc::new(Cone::circular(2, &[1.0, 1.0], FRAC_PI_4).expect("valid cone"));
    let base = 5.0 * FRAC_PI_4;
    let dir = |off: f64| vec![(base + off).cos(), (base + off).sin()];
    let measure = Arc::new(
        DiscreteMeasure::new(
            Arc::clone(&cone),
            &[(dir(0.2), 0.05), (dir(-0.1), 0.03), (dir(-0.3), 0.02)],
            1e-9,
        )
        .unwrap(),
    );
    let cfg = SolverConfig::default();
    let grid = build_grid(
        &cone,
        GridResolution::Total(cfg.grid_resolution),
        GridScheme::AngularProduct,
        0,
    )
    .expect("grid");

    let f = vec![0.8, 0.7, 0.9];
    let _ = WulffShape::new(Arc::clone(&measure), f.clone()).unwrap();
    let analytic = gradient(&f, &measure, &cfg, &grid).unwrap();

    let step = 1e-4;
    println!("objective gradient at f = {f:?}, step {step:.0e}\n");
    println!("{:>3} {:>16} {:>16} {:>12}", "j", "analytic", "central FD", "rel err");
    let mut worst = 0.0f64;
    for j in 0..f.len() {
        let mut up = f.clone();
        up[j] += step;
        let mut dn = f.clone();
        dn[j] -= step;
        let fd = (eval_objective(&up, &measure, &cfg, &grid).unwrap()
            - eval_objective(&dn, &measure, &cfg, &grid).unwrap())
            / (2.0 * step);
        let rel = (analytic[j] - fd).abs() / analytic[j].abs().max(fd.abs()).max(1e-12);
        worst = worst.max(rel);
        println!("{j:>3} {:>16.10} {fd:>16.10} {rel:>12.3e}", analytic[j]);
    }
    println!("\nmax relative error: {worst:.3e}");
}
