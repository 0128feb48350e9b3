//! Interior solve: quarter-plane, one atom of mass 0.1. The stationarity
//! condition reduces to a single-variable root equation whose smallest
//! root the ascent finds from the small-constant initialization.

use gmc::{solve, Cone, DiscreteMeasure, SolverConfig};
use std::f64::consts::FRAC_PI_4;
use std::sync::Arc;

fn main() {
    let cone = Arc::new(Cone::circular(2, &[1.0, 1.0], FRAC_PI_4).expect("valid cone"));
    let s = 1.0 / 2.0f64.sqrt();
    let measure =
        Arc::new(DiscreteMeasure::new(Arc::clone(&cone), &[(vec![-s, -s], 0.1)], 1e-9).unwrap());

    let report = solve(&measure, &SolverConfig::default()).expect("solve");

    println!("single-atom quarter-plane, μ = 0.1, α = 1\n");
    println!("converged          = {} ({})", report.converged, report.termination);
    println!("iterations         = {}", report.iterations);
    println!("f*                 = {:.8?}", report.support);
    println!("covolume           = {:.8} (cap {:.8})", report.covolume, report.beta / 2.0);
    println!("surface measure    = {:.8?}", report.surface.masses);
    println!("residual           = {:.3e}", report.residual);
    println!("constraint active  = {}", report.constraint_active);
    println!("distance b         = {:.8} (Λ = {:.8})", report.min_distance, report.lambda_bound);
    println!("objective          = {:.10}", report.objective);
    println!("\nreference: smallest root of the facet-mass equation is 0.33914717…");
}
