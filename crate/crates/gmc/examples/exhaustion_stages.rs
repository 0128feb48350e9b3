//! Staged solve over nested direction subsets with warm starts, printing
//! how the shared support components settle stage to stage.

use gmc::{solve, solve_exhaustive, Cone, DiscreteMeasure, ExhaustionPlan, SolverConfig};
use std::f64::consts::FRAC_PI_4;
use std::sync::Arc;

fn main() {
    let cone = Arc::new(Cone::circular(2, &[1.0, 1.0], FRAC_PI_4).expect("valid cone"));
    let base = 5.0 * FRAC_PI_4;
    let dir = |off: f64| vec![(base + off).cos(), (base + off).sin()];
    let measure = Arc::new(
        DiscreteMeasure::new(
            Arc::clone(&cone),
            &[
                (dir(0.0), 0.05),
                (dir(0.3), 0.04),
                (dir(-0.25), 0.03),
                (dir(0.15), 0.02),
            ],
            1e-9,
        )
        .unwrap(),
    );
    let cfg = SolverConfig::default();
    let plan = ExhaustionPlan::new(vec![vec![0], vec![0, 1, 2], vec![0, 1, 2, 3]]);

    let summary = solve_exhaustive(&measure, &plan, &cfg).expect("staged solve");
    println!("stage-one target mass: {:.4}", summary.stage_one_target_mass);
    println!("feasibility radius Λ : {:.6}\n", summary.lambda_bound);
    for stage in &summary.stages {
        println!("stage {} over atoms {:?}", stage.stage, stage.indices);
        println!("  f              = {:.6?}", stage.report.support);
        println!("  covolume       = {:.8}", stage.report.covolume);
        println!("  b(K)           = {:.6}", stage.distance);
        println!("  mass on stage1 = {:.6}", stage.stage_one_surface_mass);
        if let Some(d) = stage.sup_diff_common {
            println!("  sup |Δf| vs prev stage = {d:.3e}");
        }
        println!();
    }

    let direct = solve(&measure, &cfg).expect("direct solve");
    let final_f = &summary.final_report().support;
    let worst = final_f
        .iter()
        .zip(&direct.support)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    println!("staged final vs direct solve: sup |Δf| = {worst:.3e}");
}
