//! Scalar anchors of the three stock cones: Gaussian mass β, feasibility
//! radius Λ, and a few polar membership probes.

use gmc::Cone;
use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

fn main() {
    let quarter = Cone::circular(2, &[1.0, 1.0], FRAC_PI_4).expect("valid cone");
    let cap3 = Cone::circular(3, &[0.0, 0.0, 1.0], FRAC_PI_3).expect("valid cone");
    let octant = Cone::polyhedral(&[
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
    ])
    .expect("valid cone");

    println!("=== cone anchors ===\n");
    for (name, cone) in [
        ("quarter-plane (n=2, θ=π/4)", &quarter),
        ("circular cap (n=3, θ=π/3)", &cap3),
        ("positive octant (n=3)", &octant),
    ] {
        println!("{name}");
        println!("  axis          = {:?}", cone.axis());
        println!("  beta          = {:.12}", cone.gaussian_mass());
        println!("  lambda bound  = {:.12}", cone.lambda_bound());
        println!("  omega area    = {:.12}", cone.omega_area());
        println!();
    }

    println!("closed forms: quarter-plane Λ = sqrt(2 ln 2) = {:.12}", (2.0 * 2.0f64.ln()).sqrt());

    let s = 1.0 / 2.0f64.sqrt();
    println!("\npolar membership on the quarter-plane:");
    for (label, v) in [
        ("-axis (deep interior)", vec![-s, -s]),
        ("(0,-1) (polar boundary)", vec![0.0, -1.0]),
        ("(0.6,-0.8) (outside)", vec![0.6, -0.8]),
    ] {
        println!("  {label:26} -> {}", quarter.polar_membership(&v, 0.0));
    }

    // constraint level β is unattainable for a ball cap
    match quarter.lambda_bound_at(quarter.gaussian_mass()) {
        Err(e) => println!("\nlevel = beta: {e}"),
        Ok(_) => unreachable!("level = beta must be rejected"),
    }
}
