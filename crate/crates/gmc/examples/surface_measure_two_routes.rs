//! The Gaussian surface area measure computed twice: push-forward
//! quadrature over the cone arc vs exact facet integration. Agreement of
//! the two routes is the crate's correctness certificate in the plane.

use gmc::{build_grid, surface_measure_facet, surface_measure_pushforward, Cone, DiscreteMeasure,
    GridResolution, GridScheme, WulffShape};
use std::f64::consts::FRAC_PI_4;
use std::sync::Arc;

fn main() {
    let cone = Arc::new(Cone::circular(2, &[1.0, 1.0], FRAC_PI_4).expect("valid cone"));
    let base = 5.0 * FRAC_PI_4; // opposite the axis
    let dir = |off: f64| vec![(base + off).cos(), (base + off).sin()];
    let measure = Arc::new(
        DiscreteMeasure::new(
            Arc::clone(&cone),
            &[(dir(0.25), 1.0), (dir(0.0), 1.0), (dir(-0.18), 1.0)],
            1e-9,
        )
        .unwrap(),
    );
    // middle facet partially clipped by its neighbours
    let shape = WulffShape::new(measure, vec![0.9, 1.0, 1.1]).unwrap();
    let grid = build_grid(&cone, GridResolution::Total(16384), GridScheme::AngularProduct, 0)
        .expect("grid");

    let push = surface_measure_pushforward(&shape, &grid).unwrap();
    let facet = surface_measure_facet(&shape).unwrap();

    println!("three clipped facets on the quarter-plane\n");
    println!("{:>3} {:>16} {:>16} {:>12}", "j", "push-forward", "facet (exact)", "abs gap");
    for j in 0..shape.len() {
        println!(
            "{j:>3} {:>16.10} {:>16.10} {:>12.3e}",
            push.masses[j],
            facet.masses[j],
            (push.masses[j] - facet.masses[j]).abs()
        );
    }
    println!(
        "\ntotals: push-forward {:.10}, facet {:.10}",
        push.total, facet.total
    );
    println!("push-forward est. quadrature error: {:.3e}", push.est_error);

    // single-facet closed form e^{-1/2} erf(1/sqrt2) / sqrt(2pi)
    let single = WulffShape::new(
        Arc::new(DiscreteMeasure::new(Arc::clone(&cone), &[(dir(0.0), 1.0)], 1e-9).unwrap()),
        vec![1.0],
    )
    .unwrap();
    let exact = surface_measure_facet(&single).unwrap().masses[0];
    println!("\nsingle facet f=1: facet route {exact:.12} (closed form 0.165190871034)");
}
