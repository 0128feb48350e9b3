//! Gaussian co-volume and Gaussian surface area measure of Wulff shapes.
//!
//! The co-volume is the Gaussian mass of `C \ [f]`, computed in polar
//! coordinates as `(2π)^{-n/2} Σ_k w_k G_n(ρ(u_k))` over a grid of `Ω_C`.
//! The surface measure comes by two independent routes:
//!
//! - push-forward quadrature: each grid node contributes
//!   `w_k ρ(u_k)^n e^{-ρ²/2} / f_j` to the constraint `j` that touches the
//!   boundary point `ρ(u_k) u_k`;
//! - exact facet integration (plane only): each constraint's facet is a
//!   segment, clipped by the neighbouring constraints and the cone
//!   boundary, and its Gaussian line integral has an error-function
//!   closed form.
//!
//! Agreement of the two routes is the crate's central correctness
//! certificate; the solver consumes the push-forward route because it is
//! the exact derivative of the gridded co-volume with respect to the
//! support vector.
//!
//! All reductions accumulate in fixed node order, so repeated runs are
//! bit-identical.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{GmcError, Result};
use crate::grid::SphericalGrid;
use crate::special::{gauss_segment_integral, gaussian_norm_const, radial_gaussian_integral};
use crate::vecn;
use crate::wulff::WulffShape;

/// Computation route of a [`MeasureVector`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureRoute {
    PushForward,
    Facet,
    MonteCarlo,
}

/// Per-direction surface masses `S_j >= 0` with bookkeeping.
#[derive(Debug, Clone)]
pub struct MeasureVector {
    pub masses: Vec<f64>,
    pub total: f64,
    pub route: MeasureRoute,
    /// Heuristic bound on the quadrature error (exact routes report ~0).
    pub est_error: f64,
    /// Largest single-node contribution to any mass. A support
    /// perturbation that flips one node between facets moves `S_j` by
    /// this much, so it is the resolution floor of the push-forward
    /// route (0 for exact routes).
    pub max_node_mass: f64,
}

impl MeasureVector {
    fn from_masses(
        masses: Vec<f64>,
        route: MeasureRoute,
        est_error: f64,
        max_node_mass: f64,
    ) -> MeasureVector {
        let total = masses.iter().sum();
        MeasureVector {
            masses,
            total,
            route,
            est_error,
            max_node_mass,
        }
    }
}

/// Gaussian co-volume `γ̄([f]) = γ_n(C \ [f])` by grid quadrature.
pub fn covolume(shape: &WulffShape, grid: &SphericalGrid) -> Result<f64> {
    let n = shape.dim();
    let mut acc = 0.0;
    for k in 0..grid.len() {
        let (rho, _) = shape.radial_core(grid.node(k))?;
        acc += grid.weight(k) * radial_gaussian_integral(n, rho);
    }
    Ok(gaussian_norm_const(n) * acc)
}

/// Co-volume and push-forward surface measure in one pass over the grid.
pub fn covolume_and_surface(
    shape: &WulffShape,
    grid: &SphericalGrid,
) -> Result<(f64, MeasureVector)> {
    let n = shape.dim();
    let norm = gaussian_norm_const(n);
    let mut cov = 0.0;
    let mut masses = vec![0.0; shape.len()];
    let mut prev_arg = usize::MAX;
    let mut transitions = 0usize;
    let mut max_term: f64 = 0.0;
    let mut max_node: f64 = 0.0;
    for k in 0..grid.len() {
        let (rho, arg) = shape.radial_core(grid.node(k))?;
        let w = grid.weight(k);
        cov += w * radial_gaussian_integral(n, rho);
        let integrand = rho.powi(n as i32) * (-rho * rho / 2.0).exp() / shape.support()[arg];
        masses[arg] += w * integrand;
        if arg != prev_arg && prev_arg != usize::MAX {
            transitions += 1;
        }
        prev_arg = arg;
        max_term = max_term.max(integrand);
        max_node = max_node.max(w * integrand);
    }
    for s in masses.iter_mut() {
        *s *= norm;
    }
    // straddled cells at facet switches dominate the quadrature error
    let est = norm * transitions as f64 * grid.max_weight() * max_term;
    Ok((
        cov * norm,
        MeasureVector::from_masses(masses, MeasureRoute::PushForward, est, norm * max_node),
    ))
}

/// Push-forward surface measure `S_j` over the grid.
pub fn surface_measure_pushforward(
    shape: &WulffShape,
    grid: &SphericalGrid,
) -> Result<MeasureVector> {
    covolume_and_surface(shape, grid).map(|(_, s)| s)
}

/// Exact facet-integral surface measure; plane only.
///
/// For direction `v_j` the facet lies on the line `<x, v_j> = -f_j`,
/// parametrized as `x(s) = -f_j v_j + s t_j` with `t_j = rot90(v_j)`.
/// Every other constraint and the two cone boundary rays clip `s` to an
/// interval, and the Gaussian line integral over it is
/// `(2π)^{-1} e^{-f_j²/2} ∫ e^{-s²/2} ds`.
pub fn surface_measure_facet(shape: &WulffShape) -> Result<MeasureVector> {
    let n = shape.dim();
    if n != 2 {
        return Err(GmcError::DimensionUnsupported {
            required: 2,
            actual: n,
        });
    }
    let cone = shape.cone();
    let cone_normals = cone.boundary_normals_2d()?;
    let measure = shape.measure();
    let f = shape.support();
    let m = shape.len();
    let mut masses = vec![0.0; m];
    for j in 0..m {
        let vj = measure.direction(j);
        let tj = vecn::rot90ccw(vj);
        let base = vecn::scaled(vj, -f[j]);
        let mut s_lo = f64::NEG_INFINITY;
        let mut s_hi = f64::INFINITY;
        let mut clip = |a: f64, b: f64| {
            // constraint a·s <= b
            if a > 0.0 {
                s_hi = s_hi.min(b / a);
            } else if a < 0.0 {
                s_lo = s_lo.max(b / a);
            } else if b < 0.0 {
                s_hi = f64::NEG_INFINITY; // infeasible line
            }
        };
        for (i, fi) in f.iter().enumerate() {
            if i == j {
                continue;
            }
            let vi = measure.direction(i);
            // <x(s), v_i> <= -f_i
            clip(vecn::dot(&tj, vi), -fi - vecn::dot(&base, vi));
        }
        for w in &cone_normals {
            // <x(s), w> <= 0
            clip(vecn::dot(&tj, w), -vecn::dot(&base, w));
        }
        if s_hi > s_lo {
            masses[j] = gaussian_norm_const(2)
                * (-f[j] * f[j] / 2.0).exp()
                * gauss_segment_integral(s_lo, s_hi);
        }
    }
    Ok(MeasureVector::from_masses(masses, MeasureRoute::Facet, 1e-14, 0.0))
}

/// Tail `Σ_{i >= start} e^{-(t0+i)²/2} (t0+i+1)^{n-2}` of the slab series
/// bounding the Gaussian boundary mass beyond height `t0 + start`; terms
/// are summed until they fall below 1e-18 of the partial sum.
pub fn tail_series(t0: f64, n: usize, start: usize) -> f64 {
    debug_assert!(t0 > 0.0);
    debug_assert!(n >= 2);
    let mut acc = 0.0;
    let mut i = start;
    loop {
        let t = t0 + i as f64;
        let term = (-t * t / 2.0).exp() * (t + 1.0).powi(n as i32 - 2);
        acc += term;
        if term == 0.0 || term <= 1e-18 * acc {
            return acc;
        }
        i += 1;
        if i > start + 100_000 {
            return acc; // unreachable for t0 > 0; defensive
        }
    }
}

/// Monte Carlo estimate of the co-volume.
#[derive(Debug, Clone, Copy)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Draws standard Gaussian vectors and counts the fraction landing in
/// `C \ [f]`. Deterministic for a fixed seed.
pub fn mc_covolume_oracle(shape: &WulffShape, samples: usize, seed: u64) -> McEstimate {
    let n = shape.dim();
    let cone = shape.cone();
    let measure = shape.measure();
    let f = shape.support();
    let m = shape.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0.0; n];
    let mut hits = 0usize;
    for _ in 0..samples {
        for xi in x.iter_mut() {
            *xi = rng.sample(StandardNormal);
        }
        if !cone.contains(&x) {
            continue;
        }
        // inside the cone; outside the shape iff some cut is violated
        let outside_shape = (0..m).any(|j| vecn::dot(&x, measure.direction(j)) > -f[j]);
        if outside_shape {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    McEstimate {
        estimate: p,
        std_error: (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        seed,
    }
}
