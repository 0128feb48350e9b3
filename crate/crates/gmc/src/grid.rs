//! Quadrature grids over the spherical patch `Ω_C = int C ∩ S^{n-1}`.
//!
//! Weights are exact cell masses wherever a closed form exists, so the
//! weight sum always reproduces the spherical area of `Ω_C` to roundoff:
//! arc length in the plane, `Δψ (cos φ_lo − cos φ_hi)` cells on circular
//! caps, exact spherical triangle areas for triangulated polyhedral
//! cones, and `area / N` for Monte Carlo nodes.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::cone::{orthonormal_complement, orthonormal_complement3, triangle_solid_angle, Cone};
use crate::error::{GmcError, Result};
use crate::vecn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridScheme {
    AngularProduct,
    Triangulated,
    MonteCarlo,
}

impl std::fmt::Display for GridScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GridScheme::AngularProduct => "angular-product",
            GridScheme::Triangulated => "triangulated",
            GridScheme::MonteCarlo => "monte-carlo",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy)]
pub enum GridResolution {
    /// Target node count; the builder picks the per-axis split.
    Total(usize),
    /// Explicit polar × azimuthal split (circular cones in ℝ³ only).
    Product { polar: usize, azimuth: usize },
}

/// Quadrature nodes and weights over `Ω_C`.
#[derive(Debug, Clone)]
pub struct SphericalGrid {
    cone: Arc<Cone>,
    dim: usize,
    nodes: Vec<f64>, // flat, stride = dim
    weights: Vec<f64>,
    scheme: GridScheme,
    seed: u64,
}

impl SphericalGrid {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn node(&self, k: usize) -> &[f64] {
        &self.nodes[k * self.dim..(k + 1) * self.dim]
    }

    pub fn weight(&self, k: usize) -> f64 {
        self.weights[k]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn cone(&self) -> &Arc<Cone> {
        &self.cone
    }

    pub fn scheme(&self) -> GridScheme {
        self.scheme
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Largest cell weight; a crude resolution figure used in
    /// error diagnostics.
    pub fn max_weight(&self) -> f64 {
        self.weights.iter().cloned().fold(0.0, f64::max)
    }
}

pub fn build_grid(
    cone: &Arc<Cone>,
    resolution: GridResolution,
    scheme: GridScheme,
    seed: u64,
) -> Result<SphericalGrid> {
    let target = match resolution {
        GridResolution::Total(n) => {
            if n == 0 {
                return Err(GmcError::InvalidConfig(
                    "grid resolution must be positive".into(),
                ));
            }
            n
        }
        GridResolution::Product { polar, azimuth } => {
            if polar == 0 || azimuth == 0 {
                return Err(GmcError::InvalidConfig(
                    "grid resolution must be positive".into(),
                ));
            }
            polar * azimuth
        }
    };
    match (scheme, cone.dim(), cone.is_polyhedral()) {
        (GridScheme::AngularProduct, 2, _) => arc_midpoint(cone, target, seed),
        (GridScheme::AngularProduct, 3, false) => {
            let (np, na) = match resolution {
                GridResolution::Product { polar, azimuth } => (polar, azimuth),
                GridResolution::Total(n) => {
                    let np = ((n as f64 / 2.0).sqrt().round() as usize).max(4);
                    (np, n.div_ceil(np))
                }
            };
            cap_product(cone, np, na, seed)
        }
        (GridScheme::AngularProduct, _, false) => Err(GmcError::UnsupportedScheme {
            scheme: scheme.to_string(),
            reason: "circular cones above dimension 3 need the monte-carlo scheme".into(),
        }),
        (GridScheme::AngularProduct, _, true) => Err(GmcError::UnsupportedScheme {
            scheme: scheme.to_string(),
            reason: "polyhedral cones in ℝ³ need the triangulated scheme".into(),
        }),
        (GridScheme::Triangulated, 3, true) => triangulated(cone, target, seed),
        (GridScheme::Triangulated, 2, _) => arc_midpoint(cone, target, seed),
        (GridScheme::Triangulated, _, _) => Err(GmcError::UnsupportedScheme {
            scheme: scheme.to_string(),
            reason: "triangulation applies to polyhedral cones in ℝ³ (and arcs in ℝ²)".into(),
        }),
        (GridScheme::MonteCarlo, _, _) => monte_carlo(cone, target, seed),
    }
}

/// Scheme a solve picks when none is requested.
pub fn default_scheme(cone: &Cone) -> GridScheme {
    match (cone.dim(), cone.is_polyhedral()) {
        (2, _) => GridScheme::AngularProduct,
        (3, false) => GridScheme::AngularProduct,
        (3, true) => GridScheme::Triangulated,
        _ => GridScheme::MonteCarlo,
    }
}

fn arc_midpoint(cone: &Arc<Cone>, n: usize, seed: u64) -> Result<SphericalGrid> {
    let (lo, hi) = cone.sector_2d()?;
    let h = (hi - lo) / n as f64;
    let mut nodes = Vec::with_capacity(2 * n);
    let mut weights = Vec::with_capacity(n);
    for k in 0..n {
        let a = lo + (k as f64 + 0.5) * h;
        nodes.push(a.cos());
        nodes.push(a.sin());
        weights.push(h);
    }
    Ok(SphericalGrid {
        cone: Arc::clone(cone),
        dim: 2,
        nodes,
        weights,
        scheme: GridScheme::AngularProduct,
        seed,
    })
}

fn cap_product(cone: &Arc<Cone>, n_polar: usize, n_azimuth: usize, seed: u64) -> Result<SphericalGrid> {
    let theta = cone
        .half_angle()
        .expect("cap_product only called for circular cones");
    let axis = cone.axis();
    let (b1, b2) = orthonormal_complement3(axis);
    let dphi = theta / n_polar as f64;
    let dpsi = 2.0 * std::f64::consts::PI / n_azimuth as f64;
    let mut nodes = Vec::with_capacity(3 * n_polar * n_azimuth);
    let mut weights = Vec::with_capacity(n_polar * n_azimuth);
    for i in 0..n_polar {
        let phi_lo = i as f64 * dphi;
        let phi_hi = phi_lo + dphi;
        let phi = phi_lo + 0.5 * dphi;
        let w = dpsi * (phi_lo.cos() - phi_hi.cos()); // exact cell mass
        let (sp, cp) = phi.sin_cos();
        for j in 0..n_azimuth {
            let psi = (j as f64 + 0.5) * dpsi;
            let (ss, cs) = psi.sin_cos();
            for d in 0..3 {
                nodes.push(cp * axis[d] + sp * (cs * b1[d] + ss * b2[d]));
            }
            weights.push(w);
        }
    }
    Ok(SphericalGrid {
        cone: Arc::clone(cone),
        dim: 3,
        nodes,
        weights,
        scheme: GridScheme::AngularProduct,
        seed,
    })
}

fn triangulated(cone: &Arc<Cone>, target: usize, seed: u64) -> Result<SphericalGrid> {
    let vertices = cone.extreme_rays_3d()?;
    let axis = cone.axis();
    let k = vertices.len();
    // choose the subdivision level so the node count lands near the target
    let per_level0 = k as f64;
    let level = ((target as f64 / per_level0).ln() / 4.0f64.ln())
        .round()
        .max(0.0) as u32;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for i in 0..k {
        subdivide(
            axis,
            &vertices[i],
            &vertices[(i + 1) % k],
            level,
            &mut nodes,
            &mut weights,
        );
    }
    Ok(SphericalGrid {
        cone: Arc::clone(cone),
        dim: 3,
        nodes,
        weights,
        scheme: GridScheme::Triangulated,
        seed,
    })
}

fn subdivide(
    a: &[f64],
    b: &[f64],
    c: &[f64],
    level: u32,
    nodes: &mut Vec<f64>,
    weights: &mut Vec<f64>,
) {
    if level == 0 {
        let centroid = vecn::normalized(&vecn::add(&vecn::add(a, b), c));
        nodes.extend_from_slice(&centroid);
        weights.push(triangle_solid_angle(a, b, c));
        return;
    }
    let mab = vecn::normalized(&vecn::add(a, b));
    let mbc = vecn::normalized(&vecn::add(b, c));
    let mca = vecn::normalized(&vecn::add(c, a));
    subdivide(a, &mab, &mca, level - 1, nodes, weights);
    subdivide(&mab, b, &mbc, level - 1, nodes, weights);
    subdivide(&mca, &mbc, c, level - 1, nodes, weights);
    subdivide(&mab, &mbc, &mca, level - 1, nodes, weights);
}

fn monte_carlo(cone: &Arc<Cone>, n: usize, seed: u64) -> Result<SphericalGrid> {
    let dim = cone.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let area = cone.omega_area();
    let w = area / n as f64;
    let mut nodes = Vec::with_capacity(dim * n);
    let axis = cone.axis();
    let theta_max = cone.angular_radius();

    if dim == 2 {
        let (lo, hi) = cone.sector_2d()?;
        for _ in 0..n {
            let a = lo + rng.gen::<f64>() * (hi - lo);
            nodes.push(a.cos());
            nodes.push(a.sin());
        }
    } else {
        let basis = orthonormal_complement(axis);
        let mut accepted = 0usize;
        let mut guard = 0usize;
        while accepted < n {
            guard += 1;
            if guard > 10_000 * n {
                return Err(GmcError::NoConvergence(
                    "monte-carlo node rejection never terminated".into(),
                ));
            }
            // polar angle with density ∝ sin^{n-2} φ on (0, θ_max)
            let phi = match dim {
                3 => {
                    let u: f64 = rng.gen();
                    (1.0 - u * (1.0 - theta_max.cos())).acos()
                }
                _ => {
                    // rejection under the constant envelope sin^{n-2} θ_max
                    let cand = rng.gen::<f64>() * theta_max;
                    let accept: f64 = rng.gen();
                    if accept
                        > (cand.sin() / theta_max.sin()).powi(dim as i32 - 2)
                    {
                        continue;
                    }
                    cand
                }
            };
            // uniform direction on the (n-2)-sphere of the axis complement
            let mut omega: Vec<f64> = (0..dim - 1).map(|_| rng.sample(StandardNormal)).collect();
            let nrm = vecn::norm(&omega);
            if nrm < 1e-12 {
                continue;
            }
            for x in omega.iter_mut() {
                *x /= nrm;
            }
            let mut u = vec![0.0; dim];
            let (sp, cp) = phi.sin_cos();
            for d in 0..dim {
                u[d] = cp * axis[d];
                for (comp, b) in omega.iter().zip(&basis) {
                    u[d] += sp * comp * b[d];
                }
            }
            if !cone.interior_direction(&u, 0.0) {
                continue;
            }
            nodes.extend_from_slice(&u);
            accepted += 1;
        }
    }
    Ok(SphericalGrid {
        cone: Arc::clone(cone),
        dim,
        nodes,
        weights: vec![w; n],
        scheme: GridScheme::MonteCarlo,
        seed,
    })
}
