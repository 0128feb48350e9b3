//! Pointed convex cones, their polar cones, and the scalar anchors used by
//! the solver: the Gaussian mass `β = γ_n(C)` and the feasibility radius
//! `Λ` with `γ_n(Λ Bⁿ ∩ C) = β/2`.
//!
//! Two families are supported: circular cones (any dimension n >= 2,
//! described by a unit axis and a half-angle below π/2) and polyhedral
//! cones spanned by unit generators (dimensions 2 and 3). Every cone
//! carries a distinguished interior unit vector `axis` with
//! `<axis, x> > 0` for all nonzero x in C; for polyhedral cones it is the
//! normalized mean of the generators, and pointedness is certified by
//! checking that this functional strictly separates.

use crate::error::{GmcError, Result};
use crate::special::{cap_area_fraction, radial_mass_fraction, sphere_area};
use crate::vecn;

/// User-facing cone description; validated by [`Cone::new`].
#[derive(Debug, Clone)]
pub enum ConeSpec {
    Circular {
        dim: usize,
        axis: Vec<f64>,
        half_angle: f64,
    },
    Polyhedral {
        generators: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone)]
enum Shape {
    Circular {
        half_angle: f64,
    },
    /// Planar sector. Boundary rays are stored counter-clockwise
    /// (`ray_lo` to `ray_hi`), normals point out of the cone.
    Sector {
        ray_lo: Vec<f64>,
        ray_hi: Vec<f64>,
        normal_lo: Vec<f64>,
        normal_hi: Vec<f64>,
        angle_lo: f64,
        angle_hi: f64,
    },
    /// Pointed full-dimensional cone in ℝ³. `vertices` are the extreme
    /// unit rays in counter-clockwise order around the axis; `normals`
    /// are unit outward facet normals (`<x, w> <= 0` inside).
    Polytope3 {
        generators: Vec<Vec<f64>>,
        vertices: Vec<Vec<f64>>,
        normals: Vec<Vec<f64>>,
    },
}

/// A validated pointed full-dimensional convex cone.
#[derive(Debug, Clone)]
pub struct Cone {
    dim: usize,
    axis: Vec<f64>,
    shape: Shape,
    beta: f64,
    omega_area: f64,
}

impl Cone {
    pub fn new(spec: &ConeSpec) -> Result<Cone> {
        match spec {
            ConeSpec::Circular {
                dim,
                axis,
                half_angle,
            } => Cone::circular(*dim, axis, *half_angle),
            ConeSpec::Polyhedral { generators } => Cone::polyhedral(generators),
        }
    }

    pub fn circular(dim: usize, axis: &[f64], half_angle: f64) -> Result<Cone> {
        if dim < 2 {
            return Err(GmcError::Unsupported(format!(
                "dimension must be at least 2, got {dim}"
            )));
        }
        if axis.len() != dim {
            return Err(GmcError::Unsupported(format!(
                "axis has {} components, expected {dim}",
                axis.len()
            )));
        }
        if vecn::norm(axis) < 1e-12 {
            return Err(GmcError::Unsupported("axis is the zero vector".into()));
        }
        if half_angle >= std::f64::consts::FRAC_PI_2 {
            return Err(GmcError::NotPointed(format!(
                "half-angle {half_angle} is not below π/2"
            )));
        }
        if half_angle <= 0.0 {
            return Err(GmcError::NotFullDim(format!(
                "half-angle {half_angle} leaves the cone without interior"
            )));
        }
        let axis = vecn::normalized(axis);
        let beta = cap_area_fraction(dim, half_angle);
        let omega_area = sphere_area(dim) * beta;
        Ok(Cone {
            dim,
            axis,
            shape: Shape::Circular { half_angle },
            beta,
            omega_area,
        })
    }

    pub fn polyhedral(generators: &[Vec<f64>]) -> Result<Cone> {
        if generators.is_empty() {
            return Err(GmcError::NotFullDim("no generators".into()));
        }
        let dim = generators[0].len();
        if generators.iter().any(|g| g.len() != dim) {
            return Err(GmcError::Unsupported(
                "generators of mixed dimension".into(),
            ));
        }
        if dim != 2 && dim != 3 {
            return Err(GmcError::Unsupported(format!(
                "polyhedral cones are supported in dimensions 2 and 3, got {dim}"
            )));
        }
        let gens: Vec<Vec<f64>> = generators
            .iter()
            .map(|g| {
                if vecn::norm(g) < 1e-12 {
                    Err(GmcError::Unsupported("zero generator".into()))
                } else {
                    Ok(vecn::normalized(g))
                }
            })
            .collect::<Result<_>>()?;

        // axis = normalized mean, also the pointedness certificate
        let mut mean = vec![0.0; dim];
        for g in &gens {
            for (m, x) in mean.iter_mut().zip(g) {
                *m += x / gens.len() as f64;
            }
        }
        if vecn::norm(&mean) < 1e-12 {
            return Err(GmcError::NotPointed(
                "generators average to zero (opposite pair or balanced set)".into(),
            ));
        }
        let axis = vecn::normalized(&mean);
        for (i, g) in gens.iter().enumerate() {
            if vecn::dot(&axis, g) <= 1e-12 {
                return Err(GmcError::NotPointed(format!(
                    "generator {i} is not strictly separated by the mean direction"
                )));
            }
        }

        match dim {
            2 => Cone::sector_from(axis, gens),
            3 => Cone::polytope3_from(axis, gens),
            _ => unreachable!(),
        }
    }

    fn sector_from(axis: Vec<f64>, gens: Vec<Vec<f64>>) -> Result<Cone> {
        let perp = vecn::rot90ccw(&axis);
        let rel_angle = |g: &[f64]| vecn::dot(g, &perp).atan2(vecn::dot(g, &axis));
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let (mut ray_lo, mut ray_hi) = (gens[0].clone(), gens[0].clone());
        for g in &gens {
            let a = rel_angle(g);
            if a < lo {
                lo = a;
                ray_lo = g.clone();
            }
            if a > hi {
                hi = a;
                ray_hi = g.clone();
            }
        }
        if hi - lo < 1e-12 {
            return Err(GmcError::NotFullDim(
                "generators span a single ray in the plane".into(),
            ));
        }
        let axis_angle = axis[1].atan2(axis[0]);
        let normal_hi = vecn::rot90ccw(&ray_hi).to_vec();
        let normal_lo = vecn::scaled(&vecn::rot90ccw(&ray_lo), -1.0);
        Ok(Cone {
            dim: 2,
            beta: (hi - lo) / (2.0 * std::f64::consts::PI),
            omega_area: hi - lo,
            axis,
            shape: Shape::Sector {
                ray_lo,
                ray_hi,
                normal_lo,
                normal_hi,
                angle_lo: axis_angle + lo,
                angle_hi: axis_angle + hi,
            },
        })
    }

    fn polytope3_from(axis: Vec<f64>, gens: Vec<Vec<f64>>) -> Result<Cone> {
        let (b1, b2) = orthonormal_complement3(&axis);
        // project generators onto the plane <x, axis> = 1 and take the
        // planar convex hull; its vertices are the extreme rays
        let pts: Vec<[f64; 2]> = gens
            .iter()
            .map(|g| {
                let t = vecn::dot(g, &axis);
                let p: Vec<f64> = g.iter().map(|x| x / t).collect();
                [vecn::dot(&p, &b1), vecn::dot(&p, &b2)]
            })
            .collect();
        let hull = convex_hull_2d(&pts);
        if hull.len() < 3 {
            return Err(GmcError::NotFullDim(
                "generators are coplanar with the apex; the cone has empty interior".into(),
            ));
        }
        let vertices: Vec<Vec<f64>> = hull.iter().map(|&i| gens[i].clone()).collect();
        let mut normals = Vec::with_capacity(vertices.len());
        for i in 0..vertices.len() {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % vertices.len()];
            let mut w = vecn::cross3(a, b).to_vec();
            if vecn::dot(&w, &axis) > 0.0 {
                w = vecn::scaled(&w, -1.0);
            }
            let nw = vecn::norm(&w);
            if nw < 1e-12 {
                return Err(GmcError::NotFullDim(
                    "adjacent extreme rays are parallel".into(),
                ));
            }
            let w = vecn::scaled(&w, 1.0 / nw);
            if gens.iter().any(|g| vecn::dot(g, &w) > 1e-9) {
                return Err(GmcError::NotPointed(
                    "facet orientation check failed; generators wrap around the axis".into(),
                ));
            }
            normals.push(w);
        }
        let solid = polygon_solid_angle(&axis, &vertices);
        Ok(Cone {
            dim: 3,
            beta: solid / (4.0 * std::f64::consts::PI),
            omega_area: solid,
            axis,
            shape: Shape::Polytope3 {
                generators: gens,
                vertices,
                normals,
            },
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The interior unit vector with `<axis, x> > 0` on C \ {o}.
    pub fn axis(&self) -> &[f64] {
        &self.axis
    }

    /// Gaussian mass `β = γ_n(C)`, always in (0, 1/2) for a pointed cone.
    pub fn gaussian_mass(&self) -> f64 {
        self.beta
    }

    /// Spherical area of `Ω_C = int C ∩ S^{n-1}`.
    pub fn omega_area(&self) -> f64 {
        self.omega_area
    }

    /// True iff the unit vector `v` lies in the interior of the polar cone
    /// with the given angular margin.
    pub fn polar_membership(&self, v: &[f64], margin: f64) -> bool {
        debug_assert!((vecn::norm(v) - 1.0).abs() < 1e-9);
        match &self.shape {
            Shape::Circular { half_angle } => {
                let neg_axis = vecn::scaled(&self.axis, -1.0);
                vecn::angle_between_units(v, &neg_axis)
                    < std::f64::consts::FRAC_PI_2 - half_angle - margin
            }
            Shape::Sector {
                ray_lo, ray_hi, ..
            } => {
                let eps = margin.sin();
                vecn::dot(v, ray_lo) < -eps && vecn::dot(v, ray_hi) < -eps
            }
            Shape::Polytope3 { generators, .. } => {
                let eps = margin.sin();
                generators.iter().all(|g| vecn::dot(v, g) < -eps)
            }
        }
    }

    /// True iff the unit vector `u` lies strictly inside `Ω_C` with the
    /// given angular margin.
    pub fn interior_direction(&self, u: &[f64], margin: f64) -> bool {
        match &self.shape {
            Shape::Circular { half_angle } => {
                vecn::angle_between_units(u, &self.axis) < half_angle - margin
            }
            Shape::Sector {
                normal_lo,
                normal_hi,
                ..
            } => {
                let eps = margin.sin();
                vecn::dot(u, normal_lo) < -eps && vecn::dot(u, normal_hi) < -eps
            }
            Shape::Polytope3 { normals, .. } => {
                let eps = margin.sin();
                normals.iter().all(|w| vecn::dot(u, w) < -eps)
            }
        }
    }

    /// Closed-cone membership for arbitrary points (used by the Monte
    /// Carlo oracle).
    pub fn contains(&self, x: &[f64]) -> bool {
        let r = vecn::norm(x);
        if r == 0.0 {
            return true;
        }
        match &self.shape {
            Shape::Circular { half_angle } => vecn::dot(x, &self.axis) >= r * half_angle.cos(),
            Shape::Sector {
                normal_lo,
                normal_hi,
                ..
            } => vecn::dot(x, normal_lo) <= 0.0 && vecn::dot(x, normal_hi) <= 0.0,
            Shape::Polytope3 { normals, .. } => normals.iter().all(|w| vecn::dot(x, w) <= 0.0),
        }
    }

    /// Feasibility radius at the default constraint level `β/2`.
    pub fn lambda_bound(&self) -> f64 {
        self.lambda_bound_at(self.beta / 2.0)
            .expect("level β/2 is always strictly below β")
    }

    /// Radius Λ with `γ_n(Λ Bⁿ ∩ C) = level`. Errors with `Unbounded`
    /// when `level >= β` (the ball never captures that much cone mass).
    pub fn lambda_bound_at(&self, level: f64) -> Result<f64> {
        if level <= 0.0 {
            return Err(GmcError::InvalidConfig(format!(
                "constraint level must be positive, got {level}"
            )));
        }
        if level >= self.beta {
            return Err(GmcError::Unbounded {
                level,
                beta: self.beta,
            });
        }
        // γ_n(r Bⁿ ∩ C) = β · P(n/2, r²/2); monotone bisection on r
        let target = level / self.beta;
        let mut hi = 1.0;
        let mut grow = 0;
        while radial_mass_fraction(self.dim, hi) < target {
            hi *= 2.0;
            grow += 1;
            if grow > 60 {
                return Err(GmcError::NoConvergence(
                    "upper bracket for the feasibility radius not found".into(),
                ));
            }
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if radial_mass_fraction(self.dim, mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-14 * hi.max(1.0) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// The planar sector as `(start_angle, end_angle)` in absolute
    /// coordinates, counter-clockwise. Only for dimension 2.
    pub fn sector_2d(&self) -> Result<(f64, f64)> {
        match &self.shape {
            Shape::Circular { half_angle } if self.dim == 2 => {
                let a = self.axis[1].atan2(self.axis[0]);
                Ok((a - half_angle, a + half_angle))
            }
            Shape::Sector {
                angle_lo, angle_hi, ..
            } => Ok((*angle_lo, *angle_hi)),
            _ => Err(GmcError::DimensionUnsupported {
                required: 2,
                actual: self.dim,
            }),
        }
    }

    /// Outward unit normals of the two boundary rays of a planar cone.
    pub fn boundary_normals_2d(&self) -> Result<[Vec<f64>; 2]> {
        match &self.shape {
            Shape::Circular { half_angle } if self.dim == 2 => {
                let a = self.axis[1].atan2(self.axis[0]);
                let ray = |ang: f64| vec![ang.cos(), ang.sin()];
                let hi = ray(a + half_angle);
                let lo = ray(a - half_angle);
                Ok([
                    vecn::scaled(&vecn::rot90ccw(&lo), -1.0),
                    vecn::rot90ccw(&hi).to_vec(),
                ])
            }
            Shape::Sector {
                normal_lo,
                normal_hi,
                ..
            } => Ok([normal_lo.clone(), normal_hi.clone()]),
            _ => Err(GmcError::DimensionUnsupported {
                required: 2,
                actual: self.dim,
            }),
        }
    }

    /// Extreme unit rays of a 3-dimensional polyhedral cone in cyclic
    /// order, or an error for other cones.
    pub fn extreme_rays_3d(&self) -> Result<&[Vec<f64>]> {
        match &self.shape {
            Shape::Polytope3 { vertices, .. } => Ok(vertices),
            _ => Err(GmcError::Unsupported(
                "extreme rays are only stored for 3-dimensional polyhedral cones".into(),
            )),
        }
    }

    /// Half-angle of a circular cone, if this cone is circular.
    pub fn half_angle(&self) -> Option<f64> {
        match &self.shape {
            Shape::Circular { half_angle } => Some(*half_angle),
            _ => None,
        }
    }

    pub fn is_polyhedral(&self) -> bool {
        !matches!(self.shape, Shape::Circular { .. })
    }

    /// Largest angle from the axis to a point of `Ω̄_C`; bounds the
    /// rejection cap for Monte Carlo grids.
    pub fn angular_radius(&self) -> f64 {
        match &self.shape {
            Shape::Circular { half_angle } => *half_angle,
            Shape::Sector {
                angle_lo, angle_hi, ..
            } => {
                let a = self.axis[1].atan2(self.axis[0]);
                (angle_hi - a).abs().max((a - angle_lo).abs())
            }
            Shape::Polytope3 { vertices, .. } => vertices
                .iter()
                .map(|v| vecn::angle_between_units(v, &self.axis))
                .fold(0.0, f64::max),
        }
    }
}

/// Orthonormal basis of the plane orthogonal to the unit vector `axis`
/// in ℝ³, right-handed: `b1 × b2 = axis`.
pub(crate) fn orthonormal_complement3(axis: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let seed = if axis[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let t = vecn::dot(&seed, axis);
    let raw: Vec<f64> = seed.iter().zip(axis).map(|(s, a)| s - t * a).collect();
    let b1 = vecn::normalized(&raw);
    let b2 = vecn::cross3(axis, &b1).to_vec();
    (b1, b2)
}

/// Orthonormal basis of the hyperplane orthogonal to `axis` in ℝⁿ.
pub(crate) fn orthonormal_complement(axis: &[f64]) -> Vec<Vec<f64>> {
    let n = axis.len();
    let mut basis: Vec<Vec<f64>> = vec![axis.to_vec()];
    for i in 0..n {
        if basis.len() == n {
            break;
        }
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        for b in &basis {
            let t = vecn::dot(&e, b);
            for (x, y) in e.iter_mut().zip(b) {
                *x -= t * y;
            }
        }
        if vecn::norm(&e) > 1e-8 {
            basis.push(vecn::normalized(&e));
        }
    }
    basis.remove(0);
    basis
}

/// Solid angle of the spherical triangle with unit vertices a, b, c
/// (Van Oosterom–Strackee).
pub(crate) fn triangle_solid_angle(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let triple = vecn::dot(a, &vecn::cross3(b, c));
    let denom = 1.0 + vecn::dot(a, b) + vecn::dot(b, c) + vecn::dot(c, a);
    2.0 * triple.abs().atan2(denom)
}

/// Solid angle of a geodesically convex spherical polygon, fanned from an
/// interior point.
fn polygon_solid_angle(center: &[f64], vertices: &[Vec<f64>]) -> f64 {
    let k = vertices.len();
    let mut total = 0.0;
    for i in 0..k {
        total += triangle_solid_angle(center, &vertices[i], &vertices[(i + 1) % k]);
    }
    total
}

/// Andrew's monotone chain; returns indices of hull vertices in
/// counter-clockwise order.
fn convex_hull_2d(pts: &[[f64; 2]]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| {
        pts[i]
            .partial_cmp(&pts[j])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    idx.dedup_by(|&mut i, &mut j| {
        (pts[i][0] - pts[j][0]).abs() < 1e-12 && (pts[i][1] - pts[j][1]).abs() < 1e-12
    });
    let cross = |o: usize, a: usize, b: usize| {
        (pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1])
            - (pts[a][1] - pts[o][1]) * (pts[b][0] - pts[o][0])
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], i) <= 1e-14
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], i) <= 1e-14
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    fn quarter_plane_circular() -> Cone {
        Cone::circular(2, &[1.0, 1.0], FRAC_PI_4).unwrap()
    }

    fn quarter_plane_polyhedral() -> Cone {
        Cone::polyhedral(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    fn octant() -> Cone {
        Cone::polyhedral(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap()
    }

    #[test]
    fn circular_quarter_plane_axis() {
        let c = quarter_plane_circular();
        let s = 1.0 / 2.0f64.sqrt();
        assert!((c.axis()[0] - s).abs() < 1e-15 && (c.axis()[1] - s).abs() < 1e-15);
        // same set as the polyhedral quarter-plane: check membership agreement
        let p = quarter_plane_polyhedral();
        for ang in [0.01f64, 0.3, 0.7, 1.2, 1.56] {
            let u = [ang.cos(), ang.sin()];
            assert_eq!(
                c.interior_direction(&u, 0.0),
                p.interior_direction(&u, 0.0),
                "angle {ang}"
            );
        }
    }

    #[test]
    fn polyhedral_axis_is_bisector() {
        let p = quarter_plane_polyhedral();
        let s = 1.0 / 2.0f64.sqrt();
        assert!((p.axis()[0] - s).abs() < 1e-15 && (p.axis()[1] - s).abs() < 1e-15);
    }

    #[test]
    fn opposite_pair_rejected() {
        let e = Cone::polyhedral(&[vec![1.0, 0.0], vec![-1.0, 0.0]]).unwrap_err();
        assert!(matches!(e, GmcError::NotPointed(_)), "{e}");
    }

    #[test]
    fn too_wide_circular_rejected() {
        let e = Cone::circular(2, &[1.0, 0.0], FRAC_PI_2).unwrap_err();
        assert!(matches!(e, GmcError::NotPointed(_)));
    }

    #[test]
    fn degenerate_generators_rejected() {
        let e = Cone::polyhedral(&[vec![1.0, 0.0], vec![1.0, 0.0]]).unwrap_err();
        assert!(matches!(e, GmcError::NotFullDim(_)));
        let e = Cone::polyhedral(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap_err();
        assert!(matches!(e, GmcError::NotFullDim(_)));
    }

    #[test]
    fn polar_membership_examples() {
        let c = quarter_plane_circular();
        let s = 1.0 / 2.0f64.sqrt();
        assert!(c.polar_membership(&[-s, -s], 0.0));
        assert!(!c.polar_membership(&[0.0, -1.0], 0.0)); // polar boundary
        let p = quarter_plane_polyhedral();
        assert!(p.polar_membership(&[-s, -s], 0.0));
        assert!(!p.polar_membership(&[0.0, -1.0], 0.0));

        // circular n=3, θ=π/3: direction 0.3 rad off -axis is interior
        // since 0.3 < π/2 - π/3
        let c3 = Cone::circular(3, &[0.0, 0.0, 1.0], FRAC_PI_3).unwrap();
        let v = [0.3f64.sin(), 0.0, -(0.3f64.cos())];
        assert!(c3.polar_membership(&v, 0.0));
        let v = [0.6f64.sin(), 0.0, -(0.6f64.cos())];
        assert!(!c3.polar_membership(&v, 0.0)); // 0.6 > π/6
    }

    #[test]
    fn gaussian_mass_anchors() {
        assert!((quarter_plane_circular().gaussian_mass() - 0.25).abs() < 1e-12);
        assert!((quarter_plane_polyhedral().gaussian_mass() - 0.25).abs() < 1e-12);
        let c3 = Cone::circular(3, &[0.0, 0.0, 1.0], FRAC_PI_3).unwrap();
        assert!((c3.gaussian_mass() - 0.25).abs() < 1e-12);
        assert!((octant().gaussian_mass() - 0.125).abs() < 1e-12);
    }

    #[test]
    fn octant_redundant_generator_ignored() {
        let c = Cone::polyhedral(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 1.0, 1.0], // interior, not extreme
        ])
        .unwrap();
        assert_eq!(c.extreme_rays_3d().unwrap().len(), 3);
        assert!((c.gaussian_mass() - 0.125).abs() < 1e-12);
    }

    #[test]
    fn lambda_bound_quarter_plane() {
        let l = quarter_plane_circular().lambda_bound();
        assert!((l - (2.0 * 2.0f64.ln()).sqrt()).abs() < 1e-9, "{l}");
    }

    #[test]
    fn lambda_bound_cap3_against_monte_carlo() {
        use rand::{Rng, SeedableRng};
        // Λ for the θ=π/3 cap in ℝ³, checked against a truncated-Gaussian
        // sample: conditioned on landing in the cone, half the draws must
        // fall inside radius Λ
        let c = Cone::circular(3, &[0.0, 0.0, 1.0], FRAC_PI_3).unwrap();
        let lambda = c.lambda_bound();
        assert!((lambda - 1.5381722544550523).abs() < 1e-9, "{lambda}");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(314159);
        let mut in_cone = 0usize;
        let mut in_ball = 0usize;
        for _ in 0..1_000_000 {
            let x: [f64; 3] = [
                rng.sample(rand_distr::StandardNormal),
                rng.sample(rand_distr::StandardNormal),
                rng.sample(rand_distr::StandardNormal),
            ];
            if !c.contains(&x) {
                continue;
            }
            in_cone += 1;
            if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt() <= lambda {
                in_ball += 1;
            }
        }
        let p = in_ball as f64 / in_cone as f64;
        let se = (0.25 / in_cone as f64).sqrt();
        assert!((p - 0.5).abs() < 3.0 * se, "p = {p}, se = {se}");
    }

    #[test]
    fn lambda_bound_monotone_in_level() {
        let c = quarter_plane_circular();
        let beta = c.gaussian_mass();
        let full = c.lambda_bound_at(beta / 2.0).unwrap();
        let half = c.lambda_bound_at(beta / 4.0).unwrap();
        let eighth = c.lambda_bound_at(beta / 8.0).unwrap();
        assert!(eighth < half && half < full);
    }

    #[test]
    fn lambda_bound_full_mass_is_unbounded() {
        let c = octant();
        let e = c.lambda_bound_at(c.gaussian_mass()).unwrap_err();
        assert!(matches!(e, GmcError::Unbounded { .. }));
    }

    #[test]
    fn axis_separates_generators() {
        for cone in [quarter_plane_polyhedral(), octant()] {
            // interior axis: strictly positive inner product with extreme rays
            match cone.dim() {
                2 => assert!(cone.interior_direction(cone.axis(), 0.0)),
                3 => {
                    for v in cone.extreme_rays_3d().unwrap() {
                        assert!(vecn::dot(cone.axis(), v) > 0.0);
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn contains_closed_cone() {
        let c = octant();
        assert!(c.contains(&[1.0, 2.0, 3.0]));
        assert!(c.contains(&[0.0, 0.0, 1.0])); // boundary
        assert!(!c.contains(&[-0.1, 1.0, 1.0]));
    }
}
