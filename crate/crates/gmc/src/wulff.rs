//! Discrete direction measures and the polyhedral shapes they determine.
//!
//! A [`DiscreteMeasure`] is a finite list of unit directions strictly
//! inside the polar cone, each with a positive weight. A [`WulffShape`]
//! pairs those directions with a positive support vector `f` and stands
//! for the set `C ∩ ⋂_j { x : <x, v_j> <= -f_j }`. Its radial function has
//! the closed form `ρ(u) = max_j f_j / <u, -v_j>`, every denominator
//! being positive because the directions are interior to `C°`.

use std::sync::Arc;

use crate::cone::Cone;
use crate::error::{GmcError, Result};
use crate::grid::SphericalGrid;
use crate::vecn;

/// Default angular margin certifying strict interiority of directions.
pub const DEFAULT_DIRECTION_MARGIN: f64 = 1e-9;

/// Minimal pairwise angle between measure directions.
pub const DUPLICATE_ANGLE: f64 = 1e-7;

/// Finite atomic measure on directions interior to the polar cone.
#[derive(Debug, Clone)]
pub struct DiscreteMeasure {
    cone: Arc<Cone>,
    directions: Vec<f64>, // flat, stride = dim
    weights: Vec<f64>,
}

impl DiscreteMeasure {
    /// Validates directions (normalized, strictly inside `int C°` with the
    /// given margin, pairwise distinct) and weights (strictly positive).
    pub fn new(
        cone: Arc<Cone>,
        atoms: &[(Vec<f64>, f64)],
        margin: f64,
    ) -> Result<DiscreteMeasure> {
        if atoms.is_empty() {
            return Err(GmcError::InvalidMeasure("measure has no atoms".into()));
        }
        let dim = cone.dim();
        let mut directions = Vec::with_capacity(atoms.len() * dim);
        let mut weights = Vec::with_capacity(atoms.len());
        for (i, (v, w)) in atoms.iter().enumerate() {
            if v.len() != dim {
                return Err(GmcError::InvalidMeasure(format!(
                    "atom {i}: direction has {} components, cone has dimension {dim}",
                    v.len()
                )));
            }
            if vecn::norm(v) < 1e-12 {
                return Err(GmcError::InvalidMeasure(format!(
                    "atom {i}: direction is the zero vector"
                )));
            }
            let unit = vecn::normalized(v);
            if !cone.polar_membership(&unit, margin) {
                return Err(GmcError::InvalidMeasure(format!(
                    "atom {i}: direction is not strictly inside the polar cone interior \
                     (margin {margin:e} rad)"
                )));
            }
            if w.is_nan() || *w <= 0.0 {
                return Err(GmcError::InvalidMeasure(format!(
                    "atom {i}: weight {w} is not strictly positive"
                )));
            }
            directions.extend_from_slice(&unit);
            weights.push(*w);
        }
        let m = weights.len();
        for i in 0..m {
            for j in (i + 1)..m {
                let a = &directions[i * dim..(i + 1) * dim];
                let b = &directions[j * dim..(j + 1) * dim];
                if vecn::angle_between_units(a, b) <= DUPLICATE_ANGLE {
                    return Err(GmcError::InvalidMeasure(format!(
                        "atoms {i} and {j} share a direction (angle below {DUPLICATE_ANGLE:e} rad)"
                    )));
                }
            }
        }
        Ok(DiscreteMeasure {
            cone,
            directions,
            weights,
        })
    }

    pub fn cone(&self) -> &Arc<Cone> {
        &self.cone
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn direction(&self, j: usize) -> &[f64] {
        let dim = self.dim();
        &self.directions[j * dim..(j + 1) * dim]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Same directions, new weights (used by the inverse-problem tests and
    /// the exhaustion driver).
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<DiscreteMeasure> {
        if weights.len() != self.len() {
            return Err(GmcError::InvalidMeasure(format!(
                "expected {} weights, got {}",
                self.len(),
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| w.is_nan() || *w <= 0.0) {
            return Err(GmcError::InvalidMeasure(format!(
                "atom {i}: weight {} is not strictly positive",
                weights[i]
            )));
        }
        Ok(DiscreteMeasure {
            cone: Arc::clone(&self.cone),
            directions: self.directions.clone(),
            weights,
        })
    }

    /// Restriction to a subset of atoms, keeping their order.
    pub fn restrict(&self, indices: &[usize]) -> Result<DiscreteMeasure> {
        if indices.is_empty() {
            return Err(GmcError::EmptySubset);
        }
        let dim = self.dim();
        let mut directions = Vec::with_capacity(indices.len() * dim);
        let mut weights = Vec::with_capacity(indices.len());
        for &j in indices {
            if j >= self.len() {
                return Err(GmcError::InvalidMeasure(format!(
                    "index {j} out of range for {} atoms",
                    self.len()
                )));
            }
            directions.extend_from_slice(self.direction(j));
            weights.push(self.weights[j]);
        }
        Ok(DiscreteMeasure {
            cone: Arc::clone(&self.cone),
            directions,
            weights,
        })
    }
}

/// Polyhedral pseudo-cone determined by a support vector over measure
/// directions.
#[derive(Debug, Clone)]
pub struct WulffShape {
    measure: Arc<DiscreteMeasure>,
    support: Vec<f64>,
}

impl WulffShape {
    pub fn new(measure: Arc<DiscreteMeasure>, support: Vec<f64>) -> Result<WulffShape> {
        if support.len() != measure.len() {
            return Err(GmcError::InvalidMeasure(format!(
                "support vector has {} entries for {} directions",
                support.len(),
                measure.len()
            )));
        }
        if let Some(i) = support.iter().position(|f| f.is_nan() || *f <= 0.0) {
            return Err(GmcError::InvalidMeasure(format!(
                "support component {i} is {}, must be strictly positive",
                support[i]
            )));
        }
        Ok(WulffShape { measure, support })
    }

    pub fn measure(&self) -> &Arc<DiscreteMeasure> {
        &self.measure
    }

    pub fn cone(&self) -> &Arc<Cone> {
        self.measure.cone()
    }

    pub fn dim(&self) -> usize {
        self.measure.dim()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    /// Shape with support `c·f`; by homogeneity this scales the set.
    pub fn scaled(&self, c: f64) -> Result<WulffShape> {
        WulffShape::new(
            Arc::clone(&self.measure),
            self.support.iter().map(|f| c * f).collect(),
        )
    }

    /// Same directions, different support vector.
    pub fn with_support(&self, support: Vec<f64>) -> Result<WulffShape> {
        WulffShape::new(Arc::clone(&self.measure), support)
    }

    /// Radial function and the index of the touching constraint (the
    /// radial Gauss map). Ties resolve to the lowest index. Fails only
    /// when some denominator `<u, -v_j>` is not positive, which certifies
    /// that `u` left the closure of `Ω_C`-compatible directions.
    pub(crate) fn radial_core(&self, u: &[f64]) -> Result<(f64, usize)> {
        let dim = self.dim();
        let dirs = &self.measure.directions;
        let mut best = f64::NEG_INFINITY;
        let mut arg = 0usize;
        for (j, f) in self.support.iter().enumerate() {
            let mut denom = 0.0;
            for d in 0..dim {
                denom -= u[d] * dirs[j * dim + d];
            }
            if denom <= 0.0 {
                return Err(GmcError::DirectionOutsideCone);
            }
            let rho = f / denom;
            if rho > best {
                best = rho;
                arg = j;
            }
        }
        Ok((best, arg))
    }

    /// Radial function `ρ(u)` at a unit direction strictly inside `Ω_C`,
    /// together with the touching constraint index.
    pub fn radial(&self, u: &[f64]) -> Result<(f64, usize)> {
        if u.len() != self.dim() || !self.cone().interior_direction(u, 0.0) {
            return Err(GmcError::DirectionOutsideCone);
        }
        self.radial_core(u)
    }

    /// Distance from the origin, estimated as the minimum of the radial
    /// function over the grid nodes (accuracy follows the grid spacing).
    pub fn min_distance(&self, grid: &SphericalGrid) -> Result<f64> {
        let mut best = f64::INFINITY;
        for k in 0..grid.len() {
            let (rho, _) = self.radial_core(grid.node(k))?;
            if rho < best {
                best = rho;
            }
        }
        Ok(best)
    }

    /// Wulff shape over a sub-support; dropping constraints can only
    /// enlarge the set, so the radial function never increases.
    pub fn restrict(&self, indices: &[usize]) -> Result<WulffShape> {
        let measure = Arc::new(self.measure.restrict(indices)?);
        let support = indices.iter().map(|&j| self.support[j]).collect();
        WulffShape::new(measure, support)
    }
}
