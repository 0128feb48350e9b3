//! Numerical machinery for Minkowski-type problems on pointed convex cones
//! in Gaussian probability space.
//!
//! The library works with unbounded convex sets of the form
//! `[f] = C ∩ ⋂_j { x : <x, v_j> <= -f_j }` (Wulff shapes of a positive
//! support vector `f` over finitely many directions `v_j` interior to the
//! polar cone `C°`). For such a shape it computes
//!
//! - the Gaussian co-volume `γ̄(E) = γ_n(C \ E)`,
//! - the Gaussian surface area measure, by two independent routes
//!   (push-forward quadrature over the cone's direction sphere, and exact
//!   facet integration in the plane),
//! - and the solution of the inverse problem: given atom weights `μ_j`,
//!   find `f` maximizing `Σ f_j μ_j − (1/α) γ̄([f])^α` subject to the
//!   small-co-volume constraint `γ̄([f]) <= β/2`, whose stationarity
//!   condition is `γ̄^{α−1} S_j = μ_j` (or its KKT analogue on the
//!   constraint boundary).
//!
//! Module map:
//!
//! - [`cone`]: pointed cones (circular in any dimension, polyhedral in 2/3),
//!   polar membership, Gaussian mass `β`, the feasibility radius `Λ`.
//! - [`grid`]: quadrature grids over `Ω_C = int C ∩ S^{n−1}`.
//! - [`wulff`]: discrete measures, Wulff shapes, radial function, distance
//!   from the origin.
//! - [`gaussian`]: co-volume, surface measure (both routes), slab tail
//!   series, Monte Carlo oracle.
//! - [`solver`]: projected gradient ascent with KKT reporting.
//! - [`exhaustion`]: staged solves over nested direction subsets.
//! - [`problem`], [`report`], [`cli`]: problem files, report emission, and
//!   the `gmc` command-line front end.
//!
//! See the crate examples for one runnable program per capability.

pub mod cli;
pub mod cone;
pub mod error;
pub mod exhaustion;
pub mod gaussian;
pub mod grid;
pub mod problem;
pub mod report;
pub mod solver;
pub mod special;
pub mod wulff;

mod vecn;

pub use cone::{Cone, ConeSpec};
pub use error::GmcError;
pub use exhaustion::{solve_exhaustive, ExhaustionPlan, ExhaustionSummary, StageOutcome};
pub use gaussian::{
    covolume, mc_covolume_oracle, surface_measure_facet, surface_measure_pushforward, tail_series,
    McEstimate, MeasureRoute, MeasureVector,
};
pub use grid::{build_grid, GridResolution, GridScheme, SphericalGrid};
pub use solver::{
    eval_objective, gradient, initialization_probe, solve, SolveReport, SolverConfig, Termination,
};
pub use wulff::{DiscreteMeasure, WulffShape};
