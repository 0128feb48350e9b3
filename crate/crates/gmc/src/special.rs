//! Radial Gaussian integrals and related special-function wrappers.
//!
//! The recurring quantity is `G_n(r) = ∫_0^r e^{-t²/2} t^{n-1} dt`, the
//! unnormalized radial mass of the standard Gaussian in dimension `n`.
//! Closed forms are used for n = 2, 3; higher dimensions go through the
//! regularized lower incomplete gamma function via `G_n(r) =
//! 2^{n/2-1} Γ(n/2) P(n/2, r²/2)`.

// statrs carries the incomplete gamma/beta machinery at machine
// precision, but its erf is a coarse rational fit (~1e-11); libm's erf
// is sub-ulp, and the facet route leans on it.
use libm::erf;
use statrs::function::beta::beta_reg;
use statrs::function::gamma::{gamma, gamma_lr};

pub const SQRT_2: f64 = std::f64::consts::SQRT_2;
pub const SQRT_PI_OVER_2: f64 = 1.2533141373155003; // sqrt(pi/2)

/// `G_n(r) = ∫_0^r e^{-t²/2} t^{n-1} dt` for r >= 0.
pub fn radial_gaussian_integral(n: usize, r: f64) -> f64 {
    debug_assert!(n >= 2);
    if r <= 0.0 {
        return 0.0;
    }
    match n {
        2 => -(-r * r / 2.0).exp_m1(),
        3 => SQRT_PI_OVER_2 * erf(r / SQRT_2) - r * (-r * r / 2.0).exp(),
        _ => radial_gaussian_total(n) * gamma_lr(n as f64 / 2.0, r * r / 2.0),
    }
}

/// `G_n(∞) = 2^{n/2-1} Γ(n/2)`.
pub fn radial_gaussian_total(n: usize) -> f64 {
    debug_assert!(n >= 2);
    match n {
        2 => 1.0,
        3 => SQRT_PI_OVER_2,
        _ => 2f64.powf(n as f64 / 2.0 - 1.0) * gamma(n as f64 / 2.0),
    }
}

/// Fraction of the radial Gaussian mass inside radius r:
/// `G_n(r)/G_n(∞) = P(n/2, r²/2)`.
pub fn radial_mass_fraction(n: usize, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    gamma_lr(n as f64 / 2.0, r * r / 2.0)
}

/// `∫_{lo}^{hi} e^{-s²/2} ds` via the error function.
pub fn gauss_segment_integral(lo: f64, hi: f64) -> f64 {
    SQRT_PI_OVER_2 * (erf(hi / SQRT_2) - erf(lo / SQRT_2))
}

/// Normalizing constant `(2π)^{-n/2}` of the standard Gaussian density.
pub fn gaussian_norm_const(n: usize) -> f64 {
    (2.0 * std::f64::consts::PI).powf(-(n as f64) / 2.0)
}

/// Surface area of the unit sphere `S^{n-1}` in `ℝ^n`.
pub fn sphere_area(n: usize) -> f64 {
    2.0 * std::f64::consts::PI.powf(n as f64 / 2.0) / gamma(n as f64 / 2.0)
}

/// Area fraction of the spherical cap of polar angle `theta <= π/2` on
/// `S^{n-1}`: `(1/2) I_{sin²θ}((n-1)/2, 1/2)`.
pub fn cap_area_fraction(n: usize, theta: f64) -> f64 {
    debug_assert!((0.0..=std::f64::consts::FRAC_PI_2).contains(&theta));
    match n {
        2 => theta / std::f64::consts::PI,
        3 => (1.0 - theta.cos()) / 2.0,
        _ => {
            let s = theta.sin();
            beta_reg((n as f64 - 1.0) / 2.0, 0.5, s * s) / 2.0
        }
    }
}

/// Standard error function, re-exported for test oracles.
pub fn erf_fn(x: f64) -> f64 {
    erf(x)
}
