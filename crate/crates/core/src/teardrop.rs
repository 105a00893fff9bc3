//! Images of the closed disk `D(1/2; 1/2)` under the root map `z -> z^alpha`.
//!
//! The image `T_alpha` is bounded by the curve
//! `t_alpha = {(cos t)^alpha e^{i alpha t} : |t| < pi/2} ∪ {0}`.

use crate::error::{Error, Result};
use crate::geometry::{point_segment, root_alpha, root_alpha_inv, winding_number, Complex};
use std::f64::consts::{FRAC_PI_2, PI};

/// Number of samples of `t_alpha` used for membership tests.
const CURVE_SAMPLES: usize = 4096;
/// Samples per boundary arc in the collapse oracle.
const ORACLE_SAMPLES: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Teardrop {
    alpha: f64,
}

impl Teardrop {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::ParameterOutOfRange(format!("alpha = {alpha}")));
        }
        Ok(Teardrop { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Closed polyline through `n` samples of `t_alpha`, starting and ending near 0.
    pub fn boundary(&self, n: usize) -> Vec<Complex> {
        let mut pts = Vec::with_capacity(n + 1);
        pts.push(Complex::new(0.0, 0.0));
        for k in 1..n {
            let t = -FRAC_PI_2 + PI * k as f64 / n as f64;
            pts.push(boundary_point_unchecked(self.alpha, t));
        }
        pts
    }

    /// Membership in the closed set `T_alpha`.
    pub fn contains(&self, z: Complex) -> bool {
        let pts = self.boundary(CURVE_SAMPLES);
        let tol = 1e-9;
        let m = pts.len();
        for k in 0..m {
            if point_segment(z, pts[k], pts[(k + 1) % m]).0 <= tol {
                return true;
            }
        }
        matches!(winding_number(&pts, z), Ok(w) if w != 0)
    }
}

fn boundary_point_unchecked(alpha: f64, theta: f64) -> Complex {
    Complex::from_polar(theta.cos().powf(alpha), alpha * theta)
}

/// `(cos theta)^alpha e^{i alpha theta}`, a point of `t_alpha` other than 0.
pub fn teardrop_boundary_point(alpha: f64, theta: f64) -> Result<Complex> {
    if !(alpha > 0.0 && alpha <= 1.0) || !(theta.abs() < FRAC_PI_2) {
        return Err(Error::ParameterOutOfRange(format!("alpha = {alpha}, theta = {theta}")));
    }
    Ok(boundary_point_unchecked(alpha, theta))
}

/// Whether `z` lies in `T_alpha`, decided by the winding number of sampled `t_alpha`.
pub fn teardrop_contains(alpha: f64, z: Complex) -> Result<bool> {
    Ok(Teardrop::new(alpha)?.contains(z))
}

/// Exact membership: `z = 0` or `z^(1/alpha)` lands in the closed disk `D(1/2; 1/2)`.
pub fn teardrop_contains_exact(alpha: f64, z: Complex) -> bool {
    if z == Complex::new(0.0, 0.0) {
        return true;
    }
    match root_alpha_inv(alpha, z) {
        Ok(w) => (w - 0.5).norm() <= 0.5 + 1e-12,
        Err(_) => false,
    }
}

/// Samples of the boundary of `D(1/2; 1/2)` minus the open-or-closed disk `D(0; rho)`:
/// the outer arc `cos t e^{it}` with `cos t >= rho` and the inner arc `rho e^{i phi}`.
pub fn collapse_boundary_samples(rho: f64, n: usize) -> Vec<Complex> {
    let t_max = rho.acos();
    let mut pts = Vec::with_capacity(2 * n);
    for k in 0..n {
        let t = -t_max + 2.0 * t_max * k as f64 / (n - 1) as f64;
        pts.push(Complex::from_polar(t.cos(), t));
    }
    for k in 0..n {
        let phi = -t_max + 2.0 * t_max * k as f64 / (n - 1) as f64;
        pts.push(Complex::from_polar(rho, phi));
    }
    pts
}

/// `max |z^alpha - 1|` over the boundary samples of the annular piece.
pub fn collapse_distance(alpha: f64, rho: f64, n: usize) -> f64 {
    collapse_boundary_samples(rho, n)
        .into_iter()
        .map(|z| (root_alpha(alpha, z).expect("samples lie in the right half plane") - 1.0).norm())
        .fold(0.0, f64::max)
}

/// An exponent `alpha*` such that `z -> z^alpha` maps `D(1/2;1/2) \ D(0;rho)` into
/// `D(1; delta)`, and so does every smaller positive exponent.
///
/// Bisection over `(1e-6, 1 - 1e-6)` for 60 steps, then scaled by 0.9.
pub fn alpha_for_collapse(rho: f64, delta: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::ParameterOutOfRange(format!("rho = {rho}, delta = {delta}")));
    }
    let target = delta * (1.0 - 1e-3);
    let passes = |a: f64| collapse_distance(a, rho, ORACLE_SAMPLES) < target;
    let floor = 1e-6;
    let (mut lo, mut hi) = (floor, 1.0 - 1e-6);
    if !passes(lo) {
        return Err(Error::SearchFailed { rho, delta, floor });
    }
    if passes(hi) {
        return Ok(0.9 * hi);
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if passes(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.9 * lo)
}

/// As [`alpha_for_collapse`], additionally capped so that `|arg w| < theta` on `T_alpha`.
///
/// `t_alpha` lies in the cone `C_{alpha/2}`, so `alpha < 2 theta / pi` suffices.
pub fn alpha_for_angle(rho: f64, delta: f64, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(Error::ParameterOutOfRange(format!("theta = {theta}")));
    }
    let cap = 2.0 * theta / PI;
    let a = alpha_for_collapse(rho, delta)?;
    Ok(a.min(cap * (1.0 - 1e-3)))
}

/// Closed-form exponent for targets below the bisection floor.
///
/// On `D(1/2;1/2) \ D(0;rho)`, `|alpha log z| <= alpha L` with
/// `L = sqrt(log^2 rho + pi^2/4)`, and `|e^w - 1| <= |w| e^|w|`, so
/// `alpha = 0.9 delta / (e L)` maps the piece into `D(1; delta)`.
pub fn alpha_small(rho: f64, delta: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::ParameterOutOfRange(format!("rho = {rho}, delta = {delta}")));
    }
    let l = rho.ln().hypot(FRAC_PI_2);
    Ok(0.9 * delta / (std::f64::consts::E * l))
}
