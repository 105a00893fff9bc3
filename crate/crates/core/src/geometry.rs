//! Planar kernel: principal branch calculus, the alpha-root map, disks, arcs,
//! segment distances and winding numbers.
//!
//! The branch cut of `log`, `arg` and the alpha-root is the closed ray
//! `(-inf, 0]`. Points within `branch_tolerance(z)` of the cut are rejected,
//! never snapped onto one side.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

pub type Complex = num_complex::Complex64;

pub const I: Complex = Complex::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

#[inline]
pub fn cis(theta: f64) -> Complex {
    Complex::new(theta.cos(), theta.sin())
}

pub fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `1e-12 * max(1, |z|)`.
#[inline]
pub fn branch_tolerance(z: Complex) -> f64 {
    1e-12 * z.norm().max(1.0)
}

/// True when `z` is within tolerance of the closed ray `(-inf, 0]`.
fn on_closed_cut(z: Complex) -> bool {
    z.re <= 0.0 && z.im.abs() <= branch_tolerance(z)
}

/// True when `z` is within tolerance of the open ray `(-inf, 0)`.
fn on_open_cut(z: Complex) -> bool {
    z.re < 0.0 && z.im.abs() <= branch_tolerance(z)
}

fn check_finite(z: Complex) -> Result<()> {
    if is_finite(z) {
        Ok(())
    } else {
        Err(Error::DomainViolation {
            what: "finite plane".into(),
            point: z,
        })
    }
}

/// Principal logarithm on `C \ (-inf, 0]`, imaginary part in `(-pi, pi)`.
pub fn principal_log(z: Complex) -> Result<Complex> {
    check_finite(z)?;
    if on_closed_cut(z) {
        return Err(Error::BranchCutViolation(z));
    }
    Ok(Complex::new(z.norm().ln(), z.im.atan2(z.re)))
}

/// Principal argument, `Im(log z)`.
pub fn arg(z: Complex) -> Result<f64> {
    check_finite(z)?;
    if on_closed_cut(z) {
        return Err(Error::BranchCutViolation(z));
    }
    Ok(z.im.atan2(z.re))
}

/// `exp(alpha * log z)`, extended by `0 -> 0`.
pub fn root_alpha(alpha: f64, z: Complex) -> Result<Complex> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::ParameterOutOfRange(format!("alpha = {alpha}")));
    }
    check_finite(z)?;
    if z == Complex::new(0.0, 0.0) {
        return Ok(z);
    }
    if on_open_cut(z) {
        return Err(Error::BranchCutViolation(z));
    }
    let t = z.im.atan2(z.re);
    Ok(Complex::from_polar(z.norm().powf(alpha), alpha * t))
}

/// Inverse of [`root_alpha`] on `{0} U C_alpha`.
pub fn root_alpha_inv(alpha: f64, z: Complex) -> Result<Complex> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::ParameterOutOfRange(format!("alpha = {alpha}")));
    }
    check_finite(z)?;
    if z == Complex::new(0.0, 0.0) {
        return Ok(z);
    }
    let cone = Cone::new(alpha.min(1.0))?;
    if alpha > 1.0 || !cone.contains(z) {
        return Err(Error::DomainViolation {
            what: format!("inverse root (alpha = {alpha})"),
            point: z,
        });
    }
    let t = z.im.atan2(z.re);
    Ok(Complex::from_polar(z.norm().powf(1.0 / alpha), t / alpha))
}

/// Open cone `{w : |arg w| < alpha * pi}`; `C_1` is the cut plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cone {
    alpha: f64,
}

impl Cone {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 1.0 {
            Ok(Cone { alpha })
        } else {
            Err(Error::ParameterOutOfRange(format!("cone alpha = {alpha}")))
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn contains(&self, z: Complex) -> bool {
        if z.norm() == 0.0 || on_closed_cut(z) {
            return false;
        }
        z.im.atan2(z.re).abs() < self.alpha * PI
    }
}

/// The alpha-root map as a value, with its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootMap {
    pub alpha: f64,
}

impl RootMap {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha.is_finite() {
            Ok(RootMap { alpha })
        } else {
            Err(Error::ParameterOutOfRange(format!("alpha = {alpha}")))
        }
    }

    pub fn apply(&self, z: Complex) -> Result<Complex> {
        root_alpha(self.alpha, z)
    }

    pub fn invert(&self, z: Complex) -> Result<Complex> {
        root_alpha_inv(self.alpha, z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Complex,
    pub radius: f64,
    pub closed: bool,
}

impl Disk {
    pub fn open(center: Complex, radius: f64) -> Self {
        debug_assert!(radius > 0.0);
        Disk {
            center,
            radius,
            closed: false,
        }
    }

    pub fn closed(center: Complex, radius: f64) -> Self {
        debug_assert!(radius > 0.0);
        Disk {
            center,
            radius,
            closed: true,
        }
    }

    pub fn contains(&self, z: Complex) -> bool {
        let d = (z - self.center).norm();
        if self.closed {
            d <= self.radius
        } else {
            d < self.radius
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Ccw,
    Cw,
}

/// Arc of the circle `C(center; radius)` swept from `start_angle` to
/// `end_angle`. The sign of the sweep matches the orientation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleArc {
    pub center: Complex,
    pub radius: f64,
    pub start_angle: f64,
    pub end_angle: f64,
    pub orientation: Orientation,
}

impl CircleArc {
    pub fn new(center: Complex, radius: f64, start_angle: f64, end_angle: f64) -> Result<Self> {
        if !(radius > 0.0) || (end_angle - start_angle).abs() > TAU + 1e-12 {
            return Err(Error::ParameterOutOfRange(format!(
                "arc radius {radius}, sweep {}",
                end_angle - start_angle
            )));
        }
        let orientation = if end_angle >= start_angle {
            Orientation::Ccw
        } else {
            Orientation::Cw
        };
        Ok(CircleArc {
            center,
            radius,
            start_angle,
            end_angle,
            orientation,
        })
    }

    /// Counterclockwise arc from `start` to `end`, both on the circle.
    pub fn ccw_between(center: Complex, radius: f64, start: Complex, end: Complex) -> Self {
        let a0 = (start - center).arg();
        let mut a1 = (end - center).arg();
        while a1 <= a0 {
            a1 += TAU;
        }
        while a1 - a0 > TAU {
            a1 -= TAU;
        }
        CircleArc {
            center,
            radius,
            start_angle: a0,
            end_angle: a1,
            orientation: Orientation::Ccw,
        }
    }

    /// The arc through three distinct non-collinear points, from `a` via `m` to `b`.
    pub fn through(a: Complex, m: Complex, b: Complex) -> Result<Self> {
        let center = circumcenter(a, m, b).ok_or(Error::CoincidentPoints)?;
        let radius = (a - center).norm();
        let ta = (a - center).arg();
        let sweep_to = |z: Complex| -> f64 {
            let mut t = (z - center).arg() - ta;
            while t < 0.0 {
                t += TAU;
            }
            t
        };
        let tm = sweep_to(m);
        let tb = sweep_to(b);
        let sweep = if tm < tb { tb } else { tb - TAU };
        CircleArc::new(center, radius, ta, ta + sweep)
    }

    pub fn sweep(&self) -> f64 {
        self.end_angle - self.start_angle
    }

    pub fn length(&self) -> f64 {
        self.radius * self.sweep().abs()
    }

    /// Point at fraction `t` in `[0, 1]` of the sweep.
    pub fn point_at(&self, t: f64) -> Complex {
        self.center + Complex::from_polar(self.radius, self.start_angle + t * self.sweep())
    }

    pub fn start(&self) -> Complex {
        self.point_at(0.0)
    }

    pub fn end(&self) -> Complex {
        self.point_at(1.0)
    }

    pub fn midpoint(&self) -> Complex {
        self.point_at(0.5)
    }

    /// Fraction of the sweep at which `z` (assumed on the circle) lies, if on the arc.
    pub fn fraction_of(&self, z: Complex) -> Option<f64> {
        let s = self.sweep();
        let mut t = (z - self.center).arg() - self.start_angle;
        if s >= 0.0 {
            while t < -1e-12 {
                t += TAU;
            }
            while t > s + 1e-12 && t - TAU >= -1e-12 {
                t -= TAU;
            }
        } else {
            while t > 1e-12 {
                t -= TAU;
            }
            while t < s - 1e-12 && t + TAU <= 1e-12 {
                t += TAU;
            }
        }
        let frac = if s == 0.0 { 0.0 } else { t / s };
        if (-1e-9..=1.0 + 1e-9).contains(&frac) {
            Some(frac.clamp(0.0, 1.0))
        } else {
            None
        }
    }

    /// Split at fraction `t` into two arcs sharing the split point.
    pub fn split(&self, t: f64) -> (CircleArc, CircleArc) {
        let mid = self.start_angle + t * self.sweep();
        let mut first = *self;
        let mut second = *self;
        first.end_angle = mid;
        second.start_angle = mid;
        (first, second)
    }

    /// Distance from `p` to the arc.
    pub fn distance(&self, p: Complex) -> f64 {
        let v = p - self.center;
        if v.norm() > 0.0 {
            let on_circle = self.center + v * (self.radius / v.norm());
            if self.fraction_of(on_circle).is_some() {
                return (v.norm() - self.radius).abs();
            }
        }
        (p - self.start()).norm().min((p - self.end()).norm())
    }

    /// Same arc traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        CircleArc {
            center: self.center,
            radius: self.radius,
            start_angle: self.end_angle,
            end_angle: self.start_angle,
            orientation: match self.orientation {
                Orientation::Ccw => Orientation::Cw,
                Orientation::Cw => Orientation::Ccw,
            },
        }
    }
}

pub fn circumcenter(a: Complex, b: Complex, c: Complex) -> Option<Complex> {
    let d = 2.0 * (a.re * (b.im - c.im) + b.re * (c.im - a.im) + c.re * (a.im - b.im));
    let scale = (a - b).norm().max((b - c).norm()).max((a - c).norm());
    if d.abs() <= 1e-14 * scale * scale {
        return None;
    }
    let a2 = a.norm_sqr();
    let b2 = b.norm_sqr();
    let c2 = c.norm_sqr();
    let ux = (a2 * (b.im - c.im) + b2 * (c.im - a.im) + c2 * (a.im - b.im)) / d;
    let uy = (a2 * (c.re - b.re) + b2 * (a.re - c.re) + c2 * (b.re - a.re)) / d;
    Some(Complex::new(ux, uy))
}

/// Distance from `p` to segment `[a, b]` and the nearest point on it.
pub fn point_segment(p: Complex, a: Complex, b: Complex) -> (f64, Complex) {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return ((p - a).norm(), a);
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    let q = a + ab * t;
    ((p - q).norm(), q)
}

pub fn cross(u: Complex, v: Complex) -> f64 {
    u.re * v.im - u.im * v.re
}

/// Proper or touching intersection of closed segments `[a, b]` and `[c, d]`.
pub fn segments_intersect(a: Complex, b: Complex, c: Complex, d: Complex) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |p: Complex, q: Complex, r: Complex| point_segment(r, p, q).0 == 0.0;
    on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b)
}

pub fn segment_segment_distance(a: Complex, b: Complex, c: Complex, d: Complex) -> f64 {
    if segments_intersect(a, b, c, d) {
        return 0.0;
    }
    point_segment(a, c, d)
        .0
        .min(point_segment(b, c, d).0)
        .min(point_segment(c, a, b).0)
        .min(point_segment(d, a, b).0)
}

/// The intersection points of two circles, if they cross in two points.
pub fn circle_intersections(c1: Complex, r1: f64, c2: Complex, r2: f64) -> Option<(Complex, Complex)> {
    let d = (c2 - c1).norm();
    if d == 0.0 || d >= r1 + r2 || d <= (r1 - r2).abs() {
        return None;
    }
    let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let h2 = r1 * r1 - a * a;
    if h2 <= 0.0 {
        return None;
    }
    let h = h2.sqrt();
    let u = (c2 - c1) / d;
    let base = c1 + u * a;
    let perp = u * I;
    Some((base + perp * h, base - perp * h))
}

/// Signed area enclosed by a closed polyline (positive when CCW).
pub fn signed_area(points: &[Complex]) -> f64 {
    let n = points.len();
    let mut s = 0.0;
    for k in 0..n {
        s += cross(points[k], points[(k + 1) % n]);
    }
    0.5 * s
}

/// Winding number of the closed polyline through `points` about `p`, from
/// summed principal angle increments. Fails if `p` is on the polyline or the
/// accumulated angle is further than 0.1 from an integer multiple of 2 pi.
pub fn winding_number(points: &[Complex], p: Complex) -> Result<i64> {
    let n = points.len();
    if n < 2 {
        return Err(Error::Precondition("winding number needs a closed curve".into()));
    }
    let tol = 1e-12 * p.norm().max(1.0);
    let mut total = 0.0;
    for k in 0..n {
        let a = points[k];
        let b = points[(k + 1) % n];
        if point_segment(p, a, b).0 <= tol {
            return Err(Error::PointOnCurve(p));
        }
        total += ((b - p) / (a - p)).arg();
    }
    let turns = total / TAU;
    let rounded = turns.round();
    let residue = (turns - rounded).abs();
    if residue > 0.1 {
        return Err(Error::Undersampled(residue));
    }
    Ok(rounded as i64)
}

/// `n` equally spaced points on `C(center; radius)`, counterclockwise unless `cw`.
pub fn circle_points(center: Complex, radius: f64, n: usize, cw: bool) -> Vec<Complex> {
    let sign = if cw { -1.0 } else { 1.0 };
    (0..n)
        .map(|k| center + Complex::from_polar(radius, sign * TAU * k as f64 / n as f64))
        .collect()
}
