//! Linear fractional transformations `z -> (a z + b) / (c z + d)`.
//!
//! Coefficients are stored projectively and rescaled after every operation
//! so that the largest has modulus one.

use crate::error::{Error, Result};
use crate::geometry::{c, cis, Complex, I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moebius {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
}

fn nondegenerate(a: Complex, b: Complex, cc: Complex, d: Complex) -> bool {
    let det = a * d - b * cc;
    det.norm() > 1e-14 * (a.norm() * d.norm() + b.norm() * cc.norm() + 1.0)
}

impl Moebius {
    pub fn new(a: Complex, b: Complex, cc: Complex, d: Complex) -> Result<Self> {
        let scale = a.norm().max(b.norm()).max(cc.norm()).max(d.norm());
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::Degenerate);
        }
        let (a, b, cc, d) = (a / scale, b / scale, cc / scale, d / scale);
        if !nondegenerate(a, b, cc, d) {
            return Err(Error::Degenerate);
        }
        Ok(Moebius { a, b, c: cc, d })
    }

    pub fn identity() -> Self {
        Moebius {
            a: c(1.0, 0.0),
            b: c(0.0, 0.0),
            c: c(0.0, 0.0),
            d: c(1.0, 0.0),
        }
    }

    /// `z -> k z`.
    pub fn scaling(k: Complex) -> Result<Self> {
        Self::new(k, c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0))
    }

    /// `z -> z + t`.
    pub fn translation(t: Complex) -> Self {
        Self::new(c(1.0, 0.0), t, c(0.0, 0.0), c(1.0, 0.0)).expect("translation is invertible")
    }

    /// `z -> 1 / (z - z0)`.
    pub fn inversion_about(z0: Complex) -> Self {
        Self::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), -z0).expect("inversion is invertible")
    }

    pub fn apply(&self, z: Complex) -> Result<Complex> {
        let den = self.c * z + self.d;
        if den.norm() <= 1e-14 * (self.c.norm() * z.norm() + self.d.norm()) {
            return Err(Error::Pole(z));
        }
        Ok((self.a * z + self.b) / den)
    }

    /// Image of the point at infinity, `None` when it is infinity.
    pub fn image_of_infinity(&self) -> Option<Complex> {
        if self.c.norm() <= 1e-300 {
            None
        } else {
            Some(self.a / self.c)
        }
    }

    pub fn inverse(&self) -> Self {
        Moebius::new(self.d, -self.b, -self.c, self.a).expect("inverse of a nondegenerate map")
    }

    /// `self` after `inner`: `z -> self(inner(z))`.
    pub fn after(&self, inner: &Moebius) -> Result<Self> {
        compose(self, inner)
    }

    /// Equality as projective maps within `tol` (relative to the coefficient scale).
    pub fn equals_projectively(&self, other: &Moebius, tol: f64) -> bool {
        let s = [self.a, self.b, self.c, self.d];
        let o = [other.a, other.b, other.c, other.d];
        let k = (0..4).max_by(|&i, &j| s[i].norm().total_cmp(&s[j].norm())).unwrap();
        if o[k].norm() == 0.0 {
            return false;
        }
        let lambda = s[k] / o[k];
        (0..4).all(|i| (s[i] - lambda * o[i]).norm() <= tol)
    }
}

/// `m1 after m2`.
pub fn compose(m1: &Moebius, m2: &Moebius) -> Result<Moebius> {
    Moebius::new(
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
    )
}

/// `z -> c (z - alpha) / (conj(alpha) z - 1)`, the general automorphism of the closed unit disk.
pub fn disk_automorphism(rot: Complex, alpha: Complex) -> Result<Moebius> {
    if (rot.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::ParameterOutOfRange(format!("|c| = {} != 1", rot.norm())));
    }
    if !(alpha.norm() < 1.0) {
        return Err(Error::ParameterOutOfRange(format!("|alpha| = {} >= 1", alpha.norm())));
    }
    Moebius::new(rot, -rot * alpha, alpha.conj(), c(-1.0, 0.0))
}

/// The rotation factor `c` for which the automorphism with parameter `alpha` fixes 1.
pub fn rotation_fixing_one(alpha: Complex) -> Complex {
    -(c(1.0, 0.0) - alpha.conj()) / (c(1.0, 0.0) - alpha)
}

/// The rotation factor `c` for which the automorphism with parameter `alpha` fixes -1.
pub fn rotation_fixing_minus_one(alpha: Complex) -> Complex {
    -(c(1.0, 0.0) + alpha.conj()) / (c(1.0, 0.0) + alpha)
}

/// Disk automorphism sending `v1 -> 1` and `v2 -> -1`, both on the unit circle.
///
/// Rotates `v1` to 1, then uses the closed form with
/// `d = 2(1+v)/(v - conj v)` and `alpha = -(1 + conj(v) d)/(1 - conj(v) d)`.
/// When the rotated `v2` is (numerically) real, i.e. -1, the closed form
/// divides by zero and a three-point solve is used instead; the same solve
/// replaces the closed form when its residual exceeds `1e-12`.
pub fn normalize_pair(v1: Complex, v2: Complex) -> Result<Moebius> {
    for v in [v1, v2] {
        if (v.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::ParameterOutOfRange(format!(
                "|v| = {} off the unit circle",
                v.norm()
            )));
        }
    }
    if (v1 - v2).norm() <= 1e-12 {
        return Err(Error::CoincidentPoints);
    }
    let v1 = v1 / v1.norm();
    let v2 = v2 / v2.norm();
    let rotate = Moebius::scaling(v1.conj())?;
    let v = v2 * v1.conj();
    let one = c(1.0, 0.0);
    // the point halfway along the arc from v back to 1 goes to -i
    let phi = v.im.atan2(v.re);
    let mid = cis(if phi > 0.0 { 0.5 * phi + PI } else { 0.5 * phi });
    let fallback = || cross_ratio_map(one, v, mid, one, -one, -I);
    let inner = if v.im.abs() <= 1e-12 {
        fallback()?
    } else {
        let d = 2.0 * (one + v) / (v - v.conj());
        let vd = v.conj() * d;
        let alpha = -(one + vd) / (one - vd);
        let m = disk_automorphism(rotation_fixing_one(alpha), alpha)?;
        let residual = (m.apply(one)? - one).norm().max((m.apply(v)? + one).norm());
        // |alpha| -> 1 as v -> 1 and the closed form loses digits
        if residual > 1e-12 {
            fallback()?
        } else {
            m
        }
    };
    compose(&inner, &rotate)
}

/// The map sending `z_i -> w_i` for `i = 1, 2, 3`.
pub fn cross_ratio_map(
    z1: Complex,
    z2: Complex,
    z3: Complex,
    w1: Complex,
    w2: Complex,
    w3: Complex,
) -> Result<Moebius> {
    let tz = to_zero_one_infinity(z1, z2, z3)?;
    let tw = to_zero_one_infinity(w1, w2, w3)?;
    compose(&tw.inverse(), &tz)
}

/// `z -> (z - p)(q - r) / ((z - r)(q - p))`: sends `p, q, r` to `0, 1, inf`.
fn to_zero_one_infinity(p: Complex, q: Complex, r: Complex) -> Result<Moebius> {
    let tol = 1e-12 * (p.norm() + q.norm() + r.norm()).max(1.0);
    if (p - q).norm() <= tol || (q - r).norm() <= tol || (p - r).norm() <= tol {
        return Err(Error::CoincidentPoints);
    }
    let k = q - r;
    let m = q - p;
    Moebius::new(k, -p * k, m, -r * m)
}

/// `g(z) = beta z / ((1 - beta) - (1 - 2 beta) z)`: self-map of the closed disk
/// `D(1/2; 1/2)` fixing 0 and 1.
pub fn half_disk_slide(beta: f64) -> Result<Moebius> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::ParameterOutOfRange(format!("beta = {beta}")));
    }
    Moebius::new(
        c(beta, 0.0),
        c(0.0, 0.0),
        c(-(1.0 - 2.0 * beta), 0.0),
        c(1.0 - beta, 0.0),
    )
}

/// `h(z) = (1 + z) / 2`, unit disk onto `D(1/2; 1/2)`.
pub fn to_half_disk() -> Moebius {
    Moebius::new(c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)).expect("affine map")
}
