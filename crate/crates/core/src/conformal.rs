//! Numerical Riemann maps and the expression DAG used for every constructed function.
//!
//! Riemann maps use the geodesic zipper: the curve is opened at two samples
//! by a square root, then each following sample is zipped onto the real
//! line by an elementary slit map, and the last gap is closed by a square.

use crate::error::{Error, Result};
use crate::geometry::{root_alpha, CircleArc, Complex, I};
use crate::kissing_path::JordanCurve;
use crate::moebius::{normalize_pair, to_half_disk, Moebius};
use crate::region::Region;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

/// Default and maximal number of boundary samples.
pub const DEFAULT_SAMPLES: usize = 1024;
pub const MAX_SAMPLES: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq)]
struct SlitStep {
    s: f64,
    d: f64,
    inv_e: f64,
    scale: f64,
}

impl SlitStep {
    fn new(zeta: Complex) -> Self {
        let n2 = zeta.norm_sqr();
        let s = zeta.re / n2;
        let d = n2 / zeta.im;
        let inv_e = -s / (1.0 + d * d * s * s).sqrt();
        SlitStep {
            s,
            d,
            inv_e,
            scale: 1.0,
        }
    }

    fn apply(&self, w: Complex) -> Complex {
        let x = w / (1.0 - w * self.s);
        let y = x * (1.0 + (self.d / x) * (self.d / x)).sqrt();
        y / (1.0 - y * self.inv_e) / self.scale
    }

    /// Real boundary points; 0 is the base of the slit and is taken as the
    /// limit from the negative side.
    fn apply_real(&self, x: f64) -> f64 {
        if x == 0.0 {
            let y = -self.d;
            return y / (1.0 - y * self.inv_e) / self.scale;
        }
        let x1 = if x.abs() > 1.0 {
            1.0 / (1.0 / x - self.s)
        } else {
            x / (1.0 - x * self.s)
        };
        let y = x1.signum() * x1.hypot(self.d);
        let out = if y.abs() > 1.0 {
            1.0 / (1.0 / y - self.inv_e)
        } else {
            y / (1.0 - y * self.inv_e)
        };
        out / self.scale
    }
}

/// Riemann map of the interior of a sampled Jordan curve onto the unit disk.
#[derive(Debug, Clone)]
pub struct DiscreteConformalMap {
    points: Vec<Complex>,
    steps: Vec<SlitStep>,
    cayley: Complex,
    rotation: Complex,
    basepoint: Complex,
    boundary: Vec<Complex>,
}

fn unwrap_angles(values: &[Complex]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = values[0].arg();
    out.push(acc);
    for w in values.windows(2) {
        acc += (w[1] / w[0]).arg();
        out.push(acc);
    }
    out
}

impl DiscreteConformalMap {
    /// Zipper map for the counterclockwise closed polyline `points` (no
    /// repeated endpoint) with `basepoint -> 0`.
    pub fn from_samples(points: Vec<Complex>, basepoint: Complex) -> Result<Self> {
        let n = points.len();
        if n < 8 {
            return Err(Error::Precondition("too few boundary samples".into()));
        }
        let (z0, z1) = (points[0], points[1]);
        let open = |p: Complex| I * ((p - z1) / (p - z0)).sqrt();
        let mut current: Vec<Complex> = points[2..].iter().map(|&p| open(p)).collect();
        // boundary images: index 0 -> infinity, index 1 -> 0
        let mut real: Vec<f64> = vec![0.0];
        let mut steps = Vec::with_capacity(n - 2);
        for k in 0..current.len() {
            let zeta = current[k];
            if !(zeta.im > 0.0) || !zeta.re.is_finite() || !zeta.im.is_finite() {
                return Err(Error::NumericalBreakdown(format!(
                    "sample {} left the upper half plane ({zeta})",
                    k + 2
                )));
            }
            let mut step = SlitStep::new(zeta);
            // rescale so the next slit tip has unit modulus; without this the
            // images of the unprocessed samples overflow on thin domains
            if let Some(&next) = current.get(k + 1) {
                let m = step.apply(next).norm();
                if m.is_finite() && m > 0.0 {
                    step.scale = m;
                }
            }
            for x in real.iter_mut() {
                *x = step.apply_real(*x);
            }
            real.push(0.0);
            for w in current[k + 1..].iter_mut() {
                *w = step.apply(*w);
            }
            steps.push(step);
        }
        let mut map = DiscreteConformalMap {
            points,
            steps,
            cayley: Complex::new(0.0, 1.0),
            rotation: Complex::new(1.0, 0.0),
            basepoint,
            boundary: Vec::new(),
        };
        let a = map.to_half_plane(basepoint);
        if !(a.im > 0.0) || !a.re.is_finite() {
            return Err(Error::NumericalBreakdown(format!("basepoint image {a}")));
        }
        map.cayley = a;
        let mut boundary = vec![Complex::new(1.0, 0.0)];
        for x in real {
            let w = Complex::new(-x * x, 0.0);
            boundary.push((w - a) / (w - a.conj()));
        }
        map.boundary = boundary;
        let angles = unwrap_angles(&map.boundary);
        let total = angles[n - 1] - angles[0];
        let increasing = angles.windows(2).all(|w| w[1] > w[0]);
        if !increasing || !(total < TAU) {
            return Err(Error::NumericalBreakdown(
                "boundary correspondence is not monotone".into(),
            ));
        }
        Ok(map)
    }

    fn to_half_plane(&self, p: Complex) -> Complex {
        let (z0, z1) = (self.points[0], self.points[1]);
        let mut w = I * ((p - z1) / (p - z0)).sqrt();
        for s in &self.steps {
            w = s.apply(w);
        }
        -(w * w)
    }

    pub fn basepoint(&self) -> Complex {
        self.basepoint
    }

    pub fn samples(&self) -> &[Complex] {
        &self.points
    }

    /// Images of the boundary samples on the unit circle.
    pub fn boundary_values(&self) -> Vec<Complex> {
        self.boundary.iter().map(|b| b * self.rotation).collect()
    }

    /// Unwrapped angles of the boundary correspondence, in sample order.
    pub fn boundary_angles(&self) -> Vec<f64> {
        unwrap_angles(&self.boundary_values())
    }

    /// The map at an interior point. Values within `1e-6` outside the closed
    /// disk are pulled back onto the circle; farther ones mean `p` is outside.
    pub fn eval(&self, p: Complex) -> Result<Complex> {
        if p == self.points[0] {
            return Ok(self.rotation);
        }
        let w = self.to_half_plane(p);
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(Error::NumericalBreakdown(format!("non-finite image at {p}")));
        }
        let v = (w - self.cayley) / (w - self.cayley.conj());
        let m = v.norm();
        if !m.is_finite() || m > 1.0 + 1e-6 {
            return Err(Error::DomainViolation {
                what: "riemann map (point outside the curve)".into(),
                point: p,
            });
        }
        let v = if m > 1.0 { v / m } else { v };
        Ok(v * self.rotation)
    }

    fn sample_index(&self, z: Complex) -> Result<usize> {
        let scale = z.norm().max(1.0);
        let (k, d) = self
            .points
            .iter()
            .enumerate()
            .map(|(k, p)| (k, (p - z).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if d <= 1e-9 * scale {
            Ok(k)
        } else {
            Err(Error::NotOnCurve(z))
        }
    }

    /// Boundary extension at a sample point of the curve.
    pub fn eval_boundary(&self, z: Complex) -> Result<Complex> {
        let k = self.sample_index(z)?;
        Ok(self.boundary[k] * self.rotation)
    }

    /// Post-rotation so that the boundary sample `z0` maps to 1.
    pub fn normalize_at(&self, z0: Complex) -> Result<Self> {
        let k = self.sample_index(z0)?;
        let mut out = self.clone();
        out.rotation = self.boundary[k].conj() / self.boundary[k].norm();
        Ok(out)
    }
}

/// Riemann map of the interior of `curve` with `basepoint -> 0`, sampled at
/// 1024 points and resampled at double density on breakdown.
pub fn riemann_map(curve: &JordanCurve, basepoint: Complex) -> Result<DiscreteConformalMap> {
    match curve.winding_number(basepoint) {
        Ok(1) => {}
        _ => {
            return Err(Error::Precondition(format!(
                "basepoint {basepoint} is not inside the curve"
            )))
        }
    }
    let mut n = DEFAULT_SAMPLES;
    loop {
        let pts = curve.sample(n);
        match DiscreteConformalMap::from_samples(pts, basepoint) {
            Err(Error::NumericalBreakdown(msg)) => {
                if 2 * n > MAX_SAMPLES {
                    return Err(Error::NumericalBreakdown(msg));
                }
                n *= 2;
            }
            other => return other,
        }
    }
}

/// A Riemann map wrapped with a Möbius map before and after it, and exact
/// values pinned at chosen points.
#[derive(Debug, Clone)]
pub struct ConformalMapNode {
    pub pre: Moebius,
    pub map: DiscreteConformalMap,
    pub post: Moebius,
    pub pins: Vec<(Complex, Complex)>,
}

impl ConformalMapNode {
    pub fn eval(&self, z: Complex) -> Result<Complex> {
        for &(p, v) in &self.pins {
            if (z - p).norm() <= 1e-12 * p.norm().max(1.0) {
                return Ok(v);
            }
        }
        let w = self.pre.apply(z)?;
        let v = self.map.eval(w)?;
        self.post.apply(v)
    }
}

type Cache = Mutex<HashMap<(u64, u64), Complex>>;

enum Kind {
    Var,
    Const(Complex),
    Moebius(Moebius, AnalyticFn),
    Root(f64, AnalyticFn),
    Conformal(Arc<ConformalMapNode>, AnalyticFn),
    Affine(Complex, Complex, AnalyticFn),
    Product(Vec<AnalyticFn>),
    Sum(Vec<(Complex, AnalyticFn)>),
    Power(u32, AnalyticFn),
    Indicator(Complex, f64),
    Cached(AnalyticFn, Cache),
}

struct Node {
    label: String,
    kind: Kind,
}

/// An evaluable expression over base maps.
#[derive(Clone)]
pub struct AnalyticFn(Arc<Node>);

impl std::fmt::Debug for AnalyticFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AnalyticFn({})", self.0.label)
    }
}

/// Maximum modulus over a set of sample points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridNorm {
    pub value: f64,
    pub argmax: Complex,
    pub samples: usize,
}

impl AnalyticFn {
    fn node(label: impl Into<String>, kind: Kind) -> Self {
        AnalyticFn(Arc::new(Node {
            label: label.into(),
            kind,
        }))
    }

    pub fn var() -> Self {
        Self::node("z", Kind::Var)
    }

    pub fn constant(value: Complex) -> Self {
        Self::node(format!("const {value}"), Kind::Const(value))
    }

    pub fn moebius(m: Moebius, inner: &AnalyticFn) -> Self {
        Self::node("moebius", Kind::Moebius(m, inner.clone()))
    }

    pub fn root(alpha: f64, inner: &AnalyticFn) -> Self {
        Self::node(format!("root {alpha:e}"), Kind::Root(alpha, inner.clone()))
    }

    pub fn conformal(node: ConformalMapNode, inner: &AnalyticFn) -> Self {
        Self::node("conformal", Kind::Conformal(Arc::new(node), inner.clone()))
    }

    /// `a f + b`.
    pub fn affine(a: Complex, b: Complex, inner: &AnalyticFn) -> Self {
        Self::node(format!("affine {a}*f+{b}"), Kind::Affine(a, b, inner.clone()))
    }

    pub fn product(factors: Vec<AnalyticFn>) -> Self {
        Self::node(format!("product of {}", factors.len()), Kind::Product(factors))
    }

    pub fn sum(terms: Vec<(Complex, AnalyticFn)>) -> Self {
        Self::node(format!("sum of {}", terms.len()), Kind::Sum(terms))
    }

    pub fn power(n: u32, inner: &AnalyticFn) -> Self {
        Self::node(format!("power {n}"), Kind::Power(n, inner.clone()))
    }

    /// 1 on the closed disk `D(point; radius)`, 0 elsewhere; holomorphic on
    /// `K` only when that disk isolates a piece of `K`.
    pub fn indicator(point: Complex, radius: f64) -> Self {
        Self::node(format!("indicator {point}"), Kind::Indicator(point, radius))
    }

    /// Memoizes values by exact input.
    pub fn cached(inner: &AnalyticFn) -> Self {
        Self::node("cache", Kind::Cached(inner.clone(), Mutex::new(HashMap::new())))
    }

    /// Same function under a different label.
    pub fn labelled(&self, label: impl Into<String>) -> Self {
        let kind = match &self.0.kind {
            Kind::Var => Kind::Var,
            Kind::Const(c) => Kind::Const(*c),
            Kind::Moebius(m, f) => Kind::Moebius(*m, f.clone()),
            Kind::Root(a, f) => Kind::Root(*a, f.clone()),
            Kind::Conformal(n, f) => Kind::Conformal(n.clone(), f.clone()),
            Kind::Affine(a, b, f) => Kind::Affine(*a, *b, f.clone()),
            Kind::Product(v) => Kind::Product(v.clone()),
            Kind::Sum(v) => Kind::Sum(v.clone()),
            Kind::Power(n, f) => Kind::Power(*n, f.clone()),
            Kind::Indicator(p, r) => Kind::Indicator(*p, *r),
            Kind::Cached(f, _) => Kind::Cached(f.clone(), Mutex::new(HashMap::new())),
        };
        Self::node(label, kind)
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn evaluate(&self, z: Complex) -> Result<Complex> {
        let violation = |point: Complex| Error::DomainViolation {
            what: self.0.label.clone(),
            point,
        };
        match &self.0.kind {
            Kind::Var => Ok(z),
            Kind::Const(c) => Ok(*c),
            Kind::Moebius(m, f) => {
                let w = f.evaluate(z)?;
                m.apply(w).map_err(|_| violation(z))
            }
            Kind::Root(alpha, f) => {
                let w = f.evaluate(z)?;
                root_alpha(*alpha, w).map_err(|_| violation(z))
            }
            Kind::Conformal(node, f) => {
                let w = f.evaluate(z)?;
                node.eval(w).map_err(|e| match e {
                    Error::DomainViolation { .. } | Error::Pole(_) => violation(z),
                    other => other,
                })
            }
            Kind::Affine(a, b, f) => Ok(a * f.evaluate(z)? + b),
            Kind::Product(fs) => {
                let mut acc = Complex::new(1.0, 0.0);
                for f in fs {
                    acc *= f.evaluate(z)?;
                }
                Ok(acc)
            }
            Kind::Sum(terms) => {
                let mut acc = Complex::new(0.0, 0.0);
                for (w, f) in terms {
                    acc += w * f.evaluate(z)?;
                }
                Ok(acc)
            }
            Kind::Power(n, f) => Ok(f.evaluate(z)?.powu(*n)),
            Kind::Indicator(p, r) => Ok(if (z - p).norm() <= *r {
                Complex::new(1.0, 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }),
            Kind::Cached(f, cache) => {
                let key = (z.re.to_bits(), z.im.to_bits());
                if let Some(v) = cache.lock().unwrap().get(&key) {
                    return Ok(*v);
                }
                let v = f.evaluate(z)?;
                cache.lock().unwrap().insert(key, v);
                Ok(v)
            }
        }
    }

    pub fn evaluate_many(&self, points: &[Complex]) -> Result<Vec<Complex>> {
        points.iter().map(|&p| self.evaluate(p)).collect()
    }

    /// Maximum modulus over `points`.
    pub fn grid_norm_on(&self, points: &[Complex]) -> Result<GridNorm> {
        let mut best = GridNorm {
            value: f64::NEG_INFINITY,
            argmax: Complex::new(f64::NAN, f64::NAN),
            samples: points.len(),
        };
        for &p in points {
            let m = self.evaluate(p)?.norm();
            if m > best.value {
                best.value = m;
                best.argmax = p;
            }
        }
        Ok(best)
    }

    /// Maximum modulus over the sample grid of `K` at `pitch`, plus `extra` points.
    pub fn grid_norm(&self, k: &Region, pitch: f64, extra: &[Complex]) -> Result<GridNorm> {
        let mut pts = k.sample_points(pitch);
        pts.extend_from_slice(extra);
        self.grid_norm_on(&pts)
    }

    /// Indented dump of the DAG.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        self.describe_into(&mut out, 0);
        out
    }

    fn describe_into(&self, out: &mut String, depth: usize) {
        let _ = writeln!(out, "{}{}", "  ".repeat(depth), self.0.label);
        if depth > 12 {
            return;
        }
        match &self.0.kind {
            Kind::Moebius(_, f)
            | Kind::Root(_, f)
            | Kind::Conformal(_, f)
            | Kind::Affine(_, _, f)
            | Kind::Power(_, f)
            | Kind::Cached(f, _) => f.describe_into(out, depth + 1),
            Kind::Product(fs) => fs.iter().for_each(|f| f.describe_into(out, depth + 1)),
            Kind::Sum(ts) => ts.iter().for_each(|(_, f)| f.describe_into(out, depth + 1)),
            _ => {}
        }
    }
}

/// Points along the curve spaced by arclength about `length / n`, refined
/// geometrically towards every contact down to `length * 1e-7`.
pub fn graded_samples(curve: &JordanCurve, n: usize) -> Vec<Complex> {
    let total = curve.length();
    let base = total / n as f64;
    let finest = total * 1e-7;
    let mut out = Vec::new();
    let is_contact = |z: Complex| {
        curve
            .contacts
            .iter()
            .any(|p| (z - p).norm() <= 1e-12 * p.norm().max(1.0))
    };
    for arc in &curve.arcs {
        let len = arc.length();
        let m = ((len / base).ceil() as usize).max(2);
        let mut pos: Vec<f64> = (0..m).map(|k| len * k as f64 / m as f64).collect();
        let mut grade = |from_end: bool| {
            let mut s = finest;
            while s < base && s < 0.5 * len {
                pos.push(if from_end { len - s } else { s });
                s *= 1.25;
            }
        };
        if is_contact(arc.start()) {
            grade(false);
        }
        if is_contact(arc.end()) {
            grade(true);
        }
        pos.sort_by(f64::total_cmp);
        pos.dedup_by(|a, b| (*a - *b).abs() < 0.5 * finest);
        for p in pos {
            let z = arc.point_at(p / len);
            let z = curve
                .contacts
                .iter()
                .copied()
                .find(|c| (z - c).norm() <= 1e-12 * c.norm().max(1.0))
                .unwrap_or(z);
            out.push(z);
        }
    }
    out
}

/// Image of a curve of arcs under a Möbius map whose pole lies off the curve,
/// reoriented counterclockwise.
pub fn image_curve(m: &Moebius, curve: &JordanCurve) -> Result<JordanCurve> {
    let mut arcs = Vec::with_capacity(curve.arcs.len());
    for a in &curve.arcs {
        let p = m.apply(a.start())?;
        let q = m.apply(a.midpoint())?;
        let r = m.apply(a.end())?;
        arcs.push(CircleArc::through(p, q, r)?);
    }
    let contacts = curve.contacts.iter().map(|&z| m.apply(z)).collect::<Result<Vec<_>>>()?;
    // snap arc ends so consecutive arcs meet exactly
    let n = arcs.len();
    for k in 0..n {
        let end = arcs[k].end();
        let start = arcs[(k + 1) % n].start();
        if (end - start).norm() > 1e-9 * end.norm().max(1.0) {
            return Err(Error::NumericalBreakdown("image arcs do not join".into()));
        }
    }
    let mut out = JordanCurve::new(arcs, contacts)?;
    if out.signed_area() < 0.0 {
        out.arcs.reverse();
        for a in out.arcs.iter_mut() {
            *a = a.reversed();
        }
    }
    Ok(out)
}

/// Samples rotated so the first two are far from every contact.
fn start_away_from_contacts(mut pts: Vec<Complex>, contacts: &[Complex]) -> Vec<Complex> {
    let far = (0..pts.len())
        .max_by(|&a, &b| {
            let da = contacts
                .iter()
                .map(|c| (pts[a] - c).norm())
                .fold(f64::INFINITY, f64::min);
            let db = contacts
                .iter()
                .map(|c| (pts[b] - c).norm())
                .fold(f64::INFINITY, f64::min);
            da.total_cmp(&db)
        })
        .unwrap_or(0);
    pts.rotate_left(far);
    pts
}

/// Zipper map from samples produced at density `n`, doubling `n` on breakdown.
fn zipper_doubling(
    sampler: impl Fn(usize) -> Result<Vec<Complex>>,
    contacts: &[Complex],
    basepoint: Complex,
) -> Result<DiscreteConformalMap> {
    let mut n = DEFAULT_SAMPLES;
    loop {
        let pts = start_away_from_contacts(sampler(n)?, contacts);
        match DiscreteConformalMap::from_samples(pts, basepoint) {
            Err(Error::NumericalBreakdown(msg)) => {
                if 2 * n > MAX_SAMPLES {
                    return Err(Error::NumericalBreakdown(msg));
                }
                n *= 2;
            }
            other => return other,
        }
    }
}

/// Riemann map of the curve's interior with `basepoint -> 0`, using graded
/// samples; doubles the density on breakdown.
pub fn graded_riemann_map(curve: &JordanCurve, basepoint: Complex) -> Result<DiscreteConformalMap> {
    zipper_doubling(|n| Ok(graded_samples(curve, n)), &curve.contacts, basepoint)
}

/// The pair map `g` of a kissing path through `z1, z2`: `K -> closed unit disk`,
/// `g(z1) = 1`, `g(z2) = -1`, holomorphic on the interior of `K`.
///
/// The exterior of the curve is inverted about its deepest interior point
/// `z0'`, so that `K \ {z1, z2}` lands inside the image curve with `infinity -> 0`.
pub fn pair_map(k: &Region, curve: &JordanCurve) -> Result<AnalyticFn> {
    if curve.contacts.len() != 2 {
        return Err(Error::Precondition("curve needs exactly two contact points".into()));
    }
    let (z1, z2) = (curve.contacts[0], curve.contacts[1]);
    let inner = curve.deepest_point()?;
    if k.distance(inner).0 <= 0.0 {
        return Err(Error::Precondition("curve interior meets K".into()));
    }
    let phi = Moebius::inversion_about(inner);
    let image = image_curve(&phi, curve)?;
    let origin = Complex::new(0.0, 0.0);
    if image.winding_number(origin)? != 1 {
        return Err(Error::NumericalBreakdown("inverted curve does not surround 0".into()));
    }
    // samples are spaced along the original curve, where thin parts of the
    // chain are resolved, then inverted; inversion reverses the orientation
    let sampler = |n: usize| -> Result<Vec<Complex>> {
        let mut pts = graded_samples(curve, n)
            .into_iter()
            .map(|z| phi.apply(z))
            .collect::<Result<Vec<_>>>()?;
        pts.reverse();
        Ok(pts)
    };
    let map = zipper_doubling(sampler, &image.contacts, origin)?;
    let v1 = map.eval_boundary(phi.apply(z1)?)?;
    let v2 = map.eval_boundary(phi.apply(z2)?)?;
    let post = normalize_pair(v1 / v1.norm(), v2 / v2.norm())?;
    let node = ConformalMapNode {
        pre: phi,
        map,
        post,
        pins: vec![(z1, Complex::new(1.0, 0.0)), (z2, Complex::new(-1.0, 0.0))],
    };
    Ok(AnalyticFn::conformal(node, &AnalyticFn::var()).labelled(format!("pair map {z1} -> 1, {z2} -> -1")))
}

/// `h o g` with `h(z) = (1 + z)/2`: values in `{0, 1}` and `D(1/2; 1/2)`,
/// `z1 -> 1`, `z2 -> 0`.
pub fn pair_map_01(k: &Region, curve: &JordanCurve) -> Result<AnalyticFn> {
    let g = pair_map(k, curve)?;
    let (z1, z2) = (curve.contacts[0], curve.contacts[1]);
    Ok(AnalyticFn::moebius(to_half_disk(), &g).labelled(format!("pair map {z1} -> 1, {z2} -> 0")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::c;
    use crate::kissing_path::kissing_path_between;
    use crate::moebius::disk_automorphism;

    #[test]
    fn unit_circle_is_nearly_identity() {
        let curve = JordanCurve::circle(c(0.0, 0.0), 1.0);
        let map = riemann_map(&curve, c(0.0, 0.0)).unwrap();
        assert!(map.eval(c(0.0, 0.0)).unwrap().norm() < 1e-12);
        assert!((map.eval(c(0.5, 0.0)).unwrap().norm() - 0.5).abs() < 1e-3);
        let map = map.normalize_at(c(1.0, 0.0)).unwrap();
        for p in [c(0.3, 0.2), c(-0.6, 0.1), c(0.0, -0.9)] {
            assert!((map.eval(p).unwrap() - p).norm() < 1e-3, "{p}");
        }
    }

    #[test]
    fn translated_circle() {
        let curve = JordanCurve::circle(c(2.0, 0.0), 1.0);
        let map = riemann_map(&curve, c(2.0, 0.0))
            .unwrap()
            .normalize_at(c(3.0, 0.0))
            .unwrap();
        for p in [c(2.3, 0.2), c(1.4, 0.1)] {
            assert!((map.eval(p).unwrap() - (p - 2.0)).norm() < 1e-3);
        }
    }

    #[test]
    fn off_centre_basepoint_matches_automorphism() {
        let curve = JordanCurve::circle(c(0.0, 0.0), 1.0);
        let b = c(0.3, -0.2);
        let map = riemann_map(&curve, b).unwrap().normalize_at(c(1.0, 0.0)).unwrap();
        let m = disk_automorphism(c(1.0, 0.0), b).unwrap();
        let u = m.apply(c(1.0, 0.0)).unwrap();
        for p in [c(0.1, 0.1), c(-0.5, 0.5), c(0.8, 0.0)] {
            let exact = m.apply(p).unwrap() / u;
            assert!((map.eval(p).unwrap() - exact).norm() < 1e-3);
        }
    }

    #[test]
    fn normalize_is_idempotent() {
        let curve = JordanCurve::circle(c(0.0, 0.0), 1.0);
        let map = riemann_map(&curve, c(0.1, 0.0)).unwrap();
        let z = curve.sample(DEFAULT_SAMPLES)[100];
        let once = map.normalize_at(z).unwrap();
        let twice = once.normalize_at(z).unwrap();
        assert!((once.eval_boundary(z).unwrap() - 1.0).norm() < 1e-6);
        assert!((twice.eval_boundary(z).unwrap() - 1.0).norm() < 1e-12);
        let z2 = curve.sample(DEFAULT_SAMPLES)[300];
        assert!((once.normalize_at(z2).unwrap().eval_boundary(z2).unwrap() - 1.0).norm() < 1e-12);
        assert!(matches!(map.normalize_at(c(0.5, 0.0)), Err(Error::NotOnCurve(_))));
    }

    #[test]
    fn boundary_correspondence_is_monotone() {
        let curve = JordanCurve::circle(c(0.0, 0.0), 1.0);
        let map = riemann_map(&curve, c(0.4, 0.4)).unwrap();
        let a = map.boundary_angles();
        assert!(a.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn dag_examples() {
        let k = AnalyticFn::constant(c(2.0, 1.0));
        assert_eq!(k.evaluate(c(5.0, 5.0)).unwrap(), c(2.0, 1.0));
        let r = AnalyticFn::root(0.5, &AnalyticFn::constant(I));
        let v = r.evaluate(c(0.0, 0.0)).unwrap();
        assert!((v - Complex::from_polar(1.0, TAU / 8.0)).norm() < 1e-15);
        let bad = AnalyticFn::root(0.5, &AnalyticFn::var()).labelled("sqrt z");
        match bad.evaluate(c(-1.0, 0.0)) {
            Err(Error::DomainViolation { what, .. }) => assert_eq!(what, "sqrt z"),
            other => panic!("{other:?}"),
        }
        let z = AnalyticFn::var();
        let p = AnalyticFn::product(vec![z.clone(), z.clone()]);
        let s = AnalyticFn::sum(vec![(c(2.0, 0.0), p), (c(1.0, 0.0), AnalyticFn::constant(c(1.0, 0.0)))]);
        assert_eq!(s.evaluate(c(3.0, 0.0)).unwrap(), c(19.0, 0.0));
        assert_eq!(AnalyticFn::power(3, &z).evaluate(c(2.0, 0.0)).unwrap(), c(8.0, 0.0));
        let cached = AnalyticFn::cached(&s);
        assert_eq!(cached.evaluate(c(3.0, 0.0)).unwrap(), c(19.0, 0.0));
        assert_eq!(cached.evaluate(c(3.0, 0.0)).unwrap(), c(19.0, 0.0));
        assert!(s.describe().lines().count() >= 4);
    }

    #[test]
    fn pair_map_on_unit_square() {
        let k = Region::unit_square(0.05);
        let (z1, z2) = (c(0.0, 0.0), c(1.0, 1.0));
        let kp = kissing_path_between(&k, z1, z2).unwrap();
        let g = pair_map(&k, &kp.curve).unwrap();
        assert_eq!(g.evaluate(z1).unwrap(), c(1.0, 0.0));
        assert_eq!(g.evaluate(z2).unwrap(), c(-1.0, 0.0));
        let pts = k.sample_points(0.02);
        let mut worst: f64 = 0.0;
        for p in pts {
            if (p - z1).norm() < 1e-12 || (p - z2).norm() < 1e-12 {
                continue;
            }
            let v = g.evaluate(p).unwrap();
            worst = worst.max(v.norm());
        }
        assert!(worst < 1.0, "{worst}");
        let norm = g.grid_norm(&k, 0.02, &[z1, z2]).unwrap();
        assert!((norm.value - 1.0).abs() < 1e-6);
        assert!((norm.argmax - z1).norm() < 0.02);
        let g01 = pair_map_01(&k, &kp.curve).unwrap();
        assert_eq!(g01.evaluate(z1).unwrap(), c(1.0, 0.0));
        assert_eq!(g01.evaluate(z2).unwrap(), c(0.0, 0.0));
        for p in k.sample_points(0.05) {
            if p == z1 || p == z2 {
                continue;
            }
            assert!((g01.evaluate(p).unwrap() - 0.5).norm() < 0.5);
        }
    }
}
