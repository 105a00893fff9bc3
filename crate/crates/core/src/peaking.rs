//! Peaking functions: squeeze maps, sharpened pair maps, (0,1) sequences
//! as truncated products, and the peak function itself.
//!
//! Every factor `f_{u,v}` sends `u -> 0` and `v -> 1`. The zero of `f_j` at
//! the anchor `z0` comes from an extra factor with `u = z0`.

use crate::conformal::{pair_map_01, AnalyticFn};
use crate::error::{Error, Result};
use crate::geometry::{c, Complex};
use crate::kissing_path::build_kissing_path;
use crate::moebius::half_disk_slide;
use crate::region::{BoundaryClass, KissingDisk, Location, Region};
use crate::teardrop::{alpha_for_angle, alpha_small};
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;

/// Nodes built past the truncation for the product tail check.
pub const CAUCHY_EXTRA: usize = 3;
/// Bound required of `exp(sum_{n>N} delta^n) - 1`.
pub const TAIL_TARGET: f64 = 1e-4;
/// Kronecker and anchor tolerance of a (0,1) sequence.
pub const KRONECKER_TOL: f64 = 1e-3;

fn is_at(z: Complex, p: Complex) -> bool {
    (z - p).norm() <= 1e-12 * p.norm().max(1.0)
}

/// Parameter sequences of the (0,1) construction, indexed from `n = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Schedules {
    /// `J`, the number of functions.
    pub count: usize,
    /// `N`, the truncation of each product.
    pub truncation: usize,
    pub delta: f64,
    /// `eps_n`, `theta_n`, `zeta_n` for `n = 1..=N + CAUCHY_EXTRA`.
    pub eps: Vec<f64>,
    pub thetas: Vec<f64>,
    pub zetas: Vec<f64>,
    /// `a_i` for `i = 1..=J`.
    pub weights: Vec<f64>,
    /// Pocket radius, argument bound and power of `delta` for the anchor factor.
    pub anchor_eps: f64,
    pub anchor_theta: f64,
    pub anchor_power: u32,
}

impl Schedules {
    /// `J = N = count`, with the largest `delta` in `{1/4, 1/8, 1/16, 1/32}`
    /// whose tail bound is below [`TAIL_TARGET`].
    pub fn standard(count: usize) -> Result<Self> {
        for delta in [0.25, 0.125, 0.0625, 0.03125] {
            if let Ok(s) = Self::new(count, count, delta) {
                return Ok(s);
            }
        }
        Err(Error::ScheduleInvalid(format!(
            "no delta meets the tail target for N = {count}"
        )))
    }

    pub fn new(count: usize, truncation: usize, delta: f64) -> Result<Self> {
        if count == 0 || truncation < count {
            return Err(Error::ScheduleInvalid(format!("J = {count}, N = {truncation}")));
        }
        let len = truncation + CAUCHY_EXTRA;
        let pow2 = |n: usize| 0.5f64.powi(n as i32);
        let total: f64 = (1..=count).map(pow2).sum();
        let s = Schedules {
            count,
            truncation,
            delta,
            eps: (1..=len).map(|n| pow2(n) / 8.0).collect(),
            thetas: (1..=len).map(|n| PI * pow2(n + 4)).collect(),
            zetas: (1..=len).map(|n| pow2(n + 2)).collect(),
            weights: (1..=count).map(|i| pow2(i) / total).collect(),
            anchor_eps: pow2(count) / 8.0,
            anchor_theta: PI * pow2(truncation + 5),
            anchor_power: truncation as u32 + 1,
        };
        s.validate()?;
        Ok(s)
    }

    /// `exp(sum_{n>N} delta^n) - 1`.
    pub fn tail_bound(&self) -> f64 {
        let n = self.truncation as i32;
        (self.delta.powi(n + 1) / (1.0 - self.delta)).exp_m1()
    }

    /// `delta^n`.
    pub fn delta_pow(&self, n: u32) -> f64 {
        self.delta.powi(n as i32)
    }

    /// Sum of the argument bounds used by one truncated product.
    pub fn theta_sum(&self) -> f64 {
        self.thetas[..self.truncation].iter().sum::<f64>() + self.anchor_theta
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::ScheduleInvalid(m));
        if !(self.delta > 0.0 && self.delta < 0.5) || self.delta / (1.0 - self.delta) >= 0.5 {
            return bad(format!("delta = {} gives sum delta^n >= 1/2", self.delta));
        }
        if self.theta_sum() >= PI / 8.0 {
            return bad(format!("theta sum {} is not below pi/8", self.theta_sum()));
        }
        let decreasing = |v: &[f64]| v.iter().all(|&x| x > 0.0) && v.windows(2).all(|w| w[1] < w[0]);
        if !decreasing(&self.eps) || !decreasing(&self.zetas) || !decreasing(&self.weights) {
            return bad("eps, zeta and weights must be positive and decreasing".into());
        }
        let total: f64 = self.weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return bad(format!("weights sum to {total}"));
        }
        if self.tail_bound() >= TAIL_TARGET {
            return bad(format!(
                "tail bound {:e} is not below {TAIL_TARGET:e}",
                self.tail_bound()
            ));
        }
        Ok(())
    }
}

/// Parameters of one factor `f_{u,v}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorParams {
    pub zeta: f64,
    pub eps: f64,
    pub delta: f64,
    pub theta: f64,
}

/// Largest `beta` (times 0.9) with `|F_beta(w)| < target`, where `F_beta` is
/// the slide of `D(1/2; 1/2)` fixing 0 and 1.
pub fn squeeze_parameter(w: Complex, target: f64) -> Result<f64> {
    let value = |b: f64| -> Result<f64> { Ok(half_disk_slide(b)?.apply(w)?.norm()) };
    let (mut lo, mut hi) = (1e-12, 1.0 - 1e-12);
    if !(value(lo).is_ok_and(|v| v < target)) {
        return Err(Error::BetaSearchFailed);
    }
    if value(hi).is_ok_and(|v| v < target) {
        return Ok(0.9 * hi);
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if value(mid).is_ok_and(|v| v < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let beta = 0.9 * lo;
    if value(beta)? < target {
        Ok(beta)
    } else {
        Err(Error::BetaSearchFailed)
    }
}

/// A squeezed map and its parameter.
#[derive(Debug, Clone)]
pub struct Pushed {
    pub function: AnalyticFn,
    pub beta: f64,
}

/// `F_beta o g` with `|F_beta(g(z0))| < zeta^(1/alpha)`, so that a later
/// `alpha`-root keeps `z0` inside `D(0; zeta)`.
pub fn push_to_zero(g: &AnalyticFn, z0: Complex, alpha: f64, zeta: f64) -> Result<Pushed> {
    if !(alpha > 0.0 && alpha <= 1.0) || !(zeta > 0.0 && zeta < 1.0) {
        return Err(Error::ParameterOutOfRange(format!("alpha = {alpha}, zeta = {zeta}")));
    }
    let w = g.evaluate(z0)?;
    let beta = squeeze_parameter(w, zeta.powf(1.0 / alpha))?;
    let m = half_disk_slide(beta)?;
    Ok(Pushed {
        function: AnalyticFn::moebius(m, g).labelled(format!("squeeze beta={beta:e}")),
        beta,
    })
}

/// A sharpened map with its grid certificate.
#[derive(Debug, Clone, Serialize)]
pub struct Sharpened {
    #[serde(skip)]
    pub function: AnalyticFn,
    pub alpha: f64,
    pub rho0: f64,
    /// `max |f - 1|` over samples off `D(u; eps)`.
    pub max_deviation: f64,
    /// `max |arg f|` over samples where `f != 0`.
    pub max_arg: f64,
    pub samples: usize,
}

/// `z^alpha o f`, with `alpha` chosen so that samples of `K` off `D(u; eps)`
/// land in `D(1; delta)` and all arguments stay below `theta`.
///
/// `rho0` is half the smallest modulus of `f` over those samples.
pub fn sharpen(
    k: &Region,
    f: &AnalyticFn,
    u: Complex,
    eps: f64,
    delta: f64,
    theta: f64,
    pitch: f64,
) -> Result<Sharpened> {
    let pts = k.sample_points(pitch);
    let mut values = Vec::with_capacity(pts.len());
    let mut smallest = f64::INFINITY;
    for &p in &pts {
        let w = f.evaluate(p)?;
        let off = (p - u).norm() >= eps;
        if off {
            smallest = smallest.min(w.norm());
        }
        values.push((off, w));
    }
    if !(smallest > 0.0 && smallest.is_finite()) {
        return Err(Error::RhoSearchFailed);
    }
    let rho0 = (0.5 * smallest).min(0.5);
    let alpha = match alpha_for_angle(rho0, delta, theta) {
        Ok(a) => a,
        Err(Error::SearchFailed { .. }) => alpha_small(rho0, delta)?.min(2.0 * theta / PI * (1.0 - 1e-3)),
        Err(_) => return Err(Error::RhoSearchFailed),
    };
    let mut max_deviation: f64 = 0.0;
    let mut max_arg: f64 = 0.0;
    for (off, w) in values {
        let v = crate::geometry::root_alpha(alpha, w)?;
        if off {
            max_deviation = max_deviation.max((v - 1.0).norm());
        }
        if v.norm() > 0.0 {
            max_arg = max_arg.max(v.arg().abs());
        }
    }
    if !(max_deviation < delta) || !(max_arg < theta) {
        return Err(Error::CertificateFailed(format!(
            "sharpened map: deviation {max_deviation:e} (delta {delta:e}), argument {max_arg:e} (theta {theta:e})"
        )));
    }
    Ok(Sharpened {
        function: AnalyticFn::root(alpha, f).labelled(format!("root {alpha:e}")),
        alpha,
        rho0,
        max_deviation,
        max_arg,
        samples: pts.len(),
    })
}

/// How the anchor condition `|f(z0)| < zeta` is met by a factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AnchorStatus {
    /// `z0 = u`, so `f(z0) = 0` exactly.
    Exact,
    /// `z0` lies in the pocket and a squeeze pushed it below `zeta`.
    Pushed,
    /// `z0` lies off the pocket, where `f` is within `delta` of 1.
    OffPocket,
}

/// Grid certificate of one factor.
#[derive(Debug, Clone, Serialize)]
pub struct FactorReport {
    pub u: Complex,
    pub v: Complex,
    pub params: FactorParams,
    pub sharpened: Sharpened,
    pub beta: Option<f64>,
    pub anchor: AnchorStatus,
    pub value_at_z0: Complex,
    pub norm: f64,
    /// Smallest `|f|` over samples other than `u`.
    pub min_modulus: f64,
    /// Smallest `|f - 1|` over samples other than `v`.
    pub min_distance_to_one: f64,
}

#[derive(Debug, Clone)]
pub struct Factor {
    pub function: AnalyticFn,
    pub report: FactorReport,
}

/// `f_{u,v}` through the kissing disks at `u` and `v`: a kissing path, its
/// pair map into `D(1/2; 1/2)`, an optional squeeze and a sharpening root.
pub fn build_fuv(k: &Region, u: Complex, v: Complex, z0: Complex, params: FactorParams, pitch: f64) -> Result<Factor> {
    let kd_u = k.kissing_disk_at(u).ok_or(Error::NotCircularlyAccessible(u))?;
    let kd_v = k.kissing_disk_at(v).ok_or(Error::NotCircularlyAccessible(v))?;
    let g = pair_map_uv(k, &kd_u, &kd_v)?;
    finish_fuv(k, &g, u, v, z0, params, pitch)
}

/// The pair map `u -> 0`, `v -> 1` for the given kissing disks.
pub fn pair_map_uv(k: &Region, kd_u: &KissingDisk, kd_v: &KissingDisk) -> Result<AnalyticFn> {
    // wide disks keep the chain of the kissing path from becoming thin
    let kp = build_kissing_path(k, &k.widen_kissing_disk(kd_v), &k.widen_kissing_disk(kd_u))?;
    Ok(AnalyticFn::cached(&pair_map_01(k, &kp.curve)?))
}

/// Squeeze, sharpen and certify a pair map `g` with `g(u) = 0`, `g(v) = 1`.
pub fn finish_fuv(
    k: &Region,
    g: &AnalyticFn,
    u: Complex,
    v: Complex,
    z0: Complex,
    params: FactorParams,
    pitch: f64,
) -> Result<Factor> {
    let FactorParams {
        zeta,
        eps,
        delta,
        theta,
    } = params;
    if is_at(z0, v) {
        return Err(Error::Precondition("z0 coincides with v".into()));
    }
    let mut s = sharpen(k, g, u, eps, delta, theta, pitch)?;
    let mut beta = None;
    let anchor = if is_at(z0, u) {
        AnchorStatus::Exact
    } else if (z0 - u).norm() < eps {
        let mut rounds = 0;
        while s.function.evaluate(z0)?.norm() >= zeta {
            rounds += 1;
            if rounds > 4 {
                return Err(Error::BetaSearchFailed);
            }
            let pushed = push_to_zero(g, z0, s.alpha, zeta)?;
            s = sharpen(k, &pushed.function, u, eps, delta, theta, pitch)?;
            beta = Some(pushed.beta);
        }
        AnchorStatus::Pushed
    } else {
        AnchorStatus::OffPocket
    };
    let f = s.function.labelled(format!("f[{u} -> 0, {v} -> 1]"));
    let mut pts = k.sample_points(pitch);
    pts.extend([u, v]);
    let mut norm: f64 = 0.0;
    let mut min_modulus = f64::INFINITY;
    let mut min_distance_to_one = f64::INFINITY;
    for &p in &pts {
        let w = f.evaluate(p)?;
        norm = norm.max(w.norm());
        if !is_at(p, u) {
            min_modulus = min_modulus.min(w.norm());
        }
        if !is_at(p, v) {
            min_distance_to_one = min_distance_to_one.min((w - 1.0).norm());
        }
    }
    let at_u = f.evaluate(u)?;
    let at_v = f.evaluate(v)?;
    if at_u.norm() > 1e-6 || (at_v - 1.0).norm() > 1e-6 {
        return Err(Error::CertificateFailed(format!("f(u) = {at_u}, f(v) = {at_v}")));
    }
    if norm > 1.0 + 1e-6 || !(min_modulus > 0.0) || !(min_distance_to_one > 0.0) {
        return Err(Error::CertificateFailed(format!(
            "norm {norm}, min |f| {min_modulus:e}, min |f - 1| {min_distance_to_one:e}"
        )));
    }
    let value_at_z0 = f.evaluate(z0)?;
    Ok(Factor {
        function: f,
        report: FactorReport {
            u,
            v,
            params,
            sharpened: s,
            beta,
            anchor,
            value_at_z0,
            norm,
            min_modulus,
            min_distance_to_one,
        },
    })
}

/// A boundary point with its pocket radius and kissing disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Node {
    pub point: Complex,
    pub eps: f64,
    pub disk: KissingDisk,
}

/// `K` must be a Type I boundary point with a kissing disk at `z0`.
fn anchor_disk(k: &Region, z0: Complex) -> Result<KissingDisk> {
    match k.contains(z0) {
        Location::Interior => return Err(Error::InteriorPoint(z0)),
        Location::Exterior => return Err(Error::NotOnBoundary(z0)),
        Location::Boundary => {}
    }
    if k.classify_refined(z0)? == BoundaryClass::TypeII {
        return Err(Error::TypeIIUnsupported(z0));
    }
    k.kissing_disk_at(z0).ok_or(Error::NotCircularlyAccessible(z0))
}

/// Nodes `z_1, ..., z_count` approaching `z0` along `∂K`: `z_n` is found by
/// [`Region::find_ca_near`] around the Type I boundary sample whose distance
/// to `z0` is closest to `0.75 * 2^-n`.
pub fn place_nodes(k: &Region, z0: Complex, schedules: &Schedules, count: usize) -> Result<Vec<Node>> {
    let finest = 0.5f64.powi(count as i32);
    let spacing = (finest / 32.0).min(k.resolution());
    let near: Vec<Complex> = k
        .sample_boundary(spacing)?
        .into_iter()
        .filter(|s| s.class == BoundaryClass::TypeI && (s.point - z0).norm() < 1.0)
        .map(|s| s.point)
        .collect();
    let mut nodes = Vec::with_capacity(count);
    for n in 1..=count {
        let scale = 0.5f64.powi(n as i32);
        let target = 0.75 * scale;
        let p = near
            .iter()
            .copied()
            .min_by(|a, b| {
                let da = ((a - z0).norm() - target).abs();
                let db = ((b - z0).norm() - target).abs();
                da.total_cmp(&db)
            })
            .ok_or_else(|| Error::ScheduleInvalid(format!("no Type I boundary near {z0}")))?;
        if ((p - z0).norm() - target).abs() > 0.25 * scale {
            return Err(Error::ScheduleInvalid(format!(
                "no boundary sample at distance {target} from {z0}"
            )));
        }
        let (point, disk) = k.find_ca_near(p, 0.5 * scale)?;
        nodes.push(Node {
            point,
            eps: schedules.eps[n - 1],
            disk,
        });
    }
    Ok(nodes)
}

/// Closed pockets must be pairwise disjoint.
pub fn check_disjoint(pockets: &[(Complex, f64)]) -> Result<()> {
    for (i, a) in pockets.iter().enumerate() {
        for b in &pockets[i + 1..] {
            if (a.0 - b.0).norm() <= a.1 + b.1 {
                return Err(Error::ScheduleInvalid(format!(
                    "pockets D({}; {}) and D({}; {}) meet",
                    a.0, a.1, b.0, b.1
                )));
            }
        }
    }
    Ok(())
}

/// Builds and caches pair maps between nodes; index 0 is the anchor.
struct PairMaps<'a> {
    k: &'a Region,
    disks: Vec<KissingDisk>,
    maps: HashMap<(usize, usize), AnalyticFn>,
}

impl PairMaps<'_> {
    /// Map with `u -> 0`, `v -> 1`, reusing `1 - g` of the swapped pair.
    fn get(&mut self, u: usize, v: usize) -> Result<AnalyticFn> {
        if let Some(g) = self.maps.get(&(u, v)) {
            return Ok(g.clone());
        }
        if let Some(g) = self.maps.get(&(v, u)) {
            let flipped = AnalyticFn::cached(&AnalyticFn::affine(c(-1.0, 0.0), c(1.0, 0.0), g));
            self.maps.insert((u, v), flipped.clone());
            return Ok(flipped);
        }
        let g = pair_map_uv(self.k, &self.disks[u], &self.disks[v])?;
        self.maps.insert((u, v), g.clone());
        Ok(g)
    }
}

/// Functions `f_1, ..., f_J` with `f_i(z_j) = delta_ij` and `f_j(z0) = 0`.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroOneSequence {
    #[serde(skip)]
    pub functions: Vec<AnalyticFn>,
    pub anchor: Complex,
    pub nodes: Vec<Node>,
    pub schedules: Schedules,
    pub pitch: f64,
    /// `kronecker[i][j] = f_{i+1}(z_{j+1})`.
    pub kronecker: Vec<Vec<Complex>>,
    pub kronecker_error: f64,
    pub anchor_values: Vec<Complex>,
    pub norms: Vec<f64>,
    /// Largest `|arg f_j|` and the modulus range over samples off the nodes.
    pub max_arg: f64,
    pub min_modulus: f64,
    pub max_modulus: f64,
    pub factors: Vec<Vec<FactorReport>>,
    #[serde(skip)]
    factor_functions: Vec<Vec<AnalyticFn>>,
}

impl ZeroOneSequence {
    /// Factors of `f_j` (1-based), the anchor factor last.
    pub fn factor_functions(&self, j: usize) -> &[AnalyticFn] {
        &self.factor_functions[j - 1]
    }
}

/// Truncated products `f_j = f_{0,j} prod_{n <= N, n != j} f_{n,j}`, where the
/// factor `f_{n,j}` uses the schedule entries `(zeta_n, eps_n, delta^n, theta_n)`
/// and `f_{0,j}` vanishes at the anchor.
pub fn zero_one_sequence(k: &Region, z0: Complex, schedules: &Schedules, pitch: f64) -> Result<ZeroOneSequence> {
    schedules.validate()?;
    let kd0 = anchor_disk(k, z0)?;
    let big_n = schedules.truncation;
    let nodes = place_nodes(k, z0, schedules, big_n)?;
    let mut pockets = vec![(z0, schedules.anchor_eps)];
    pockets.extend(nodes.iter().map(|n| (n.point, n.eps)));
    check_disjoint(&pockets)?;
    let mut disks = vec![kd0];
    disks.extend(nodes.iter().map(|n| n.disk));
    let mut maps = PairMaps {
        k,
        disks,
        maps: HashMap::new(),
    };
    let point = |i: usize| if i == 0 { z0 } else { nodes[i - 1].point };
    let mut functions = Vec::new();
    let mut factor_functions = Vec::new();
    let mut factors = Vec::new();
    for j in 1..=schedules.count {
        let mut fs = Vec::new();
        let mut reports = Vec::new();
        for n in (1..=big_n).filter(|&n| n != j).chain(std::iter::once(0)) {
            let params = if n == 0 {
                FactorParams {
                    zeta: schedules.zetas[big_n],
                    eps: schedules.anchor_eps,
                    delta: schedules.delta_pow(schedules.anchor_power),
                    theta: schedules.anchor_theta,
                }
            } else {
                FactorParams {
                    zeta: schedules.zetas[n - 1],
                    eps: schedules.eps[n - 1],
                    delta: schedules.delta_pow(n as u32),
                    theta: schedules.thetas[n - 1],
                }
            };
            let g = maps.get(n, j)?;
            let f = finish_fuv(k, &g, point(n), point(j), z0, params, pitch)?;
            fs.push(f.function);
            reports.push(f.report);
        }
        let product = AnalyticFn::cached(&AnalyticFn::product(fs.clone()).labelled(format!("f_{j}")));
        functions.push(product);
        factor_functions.push(fs);
        factors.push(reports);
    }
    let mut seq = ZeroOneSequence {
        functions,
        anchor: z0,
        nodes,
        schedules: schedules.clone(),
        pitch,
        kronecker: Vec::new(),
        kronecker_error: 0.0,
        anchor_values: Vec::new(),
        norms: Vec::new(),
        max_arg: 0.0,
        min_modulus: f64::INFINITY,
        max_modulus: 0.0,
        factors,
        factor_functions,
    };
    certify_sequence(k, &mut seq)?;
    Ok(seq)
}

fn certify_sequence(k: &Region, seq: &mut ZeroOneSequence) -> Result<()> {
    let j_count = seq.functions.len();
    let node_pts: Vec<Complex> = seq.nodes.iter().map(|n| n.point).collect();
    let mut kron = vec![vec![Complex::new(0.0, 0.0); j_count]; j_count];
    let mut err: f64 = 0.0;
    for i in 0..j_count {
        for j in 0..j_count {
            let v = seq.functions[i].evaluate(node_pts[j])?;
            let target = if i == j { 1.0 } else { 0.0 };
            err = err.max((v - target).norm());
            kron[i][j] = v;
        }
    }
    let anchor_values = seq
        .functions
        .iter()
        .map(|f| f.evaluate(seq.anchor))
        .collect::<Result<Vec<_>>>()?;
    let mut pts = k.sample_points(seq.pitch);
    pts.extend_from_slice(&node_pts);
    pts.push(seq.anchor);
    let mut norms = Vec::new();
    for (idx, f) in seq.functions.iter().enumerate() {
        let mut norm: f64 = 0.0;
        for &p in &pts {
            let w = f.evaluate(p)?;
            norm = norm.max(w.norm());
            let special = is_at(p, seq.anchor) || node_pts.iter().any(|&z| is_at(p, z));
            if !special {
                seq.max_arg = seq.max_arg.max(w.arg().abs());
                seq.min_modulus = seq.min_modulus.min(w.norm());
                seq.max_modulus = seq.max_modulus.max(w.norm());
            }
        }
        norms.push(norm);
        if !(1.0 - 1e-3..=1.0 + 1e-6).contains(&norm) {
            return Err(Error::CertificateFailed(format!("norm of f_{} is {norm}", idx + 1)));
        }
    }
    seq.kronecker = kron;
    seq.kronecker_error = err;
    seq.anchor_values = anchor_values;
    seq.norms = norms;
    if err > KRONECKER_TOL {
        return Err(Error::CertificateFailed(format!("Kronecker error {err:e}")));
    }
    if seq.anchor_values.iter().any(|v| v.norm() > KRONECKER_TOL) {
        return Err(Error::CertificateFailed("f_j(z0) is not near 0".into()));
    }
    if !(seq.max_arg <= PI / 8.0) || !(seq.min_modulus > 0.0) || !(seq.max_modulus < 1.0) {
        return Err(Error::CertificateFailed(format!(
            "cone check: max arg {}, modulus in [{:e}, {}]",
            seq.max_arg, seq.min_modulus, seq.max_modulus
        )));
    }
    Ok(())
}

/// Measured product tail for one `j`.
#[derive(Debug, Clone, Serialize)]
pub struct CauchyCheck {
    pub j: usize,
    pub bound: f64,
    /// `max |prod^{N+k} - prod^N|` over samples off the extra pockets, `k = 1..=3`.
    pub differences: Vec<f64>,
    pub samples: usize,
}

impl CauchyCheck {
    pub fn passed(&self) -> bool {
        self.differences.iter().all(|&d| d <= self.bound)
    }
}

/// Extends `f_j` by the factors `n = N+1..=N+3` and compares the longer
/// products with `f_j` away from their pockets.
pub fn cauchy_check(k: &Region, seq: &ZeroOneSequence, j: usize) -> Result<CauchyCheck> {
    let s = &seq.schedules;
    let big_n = s.truncation;
    let z0 = seq.anchor;
    let all = place_nodes(k, z0, s, big_n + CAUCHY_EXTRA)?;
    let zj = seq.nodes[j - 1];
    let mut extra = Vec::new();
    for n in big_n + 1..=big_n + CAUCHY_EXTRA {
        let node = all[n - 1];
        let g = pair_map_uv(k, &node.disk, &zj.disk)?;
        let params = FactorParams {
            zeta: s.zetas[n - 1],
            eps: s.eps[n - 1],
            delta: s.delta_pow(n as u32),
            theta: s.thetas[n - 1],
        };
        let f = finish_fuv(k, &g, node.point, zj.point, z0, params, seq.pitch)?;
        extra.push((node, f.function));
    }
    let pts = k.sample_points(seq.pitch);
    let base = &seq.functions[j - 1];
    let mut differences = vec![0.0f64; CAUCHY_EXTRA];
    let mut samples = 0;
    for &p in &pts {
        if extra.iter().any(|(node, _)| (p - node.point).norm() < node.eps) {
            continue;
        }
        samples += 1;
        let b = base.evaluate(p)?;
        let mut acc = b;
        for (idx, (_, f)) in extra.iter().enumerate() {
            acc *= f.evaluate(p)?;
            differences[idx] = differences[idx].max((acc - b).norm());
        }
    }
    Ok(CauchyCheck {
        j,
        bound: s.tail_bound(),
        differences,
        samples,
    })
}

/// `F = 1 - (f / (9 ||f||))^(1/2)`, requiring `f = 0` only at `z0` and
/// `Re f > 0` elsewhere on `samples`.
pub fn peak_criteria_transform(f: &AnalyticFn, z0: Complex, samples: &[Complex]) -> Result<AnalyticFn> {
    let mut norm: f64 = 0.0;
    for &p in samples.iter().chain(std::iter::once(&z0)) {
        let w = f.evaluate(p)?;
        norm = norm.max(w.norm());
        if is_at(p, z0) {
            if w.norm() > 1e-12 {
                return Err(Error::ConePrecondViolated(p));
            }
            continue;
        }
        if !(w.re > 0.0) {
            return Err(Error::ConePrecondViolated(p));
        }
    }
    if !(norm > 0.0) {
        return Err(Error::ConePrecondViolated(z0));
    }
    let g = AnalyticFn::affine(c(1.0 / (9.0 * norm), 0.0), c(0.0, 0.0), f);
    let h = AnalyticFn::root(0.5, &g);
    let big_f = AnalyticFn::affine(c(-1.0, 0.0), c(1.0, 0.0), &h).labelled("peak transform");
    Ok(AnalyticFn::cached(&big_f))
}

/// Settings for [`peak_function`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakConfig {
    /// `J`; the truncation is `N = J`.
    pub count: usize,
    /// Overrides the standard `delta`.
    pub delta: Option<f64>,
    /// Grid pitch used to certify factors.
    pub pitch: f64,
    /// Grid pitch and exclusion radius of the margin measurement.
    pub margin_pitch: f64,
    pub exclusion: f64,
}

impl Default for PeakConfig {
    fn default() -> Self {
        PeakConfig {
            count: 3,
            delta: None,
            pitch: 0.02,
            margin_pitch: 0.01,
            exclusion: 0.05,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PeakKind {
    /// Sum of a (0,1) sequence followed by the peak transform.
    Sequence,
    /// Indicator of an isolated point.
    Isolated,
}

/// Certificate of a peak function.
#[derive(Debug, Clone, Serialize)]
pub struct PeakReport {
    pub z0: Complex,
    pub kind: PeakKind,
    pub config: PeakConfig,
    pub value_at_z0: Complex,
    /// `1 - max |F|` over grid samples off `D(z0; exclusion)`.
    pub margin: f64,
    pub margin_argmax: Complex,
    pub margin_samples: usize,
    /// `min Re f` of the summed sequence over samples off the nodes and `z0`.
    pub min_real_part: Option<f64>,
    pub series_tail: f64,
    pub sequence: Option<ZeroOneSequence>,
}

impl PeakReport {
    pub fn passed(&self) -> bool {
        (self.value_at_z0 - 1.0).norm() <= 1e-6 && self.margin > 0.0
    }

    /// Plain text summary with every schedule constant and measured bound.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("peak function at {}\n", self.z0));
        out.push_str(&format!("kind: {:?}\n", self.kind));
        out.push_str(&format!("F(z0) = {}\n", self.value_at_z0));
        out.push_str(&format!(
            "margin m = {:.6e} (pitch {}, exclusion {}, {} samples, max at {})\n",
            self.margin, self.config.margin_pitch, self.config.exclusion, self.margin_samples, self.margin_argmax
        ));
        if let Some(r) = self.min_real_part {
            out.push_str(&format!("min Re f = {r:.6e}\n"));
        }
        if let Some(seq) = &self.sequence {
            let s = &seq.schedules;
            out.push_str(&format!("J = {}, N = {}, delta = {}\n", s.count, s.truncation, s.delta));
            out.push_str(&format!("eps = {:?}\n", &s.eps[..s.truncation]));
            out.push_str(&format!("theta = {:?}\n", &s.thetas[..s.truncation]));
            out.push_str(&format!("zeta = {:?}\n", &s.zetas[..s.truncation]));
            out.push_str(&format!("weights = {:?}\n", s.weights));
            out.push_str(&format!(
                "anchor: eps = {}, theta = {}, delta^{}\n",
                s.anchor_eps, s.anchor_theta, s.anchor_power
            ));
            out.push_str(&format!("product tail bound = {:.3e}\n", s.tail_bound()));
            for (i, n) in seq.nodes.iter().enumerate() {
                out.push_str(&format!("z_{} = {} (eps {})\n", i + 1, n.point, n.eps));
            }
            out.push_str(&format!("Kronecker error = {:.3e}\n", seq.kronecker_error));
            out.push_str(&format!("norms = {:?}\n", seq.norms));
            out.push_str(&format!(
                "cone: max |arg f_j| = {:.6e}, modulus in [{:.3e}, {:.9}]\n",
                seq.max_arg, seq.min_modulus, seq.max_modulus
            ));
            for (j, fs) in seq.factors.iter().enumerate() {
                for r in fs {
                    out.push_str(&format!(
                        "factor j={} u={} alpha={:.6e} rho0={:.3e} dev={:.3e} arg={:.3e} anchor={:?}\n",
                        j + 1,
                        r.u,
                        r.sharpened.alpha,
                        r.sharpened.rho0,
                        r.sharpened.max_deviation,
                        r.sharpened.max_arg,
                        r.anchor
                    ));
                }
            }
        }
        out.push_str(&format!("passed: {}\n", self.passed()));
        out
    }
}

#[derive(Debug, Clone)]
pub struct PeakFunction {
    pub function: AnalyticFn,
    /// The summed sequence `f` with `f(z0) = 0` and `Re f > 0` elsewhere.
    pub criteria: Option<AnalyticFn>,
    pub report: PeakReport,
}

/// A function with `F(z0) = 1` and `|F| < 1` at every other sample of `K`.
///
/// Isolated points get the indicator of a disk around them. Other Type II
/// points are out of scope; interior points are refused.
pub fn peak_function(k: &Region, z0: Complex, config: &PeakConfig) -> Result<PeakFunction> {
    if k.contains(z0) == Location::Interior {
        return Err(Error::InteriorPoint(z0));
    }
    if let Some(gap) = k.isolation_gap(z0) {
        let f = AnalyticFn::indicator(z0, 0.5 * gap).labelled(format!("indicator of {z0}"));
        let report = margin_report(k, z0, &f, config, PeakKind::Isolated, None, None, 0.0)?;
        return Ok(PeakFunction {
            function: f,
            criteria: None,
            report,
        });
    }
    let schedules = match config.delta {
        Some(d) => Schedules::new(config.count, config.count, d)?,
        None => Schedules::standard(config.count)?,
    };
    let seq = zero_one_sequence(k, z0, &schedules, config.pitch)?;
    let terms = seq
        .functions
        .iter()
        .zip(&schedules.weights)
        .map(|(f, &a)| (c(a, 0.0), f.clone()))
        .collect();
    let f = AnalyticFn::cached(&AnalyticFn::sum(terms).labelled("sum a_i f_i"));
    let mut samples = k.sample_points(config.pitch);
    samples.extend(seq.nodes.iter().map(|n| n.point));
    let big_f = peak_criteria_transform(&f, z0, &samples)?.labelled(format!("peak function at {z0}"));
    let big_f = AnalyticFn::cached(&big_f);
    let mut min_re = f64::INFINITY;
    for &p in &samples {
        if !is_at(p, z0) {
            min_re = min_re.min(f.evaluate(p)?.re);
        }
    }
    // the weights are renormalized, so the series tail is 0
    let report = margin_report(k, z0, &big_f, config, PeakKind::Sequence, Some(min_re), Some(seq), 0.0)?;
    Ok(PeakFunction {
        function: big_f,
        criteria: Some(f),
        report,
    })
}

#[allow(clippy::too_many_arguments)]
fn margin_report(
    k: &Region,
    z0: Complex,
    f: &AnalyticFn,
    config: &PeakConfig,
    kind: PeakKind,
    min_real_part: Option<f64>,
    sequence: Option<ZeroOneSequence>,
    series_tail: f64,
) -> Result<PeakReport> {
    let value_at_z0 = f.evaluate(z0)?;
    let mut worst = f64::NEG_INFINITY;
    let mut argmax = z0;
    let mut count = 0;
    for p in k.sample_points(config.margin_pitch) {
        if (p - z0).norm() <= config.exclusion {
            continue;
        }
        count += 1;
        let m = f.evaluate(p)?.norm();
        if m > worst {
            worst = m;
            argmax = p;
        }
    }
    Ok(PeakReport {
        z0,
        kind,
        config: *config,
        value_at_z0,
        margin: 1.0 - worst.max(0.0),
        margin_argmax: argmax,
        margin_samples: count,
        min_real_part,
        series_tail,
        sequence,
    })
}
