//! Maximal sets, Shilov checks, bounded approximate identities, the Bishop
//! quarter property and strong boundary points, all at grid scale.

use crate::conformal::AnalyticFn;
use crate::error::{Error, Result};
use crate::geometry::{c, Complex};
use crate::peaking::{peak_function, PeakConfig, PeakFunction, PeakKind};
use crate::region::{BoundaryClass, Location, Region};
use crate::teardrop::alpha_for_collapse;
use serde::Serialize;

/// Relative tolerance for membership in a maximal set.
pub const MAXIMIZER_TOL: f64 = 1e-6;
/// Uniform bound of the bai sequences.
pub const BAI_BOUND: f64 = 1.0 + 1e-6;
/// `epsilon` of the bai schedule `epsilon / 2^n`.
pub const BAI_EPSILON: f64 = 0.5;

#[derive(Debug, Clone, Serialize)]
pub struct MaximalSetReport {
    #[serde(skip)]
    pub function: AnalyticFn,
    pub label: String,
    pub grid_pitch: f64,
    pub max: f64,
    pub maximizers: Vec<Complex>,
    pub touches_boundary: bool,
}

/// Grid samples of `K` (and `extra`) where `|f|` is within `1e-6 ||f||` of the max.
pub fn maximal_set(f: &AnalyticFn, k: &Region, pitch: f64, extra: &[Complex]) -> Result<MaximalSetReport> {
    let mut pts = k.sample_points(pitch);
    pts.extend_from_slice(extra);
    let values = pts
        .iter()
        .map(|&p| Ok((p, f.evaluate(p)?.norm())))
        .collect::<Result<Vec<_>>>()?;
    let max = values.iter().map(|v| v.1).fold(0.0, f64::max);
    let maximizers: Vec<Complex> = values
        .iter()
        .filter(|v| v.1 >= max - MAXIMIZER_TOL * max)
        .map(|v| v.0)
        .collect();
    let touches_boundary = maximizers.iter().any(|&p| k.depth(p) <= pitch);
    Ok(MaximalSetReport {
        function: f.clone(),
        label: f.label().to_string(),
        grid_pitch: pitch,
        max,
        maximizers,
        touches_boundary,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ShilovReport {
    pub checks: Vec<MaximalSetReport>,
}

impl ShilovReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.checks {
            out.push_str(&format!(
                "{}: max {:.9} at {} maximizer(s), touches boundary: {}\n",
                r.label,
                r.max,
                r.maximizers.len(),
                r.touches_boundary
            ));
        }
        out
    }
}

/// Every maximal set of the family meets the boundary of `K`.
pub fn verify_shilov_boundary(k: &Region, family: &[AnalyticFn], pitch: f64) -> Result<ShilovReport> {
    if family.is_empty() {
        return Err(Error::Precondition("empty family".into()));
    }
    let mut checks = Vec::with_capacity(family.len());
    for f in family {
        let r = maximal_set(f, k, pitch, &[])?;
        if !r.touches_boundary {
            return Err(Error::CounterexampleFound(format!(
                "{} attains its grid maximum {} only inside K",
                r.label, r.max
            )));
        }
        checks.push(r);
    }
    Ok(ShilovReport { checks })
}

fn refuse_interior(k: &Region, z0: Complex) -> Result<()> {
    match k.contains(z0) {
        Location::Interior => Err(Error::InteriorPoint(z0)),
        Location::Exterior => Err(Error::NotOnBoundary(z0)),
        Location::Boundary => Ok(()),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BaiSequence {
    #[serde(skip)]
    pub functions: Vec<AnalyticFn>,
    pub bound: f64,
    pub anchor: Complex,
    pub alphas: Vec<f64>,
    pub norms: Vec<f64>,
}

/// `f_n = Z^{alpha_n} o f` for the `{0} u D(1/2;1/2)`-valued `f = (1 - F)/2`
/// of the peak function, with `alpha_n` collapsing the piece off
/// `D(0; eps/2^n)` into `D(1; eps/2^n)`; the constant indicator for an
/// isolated point.
pub fn bai_sequence(k: &Region, peak: &PeakFunction, length: usize, pitch: f64) -> Result<BaiSequence> {
    let z0 = peak.report.z0;
    refuse_interior(k, z0)?;
    let pts = k.sample_points(pitch);
    let mut functions = Vec::with_capacity(length);
    let mut alphas = Vec::with_capacity(length);
    match peak.report.kind {
        PeakKind::Isolated => {
            let e = AnalyticFn::affine(c(-1.0, 0.0), c(1.0, 0.0), &peak.function).labelled("1 - indicator");
            for _ in 0..length {
                functions.push(e.clone());
            }
        }
        PeakKind::Sequence => {
            let f = AnalyticFn::cached(
                &AnalyticFn::affine(c(-0.5, 0.0), c(0.5, 0.0), &peak.function).labelled("(1 - F)/2"),
            );
            for n in 1..=length {
                let t = BAI_EPSILON / 2f64.powi(n as i32);
                let alpha = alpha_for_collapse(t, t)?;
                alphas.push(alpha);
                functions.push(AnalyticFn::cached(
                    &AnalyticFn::root(alpha, &f).labelled(format!("f_{n}")),
                ));
            }
        }
    }
    let mut norms = Vec::with_capacity(length);
    for f in &functions {
        let norm = f.grid_norm_on(&pts)?.value.max(f.evaluate(z0)?.norm());
        if norm > BAI_BOUND {
            return Err(Error::CertificateFailed(format!(
                "bai member norm {norm} exceeds {BAI_BOUND}"
            )));
        }
        norms.push(norm);
    }
    Ok(BaiSequence {
        functions,
        bound: BAI_BOUND,
        anchor: z0,
        alphas,
        norms,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BaiTest {
    pub label: String,
    /// `d_n = ||g f_n - g||` over the grid.
    pub distances: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BaiReport {
    /// The criterion is a finite-sample surrogate of `g f_n -> g`.
    pub kind: &'static str,
    pub tests: Vec<BaiTest>,
}

impl BaiReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tests {
            out.push_str(&format!("{} [{}]: d_n = {:?}\n", t.label, self.kind, t.distances));
        }
        out
    }
}

/// Checks that `d_n = ||g f_n - g||` is non-increasing after `d_1` and ends
/// below `d_1 / 2`, or vanishes identically, for every test `g` with `g(z0) = 0`.
pub fn verify_bai(k: &Region, seq: &BaiSequence, tests: &[AnalyticFn], pitch: f64) -> Result<BaiReport> {
    let pts = k.sample_points(pitch);
    let mut out = Vec::with_capacity(tests.len());
    for g in tests {
        let g0 = g.evaluate(seq.anchor)?;
        if g0.norm() > 1e-6 {
            return Err(Error::Precondition(format!(
                "{} does not vanish at {} ({g0})",
                g.label(),
                seq.anchor
            )));
        }
        let gv = pts.iter().map(|&p| g.evaluate(p)).collect::<Result<Vec<_>>>()?;
        let mut distances = Vec::with_capacity(seq.functions.len());
        for f in &seq.functions {
            let mut d: f64 = 0.0;
            for (&p, &w) in pts.iter().zip(&gv) {
                d = d.max((w * f.evaluate(p)? - w).norm());
            }
            distances.push(d);
        }
        let all_zero = distances.iter().all(|&d| d == 0.0);
        let monotone = distances.windows(2).skip(1).all(|w| w[1] <= w[0] * (1.0 + 1e-12));
        let halved = distances.last().copied().unwrap_or(0.0) < 0.5 * distances.first().copied().unwrap_or(0.0);
        if !all_zero && !(monotone && halved) {
            return Err(Error::SurrogateFailed(format!("{}: d_n = {distances:?}", g.label())));
        }
        out.push(BaiTest {
            label: g.label().to_string(),
            distances,
        });
    }
    Ok(BaiReport {
        kind: "SURROGATE",
        tests: out,
    })
}

/// `n = ceil(log(1/4) / log(rho))`, raised by one when `rho^n = 1/4` exactly
/// so that the inequality is strict.
pub fn quarter_power(rho: f64) -> Result<u32> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::RhoNotBelowOne(rho));
    }
    if rho == 0.0 {
        return Ok(1);
    }
    let mut n = ((0.25f64).ln() / rho.ln()).ceil().max(1.0) as u32;
    while rho.powi(n as i32) >= 0.25 {
        n += 1;
    }
    Ok(n)
}

#[derive(Debug, Clone, Serialize)]
pub struct QuarterReport {
    pub z0: Complex,
    pub radius: f64,
    pub rho: f64,
    pub power: u32,
    pub value_at_z0: Complex,
    pub norm: f64,
    /// `max |g^n|` over grid samples outside `D(z0; radius)`.
    pub outside_max: f64,
    pub samples: usize,
}

impl QuarterReport {
    pub fn passed(&self) -> bool {
        self.norm <= 1.0 + 1e-9
            && self.value_at_z0.re > 0.75
            && self.value_at_z0.im.abs() <= 1e-9
            && self.outside_max < 0.25
    }
}

/// `g^n` with `g = (1 + F)/2`: above `3/4` at `z0`, below `1/4` off `D(z0; radius)`.
pub fn bishop_quarter(k: &Region, peak: &PeakFunction, radius: f64, pitch: f64) -> Result<(AnalyticFn, QuarterReport)> {
    let z0 = peak.report.z0;
    refuse_interior(k, z0)?;
    let g = AnalyticFn::cached(&AnalyticFn::affine(c(0.5, 0.0), c(0.5, 0.0), &peak.function).labelled("(1 + F)/2"));
    let pts = k.sample_points(pitch);
    let outside: Vec<Complex> = pts.iter().copied().filter(|p| (p - z0).norm() >= radius).collect();
    let mut rho: f64 = 0.0;
    for &p in &outside {
        rho = rho.max(g.evaluate(p)?.norm());
    }
    let power = quarter_power(rho)?;
    let gn = AnalyticFn::cached(&AnalyticFn::power(power, &g).labelled(format!("((1 + F)/2)^{power}")));
    let mut outside_max: f64 = 0.0;
    for &p in &outside {
        outside_max = outside_max.max(gn.evaluate(p)?.norm());
    }
    let norm = gn.grid_norm_on(&pts)?.value.max(gn.evaluate(z0)?.norm());
    let report = QuarterReport {
        z0,
        radius,
        rho,
        power,
        value_at_z0: gn.evaluate(z0)?,
        norm,
        outside_max,
        samples: outside.len(),
    };
    Ok((gn, report))
}

#[derive(Debug, Clone, Serialize)]
pub struct StrongCertificate {
    pub radius: f64,
    pub value_at_z0: Complex,
    pub norm: f64,
    /// `max |F|` over grid samples outside `D(z0; radius)`.
    pub outside_max: f64,
    pub samples: usize,
}

impl StrongCertificate {
    pub fn passed(&self) -> bool {
        (self.value_at_z0 - 1.0).norm() <= 1e-6 && (self.norm - 1.0).abs() <= 1e-6 && self.outside_max < 1.0
    }
}

/// For each radius, the peak function certifies `||F|| = F(z0) = 1` and
/// `|F| < 1` off `D(z0; r)`.
pub fn strong_boundary_check(
    k: &Region,
    peak: &PeakFunction,
    radii: &[f64],
    pitch: f64,
) -> Result<Vec<StrongCertificate>> {
    let z0 = peak.report.z0;
    refuse_interior(k, z0)?;
    let pts = k.sample_points(pitch);
    let values = pts
        .iter()
        .map(|&p| Ok((p, peak.function.evaluate(p)?.norm())))
        .collect::<Result<Vec<_>>>()?;
    let value_at_z0 = peak.function.evaluate(z0)?;
    let norm = values.iter().map(|v| v.1).fold(value_at_z0.norm(), f64::max);
    let mut out = Vec::with_capacity(radii.len());
    for &r in radii {
        if !(r > 0.0) {
            return Err(Error::ParameterOutOfRange(format!("radius = {r}")));
        }
        let outside: Vec<f64> = values.iter().filter(|v| (v.0 - z0).norm() >= r).map(|v| v.1).collect();
        out.push(StrongCertificate {
            radius: r,
            value_at_z0,
            norm,
            outside_max: outside.iter().copied().fold(0.0, f64::max),
            samples: outside.len(),
        });
    }
    Ok(out)
}

/// Outcome of the harness at one point.
#[derive(Debug, Clone, Serialize)]
pub enum PointOutcome {
    Checked(Box<PointChecks>),
    Skipped(String),
    Refused(String),
    Failed(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct PointChecks {
    pub kind: PeakKind,
    pub peak_margin: f64,
    pub peak_passed: bool,
    pub bai_norms: Vec<f64>,
    pub bai: BaiReport,
    pub quarter: QuarterReport,
    pub strong: Vec<StrongCertificate>,
    pub maximal_set_at_z0: bool,
}

impl PointChecks {
    pub fn passed(&self) -> bool {
        self.peak_passed && self.quarter.passed() && self.strong.iter().all(|s| s.passed()) && self.maximal_set_at_z0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PointReport {
    pub z0: Complex,
    pub outcome: PointOutcome,
}

impl PointReport {
    pub fn passed(&self) -> bool {
        match &self.outcome {
            PointOutcome::Checked(c) => c.passed(),
            PointOutcome::Skipped(_) | PointOutcome::Refused(_) => true,
            PointOutcome::Failed(_) => false,
        }
    }

    pub fn status(&self) -> &'static str {
        match &self.outcome {
            PointOutcome::Checked(c) if c.passed() => "PASS",
            PointOutcome::Checked(_) => "FAIL",
            PointOutcome::Skipped(_) => "SKIPPED",
            PointOutcome::Refused(_) => "REFUSED",
            PointOutcome::Failed(_) => "FAIL",
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct HarnessConfig {
    pub peak: PeakConfig,
    pub bai_length: usize,
    pub quarter_radius: f64,
    pub strong_radii: [f64; 3],
    pub pitch: f64,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            peak: PeakConfig::default(),
            bai_length: 5,
            quarter_radius: 0.1,
            strong_radii: [0.4, 0.2, 0.1],
            pitch: 0.02,
        }
    }
}

/// Peak function, bai sequence, quarter property and strong-boundary
/// certificates at `z0`. Interior points are refused and non-isolated type II
/// points are skipped.
pub fn check_point(k: &Region, z0: Complex, config: &HarnessConfig) -> PointReport {
    check_point_with_peak(k, z0, config).0
}

fn check_point_with_peak(k: &Region, z0: Complex, config: &HarnessConfig) -> (PointReport, Option<AnalyticFn>) {
    let (outcome, peak) = match check_point_inner(k, z0, config) {
        Ok((c, f)) => (PointOutcome::Checked(Box::new(c)), Some(f)),
        Err(e @ Error::TypeIIUnsupported(_)) => (PointOutcome::Skipped(e.to_string()), None),
        Err(e @ Error::InteriorPoint(_)) => (PointOutcome::Refused(e.to_string()), None),
        Err(e) => (PointOutcome::Failed(e.to_string()), None),
    };
    (PointReport { z0, outcome }, peak)
}

fn check_point_inner(k: &Region, z0: Complex, config: &HarnessConfig) -> Result<(PointChecks, AnalyticFn)> {
    refuse_interior(k, z0)?;
    let peak = peak_function(k, z0, &config.peak)?;
    let seq = bai_sequence(k, &peak, config.bai_length, config.pitch)?;
    let tests = bai_tests(&peak);
    let bai = verify_bai(k, &seq, &tests, config.pitch)?;
    let (_, quarter) = bishop_quarter(k, &peak, config.quarter_radius, config.pitch)?;
    let strong = strong_boundary_check(k, &peak, &config.strong_radii, config.pitch)?;
    let ms = maximal_set(&peak.function, k, config.pitch, &[z0])?;
    let maximal_set_at_z0 = ms.maximizers.iter().all(|&p| (p - z0).norm() <= config.pitch);
    let checks = PointChecks {
        kind: peak.report.kind,
        peak_margin: peak.report.margin,
        peak_passed: peak.report.passed(),
        bai_norms: seq.norms,
        bai,
        quarter,
        strong,
        maximal_set_at_z0,
    };
    Ok((checks, peak.function))
}

/// Test functions vanishing at `z0`: `z - z0`, `(z - z0)^2` and `1 - F`.
fn bai_tests(peak: &PeakFunction) -> Vec<AnalyticFn> {
    let z0 = peak.report.z0;
    let id = AnalyticFn::var();
    let lin = AnalyticFn::affine(c(1.0, 0.0), -z0, &id).labelled(format!("z - {z0}"));
    let sq = AnalyticFn::power(2, &lin).labelled(format!("(z - {z0})^2"));
    let mut out = vec![AnalyticFn::constant(c(0.0, 0.0)).labelled("0"), lin, sq];
    if peak.report.kind == PeakKind::Sequence {
        out.push(AnalyticFn::affine(c(-1.0, 0.0), c(1.0, 0.0), &peak.function).labelled("1 - F"));
    }
    out
}

/// Points exercised by [`verify_all`]: `count` evenly spaced type I samples,
/// every isolated point, one non-isolated type II sample and the deepest
/// interior grid point.
pub fn harness_points(k: &Region, count: usize, spacing: f64) -> Result<Vec<Complex>> {
    let samples = k.sample_boundary(spacing)?;
    let type1: Vec<Complex> = samples
        .iter()
        .filter(|s| s.class == BoundaryClass::TypeI)
        .map(|s| s.point)
        .collect();
    let mut points = Vec::new();
    let n = count.min(type1.len());
    for i in 0..n {
        points.push(type1[i * type1.len() / n]);
    }
    let mut type2_seen = false;
    for s in samples.iter().filter(|s| s.class == BoundaryClass::TypeII) {
        if k.isolation_gap(s.point).is_some() {
            points.push(s.point);
        } else if !type2_seen {
            type2_seen = true;
            points.push(s.point);
        }
    }
    if let Some(p) = k
        .sample_points(spacing)
        .into_iter()
        .filter(|&p| k.depth(p) > 0.0)
        .max_by(|a, b| k.depth(*a).total_cmp(&k.depth(*b)))
    {
        points.push(p);
    }
    Ok(points)
}

#[derive(Debug, Clone, Serialize)]
pub struct HarnessReport {
    pub points: Vec<PointReport>,
    pub shilov: Option<ShilovReport>,
    pub shilov_error: Option<String>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.points.iter().all(|p| p.passed()) && self.shilov_error.is_none()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("point | kind | peak m | bai norms | quarter n, max | strong (r: max) | status\n");
        for p in &self.points {
            match &p.outcome {
                PointOutcome::Checked(c) => {
                    let strong: Vec<String> = c
                        .strong
                        .iter()
                        .map(|s| format!("{}: {:.6}", s.radius, s.outside_max))
                        .collect();
                    out.push_str(&format!(
                        "{} | {:?} | {:.6e} | max {:.9} | {}, {:.3e} | {} | {}\n",
                        p.z0,
                        c.kind,
                        c.peak_margin,
                        c.bai_norms.iter().copied().fold(0.0, f64::max),
                        c.quarter.power,
                        c.quarter.outside_max,
                        strong.join(", "),
                        p.status()
                    ));
                }
                PointOutcome::Skipped(why) | PointOutcome::Refused(why) | PointOutcome::Failed(why) => {
                    out.push_str(&format!("{} | {} ({why})\n", p.z0, p.status()));
                }
            }
        }
        if let Some(s) = &self.shilov {
            out.push_str("maximal sets:\n");
            out.push_str(&s.to_text());
        }
        if let Some(e) = &self.shilov_error {
            out.push_str(&format!("maximal sets: {e}\n"));
        }
        out.push_str(&format!("passed: {}\n", self.passed()));
        out
    }
}

/// Runs [`check_point`] at each point and the maximal-set check over
/// `z`, `z^2` and the constructed peak functions.
pub fn verify_all(k: &Region, points: &[Complex], config: &HarnessConfig) -> HarnessReport {
    let mut family = vec![
        AnalyticFn::var().labelled("z"),
        AnalyticFn::power(2, &AnalyticFn::var()).labelled("z^2"),
        AnalyticFn::constant(c(1.0, 0.0)).labelled("1"),
    ];
    let mut reports = Vec::with_capacity(points.len());
    for &z0 in points {
        let (r, peak) = check_point_with_peak(k, z0, config);
        family.extend(peak);
        reports.push(r);
    }
    let (shilov, shilov_error) = match verify_shilov_boundary(k, &family, config.pitch) {
        Ok(s) => (Some(s), None),
        Err(e) => (None, Some(e.to_string())),
    };
    HarnessReport {
        points: reports,
        shilov,
        shilov_error,
    }
}
