//! Acceptance suite: one PASS/FAIL line per criterion.
mod common;

use peakpoint_core::boundary_sets::{harness_points, verify_all, HarnessConfig, PointOutcome, BAI_BOUND};
use peakpoint_core::chains::{simplify_chain, weak_chain, Chain, DiskCover};
use peakpoint_core::conformal::riemann_map;
use peakpoint_core::geometry::cis;
use peakpoint_core::kissing_path::{certify, kissing_path_between, JordanCurve};
use peakpoint_core::moebius::{disk_automorphism, normalize_pair, rotation_fixing_minus_one, rotation_fixing_one};
use peakpoint_core::peaking::{peak_function, PeakConfig, PeakKind};
use peakpoint_core::products::{euler_limit, euler_via_series, rudin_chain};
use peakpoint_core::region::{square_segment_point, Region};
use peakpoint_core::teardrop::teardrop_boundary_point;
use peakpoint_core::{c, Complex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::Instant;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn teardrop_inequality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut violations = 0;
    let mut closest = f64::INFINITY;
    for _ in 0..10_000 {
        let alpha = rng.gen_range(1e-6..1.0 - 1e-6);
        let theta = rng.gen_range(1e-6..FRAC_PI_2 - 1e-6);
        let lhs = teardrop_boundary_point(alpha, theta).map_err(|e| e.to_string())?.norm();
        let rhs = (alpha * theta).cos();
        if lhs >= rhs {
            violations += 1;
        }
        closest = closest.min(rhs - lhs);
    }
    check(
        violations == 0,
        format!("10000 samples, {violations} violations, smallest gap {closest:.3e}"),
    )
}

fn euler_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for r in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for k in 0..4 {
            let z = Complex::from_polar(r, 0.3 + k as f64 * FRAC_PI_2);
            let a = euler_limit(z, 1e-10).map_err(|e| e.to_string())?.value;
            let b = euler_via_series(z, 1e-10).map_err(|e| e.to_string())?;
            worst = worst.max((a - b).norm());
        }
    }
    // brute force: 2000 factors of (1 - 2^-j)
    let mut brute = 1.0f64;
    let mut p = 1.0f64;
    for _ in 0..2000 {
        p *= 0.5;
        brute *= 1.0 - p;
    }
    let half = euler_limit(c(0.5, 0.0), 1e-10).map_err(|e| e.to_string())?.value;
    let half_err = (half - brute).norm();
    let pent_err = (half - common::euler_pentagonal(c(0.5, 0.0))).norm();
    let mut min_value = f64::INFINITY;
    for i in 0..11 {
        let x = -0.9 + 0.18 * i as f64;
        let v = euler_limit(c(x, 0.0), 1e-10).map_err(|e| e.to_string())?.value;
        min_value = min_value.min(if v.im == 0.0 { v.re } else { f64::NEG_INFINITY });
    }
    check(
        worst <= 5e-10 && half_err <= 1e-10 && pent_err <= 1e-10 && min_value > 0.0,
        format!(
            "20-point grid max diff {worst:.3e} (<= 5e-10); z=1/2 vs brute force {half_err:.3e}, vs pentagonal {pent_err:.3e} (<= 1e-10); min over 11 real x {min_value:.3e} (> 0)"
        ),
    )
}

fn rudin_chain_order() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut violations = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(0..20);
        let us: Vec<Complex> = (0..n)
            .map(|_| Complex::from_polar(rng.gen_range(0.0..2.0), rng.gen_range(-PI..PI)))
            .collect();
        let (lhs, mid, rhs) = rudin_chain(&us);
        // one rounding unit of slack per factor
        let slack = |x: f64| x * (1.0 + 64.0 * f64::EPSILON) + 64.0 * f64::EPSILON;
        if !(lhs <= slack(mid) && mid <= slack(rhs)) {
            violations += 1;
        }
    }
    check(violations == 0, format!("10000 instances, {violations} violations"))
}

fn moebius_contracts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let t1 = rng.gen_range(-PI..PI);
        let t2 = t1 + rng.gen_range(1e-3..2.0 * PI - 1e-3);
        let (v1, v2) = (cis(t1), cis(t2));
        let f = normalize_pair(v1, v2).map_err(|e| e.to_string())?;
        let a = (f.apply(v1).map_err(|e| e.to_string())? - 1.0).norm();
        let b = (f.apply(v2).map_err(|e| e.to_string())? + 1.0).norm();
        worst = worst.max(a).max(b);
    }
    let one = c(1.0, 0.0);
    let mut disagreements = 0;
    for i in 0..1000 {
        let mut alpha = Complex::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(-PI..PI));
        if i % 4 == 0 {
            alpha.im = 0.0;
        }
        let rot = match i % 3 {
            0 => rotation_fixing_one(alpha),
            1 => rotation_fixing_minus_one(alpha),
            _ => cis(rng.gen_range(-PI..PI)),
        };
        let f = disk_automorphism(rot, alpha).map_err(|e| e.to_string())?;
        let fixes_one = (f.apply(one).map_err(|e| e.to_string())? - one).norm() <= 1e-10;
        let fixes_minus = (f.apply(-one).map_err(|e| e.to_string())? + one).norm() <= 1e-10;
        let pred_one = (rot - rotation_fixing_one(alpha)).norm() <= 1e-10;
        let pred_minus = (rot - rotation_fixing_minus_one(alpha)).norm() <= 1e-10;
        let pred_both = pred_one && alpha.im.abs() <= 1e-10;
        if fixes_one != pred_one || fixes_minus != pred_minus || (fixes_one && fixes_minus) != pred_both {
            disagreements += 1;
        }
    }
    check(
        worst <= 1e-10 && disagreements == 0,
        format!("1000 pairs, max endpoint error {worst:.3e} (<= 1e-10); 1000 (c, alpha), {disagreements} predicate disagreements"),
    )
}

/// Simple-chain predicate written out independently of the library.
fn exactly_simple(cover: &DiskCover, chain: &Chain) -> bool {
    let d = cover.disks();
    let idx = &chain.indices;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            let meet = (d[idx[i]].center - d[idx[j]].center).norm() < d[idx[i]].radius + d[idx[j]].radius - 1e-12;
            if idx[i] == idx[j] || meet != (j == i + 1) {
                return false;
            }
        }
    }
    !idx.is_empty()
}

fn chain_extraction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut linked, mut small, mut failures) = (0, 0, Vec::new());
    for i in 0..100 {
        let n = 2 + i % 39;
        let cover = common::random_cover(&mut rng, n);
        let x = cover.disks()[0].center;
        let y = cover.disks()[n - 1].center;
        let oracle = common::linked(&cover, x, y);
        let found = weak_chain(&cover, x, y);
        if found.is_ok() != oracle {
            failures.push(format!("cover {i}: weak_chain {} vs oracle {oracle}", found.is_ok()));
            continue;
        }
        if let Ok(ch) = found {
            linked += 1;
            match simplify_chain(&cover, &ch) {
                Ok(s) if exactly_simple(&cover, &s) && s.links(&cover, x, y) => {}
                other => failures.push(format!("cover {i}: simplify gave {other:?}")),
            }
        }
        if n <= 12 {
            small += 1;
            if common::simple_chain_exists(&cover, x, y) != oracle {
                failures.push(format!("cover {i}: exhaustive search disagrees"));
            }
        }
    }
    check(
        failures.is_empty(),
        format!("100 covers ({linked} linked, {small} with <= 12 disks), failures: {failures:?}"),
    )
}

fn kissing_paths() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, k, z1, z2) in [
        ("square corners", Region::unit_square(0.02), c(0.0, 0.0), c(1.0, 1.0)),
        ("disk antipodes", Region::unit_disk(0.02), c(1.0, 0.0), c(-1.0, 0.0)),
    ] {
        let kp = kissing_path_between(&k, z1, z2).map_err(|e| format!("{name}: {e}"))?;
        let cert = certify(&k, &kp.curve, 4 * 1024);
        ok &= cert.passed();
        lines.push(format!(
            "{name}: contacts {}, clearance {:.3e}, interior exterior to K {}, winding 0 about K {}, simple {}, {} samples",
            cert.contacts_on_curve, cert.min_clearance, cert.interior_exterior_to_k, cert.k_winding_zero, cert.simple, cert.samples
        ));
    }
    check(ok, lines.join("; "))
}

fn riemann_calibration() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut monotone = true;
    for (center, radius, base) in [(c(0.0, 0.0), 1.0, c(0.3, -0.2)), (c(2.0, 1.0), 0.5, c(2.1, 1.2))] {
        let curve = JordanCurve::circle(center, radius);
        let map = riemann_map(&curve, base).map_err(|e| e.to_string())?;
        monotone &= map.boundary_angles().windows(2).all(|w| w[1] > w[0]);
        let map = map.normalize_at(center + radius).map_err(|e| e.to_string())?;
        let a = (base - center) / radius;
        let exact = disk_automorphism(c(1.0, 0.0), a).map_err(|e| e.to_string())?;
        let at_one = exact.apply(c(1.0, 0.0)).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let w = Complex::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(-PI..PI));
            let p = center + radius * w;
            let want = exact.apply(w).map_err(|e| e.to_string())? / at_one;
            worst = worst.max((map.eval(p).map_err(|e| e.to_string())? - want).norm());
        }
    }
    check(
        worst <= 1e-3 && monotone,
        format!("2 circles x 100 probes, max deviation {worst:.3e} (<= 1e-3), boundary correspondence strictly increasing: {monotone}"),
    )
}

fn peak_functions() -> Outcome {
    let config = PeakConfig::default();
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, k, z0) in [
        ("square", Region::unit_square(0.02), c(0.5, 1.0)),
        ("disk", Region::unit_disk(0.02), c(1.0, 0.0)),
    ] {
        let p = peak_function(&k, z0, &config).map_err(|e| format!("{name}: {e}"))?;
        let r = &p.report;
        let kron = r.sequence.as_ref().map_or(f64::INFINITY, |s| s.kronecker_error);
        let err = (r.value_at_z0 - 1.0).norm();
        ok &= r.kind == PeakKind::Sequence && err <= 1e-6 && r.margin > 0.0 && kron <= 1e-3;
        lines.push(format!(
            "{name} z0={z0}: |F(z0)-1| {err:.1e}, m = {:.4e} over {} samples (pitch {}, off D(z0;{})), Kronecker error {kron:.1e} (J={})",
            r.margin, r.margin_samples, config.margin_pitch, config.exclusion, config.count
        ));
    }
    check(ok, lines.join("; "))
}

fn harness() -> Outcome {
    let config = HarnessConfig::default();
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, k, count) in [
        ("square", Region::unit_square(0.02), 3),
        ("disk", Region::unit_disk(0.02), 2),
        ("square+segment+point", square_segment_point(0.02), 1),
    ] {
        let points = harness_points(&k, count, 0.05).map_err(|e| e.to_string())?;
        let report = verify_all(&k, &points, &config);
        let (mut pass, mut refused, mut skipped) = (0, 0, 0);
        for p in &report.points {
            match &p.outcome {
                PointOutcome::Checked(ch) => {
                    let bai = ch.bai_norms.iter().all(|&n| n <= BAI_BOUND);
                    let quarter = ch.quarter.value_at_z0.re > 0.75 && ch.quarter.outside_max < 0.25;
                    let strong = ch.strong.len() == 3 && ch.strong.iter().all(|s| s.passed());
                    if p.passed() && bai && quarter && strong {
                        pass += 1;
                    } else {
                        ok = false;
                        lines.push(format!("{name} {}: checks failed", p.z0));
                    }
                }
                PointOutcome::Refused(why) => {
                    refused += 1;
                    ok &= why.contains("maximum modulus principle");
                }
                PointOutcome::Skipped(_) => skipped += 1,
                PointOutcome::Failed(why) => {
                    ok = false;
                    lines.push(format!("{name} {}: {why}", p.z0));
                }
            }
        }
        ok &= report.passed() && refused >= 1;
        lines.push(format!(
            "{name}: {pass} passed, {refused} interior refused, {skipped} type II skipped"
        ));
    }
    check(ok, lines.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("teardrop inequality", teardrop_inequality),
        ("Euler product identity", euler_identity),
        ("Rudin product chain", rudin_chain_order),
        ("Moebius contracts", moebius_contracts),
        ("chain extraction", chain_extraction),
        ("kissing paths", kissing_paths),
        ("Riemann map calibration", riemann_calibration),
        ("peak functions", peak_functions),
        ("boundary-set harness", harness),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("criterion {} {name}: PASS ({secs:.1}s) {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({secs:.1}s) {d}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
