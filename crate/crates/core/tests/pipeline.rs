use peakpoint_core::boundary_sets::{maximal_set, quarter_power, verify_shilov_boundary};
use peakpoint_core::conformal::{pair_map, riemann_map, AnalyticFn};
use peakpoint_core::kissing_path::{certify, kissing_path_between, JordanCurve};
use peakpoint_core::moebius::disk_automorphism;
use peakpoint_core::peaking::{build_fuv, AnchorStatus, FactorParams};
use peakpoint_core::region::{notched_square, Region};
use peakpoint_core::{c, Complex, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn cross_ratio(z: [Complex; 4]) -> Complex {
    (z[0] - z[2]) * (z[1] - z[3]) / ((z[0] - z[3]) * (z[1] - z[2]))
}

#[test]
fn circle_map_preserves_cross_ratios() {
    let curve = JordanCurve::circle(c(0.0, 0.0), 1.0);
    let map = riemann_map(&curve, c(0.2, -0.1)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tested = 0;
    while tested < 100 {
        let z: [Complex; 4] =
            std::array::from_fn(|_| Complex::from_polar(rng.gen_range(0.0..0.8), rng.gen_range(-PI..PI)));
        let before = cross_ratio(z);
        if before.norm() >= 10.0 {
            continue;
        }
        let w = z.map(|p| map.eval(p).unwrap());
        assert!((cross_ratio(w) - before).norm() <= 1e-2, "{z:?}");
        tested += 1;
    }
}

#[test]
fn circle_map_is_deterministic() {
    let curve = JordanCurve::circle(c(0.5, 0.5), 0.7);
    let a = riemann_map(&curve, c(0.4, 0.6)).unwrap().boundary_values();
    let b = riemann_map(&curve, c(0.4, 0.6)).unwrap().boundary_values();
    assert!(a
        .iter()
        .zip(&b)
        .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits()));
}

#[test]
fn exterior_basepoint_is_rejected() {
    let curve = JordanCurve::circle(c(0.0, 0.0), 1.0);
    assert!(matches!(riemann_map(&curve, c(2.0, 0.0)), Err(Error::Precondition(_))));
    let exact = disk_automorphism(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    assert_eq!(exact.apply(c(0.5, 0.0)).unwrap(), c(-0.5, 0.0));
}

#[test]
fn pair_map_maximum_principle_and_injectivity() {
    let k = Region::unit_square(0.05);
    let (z1, z2) = (c(1.0, 0.0), c(0.0, 1.0));
    let kp = kissing_path_between(&k, z1, z2).unwrap();
    let g = pair_map(&k, &kp.curve).unwrap();
    let pitch = 0.05;
    let pts = k.sample_points(pitch);
    let mut inner: f64 = 0.0;
    let mut outer: f64 = 0.0;
    let mut values = Vec::new();
    for &p in &pts {
        let v = g.evaluate(p).unwrap();
        if k.depth(p) > 0.0 {
            inner = inner.max(v.norm());
        } else {
            outer = outer.max(v.norm());
        }
        values.push(v);
    }
    assert!(inner <= outer + 1e-6);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pairs = 0;
    while pairs < 1000 {
        let (i, j) = (rng.gen_range(0..pts.len()), rng.gen_range(0..pts.len()));
        if (pts[i] - pts[j]).norm() <= pitch {
            continue;
        }
        assert!((values[i] - values[j]).norm() > 1e-9, "{} {}", pts[i], pts[j]);
        pairs += 1;
    }
}

#[test]
fn notched_square_kissing_path() {
    let k = notched_square(0.01);
    let kp = kissing_path_between(&k, c(0.0, 0.5), c(1.0, 0.5)).unwrap();
    let cert = certify(&k, &kp.curve, 4 * 1024);
    assert!(cert.passed(), "{cert:?}");
    assert!(cert.min_clearance > 0.0);
}

#[test]
fn factor_has_all_six_properties() {
    let k = Region::unit_square(0.02);
    let (u, v) = (c(0.5, 1.0), c(0.0, 0.0));
    let params = FactorParams {
        zeta: 0.1,
        eps: 0.2,
        delta: 0.25,
        theta: PI / 32.0,
    };
    let pitch = 0.02;
    let fac = build_fuv(&k, u, v, u, params, pitch).unwrap();
    let f = &fac.function;
    let r = &fac.report;
    assert_eq!(r.anchor, AnchorStatus::Exact);
    assert!(r.norm <= 1.0 + 1e-6);
    assert!(f.evaluate(u).unwrap().norm() <= 1e-6);
    assert!((f.evaluate(v).unwrap() - 1.0).norm() <= 1e-6);
    assert!(r.min_modulus > 0.0 && r.min_distance_to_one > 0.0);
    for p in k.sample_points(pitch) {
        let w = f.evaluate(p).unwrap();
        if (p - u).norm() >= params.eps {
            assert!((w - 1.0).norm() < params.delta, "{p}");
        }
        if w.norm() > 0.0 {
            assert!(w.arg().abs() < params.theta, "{p}");
        }
    }
}

#[test]
fn squeeze_cannot_pull_a_pocket_point_to_zero() {
    // pushing shrinks the off-pocket moduli as well, so the next root undoes it
    let k = Region::unit_square(0.02);
    let params = FactorParams {
        zeta: 0.1,
        eps: 0.2,
        delta: 0.25,
        theta: PI / 4.0,
    };
    let r = build_fuv(&k, c(0.5, 1.0), c(0.0, 0.0), c(0.52, 1.0), params, 0.02);
    assert!(matches!(r, Err(Error::BetaSearchFailed)));
}

#[test]
fn quarter_power_examples() {
    assert_eq!(quarter_power(0.5).unwrap(), 3);
    assert_eq!(quarter_power(0.9).unwrap(), 14);
    assert_eq!(quarter_power(0.0).unwrap(), 1);
    assert!(matches!(quarter_power(1.0), Err(Error::RhoNotBelowOne(_))));
    for rho in [0.1, 0.3, 0.7, 0.99] {
        let n = quarter_power(rho).unwrap() as i32;
        assert!(rho.powi(n) < 0.25 && rho.powi(n - 1) >= 0.25 || n == 1);
    }
}

#[test]
fn polynomials_peak_on_the_boundary() {
    let k = Region::unit_disk(0.05);
    let z = AnalyticFn::var().labelled("z");
    let family = vec![
        z.clone(),
        AnalyticFn::power(2, &z).labelled("z^2"),
        AnalyticFn::constant(c(1.0, 0.0)),
    ];
    let report = verify_shilov_boundary(&k, &family, 0.05).unwrap();
    assert_eq!(report.checks.len(), 3);
    let ms = maximal_set(&z, &Region::unit_square(0.05), 0.05, &[]).unwrap();
    assert!(ms.touches_boundary);
    assert!(ms.maximizers.iter().all(|&p| (p - c(1.0, 1.0)).norm() < 1e-9));
    // a bump centred inside the square peaks in the interior
    let bump = AnalyticFn::indicator(c(0.5, 0.5), 0.01).labelled("bump");
    assert!(matches!(
        verify_shilov_boundary(&Region::unit_square(0.05), &[bump], 0.05),
        Err(Error::CounterexampleFound(_))
    ));
}
