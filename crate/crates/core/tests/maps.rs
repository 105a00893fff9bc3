use peakpoint_core::geometry::{arg, cis, principal_log, root_alpha, root_alpha_inv, Cone, RootMap};
use peakpoint_core::moebius::{
    cross_ratio_map, disk_automorphism, half_disk_slide, normalize_pair, rotation_fixing_minus_one,
    rotation_fixing_one, to_half_disk,
};
use peakpoint_core::teardrop::{
    alpha_for_collapse, collapse_distance, teardrop_boundary_point, teardrop_contains_exact,
};
use peakpoint_core::{c, Complex, Error};
use proptest::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

fn close(a: Complex, b: Complex, tol: f64) -> bool {
    (a - b).norm() <= tol
}

fn cut_plane() -> impl Strategy<Value = Complex> {
    (1e-3..10.0f64, -PI + 1e-3..PI - 1e-3).prop_map(|(r, t)| Complex::from_polar(r, t))
}

fn in_disk(r: f64) -> impl Strategy<Value = Complex> {
    (0.0..r, -PI..PI).prop_map(|(s, t)| Complex::from_polar(s, t))
}

#[test]
fn root_examples() {
    assert!(close(root_alpha(0.5, c(0.0, 1.0)).unwrap(), cis(PI / 4.0), 1e-15));
    assert_eq!(root_alpha(0.3, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    assert!(matches!(
        root_alpha(0.5, c(-2.0, 0.0)),
        Err(Error::BranchCutViolation(_))
    ));
    assert!(matches!(principal_log(c(0.0, 0.0)), Err(Error::BranchCutViolation(_))));
    assert!((arg(c(0.0, -1.0)).unwrap() + FRAC_PI_2).abs() < 1e-15);
    assert!(RootMap::new(0.0).is_err());
}

#[test]
fn cone_membership() {
    let cone = Cone::new(0.25).unwrap();
    assert!(cone.contains(cis(0.2 * PI)));
    assert!(!cone.contains(cis(0.3 * PI)));
    assert!(!cone.contains(c(0.0, 0.0)));
    assert!(!Cone::new(1.0).unwrap().contains(c(-1.0, 0.0)));
}

proptest! {
    #[test]
    fn root_round_trip(z in cut_plane(), alpha in 0.05..1.0f64) {
        let w = root_alpha(alpha, z).unwrap();
        let back = root_alpha_inv(alpha, w).unwrap();
        prop_assert!(close(back, z, 1e-9 * z.norm().max(1.0)));
    }

    #[test]
    fn root_modulus_and_argument(z in cut_plane(), alpha in 0.05..1.0f64) {
        let w = root_alpha(alpha, z).unwrap();
        prop_assert!((w.norm() - z.norm().powf(alpha)).abs() <= 1e-12 * w.norm().max(1.0));
        prop_assert!((arg(w).unwrap() - alpha * arg(z).unwrap()).abs() <= 1e-12);
        prop_assert!(Cone::new(alpha).unwrap().contains(w));
    }

    #[test]
    fn automorphisms_preserve_the_circle(t in -PI..PI, a in in_disk(0.95), rho in -PI..PI, s in -PI..PI) {
        let f = disk_automorphism(cis(rho), a).unwrap();
        prop_assert!((f.apply(cis(t)).unwrap().norm() - 1.0).abs() <= 1e-10);
        let z = Complex::from_polar(0.999 * (s.sin() * 0.5 + 0.5), t);
        prop_assert!(f.apply(z).unwrap().norm() < 1.0);
    }

    #[test]
    fn fixing_one_iff_rotation_formula(a in in_disk(0.9), rho in -PI..PI) {
        let fixed = disk_automorphism(rotation_fixing_one(a), a).unwrap();
        prop_assert!(close(fixed.apply(c(1.0, 0.0)).unwrap(), c(1.0, 0.0), 1e-10));
        let other = disk_automorphism(cis(rho), a).unwrap();
        let formula = (cis(rho) - rotation_fixing_one(a)).norm() <= 1e-10;
        let fixes = close(other.apply(c(1.0, 0.0)).unwrap(), c(1.0, 0.0), 1e-10);
        prop_assert_eq!(formula, fixes);
    }

    #[test]
    fn fixing_both_ends_forces_real_alpha(a in in_disk(0.9)) {
        let f = disk_automorphism(rotation_fixing_one(a), a).unwrap();
        let both = close(f.apply(c(-1.0, 0.0)).unwrap(), c(-1.0, 0.0), 1e-10);
        prop_assert_eq!(both, a.im.abs() <= 1e-10);
        let g = disk_automorphism(rotation_fixing_minus_one(a), a).unwrap();
        prop_assert!(close(g.apply(c(-1.0, 0.0)).unwrap(), c(-1.0, 0.0), 1e-10));
    }

    #[test]
    fn normalize_pair_hits_plus_minus_one(t1 in -PI..PI, gap in 1e-3..(2.0 * PI - 1e-3)) {
        let (v1, v2) = (cis(t1), cis(t1 + gap));
        let f = normalize_pair(v1, v2).unwrap();
        prop_assert!(close(f.apply(v1).unwrap(), c(1.0, 0.0), 1e-10));
        prop_assert!(close(f.apply(v2).unwrap(), c(-1.0, 0.0), 1e-10));
        prop_assert!((f.apply(cis(t1 + 0.5 * gap)).unwrap().norm() - 1.0).abs() <= 1e-10);
        prop_assert!(f.apply(c(0.0, 0.0)).unwrap().norm() < 1.0);
    }

    #[test]
    fn cross_ratio_interpolates(z in proptest::array::uniform6(in_disk(5.0))) {
        let d = |a: Complex, b: Complex| (a - b).norm();
        prop_assume!(d(z[0], z[1]) > 1e-2 && d(z[1], z[2]) > 1e-2 && d(z[0], z[2]) > 1e-2);
        prop_assume!(d(z[3], z[4]) > 1e-2 && d(z[4], z[5]) > 1e-2 && d(z[3], z[5]) > 1e-2);
        let m = cross_ratio_map(z[0], z[1], z[2], z[3], z[4], z[5]).unwrap();
        for i in 0..3 {
            prop_assert!(close(m.apply(z[i]).unwrap(), z[i + 3], 1e-10 * z[i + 3].norm().max(1.0) * 1e2));
        }
    }

    #[test]
    fn slide_is_a_self_map(w in in_disk(0.5), beta in 1e-3..(1.0 - 1e-3)) {
        let z = w + 0.5;
        let g = half_disk_slide(beta).unwrap();
        prop_assert!((g.apply(z).unwrap() - 0.5).norm() <= 0.5 + 1e-10);
    }

    #[test]
    fn teardrop_boundary_matches_exact_membership(alpha in 0.05..0.95f64, t in -1.5..1.5f64) {
        let p = teardrop_boundary_point(alpha, t).unwrap();
        prop_assert!(teardrop_contains_exact(alpha, p));
        prop_assert!(!teardrop_contains_exact(alpha, p * 1.01));
        prop_assert!(Cone::new(alpha / 2.0 + 1e-9).unwrap().contains(p));
    }
}

#[test]
fn normalize_pair_examples() {
    let id = normalize_pair(c(1.0, 0.0), c(-1.0, 0.0)).unwrap();
    for z in [c(0.3, 0.1), c(0.0, 1.0), c(-0.5, 0.0)] {
        assert!(close(id.apply(z).unwrap(), z, 1e-12));
    }
    let f = normalize_pair(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
    assert!(close(f.apply(c(1.0, 0.0)).unwrap(), c(1.0, 0.0), 1e-12));
    assert!(close(f.apply(c(0.0, 1.0)).unwrap(), c(-1.0, 0.0), 1e-12));
    // the automorphism sends its parameter alpha to 0
    assert!(close(f.apply(c(1.0, 2.0) / 5.0).unwrap(), c(0.0, 0.0), 1e-12));
    assert!(matches!(
        normalize_pair(c(0.0, 1.0), c(0.0, 1.0)),
        Err(Error::CoincidentPoints)
    ));
}

#[test]
fn half_disk_examples() {
    let h = to_half_disk();
    assert!(close(h.apply(c(1.0, 0.0)).unwrap(), c(1.0, 0.0), 1e-15));
    assert!(close(h.apply(c(-1.0, 0.0)).unwrap(), c(0.0, 0.0), 1e-15));
    assert!(close(h.apply(c(0.0, 1.0)).unwrap(), c(0.5, 0.5), 1e-15));
    let g = half_disk_slide(0.25).unwrap();
    assert!(close(g.apply(c(0.5, 0.0)).unwrap(), c(0.25, 0.0), 1e-15));
    let vals: Vec<f64> = [0.1, 0.01, 0.001]
        .iter()
        .map(|&b| half_disk_slide(b).unwrap().apply(c(0.7, 0.0)).unwrap().re)
        .collect();
    assert!(vals[0] > vals[1] && vals[1] > vals[2] && vals[2] < 1e-2);
}

#[test]
fn collapse_exponent_meets_target() {
    for &(rho, delta) in &[(0.1, 0.25), (0.3, 0.1), (0.05, 0.5)] {
        let a = alpha_for_collapse(rho, delta).unwrap();
        assert!(collapse_distance(a, rho, 4096) < delta);
        assert!(collapse_distance(a / 2.0, rho, 4096) < delta);
    }
}
