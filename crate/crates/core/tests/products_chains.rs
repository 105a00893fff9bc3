mod common;

use peakpoint_core::chains::{simplify_chain, weak_chain, Chain, DiskCover};
use peakpoint_core::products::{euler_limit, euler_partial, euler_via_series, rudin_chain, tail_bound};
use peakpoint_core::{c, Complex, Error};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn small() -> impl Strategy<Value = Complex> {
    (0.0..2.0f64, -PI..PI).prop_map(|(r, t)| Complex::from_polar(r, t))
}

proptest! {
    #[test]
    fn rudin_chain_is_ordered(us in proptest::collection::vec(small(), 0..12)) {
        let (lhs, mid, rhs) = rudin_chain(&us);
        prop_assert!(lhs <= mid * (1.0 + 1e-12) + 1e-12);
        prop_assert!(mid <= rhs * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn euler_tail_bound_holds(r in 0.0..0.9f64, t in -PI..PI, n in 1u64..60, k in 1u64..4) {
        let z = Complex::from_polar(r, t);
        let diff = (euler_partial(z, n + k) - euler_partial(z, n)).norm();
        prop_assert!(diff <= tail_bound(r, n) * (1.0 + 1e-9) + 1e-15);
    }

    #[test]
    fn euler_matches_pentagonal_series(r in 0.0..0.9f64, t in -PI..PI) {
        let z = Complex::from_polar(r, t);
        let v = euler_limit(z, 1e-10).unwrap().value;
        prop_assert!((v - common::euler_pentagonal(z)).norm() <= 5e-10);
    }

    #[test]
    fn euler_positive_on_the_real_segment(x in -0.99..0.99f64) {
        let v = euler_limit(c(x, 0.0), 1e-8).unwrap().value;
        prop_assert!(v.re > 0.0 && v.im == 0.0);
    }

    #[test]
    fn chains_reverse(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cover = common::random_cover(&mut rng, 15);
        let (x, y) = (c(0.3, 0.3), c(3.7, 3.7));
        if let Ok(ch) = weak_chain(&cover, x, y) {
            prop_assert!(ch.links(&cover, x, y));
            let back = weak_chain(&cover, y, x).unwrap();
            prop_assert!(back.reversed().is_weak(&cover));
            let s = simplify_chain(&cover, &ch).unwrap();
            prop_assert!(s.is_simple(&cover) && s.reversed().is_simple(&cover));
            prop_assert!(s.links(&cover, x, y));
        } else {
            prop_assert!(!common::linked(&cover, x, y));
        }
    }
}

#[test]
fn euler_examples() {
    assert_eq!(euler_limit(c(0.0, 0.0), 1e-10).unwrap().value, c(1.0, 0.0));
    let half = euler_limit(c(0.5, 0.0), 1e-12).unwrap().value;
    assert!((half.re - 0.288_788_095_086_602_4).abs() < 1e-12);
    assert!((euler_via_series(c(0.5, 0.0), 1e-12).unwrap() - half).norm() < 1e-11);
    assert!(matches!(euler_limit(c(0.9995, 0.0), 1e-6), Err(Error::NotInDomain(_))));
}

#[test]
fn rudin_chain_examples() {
    assert_eq!(rudin_chain(&[]), (0.0, 0.0, 0.0));
    let (l, m, r) = rudin_chain(&[c(0.1, 0.0), c(-0.1, 0.0)]);
    assert!((l - 0.01).abs() < 1e-15 && (m - 0.21).abs() < 1e-15);
    assert!((r - 0.2f64.exp_m1()).abs() < 1e-15);
}

#[test]
fn chain_examples() {
    let cover = DiskCover::uniform(&[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)], 0.6);
    let ch = weak_chain(&cover, c(0.0, 0.0), c(2.0, 0.0)).unwrap();
    assert_eq!(ch.indices, vec![0, 1, 2]);
    assert!(ch.is_simple(&cover));

    // tangent disks do not overlap
    let tangent = DiskCover::uniform(&[c(0.0, 0.0), c(1.0, 0.0)], 0.5);
    assert_eq!(weak_chain(&tangent, c(0.0, 0.0), c(1.0, 0.0)), Err(Error::NotLinked));

    let tight = DiskCover::uniform(&[c(0.0, 0.0), c(0.5, 0.0), c(1.0, 0.0), c(1.5, 0.0)], 0.6);
    let s = simplify_chain(&tight, &Chain::new(vec![0, 1, 2, 3])).unwrap();
    assert!(s.is_simple(&tight));
    assert_eq!((s.indices[0], *s.indices.last().unwrap()), (0, 3));
    assert_eq!(
        simplify_chain(&tight, &Chain::new(vec![0, 3])),
        Err(Error::NotWeakChain)
    );
}
