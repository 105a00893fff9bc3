//! Independent oracles shared by the integration targets.
#![allow(dead_code)]

use peakpoint_core::chains::DiskCover;
use peakpoint_core::geometry::Disk;
use peakpoint_core::{c, Complex};
use rand::Rng;

/// Euler function by the pentagonal number theorem.
pub fn euler_pentagonal(z: Complex) -> Complex {
    let mut sum = Complex::new(1.0, 0.0);
    for k in 1..200i64 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let a = z.powi((k * (3 * k - 1) / 2) as i32);
        let b = z.powi((k * (3 * k + 1) / 2) as i32);
        if a.norm() + b.norm() == 0.0 {
            break;
        }
        sum += sign * (a + b);
    }
    sum
}

fn overlap(a: &Disk, b: &Disk) -> bool {
    (a.center - b.center).norm() < a.radius + b.radius - 1e-12
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Union-find over all overlapping pairs.
pub fn linked(cover: &DiskCover, x: Complex, y: Complex) -> bool {
    let d = cover.disks();
    let n = d.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if overlap(&d[i], &d[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let xs: Vec<usize> = (0..n).filter(|&i| d[i].contains(x)).collect();
    let ys: Vec<usize> = (0..n).filter(|&i| d[i].contains(y)).collect();
    xs.iter()
        .any(|&i| ys.iter().any(|&j| find(&mut parent, i) == find(&mut parent, j)))
}

/// Depth-first enumeration of simple chains from a disk holding `x` to one holding `y`.
pub fn simple_chain_exists(cover: &DiskCover, x: Complex, y: Complex) -> bool {
    fn extend(d: &[Disk], path: &mut Vec<usize>, y: Complex) -> bool {
        let last = *path.last().unwrap();
        if d[last].contains(y) {
            return true;
        }
        for k in 0..d.len() {
            if path.contains(&k) || !overlap(&d[last], &d[k]) {
                continue;
            }
            if path[..path.len() - 1].iter().any(|&p| overlap(&d[p], &d[k])) {
                continue;
            }
            path.push(k);
            if extend(d, path, y) {
                return true;
            }
            path.pop();
        }
        false
    }
    let d = cover.disks();
    (0..d.len())
        .filter(|&i| d[i].contains(x))
        .any(|i| extend(d, &mut vec![i], y))
}

/// `n` open disks with centres in `[0, 4]^2` and radii in `[0.2, 0.8]`.
pub fn random_cover<R: Rng>(rng: &mut R, n: usize) -> DiskCover {
    let disks = (0..n)
        .map(|_| {
            Disk::open(
                c(rng.gen_range(0.0..4.0), rng.gen_range(0.0..4.0)),
                rng.gen_range(0.2..0.8),
            )
        })
        .collect();
    DiskCover::new(disks)
}
