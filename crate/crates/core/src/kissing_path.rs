//! Jordan curves through two circularly accessible boundary points whose
//! interior avoids `K`.
//!
//! The curve is the boundary of the union of the two kissing disks and a
//! simple chain of small disks covering a complement path joining them.

use crate::chains::{simplify_chain, weak_chain, DiskCover};
use crate::error::{Error, Result};
use crate::geometry::{c, circle_intersections, signed_area, CircleArc, Complex, Disk, Orientation};
use crate::region::{KissingDisk, Region};
use serde::Serialize;
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::f64::consts::TAU;

/// A closed curve of circular arcs joined end to end.
#[derive(Debug, Clone, Serialize)]
pub struct JordanCurve {
    pub arcs: Vec<CircleArc>,
    pub contacts: Vec<Complex>,
}

impl JordanCurve {
    pub fn new(arcs: Vec<CircleArc>, contacts: Vec<Complex>) -> Result<Self> {
        if arcs.is_empty() {
            return Err(Error::Precondition("curve without arcs".into()));
        }
        let n = arcs.len();
        for k in 0..n {
            let gap = (arcs[k].end() - arcs[(k + 1) % n].start()).norm();
            if gap > 1e-9 {
                return Err(Error::PathCertificate(format!("arc {k} leaves a gap of {gap:e}")));
            }
        }
        Ok(JordanCurve { arcs, contacts })
    }

    pub fn circle(center: Complex, radius: f64) -> Self {
        let arc = CircleArc::new(center, radius, 0.0, TAU).expect("positive radius");
        JordanCurve {
            arcs: vec![arc],
            contacts: Vec::new(),
        }
    }

    pub fn length(&self) -> f64 {
        self.arcs.iter().map(CircleArc::length).sum()
    }

    fn snap(&self, z: Complex) -> Complex {
        for &p in &self.contacts {
            if (z - p).norm() <= 1e-12 * p.norm().max(1.0) {
                return p;
            }
        }
        z
    }

    /// About `n` points spaced evenly by arclength. Arc endpoints are always
    /// included, so contact points appear exactly.
    pub fn sample(&self, n: usize) -> Vec<Complex> {
        let total = self.length();
        let mut pts = Vec::with_capacity(n + 2 * self.arcs.len());
        for arc in &self.arcs {
            let m = ((n as f64 * arc.length() / total).ceil() as usize).max(2);
            for k in 0..m {
                pts.push(self.snap(arc.point_at(k as f64 / m as f64)));
            }
        }
        pts
    }

    pub fn distance(&self, p: Complex) -> f64 {
        self.arcs.iter().map(|a| a.distance(p)).fold(f64::INFINITY, f64::min)
    }

    /// Winding number about `p`, exact up to rounding: each arc is cut into
    /// pieces shorter than half the distance from `p`.
    pub fn winding_number(&self, p: Complex) -> Result<i64> {
        let dist = self.distance(p);
        if dist <= 1e-12 * p.norm().max(1.0) {
            return Err(Error::PointOnCurve(p));
        }
        let mut total = 0.0;
        for arc in &self.arcs {
            let pieces = ((arc.length() / (0.5 * dist)).ceil() as usize)
                .max((arc.sweep().abs() / 0.5).ceil() as usize)
                .clamp(1, 4_000_000);
            let mut prev = arc.start() - p;
            for k in 1..=pieces {
                let cur = arc.point_at(k as f64 / pieces as f64) - p;
                total += (cur / prev).arg();
                prev = cur;
            }
        }
        Ok((total / TAU).round() as i64)
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.sample(4096))
    }

    pub fn bbox(&self) -> (Complex, Complex) {
        let pts = self.sample(2048);
        let mut lo = pts[0];
        let mut hi = pts[0];
        for p in pts {
            lo = c(lo.re.min(p.re), lo.im.min(p.im));
            hi = c(hi.re.max(p.re), hi.im.max(p.im));
        }
        (lo, hi)
    }

    /// Non-adjacent samples stay more than a tenth of the sample pitch apart.
    pub fn is_simple(&self, n: usize) -> bool {
        let pts = self.sample(n);
        let m = pts.len();
        let pitch = self.length() / m as f64;
        // neighbours along the curve within this many steps count as adjacent
        let window = 12usize;
        let cell = pitch;
        let mut grid: std::collections::HashMap<(i64, i64), Vec<usize>> = Default::default();
        for (k, p) in pts.iter().enumerate() {
            grid.entry(((p.re / cell).floor() as i64, (p.im / cell).floor() as i64))
                .or_default()
                .push(k);
        }
        for (k, p) in pts.iter().enumerate() {
            let (gx, gy) = ((p.re / cell).floor() as i64, (p.im / cell).floor() as i64);
            for dx in -1..=1 {
                for dy in -1..=1 {
                    if let Some(list) = grid.get(&(gx + dx, gy + dy)) {
                        for &j in list {
                            let sep = (k as i64 - j as i64).unsigned_abs() as usize;
                            let sep = sep.min(m - sep);
                            if sep > window && (pts[j] - p).norm() <= pitch / 10.0 {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// The interior point farthest from the curve, on a grid of the bounding box.
    pub fn deepest_point(&self) -> Result<Complex> {
        let (lo, hi) = self.bbox();
        let span = (hi.re - lo.re).max(hi.im - lo.im);
        let pitch = span / 64.0;
        let mut best: Option<(f64, Complex)> = None;
        let nx = ((hi.re - lo.re) / pitch).ceil() as usize;
        let ny = ((hi.im - lo.im) / pitch).ceil() as usize;
        for i in 0..=nx {
            for j in 0..=ny {
                let p = lo + c(i as f64 * pitch, j as f64 * pitch);
                let d = self.distance(p);
                if best.is_none_or(|b| d > b.0) && self.winding_number(p).ok() == Some(1) {
                    best = Some((d, p));
                }
            }
        }
        let (mut d, mut p) = best.ok_or(Error::Precondition("curve has no interior".into()))?;
        // pattern search refinement
        let mut step = pitch / 2.0;
        while step > pitch * 1e-3 {
            let mut moved = false;
            for k in 0..8 {
                let q = p + Complex::from_polar(step, TAU * k as f64 / 8.0);
                let dq = self.distance(q);
                if dq > d && self.winding_number(q).ok() == Some(1) {
                    d = dq;
                    p = q;
                    moved = true;
                }
            }
            if !moved {
                step /= 2.0;
            }
        }
        Ok(p)
    }
}

/// Polyline from `w1` to `w2` avoiding `K` with clearance at least `pitch / 2`.
///
/// Shortest path over grid cells under the weight `1 + (s / clearance)^2`,
/// `s` half the diameter of `K`, followed by chord shortcuts that do not move
/// closer to `K` than their endpoints. The weight keeps the path well away
/// from `K`: a path hugging `K` leaves long narrow channels in the exterior of
/// the chain, and conformal maps of such domains are numerically crowded.
pub fn complement_path(k: &Region, w1: Complex, w2: Complex, pitch: f64) -> Result<Vec<Complex>> {
    if !(pitch > 0.0) {
        return Err(Error::ParameterOutOfRange(format!("pitch = {pitch}")));
    }
    if w1 == w2 {
        return Ok(vec![w1]);
    }
    let req = 0.5 * pitch;
    for w in [w1, w2] {
        if k.distance(w).0 < 2.0 * pitch {
            return Err(Error::Precondition(format!(
                "endpoint {w} is closer than {} to K",
                2.0 * pitch
            )));
        }
    }
    let clear = |w: Complex| k.distance(w).0;
    let (d1, d2) = (clear(w1), clear(w2));
    if k.segment_distance(w1, w2) >= (0.9 * d1.min(d2)).max(req) {
        return Ok(vec![w1, w2]);
    }
    let (klo, khi) = k.bbox();
    let spread = 0.5 * (khi - klo).norm();
    let margin = (4.0 * pitch).max(spread);
    let lo = c(klo.re.min(w1.re).min(w2.re), klo.im.min(w1.im).min(w2.im)) - c(margin, margin);
    let hi = c(khi.re.max(w1.re).max(w2.re), khi.im.max(w1.im).max(w2.im)) + c(margin, margin);
    let step = pitch;
    let nx = ((hi.re - lo.re) / step).ceil() as usize + 1;
    let ny = ((hi.im - lo.im) / step).ceil() as usize + 1;
    let center = |i: usize, j: usize| lo + c((i as f64 + 0.5) * step, (j as f64 + 0.5) * step);
    let cell_of = |w: Complex| {
        (
            (((w.re - lo.re) / step).floor() as usize).min(nx - 1),
            (((w.im - lo.im) / step).floor() as usize).min(ny - 1),
        )
    };
    let clearance: Vec<f64> = (0..nx * ny).map(|idx| clear(center(idx % nx, idx / nx))).collect();
    let free = |idx: usize| clearance[idx] > req + 0.75 * step;
    let (si, sj) = cell_of(w1);
    let (gi, gj) = cell_of(w2);
    let start = sj * nx + si;
    let goal = gj * nx + gi;
    if !free(start) || !free(goal) {
        return Err(Error::NoPath);
    }
    let weight = |idx: usize| 1.0 + (spread / clearance[idx]).powi(2);
    let mut cost = vec![f64::INFINITY; nx * ny];
    let mut parent = vec![usize::MAX; nx * ny];
    let mut heap = BinaryHeap::new();
    cost[start] = 0.0;
    heap.push((Reverse(OrdF64(0.0)), start));
    while let Some((Reverse(OrdF64(d)), idx)) = heap.pop() {
        if idx == goal {
            break;
        }
        if d > cost[idx] {
            continue;
        }
        let (i, j) = ((idx % nx) as i64, (idx / nx) as i64);
        for (di, dj) in [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let (ii, jj) = (i + di, j + dj);
            if ii < 0 || jj < 0 || ii >= nx as i64 || jj >= ny as i64 {
                continue;
            }
            let n = jj as usize * nx + ii as usize;
            if !free(n) {
                continue;
            }
            let len = step * ((di * di + dj * dj) as f64).sqrt();
            let nd = d + len * 0.5 * (weight(idx) + weight(n));
            if nd < cost[n] {
                cost[n] = nd;
                parent[n] = idx;
                heap.push((Reverse(OrdF64(nd)), n));
            }
        }
    }
    if !cost[goal].is_finite() {
        return Err(Error::NoPath);
    }
    let mut cells = vec![goal];
    while *cells.last().unwrap() != start {
        cells.push(parent[*cells.last().unwrap()]);
    }
    cells.reverse();
    let mut raw = vec![w1];
    raw.extend(cells.iter().map(|&idx| center(idx % nx, idx / nx)));
    raw.push(w2);
    let raw_clear: Vec<f64> = raw.iter().map(|&w| clear(w)).collect();
    // greedy chord shortcuts
    let mut out = vec![raw[0]];
    let mut i = 0;
    while i + 1 < raw.len() {
        let mut j = raw.len() - 1;
        while j > i + 1 && k.segment_distance(raw[i], raw[j]) < (0.9 * raw_clear[i].min(raw_clear[j])).max(req) {
            j -= 1;
        }
        out.push(raw[j]);
        i = j;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
struct OrdF64(f64);

impl PartialEq for OrdF64 {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Parameter interval `[t0, t1]` of the segment `a + t (b - a)` inside the closed disk.
fn segment_disk_interval(a: Complex, b: Complex, ctr: Complex, r: f64) -> Option<(f64, f64)> {
    let d = b - a;
    let f = a - ctr;
    let qa = d.norm_sqr();
    let qb = 2.0 * (f * d.conj()).re;
    let qc = f.norm_sqr() - r * r;
    if qa == 0.0 {
        return if qc <= 0.0 { Some((0.0, 1.0)) } else { None };
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return None;
    }
    let s = disc.sqrt();
    let t0 = ((-qb - s) / (2.0 * qa)).max(0.0);
    let t1 = ((-qb + s) / (2.0 * qa)).min(1.0);
    if t0 <= t1 {
        Some((t0, t1))
    } else {
        None
    }
}

/// The part of the polyline between its last exit from the closed disk
/// `D1` and its next entry into `D2`.
pub fn truncate_between(path: &[Complex], d1: (Complex, f64), d2: (Complex, f64)) -> Result<Vec<Complex>> {
    if path.len() < 2 {
        return Err(Error::Precondition("path needs two points".into()));
    }
    let at = |k: usize, t: f64| path[k] + (path[k + 1] - path[k]) * t;
    let mut exit = None;
    for k in (0..path.len() - 1).rev() {
        if let Some((_, t1)) = segment_disk_interval(path[k], path[k + 1], d1.0, d1.1) {
            exit = Some((k, t1));
            break;
        }
    }
    let (kl, tl) = exit.ok_or(Error::Precondition("path never meets the first disk".into()))?;
    let mut entry = None;
    for k in kl..path.len() - 1 {
        if let Some((t0, t1)) = segment_disk_interval(path[k], path[k + 1], d2.0, d2.1) {
            let t0 = if k == kl { t0.max(tl) } else { t0 };
            if t0 <= t1 {
                entry = Some((k, t0));
                break;
            }
        }
    }
    let (ku, tu) = entry.ok_or(Error::Precondition("path never reaches the second disk".into()))?;
    let mut out = vec![at(kl, tl)];
    for k in kl + 1..=ku {
        out.push(path[k]);
    }
    out.push(at(ku, tu));
    out.dedup();
    Ok(out)
}

/// Points along the polyline at arclength pitch `step`, endpoints included.
fn resample(path: &[Complex], step: f64) -> Vec<Complex> {
    let mut out = vec![path[0]];
    let mut carry = 0.0;
    for w in path.windows(2) {
        let len = (w[1] - w[0]).norm();
        let mut s = step - carry;
        while s < len {
            out.push(w[0] + (w[1] - w[0]) * (s / len));
            s += step;
        }
        carry = len - (s - step);
    }
    let last = *path.last().unwrap();
    if (last - *out.last().unwrap()).norm() > 1e-12 {
        out.push(last);
    }
    out
}

/// Boundary of the union of closed disks as CCW arcs forming one loop.
pub fn union_boundary(disks: &[(Complex, f64)]) -> Result<Vec<CircleArc>> {
    let scale = disks.iter().map(|d| d.0.norm() + d.1).fold(1.0, f64::max);
    let covered = |i: usize, p: Complex| {
        disks
            .iter()
            .enumerate()
            .any(|(j, d)| j != i && (p - d.0).norm() < d.1 - 1e-12 * scale)
    };
    let mut arcs = Vec::new();
    for (i, &(ci, ri)) in disks.iter().enumerate() {
        if disks
            .iter()
            .enumerate()
            .any(|(j, d)| j != i && (ci - d.0).norm() + ri <= d.1 && (j < i || ri < d.1))
        {
            continue;
        }
        let mut cuts: Vec<f64> = Vec::new();
        for (j, &(cj, rj)) in disks.iter().enumerate() {
            if j == i {
                continue;
            }
            if let Some((p, q)) = circle_intersections(ci, ri, cj, rj) {
                cuts.push((p - ci).arg());
                cuts.push((q - ci).arg());
            }
        }
        if cuts.is_empty() {
            if !covered(i, ci + ri) {
                arcs.push(CircleArc::new(ci, ri, 0.0, TAU)?);
            }
            continue;
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        let m = cuts.len();
        for k in 0..m {
            let a0 = cuts[k];
            let a1 = if k + 1 < m { cuts[k + 1] } else { cuts[0] + TAU };
            if a1 - a0 < 1e-14 {
                continue;
            }
            let mid = ci + Complex::from_polar(ri, 0.5 * (a0 + a1));
            if !covered(i, mid) {
                arcs.push(CircleArc::new(ci, ri, a0, a1)?);
            }
        }
    }
    if arcs.is_empty() {
        return Err(Error::DegenerateChain);
    }
    // link end points to start points
    let n = arcs.len();
    let mut next = vec![usize::MAX; n];
    for a in 0..n {
        let end = arcs[a].end();
        let (mut best, mut best_d) = (usize::MAX, f64::INFINITY);
        for b in 0..n {
            let d = (arcs[b].start() - end).norm();
            if d < best_d {
                best = b;
                best_d = d;
            }
        }
        if best_d > 1e-9 * scale {
            return Err(Error::IntersectionNotFound(format!("arc end {end} has no successor")));
        }
        next[a] = best;
    }
    let mut order = vec![0usize];
    let mut cur = next[0];
    while cur != 0 {
        if order.len() > n {
            return Err(Error::PathCertificate("arc linking does not close".into()));
        }
        order.push(cur);
        cur = next[cur];
    }
    if order.len() != n {
        return Err(Error::PathCertificate(format!(
            "union boundary has several components ({} of {n} arcs in the first loop)",
            order.len()
        )));
    }
    Ok(order.into_iter().map(|k| arcs[k]).collect())
}

/// Splits the arc through `z` (on the circle `C(center; r)`) so `z` becomes an arc endpoint.
fn split_at(arcs: &mut Vec<CircleArc>, center: Complex, z: Complex) -> Result<()> {
    for k in 0..arcs.len() {
        let a = arcs[k];
        if a.center != center {
            continue;
        }
        if let Some(t) = a.fraction_of(z) {
            if t <= 1e-12 || t >= 1.0 - 1e-12 {
                return Ok(());
            }
            let (x, y) = a.split(t);
            arcs[k] = x;
            arcs.insert(k + 1, y);
            return Ok(());
        }
    }
    Err(Error::PathCertificate(format!("contact {z} is not on the curve")))
}

/// Pass/fail record of the kissing-path predicates.
#[derive(Debug, Clone, Serialize)]
pub struct PathCertificate {
    pub contacts_on_curve: bool,
    pub min_clearance: f64,
    pub interior_probes: usize,
    pub interior_exterior_to_k: bool,
    pub k_probes: usize,
    pub k_winding_zero: bool,
    pub simple: bool,
    pub ccw: bool,
    pub samples: usize,
}

impl PathCertificate {
    pub fn passed(&self) -> bool {
        self.contacts_on_curve
            && self.min_clearance > 0.0
            && self.interior_exterior_to_k
            && self.k_winding_zero
            && self.simple
            && self.ccw
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KissingPath {
    pub curve: JordanCurve,
    pub kd1: KissingDisk,
    pub kd2: KissingDisk,
    pub delta: f64,
    pub chain: Vec<(Complex, f64)>,
    pub path: Vec<Complex>,
}

/// Checks the kissing-path predicates with `samples` curve samples.
pub fn certify(k: &Region, curve: &JordanCurve, samples: usize) -> PathCertificate {
    let pts = curve.sample(samples);
    let contacts_on_curve = curve
        .contacts
        .iter()
        .all(|z| curve.distance(*z) <= 1e-9 && pts.contains(z));
    let min_clearance = pts
        .iter()
        .filter(|p| !curve.contacts.contains(p))
        .map(|&p| k.distance(p).0)
        .fold(f64::INFINITY, f64::min);
    // interior probes on a grid of the curve's bounding box
    let (lo, hi) = curve.bbox();
    let pitch = (hi.re - lo.re).max(hi.im - lo.im) / 48.0;
    let mut interior_probes = 0;
    let mut interior_exterior_to_k = true;
    let mut i = 0.0;
    while lo.re + i * pitch <= hi.re {
        let mut j = 0.0;
        while lo.im + j * pitch <= hi.im {
            let p = lo + c(i * pitch, j * pitch);
            if curve.winding_number(p).ok() == Some(1) {
                interior_probes += 1;
                if k.distance(p).0 <= 0.0 {
                    interior_exterior_to_k = false;
                }
            }
            j += 1.0;
        }
        i += 1.0;
    }
    let kpitch = k.resolution().max(1e-3);
    let mut k_probes = 0;
    let mut k_winding_zero = true;
    for p in k.sample_points(kpitch) {
        if curve.contacts.iter().any(|z| (p - z).norm() < 1e-12) {
            continue;
        }
        k_probes += 1;
        match curve.winding_number(p) {
            Ok(0) => {}
            _ => k_winding_zero = false,
        }
    }
    PathCertificate {
        contacts_on_curve,
        min_clearance,
        interior_probes,
        interior_exterior_to_k: interior_exterior_to_k && interior_probes > 0,
        k_probes,
        k_winding_zero,
        simple: curve.is_simple(samples),
        ccw: curve.signed_area() > 0.0,
        samples: pts.len(),
    }
}

/// Kissing disks with the same contacts and directions, shrunk until the
/// closed disks are disjoint.
pub fn separate(kd1: &KissingDisk, kd2: &KissingDisk) -> (KissingDisk, KissingDisk) {
    let sep = (kd1.contact - kd2.contact).norm();
    let mut a = kd1.shrunk(0.24 * sep);
    let mut b = kd2.shrunk(0.24 * sep);
    while (a.center - b.center).norm() <= (a.radius + b.radius) * (1.0 + 1e-9) {
        a = a.shrunk(a.radius / 2.0);
        b = b.shrunk(b.radius / 2.0);
    }
    (a, b)
}

/// Builds a kissing path through the contacts of `kd1` and `kd2`.
pub fn build_kissing_path(k: &Region, kd1: &KissingDisk, kd2: &KissingDisk) -> Result<KissingPath> {
    let (z1, z2) = (kd1.contact, kd2.contact);
    if (z1 - z2).norm() <= 1e-12 {
        return Err(Error::Precondition("contact points coincide".into()));
    }
    for kd in [kd1, kd2] {
        if !k.kissing_disk_check(kd.contact, kd.center, kd.radius) {
            return Err(Error::Precondition(format!(
                "disk at {} is not a kissing disk",
                kd.contact
            )));
        }
    }
    // halving keeps z + 3r u inside the original disk, at distance R/2 from K,
    // so the path leaves each disk along its normal
    let (kd1, kd2) = separate(&kd1.shrunk(kd1.radius / 2.0), &kd2.shrunk(kd2.radius / 2.0));
    let (r1, r2) = (kd1.radius, kd2.radius);
    let (c1, c2) = (kd1.center, kd2.center);
    let w1 = z1 + kd1.direction * (3.0 * r1);
    let w2 = z2 + kd2.direction * (3.0 * r2);
    let clear_w = k.distance(w1).0.min(k.distance(w2).0);
    let pitch = k.resolution().min(clear_w / 2.0);
    let mut path = vec![c1];
    path.extend(complement_path(k, w1, w2, pitch)?);
    path.push(c2);
    let g = truncate_between(&path, (c1, r1), (c2, r2))?;
    let clearance = g
        .windows(2)
        .map(|w| k.segment_distance(w[0], w[1]))
        .fold(k.distance(g[0]).0, f64::min);
    if !(clearance > 0.0) {
        return Err(Error::PathCertificate("truncated path touches K".into()));
    }
    let mut delta = (0.5 * k.resolution()).min(clearance / 3.0).min(r1 / 4.0).min(r2 / 4.0);
    let mut last_err = Error::DegenerateChain;
    for _ in 0..=6 {
        match assemble(k, &g, &kd1, &kd2, delta) {
            Ok((curve, chain)) => {
                return Ok(KissingPath {
                    curve,
                    kd1,
                    kd2,
                    delta,
                    chain,
                    path: g,
                })
            }
            Err(e) => last_err = e,
        }
        delta /= 2.0;
    }
    Err(last_err)
}

fn assemble(
    k: &Region,
    g: &[Complex],
    kd1: &KissingDisk,
    kd2: &KissingDisk,
    delta: f64,
) -> Result<(JordanCurve, Vec<(Complex, f64)>)> {
    let centers = resample(g, 1.2 * delta);
    let mut disks = vec![Disk::open(kd1.center, kd1.radius), Disk::open(kd2.center, kd2.radius)];
    disks.extend(centers.iter().map(|&z| Disk::open(z, delta)));
    let cover = DiskCover::new(disks);
    let weak = weak_chain(&cover, kd1.center, kd2.center)?;
    let simple = simplify_chain(&cover, &weak)?;
    if simple.len() < 2 {
        return Err(Error::DegenerateChain);
    }
    let chain: Vec<(Complex, f64)> = simple
        .indices
        .iter()
        .map(|&i| (cover.disks()[i].center, cover.disks()[i].radius))
        .collect();
    let mut arcs = union_boundary(&chain)?;
    split_at(&mut arcs, kd1.center, kd1.contact)?;
    split_at(&mut arcs, kd2.center, kd2.contact)?;
    for a in &arcs {
        debug_assert_eq!(a.orientation, Orientation::Ccw);
    }
    let curve = JordanCurve::new(arcs, vec![kd1.contact, kd2.contact])?;
    let n = 1024;
    if !curve.is_simple(n) {
        return Err(Error::PathCertificate("curve is not simple".into()));
    }
    if curve.signed_area() <= 0.0 {
        return Err(Error::PathCertificate("curve is not counterclockwise".into()));
    }
    let clearance = curve
        .sample(n)
        .into_iter()
        .filter(|p| !curve.contacts.contains(p))
        .map(|p| k.distance(p).0)
        .fold(f64::INFINITY, f64::min);
    if !(clearance > 0.0) {
        return Err(Error::PathCertificate("curve touches K away from the contacts".into()));
    }
    Ok((curve, chain))
}

/// Kissing disks at `z1` and `z2` found directly, followed by [`build_kissing_path`].
pub fn kissing_path_between(k: &Region, z1: Complex, z2: Complex) -> Result<KissingPath> {
    let kd1 = k.kissing_disk_at(z1).ok_or(Error::NotCircularlyAccessible(z1))?;
    let kd2 = k.kissing_disk_at(z2).ok_or(Error::NotCircularlyAccessible(z2))?;
    build_kissing_path(k, &kd1, &kd2)
}
