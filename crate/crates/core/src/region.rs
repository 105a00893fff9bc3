//! Compact planar sets built from polygons, closed disks, segments and points.

use crate::error::{Error, Result};
use crate::geometry::{c, cis, cross, point_segment, segment_segment_distance, segments_intersect, Complex, I};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::f64::consts::TAU;
use std::path::Path;

/// One building block of `K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Piece {
    Polygon { vertices: Vec<[f64; 2]> },
    Disk { center: [f64; 2], radius: f64 },
    Segment { a: [f64; 2], b: [f64; 2] },
    Point { at: [f64; 2] },
}

/// On-disk description of a region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub resolution: f64,
    pub pieces: Vec<Piece>,
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Polygon(Vec<Complex>),
    Disk(Complex, f64),
    Segment(Complex, Complex),
    Point(Complex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundaryClass {
    TypeI,
    TypeII,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KissingDisk {
    pub contact: Complex,
    pub center: Complex,
    pub radius: f64,
    pub direction: Complex,
    /// Set when the radius is at the floor `10 tol_b`.
    pub at_floor: bool,
}

impl KissingDisk {
    pub fn new(contact: Complex, direction: Complex, radius: f64) -> Self {
        let u = direction / direction.norm();
        KissingDisk {
            contact,
            center: contact + u * radius,
            radius,
            direction: u,
            at_floor: false,
        }
    }

    /// Same contact and direction, smaller radius.
    pub fn shrunk(&self, radius: f64) -> Self {
        let mut k = KissingDisk::new(self.contact, self.direction, radius.min(self.radius));
        k.at_floor = self.at_floor;
        k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundarySample {
    pub point: Complex,
    pub class: BoundaryClass,
    pub piece: usize,
}

/// Grid flood-fill certificate for connectedness of the complement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplementCertificate {
    pub resolution: f64,
    pub free_cells: usize,
    pub reached_cells: usize,
}

#[derive(Debug, Clone)]
pub struct Region {
    shapes: Vec<Shape>,
    resolution: f64,
    lo: Complex,
    hi: Complex,
    certificate: ComplementCertificate,
}

fn pt(p: [f64; 2]) -> Complex {
    c(p[0], p[1])
}

fn polygon_area(vs: &[Complex]) -> f64 {
    let n = vs.len();
    0.5 * (0..n).map(|k| cross(vs[k], vs[(k + 1) % n])).sum::<f64>()
}

fn polygon_is_simple(vs: &[Complex]) -> bool {
    let n = vs.len();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            if segments_intersect(vs[i], vs[(i + 1) % n], vs[j], vs[(j + 1) % n]) {
                return false;
            }
        }
    }
    true
}

/// Crossing-number test; boundary points may go either way.
fn inside_polygon(vs: &[Complex], p: Complex) -> bool {
    let n = vs.len();
    let mut inside = false;
    for k in 0..n {
        let a = vs[k];
        let b = vs[(k + 1) % n];
        if (a.im > p.im) != (b.im > p.im) {
            let x = a.re + (p.im - a.im) * (b.re - a.re) / (b.im - a.im);
            if p.re < x {
                inside = !inside;
            }
        }
    }
    inside
}

fn polygon_boundary_distance(vs: &[Complex], p: Complex) -> (f64, Complex) {
    let n = vs.len();
    (0..n)
        .map(|k| point_segment(p, vs[k], vs[(k + 1) % n]))
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .unwrap()
}

impl Shape {
    fn is_solid(&self) -> bool {
        matches!(self, Shape::Polygon(_) | Shape::Disk(..))
    }

    /// Distance to the closed piece and a nearest point.
    fn distance(&self, p: Complex) -> (f64, Complex) {
        match self {
            Shape::Polygon(vs) => {
                if inside_polygon(vs, p) {
                    (0.0, p)
                } else {
                    polygon_boundary_distance(vs, p)
                }
            }
            Shape::Disk(ctr, r) => {
                let v = p - ctr;
                let d = v.norm();
                if d <= *r {
                    (0.0, p)
                } else {
                    (d - r, ctr + v * (r / d))
                }
            }
            Shape::Segment(a, b) => point_segment(p, *a, *b),
            Shape::Point(q) => ((p - q).norm(), *q),
        }
    }

    /// Distance from the segment `[a, b]` to the closed piece.
    fn segment_distance(&self, a: Complex, b: Complex) -> f64 {
        match self {
            Shape::Polygon(vs) => {
                if inside_polygon(vs, a) || inside_polygon(vs, b) {
                    return 0.0;
                }
                let n = vs.len();
                (0..n)
                    .map(|k| segment_segment_distance(a, b, vs[k], vs[(k + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
            Shape::Disk(ctr, r) => (point_segment(*ctr, a, b).0 - r).max(0.0),
            Shape::Segment(p, q) => segment_segment_distance(a, b, *p, *q),
            Shape::Point(q) => point_segment(*q, a, b).0,
        }
    }

    /// Depth of `p` inside the solid piece (0 when outside or thin).
    fn depth(&self, p: Complex) -> f64 {
        match self {
            Shape::Polygon(vs) => {
                if inside_polygon(vs, p) {
                    polygon_boundary_distance(vs, p).0
                } else {
                    0.0
                }
            }
            Shape::Disk(ctr, r) => (r - (p - ctr).norm()).max(0.0),
            _ => 0.0,
        }
    }

    fn bbox(&self) -> (Complex, Complex) {
        let pts: Vec<Complex> = match self {
            Shape::Polygon(vs) => vs.clone(),
            Shape::Disk(ctr, r) => vec![ctr - c(*r, *r), ctr + c(*r, *r)],
            Shape::Segment(a, b) => vec![*a, *b],
            Shape::Point(q) => vec![*q],
        };
        let mut lo = pts[0];
        let mut hi = pts[0];
        for p in pts {
            lo = c(lo.re.min(p.re), lo.im.min(p.im));
            hi = c(hi.re.max(p.re), hi.im.max(p.im));
        }
        (lo, hi)
    }

    /// Points along the boundary of the piece at pitch at most `spacing`.
    fn boundary_points(&self, spacing: f64) -> Vec<Complex> {
        let along = |a: Complex, b: Complex, closed_end: bool| -> Vec<Complex> {
            let n = ((b - a).norm() / spacing).ceil().max(1.0) as usize;
            let last = if closed_end { n + 1 } else { n };
            (0..last).map(|k| a + (b - a) * (k as f64 / n as f64)).collect()
        };
        match self {
            Shape::Polygon(vs) => {
                let n = vs.len();
                (0..n).flat_map(|k| along(vs[k], vs[(k + 1) % n], false)).collect()
            }
            Shape::Disk(ctr, r) => {
                let n = (TAU * r / spacing).ceil().max(8.0) as usize;
                (0..n).map(|k| ctr + cis(TAU * k as f64 / n as f64) * *r).collect()
            }
            Shape::Segment(a, b) => along(*a, *b, true),
            Shape::Point(q) => vec![*q],
        }
    }

    /// Outward directions at a point `z` of the piece where a kissing disk may sit.
    fn normals_at(&self, z: Complex, tol: f64) -> Vec<Complex> {
        let mut out = Vec::new();
        match self {
            Shape::Polygon(vs) => {
                let n = vs.len();
                for k in 0..n {
                    let a = vs[k];
                    let b = vs[(k + 1) % n];
                    if point_segment(z, a, b).0 > tol {
                        continue;
                    }
                    let e = (b - a) / (b - a).norm();
                    let normal = -I * e;
                    out.push(normal);
                    // at a vertex, add the bisector with the neighbouring edge's normal
                    for (v, other) in [(a, vs[(k + n - 1) % n]), (b, vs[(k + 2) % n])] {
                        if (z - v).norm() <= tol {
                            let e2 = if v == a {
                                (a - other) / (a - other).norm()
                            } else {
                                (other - b) / (other - b).norm()
                            };
                            let n2 = -I * e2;
                            let bis = normal + n2;
                            if bis.norm() > 1e-12 {
                                out.push(bis / bis.norm());
                            }
                            out.push(n2);
                        }
                    }
                }
            }
            Shape::Disk(ctr, _) => {
                let v = z - ctr;
                if v.norm() > 0.0 {
                    out.push(v / v.norm());
                }
            }
            Shape::Segment(a, b) => {
                let e = (b - a) / (b - a).norm();
                out.push(I * e);
                out.push(-I * e);
                if (z - a).norm() <= tol {
                    out.push(-e);
                }
                if (z - b).norm() <= tol {
                    out.push(e);
                }
            }
            Shape::Point(_) => {}
        }
        out
    }
}

impl Region {
    pub fn from_spec(spec: &RegionSpec) -> Result<Self> {
        let shapes = spec
            .pieces
            .iter()
            .map(|p| match p {
                Piece::Polygon { vertices } => {
                    let mut vs: Vec<Complex> = vertices.iter().map(|&v| pt(v)).collect();
                    if vs.len() > 1 && vs.first() == vs.last() {
                        vs.pop();
                    }
                    if vs.len() < 3 {
                        return Err(Error::InvalidRegion("polygon needs at least 3 vertices".into()));
                    }
                    let area = polygon_area(&vs);
                    if area.abs() < 1e-14 {
                        return Err(Error::InvalidRegion("polygon has zero area".into()));
                    }
                    if area < 0.0 {
                        vs.reverse();
                    }
                    if !polygon_is_simple(&vs) {
                        return Err(Error::InvalidRegion("polygon is not simple".into()));
                    }
                    Ok(Shape::Polygon(vs))
                }
                Piece::Disk { center, radius } => {
                    if !(*radius > 0.0) {
                        return Err(Error::InvalidRegion(format!("disk radius {radius}")));
                    }
                    Ok(Shape::Disk(pt(*center), *radius))
                }
                Piece::Segment { a, b } => {
                    if pt(*a) == pt(*b) {
                        return Err(Error::InvalidRegion("segment endpoints coincide".into()));
                    }
                    Ok(Shape::Segment(pt(*a), pt(*b)))
                }
                Piece::Point { at } => Ok(Shape::Point(pt(*at))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_shapes(shapes, spec.resolution)
    }

    fn from_shapes(shapes: Vec<Shape>, resolution: f64) -> Result<Self> {
        if shapes.is_empty() {
            return Err(Error::InvalidRegion("K is empty".into()));
        }
        if !(resolution > 0.0 && resolution.is_finite()) {
            return Err(Error::InvalidRegion(format!("resolution {resolution}")));
        }
        let mut lo = shapes[0].bbox().0;
        let mut hi = shapes[0].bbox().1;
        for s in &shapes {
            let (a, b) = s.bbox();
            lo = c(lo.re.min(a.re), lo.im.min(a.im));
            hi = c(hi.re.max(b.re), hi.im.max(b.im));
        }
        let mut region = Region {
            shapes,
            resolution,
            lo,
            hi,
            certificate: ComplementCertificate {
                resolution,
                free_cells: 0,
                reached_cells: 0,
            },
        };
        region.check_overlaps()?;
        region.certificate = region.certify_complement()?;
        Ok(region)
    }

    /// Solid pieces may touch but not share interior points. Disk pairs are
    /// compared exactly; other pairs on a lattice of pitch `h/2` and at the
    /// polygon vertices.
    fn check_overlaps(&self) -> Result<()> {
        let tol = self.tol_b();
        let h = 0.5 * self.resolution;
        let solid: Vec<&Shape> = self.shapes.iter().filter(|s| s.is_solid()).collect();
        for (i, a) in solid.iter().enumerate() {
            for b in &solid[i + 1..] {
                let err = || Err(Error::InvalidRegion(format!("pieces {a:?} and {b:?} overlap")));
                if let (Shape::Disk(c1, r1), Shape::Disk(c2, r2)) = (a, b) {
                    if (c1 - c2).norm() < r1 + r2 - tol {
                        return err();
                    }
                    continue;
                }
                for (p, q) in [(a, b), (b, a)] {
                    if let Shape::Polygon(vs) = p {
                        if vs.iter().any(|&v| q.depth(v) > tol) {
                            return err();
                        }
                    }
                }
                let (a0, a1) = a.bbox();
                let (b0, b1) = b.bbox();
                let lo = c(a0.re.max(b0.re), a0.im.max(b0.im));
                let hi = c(a1.re.min(b1.re), a1.im.min(b1.im));
                if lo.re > hi.re || lo.im > hi.im {
                    continue;
                }
                let nx = ((hi.re - lo.re) / h).ceil() as usize;
                let ny = ((hi.im - lo.im) / h).ceil() as usize;
                for ix in 0..=nx {
                    for iy in 0..=ny {
                        let p = lo + c(ix as f64 * h, iy as f64 * h);
                        if a.depth(p) > tol && b.depth(p) > tol {
                            return err();
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: RegionSpec = serde_json::from_str(text).map_err(|e| Error::InvalidRegion(e.to_string()))?;
        Self::from_spec(&spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::InvalidRegion(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn unit_square(resolution: f64) -> Self {
        Self::polygon(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)], resolution).expect("unit square")
    }

    pub fn unit_disk(resolution: f64) -> Self {
        Self::from_shapes(vec![Shape::Disk(c(0.0, 0.0), 1.0)], resolution).expect("unit disk")
    }

    pub fn polygon(vertices: &[Complex], resolution: f64) -> Result<Self> {
        Self::from_spec(&RegionSpec {
            resolution,
            pieces: vec![Piece::Polygon {
                vertices: vertices.iter().map(|z| [z.re, z.im]).collect(),
            }],
        })
    }

    /// Adds further pieces and re-certifies.
    pub fn with_pieces(&self, pieces: &[Piece]) -> Result<Self> {
        let mut spec = self.to_spec();
        spec.pieces.extend_from_slice(pieces);
        Self::from_spec(&spec)
    }

    pub fn with_resolution(&self, resolution: f64) -> Result<Self> {
        Self::from_shapes(self.shapes.clone(), resolution)
    }

    pub fn to_spec(&self) -> RegionSpec {
        let pieces = self
            .shapes
            .iter()
            .map(|s| match s {
                Shape::Polygon(vs) => Piece::Polygon {
                    vertices: vs.iter().map(|z| [z.re, z.im]).collect(),
                },
                Shape::Disk(ctr, r) => Piece::Disk {
                    center: [ctr.re, ctr.im],
                    radius: *r,
                },
                Shape::Segment(a, b) => Piece::Segment {
                    a: [a.re, a.im],
                    b: [b.re, b.im],
                },
                Shape::Point(q) => Piece::Point { at: [q.re, q.im] },
            })
            .collect();
        RegionSpec {
            resolution: self.resolution,
            pieces,
        }
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    /// Width of the boundary band used by [`Region::contains`].
    pub fn tol_b(&self) -> f64 {
        self.resolution / 100.0
    }

    pub fn certificate(&self) -> ComplementCertificate {
        self.certificate
    }

    /// Axis-aligned bounding box `(lower-left, upper-right)`.
    pub fn bbox(&self) -> (Complex, Complex) {
        (self.lo, self.hi)
    }

    pub fn piece_count(&self) -> usize {
        self.shapes.len()
    }

    pub fn has_interior(&self) -> bool {
        self.shapes.iter().any(Shape::is_solid)
    }

    /// Polyline outlines of the pieces, for drawing.
    pub fn outlines(&self, spacing: f64) -> Vec<(bool, Vec<Complex>)> {
        self.shapes
            .iter()
            .map(|s| match s {
                Shape::Polygon(vs) => (true, vs.clone()),
                other => (other.is_solid(), other.boundary_points(spacing)),
            })
            .collect()
    }

    /// Exact distance to `K` with a nearest point.
    pub fn distance(&self, p: Complex) -> (f64, Complex) {
        self.shapes
            .iter()
            .map(|s| s.distance(p))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .unwrap()
    }

    /// Exact distance from the segment `[a, b]` to `K`.
    pub fn segment_distance(&self, a: Complex, b: Complex) -> f64 {
        self.shapes
            .iter()
            .map(|s| s.segment_distance(a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest depth of `p` inside a solid piece.
    pub fn depth(&self, p: Complex) -> f64 {
        self.shapes.iter().map(|s| s.depth(p)).fold(0.0, f64::max)
    }

    pub fn contains(&self, p: Complex) -> Location {
        let tol = self.tol_b();
        if self.distance(p).0 > tol {
            Location::Exterior
        } else if self.depth(p) > tol {
            Location::Interior
        } else {
            Location::Boundary
        }
    }

    fn interior_lattice_hit(&self, z: Complex, radius: f64, pitch: f64) -> bool {
        let m = (radius / pitch).floor() as i64;
        for i in -m..=m {
            for j in -m..=m {
                let off = c(i as f64 * pitch, j as f64 * pitch);
                if off.norm() < radius && self.depth(z + off) > self.tol_b() {
                    return true;
                }
            }
        }
        false
    }

    fn classify_at(&self, z: Complex, h: f64) -> Result<BoundaryClass> {
        let coarse = self.interior_lattice_hit(z, h, h / 4.0);
        let fine = self.interior_lattice_hit(z, h / 2.0, h / 8.0);
        match (coarse, fine) {
            (true, true) => Ok(BoundaryClass::TypeI),
            (false, false) => Ok(BoundaryClass::TypeII),
            _ => Err(Error::ResolutionDisagreement(z)),
        }
    }

    /// Type I when interior lattice points of `K` lie within `h` of `z`,
    /// confirmed at `h/2`.
    pub fn classify_boundary_point(&self, z: Complex) -> Result<BoundaryClass> {
        if self.contains(z) != Location::Boundary {
            return Err(Error::NotOnBoundary(z));
        }
        self.classify_at(z, self.resolution)
    }

    /// As [`Region::classify_boundary_point`], halving the probe radius on disagreement.
    pub fn classify_refined(&self, z: Complex) -> Result<BoundaryClass> {
        if self.contains(z) != Location::Boundary {
            return Err(Error::NotOnBoundary(z));
        }
        let mut h = self.resolution;
        for _ in 0..6 {
            match self.classify_at(z, h) {
                Err(Error::ResolutionDisagreement(_)) => h /= 2.0,
                other => return other,
            }
        }
        Err(Error::ResolutionDisagreement(z))
    }

    /// `D(c; r)` closed meets `K` only at `z`, within `1e-9`.
    pub fn kissing_disk_check(&self, z: Complex, center: Complex, r: f64) -> bool {
        if !(r > 0.0) {
            return false;
        }
        let (d, nearest) = self.distance(center);
        d >= r - 1e-9 && (nearest - z).norm() <= 1e-9 && ((center - z).norm() - r).abs() <= 1e-9
    }

    /// A kissing disk touching `K` exactly at `z`, if one is found among the
    /// piece normals at `z` and 64 uniform directions.
    pub fn kissing_disk_at(&self, z: Complex) -> Option<KissingDisk> {
        let tol = self.tol_b();
        if self.contains(z) != Location::Boundary {
            return None;
        }
        let mut dirs: Vec<Complex> = Vec::new();
        for s in &self.shapes {
            if s.distance(z).0 <= tol {
                dirs.extend(s.normals_at(z, tol));
            }
        }
        dirs.extend((0..64).map(|k| cis(TAU * k as f64 / 64.0)));
        let mut radii = Vec::new();
        let mut r = 0.9;
        while r >= 10.0 * tol {
            radii.push(r);
            r /= 2.0;
        }
        for &r in &radii {
            for &u in &dirs {
                if self.kissing_disk_check(z, z + u * r, r) {
                    return Some(KissingDisk::new(z, u, r));
                }
            }
        }
        None
    }

    /// The largest of `0.9, 0.45, ...` down to `kd.radius` that still gives a
    /// kissing disk at the same contact and direction.
    pub fn widen_kissing_disk(&self, kd: &KissingDisk) -> KissingDisk {
        let mut r = 0.9;
        while r > kd.radius {
            let wide = KissingDisk::new(kd.contact, kd.direction, r);
            if self.kissing_disk_check(kd.contact, wide.center, r) {
                return wide;
            }
            r /= 2.0;
        }
        *kd
    }

    /// A circularly accessible point within `delta` of `z` with a certified kissing disk.
    ///
    /// Probes `z1` over 64 directions and 8 radii inside `D(z; delta/2)`, takes
    /// the probe farthest from `K`, and places the disk on the segment from
    /// the nearest point `z2` towards `z1`.
    pub fn find_ca_near(&self, z: Complex, delta: f64) -> Result<(Complex, KissingDisk)> {
        if !(delta > 0.0) {
            return Err(Error::ParameterOutOfRange(format!("delta = {delta}")));
        }
        let tol = self.tol_b();
        let mut best: Option<(f64, Complex, Complex)> = None;
        for k in 0..64 {
            let u = cis(TAU * k as f64 / 64.0);
            for j in 1..=8 {
                let rad = 0.999 * 0.5 * delta * j as f64 / 8.0;
                let z1 = z + u * rad;
                let (d, near) = self.distance(z1);
                if d > 2.0 * tol && best.is_none_or(|b| d > b.0) {
                    best = Some((d, z1, near));
                }
            }
        }
        let (d1, z1, z2) = best.ok_or(Error::NoExteriorPointFound(z))?;
        let r = (0.5 * d1).min(0.9);
        let mut kd = KissingDisk::new(z2, z1 - z2, r);
        kd.at_floor = r <= 10.0 * tol;
        if !self.kissing_disk_check(z2, kd.center, r) {
            return Err(Error::NoExteriorPointFound(z));
        }
        Ok((z2, kd))
    }

    /// Ordered samples along every piece boundary, restricted to points of `∂K`.
    pub fn sample_boundary(&self, spacing: f64) -> Result<Vec<BoundarySample>> {
        if !(spacing > 0.0) {
            return Err(Error::ParameterOutOfRange(format!("spacing = {spacing}")));
        }
        let mut out = Vec::new();
        for (i, s) in self.shapes.iter().enumerate() {
            for p in s.boundary_points(spacing) {
                if self.contains(p) != Location::Boundary {
                    continue;
                }
                out.push(BoundarySample {
                    point: p,
                    class: self.classify_refined(p)?,
                    piece: i,
                });
            }
        }
        Ok(out)
    }

    /// Points of `K`: lattice points at `pitch` inside `K` plus boundary samples.
    pub fn sample_points(&self, pitch: f64) -> Vec<Complex> {
        let mut pts = Vec::new();
        let nx = ((self.hi.re - self.lo.re) / pitch).ceil() as i64;
        let ny = ((self.hi.im - self.lo.im) / pitch).ceil() as i64;
        for i in 0..=nx {
            for j in 0..=ny {
                let p = self.lo + c(i as f64 * pitch, j as f64 * pitch);
                if self.contains(p) == Location::Interior {
                    pts.push(p);
                }
            }
        }
        for s in &self.shapes {
            for p in s.boundary_points(pitch) {
                if self.contains(p) == Location::Boundary {
                    pts.push(p);
                }
            }
        }
        pts
    }

    /// Flood fill over grid cells (pitch `h`, 2-cell margin) lying entirely
    /// outside `K`, from the margin inward. Every such cell must be reached.
    fn certify_complement(&self) -> Result<ComplementCertificate> {
        let h = self.resolution;
        let lo = self.lo - c(2.0 * h, 2.0 * h);
        let nx = ((self.hi.re - self.lo.re) / h).ceil() as usize + 5;
        let ny = ((self.hi.im - self.lo.im) / h).ceil() as usize + 5;
        if nx.saturating_mul(ny) > 16_000_000 {
            return Err(Error::InvalidRegion(format!(
                "resolution {h} gives a {nx}x{ny} certificate grid; coarsen it"
            )));
        }
        let half_diag = h * std::f64::consts::FRAC_1_SQRT_2;
        let free: Vec<bool> = (0..nx * ny)
            .map(|k| {
                let (i, j) = (k % nx, k / nx);
                let p = lo + c((i as f64 + 0.5) * h, (j as f64 + 0.5) * h);
                self.distance(p).0 > half_diag
            })
            .collect();
        let mut seen = vec![false; nx * ny];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0usize);
        while let Some(k) = queue.pop_front() {
            let (i, j) = (k % nx, k / nx);
            let mut push = |ii: usize, jj: usize| {
                let kk = jj * nx + ii;
                if free[kk] && !seen[kk] {
                    seen[kk] = true;
                    queue.push_back(kk);
                }
            };
            if i > 0 {
                push(i - 1, j);
            }
            if i + 1 < nx {
                push(i + 1, j);
            }
            if j > 0 {
                push(i, j - 1);
            }
            if j + 1 < ny {
                push(i, j + 1);
            }
        }
        let free_cells = free.iter().filter(|&&f| f).count();
        let reached_cells = seen.iter().filter(|&&s| s).count();
        if reached_cells != free_cells {
            return Err(Error::InvalidRegion(format!(
                "complement is disconnected at resolution {h} ({} of {free_cells} free cells unreachable)",
                free_cells - reached_cells
            )));
        }
        Ok(ComplementCertificate {
            resolution: h,
            free_cells,
            reached_cells,
        })
    }

    /// Distance from `z` to the rest of `K` when `z` is a point piece
    /// separated from every other piece.
    pub fn isolation_gap(&self, z: Complex) -> Option<f64> {
        let tol = self.tol_b();
        let (idx, _) = self
            .shapes
            .iter()
            .enumerate()
            .find(|(_, s)| matches!(s, Shape::Point(p) if (p - z).norm() <= tol))?;
        let gap = self
            .shapes
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, s)| s.distance(z).0)
            .fold(f64::INFINITY, f64::min);
        (gap > 10.0 * tol).then_some(gap)
    }

    /// Points of `∂K` sitting at a reentrant (inward-pointing) polygon vertex
    /// with interior angle above `pi`, useful as non-ca test points.
    pub fn reentrant_vertices(&self) -> Vec<Complex> {
        let mut out = Vec::new();
        for s in &self.shapes {
            if let Shape::Polygon(vs) = s {
                let n = vs.len();
                for k in 0..n {
                    let prev = vs[(k + n - 1) % n];
                    let next = vs[(k + 1) % n];
                    if cross(vs[k] - prev, next - vs[k]) < 0.0 {
                        out.push(vs[k]);
                    }
                }
            }
        }
        out
    }
}

/// `K` = unit square together with the segment `[2, 3]` on the real axis.
pub fn square_with_segment(resolution: f64) -> Region {
    Region::unit_square(resolution)
        .with_pieces(&[Piece::Segment {
            a: [2.0, 0.0],
            b: [3.0, 0.0],
        }])
        .expect("disjoint pieces")
}

/// The unit square, the segment `[2, 3]` and the isolated point `4`.
pub fn square_segment_point(resolution: f64) -> Region {
    square_with_segment(resolution)
        .with_pieces(&[Piece::Point { at: [4.0, 0.0] }])
        .expect("disjoint pieces")
}

/// Polygon with an inward cusp-like notch whose tip is at `(0.5, 0.5)`.
pub fn notched_square(resolution: f64) -> Region {
    let tip = c(0.5, 0.5);
    Region::polygon(
        &[
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(1.0, 1.0),
            c(0.52, 1.0),
            tip,
            c(0.48, 1.0),
            c(0.0, 1.0),
        ],
        resolution,
    )
    .expect("notched square")
}
