//! Static SVG scenes in world coordinates (y up).

use crate::geometry::Complex;
use crate::kissing_path::JordanCurve;
use crate::region::{KissingDisk, Region};
use std::fmt::Write;

#[derive(Debug, Clone)]
enum Item {
    Path {
        points: Vec<Complex>,
        closed: bool,
        stroke: String,
        fill: String,
        width: f64,
    },
    Circle {
        center: Complex,
        radius: f64,
        stroke: String,
    },
    Dot {
        at: Complex,
        color: String,
    },
    Label {
        at: Complex,
        text: String,
    },
}

/// A list of shapes drawn in insertion order.
#[derive(Debug, Clone, Default)]
pub struct Scene {
    items: Vec<Item>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Scene {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn polyline(&mut self, points: &[Complex], closed: bool, stroke: &str, fill: &str) -> &mut Self {
        self.items.push(Item::Path {
            points: points.to_vec(),
            closed,
            stroke: stroke.into(),
            fill: fill.into(),
            width: 1.0,
        });
        self
    }

    pub fn circle(&mut self, center: Complex, radius: f64, stroke: &str) -> &mut Self {
        self.items.push(Item::Circle {
            center,
            radius,
            stroke: stroke.into(),
        });
        self
    }

    pub fn dot(&mut self, at: Complex, color: &str) -> &mut Self {
        self.items.push(Item::Dot {
            at,
            color: color.into(),
        });
        self
    }

    pub fn label(&mut self, at: Complex, text: &str) -> &mut Self {
        self.items.push(Item::Label { at, text: text.into() });
        self
    }

    /// Outlines of every piece; solid pieces are filled.
    pub fn region(&mut self, k: &Region) -> &mut Self {
        let spacing = 0.01;
        for (solid, pts) in k.outlines(spacing) {
            match pts.len() {
                0 => {}
                1 => {
                    self.dot(pts[0], "black");
                }
                _ if solid => {
                    self.polyline(&pts, true, "black", "#d0d0d0");
                }
                _ => {
                    self.polyline(&pts, false, "black", "none");
                }
            }
        }
        self
    }

    pub fn curve(&mut self, curve: &JordanCurve, stroke: &str) -> &mut Self {
        self.polyline(&curve.sample(1024), true, stroke, "none")
    }

    pub fn kissing_disk(&mut self, kd: &KissingDisk) -> &mut Self {
        self.circle(kd.center, kd.radius, "#1f77b4");
        self.dot(kd.contact, "#d62728")
    }

    fn bounds(&self) -> (Complex, Complex) {
        let mut lo = Complex::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Complex::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |p: Complex, r: f64| {
            lo.re = lo.re.min(p.re - r);
            lo.im = lo.im.min(p.im - r);
            hi.re = hi.re.max(p.re + r);
            hi.im = hi.im.max(p.im + r);
        };
        for it in &self.items {
            match it {
                Item::Path { points, .. } => points.iter().for_each(|&p| grow(p, 0.0)),
                Item::Circle { center, radius, .. } => grow(*center, *radius),
                Item::Dot { at, .. } | Item::Label { at, .. } => grow(*at, 0.0),
            }
        }
        if !lo.re.is_finite() {
            return (Complex::new(-1.0, -1.0), Complex::new(1.0, 1.0));
        }
        (lo, hi)
    }

    /// SVG document `width` pixels wide with a 5% margin.
    pub fn to_svg(&self, width: f64) -> String {
        let (lo, hi) = self.bounds();
        let span = (hi - lo).re.max((hi - lo).im).max(1e-9);
        let margin = 0.05 * span;
        let (x0, y1) = (lo.re - margin, hi.im + margin);
        let w = (hi.re - lo.re) + 2.0 * margin;
        let h = (hi.im - lo.im) + 2.0 * margin;
        let scale = width / w;
        let height = h * scale;
        let tx = |p: Complex| ((p.re - x0) * scale, (y1 - p.im) * scale);
        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.3} {height:.3}">"#
        )
        .unwrap();
        writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
        for it in &self.items {
            match it {
                Item::Path {
                    points,
                    closed,
                    stroke,
                    fill,
                    width,
                } => {
                    let mut d = String::new();
                    for (i, &p) in points.iter().enumerate() {
                        let (x, y) = tx(p);
                        write!(d, "{}{x:.3},{y:.3} ", if i == 0 { "M" } else { "L" }).unwrap();
                    }
                    if *closed {
                        d.push('Z');
                    }
                    writeln!(
                        out,
                        r#"<path d="{}" stroke="{stroke}" fill="{fill}" stroke-width="{width}"/>"#,
                        d.trim_end()
                    )
                    .unwrap();
                }
                Item::Circle { center, radius, stroke } => {
                    let (x, y) = tx(*center);
                    writeln!(
                        out,
                        r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.3}" stroke="{stroke}" fill="none"/>"#,
                        radius * scale
                    )
                    .unwrap();
                }
                Item::Dot { at, color } => {
                    let (x, y) = tx(*at);
                    writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="2.5" fill="{color}"/>"#).unwrap();
                }
                Item::Label { at, text } => {
                    let (x, y) = tx(*at);
                    writeln!(
                        out,
                        r#"<text x="{x:.3}" y="{y:.3}" font-size="10">{}</text>"#,
                        escape(text)
                    )
                    .unwrap();
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}
