//! Deterministic SVG drawings. The y axis is flipped so the picture matches
//! the usual mathematical orientation, and the view box is padded by 5%
//! around the drawn geometry.

use std::fmt::Write as _;

use pathtri_core::collapse::CollapseTrace;
use pathtri_core::cycles::PathCycle;
use pathtri_core::geometry::{Point2, VertexId};
use pathtri_core::nerve::Nerve;
use pathtri_core::triangulation::Triangulation;

use crate::schema::fixed_str;

const PAD: f64 = 0.05;

struct Canvas {
    lo: Point2,
    hi: Point2,
    body: String,
}

impl Canvas {
    fn around<'a>(points: impl IntoIterator<Item = &'a Point2>) -> Self {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        Canvas {
            lo,
            hi,
            body: String::new(),
        }
    }

    fn extent(&self) -> f64 {
        (self.hi.x - self.lo.x).max(self.hi.y - self.lo.y).max(1e-9)
    }

    fn stroke(&self, fraction: f64) -> String {
        fixed_str(self.extent() * fraction)
    }

    fn xy(p: Point2) -> String {
        format!("{},{}", fixed_str(p.x), fixed_str(-p.y))
    }

    fn polygon(&mut self, ring: &[Point2], fill: &str, stroke: &str, width: f64) {
        let mut d = String::new();
        for (i, p) in ring.iter().enumerate() {
            let _ = write!(d, "{}{}", if i == 0 { "M" } else { " L" }, Canvas::xy(*p));
        }
        d.push_str(" Z");
        let w = self.stroke(width);
        let _ = writeln!(
            self.body,
            r#"  <path d="{d}" fill="{fill}" stroke="{stroke}" stroke-width="{w}"/>"#
        );
    }

    fn polyline(&mut self, pts: &[Point2], stroke: &str, width: f64) {
        let coords: Vec<String> = pts.iter().map(|p| Canvas::xy(*p)).collect();
        let w = self.stroke(width);
        let _ = writeln!(
            self.body,
            r#"  <polyline points="{}" fill="none" stroke="{stroke}" stroke-width="{w}"/>"#,
            coords.join(" ")
        );
    }

    fn dot(&mut self, p: Point2, radius: f64, fill: &str) {
        let r = self.stroke(radius);
        let _ = writeln!(
            self.body,
            r#"  <circle cx="{}" cy="{}" r="{r}" fill="{fill}"/>"#,
            fixed_str(p.x),
            fixed_str(-p.y)
        );
    }

    fn finish(self) -> String {
        let pad = PAD * self.extent();
        let (x, y) = (self.lo.x - pad, -self.hi.y - pad);
        let (w, h) = (
            self.hi.x - self.lo.x + 2.0 * pad,
            self.hi.y - self.lo.y + 2.0 * pad,
        );
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n{}</svg>\n",
            fixed_str(x),
            fixed_str(y),
            fixed_str(w),
            fixed_str(h),
            self.body
        )
    }
}

fn draw_complex(c: &mut Canvas, t: &Triangulation, shaded: &[usize]) {
    for (i, tri) in t.triangles().iter().enumerate() {
        let fill = if shaded.contains(&i) {
            "#f4c7a1"
        } else {
            "#dbe7f3"
        };
        c.polygon(&tri.boundary_ring(), fill, "none", 0.0);
    }
    for path in t.edges().values() {
        c.polyline(path.samples(), "#2f4858", 0.004);
    }
}

fn draw_vertices(c: &mut Canvas, t: &Triangulation, nuclei: &[VertexId]) {
    for (i, p) in t.vertices().iter().enumerate() {
        if nuclei.contains(&VertexId(i)) {
            c.dot(*p, 0.02, "#c0392b");
        } else {
            c.dot(*p, 0.01, "#2f4858");
        }
    }
}

/// The complex with the given nuclei highlighted.
pub fn triangulation(t: &Triangulation, nuclei: &[VertexId]) -> String {
    let mut c = Canvas::around(t.vertices());
    draw_complex(&mut c, t, &[]);
    draw_vertices(&mut c, t, nuclei);
    c.finish()
}

/// The complex with each nerve's triangles shaded and nuclei highlighted.
pub fn nerves(t: &Triangulation, nerves: &[Nerve]) -> String {
    let mut c = Canvas::around(t.vertices());
    let shaded: Vec<usize> = nerves.iter().flat_map(|n| n.triangles.clone()).collect();
    draw_complex(&mut c, t, &shaded);
    let nuclei: Vec<VertexId> = nerves.iter().map(|n| n.nucleus).collect();
    draw_vertices(&mut c, t, &nuclei);
    c.finish()
}

/// The complex with the given cycles traced over it.
pub fn cycles(t: &Triangulation, cycles: &[PathCycle]) -> String {
    let mut c = Canvas::around(t.vertices());
    draw_complex(&mut c, t, &[]);
    for cycle in cycles {
        let ring: Vec<Point2> = cycle
            .paths()
            .iter()
            .flat_map(|p| p.samples()[..p.sample_count() - 1].to_vec())
            .collect();
        c.polygon(&ring, "none", "#8e44ad", 0.006);
    }
    draw_vertices(&mut c, t, &[]);
    c.finish()
}

/// Residual triangle, its fibers as thin strokes, and its vertices.
pub fn collapse(trace: &CollapseTrace) -> String {
    let ring = trace.residual().boundary_ring();
    let mut c = Canvas::around(&ring);
    c.polygon(&ring, "#dbe7f3", "#2f4858", 0.004);
    for f in trace.fibers() {
        c.polyline(&[f.start, f.end], "#c0392b", 0.001);
    }
    for p in trace.residual().corners() {
        c.dot(p, 0.012, "#2f4858");
    }
    c.finish()
}
