//! Planar models of the collapses `D×I ↘ △abc` (cone onto a triangle),
//! `sph K ↘ △°E` (sphere onto a round triangle), and elementary collapse
//! sequences of triangulated disks.

mod sequence;

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::{
    clip_half_plane, collinear, make_arc_path, make_path, make_path_triangle, minor_sweep, Fiber,
    PathTriangle, Point2, TriangleKind, VertexId, EPS,
};

pub use sequence::{
    elementary_collapse_sequence, replay, CollapseSequence, ComplexState, ElementaryStep,
};

/// Silhouette of a cone `D` with apex `a` over the base chord `bc`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConeSpec {
    pub apex: Point2,
    pub b: Point2,
    pub c: Point2,
}

impl ConeSpec {
    pub fn new(apex: Point2, b: Point2, c: Point2) -> Result<Self> {
        for p in [apex, b, c] {
            p.check_finite()?;
        }
        if collinear(apex, b, c) {
            return Err(Error::Degenerate("cone apex lies on its base line"));
        }
        Ok(ConeSpec { apex, b, c })
    }

    /// Vertex table `[v1, v2, v3] = [b, a, c]`, so the base `h3` runs
    /// `c -> b`.
    pub fn vertices(&self) -> [Point2; 3] {
        [self.b, self.apex, self.c]
    }
}

/// A "billiard ball" circle with three boundary vertices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereSpec {
    pub center: Point2,
    pub radius: f64,
    pub vertices: [Point2; 3],
}

impl SphereSpec {
    pub fn new(center: Point2, radius: f64, vertices: [Point2; 3]) -> Result<Self> {
        center.check_finite()?;
        if !radius.is_finite() || radius <= EPS {
            return Err(Error::Degenerate("sphere radius must be positive"));
        }
        for v in vertices {
            v.check_finite()?;
            if (v.dist(center) - radius).abs() > EPS {
                return Err(Error::OffCircle { x: v.x, y: v.y });
            }
        }
        for i in 0..3 {
            if vertices[i].coincides(vertices[(i + 1) % 3]) {
                return Err(Error::DuplicateVertices);
            }
        }
        let mut total = 0.0;
        for i in 0..3 {
            total += minor_sweep(center, vertices[i], vertices[(i + 1) % 3])?;
        }
        if (total.abs() - TAU).abs() > 1e-9 {
            return Err(Error::Degenerate("minor arcs do not enclose the disc"));
        }
        Ok(SphereSpec {
            center,
            radius,
            vertices,
        })
    }

    /// Vertices at polar angles given in degrees.
    pub fn from_angles(center: Point2, radius: f64, degrees: [f64; 3]) -> Result<Self> {
        let at = |deg: f64| {
            let t = deg.to_radians();
            Point2::new(center.x + radius * t.cos(), center.y + radius * t.sin())
        };
        SphereSpec::new(center, radius, degrees.map(at))
    }
}

/// Fibers `ℓ_i` sweeping the residual triangle, with an upper bound on the
/// distance from any residual point to the nearest fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct CollapseTrace {
    fibers: Vec<Fiber>,
    residual: PathTriangle,
    hausdorff_bound: f64,
}

impl CollapseTrace {
    fn new(residual: PathTriangle) -> Self {
        let fibers = residual.fibers();
        let hausdorff_bound = fiber_cover_bound(&residual, &fibers);
        CollapseTrace {
            fibers,
            residual,
            hausdorff_bound,
        }
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    pub fn residual(&self) -> &PathTriangle {
        &self.residual
    }

    pub fn hausdorff_bound(&self) -> f64 {
        self.hausdorff_bound
    }

    /// Distance from `q` to the union of fibers.
    pub fn distance_to_fibers(&self, q: Point2) -> f64 {
        let frame = self.residual.base_frame();
        let s = frame.station(q);
        let k = self.fibers.partition_point(|f| f.station < s);
        let mut best = f64::INFINITY;
        // fibers are sorted by station; station gap bounds the distance
        for f in self.fibers[k..].iter() {
            if f.station - s >= best {
                break;
            }
            best = best.min(f.distance(q));
        }
        for f in self.fibers[..k].iter().rev() {
            if s - f.station >= best {
                break;
            }
            best = best.min(f.distance(q));
        }
        best
    }
}

/// Largest distance from a point of the residual region to the fiber at its
/// nearest station. The region is convex, so per station cell the maximum
/// sits at a vertex of the clipped region.
fn fiber_cover_bound(residual: &PathTriangle, fibers: &[Fiber]) -> f64 {
    let frame = residual.base_frame();
    let ring = residual.boundary_ring();
    let shift = frame.origin.dot(frame.along);
    let mut bound: f64 = 0.0;
    for (i, f) in fibers.iter().enumerate() {
        let mut cell = ring.clone();
        if i > 0 {
            let lo = (fibers[i - 1].station + f.station) / 2.0;
            cell = clip_half_plane(&cell, frame.along * -1.0, -(lo + shift));
        }
        if let Some(next) = fibers.get(i + 1) {
            let hi = (f.station + next.station) / 2.0;
            cell = clip_half_plane(&cell, frame.along, hi + shift);
        }
        for p in cell {
            bound = bound.max(f.distance(p));
        }
    }
    bound
}

fn check_fibers(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::TooFewFibers { min: 2, got: m });
    }
    Ok(())
}

/// `D×I ↘ △abc`: `m` fibers perpendicular to `bc` over the straight
/// triangle.
pub fn collapse_cone(spec: &ConeSpec, m: usize) -> Result<CollapseTrace> {
    collapse_cone_to_path_triangle(spec, m, 2).map(|(trace, _)| trace)
}

/// `D×I ↘ h△v1v2v3` with boundary paths of `samples` points:
/// `h_l: v1 -> v2`, `h_r: v2 -> v3` and the base `h_b: v3 -> v1`.
pub fn collapse_cone_to_path_triangle(
    spec: &ConeSpec,
    m: usize,
    samples: usize,
) -> Result<(CollapseTrace, PathTriangle)> {
    check_fibers(m)?;
    let v = spec.vertices();
    let path = |a: usize, b: usize| make_path(&v, VertexId(a), VertexId(b), &[], samples);
    let tri = make_path_triangle(
        path(0, 1)?,
        path(1, 2)?,
        path(2, 0)?,
        TriangleKind::Straight,
        m,
    )?;
    Ok((CollapseTrace::new(tri.clone()), tri))
}

/// `sph K ↘ △°v1v2v3`: the round triangle whose edges are the minor arcs
/// between consecutive vertices, swept by fibers perpendicular to the chord
/// of the base arc `v3 -> v1`.
pub fn collapse_sphere(
    spec: &SphereSpec,
    m: usize,
    samples: usize,
) -> Result<(CollapseTrace, PathTriangle)> {
    check_fibers(m)?;
    if samples < 3 {
        return Err(Error::TooFewSamples(samples));
    }
    let v = spec.vertices;
    let arc =
        |a: usize, b: usize| make_arc_path(&v, VertexId(a), VertexId(b), spec.center, samples);
    let tri = make_path_triangle(arc(0, 1)?, arc(1, 2)?, arc(2, 0)?, TriangleKind::Round, m)?;
    Ok((CollapseTrace::new(tri.clone()), tri))
}
