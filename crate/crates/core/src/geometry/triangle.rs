use crate::error::{Error, Result};

use super::path::{realize_path, Edge, PathClass, SampledPath};
use super::point::{collinear, orient, segment_distance, Point2, VertexId, EPS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriangleKind {
    /// Straight segments between the three vertices.
    Straight,
    /// Circular-arc edges.
    Round,
}

/// Three cyclically chained paths `h1: v1->v2`, `h2: v2->v3`, `h3: v3->v1`
/// bounding a region whose interior is swept by fibers perpendicular to the
/// base `h3`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathTriangle {
    paths: [SampledPath; 3],
    kind: TriangleKind,
    fibers: usize,
}

pub fn make_path_triangle(
    h1: SampledPath,
    h2: SampledPath,
    h3: SampledPath,
    kind: TriangleKind,
    fibers: usize,
) -> Result<PathTriangle> {
    if fibers < 1 {
        return Err(Error::TooFewFibers {
            min: 1,
            got: fibers,
        });
    }
    let paths = [h1, h2, h3];
    for i in 0..3 {
        let (cur, next) = (&paths[i], &paths[(i + 1) % 3]);
        if cur.end() != next.start() {
            return Err(Error::EndpointMismatch {
                expected: cur.end(),
                found: next.start(),
            });
        }
        if !cur.last().coincides(next.first()) {
            return Err(Error::DetachedEndpoint {
                start: cur.start(),
                end: cur.end(),
            });
        }
    }
    let ids = [paths[0].start(), paths[1].start(), paths[2].start()];
    let corners = [paths[0].first(), paths[1].first(), paths[2].first()];
    for i in 0..3 {
        let j = (i + 1) % 3;
        if ids[i] == ids[j] || corners[i].coincides(corners[j]) {
            return Err(Error::DuplicateVertices);
        }
    }
    // the base frame needs v2 off the chord v3-v1 for round triangles too
    if collinear(corners[0], corners[1], corners[2]) {
        return Err(Error::Degenerate("collinear triangle vertices"));
    }
    Ok(PathTriangle {
        paths,
        kind,
        fibers,
    })
}

impl PathTriangle {
    pub fn paths(&self) -> &[SampledPath; 3] {
        &self.paths
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn fiber_count(&self) -> usize {
        self.fibers
    }

    /// Same triangle with a different fiber count.
    pub fn with_fibers(&self, fibers: usize) -> Result<PathTriangle> {
        let [h1, h2, h3] = self.paths.clone();
        make_path_triangle(h1, h2, h3, self.kind, fibers)
    }

    /// `[v1, v2, v3]`, i.e. `h1(0), h2(0), h3(0)`.
    pub fn vertices(&self) -> [VertexId; 3] {
        [
            self.paths[0].start(),
            self.paths[1].start(),
            self.paths[2].start(),
        ]
    }

    pub fn corners(&self) -> [Point2; 3] {
        [
            self.paths[0].first(),
            self.paths[1].first(),
            self.paths[2].first(),
        ]
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices().contains(&v)
    }

    /// `∂(h△E)`: the realizations of `h1, h2, h3`, in order.
    pub fn boundary(&self) -> [Edge; 3] {
        [
            realize_path(&self.paths[0]),
            realize_path(&self.paths[1]),
            realize_path(&self.paths[2]),
        ]
    }

    /// Closed boundary ring `h1 ++ h2 ++ h3` without repeated junctions.
    pub fn boundary_ring(&self) -> Vec<Point2> {
        let mut ring = Vec::new();
        for p in &self.paths {
            let s = p.samples();
            ring.extend_from_slice(&s[..s.len() - 1]);
        }
        ring
    }

    /// Area enclosed by the boundary ring.
    pub fn area(&self) -> f64 {
        super::point::polygon_signed_area(&self.boundary_ring()).abs()
    }

    pub fn on_boundary(&self, q: Point2) -> bool {
        self.paths.iter().any(|p| {
            p.samples()
                .windows(2)
                .any(|w| segment_distance(q, w[0], w[1]) <= EPS)
        })
    }

    pub fn base_frame(&self) -> BaseFrame {
        let [v1, v2, v3] = self.corners();
        BaseFrame::new(v3, v1, v2)
    }

    /// The `m` fibers at stations `i·L/(m+1)`, `i = 1..=m`, along the base
    /// chord of length `L`, each clipped to the enclosed region.
    pub fn fibers(&self) -> Vec<Fiber> {
        let frame = self.base_frame();
        let spacing = frame.length / (self.fibers + 1) as f64;
        (1..=self.fibers)
            .filter_map(|i| self.fiber_at(i as f64 * spacing))
            .collect()
    }

    /// Fiber on the line perpendicular to the base chord at `station`.
    pub fn fiber_at(&self, station: f64) -> Option<Fiber> {
        let frame = self.base_frame();
        let hits = self.crossings(&frame, station);
        if hits.len() < 2 {
            return None;
        }
        let (lo, hi) = (hits[0], hits[1]);
        let (base_hit, top_hit) = match (lo.on_base, hi.on_base) {
            (true, false) => (lo, hi),
            (false, true) => (hi, lo),
            _ => (lo, hi),
        };
        Some(Fiber {
            station,
            start: frame.point(station, top_hit.offset),
            end: frame.point(station, base_hit.offset),
        })
    }

    /// Membership in the fiber-discretized interior: `q` is snapped to the
    /// nearest fiber station (spacing `L/(m+1)`, continued past the chord
    /// ends where the region overhangs it) and tested against that fiber's
    /// open intervals. Boundary points are never interior.
    ///
    /// Agrees with [`PathTriangle::interior_contains_exact`] for every `q`
    /// farther than half a fiber spacing from the boundary.
    pub fn interior_contains(&self, q: Point2) -> bool {
        if self.on_boundary(q) {
            return false;
        }
        let frame = self.base_frame();
        let spacing = frame.length / (self.fibers + 1) as f64;
        let station = (frame.station(q) / spacing).round() * spacing;
        let offset = frame.offset(q);
        self.crossings(&frame, station)
            .chunks_exact(2)
            .any(|pair| pair[0].offset + EPS < offset && offset < pair[1].offset - EPS)
    }

    /// Exact strict-interior test: barycentric signs for straight
    /// triangles, even-odd containment in the boundary ring otherwise.
    pub fn interior_contains_exact(&self, q: Point2) -> bool {
        match self.kind {
            TriangleKind::Straight => {
                let [a, b, c] = self.corners();
                strictly_inside_triangle(a, b, c, q)
            }
            TriangleKind::Round => !self.on_boundary(q) && ring_contains(&self.boundary_ring(), q),
        }
    }

    /// Sorted crossings of the boundary ring with the fiber line at `station`.
    fn crossings(&self, frame: &BaseFrame, station: f64) -> Vec<Crossing> {
        let mut hits = Vec::new();
        for (k, path) in self.paths.iter().enumerate() {
            for w in path.samples().windows(2) {
                let (sp, sq) = (frame.station(w[0]), frame.station(w[1]));
                // half-open so shared sample points are counted once
                let crosses = (sp <= station && station < sq) || (sq <= station && station < sp);
                if !crosses {
                    continue;
                }
                let t = (station - sp) / (sq - sp);
                let (op, oq) = (frame.offset(w[0]), frame.offset(w[1]));
                hits.push(Crossing {
                    offset: op + t * (oq - op),
                    on_base: k == 2,
                });
            }
        }
        hits.sort_by(|a, b| a.offset.total_cmp(&b.offset));
        hits
    }
}

#[derive(Clone, Copy, Debug)]
struct Crossing {
    offset: f64,
    on_base: bool,
}

/// Strict interior test for the straight triangle `abc` with [`EPS`] margin.
pub fn strictly_inside_triangle(a: Point2, b: Point2, c: Point2, q: Point2) -> bool {
    let sign = orient(a, b, c).signum();
    [(a, b), (b, c), (c, a)].iter().all(|&(p, r)| {
        let len = p.dist(r);
        sign * orient(p, r, q) / len > EPS
    })
}

/// Even-odd containment in a closed ring.
pub fn ring_contains(ring: &[Point2], q: Point2) -> bool {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        if (a.y > q.y) != (b.y > q.y) {
            let x = a.x + (q.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if q.x < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Orthonormal frame on the base chord: station along the chord from its
/// first point, offset perpendicular to it toward the apex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BaseFrame {
    pub origin: Point2,
    pub along: Point2,
    pub normal: Point2,
    pub length: f64,
}

impl BaseFrame {
    /// Chord from `from` to `to`, normal pointing to the side of `apex`.
    pub fn new(from: Point2, to: Point2, apex: Point2) -> Self {
        let d = to - from;
        let length = d.norm();
        let along = d * (1.0 / length);
        let mut normal = along.perp();
        if normal.dot(apex - from) < 0.0 {
            normal = normal * -1.0;
        }
        BaseFrame {
            origin: from,
            along,
            normal,
            length,
        }
    }

    pub fn station(&self, p: Point2) -> f64 {
        (p - self.origin).dot(self.along)
    }

    pub fn offset(&self, p: Point2) -> f64 {
        (p - self.origin).dot(self.normal)
    }

    pub fn point(&self, station: f64, offset: f64) -> Point2 {
        self.origin + self.along * station + self.normal * offset
    }
}

/// A cross-cut `ℓ` perpendicular to the base chord: `start` (`ℓ(0)`) lies on
/// the non-base boundary, `end` (`ℓ(1)`) on the base path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fiber {
    pub station: f64,
    pub start: Point2,
    pub end: Point2,
}

impl Fiber {
    pub fn direction(&self) -> Point2 {
        self.end - self.start
    }

    pub fn length(&self) -> f64 {
        self.start.dist(self.end)
    }

    pub fn distance(&self, p: Point2) -> f64 {
        segment_distance(p, self.start, self.end)
    }

    /// `ℓ(t)` at `count` uniform parameters.
    pub fn samples(&self, count: usize) -> Vec<Point2> {
        let count = count.max(2);
        (0..count)
            .map(|j| self.start.lerp(self.end, j as f64 / (count - 1) as f64))
            .collect()
    }
}

/// `[h]△E`: three path classes with cyclic endpoint matching.
#[derive(Clone, Debug, PartialEq)]
pub struct PathClassTriangle {
    classes: [PathClass; 3],
}

impl PathClassTriangle {
    pub fn new(classes: [PathClass; 3]) -> Result<Self> {
        for i in 0..3 {
            let (cur, next) = (&classes[i], &classes[(i + 1) % 3]);
            if cur.end() != next.start() {
                return Err(Error::EndpointMismatch {
                    expected: cur.end(),
                    found: next.start(),
                });
            }
        }
        let ids = [classes[0].start(), classes[1].start(), classes[2].start()];
        if ids[0] == ids[1] || ids[1] == ids[2] || ids[2] == ids[0] {
            return Err(Error::DuplicateVertices);
        }
        Ok(PathClassTriangle { classes })
    }

    pub fn classes(&self) -> &[PathClass; 3] {
        &self.classes
    }

    pub fn vertices(&self) -> [VertexId; 3] {
        [
            self.classes[0].start(),
            self.classes[1].start(),
            self.classes[2].start(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::make_path;

    fn fig1() -> (Vec<Point2>, PathTriangle) {
        let v = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 2.0),
            Point2::new(2.0, 0.0),
        ];
        let h = |a: usize, b: usize| make_path(&v, VertexId(a), VertexId(b), &[], 8).unwrap();
        let t =
            make_path_triangle(h(0, 1), h(1, 2), h(2, 0), TriangleKind::Straight, 1000).unwrap();
        (v, t)
    }

    #[test]
    fn fig1_triangle_is_valid() {
        let (_, t) = fig1();
        assert_eq!(t.vertices(), [VertexId(0), VertexId(1), VertexId(2)]);
        assert!((t.area() - 2.0).abs() < 1e-12);
        let edges = t.boundary();
        assert_eq!(edges[0].endpoints(), (VertexId(0), VertexId(1)));
        assert_eq!(edges[1].endpoints(), (VertexId(1), VertexId(2)));
        assert_eq!(edges[2].endpoints(), (VertexId(0), VertexId(2)));
    }

    #[test]
    fn endpoint_mismatch_rejected() {
        let v = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 2.0),
            Point2::new(2.0, 0.0),
        ];
        let h = |a: usize, b: usize| make_path(&v, VertexId(a), VertexId(b), &[], 2).unwrap();
        assert_eq!(
            make_path_triangle(h(0, 1), h(2, 0), h(2, 0), TriangleKind::Straight, 4),
            Err(Error::EndpointMismatch {
                expected: VertexId(1),
                found: VertexId(2)
            })
        );
    }

    #[test]
    fn collinear_triangle_rejected() {
        let v = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 1.0),
        ];
        // route h3 around the middle vertex so the paths themselves are legal
        let h1 = make_path(&v, VertexId(0), VertexId(1), &[], 2).unwrap();
        let h2 = make_path(&v, VertexId(1), VertexId(2), &[], 2).unwrap();
        let h3 = make_path(&v, VertexId(2), VertexId(0), &[Point2::new(1.0, -1.0)], 3).unwrap();
        assert_eq!(
            make_path_triangle(h1, h2, h3, TriangleKind::Straight, 4),
            Err(Error::Degenerate("collinear triangle vertices"))
        );
    }

    #[test]
    fn centroid_is_interior_vertex_is_not() {
        let (_, t) = fig1();
        let centroid = Point2::new(1.0, 2.0 / 3.0);
        assert!(t.interior_contains(centroid));
        assert!(t.interior_contains_exact(centroid));
        assert!(!t.interior_contains(Point2::new(0.0, 0.0)));
        assert!(!t.interior_contains_exact(Point2::new(0.0, 0.0)));
        assert!(!t.interior_contains(Point2::new(1.0, 0.0)));
    }

    #[test]
    fn point_above_centroid_matches_barycentric_oracle() {
        let (_, t) = fig1();
        let q = Point2::new(1.0, 1.0);
        // barycentric coordinates of q in (0,0),(1,2),(2,0)
        let (a, b, c) = (
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 2.0),
            Point2::new(2.0, 0.0),
        );
        let det = (b.y - c.y) * (a.x - c.x) + (c.x - b.x) * (a.y - c.y);
        let l1 = ((b.y - c.y) * (q.x - c.x) + (c.x - b.x) * (q.y - c.y)) / det;
        let l2 = ((c.y - a.y) * (q.x - c.x) + (a.x - c.x) * (q.y - c.y)) / det;
        let l3 = 1.0 - l1 - l2;
        let oracle = l1 > 0.0 && l2 > 0.0 && l3 > 0.0;
        assert!(oracle);
        assert_eq!(t.interior_contains(q), oracle);
    }

    #[test]
    fn fibers_are_perpendicular_to_base() {
        let (_, t) = fig1();
        let t = t.with_fibers(7).unwrap();
        let fibers = t.fibers();
        assert_eq!(fibers.len(), 7);
        let base = t.corners()[0] - t.corners()[2];
        for f in &fibers {
            assert!(f.direction().dot(base).abs() < 1e-9);
            // ℓ(1) on the base y = 0
            assert!(f.end.y.abs() < 1e-12);
            assert!(f.start.y > 0.0);
        }
    }
}
