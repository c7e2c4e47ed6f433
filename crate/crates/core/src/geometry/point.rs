use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Absolute tolerance, in input units, for coincidence and collinearity.
pub const EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// Checked constructor: rejects NaN and infinities.
    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        let p = Point2 { x, y };
        p.check_finite()?;
        Ok(p)
    }

    pub fn check_finite(&self) -> Result<()> {
        if self.x.is_finite() && self.y.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite {
                x: self.x,
                y: self.y,
            })
        }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn lerp(self, other: Point2, t: f64) -> Point2 {
        Point2::new(
            self.x + (other.x - self.x) * t,
            self.y + (other.y - self.y) * t,
        )
    }

    /// Counter-clockwise normal.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn coincides(self, other: Point2) -> bool {
        self.dist(other) <= EPS
    }

    /// Lexicographic (x, then y) order.
    pub fn lex_cmp(&self, other: &Point2) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.y.total_cmp(&other.y))
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Point2::new(x, y)
    }
}

/// Dense index into a complex's vertex table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i)
    }
}

/// Twice the signed area of `abc`; positive when counter-clockwise.
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

/// Distance from `c` to the infinite line through `a` and `b`.
pub fn line_distance(a: Point2, b: Point2, c: Point2) -> f64 {
    let len = a.dist(b);
    if len == 0.0 {
        return a.dist(c);
    }
    orient(a, b, c).abs() / len
}

/// True when `c` is within [`EPS`] of the line through `a` and `b`, or when
/// two of the points coincide.
pub fn collinear(a: Point2, b: Point2, c: Point2) -> bool {
    // measure against the longest side so the answer does not depend on order
    let (ab, bc, ca) = (a.dist(b), b.dist(c), c.dist(a));
    if ab <= EPS || bc <= EPS || ca <= EPS {
        return true;
    }
    let d = if ab >= bc && ab >= ca {
        line_distance(a, b, c)
    } else if bc >= ca {
        line_distance(b, c, a)
    } else {
        line_distance(c, a, b)
    };
    d <= EPS
}

pub fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a.lerp(b, t))
}

pub fn triangle_area(a: Point2, b: Point2, c: Point2) -> f64 {
    orient(a, b, c).abs() / 2.0
}

/// Signed shoelace area of a closed polygon (last vertex connects to first).
pub fn polygon_signed_area(poly: &[Point2]) -> f64 {
    let n = poly.len();
    let mut sum = 0.0;
    for i in 0..n {
        sum += poly[i].cross(poly[(i + 1) % n]);
    }
    sum / 2.0
}

/// Circumcenter and radius; `None` for (near-)collinear input.
pub fn circumcircle(a: Point2, b: Point2, c: Point2) -> Option<(Point2, f64)> {
    let b = b - a;
    let c = c - a;
    let d = 2.0 * b.cross(c);
    if d == 0.0 {
        return None;
    }
    let bb = b.dot(b);
    let cc = c.dot(c);
    let ux = (c.y * bb - b.y * cc) / d;
    let uy = (b.x * cc - c.x * bb) / d;
    let center = Point2::new(ux, uy);
    if !center.x.is_finite() || !center.y.is_finite() {
        return None;
    }
    Some((center + a, center.norm()))
}

/// Convex hull in counter-clockwise order, without collinear boundary points.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup_by(|a, b| a.coincides(*b));
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point2> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Clips a convex polygon against the half-plane `{p : n·p <= c}`.
pub fn clip_half_plane(poly: &[Point2], normal: Point2, c: f64) -> Vec<Point2> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    let n = poly.len();
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let dp = normal.dot(p) - c;
        let dq = normal.dot(q) - c;
        if dp <= 0.0 {
            out.push(p);
        }
        if (dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0) {
            let t = dp / (dp - dq);
            out.push(p.lerp(q, t));
        }
    }
    out
}

/// Intersection of two convex polygons given counter-clockwise.
pub fn convex_intersection(subject: &[Point2], clip: &[Point2]) -> Vec<Point2> {
    let mut out = subject.to_vec();
    let n = clip.len();
    for i in 0..n {
        if out.is_empty() {
            break;
        }
        let a = clip[i];
        let b = clip[(i + 1) % n];
        // inside of a CCW edge is to its left: -(b-a)^perp · p <= -(b-a)^perp · a
        let normal = (b - a).perp() * -1.0;
        out = clip_half_plane(&out, normal, normal.dot(a));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collinear_is_symmetric() {
        let (a, b, c) = (
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0),
        );
        assert!(collinear(a, b, c));
        assert!(collinear(c, a, b));
        assert!(!collinear(a, b, Point2::new(1.0, 1e-6)));
    }

    #[test]
    fn hull_of_square_with_center() {
        let pts = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.5, 0.5),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
            Point2::new(0.5, 0.0),
        ];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
        assert!((polygon_signed_area(&hull) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circumcircle_of_right_triangle() {
        let (c, r) = circumcircle(
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(0.0, 2.0),
        )
        .unwrap();
        assert!(c.dist(Point2::new(1.0, 1.0)) < 1e-12);
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn overlapping_squares_intersect_in_quarter() {
        let a = [
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 2.0),
            Point2::new(0.0, 2.0),
        ];
        let b: Vec<Point2> = a.iter().map(|p| *p + Point2::new(1.0, 1.0)).collect();
        let cut = convex_intersection(&a, &b);
        assert!((polygon_signed_area(&cut) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_nan() {
        assert!(Point2::try_new(f64::NAN, 0.0).is_err());
        assert!(Point2::try_new(0.0, f64::INFINITY).is_err());
    }
}
