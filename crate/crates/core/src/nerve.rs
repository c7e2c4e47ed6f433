//! Alexandrov-Hopf nerves, the maximal nucleus complex, and the good-cover
//! check.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::geometry::{
    convex_hull, orient, polygon_signed_area, segment_distance, PathTriangle, Point2, VertexId, EPS,
};
use crate::triangulation::Triangulation;

/// Hull points sampled by [`check_good_cover`].
pub const COVER_SAMPLES: usize = 10_000;
const COVER_SEED: u64 = 0x5eed;
const AREA_TOLERANCE: f64 = 1e-9;

/// `Nrv E`: the triangles attached to a nucleus vertex, as indices into the
/// triangulation's triangle table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nerve {
    pub nucleus: VertexId,
    pub triangles: Vec<usize>,
}

impl Nerve {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn resolve<'a>(&self, t: &'a Triangulation) -> Vec<&'a PathTriangle> {
        self.triangles.iter().map(|&i| &t.triangles()[i]).collect()
    }

    /// Vertices shared by every triangle of the nerve.
    pub fn common_vertices(&self, t: &Triangulation) -> BTreeSet<VertexId> {
        common_vertices(self.resolve(t))
    }
}

fn common_vertices<'a>(tris: impl IntoIterator<Item = &'a PathTriangle>) -> BTreeSet<VertexId> {
    let mut iter = tris.into_iter();
    let Some(first) = iter.next() else {
        return BTreeSet::new();
    };
    let mut common: BTreeSet<VertexId> = first.vertices().into_iter().collect();
    for t in iter {
        let vs = t.vertices();
        common.retain(|v| vs.contains(v));
    }
    common
}

pub fn nerve_at(t: &Triangulation, v: VertexId) -> Result<Nerve> {
    let inc = t.incidence(v)?;
    Ok(Nerve {
        nucleus: v,
        triangles: inc.triangles.clone(),
    })
}

/// One nerve per vertex, in id order.
pub fn nerve_census(t: &Triangulation) -> Vec<Nerve> {
    t.vertex_ids()
        .map(|v| nerve_at(t, v).expect("vertex ids come from the table"))
        .collect()
}

/// The nerve with the most triangles; ties go to the smallest nucleus.
pub fn maximal_nucleus_complex(t: &Triangulation) -> Nerve {
    let mut best: Option<Nerve> = None;
    for n in nerve_census(t) {
        if best.as_ref().is_none_or(|b| n.len() > b.len()) {
            best = Some(n);
        }
    }
    best.expect("a triangulation has at least three vertices")
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoverReport {
    /// Area accounting and hull sampling both succeed.
    pub covers: bool,
    pub triangle_area: f64,
    pub hull_area: f64,
    /// Hull sample points that fell outside every triangle.
    pub uncovered_samples: usize,
    /// Every nonvoid intersection is a vertex, an edge or a whole triangle.
    pub intersections_ok: bool,
    pub nerve_count: usize,
    /// First pair of triangle indices whose intersection failed.
    pub witness: Option<(usize, usize)>,
    /// Vertices common to every triangle; reported, not required.
    pub global_intersection: Vec<VertexId>,
}

impl CoverReport {
    pub fn is_good_cover(&self) -> bool {
        self.covers && self.intersections_ok
    }
}

pub fn check_good_cover(t: &Triangulation) -> CoverReport {
    let tris = t.triangles();
    let hull = convex_hull(t.vertices());
    let hull_area = polygon_signed_area(&hull).abs();
    let triangle_area = t.area();
    let area_ok = (triangle_area - hull_area).abs() <= AREA_TOLERANCE * hull_area;
    let uncovered_samples = sample_hull(&hull, COVER_SAMPLES)
        .into_iter()
        .filter(|&q| !tris.iter().any(|tri| closed_contains(tri.corners(), q)))
        .count();

    let mut witness = None;
    'pairs: for i in 0..tris.len() {
        for j in i + 1..tris.len() {
            if !pair_ok(&tris[i], &tris[j]) {
                witness = Some((i, j));
                break 'pairs;
            }
        }
    }
    if witness.is_none() {
        witness = triple_failure(t);
    }

    CoverReport {
        covers: area_ok && uncovered_samples == 0,
        triangle_area,
        hull_area,
        uncovered_samples,
        intersections_ok: witness.is_none(),
        nerve_count: nerve_census(t).len(),
        witness,
        global_intersection: common_vertices(tris).into_iter().collect(),
    }
}

/// Seeded uniform points in a convex polygon, via a fan from its first
/// vertex weighted by area.
fn sample_hull(hull: &[Point2], count: usize) -> Vec<Point2> {
    let fan: Vec<[Point2; 3]> = (1..hull.len().saturating_sub(1))
        .map(|k| [hull[0], hull[k], hull[k + 1]])
        .collect();
    let areas: Vec<f64> = fan.iter().map(|f| orient(f[0], f[1], f[2]).abs()).collect();
    let total: f64 = areas.iter().sum();
    if fan.is_empty() || total <= 0.0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(COVER_SEED);
    (0..count)
        .map(|_| {
            let mut pick = rng.gen_range(0.0..total);
            let mut k = 0;
            while k + 1 < fan.len() && pick >= areas[k] {
                pick -= areas[k];
                k += 1;
            }
            let (mut u, mut v): (f64, f64) = (rng.gen(), rng.gen());
            if u + v > 1.0 {
                u = 1.0 - u;
                v = 1.0 - v;
            }
            let [a, b, c] = fan[k];
            a + (b - a) * u + (c - a) * v
        })
        .collect()
}

/// Closed containment with a tolerance of [`EPS`] per edge.
fn closed_contains([a, b, c]: [Point2; 3], q: Point2) -> bool {
    let sign = orient(a, b, c).signum();
    [(a, b), (b, c), (c, a)]
        .iter()
        .all(|&(p, r)| sign * orient(p, r, q) / p.dist(r) >= -EPS)
}

/// Whether two triangles meet only in their shared combinatorial face.
fn pair_ok(s: &PathTriangle, t: &PathTriangle) -> bool {
    let (sv, tv) = (s.vertices(), t.vertices());
    let (sc, tc) = (s.corners(), t.corners());
    for k in 0..3 {
        if !tv.contains(&sv[k]) && closed_contains(tc, sc[k]) {
            return false;
        }
        if !sv.contains(&tv[k]) && closed_contains(sc, tc[k]) {
            return false;
        }
    }
    for i in 0..3 {
        let (a, b) = ((sv[i], sc[i]), (sv[(i + 1) % 3], sc[(i + 1) % 3]));
        for j in 0..3 {
            let (c, d) = ((tv[j], tc[j]), (tv[(j + 1) % 3], tc[(j + 1) % 3]));
            if edges_cross(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

type Corner = (VertexId, Point2);

/// Whether segments `ab` and `cd` meet anywhere other than a shared
/// endpoint.
fn edges_cross(a: Corner, b: Corner, c: Corner, d: Corner) -> bool {
    let shared = [a.0, b.0]
        .iter()
        .filter(|v| **v == c.0 || **v == d.0)
        .count();
    match shared {
        2 => false,
        1 => {
            // segments from a common vertex overlap only if collinear
            let far_ab = if a.0 == c.0 || a.0 == d.0 { b.1 } else { a.1 };
            let far_cd = if c.0 == a.0 || c.0 == b.0 { d.1 } else { c.1 };
            segment_distance(far_ab, c.1, d.1) <= EPS || segment_distance(far_cd, a.1, b.1) <= EPS
        }
        _ => segments_meet(a.1, b.1, c.1, d.1),
    }
}

fn segments_meet(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    if segment_distance(a, c, d) <= EPS
        || segment_distance(b, c, d) <= EPS
        || segment_distance(c, a, b) <= EPS
        || segment_distance(d, a, b) <= EPS
    {
        return true;
    }
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

/// Three triangles around one vertex may share only that vertex.
fn triple_failure(t: &Triangulation) -> Option<(usize, usize)> {
    let tris = t.triangles();
    for v in t.vertex_ids() {
        let star = &t.incidence(v).ok()?.triangles;
        for (x, &i) in star.iter().enumerate() {
            for (y, &j) in star.iter().enumerate().skip(x + 1) {
                for &k in &star[y + 1..] {
                    if common_vertices([&tris[i], &tris[j], &tris[k]]).len() > 1 {
                        return Some((i, j));
                    }
                }
            }
        }
    }
    None
}
