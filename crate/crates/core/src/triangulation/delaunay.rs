//! Incremental Bowyer-Watson with a super-triangle.
//!
//! After the super-triangle is stripped, hull pockets left by it are filled
//! and a Lawson flip pass restores the empty-circumcircle property. All
//! orientation and in-circle decisions use exact adaptive predicates. Four
//! exactly cocircular points are resolved by taking the diagonal incident to
//! the lexicographically smallest of the four, so output does not depend on
//! insertion order.

use std::collections::{BTreeMap, HashSet};

use robust::Coord;

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, orient, polygon_signed_area, Point2};

fn coord(p: Point2) -> Coord<f64> {
    Coord { x: p.x, y: p.y }
}

/// Exact orientation of `abc`: positive when counter-clockwise, zero only
/// when the points are exactly collinear.
fn orient_exact(a: Point2, b: Point2, c: Point2) -> f64 {
    robust::orient2d(coord(a), coord(b), coord(c))
}

/// Exact in-circle test: positive when `d` lies strictly inside the circle
/// through the counter-clockwise triangle `abc`.
fn incircle_exact(a: Point2, b: Point2, c: Point2, d: Point2) -> f64 {
    robust::incircle(coord(a), coord(b), coord(c), coord(d))
}

/// Super-triangle inradius as a multiple of the bounding-box extent; larger
/// factors are tried when the smaller one leaves hull gaps.
const SUPER_SCALES: [f64; 3] = [1e2, 1e4, 1e6];

const MAX_FLIP_PASSES: usize = 10_000;

/// Counter-clockwise triangles of the Delaunay triangulation of `points`.
/// Input must be finite, duplicate-free and not all collinear.
pub(crate) fn delaunay(points: &[Point2]) -> Result<Vec<[usize; 3]>> {
    for scale in SUPER_SCALES {
        let mut tris = bowyer_watson(points, scale);
        fill_pockets(points, &mut tris);
        legalize(points, &mut tris)?;
        if covers_hull(points, &tris) {
            return Ok(tris);
        }
    }
    Err(Error::InvalidComplex(
        "Delaunay construction did not cover the convex hull".into(),
    ))
}

fn circumcircle_contains(pts: &[Point2], v: [usize; 3], p: Point2) -> bool {
    incircle_exact(pts[v[0]], pts[v[1]], pts[v[2]], p) > 0.0
}

fn bowyer_watson(points: &[Point2], scale: f64) -> Vec<[usize; 3]> {
    let n = points.len();
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let center = lo.lerp(hi, 0.5);
    let extent = (hi.x - lo.x).max(hi.y - lo.y).max(1.0);
    let r = scale * extent;
    let s3 = 3f64.sqrt();
    let mut pts = points.to_vec();
    pts.push(center + Point2::new(0.0, 2.0 * r));
    pts.push(center + Point2::new(-s3 * r, -r));
    pts.push(center + Point2::new(s3 * r, -r));

    let mut cells: Vec<[usize; 3]> = vec![[n + 1, n + 2, n]];
    for i in 0..n {
        let p = pts[i];
        let (bad, keep): (Vec<[usize; 3]>, Vec<[usize; 3]>) = cells
            .into_iter()
            .partition(|&c| circumcircle_contains(&pts, c, p));
        cells = keep;
        let directed: HashSet<(usize, usize)> = bad
            .iter()
            .flat_map(|c| [(c[0], c[1]), (c[1], c[2]), (c[2], c[0])])
            .collect();
        let mut rim: Vec<(usize, usize)> = directed
            .iter()
            .filter(|(a, b)| !directed.contains(&(*b, *a)))
            .copied()
            .collect();
        rim.sort_unstable();
        for (a, b) in rim {
            cells.push([a, b, i]);
        }
    }
    cells
        .into_iter()
        .filter(|c| c.iter().all(|&v| v < n))
        .collect()
}

/// Adds ears along reflex boundary vertices until the boundary is convex.
fn fill_pockets(points: &[Point2], tris: &mut Vec<[usize; 3]>) {
    loop {
        let directed: HashSet<(usize, usize)> = tris
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
            .collect();
        let mut rim: Vec<(usize, usize)> = directed
            .iter()
            .filter(|(a, b)| !directed.contains(&(*b, *a)))
            .copied()
            .collect();
        rim.sort_unstable();
        let mut outgoing: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(a, b) in &rim {
            outgoing.entry(a).or_default().push(b);
        }
        let mut ear = None;
        'search: for &(a, b) in &rim {
            for &c in outgoing.get(&b).into_iter().flatten() {
                if c == a {
                    continue;
                }
                let (pa, pb, pc) = (points[a], points[b], points[c]);
                if orient_exact(pa, pb, pc) >= 0.0 {
                    continue;
                }
                let blocked = points.iter().enumerate().any(|(k, &q)| {
                    k != a && k != b && k != c && closed_triangle_contains(pa, pc, pb, q)
                });
                if !blocked {
                    ear = Some([a, c, b]);
                    break 'search;
                }
            }
        }
        match ear {
            Some(t) => tris.push(t),
            None => return,
        }
    }
}

fn closed_triangle_contains(a: Point2, b: Point2, c: Point2, q: Point2) -> bool {
    orient_exact(a, b, q) >= 0.0 && orient_exact(b, c, q) >= 0.0 && orient_exact(c, a, q) >= 0.0
}

/// Lexicographically smallest vertex, ties by index.
fn lex_min(points: &[Point2], ids: [usize; 4]) -> usize {
    ids.into_iter()
        .min_by(|&i, &j| points[i].lex_cmp(&points[j]).then(i.cmp(&j)))
        .expect("four ids")
}

/// Whether edge `ab` shared by CCW triangles `(a,b,c)` and `(b,a,d)` should
/// be replaced by `cd`.
fn should_flip(points: &[Point2], a: usize, b: usize, c: usize, d: usize) -> bool {
    let (pa, pb, pc, pd) = (points[a], points[b], points[c], points[d]);
    if orient_exact(pa, pd, pc) <= 0.0 || orient_exact(pd, pb, pc) <= 0.0 {
        return false;
    }
    let inside = incircle_exact(pa, pb, pc, pd);
    if inside > 0.0 {
        true
    } else if inside == 0.0 {
        let m = lex_min(points, [a, b, c, d]);
        m == c || m == d
    } else {
        false
    }
}

fn legalize(points: &[Point2], tris: &mut [[usize; 3]]) -> Result<()> {
    for _ in 0..MAX_FLIP_PASSES {
        let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, t) in tris.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                by_edge.entry((a.min(b), a.max(b))).or_default().push(i);
            }
        }
        let mut touched = vec![false; tris.len()];
        let mut flipped = false;
        for ((lo, hi), owners) in by_edge {
            let [t1, t2] = owners[..] else { continue };
            if touched[t1] || touched[t2] {
                continue;
            }
            // orient so that t1 holds the directed edge a->b
            let (a, b) = if holds_directed(&tris[t1], lo, hi) {
                (lo, hi)
            } else {
                (hi, lo)
            };
            let c = third(&tris[t1], a, b);
            let d = third(&tris[t2], a, b);
            if should_flip(points, a, b, c, d) {
                tris[t1] = [a, d, c];
                tris[t2] = [d, b, c];
                touched[t1] = true;
                touched[t2] = true;
                flipped = true;
            }
        }
        if !flipped {
            return Ok(());
        }
    }
    Err(Error::InvalidComplex(
        "edge flipping did not converge".into(),
    ))
}

fn holds_directed(t: &[usize; 3], a: usize, b: usize) -> bool {
    (0..3).any(|k| t[k] == a && t[(k + 1) % 3] == b)
}

fn third(t: &[usize; 3], a: usize, b: usize) -> usize {
    *t.iter()
        .find(|&&v| v != a && v != b)
        .expect("triangle has three vertices")
}

fn covers_hull(points: &[Point2], tris: &[[usize; 3]]) -> bool {
    let mut used = vec![false; points.len()];
    let mut area = 0.0;
    let mut edge_use: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for t in tris {
        let (a, b, c) = (points[t[0]], points[t[1]], points[t[2]]);
        if orient_exact(a, b, c) <= 0.0 {
            return false;
        }
        area += orient(a, b, c) / 2.0;
        for k in 0..3 {
            used[t[k]] = true;
            let (u, v) = (t[k], t[(k + 1) % 3]);
            *edge_use.entry((u.min(v), u.max(v))).or_default() += 1;
        }
    }
    let hull_area = polygon_signed_area(&convex_hull(points));
    used.iter().all(|&u| u)
        && edge_use.values().all(|&k| k <= 2)
        && (area - hull_area).abs() <= 1e-9 * hull_area
}
