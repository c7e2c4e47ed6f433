use proptest::prelude::*;

use pathtri_core::cycles::{boundary_cycle, validate_cycle, PathCycle};
use pathtri_core::geometry::{
    circumcircle, convex_hull, make_path, make_path_triangle, polygon_signed_area, realize_path,
    segment_distance, strictly_inside_triangle, Point2, TriangleKind, VertexId, EPS,
};
use pathtri_core::nerve::{check_good_cover, maximal_nucleus_complex, nerve_census};
use pathtri_core::presentation::{present_cycle, Term};
use pathtri_core::triangulation::{triangulate, Triangulation, TriangulationConfig};
use pathtri_core::Error;

fn ring(n: usize) -> PathCycle {
    let pts: Vec<Point2> = (0..n)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / n as f64;
            Point2::new(a.cos(), a.sin())
        })
        .collect();
    PathCycle::new(
        (0..n)
            .map(|i| make_path(&pts, VertexId(i), VertexId((i + 1) % n), &[], 2).unwrap())
            .collect(),
    )
    .unwrap()
}

fn point_set() -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::vec((0.0..100.0f64, 0.0..100.0f64), 3..50)
        .prop_map(|v| v.into_iter().map(Point2::from).collect())
}

fn build(points: &[Point2]) -> Option<Triangulation> {
    let cfg = TriangulationConfig {
        fibers: 16,
        ..Default::default()
    };
    match triangulate(points, &cfg) {
        Ok(t) => Some(t),
        Err(Error::Collinear | Error::DuplicatePoints(..)) => None,
        Err(e) => panic!("triangulate failed: {e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn walk_is_a_group_action(n in 3usize..13, i in 0usize..12, k in -30i64..30, k2 in -30i64..30) {
        let c = ring(n);
        let i = i % n;
        let j = c.index(i, k);
        prop_assert_eq!(c.walk(j, k2), c.walk(i, k + k2));
        prop_assert_eq!(c.move_add(i, k, k2), c.walk(i, k + k2));
        prop_assert_eq!(c.walk_back(j, k), c.vertex(i));
    }

    #[test]
    fn cycle_words_add_exponents(n in 3usize..13, g in 0usize..12, k in 0i64..26, k2 in 0i64..26) {
        let c = ring(n);
        let g = g % n;
        let p = present_cycle(&c, g).unwrap();
        let gen = c.vertex(g);
        prop_assert_eq!(p.evaluate_word(&[Term::new(k, gen)], None).unwrap(), c.walk(g, k));
        prop_assert_eq!(
            p.evaluate_word(&[Term::new(k, gen), Term::new(k2, gen)], None).unwrap(),
            p.evaluate_word(&[Term::new(k + k2, gen)], None).unwrap()
        );
        prop_assert_eq!(p.evaluate_word(&[Term::new(0, gen)], None).unwrap(), gen);
        prop_assert_eq!(p.relations().len(), n);
    }

    #[test]
    fn realize_path_keeps_endpoints(
        ax in -50.0..50.0f64, ay in -50.0..50.0f64,
        bx in -50.0..50.0f64, by in -50.0..50.0f64,
        s in 2usize..40,
    ) {
        let v = [Point2::new(ax, ay), Point2::new(bx, by)];
        prop_assume!(v[0].dist(v[1]) > 1e-3);
        let p = make_path(&v, VertexId(0), VertexId(1), &[], s).unwrap();
        let e = realize_path(&p);
        prop_assert_eq!(e.polyline().len(), s);
        prop_assert_eq!(e.polyline()[0], v[0]);
        prop_assert_eq!(e.polyline()[s - 1], v[1]);
        prop_assert_ne!(p.start(), p.end());
    }

    #[test]
    fn fiber_interior_agrees_away_from_boundary(
        ax in 0.0..10.0f64, ay in 0.0..10.0f64,
        bx in 0.0..10.0f64, by in 0.0..10.0f64,
        cx in 0.0..10.0f64, cy in 0.0..10.0f64,
    ) {
        let v = [Point2::new(ax, ay), Point2::new(bx, by), Point2::new(cx, cy)];
        prop_assume!(pathtri_core::geometry::triangle_area(v[0], v[1], v[2]) > 0.5);
        let h = |a: usize, b: usize| make_path(&v, VertexId(a), VertexId(b), &[], 4).unwrap();
        let m = 1000;
        let t = make_path_triangle(h(0, 1), h(1, 2), h(2, 0), TriangleKind::Straight, m).unwrap();
        let margin = 2.0 * v[2].dist(v[0]) / m as f64;
        let (lo, hi) = (
            Point2::new(ax.min(bx).min(cx), ay.min(by).min(cy)),
            Point2::new(ax.max(bx).max(cx), ay.max(by).max(cy)),
        );
        let mut checked = 0;
        for i in 0..100 {
            for j in 0..100 {
                let q = Point2::new(
                    lo.x + (hi.x - lo.x) * (i as f64 + 0.5) / 100.0,
                    lo.y + (hi.y - lo.y) * (j as f64 + 0.5) / 100.0,
                );
                let gap = (0..3)
                    .map(|k| segment_distance(q, v[k], v[(k + 1) % 3]))
                    .fold(f64::INFINITY, f64::min);
                if gap <= margin {
                    continue;
                }
                checked += 1;
                let exact = strictly_inside_triangle(v[0], v[1], v[2], q);
                prop_assert_eq!(t.interior_contains(q), exact, "q = {:?}", q);
            }
        }
        prop_assert!(checked >= 5000, "only {} points checked", checked);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn triangulation_invariants(points in point_set()) {
        let Some(t) = build(&points) else { return Ok(()) };
        prop_assert!(t.orphans().is_empty());
        let hull = polygon_signed_area(&convex_hull(&points));
        prop_assert!((t.area() - hull).abs() <= 1e-9 * hull);
        for tri in t.triangles() {
            let [a, b, c] = tri.corners();
            let (center, r) = circumcircle(a, b, c).unwrap();
            for (k, q) in points.iter().enumerate() {
                if tri.has_vertex(VertexId(k)) {
                    continue;
                }
                prop_assert!(q.dist(center) >= r - EPS * r.max(1.0));
                prop_assert!(!tri.interior_contains_exact(*q));
            }
            validate_cycle(&boundary_cycle(tri)).unwrap();
        }
        let cover = check_good_cover(&t);
        prop_assert!(cover.is_good_cover(), "{:?}", cover);
        let census = nerve_census(&t);
        prop_assert_eq!(census.len(), points.len());
        let mnc = maximal_nucleus_complex(&t);
        prop_assert!(census.iter().all(|n| !n.is_empty() && n.len() <= mnc.len()));
    }

    #[test]
    fn triangulation_is_deterministic(points in point_set()) {
        let Some(t) = build(&points) else { return Ok(()) };
        prop_assert_eq!(Some(t), build(&points));
    }
}
