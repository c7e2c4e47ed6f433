use pathtri_core::collapse::{
    collapse_cone, collapse_sphere, elementary_collapse_sequence, replay, ConeSpec, SphereSpec,
};
use pathtri_core::cycles::{boundary_cycle, is_path_connected, validate_cycle, witness_chains};
use pathtri_core::fixtures;
use pathtri_core::geometry::{
    make_arc_path, make_path, realize_path, resample_polyline, Point2, TriangleKind, VertexId,
};
use pathtri_core::nerve::{check_good_cover, maximal_nucleus_complex, nerve_census};
use pathtri_core::presentation::{
    build_homotopy_system, present_cycle, present_triangulation, realize_system, Term,
};
use pathtri_core::triangulation::{
    adjacency_report, find_orphans, path_class_triangulate, triangulate, TriangulationConfig,
};

/// Point at arc length `s` along a polyline, by stepping a dense uniform
/// subdivision of every segment.
fn dense_arc_point(polyline: &[Point2], s: f64) -> Point2 {
    let steps = 200_000;
    let mut walked = 0.0;
    for w in polyline.windows(2) {
        let seg = w[0].dist(w[1]);
        let h = seg / steps as f64;
        for k in 0..steps {
            if walked + h >= s {
                let frac = (k as f64 + (s - walked) / h) / steps as f64;
                return w[0].lerp(w[1], frac);
            }
            walked += h;
        }
    }
    polyline[polyline.len() - 1]
}

#[test]
fn waypoint_path_is_arc_length_uniform() {
    let v = [Point2::new(0.0, 0.0), Point2::new(2.0, 0.0)];
    let waypoint = Point2::new(1.0, 1.0);
    let p = make_path(&v, VertexId(0), VertexId(1), &[waypoint], 5).unwrap();
    let polyline = [v[0], waypoint, v[1]];
    let total = 2.0 * 2f64.sqrt();
    // frozen from dense_arc_point at s = k * total / 4
    let frozen = [(0.0, 0.0), (0.5, 0.5), (1.0, 1.0), (1.5, 0.5), (2.0, 0.0)];
    for (k, q) in p.samples().iter().enumerate() {
        let oracle = dense_arc_point(&polyline, total * k as f64 / 4.0);
        assert!(q.dist(oracle) < 1e-6, "{k}: {q:?} vs {oracle:?}");
        assert!(q.dist(frozen[k].into()) < 1e-12);
    }
    assert_eq!(
        resample_polyline(&polyline, 5).unwrap(),
        p.samples().to_vec()
    );
}

#[test]
fn curved_edge_keeps_its_samples() {
    let v = [Point2::new(0.0, 0.0), Point2::new(2.0, 0.0)];
    let p = make_path(&v, VertexId(0), VertexId(1), &[Point2::new(1.0, 1.0)], 5).unwrap();
    let e = realize_path(&p);
    assert_eq!(e.polyline(), p.samples());
    assert_eq!(e.interior(), &p.samples()[1..4]);
}

#[test]
fn round_boundary_chains() {
    let center = Point2::new(0.0, 0.0);
    let v: Vec<Point2> = [30.0f64, 150.0, 270.0]
        .iter()
        .map(|d| Point2::new(d.to_radians().cos(), d.to_radians().sin()))
        .collect();
    let arc = |a: usize, b: usize| make_arc_path(&v, VertexId(a), VertexId(b), center, 9).unwrap();
    let t = pathtri_core::geometry::make_path_triangle(
        arc(0, 1),
        arc(1, 2),
        arc(2, 0),
        TriangleKind::Round,
        100,
    )
    .unwrap();
    let edges = t.boundary();
    for i in 0..3 {
        let (cur, next) = (edges[i].polyline(), edges[(i + 1) % 3].polyline());
        assert_eq!(cur[cur.len() - 1], next[0]);
    }
    assert!(t.interior_contains(center));
    validate_cycle(&boundary_cycle(&t)).unwrap();
}

#[test]
fn fish_figure() {
    let fish = fixtures::fish();
    assert!(find_orphans(fish.vertices(), fish.edges().values()).is_empty());
    let mnc = maximal_nucleus_complex(&fish);
    assert_eq!(mnc.nucleus, fixtures::FISH_P);
    let p = present_triangulation(&fish, fixtures::FISH_P).unwrap();
    assert_eq!(p.basis(), &[fixtures::FISH_P]);
    p.check().unwrap();
}

#[test]
fn class_triangulation_projects_to_valid_triangulation() {
    let pts: Vec<Point2> = [(0.0, 0.0), (3.0, 0.5), (1.0, 2.5), (2.5, 2.0), (1.2, 1.1)]
        .iter()
        .map(|&p| p.into())
        .collect();
    let ct = path_class_triangulate(&pts, 3, &TriangulationConfig::default()).unwrap();
    let t = ct.project();
    t.validate().unwrap();
    assert_eq!(
        t,
        triangulate(&pts, &TriangulationConfig::default()).unwrap()
    );
    assert_eq!(ct.class_triangles().len(), t.triangles().len());
}

#[test]
fn adjacency_sums_to_three_per_triangle() {
    let pts: Vec<Point2> = (0..30)
        .map(|i| {
            let f = i as f64;
            Point2::new((f * 37.0) % 29.0 + 0.01 * f, (f * 17.0) % 23.0)
        })
        .collect();
    let t = triangulate(&pts, &TriangulationConfig::default()).unwrap();
    let rep = adjacency_report(&t);
    let total: usize = rep.values().map(|d| d.triangles).sum();
    assert_eq!(total, 3 * t.triangles().len());
    assert_eq!(nerve_census(&t).len(), 30);
    for u in t.vertex_ids() {
        for v in t.vertex_ids() {
            let c = is_path_connected(&t, u, v).unwrap();
            assert!(c.connected && witness_chains(&t, u, v, &c.witness));
        }
    }
}

#[test]
fn cycle_presentation_words() {
    let fan = fixtures::hexagon_fan();
    let c = pathtri_core::cycles::hull_cycle(&fan).unwrap();
    let p = present_cycle(&c, 0).unwrap();
    let g = c.vertex(0);
    assert_eq!(
        p.evaluate_word(&[Term::new(7, g)], None).unwrap(),
        c.walk(0, 7)
    );
    assert_eq!(p.relations().len(), 6);
}

#[test]
fn homotopy_system_round_trip() {
    let t = fixtures::unit_square();
    let s = build_homotopy_system(&t).unwrap();
    let r = realize_system(&s).unwrap();
    assert_eq!(r.full.cycles_recovered, 2);
    assert_eq!(r.stars.len(), 4);
}

#[test]
fn cover_and_collapse_on_square() {
    let t = fixtures::unit_square();
    assert!(check_good_cover(&t).is_good_cover());
    let seq = elementary_collapse_sequence(&t).unwrap();
    assert_eq!(replay(&t, &seq).unwrap().len(), 6);
}

#[test]
fn cone_and_sphere() {
    let cone = ConeSpec::new(
        Point2::new(2.0, 3.0),
        Point2::new(0.0, 1.0),
        Point2::new(4.0, 1.0),
    )
    .unwrap();
    let a = collapse_cone(&cone, 10).unwrap().hausdorff_bound();
    let b = collapse_cone(&cone, 20).unwrap().hausdorff_bound();
    assert!(b <= a);
    let sphere = SphereSpec::from_angles(Point2::new(2.0, 2.0), 1.4, [90.0, 210.0, 330.0]).unwrap();
    let (trace, tri) = collapse_sphere(&sphere, 100, 33).unwrap();
    assert_eq!(trace.fibers().len(), 100);
    for p in tri.paths() {
        for q in p.samples() {
            assert!((q.dist(sphere.center) - 1.4).abs() <= 1e-9);
        }
    }
}
