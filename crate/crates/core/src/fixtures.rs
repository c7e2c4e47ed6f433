//! Small hand-built complexes used by tests, examples and the CLI.

use crate::geometry::{make_path, Point2, VertexId};
use crate::triangulation::{triangulate, EdgeKey, Triangulation, TriangulationConfig};

/// Nucleus `p` of the fish complex.
pub const FISH_P: VertexId = VertexId(10);
/// Second interior vertex `q` of the fish complex.
pub const FISH_Q: VertexId = VertexId(11);
/// Center of [`hexagon_fan`].
pub const FAN_CENTER: VertexId = VertexId(6);

pub const FIG1: [(f64, f64); 3] = [(0.0, 0.0), (1.0, 2.0), (2.0, 0.0)];

pub const FISH_POINTS: [(f64, f64); 12] = [
    (0.5, 1.5),
    (1.0, 2.0),
    (1.5, 2.2),
    (3.0, 1.8),
    (4.0, 2.2),
    (3.5, 1.6),
    (3.0, 1.4),
    (1.0, 1.0),
    (2.0, 0.75),
    (4.0, 1.2),
    (1.2, 1.5),
    (2.5, 1.5),
];

pub const FISH_FACES: [[usize; 3]; 12] = [
    [10, 0, 1],
    [10, 1, 2],
    [10, 2, 11],
    [10, 11, 8],
    [10, 8, 7],
    [10, 7, 0],
    [11, 2, 3],
    [11, 3, 6],
    [11, 6, 8],
    [6, 3, 5],
    [6, 5, 9],
    [3, 4, 5],
];

fn points(raw: &[(f64, f64)]) -> Vec<Point2> {
    raw.iter().map(|&p| p.into()).collect()
}

/// Straight-edged complex on `vertices` with the given faces, in face order.
pub fn from_faces(vertices: Vec<Point2>, faces: &[[usize; 3]]) -> Triangulation {
    let cfg = TriangulationConfig::default();
    let faces: Vec<[VertexId; 3]> = faces
        .iter()
        .map(|f| [VertexId(f[0]), VertexId(f[1]), VertexId(f[2])])
        .collect();
    let keys: std::collections::BTreeSet<EdgeKey> = faces
        .iter()
        .flat_map(|f| (0..3).map(move |k| EdgeKey::new(f[k], f[(k + 1) % 3])))
        .collect();
    let edges = keys
        .into_iter()
        .map(|k| make_path(&vertices, k.lo(), k.hi(), &[], cfg.samples))
        .collect::<Result<Vec<_>, _>>()
        .expect("fixture edges are valid");
    Triangulation::from_parts(vertices, edges, &faces, cfg.fibers).expect("fixture is valid")
}

/// The single path triangle `v1=(0,0), v2=(1,2), v3=(2,0)`.
pub fn single_triangle() -> Triangulation {
    from_faces(points(&FIG1), &[[0, 1, 2]])
}

/// Unit square through [`triangulate`], split along `(0,0)-(1,1)`.
pub fn unit_square() -> Triangulation {
    triangulate(
        &points(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]),
        &TriangulationConfig::default(),
    )
    .expect("square triangulates")
}

/// Regular hexagon (ids 0..6) fanned from its center (id 6).
pub fn hexagon_fan() -> Triangulation {
    let mut v: Vec<Point2> = (0..6)
        .map(|i| {
            let a = std::f64::consts::PI / 3.0 * i as f64;
            Point2::new(a.cos(), a.sin())
        })
        .collect();
    v.push(Point2::new(0.0, 0.0));
    let faces: Vec<[usize; 3]> = (0..6).map(|i| [6, i, (i + 1) % 6]).collect();
    from_faces(v, &faces)
}

/// The fish-shaped complex with nucleus `p` joined to `q` by the path `h`.
pub fn fish() -> Triangulation {
    from_faces(points(&FISH_POINTS), &FISH_FACES)
}

/// Two triangles that overlap in a region of positive area.
pub fn overlapping_pair() -> Triangulation {
    from_faces(
        points(&[
            (0.0, 0.0),
            (4.0, 0.0),
            (0.0, 4.0),
            (1.0, 1.0),
            (5.0, 1.0),
            (1.0, 5.0),
        ]),
        &[[0, 1, 2], [3, 4, 5]],
    )
}
