//! Path triangulations `h△ⁿK` of planar point sets on a Delaunay scaffold.
//!
//! Every 1-cell of a [`Triangulation`] is carried by a [`SampledPath`]
//! oriented from its smaller to its larger vertex id; every 2-cell is a
//! [`PathTriangle`] whose paths are those edge paths, reversed where the
//! triangle walks an edge downward.

mod classes;
mod delaunay;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{
    line_distance, make_path_in, make_path_triangle, PathTriangle, Point2, SampledPath,
    TriangleKind, VertexId, VertexLookup, EPS,
};

pub use classes::{path_class_triangulate, ClassTriangulation, MAX_OFFSET_FRACTION};

/// Unordered vertex pair, stored in ascending order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey(VertexId, VertexId);

impl EdgeKey {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            EdgeKey(a, b)
        } else {
            EdgeKey(b, a)
        }
    }

    pub fn lo(self) -> VertexId {
        self.0
    }

    pub fn hi(self) -> VertexId {
        self.1
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangulationConfig {
    /// Sample count `S` of every edge path.
    pub samples: usize,
    /// Fiber count `m` of every path triangle.
    pub fibers: usize,
    /// Seed for perturbed path-class representatives.
    pub seed: u64,
}

impl Default for TriangulationConfig {
    fn default() -> Self {
        TriangulationConfig {
            samples: 16,
            fibers: 1000,
            seed: 42,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Incidence {
    pub edges: Vec<EdgeKey>,
    pub triangles: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Triangulation {
    vertices: Vec<Point2>,
    edges: BTreeMap<EdgeKey, SampledPath>,
    triangles: Vec<PathTriangle>,
    adjacency: Vec<Incidence>,
}

impl Triangulation {
    /// Assembles and validates a complex from its vertex table, edge paths
    /// and vertex triples. Triangle paths are taken from the edge table.
    pub fn from_parts(
        vertices: Vec<Point2>,
        edges: Vec<SampledPath>,
        faces: &[[VertexId; 3]],
        fibers: usize,
    ) -> Result<Self> {
        let lookup = VertexLookup::new(&vertices);
        let mut table = BTreeMap::new();
        for path in edges {
            path.check_in(&lookup)?;
            let key = EdgeKey::new(path.start(), path.end());
            let path = if path.start() == key.lo() {
                path
            } else {
                path.reversed()
            };
            if table.insert(key, path).is_some() {
                return Err(Error::InvalidComplex(format!("duplicate edge {key}")));
            }
        }
        let mut triangles = Vec::with_capacity(faces.len());
        for face in faces {
            let directed = |a: VertexId, b: VertexId| -> Result<SampledPath> {
                let path = table.get(&EdgeKey::new(a, b)).ok_or_else(|| {
                    Error::InvalidComplex(format!("triangle edge {a}-{b} is missing"))
                })?;
                Ok(if path.start() == a {
                    path.clone()
                } else {
                    path.reversed()
                })
            };
            let [a, b, c] = *face;
            for v in face {
                lookup.point(*v)?;
            }
            let tri = make_path_triangle(
                directed(a, b)?,
                directed(b, c)?,
                directed(c, a)?,
                TriangleKind::Straight,
                fibers,
            )?;
            triangles.push(tri);
        }
        let t = Triangulation::assemble(vertices, table, triangles);
        t.validate()?;
        Ok(t)
    }

    fn assemble(
        vertices: Vec<Point2>,
        edges: BTreeMap<EdgeKey, SampledPath>,
        triangles: Vec<PathTriangle>,
    ) -> Self {
        let mut adjacency = vec![Incidence::default(); vertices.len()];
        for key in edges.keys() {
            adjacency[key.lo().0].edges.push(*key);
            adjacency[key.hi().0].edges.push(*key);
        }
        for (i, t) in triangles.iter().enumerate() {
            for v in t.vertices() {
                adjacency[v.0].triangles.push(i);
            }
        }
        Triangulation {
            vertices,
            edges,
            triangles,
            adjacency,
        }
    }

    /// Re-checks every structural invariant: edge endpoints exist and sit
    /// on their vertices, no interior sample hits a vertex, triangle edges
    /// exist, and no vertex is an orphan.
    pub fn validate(&self) -> Result<()> {
        let lookup = VertexLookup::new(&self.vertices);
        for p in &self.vertices {
            p.check_finite()?;
        }
        for (key, path) in &self.edges {
            if EdgeKey::new(path.start(), path.end()) != *key {
                return Err(Error::InvalidComplex(format!("edge {key} is mislabeled")));
            }
            path.check_in(&lookup)?;
        }
        for (i, t) in self.triangles.iter().enumerate() {
            for p in t.paths() {
                let key = EdgeKey::new(p.start(), p.end());
                if !self.edges.contains_key(&key) {
                    return Err(Error::InvalidComplex(format!(
                        "triangle {i} uses missing edge {key}"
                    )));
                }
            }
        }
        let orphans = find_orphans(&self.vertices, self.edges.values());
        if let Some(v) = orphans.first() {
            return Err(Error::InvalidComplex(format!(
                "{} orphan vertices, first {v}",
                orphans.len()
            )));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn point(&self, v: VertexId) -> Result<Point2> {
        self.vertices
            .get(v.0)
            .copied()
            .ok_or(Error::UnknownVertex(v))
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.0 < self.vertices.len()
    }

    pub fn edges(&self) -> &BTreeMap<EdgeKey, SampledPath> {
        &self.edges
    }

    pub fn edge(&self, a: VertexId, b: VertexId) -> Option<&SampledPath> {
        self.edges.get(&EdgeKey::new(a, b))
    }

    /// The edge path walked from `a` to `b`.
    pub fn directed_edge(&self, a: VertexId, b: VertexId) -> Option<SampledPath> {
        self.edge(a, b).map(|p| {
            if p.start() == a {
                p.clone()
            } else {
                p.reversed()
            }
        })
    }

    pub fn triangles(&self) -> &[PathTriangle] {
        &self.triangles
    }

    /// Vertex triples of the triangles, in table order.
    pub fn faces(&self) -> Vec<[VertexId; 3]> {
        self.triangles.iter().map(|t| t.vertices()).collect()
    }

    pub fn incidence(&self, v: VertexId) -> Result<&Incidence> {
        self.adjacency.get(v.0).ok_or(Error::UnknownVertex(v))
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>> {
        let mut out: Vec<VertexId> = self
            .incidence(v)?
            .edges
            .iter()
            .map(|e| e.other(v))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Ascending-id adjacency lists of the 1-skeleton.
    pub fn skeleton(&self) -> BTreeMap<VertexId, BTreeSet<VertexId>> {
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> =
            self.vertex_ids().map(|v| (v, BTreeSet::new())).collect();
        for key in self.edges.keys() {
            adj.entry(key.lo()).or_default().insert(key.hi());
            adj.entry(key.hi()).or_default().insert(key.lo());
        }
        adj
    }

    pub fn orphans(&self) -> BTreeSet<VertexId> {
        find_orphans(&self.vertices, self.edges.values())
    }

    /// Sum of triangle areas.
    pub fn area(&self) -> f64 {
        self.triangles.iter().map(|t| t.area()).sum()
    }

    /// Edges incident to exactly one triangle.
    pub fn boundary_edges(&self) -> Vec<EdgeKey> {
        let mut count: BTreeMap<EdgeKey, usize> = BTreeMap::new();
        for t in &self.triangles {
            for p in t.paths() {
                *count.entry(EdgeKey::new(p.start(), p.end())).or_default() += 1;
            }
        }
        count
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(k, _)| k)
            .collect()
    }
}

/// Delaunay path triangulation of `points`; vertex ids follow input order.
pub fn triangulate(points: &[Point2], config: &TriangulationConfig) -> Result<Triangulation> {
    check_points(points)?;
    let raw = delaunay::delaunay(points)?;
    let mut faces: Vec<[VertexId; 3]> = raw
        .into_iter()
        .map(|t| {
            // rotate so the smallest id leads; keeps counter-clockwise order
            let k = (0..3).min_by_key(|&k| t[k]).unwrap_or(0);
            [
                VertexId(t[k]),
                VertexId(t[(k + 1) % 3]),
                VertexId(t[(k + 2) % 3]),
            ]
        })
        .collect();
    faces.sort_unstable();
    let keys: BTreeSet<EdgeKey> = faces
        .iter()
        .flat_map(|f| {
            [
                EdgeKey::new(f[0], f[1]),
                EdgeKey::new(f[1], f[2]),
                EdgeKey::new(f[2], f[0]),
            ]
        })
        .collect();
    let lookup = VertexLookup::new(points);
    let edges = keys
        .into_iter()
        .map(|k| make_path_in(&lookup, k.lo(), k.hi(), &[], config.samples))
        .collect::<Result<Vec<_>>>()?;
    Triangulation::from_parts(points.to_vec(), edges, &faces, config.fibers)
}

fn check_points(points: &[Point2]) -> Result<()> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints);
    }
    for p in points {
        p.check_finite()?;
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].lex_cmp(&points[j]).then(i.cmp(&j)));
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if points[j].x - points[i].x > EPS {
                break;
            }
            if points[i].coincides(points[j]) {
                let (a, b) = (i.min(j), i.max(j));
                return Err(Error::DuplicatePoints(VertexId(a), VertexId(b)));
            }
        }
    }
    let a = points[0];
    let far = points
        .iter()
        .copied()
        .max_by(|p, q| a.dist(*p).total_cmp(&a.dist(*q)))
        .unwrap_or(a);
    let spread = points
        .iter()
        .map(|&p| line_distance(a, far, p))
        .fold(0.0, f64::max);
    if spread <= EPS {
        return Err(Error::Collinear);
    }
    Ok(())
}

/// Vertices that are the endpoint of no path.
pub fn find_orphans<'a>(
    vertices: &[Point2],
    edges: impl IntoIterator<Item = &'a SampledPath>,
) -> BTreeSet<VertexId> {
    let mut orphans: BTreeSet<VertexId> = (0..vertices.len()).map(VertexId).collect();
    for e in edges {
        orphans.remove(&e.start());
        orphans.remove(&e.end());
    }
    orphans
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexDegree {
    pub degree: usize,
    pub triangles: usize,
}

pub fn adjacency_report(t: &Triangulation) -> BTreeMap<VertexId, VertexDegree> {
    t.vertex_ids()
        .map(|v| {
            let inc = &t.adjacency[v.0];
            (
                v,
                VertexDegree {
                    degree: inc.edges.len(),
                    triangles: inc.triangles.len(),
                },
            )
        })
        .collect()
}
