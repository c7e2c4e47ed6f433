use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{make_path_in, PathClass, PathClassTriangle, VertexId, VertexLookup};

use super::{triangulate, EdgeKey, Triangulation, TriangulationConfig};

/// Upper bound on a perturbed midpoint's displacement, as a fraction of the
/// edge length.
pub const MAX_OFFSET_FRACTION: f64 = 0.25;

/// `[h]△ⁿE`: the Delaunay path triangulation with every edge widened to a
/// path class. Representative 0 of each class is the straight edge path.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassTriangulation {
    base: Triangulation,
    classes: BTreeMap<EdgeKey, PathClass>,
}

impl ClassTriangulation {
    pub fn classes(&self) -> &BTreeMap<EdgeKey, PathClass> {
        &self.classes
    }

    pub fn class(&self, a: VertexId, b: VertexId) -> Option<&PathClass> {
        self.classes.get(&EdgeKey::new(a, b))
    }

    /// Keeps representative 0 of every class.
    pub fn project(&self) -> Triangulation {
        self.base.clone()
    }

    pub fn class_triangles(&self) -> Vec<PathClassTriangle> {
        self.base
            .faces()
            .into_iter()
            .map(|[a, b, c]| {
                let directed = |u: VertexId, v: VertexId| {
                    let class = &self.classes[&EdgeKey::new(u, v)];
                    if class.start() == u {
                        class.clone()
                    } else {
                        class.reversed()
                    }
                };
                PathClassTriangle::new([directed(a, b), directed(b, c), directed(c, a)])
                    .expect("faces of a validated triangulation chain")
            })
            .collect()
    }
}

/// Path-class triangulation with `r` representatives per edge. Extra
/// representatives bend through a seeded midpoint pulled toward the
/// opposite corner of an incident triangle, so each stays inside that
/// triangle.
pub fn path_class_triangulate(
    points: &[crate::geometry::Point2],
    r: usize,
    config: &TriangulationConfig,
) -> Result<ClassTriangulation> {
    if r < 1 {
        return Err(Error::EmptyClass);
    }
    let base = triangulate(points, config)?;
    let mut opposite: BTreeMap<EdgeKey, Vec<VertexId>> = BTreeMap::new();
    for [a, b, c] in base.faces() {
        opposite.entry(EdgeKey::new(a, b)).or_default().push(c);
        opposite.entry(EdgeKey::new(b, c)).or_default().push(a);
        opposite.entry(EdgeKey::new(c, a)).or_default().push(b);
    }
    let lookup = VertexLookup::new(points);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut classes = BTreeMap::new();
    for (key, straight) in base.edges() {
        let (pa, pb) = (straight.first(), straight.last());
        let mid = pa.lerp(pb, 0.5);
        let len = pa.dist(pb);
        let mut reps = vec![straight.clone()];
        for _ in 1..r {
            let corners = &opposite[key];
            let c = corners[rng.gen_range(0..corners.len())];
            let toward = lookup.point(c)? - mid;
            let reach = (MAX_OFFSET_FRACTION * len / toward.norm()).min(0.5);
            let t = rng.gen_range(0.1..=1.0) * reach;
            let bend = mid + toward * t;
            reps.push(make_path_in(
                &lookup,
                key.lo(),
                key.hi(),
                &[bend],
                config.samples,
            )?);
        }
        classes.insert(*key, PathClass::new(reps)?);
    }
    Ok(ClassTriangulation { base, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{strictly_inside_triangle, Point2};

    fn fig4() -> Vec<Point2> {
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 2.0),
            Point2::new(2.0, 0.0),
        ]
    }

    #[test]
    fn single_representative_matches_triangulate() {
        let cfg = TriangulationConfig::default();
        let ct = path_class_triangulate(&fig4(), 1, &cfg).unwrap();
        assert_eq!(ct.project(), triangulate(&fig4(), &cfg).unwrap());
        assert!(ct.classes().values().all(|c| c.len() == 1));
    }

    #[test]
    fn four_path_bundles_share_endpoints_and_stay_inside() {
        let cfg = TriangulationConfig::default();
        let pts = fig4();
        let ct = path_class_triangulate(&pts, 4, &cfg).unwrap();
        assert_eq!(ct.classes().len(), 3);
        for (key, class) in ct.classes() {
            assert_eq!(class.len(), 4);
            for rep in class.representatives() {
                assert_eq!((rep.start(), rep.end()), (key.lo(), key.hi()));
                for q in rep.interior_samples().iter().skip(1) {
                    let on_chord = crate::geometry::line_distance(rep.first(), rep.last(), *q);
                    assert!(
                        on_chord <= 1e-9 || strictly_inside_triangle(pts[0], pts[1], pts[2], *q)
                    );
                }
            }
        }
        let tris = ct.class_triangles();
        assert_eq!(tris.len(), 1);
        ct.project().validate().unwrap();
    }

    #[test]
    fn zero_representatives_rejected() {
        assert_eq!(
            path_class_triangulate(&fig4(), 0, &TriangulationConfig::default()),
            Err(Error::EmptyClass)
        );
    }
}
