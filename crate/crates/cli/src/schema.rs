//! JSON documents read and written by the CLI.
//!
//! Coordinates are written with six fixed decimals and every collection is
//! emitted in a canonical order, so equal inputs give byte-identical files.

use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use pathtri_core::geometry::{Point2, SampledPath, VertexId};
use pathtri_core::triangulation::{adjacency_report, ClassTriangulation, Triangulation};

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1.0";

/// A real number written with six decimals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fixed(pub f64);

pub fn fixed_str(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

impl Serialize for Fixed {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(S::Error::custom("non-finite number"));
        }
        let raw = RawValue::from_string(fixed_str(self.0)).map_err(S::Error::custom)?;
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Fixed {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let x = f64::deserialize(deserializer)?;
        if !x.is_finite() {
            return Err(D::Error::custom("non-finite number"));
        }
        Ok(Fixed(x))
    }
}

pub type Pt = [Fixed; 2];

pub fn pt(p: Point2) -> Pt {
    [Fixed(p.x), Fixed(p.y)]
}

pub fn point(p: &Pt) -> Point2 {
    Point2::new(p[0].0, p[1].0)
}

pub fn pts(ps: &[Point2]) -> Vec<Pt> {
    ps.iter().map(|p| pt(*p)).collect()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetFile {
    pub points: Vec<[f64; 2]>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
}

impl PointSetFile {
    pub fn points(&self) -> Vec<Point2> {
        self.points
            .iter()
            .map(|p| Point2::new(p[0], p[1]))
            .collect()
    }

    pub fn check(&self) -> Result<(), CliError> {
        if let Some(labels) = &self.labels {
            if labels.len() != self.points.len() {
                return Err(CliError::schema(
                    "labels",
                    format!("{} labels for {} points", labels.len(), self.points.len()),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile<P> {
    pub schema_version: String,
    pub command: String,
    pub payload: P,
}

impl<P> ReportFile<P> {
    pub fn new(command: &str, payload: P) -> Self {
        ReportFile {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            payload,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub a: usize,
    pub b: usize,
    pub samples: Vec<Pt>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjacencyDoc {
    pub vertex: usize,
    pub degree: usize,
    pub triangles: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDoc {
    pub a: usize,
    pub b: usize,
    pub representatives: Vec<Vec<Pt>>,
}

/// Payload of `triangulate`, and the input of every command that reads a
/// triangulation.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationDoc {
    pub vertices: Vec<Pt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub samples: usize,
    pub fibers: usize,
    pub edges: Vec<EdgeDoc>,
    pub triangles: Vec<[usize; 3]>,
    pub adjacency: Vec<AdjacencyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<ClassDoc>>,
}

impl TriangulationDoc {
    pub fn new(t: &Triangulation, samples: usize, fibers: usize) -> Self {
        TriangulationDoc {
            vertices: pts(t.vertices()),
            labels: None,
            samples,
            fibers,
            edges: t
                .edges()
                .iter()
                .map(|(k, p)| EdgeDoc {
                    a: k.lo().0,
                    b: k.hi().0,
                    samples: pts(p.samples()),
                })
                .collect(),
            triangles: t.faces().iter().map(|f| f.map(|v| v.0)).collect(),
            adjacency: adjacency_report(t)
                .into_iter()
                .map(|(v, d)| AdjacencyDoc {
                    vertex: v.0,
                    degree: d.degree,
                    triangles: d.triangles,
                })
                .collect(),
            seed: None,
            classes: None,
        }
    }

    pub fn with_classes(mut self, ct: &ClassTriangulation, seed: u64) -> Self {
        self.seed = Some(seed);
        self.classes = Some(
            ct.classes()
                .iter()
                .map(|(k, c)| ClassDoc {
                    a: k.lo().0,
                    b: k.hi().0,
                    representatives: c
                        .representatives()
                        .iter()
                        .map(|r| pts(r.samples()))
                        .collect(),
                })
                .collect(),
        );
        self
    }

    /// Rebuilds the triangulation, re-running every structural check.
    pub fn to_triangulation(&self) -> Result<Triangulation, CliError> {
        let bad = |e: pathtri_core::Error| CliError::schema("triangulation", e);
        let vertices: Vec<Point2> = self.vertices.iter().map(point).collect();
        if let Some(labels) = &self.labels {
            if labels.len() != vertices.len() {
                return Err(CliError::schema("labels", "labels do not match vertices"));
            }
        }
        let n = vertices.len();
        let id = |i: usize| -> Result<VertexId, CliError> {
            if i < n {
                Ok(VertexId(i))
            } else {
                Err(CliError::schema(
                    "triangulation",
                    format!("vertex id {i} out of range"),
                ))
            }
        };
        let edges = self
            .edges
            .iter()
            .map(|e| {
                SampledPath::from_samples(id(e.a)?, id(e.b)?, e.samples.iter().map(point).collect())
                    .map_err(bad)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let faces = self
            .triangles
            .iter()
            .map(|f| Ok([id(f[0])?, id(f[1])?, id(f[2])?]))
            .collect::<Result<Vec<_>, CliError>>()?;
        let t = Triangulation::from_parts(vertices, edges, &faces, self.fibers).map_err(bad)?;
        let expected: Vec<(usize, usize, usize)> = adjacency_report(&t)
            .into_iter()
            .map(|(v, d)| (v.0, d.degree, d.triangles))
            .collect();
        let stored: Vec<(usize, usize, usize)> = self
            .adjacency
            .iter()
            .map(|a| (a.vertex, a.degree, a.triangles))
            .collect();
        if expected != stored {
            return Err(CliError::schema("adjacency", "does not match the complex"));
        }
        Ok(t)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::schema("output", e))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(context: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::schema(context, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_formatting() {
        assert_eq!(fixed_str(1.0 / 3.0), "0.333333");
        assert_eq!(fixed_str(-1e-9), "0.000000");
        assert_eq!(fixed_str(-2.5), "-2.500000");
        assert_eq!(
            serde_json::to_string(&pt(Point2::new(1.0, 2.0))).unwrap(),
            "[1.000000,2.000000]"
        );
        assert!(serde_json::to_string(&Fixed(f64::NAN)).is_err());
    }

    #[test]
    fn triangulation_doc_round_trips() {
        let t = pathtri_core::fixtures::unit_square();
        let doc = TriangulationDoc::new(&t, 16, 1000);
        let text = to_json(&ReportFile::new("triangulate", doc)).unwrap();
        let back: ReportFile<TriangulationDoc> = from_json("tri", &text).unwrap();
        let rebuilt = back.payload.to_triangulation().unwrap();
        let again = to_json(&ReportFile::new(
            "triangulate",
            TriangulationDoc::new(&rebuilt, 16, 1000),
        ))
        .unwrap();
        assert_eq!(text, again);
    }
}
