use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geometry::VertexId;
use crate::triangulation::{EdgeKey, Triangulation};

/// One elementary collapse `K_i ↘ K_{i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementaryStep {
    /// A triangle removed through an edge incident to no other remaining
    /// triangle.
    Face {
        stage: usize,
        free_edge: EdgeKey,
        triangle: usize,
    },
    /// An edge removed through one of its endpoints of degree one.
    Edge {
        stage: usize,
        edge: EdgeKey,
        vertex: VertexId,
    },
}

impl ElementaryStep {
    pub fn stage(&self) -> usize {
        match *self {
            ElementaryStep::Face { stage, .. } | ElementaryStep::Edge { stage, .. } => stage,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseSequence {
    pub steps: Vec<ElementaryStep>,
    pub terminal: VertexId,
}

/// Cells of an intermediate complex `K_i`; triangles are indices into the
/// original triangle table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexState {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeKey>,
    pub triangles: BTreeSet<usize>,
}

impl ComplexState {
    pub fn of(t: &Triangulation) -> Self {
        ComplexState {
            vertices: t.vertex_ids().collect(),
            edges: t.edges().keys().copied().collect(),
            triangles: (0..t.triangles().len()).collect(),
        }
    }

    pub fn cell_count(&self) -> usize {
        self.vertices.len() + self.edges.len() + self.triangles.len()
    }

    fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Applies `step` after checking that it removes a free pair.
    pub fn apply(&mut self, t: &Triangulation, step: &ElementaryStep) -> Result<()> {
        let faces = t.faces();
        match *step {
            ElementaryStep::Face {
                free_edge,
                triangle,
                ..
            } => {
                let face = faces
                    .get(triangle)
                    .ok_or_else(|| Error::InvalidComplex(format!("no triangle {triangle}")))?;
                let cofaces = self
                    .triangles
                    .iter()
                    .filter(|&&i| face_has_edge(&faces[i], free_edge))
                    .count();
                if !self.edges.contains(&free_edge)
                    || !self.triangles.contains(&triangle)
                    || !face_has_edge(face, free_edge)
                    || cofaces != 1
                {
                    return Err(Error::InvalidComplex(format!(
                        "edge {free_edge} is not a free face of triangle {triangle}"
                    )));
                }
                self.edges.remove(&free_edge);
                self.triangles.remove(&triangle);
            }
            ElementaryStep::Edge { edge, vertex, .. } => {
                let covered = self
                    .triangles
                    .iter()
                    .any(|&i| face_has_edge(&faces[i], edge));
                if !self.edges.contains(&edge)
                    || !edge.contains(vertex)
                    || covered
                    || self.degree(vertex) != 1
                {
                    return Err(Error::InvalidComplex(format!(
                        "vertex {vertex} is not a free face of edge {edge}"
                    )));
                }
                self.edges.remove(&edge);
                self.vertices.remove(&vertex);
            }
        }
        Ok(())
    }
}

fn face_has_edge(face: &[VertexId; 3], e: EdgeKey) -> bool {
    face.contains(&e.lo()) && face.contains(&e.hi())
}

/// Greedy collapse: while triangles remain, remove the smallest free edge
/// with its triangle; then strip leaf edges, removing the larger endpoint
/// when both are leaves, until only the smallest vertex is left.
pub fn elementary_collapse_sequence(t: &Triangulation) -> Result<CollapseSequence> {
    let faces = t.faces();
    let mut cofaces: BTreeMap<EdgeKey, BTreeSet<usize>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for k in 0..3 {
            cofaces
                .entry(EdgeKey::new(f[k], f[(k + 1) % 3]))
                .or_default()
                .insert(i);
        }
    }
    let mut state = ComplexState::of(t);
    let mut steps = Vec::new();

    while !state.triangles.is_empty() {
        let free = state.edges.iter().find_map(|e| {
            let live = cofaces.get(e)?;
            (live.len() == 1).then(|| (*e, *live.first().expect("one coface")))
        });
        let Some((free_edge, triangle)) = free else {
            return Err(Error::Stuck {
                triangles: state.triangles.len(),
            });
        };
        let step = ElementaryStep::Face {
            stage: steps.len(),
            free_edge,
            triangle,
        };
        state.apply(t, &step)?;
        for k in 0..3 {
            let f = faces[triangle];
            if let Some(set) = cofaces.get_mut(&EdgeKey::new(f[k], f[(k + 1) % 3])) {
                set.remove(&triangle);
            }
        }
        steps.push(step);
    }

    let mut degree: BTreeMap<VertexId, usize> = state.vertices.iter().map(|v| (*v, 0)).collect();
    for e in &state.edges {
        *degree.entry(e.lo()).or_default() += 1;
        *degree.entry(e.hi()).or_default() += 1;
    }
    // the smallest vertex is kept; a tree always has another leaf
    let keep = *state
        .vertices
        .first()
        .ok_or_else(|| Error::InvalidComplex("complex has no vertices".into()))?;
    while state.vertices.len() > 1 {
        let leaf = state.edges.iter().find_map(|e| {
            let free = |v: VertexId| v != keep && degree[&v] == 1;
            match (free(e.lo()), free(e.hi())) {
                (_, true) => Some((*e, e.hi())),
                (true, false) => Some((*e, e.lo())),
                _ => None,
            }
        });
        let Some((edge, vertex)) = leaf else {
            return Err(Error::Stuck { triangles: 0 });
        };
        let step = ElementaryStep::Edge {
            stage: steps.len(),
            edge,
            vertex,
        };
        state.apply(t, &step)?;
        *degree.get_mut(&edge.lo()).expect("endpoint") -= 1;
        *degree.get_mut(&edge.hi()).expect("endpoint") -= 1;
        steps.push(step);
    }
    let terminal = *state
        .vertices
        .first()
        .ok_or_else(|| Error::InvalidComplex("collapse removed every vertex".into()))?;
    Ok(CollapseSequence { steps, terminal })
}

/// Every intermediate complex `K_0, K_1, ..., K_n`, checking each step.
pub fn replay(t: &Triangulation, seq: &CollapseSequence) -> Result<Vec<ComplexState>> {
    let mut state = ComplexState::of(t);
    let mut out = vec![state.clone()];
    for step in &seq.steps {
        state.apply(t, step)?;
        out.push(state.clone());
    }
    let last = &out[out.len() - 1];
    if last.vertices != BTreeSet::from([seq.terminal])
        || last.edges.len() + last.triangles.len() != 0
    {
        return Err(Error::InvalidComplex(
            "trace does not end at its terminal vertex".into(),
        ));
    }
    Ok(out)
}
