use thiserror::Error;

use crate::geometry::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coordinate is not finite: ({x}, {y})")]
    NonFinite { x: f64, y: f64 },

    #[error("path from {0} to itself is a self-loop")]
    SelfLoop(VertexId),

    #[error("a path needs at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("consecutive path points coincide at ({x}, {y})")]
    CoincidentSamples { x: f64, y: f64 },

    #[error("path {start}->{end} does not start/end on its vertex coordinates")]
    DetachedEndpoint { start: VertexId, end: VertexId },

    #[error("interior sample of path {start}->{end} lands on vertex {vertex}")]
    SampleOnVertex {
        start: VertexId,
        end: VertexId,
        vertex: VertexId,
    },

    #[error("path endpoints do not chain: {found} where {expected} was expected")]
    EndpointMismatch { expected: VertexId, found: VertexId },

    #[error("triangle vertices are not pairwise distinct")]
    DuplicateVertices,

    #[error("degenerate geometry: {0}")]
    Degenerate(&'static str),

    #[error("fiber count must be at least {min}, got {got}")]
    TooFewFibers { min: usize, got: usize },

    #[error("path class has no representatives")]
    EmptyClass,

    #[error("need at least 3 points")]
    TooFewPoints,

    #[error("points {0} and {1} coincide")]
    DuplicatePoints(VertexId, VertexId),

    #[error("all points are collinear")]
    Collinear,

    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("a path cycle needs at least 3 paths, got {0}")]
    CycleTooShort(usize),

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("generator {0} is not in the basis")]
    ForeignGenerator(VertexId),

    #[error("word moves {steps} steps but the witness toward {target} has {len}")]
    StepsExceedWitness {
        steps: i64,
        len: usize,
        target: VertexId,
    },

    #[error("evaluating a word on a complex carrier needs a target vertex")]
    MissingTarget,

    #[error("relation for {vertex} evaluates to {got}")]
    RelationMismatch { vertex: VertexId, got: VertexId },

    #[error("no free pair left with {triangles} triangles remaining")]
    Stuck { triangles: usize },

    #[error("vertex ({x}, {y}) is not on the circle")]
    OffCircle { x: f64, y: f64 },
}
