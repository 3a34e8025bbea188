use thiserror::Error;

/// Errors raised by the mesh kernel, energies, optimizer and forest engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("mesh has no faces")]
    EmptyMesh,
    #[error("face {face} references vertex {vertex} but the mesh has {count} vertices")]
    IndexOutOfRange { face: usize, vertex: usize, count: usize },
    #[error("face {face} repeats a vertex")]
    RepeatedVertex { face: usize },
    #[error("vertex {vertex} is not referenced by any face")]
    UnreferencedVertex { vertex: usize },
    #[error("edge ({a}, {b}) is shared by {count} faces, expected exactly 2")]
    NonManifoldEdge { a: usize, b: usize, count: usize },
    #[error("edge ({a}, {b}) appears twice with the same direction; face orientations are inconsistent")]
    InconsistentOrientation { a: usize, b: usize },
    #[error("face {face} is degenerate (area {area:e} below threshold {threshold:e})")]
    DegenerateFace { face: usize, area: f64, threshold: f64 },
    #[error("enclosed volume {volume:e} is not positive; faces appear to be oriented inward")]
    Orientation { volume: f64 },
    #[error("face {face} has an angle below 1e-3 rad; cotangent weights blow up")]
    CotangentBlowup { face: usize },
    #[error("vertex {vertex} has valence {valence}, above the supported maximum {max}")]
    ValenceTooLarge { vertex: usize, valence: usize, max: usize },
    #[error("non-finite gradient at vertex {vertex}")]
    NonFiniteGradient { vertex: usize },
    #[error("position buffer has {got} entries, mesh has {expected} vertices")]
    PositionCount { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("infeasible constraints: {0}")]
    Infeasible(String),
    #[error("mesh degenerated during optimization at outer iteration {outer}: min face area {min_area:e} below {threshold:e}")]
    MeshDegenerated { outer: usize, min_area: f64, threshold: f64 },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("invalid forest: {0}")]
    Forest(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
