use thiserror::Error;

/// Failures raised by validation, construction and the verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polygon has {0} vertices, at least 4 are required")]
    TooFewVertices(usize),
    #[error("vertex list is not origin symmetric: {0}")]
    NotSymmetric(String),
    #[error("vertex list is not strictly convex at vertex {0}")]
    NotConvex(usize),
    #[error("collinear vertices around vertex {0}")]
    CollinearVertices(usize),
    #[error("linear map is singular (det = {0})")]
    SingularMap(f64),
    #[error("consecutive vertices {0} and {1} give near-parallel polar constraints")]
    NearParallelConstraints(usize, usize),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("chord-scale interval is empty: {0}")]
    EmptyInterval(String),
    #[error("degenerate chord frame (x0 = {x0}, y0 = {y0})")]
    DegenerateChord { x0: f64, y0: f64 },
    #[error("scale parameter {u} outside [{lo}, {hi}]")]
    OutOfInterval { u: f64, lo: f64, hi: f64 },
    #[error("normalization made no progress: {0}")]
    NoProgress(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("volume product increased from {before} to {after}")]
    MonotonicityViolated { before: f64, after: f64 },
    #[error("argument outside the admissible domain: {0}")]
    DomainError(String),
    #[error("bound violated at m = {m}: {detail}")]
    BoundViolated { m: usize, detail: String },
    #[error("random draw degenerate after {0} attempts")]
    DegenerateDraw(usize),
    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
