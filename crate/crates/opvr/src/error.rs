use thiserror::Error;

/// Errors raised by graph validation, network construction and the drawing
/// pipelines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error("dummy node {0} has degree {1}, expected 4")]
    InvalidDummyDegree(usize, usize),
    #[error("edge {0} has a broken chain: {1}")]
    BrokenChain(usize, String),
    #[error("planarization is not connected")]
    DisconnectedPlanarization,
    #[error("rotation mismatch at node {0}: {1}")]
    RotationMismatch(usize, String),
    #[error("edges at dummy {0} do not alternate around the crossing")]
    NonAlternatingCrossing(usize),
    #[error("graph is not 1-plane (edge {0} has {1} crossings)")]
    NotOnePlane(usize, usize),
    #[error("graph is not 3-connected")]
    NotThreeConnected,
    #[error("graph is not 2-connected")]
    NotBiconnected,
    #[error("poles must be two distinct vertices on the outer face")]
    PolesNotOuter,
    #[error("graph is not a maximal plane graph")]
    NotTriangulated,
    #[error("st-graph is not maximal plane")]
    NotMaximal,
    #[error("interior face {0} consists of dummy vertices only and has degree {1} != 4")]
    ImpossibleFace(usize, usize),
    #[error("arc {0} has lower bound {1} exceeding capacity {2}")]
    InvalidArc(usize, i64, i64),
    #[error("enumeration space too large: {0} states exceed the bound {1}")]
    TooLarge(u128, u128),
    #[error("no embedding-preserving ortho-polygon visibility representation exists")]
    NoOpvr,
    #[error("no drawing case applies to crossing pair at dummy {0}; upstream invariant broken")]
    CaseAnalysisFailure(usize),
    #[error("generation failed after {attempts} attempts (seed {seed})")]
    GenerationFailure { seed: u64, attempts: u32 },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
