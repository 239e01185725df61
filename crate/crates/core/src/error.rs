use thiserror::Error;

/// Rejections from [`crate::Triangulation::validate`] and the `glu3/1` reader.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GluingError {
    #[error("face {face} of tetrahedron {tet} has no partner: {reason}")]
    UnpairedFace {
        tet: usize,
        face: usize,
        reason: String,
    },
    #[error("face {face} of tetrahedron {tet} is glued to ({target_tet}, {target_face}) but the reverse record disagrees")]
    NonInvolutive {
        tet: usize,
        face: usize,
        target_tet: usize,
        target_face: usize,
    },
    #[error("face {face} of tetrahedron {tet} is glued to itself")]
    SelfGluedFace { tet: usize, face: usize },
    #[error(
        "face {face} of tetrahedron {tet} carries {images:?}, which is not a permutation of 0..4"
    )]
    BadPermutation {
        tet: usize,
        face: usize,
        images: Vec<i64>,
    },
    #[error("malformed gluing document: {0}")]
    Format(String),
}

/// Rejections from move application and move-sequence construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("ball has no shelling")]
    NotShellable,
    #[error("search budget of {0} exhausted")]
    BudgetExceeded(u64),
    #[error("not a subdivision: {0}")]
    NotASubdivision(String),
    #[error("replay ended at {found} instead of {expected}")]
    ReplayMismatch { expected: String, found: String },
    #[error("malformed move sequence: {0}")]
    Format(String),
}

impl MoveError {
    pub(crate) fn illegal(msg: impl Into<String>) -> Self {
        MoveError::IllegalMove(msg.into())
    }
}

/// A spanning structure was requested on a disconnected gluing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("gluing is disconnected: {reached} of {total} tetrahedra reachable from the root")]
pub struct DisconnectedGraph {
    pub reached: usize,
    pub total: usize,
}

/// Rejections from [`crate::quotient`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("face {face} of quotient tetrahedron {tet} would be glued to itself")]
    SelfIdentification { tet: usize, face: usize },
    #[error("more than two tetrahedra meet at face {face} of quotient tetrahedron {tet}")]
    FaceOvercrowding { tet: usize, face: usize },
    #[error("identifications induce a nontrivial self-map of tetrahedron {tet}")]
    InconsistentMaps { tet: usize },
    #[error("source or quotient is not orientable")]
    NotOrientable,
    #[error("degree differs between quotient tetrahedra: {0:?}")]
    DegreeMismatch(Vec<i64>),
    #[error("malformed quotient spec: {0}")]
    Format(String),
    #[error("quotient gluing is invalid: {0}")]
    Gluing(#[from] GluingError),
}

/// Failures of the fundamental-group machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Pi1Error {
    #[error(transparent)]
    Disconnected(#[from] DisconnectedGraph),
    #[error("no face-pairing word of length at most {0}")]
    BudgetExceeded(u64),
}
