use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("point is not in the model: {0}")]
    DegeneratePoint(String),
    #[error("degenerate tetrahedron {0}")]
    DegenerateTetrahedron(usize),
    #[error("triangulation is not orientable")]
    NotOrientable,
    #[error("structure has {found} tetrahedra but the triangulation has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("development clash at dual edge {edge}: {reason}")]
    DevelopmentClash { edge: usize, reason: String },
    #[error(transparent)]
    Disconnected(#[from] glu_core::DisconnectedGraph),
}
