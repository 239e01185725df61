//! Hyperbolic geometry for triangulated closed 3-manifolds: model points,
//! tetrahedra, gluing-equation systems, a numerical structure solver,
//! developing maps and face-pairing isometries.

pub mod dodecahedral;
pub mod error;
pub mod isometry;
pub mod lm;
pub mod model;
pub mod poly;
pub mod solve;
pub mod structure;
pub mod surjection;
pub mod system;
pub mod tetra;

pub use error::GeomError;
pub use isometry::{systole_estimate, translation_length, Isometry};
pub use model::{PointBall, PointHyperboloid, PointUHS};
pub use solve::{solve_structure, NoSolutionFound, SolveOptions};
pub use structure::{
    edge_length_bound_check, face_pairing_isometries, verify_poincare_conditions, Development,
    FacePairing, HyperbolicStructure, PoincareReport,
};
pub use surjection::{
    evaluate_word, poincare_presentation, rep_surjection_search, RepresentationNotFound,
    SurjectionCertificate, SurjectionOptions,
};
pub use system::{build_poly_system, AngleMode, BoxChoice, PolySystem, SystemStats};
pub use tetra::{dihedral_angles, ModelTetrahedron};
