//! Fundamental groups: presentations from the 1-skeleton, abelianization,
//! and face-pairing words for the simplicial generators of X′.

mod generators;
mod presentation;
mod smith;

pub use generators::{
    face_pairing_words, partial_barycentric_subdivision, verify_words, CutPolyhedron,
    FacePairingGens, GeneratorWord, PartialBarycentric,
};
pub use presentation::{invert, presentation_from_triangulation, reduce, Presentation};
pub use smith::{abelianization, smith_diagonal, Abelianization};
