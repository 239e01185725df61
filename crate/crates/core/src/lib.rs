//! Combinatorial core for closed 3-dimensional gluings.
//!
//! A [`Triangulation`] is a finite set of tetrahedra whose 4t faces are
//! paired off by vertex-label permutations. Everything else in this crate
//! (links, Pachner moves, simplicial quotients, fundamental groups) is a
//! pure function over that value.

pub mod census;
pub mod dual;
pub mod error;
pub mod link;
pub mod orient;
pub mod pachner;
pub mod perm;
pub mod pi1;
pub mod quotient;
pub mod signature;
pub mod skeleton;
pub mod subdivide;
pub mod tri;

pub use error::{DisconnectedGraph, GluingError, MoveError, Pi1Error, QuotientError};
pub use perm::Perm4;
pub use signature::IsoSignature;
pub use skeleton::{Skeleton, SkeletonReport};
pub use tri::{FaceGluing, Triangulation};
