//! Pachner moves, the composite moves built from them, and move sequences.

mod composite;
mod elementary;
pub mod engine;
mod search;
mod sequence;
mod shell;
mod subdivision;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use composite::{
    first_coned_subdivision, two_dim_move, vertex_add_move, ConedSubdivision, TwoDimKind,
};
pub use elementary::{
    apply_elementary, enumerate_moves, inverse_of, scramble, to_bistellar, translate_site,
};
pub use engine::{apply_bistellar, Applied, Bistellar};
pub use search::{bounded_pachner_search, SearchOutcome, SearchStats};
pub use sequence::{apply_move, expand_move, reverse_path, MoveSequence, Replay, Step};
pub use shell::{cone_shelling, shelling_order, Ball};
pub use subdivision::{
    subdivision_move_bound, subdivision_move_sequence, subdivision_move_sequence_with_budget,
    SHELLING_BUDGET,
};

/// Kinds of move. The first four are elementary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    OneFour,
    FourOne,
    TwoThree,
    ThreeTwo,
    TwoDimOneThree,
    TwoDimTwoTwo,
    TwoDimThreeOne,
    VertexAdd,
    ConeShell,
}

impl MoveKind {
    pub const ALL: [MoveKind; 9] = [
        MoveKind::OneFour,
        MoveKind::FourOne,
        MoveKind::TwoThree,
        MoveKind::ThreeTwo,
        MoveKind::TwoDimOneThree,
        MoveKind::TwoDimTwoTwo,
        MoveKind::TwoDimThreeOne,
        MoveKind::VertexAdd,
        MoveKind::ConeShell,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::OneFour => "1-4",
            MoveKind::FourOne => "4-1",
            MoveKind::TwoThree => "2-3",
            MoveKind::ThreeTwo => "3-2",
            MoveKind::TwoDimOneThree => "2D-1-3",
            MoveKind::TwoDimTwoTwo => "2D-2-2",
            MoveKind::TwoDimThreeOne => "2D-3-1",
            MoveKind::VertexAdd => "VERTEX-ADD",
            MoveKind::ConeShell => "CONE-SHELL",
        }
    }

    pub fn is_elementary(self) -> bool {
        matches!(
            self,
            MoveKind::OneFour | MoveKind::FourOne | MoveKind::TwoThree | MoveKind::ThreeTwo
        )
    }

    /// Change in tetrahedron count for elementary kinds.
    pub fn tet_delta(self) -> Option<i64> {
        match self {
            MoveKind::OneFour => Some(3),
            MoveKind::FourOne => Some(-3),
            MoveKind::TwoThree => Some(1),
            MoveKind::ThreeTwo => Some(-1),
            _ => None,
        }
    }

    /// The elementary kind that undoes this one.
    pub fn inverse(self) -> Option<MoveKind> {
        match self {
            MoveKind::OneFour => Some(MoveKind::FourOne),
            MoveKind::FourOne => Some(MoveKind::OneFour),
            MoveKind::TwoThree => Some(MoveKind::ThreeTwo),
            MoveKind::ThreeTwo => Some(MoveKind::TwoThree),
            MoveKind::TwoDimOneThree => Some(MoveKind::TwoDimThreeOne),
            MoveKind::TwoDimThreeOne => Some(MoveKind::TwoDimOneThree),
            MoveKind::TwoDimTwoTwo => Some(MoveKind::TwoDimTwoTwo),
            _ => None,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MoveKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MoveKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown move kind {s:?}"))
    }
}

impl Serialize for MoveKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for MoveKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A move and where it acts.
///
/// Site encodings, all in terms of the triangulation the move is applied to:
///
/// | kind | site |
/// |---|---|
/// | 1-4 | `[tet]` |
/// | 4-1 | `[tet, vertex]` |
/// | 2-3 | `[tet, face]` |
/// | 3-2 | `[tet, a, b]` (edge `ab` of `tet`) |
/// | 2D-1-3 | `[tet, face]` (the triangle is `face`, its cone point the opposite vertex) |
/// | 2D-2-2 | `[tet, face, vertex]` (flip the edge of the triangle opposite `vertex`) |
/// | 2D-3-1 | `[tet, face, vertex]` (remove `vertex`, a corner of the triangle) |
/// | VERTEX-ADD | `[tet, a, b]` |
/// | CONE-SHELL | `[tet, shared-face mask, ...]` in build-up order |
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub site: Vec<usize>,
}

impl Move {
    pub fn new(kind: MoveKind, site: Vec<usize>) -> Move {
        Move { kind, site }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.kind, self.site)
    }
}
