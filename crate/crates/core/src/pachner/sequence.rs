use serde_json::{json, Value};

use super::composite;
use super::elementary::{apply_elementary, inverse_of, translate_site};
use super::engine::{facet_labels, local_of, Applied};
use super::shell;
use super::{Move, MoveKind};
use crate::error::MoveError;
use crate::perm::Perm4;
use crate::signature::{iso_signature, IsoSignature, Relabeling};
use crate::tri::Triangulation;

/// Version tag of the move-sequence format.
pub const SEQUENCE_FORMAT: &str = "mvs/1";

/// One applied elementary move.
#[derive(Debug, Clone)]
pub struct Step {
    pub mv: Move,
    pub applied: Applied,
}

impl Step {
    pub fn result(&self) -> &Triangulation {
        &self.applied.result
    }
}

/// Expands any move into the elementary moves it performs, applied in order.
/// Composite moves are atomic: either every step applies or an error is returned.
pub fn expand_move(tri: &Triangulation, mv: &Move) -> Result<Vec<Step>, MoveError> {
    match mv.kind {
        k if k.is_elementary() => {
            let applied = apply_elementary(tri, mv)?;
            Ok(vec![Step {
                mv: mv.clone(),
                applied,
            }])
        }
        MoveKind::TwoDimOneThree | MoveKind::TwoDimTwoTwo | MoveKind::TwoDimThreeOne => {
            composite::expand_two_dim(tri, mv)
        }
        MoveKind::VertexAdd => composite::expand_vertex_add(tri, mv).map(|(steps, _)| steps),
        MoveKind::ConeShell => shell::expand_cone_shell(tri, mv),
        _ => unreachable!(),
    }
}

/// Applies a move of any kind.
pub fn apply_move(tri: &Triangulation, mv: &Move) -> Result<Triangulation, MoveError> {
    let steps = expand_move(tri, mv)?;
    Ok(steps
        .last()
        .map(|s| s.applied.result.clone())
        .unwrap_or_else(|| tri.clone()))
}

/// Applies elementary moves one after another, keeping the records.
pub(crate) fn run_elementary(tri: &Triangulation, moves: &[Move]) -> Result<Vec<Step>, MoveError> {
    let mut steps: Vec<Step> = Vec::with_capacity(moves.len());
    for mv in moves {
        let cur = steps.last().map(|s| &s.applied.result).unwrap_or(tri);
        let applied = apply_elementary(cur, mv)?;
        steps.push(Step {
            mv: mv.clone(),
            applied,
        });
    }
    Ok(steps)
}

/// Correspondence from the triangulation before `first` to the result of
/// `second`, where `second` undoes `first` after relabeling by `phi`.
fn undo_map(first: &Applied, phi: &Relabeling, second: &Applied) -> Relabeling {
    let mut pi = [None::<u8>; 5];
    for &(c, n) in &first.created {
        let z = phi.tet_map[n];
        let pp = phi.perms[n];
        let lab2 = second
            .removed
            .iter()
            .find(|r| r.1 == z)
            .expect("inverse removes the created tetrahedra")
            .2;
        for (a, &l) in facet_labels(c).iter().enumerate() {
            pi[l as usize] = Some(lab2[pp.apply(a)]);
        }
    }
    if let Some(free) = (0..5).find(|&l| pi[l].is_none()) {
        let used: Vec<u8> = pi.iter().flatten().copied().collect();
        pi[free] = (0..5u8).find(|l| !used.contains(l));
    }
    let pi = pi.map(|x| x.unwrap());
    let t = first.old_to_new.len();
    let mut tet_map = vec![0; t];
    let mut perms = vec![Perm4::IDENTITY; t];
    for x in 0..t {
        match first.old_to_new[x] {
            Some(y) => {
                let z = phi.tet_map[y];
                tet_map[x] = second.old_to_new[z].expect("kept tetrahedron survives the inverse");
                perms[x] = phi.perms[y];
            }
            None => {
                let &(m, _, lab1) = first.removed.iter().find(|r| r.1 == x).unwrap();
                let c2 = pi[m as usize];
                tet_map[x] = second.created_tet(c2).unwrap();
                let mut img = [0u8; 4];
                for a in 0..4 {
                    img[a] = local_of(c2, pi[lab1[a] as usize]) as u8;
                }
                perms[x] = Perm4::new(img).unwrap();
            }
        }
    }
    Relabeling { tet_map, perms }
}

/// Undoes `steps` (which lead from some `X_0` to `X_n`) starting from
/// `current`, given a relabeling `phi` carrying `X_n` onto `current`.
///
/// Returns the inverse steps and a relabeling carrying `X_0` onto the final
/// triangulation.
pub fn reverse_path(
    steps: &[Step],
    current: &Triangulation,
    phi: Relabeling,
) -> Result<(Vec<Step>, Relabeling), MoveError> {
    let mut out: Vec<Step> = Vec::with_capacity(steps.len());
    let mut phi = phi;
    for step in steps.iter().rev() {
        let cur = out.last().map(|s| &s.applied.result).unwrap_or(current);
        let inv = translate_site(&inverse_of(&step.applied), &phi);
        let applied = apply_elementary(cur, &inv)?;
        phi = undo_map(&step.applied, &phi, &applied);
        out.push(Step { mv: inv, applied });
    }
    Ok((out, phi))
}

/// Result of replaying a sequence.
#[derive(Debug, Clone)]
pub struct Replay {
    pub result: Triangulation,
    pub elementary: usize,
}

/// An ordered list of moves between two signatures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSequence {
    pub initial: IsoSignature,
    pub moves: Vec<Move>,
    pub final_sig: IsoSignature,
}

impl MoveSequence {
    pub fn empty(tri: &Triangulation) -> MoveSequence {
        let s = iso_signature(tri);
        MoveSequence {
            initial: s.clone(),
            moves: Vec::new(),
            final_sig: s,
        }
    }

    /// Builds a sequence by applying `moves` to `start`.
    pub fn record(start: &Triangulation, moves: Vec<Move>) -> Result<MoveSequence, MoveError> {
        let mut cur = start.clone();
        for m in &moves {
            cur = apply_move(&cur, m)?;
        }
        Ok(MoveSequence {
            initial: iso_signature(start),
            moves,
            final_sig: iso_signature(&cur),
        })
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Applies every move to `start` without checking signatures.
    pub fn replay_unchecked(&self, start: &Triangulation) -> Result<Replay, MoveError> {
        let mut cur = start.clone();
        let mut elementary = 0;
        for m in &self.moves {
            let steps = expand_move(&cur, m)?;
            elementary += steps.len();
            if let Some(last) = steps.into_iter().last() {
                cur = last.applied.result;
            }
        }
        Ok(Replay {
            result: cur,
            elementary,
        })
    }

    /// Replays from `start` and checks both endpoint signatures.
    pub fn replay(&self, start: &Triangulation) -> Result<Replay, MoveError> {
        let s0 = iso_signature(start);
        if s0 != self.initial {
            return Err(MoveError::ReplayMismatch {
                expected: self.initial.to_string(),
                found: s0.to_string(),
            });
        }
        let r = self.replay_unchecked(start)?;
        let s1 = iso_signature(&r.result);
        if s1 != self.final_sig {
            return Err(MoveError::ReplayMismatch {
                expected: self.final_sig.to_string(),
                found: s1.to_string(),
            });
        }
        Ok(r)
    }

    pub fn to_json_value(&self) -> Value {
        let moves: Vec<Value> = self
            .moves
            .iter()
            .map(|m| json!({"kind": m.kind.as_str(), "site": m.site}))
            .collect();
        json!({
            "format": SEQUENCE_FORMAT,
            "initial": self.initial.as_str(),
            "moves": moves,
            "final": self.final_sig.as_str(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("sequence serialization")
    }

    pub fn from_json(text: &str) -> Result<MoveSequence, MoveError> {
        let v: Value = serde_json::from_str(text).map_err(|e| MoveError::Format(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &Value) -> Result<MoveSequence, MoveError> {
        let bad = |m: &str| MoveError::Format(m.to_string());
        if v.get("format").and_then(Value::as_str) != Some(SEQUENCE_FORMAT) {
            return Err(bad("expected \"format\": \"mvs/1\""));
        }
        let sig = |key: &str| {
            v.get(key)
                .and_then(Value::as_str)
                .map(|s| IsoSignature(s.to_string()))
                .ok_or_else(|| bad(&format!("missing \"{key}\" signature")))
        };
        let moves = v
            .get("moves")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"moves\" array"))?
            .iter()
            .map(|m| {
                let kind = m
                    .get("kind")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("move without \"kind\""))?
                    .parse::<MoveKind>()
                    .map_err(MoveError::Format)?;
                let site = m
                    .get("site")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("move without \"site\""))?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|x| x as usize)
                            .ok_or_else(|| bad("site entries must be non-negative integers"))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Move { kind, site })
            })
            .collect::<Result<Vec<_>, MoveError>>()?;
        Ok(MoveSequence {
            initial: sig("initial")?,
            moves,
            final_sig: sig("final")?,
        })
    }
}
