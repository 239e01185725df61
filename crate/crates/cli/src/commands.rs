use std::fs;

use glu_core::link::is_closed_3_manifold;
use glu_core::orient::orientation;
use glu_core::pachner::{bounded_pachner_search, enumerate_moves, MoveSequence};
use glu_core::pi1::{
    abelianization, face_pairing_words, partial_barycentric_subdivision,
    presentation_from_triangulation,
};
use glu_core::quotient::{enumerate_quotients, QuotientFilters};
use glu_core::signature::iso_signature;
use glu_core::{MoveError, Pi1Error, Skeleton, Triangulation};
use glu_geom::{
    build_poly_system, edge_length_bound_check, solve_structure, verify_poincare_conditions,
    AngleMode, BoxChoice, HyperbolicStructure, NoSolutionFound, SolveOptions,
};
use serde_json::{json, Value};

use crate::bound::kalelkar_phanse_bound;
use crate::config::{Mode, PipelineConfig};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Completed,
    /// A budget ran out before the command could decide anything.
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Completed => 0,
            Status::Inconclusive => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub status: Status,
}

impl Outcome {
    fn done(report: Value) -> Outcome {
        Outcome { report, status: Status::Completed }
    }

    /// The report as written to disk: compact JSON and a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string(&self.report).expect("report serialization");
        s.push('\n');
        s
    }
}

pub fn load_triangulation(path: &str) -> Result<Triangulation, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })?;
    Ok(Triangulation::from_json(&text)?)
}

pub fn load_sequence(path: &str) -> Result<MoveSequence, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })?;
    Ok(MoveSequence::from_json(&text)?)
}

fn gluing_value(tri: &Triangulation) -> Value {
    serde_json::from_str(&tri.to_json()).expect("gluing serialization")
}

pub fn cmd_validate(tri: &Triangulation) -> Outcome {
    Outcome::done(json!({
        "format": "glu-validate/1",
        "signature": iso_signature(tri).as_str(),
        "tetrahedra": tri.tet_count(),
        "connected": tri.is_connected(),
        "closed_manifold": is_closed_3_manifold(tri),
        "orientable": orientation(tri).is_some(),
        "skeleton": Skeleton::new(tri).report(),
    }))
}

pub fn cmd_moves_enumerate(tri: &Triangulation) -> Outcome {
    let moves: Vec<Value> = enumerate_moves(tri)
        .iter()
        .map(|m| json!({"kind": m.kind.as_str(), "site": m.site}))
        .collect();
    Outcome::done(json!({
        "format": "glu-moves/1",
        "signature": iso_signature(tri).as_str(),
        "moves": moves,
    }))
}

pub fn cmd_moves_apply(tri: &Triangulation, seq: &MoveSequence) -> Result<Outcome, CliError> {
    let r = seq.replay(tri)?;
    Ok(Outcome::done(json!({
        "format": "glu-moves/1",
        "initial": seq.initial.as_str(),
        "final": seq.final_sig.as_str(),
        "moves": seq.len(),
        "elementary": r.elementary,
        "result": gluing_value(&r.result),
    })))
}

pub fn cmd_quotients(
    tri: &Triangulation,
    filters: QuotientFilters,
    cfg: &PipelineConfig,
) -> Result<Outcome, CliError> {
    cfg.check()?;
    let mut e = enumerate_quotients(tri, filters, Some(cfg.quotient_budget))?;
    let found: Vec<Value> = e
        .by_ref()
        .map(|r| {
            json!({
                "signature": iso_signature(&r.quotient).as_str(),
                "tetrahedra": r.quotient.tet_count(),
                "classes": r.classes,
                "degree": r.degree,
                "gluing": gluing_value(&r.quotient),
            })
        })
        .collect();
    let complete = e.is_complete();
    let report = json!({
        "format": "glu-quotients/1",
        "signature": iso_signature(tri).as_str(),
        "filters": {
            "oriented": filters.oriented,
            "degree_one": filters.degree_one,
            "manifold": filters.manifold,
        },
        "budget": cfg.quotient_budget,
        "scanned": e.scanned(),
        "complete": complete,
        "quotients": found,
    });
    let status = if complete { Status::Completed } else { Status::Inconclusive };
    Ok(Outcome { report, status })
}

pub fn cmd_pi1(tri: &Triangulation, words: Option<u64>) -> Result<Outcome, CliError> {
    let p = presentation_from_triangulation(tri)?;
    let h1 = abelianization(&p);
    let mut report = json!({
        "format": "glu-pi1/1",
        "signature": iso_signature(tri).as_str(),
        "presentation": p.to_json_value(),
        "homology": {
            "display": h1.to_string(),
            "free_rank": h1.free_rank,
            "torsion": h1.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        },
    });
    let mut status = Status::Completed;
    if let Some(max_len) = words {
        let x = partial_barycentric_subdivision(tri)?;
        let f = x.face_pairing_gens();
        let entry = match face_pairing_words(&x, max_len) {
            Ok(ws) => json!({
                "max_length": max_len,
                "subdivision_tetrahedra": x.subdivision.tri.tet_count(),
                "pairings": f.pairings.len(),
                "generators": ws.iter().map(|w| json!({"edge": w.edge, "word": w.word})).collect::<Vec<_>>(),
            }),
            Err(Pi1Error::BudgetExceeded(b)) => {
                status = Status::Inconclusive;
                json!({"max_length": max_len, "budget_exceeded": b})
            }
            Err(e) => return Err(e.into()),
        };
        report["face_pairing_words"] = entry;
    }
    Ok(Outcome { report, status })
}

/// Solves for a structure. In box mode the direct solution picks the box,
/// and the structure is certified again against the box system.
pub fn geometrize(
    tri: &Triangulation,
    cfg: &PipelineConfig,
) -> Result<(Result<HyperbolicStructure, NoSolutionFound>, Value), CliError> {
    cfg.check()?;
    let sys = build_poly_system(tri, AngleMode::Direct)?;
    let opts = SolveOptions {
        restarts: cfg.restarts,
        tol: cfg.tol,
        seed: cfg.seed,
        ..SolveOptions::default()
    };
    let found = solve_structure(&sys, &opts);
    let mut stats = json!({"direct": sys.stats()});
    let found = match (found, cfg.mode) {
        (Ok(s), Mode::Box) => {
            let angles: Vec<_> = s.tets.iter().map(|t| t.angles).collect();
            let boxed = build_poly_system(tri, AngleMode::BoxGuess(BoxChoice::containing(&angles)))?;
            stats["box"] = json!(boxed.stats());
            let again = SolveOptions {
                restarts: 1,
                initial: Some(s.edge_lengths.clone()),
                ..opts
            };
            solve_structure(&boxed, &again)
        }
        (r, _) => r,
    };
    Ok((found, stats))
}

fn structure_summary(s: &HyperbolicStructure, tri: &Triangulation, cfg: &PipelineConfig) -> Value {
    let report = verify_poincare_conditions(&s.vertices(), tri, cfg.tol.max(1e-8));
    let systole = s.systole_estimate(cfg.systole_words);
    json!({
        "residual": s.residual,
        "max_angle_defect": report.max_defect(),
        "max_length_spread": report.max_spread(),
        "poincare": report.pass,
        "restart": s.restart,
        "max_edge_length": s.max_edge_length(),
        "systole_estimate": systole,
        "edge_length_check": systole.map(|sy| edge_length_bound_check(&s.edge_lengths, cfg.c, sy)),
    })
}

pub fn cmd_geometrize(tri: &Triangulation, cfg: &PipelineConfig) -> Result<Outcome, CliError> {
    let (found, stats) = geometrize(tri, cfg)?;
    let mut report = json!({
        "format": "glu-geometrize/1",
        "signature": iso_signature(tri).as_str(),
        "mode": cfg.mode.as_str(),
        "seed": cfg.seed,
        "stats": stats,
    });
    let status = match found {
        Ok(s) => {
            report["result"] = json!("structure");
            report["summary"] = structure_summary(&s, tri, cfg);
            report["structure"] = s.to_json_value();
            Status::Completed
        }
        Err(e) => {
            report["result"] = json!("no-structure-found");
            report["restarts"] = json!(e.restarts);
            report["best_residual"] = json!(e.best_residual);
            Status::Inconclusive
        }
    };
    Ok(Outcome { report, status })
}

struct Side {
    value: Value,
    /// Largest edge length and injectivity-radius estimate.
    geometry: Option<(f64, f64)>,
}

fn compare_side(tri: &Triangulation, cfg: &PipelineConfig) -> Result<Side, CliError> {
    let mut value = json!({
        "signature": iso_signature(tri).as_str(),
        "tetrahedra": tri.tet_count(),
    });
    let eligible = is_closed_3_manifold(tri) && orientation(tri).is_some();
    if !cfg.geometrize || !eligible {
        let why = if cfg.geometrize { "not a closed orientable manifold" } else { "skipped" };
        value["geometry"] = json!({"result": why});
        return Ok(Side { value, geometry: None });
    }
    let (found, _) = geometrize(tri, cfg)?;
    let geometry = match found {
        Ok(s) => {
            let summary = structure_summary(&s, tri, cfg);
            let l = s.max_edge_length();
            let inj = s.systole_estimate(cfg.systole_words).map(|sy| sy / 2.0);
            value["geometry"] = json!({"result": "structure", "summary": summary});
            inj.map(|i| (l, i))
        }
        Err(e) => {
            value["geometry"] = json!({
                "result": "no-structure-found",
                "restarts": e.restarts,
                "best_residual": e.best_residual,
            });
            None
        }
    };
    Ok(Side { value, geometry })
}

/// Geometrizes both inputs when possible, computes the Kalelkar–Phanse
/// bound from the structures, and searches for a move sequence within
/// `min(bound, cap)` moves. A failed search is inconclusive, never a proof
/// that the inputs differ.
pub fn cmd_compare(a: &Triangulation, b: &Triangulation, cfg: &PipelineConfig) -> Result<Outcome, CliError> {
    cfg.check()?;
    let sa = compare_side(a, cfg)?;
    let sb = compare_side(b, cfg)?;
    let kp = match (sa.geometry, sb.geometry) {
        (Some((la, ia)), Some((lb, ib))) => Some(kalelkar_phanse_bound(
            a.tet_count() as u64,
            b.tet_count() as u64,
            la.max(lb),
            ia.min(ib),
        )),
        _ => None,
    };
    let budget = kp.map_or(cfg.cap, |k| k.clamp(cfg.cap));
    let mut report = json!({
        "format": "glu-compare/1",
        "config": cfg.to_json_value(),
        "a": sa.value,
        "b": sb.value,
        "bounds": {
            "kalelkar_phanse": kp.map(|k| k.to_json_value()),
            "budget_used": budget,
        },
    });
    let status = match bounded_pachner_search(a, b, budget, cfg.node_cap) {
        Ok(out) => {
            // the witness must replay between the two signatures
            let r = out.sequence.replay(a)?;
            debug_assert_eq!(iso_signature(&r.result), iso_signature(b));
            report["verdict"] = json!("homeomorphic-witness");
            report["witness"] = out.sequence.to_json_value();
            report["search"] = json!(out.stats);
            Status::Completed
        }
        Err(MoveError::BudgetExceeded(_)) => {
            report["verdict"] = json!("inconclusive");
            report["witness"] = Value::Null;
            Status::Inconclusive
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome { report, status })
}
