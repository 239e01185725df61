//! Numerical search for a representation of a finitely presented group into
//! PSL(2,C) that matches prescribed images on chosen words.
//!
//! Success means every relator evaluates to ±I and every matching word to
//! ± its target, both within tolerance. Surjectivity onto the target group
//! is not checked.

use glu_core::dual::{DualGraph, SpanningTree};
use glu_core::pi1::{reduce, Presentation};
use glu_core::Triangulation;
use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::isometry::Isometry;
use crate::lm::{levenberg_marquardt, LmOptions};

pub const SURJECTION_FORMAT: &str = "glu-rep/1";

#[derive(Debug, Clone)]
pub struct SurjectionOptions {
    pub restarts: usize,
    pub tol: f64,
    pub seed: u64,
    pub max_iterations: usize,
}

impl Default for SurjectionOptions {
    fn default() -> Self {
        SurjectionOptions {
            restarts: 20,
            tol: 1e-10,
            seed: 0,
            max_iterations: 200,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SurjectionCertificate {
    pub matrices: Vec<Isometry>,
    /// Largest entry of `W ∓ I` over the relators.
    pub relator_residual: f64,
    /// Largest entry of `W ∓ target` over the matching words.
    pub matching_residual: f64,
    pub restart: usize,
}

impl SurjectionCertificate {
    pub fn residual(&self) -> f64 {
        self.relator_residual.max(self.matching_residual)
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "format": SURJECTION_FORMAT,
            "matrices": self.matrices.iter().map(Isometry::to_json_value).collect::<Vec<_>>(),
            "relator_residual": self.relator_residual,
            "matching_residual": self.matching_residual,
            "restart": self.restart,
            "surjectivity_checked": false,
        })
    }
}

#[derive(Debug, Clone, Error)]
#[error("no representation found in {restarts} restarts (best residual {best_residual:e})")]
pub struct RepresentationNotFound {
    pub restarts: usize,
    pub best_residual: f64,
}

/// Product of the generator images along a word of signed 1-based letters.
pub fn evaluate_word(gens: &[Isometry], word: &[i64]) -> Isometry {
    word.iter().fold(Isometry::IDENTITY, |acc, &l| {
        let g = gens[l.unsigned_abs() as usize - 1];
        acc.mul(&if l > 0 { g } else { g.inverse() })
    })
}

/// The presentation read off a face-pairing development: one generator per
/// non-tree dual edge (ascending, matching the order of the developed
/// pairings) and one relator per edge class, read by walking once around
/// the edge. Crossing a non-tree face from its source side contributes the
/// inverse of its generator, from its target side the generator itself.
pub fn poincare_presentation(tri: &Triangulation, tree: &SpanningTree) -> Presentation {
    let dual = DualGraph::new(tri);
    let non_tree = dual.non_tree_edges(tree);
    let mut letter_of = vec![0i64; dual.edges.len()];
    for (s, &e) in non_tree.iter().enumerate() {
        letter_of[e] = s as i64 + 1;
    }
    let t = tri.tet_count();
    let mut seen = vec![[false; 6]; t];
    let mut relators = Vec::new();
    for i in 0..t {
        for (slot, &(a, b)) in glu_core::skeleton::EDGES.iter().enumerate() {
            if seen[i][slot] {
                continue;
            }
            let f = (0..4).find(|&v| v != a && v != b).unwrap();
            let start = (i, a, b, f);
            let mut state = start;
            let mut word = Vec::new();
            loop {
                let (ci, ca, cb, cf) = state;
                seen[ci][glu_core::skeleton::edge_index(ca.min(cb), ca.max(cb))] = true;
                let e = dual.edge_at[ci][cf];
                if letter_of[e] != 0 {
                    let g = dual.edges[e];
                    let from_source = g.source == (ci, cf);
                    word.push(if from_source { -letter_of[e] } else { letter_of[e] });
                }
                let (j, p) = tri.neighbor(ci, cf);
                let (na, nb, entered) = (p.apply(ca), p.apply(cb), p.apply(cf));
                let r = (0..4).find(|&v| v != na && v != nb && v != entered).unwrap();
                state = (j, na, nb, r);
                if state == start {
                    break;
                }
            }
            let word = reduce(&word);
            if !word.is_empty() {
                relators.push(word);
            }
        }
    }
    Presentation {
        generators: non_tree,
        relators,
    }
}

fn to_vec(ms: &[Isometry]) -> Vec<f64> {
    ms.iter()
        .flat_map(|m| m.entries().into_iter().flat_map(|z| [z.re, z.im]))
        .collect()
}

fn from_vec(x: &[f64]) -> Vec<Isometry> {
    x.chunks(8)
        .map(|c| {
            Isometry::new(
                C::new(c[0], c[1]),
                C::new(c[2], c[3]),
                C::new(c[4], c[5]),
                C::new(c[6], c[7]),
            )
        })
        .collect()
}

/// Entry differences `w - s t`, with the sign `s` that fits best.
fn signed_difference(w: &Isometry, t: &Isometry, out: &mut Vec<f64>) {
    let gap = |s: f64| w.entries().iter().zip(t.entries()).map(|(x, y)| (x - y * s).norm()).fold(0.0, f64::max);
    let s = if gap(1.0) <= gap(-1.0) { 1.0 } else { -1.0 };
    for (x, y) in w.entries().iter().zip(t.entries()) {
        let d = x - y * s;
        out.push(d.re);
        out.push(d.im);
    }
}

struct Residuals {
    det: f64,
    relator: f64,
    matching: f64,
}

fn residual_parts(ms: &[Isometry], source: &Presentation, matching: &[(Vec<i64>, Isometry)]) -> Residuals {
    let max_abs = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let det = ms.iter().map(|m| (m.det() - 1.0).norm()).fold(0.0, f64::max);
    let mut buf = Vec::new();
    for r in &source.relators {
        signed_difference(&evaluate_word(ms, r), &Isometry::IDENTITY, &mut buf);
    }
    let relator = max_abs(&buf);
    buf.clear();
    for (w, target) in matching {
        signed_difference(&evaluate_word(ms, w), target, &mut buf);
    }
    Residuals { det, relator, matching: max_abs(&buf) }
}

/// Searches for images of the generators of `source` in SL(2,C) such that
/// every relator maps to ±I and every matching word to ± its target.
///
/// The first start uses the targets of single-letter matching words and
/// the identity elsewhere; later starts perturb it randomly.
pub fn rep_surjection_search(
    source: &Presentation,
    matching: &[(Vec<i64>, Isometry)],
    opts: &SurjectionOptions,
) -> Result<SurjectionCertificate, RepresentationNotFound> {
    let k = source.generators.len();
    let mut seed_mats = vec![Isometry::IDENTITY; k];
    for (w, target) in matching {
        if let [l] = w.as_slice() {
            let idx = l.unsigned_abs() as usize - 1;
            seed_mats[idx] = if *l > 0 { *target } else { target.inverse() };
        }
    }
    let f = |x: &[f64]| -> Option<Vec<f64>> {
        if x.iter().any(|v| !v.is_finite()) {
            return None;
        }
        let ms = from_vec(x);
        let mut out = Vec::new();
        for m in &ms {
            let d = m.det() - 1.0;
            out.push(d.re);
            out.push(d.im);
        }
        for r in &source.relators {
            signed_difference(&evaluate_word(&ms, r), &Isometry::IDENTITY, &mut out);
        }
        for (w, target) in matching {
            signed_difference(&evaluate_word(&ms, w), target, &mut out);
        }
        Some(out)
    };
    let lm = LmOptions {
        max_iterations: opts.max_iterations,
        tol: opts.tol * 1e-2,
        ..LmOptions::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best = f64::INFINITY;
    for restart in 0..opts.restarts.max(1) {
        let mut x0 = to_vec(&seed_mats);
        if restart > 0 {
            let noise = 0.5f64.powi(((restart - 1) % 6) as i32);
            for v in &mut x0 {
                *v += noise * rng.gen_range(-1.0..1.0);
            }
        }
        let Some(run) = levenberg_marquardt(f, x0, lm) else {
            continue;
        };
        let ms: Vec<Isometry> = from_vec(&run.x);
        let parts = residual_parts(&ms, source, matching);
        let worst = parts.det.max(parts.relator).max(parts.matching);
        best = best.min(worst);
        if worst < opts.tol {
            return Ok(SurjectionCertificate {
                matrices: ms,
                relator_residual: parts.relator.max(parts.det),
                matching_residual: parts.matching,
                restart,
            });
        }
    }
    Err(RepresentationNotFound {
        restarts: opts.restarts.max(1),
        best_residual: best,
    })
}
