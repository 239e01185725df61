//! Multi-start numerical solving for hyperbolic structures.
//!
//! The search runs in edge-class lengths: one unknown per edge class makes
//! the edge equations hold identically, and the residual is the angle sum
//! around each class minus 2π. Candidate lengths are realised as model
//! tetrahedra and certified against the full polynomial system, the
//! Poincaré conditions and the developing map.

use std::f64::consts::PI;

use glu_core::Skeleton;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::lm::{levenberg_marquardt, LmOptions};
use crate::structure::{face_pairing_isometries, verify_poincare_conditions, HyperbolicStructure, TOL_DEV};
use crate::system::PolySystem;
use crate::tetra::{angles_from_lengths, realize_from_lengths, ModelTetrahedron};

/// Restarts evaluated together; fixed so results do not depend on the
/// number of worker threads.
const BATCH: usize = 8;

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub restarts: usize,
    pub tol: f64,
    pub margin_min: f64,
    pub tol_dev: f64,
    pub seed: u64,
    /// Edge-class lengths tried before any random start.
    pub initial: Option<Vec<f64>>,
    pub max_iterations: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            restarts: 200,
            tol: 1e-10,
            margin_min: 1e-8,
            tol_dev: TOL_DEV,
            seed: 0,
            initial: None,
            max_iterations: 300,
        }
    }
}

/// Not a proof that no structure exists.
#[derive(Debug, Clone, Error, PartialEq)]
#[error("no hyperbolic structure found in {restarts} restarts (best angle residual {best_residual:e})")]
pub struct NoSolutionFound {
    pub restarts: usize,
    pub best_residual: f64,
}

fn tet_lengths(skeleton: &Skeleton, lengths: &[f64], i: usize) -> [f64; 6] {
    skeleton.edge_of[i].map(|c| lengths[c])
}

/// Angle sum minus 2π per edge class, or `None` if some tetrahedron does
/// not exist with these lengths.
pub fn angle_residual(sys: &PolySystem, skeleton: &Skeleton, lengths: &[f64]) -> Option<Vec<f64>> {
    let mut sums = vec![-2.0 * PI; skeleton.edge_count];
    for i in 0..sys.tet_count() {
        let angles = angles_from_lengths(tet_lengths(skeleton, lengths, i))?;
        for n in 0..6 {
            sums[skeleton.edge_of[i][n]] += angles[n];
        }
    }
    Some(sums)
}

/// Near-regular random lengths: a common scale with multiplicative noise,
/// shrinking the noise until every tetrahedron exists. Equal lengths
/// always do.
fn random_start(sys: &PolySystem, skeleton: &Skeleton, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let scale = rng.gen_range(0.3..2.0);
    let noise: Vec<f64> = (0..skeleton.edge_count).map(|_| rng.gen_range(-1.0f64..1.0)).collect();
    let mut spread = 0.5;
    loop {
        let lengths: Vec<f64> = noise.iter().map(|z| scale * (spread * z).exp()).collect();
        if spread < 1e-3 || angle_residual(sys, skeleton, &lengths).is_some() {
            return lengths;
        }
        spread *= 0.7;
    }
}

/// Realises lengths as model tetrahedra and certifies the result.
pub fn certify(sys: &PolySystem, lengths: &[f64], opts: &SolveOptions, restart: usize) -> Option<HyperbolicStructure> {
    let skeleton = Skeleton::new(&sys.tri);
    let vertices: Vec<_> = (0..sys.tet_count())
        .map(|i| realize_from_lengths(tet_lengths(&skeleton, lengths, i), sys.orientation[i]))
        .collect::<Result<_, _>>()
        .ok()?;
    let x = sys.assignment(&vertices).ok()?;
    let r = sys.residuals(&x);
    let report = verify_poincare_conditions(&vertices, &sys.tri, opts.tol);
    let residual = r.equality.max(report.max_defect());
    if !(residual < opts.tol && r.strict_margin >= opts.margin_min && r.weak_violation <= opts.tol && report.pass) {
        return None;
    }
    let tree = sys.dual.spanning_tree(0).ok()?;
    let dev = face_pairing_isometries(&vertices, &sys.tri, &tree, 0, opts.tol_dev).ok()?;
    Some(HyperbolicStructure {
        tets: vertices.iter().map(|v| ModelTetrahedron::new(*v)).collect::<Result<_, _>>().ok()?,
        edge_lengths: lengths.to_vec(),
        face_pairings: dev.pairings,
        residual,
        angle_defects: report.angle_defects,
        restart,
    })
}

pub fn solve_structure(sys: &PolySystem, opts: &SolveOptions) -> Result<HyperbolicStructure, NoSolutionFound> {
    let skeleton = Skeleton::new(&sys.tri);
    let fail = |best: f64| NoSolutionFound { restarts: opts.restarts, best_residual: best };
    if sys.tet_count() == 0 {
        return Err(fail(f64::INFINITY));
    }
    let lm = LmOptions {
        max_iterations: opts.max_iterations,
        tol: opts.tol * 1e-3,
        ..LmOptions::default()
    };
    let attempt = |k: usize| -> (f64, Option<HyperbolicStructure>) {
        let start = match (&opts.initial, k) {
            (Some(x), 0) => x.clone(),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k as u64));
                random_start(sys, &skeleton, &mut rng)
            }
        };
        let Some(r) = levenberg_marquardt(|l| angle_residual(sys, &skeleton, l), start, lm) else {
            return (f64::INFINITY, None);
        };
        let s = (r.residual < opts.tol).then(|| certify(sys, &r.x, opts, k)).flatten();
        (r.residual, s)
    };
    let mut best = f64::INFINITY;
    let mut k = 0;
    while k < opts.restarts {
        let end = (k + BATCH).min(opts.restarts);
        let results: Vec<(f64, Option<HyperbolicStructure>)> = (k..end).into_par_iter().map(attempt).collect();
        best = results.iter().map(|r| r.0).fold(best, f64::min);
        let winner = results
            .into_iter()
            .filter_map(|(_, s)| s)
            .min_by(|a, b| a.residual.total_cmp(&b.residual).then(a.restart.cmp(&b.restart)));
        if let Some(s) = winner {
            return Ok(s);
        }
        k = end;
    }
    Err(fail(best))
}
