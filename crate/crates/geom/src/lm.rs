//! Damped least squares (Levenberg–Marquardt) with a finite-difference
//! Jacobian. Residual functions return `None` outside their domain, which
//! the step control treats as a rejected step.

use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone, Copy)]
pub struct LmOptions {
    pub max_iterations: usize,
    /// Stop once the largest residual is below this.
    pub tol: f64,
    pub fd_step: f64,
}

impl Default for LmOptions {
    fn default() -> Self {
        LmOptions {
            max_iterations: 200,
            tol: 1e-12,
            fd_step: 1e-7,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LmResult {
    pub x: Vec<f64>,
    /// Largest absolute residual at `x`.
    pub residual: f64,
    pub iterations: usize,
}

fn max_abs(r: &[f64]) -> f64 {
    r.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn cost(r: &[f64]) -> f64 {
    r.iter().map(|x| x * x).sum()
}

fn jacobian<F>(f: &F, x: &[f64], r: &[f64], h: f64) -> DMatrix<f64>
where
    F: Fn(&[f64]) -> Option<Vec<f64>>,
{
    let mut j = DMatrix::zeros(r.len(), x.len());
    let mut y = x.to_vec();
    for k in 0..x.len() {
        let step = h * x[k].abs().max(1.0);
        y[k] = x[k] + step;
        let plus = f(&y);
        y[k] = x[k] - step;
        let minus = f(&y);
        y[k] = x[k];
        let col: Option<Vec<f64>> = match (plus, minus) {
            (Some(p), Some(m)) => Some(p.iter().zip(&m).map(|(a, b)| (a - b) / (2.0 * step)).collect()),
            (Some(p), None) => Some(p.iter().zip(r).map(|(a, b)| (a - b) / step).collect()),
            (None, Some(m)) => Some(r.iter().zip(&m).map(|(a, b)| (a - b) / step).collect()),
            (None, None) => None,
        };
        if let Some(col) = col {
            for (i, v) in col.into_iter().enumerate() {
                j[(i, k)] = v;
            }
        }
    }
    j
}

/// Minimises `|f(x)|^2` from `x0`. Returns `None` if `f(x0)` is undefined.
pub fn levenberg_marquardt<F>(f: F, x0: Vec<f64>, opts: LmOptions) -> Option<LmResult>
where
    F: Fn(&[f64]) -> Option<Vec<f64>>,
{
    let mut x = x0;
    let mut r = f(&x)?;
    let mut c = cost(&r);
    let mut lambda = 1e-3;
    let mut iterations = 0;
    while iterations < opts.max_iterations && max_abs(&r) >= opts.tol {
        iterations += 1;
        let j = jacobian(&f, &x, &r, opts.fd_step);
        let jt = j.transpose();
        let a = &jt * &j;
        let g = &jt * DVector::from_column_slice(&r);
        let mut improved = false;
        while lambda < 1e12 {
            let mut m = a.clone();
            for k in 0..m.nrows() {
                m[(k, k)] += lambda * (a[(k, k)] + 1e-9);
            }
            let step = m
                .clone()
                .cholesky()
                .map(|ch| ch.solve(&g))
                .or_else(|| m.lu().solve(&g));
            let Some(step) = step else {
                lambda *= 4.0;
                continue;
            };
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a - b).collect();
            match f(&trial) {
                Some(rt) if cost(&rt) < c => {
                    x = trial;
                    c = cost(&rt);
                    r = rt;
                    lambda = (lambda / 3.0).max(1e-15);
                    improved = true;
                    break;
                }
                _ => lambda *= 4.0,
            }
        }
        if !improved {
            break;
        }
    }
    Some(LmResult {
        residual: max_abs(&r),
        x,
        iterations,
    })
}
