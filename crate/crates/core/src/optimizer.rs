//! CHSH maximization over the four measurement directions.
//!
//! Each direction is parameterized by spherical angles `(θ, φ)`, giving an
//! unconstrained 8-dimensional search space. A Nelder-Mead simplex descent
//! runs from `restarts` random starting points; restart `k` draws from its own
//! ChaCha stream `k` under the master seed, so results do not depend on
//! thread scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bell::TwoQubitState;
use crate::error::{Error, Result};
use crate::linalg::Vec3;
use crate::observables::{chsh, ChshSettings, MeasurementDirection};

const DIM: usize = 8;
const INITIAL_STEP: f64 = 0.5;

/// Search budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iter: usize,
    /// Simplex diameter below which a restart counts as converged; also the
    /// tie window when merging restarts.
    pub tol: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 32,
            max_iter: 2000,
            tol: 1e-9,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizationResult {
    pub settings: ChshSettings,
    pub value: f64,
    /// Iterations spent by the winning restart.
    pub iterations: usize,
    pub restarts_used: usize,
    /// Whether the winning restart's simplex shrank below `tol`.
    pub converged: bool,
}

struct LocalResult {
    point: [f64; DIM],
    value: f64,
    iterations: usize,
    converged: bool,
}

fn settings_from(x: &[f64; DIM]) -> ChshSettings {
    let d = |k: usize| MeasurementDirection::from_spherical(x[2 * k], x[2 * k + 1]);
    ChshSettings {
        a: d(0),
        a_prime: d(1),
        b: d(2),
        b_prime: d(3),
    }
}

/// Maximizes the CHSH value of `s` under a boost of speed `beta` along `e`.
pub fn maximize_chsh(s: &TwoQubitState, beta: f64, e: &Vec3, cfg: &OptimizerConfig) -> Result<OptimizationResult> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::InvalidBeta(beta));
    }
    if cfg.restarts == 0 {
        return Err(Error::InvalidInput("restarts must be at least 1".into()));
    }
    if cfg.max_iter == 0 {
        return Err(Error::InvalidInput("max_iter must be at least 1".into()));
    }
    if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
        return Err(Error::InvalidInput(format!("tol must be positive, got {}", cfg.tol)));
    }
    let norm = s.norm_sq();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(format!("state is not normalized: |ψ|² = {norm}")));
    }
    let e_hat = e.normalized().ok_or_else(|| Error::InvalidDirection(e.to_string()))?;
    // β < 1 keeps every observable well defined
    let objective = |x: &[f64; DIM]| -chsh(s, &settings_from(x), beta, &e_hat).expect("β < 1");

    let locals: Vec<LocalResult> = (0..cfg.restarts)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(k as u64);
            let mut start = [0.0; DIM];
            for pair in start.chunks_mut(2) {
                pair[0] = rng.gen_range(0.0..std::f64::consts::PI);
                pair[1] = rng.gen_range(0.0..std::f64::consts::TAU);
            }
            nelder_mead(&objective, start, cfg.max_iter, cfg.tol)
        })
        .collect();

    let mut best = &locals[0];
    for cand in &locals[1..] {
        if cand.value < best.value - cfg.tol {
            best = cand;
        }
    }
    Ok(OptimizationResult {
        settings: settings_from(&best.point),
        value: -best.value,
        iterations: best.iterations,
        restarts_used: cfg.restarts,
        converged: best.converged,
    })
}

fn diameter(simplex: &[[f64; DIM]]) -> f64 {
    let best = &simplex[0];
    simplex[1..]
        .iter()
        .map(|v| v.iter().zip(best).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
}

fn lerp(from: &[f64; DIM], to: &[f64; DIM], t: f64) -> [f64; DIM] {
    std::array::from_fn(|i| from[i] + t * (to[i] - from[i]))
}

/// Minimizes `f` from `start` with the standard coefficients
/// (reflection 1, expansion 2, contraction ½, shrink ½).
fn nelder_mead<F>(f: &F, start: [f64; DIM], max_iter: usize, tol: f64) -> LocalResult
where
    F: Fn(&[f64; DIM]) -> f64,
{
    let mut simplex = vec![start; DIM + 1];
    for (i, v) in simplex[1..].iter_mut().enumerate() {
        v[i] += INITIAL_STEP;
    }
    let mut values: Vec<f64> = simplex.iter().map(f).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        let mut order: Vec<usize> = (0..=DIM).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = order.iter().map(|&i| simplex[i]).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if diameter(&simplex) < tol {
            converged = true;
            break;
        }
        iterations += 1;

        let worst = simplex[DIM];
        let centroid: [f64; DIM] =
            std::array::from_fn(|i| simplex[..DIM].iter().map(|v| v[i]).sum::<f64>() / DIM as f64);

        let reflected = lerp(&centroid, &worst, -1.0);
        let fr = f(&reflected);
        if fr < values[0] {
            let expanded = lerp(&centroid, &worst, -2.0);
            let fe = f(&expanded);
            if fe < fr {
                simplex[DIM] = expanded;
                values[DIM] = fe;
            } else {
                simplex[DIM] = reflected;
                values[DIM] = fr;
            }
            continue;
        }
        if fr < values[DIM - 1] {
            simplex[DIM] = reflected;
            values[DIM] = fr;
            continue;
        }
        let (contracted, fc, bound) = if fr < values[DIM] {
            let c = lerp(&centroid, &reflected, 0.5);
            let fc = f(&c);
            (c, fc, fr)
        } else {
            let c = lerp(&centroid, &worst, 0.5);
            let fc = f(&c);
            (c, fc, values[DIM])
        };
        if fc < bound {
            simplex[DIM] = contracted;
            values[DIM] = fc;
            continue;
        }
        let best = simplex[0];
        for (v, val) in simplex[1..].iter_mut().zip(values[1..].iter_mut()) {
            *v = lerp(&best, v, 0.5);
            *val = f(v);
        }
    }

    let (idx, value) = values
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("simplex is non-empty");
    LocalResult {
        point: simplex[idx],
        value,
        iterations,
        converged,
    }
}
