//! Maximization of KL contraction ratios over probability simplices.
//!
//! Two regimes, chosen by simplex dimension:
//!
//! - exhaustive grid for small simplices (≤ 4 states at step 0.01,
//!   5–8 states at step 0.05), dense enough to be treated as exact by the
//!   certificates that require it;
//! - multi-start mirror ascent otherwise.
//!
//! Either way the result is a lower bound on the true maximum `κ`; the
//! direction flag travels with the estimate.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::walks::MarkovOperator;

/// How a contraction estimate was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EstimateMethod {
    /// Exhaustive simplex grid at the given step.
    Grid { step: f64 },
    /// Mirror ascent with the given number of restarts.
    Ascent { restarts: usize },
}

/// One-sided estimate of `κ = max_μ D(μB‖π_V)/D(μ‖π_U)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ContractionEstimate {
    /// Best ratio found; `kappa_hat ≤ κ`.
    pub kappa_hat: f64,
    /// `1 − kappa_hat`; an upper bound on `η = 1 − κ`.
    pub eta_hat: f64,
    /// Direction flag: the estimate bounds `κ` from below.
    pub lower_bound_on_kappa: bool,
    pub method: EstimateMethod,
}

/// Ratios with a denominator below this are skipped (`μ = π` gives `0/0`).
const DEGENERATE_DIV: f64 = 1e-12;

/// States up to which the 0.01 grid is used.
pub const GRID_FINE_MAX_STATES: usize = 4;
/// States up to which the 0.05 grid is used.
pub const GRID_COARSE_MAX_STATES: usize = 8;
pub const GRID_FINE_STEP: f64 = 0.01;
pub const GRID_COARSE_STEP: f64 = 0.05;

/// Visit every distribution on the `d`-state simplex whose coordinates are
/// multiples of `1/h`.
pub fn simplex_grid(d: usize, h: usize, mut visit: impl FnMut(&[f64])) {
    let mut counts = vec![0usize; d];
    let mut point = vec![0.0f64; d];
    fn rec(
        rem: usize,
        k: usize,
        h: usize,
        counts: &mut [usize],
        point: &mut [f64],
        visit: &mut impl FnMut(&[f64]),
    ) {
        if k + 1 == counts.len() {
            counts[k] = rem;
            for i in 0..counts.len() {
                point[i] = counts[i] as f64 / h as f64;
            }
            visit(point);
            return;
        }
        for c in 0..=rem {
            counts[k] = c;
            rec(rem - c, k + 1, h, counts, point, visit);
        }
    }
    if d == 1 {
        visit(&[1.0]);
        return;
    }
    rec(h, 0, h, &mut counts, &mut point, &mut visit);
}

fn kl_vec(p: &[f64], q: &DVector<f64>) -> f64 {
    let mut total = 0.0;
    for (i, &pi) in p.iter().enumerate() {
        if pi > 0.0 {
            total += pi * (pi / q[i]).ln();
        }
    }
    total.max(0.0)
}

/// The contraction ratio of a single `μ`, or `None` when the denominator
/// is degenerate.
fn ratio(op: &MarkovOperator, mu: &[f64], image: &mut Vec<f64>) -> Option<f64> {
    let denom = kl_vec(mu, op.domain().mass());
    if denom < DEGENERATE_DIV {
        return None;
    }
    let b = op.matrix();
    image.clear();
    image.resize(b.ncols(), 0.0);
    for (r, &m) in mu.iter().enumerate() {
        if m == 0.0 {
            continue;
        }
        for c in 0..b.ncols() {
            image[c] += m * b[(r, c)];
        }
    }
    let num = kl_vec(image, op.codomain().mass());
    Some(num / denom)
}

/// Best contraction ratio of an operator over its domain simplex.
pub fn kappa_estimate(op: &MarkovOperator, budget: usize) -> ContractionEstimate {
    let d = op.domain().len();
    if d <= GRID_COARSE_MAX_STATES {
        let step = if d <= GRID_FINE_MAX_STATES { GRID_FINE_STEP } else { GRID_COARSE_STEP };
        let kappa = kappa_grid(op, (1.0 / step).round() as usize);
        return estimate(kappa, EstimateMethod::Grid { step });
    }
    let kappa = kappa_ascent(op, budget);
    estimate(kappa, EstimateMethod::Ascent { restarts: budget })
}

/// Exhaustive grid maximization at resolution `1/h`.
pub fn kappa_grid_estimate(op: &MarkovOperator, h: usize) -> ContractionEstimate {
    estimate(kappa_grid(op, h), EstimateMethod::Grid { step: 1.0 / h as f64 })
}

fn estimate(kappa: f64, method: EstimateMethod) -> ContractionEstimate {
    ContractionEstimate {
        kappa_hat: kappa,
        eta_hat: 1.0 - kappa,
        lower_bound_on_kappa: true,
        method,
    }
}

fn kappa_grid(op: &MarkovOperator, h: usize) -> f64 {
    let mut best: f64 = 0.0;
    let mut image = Vec::new();
    simplex_grid(op.domain().len(), h, |mu| {
        if let Some(r) = ratio(op, mu, &mut image) {
            best = best.max(r);
        }
    });
    best
}

fn kappa_ascent(op: &MarkovOperator, restarts: usize) -> f64 {
    let d = op.domain().len();
    let mut best: f64 = 0.0;
    let mut image = Vec::new();
    // point masses are cheap candidates and often near-optimal
    for v in 0..d {
        let mut mu = vec![0.0; d];
        mu[v] = 1.0;
        if let Some(r) = ratio(op, &mu, &mut image) {
            best = best.max(r);
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(crate::DEFAULT_SEED ^ 0x6d69_7272_6f72);
    let mut starts: Vec<Vec<f64>> = Vec::new();
    for v in 0..d {
        let mut mu = vec![0.1 / (d as f64 - 1.0).max(1.0); d];
        mu[v] = 0.9;
        let t: f64 = mu.iter().sum();
        mu.iter_mut().for_each(|m| *m /= t);
        starts.push(mu);
    }
    for _ in 0..restarts {
        let mut mu: Vec<f64> = (0..d).map(|_| -rng.gen::<f64>().max(1e-12).ln()).collect();
        let t: f64 = mu.iter().sum();
        mu.iter_mut().for_each(|m| *m /= t);
        starts.push(mu);
    }
    for mut mu in starts {
        let mut cur = match ratio(op, &mu, &mut image) {
            Some(r) => r,
            None => continue,
        };
        let mut step = 0.5;
        for _ in 0..200 {
            let grad = ratio_gradient(op, &mu);
            // multiplicative update keeps μ in the open simplex
            let mut cand: Vec<f64> =
                mu.iter().zip(grad.iter()).map(|(&m, &g)| m * (step * g).exp()).collect();
            let t: f64 = cand.iter().sum();
            if !t.is_finite() || t <= 0.0 {
                step *= 0.5;
                continue;
            }
            cand.iter_mut().for_each(|m| *m /= t);
            match ratio(op, &cand, &mut image) {
                Some(r) if r > cur => {
                    cur = r;
                    mu = cand;
                    step *= 1.2;
                }
                _ => {
                    step *= 0.5;
                    if step < 1e-6 {
                        break;
                    }
                }
            }
        }
        best = best.max(cur);
    }
    best
}

/// Gradient of `μ ↦ D(μB‖π_V)/D(μ‖π_U)` at an interior point.
fn ratio_gradient(op: &MarkovOperator, mu: &[f64]) -> Vec<f64> {
    let b = op.matrix();
    let du = op.domain().mass();
    let dv = op.codomain().mass();
    let d = mu.len();
    let mut image = vec![0.0; b.ncols()];
    for (r, &m) in mu.iter().enumerate() {
        for c in 0..b.ncols() {
            image[c] += m * b[(r, c)];
        }
    }
    let num = kl_vec(&image, dv);
    let den = kl_vec(mu, du);
    let mut grad_num = vec![0.0; d];
    for r in 0..d {
        for c in 0..b.ncols() {
            if b[(r, c)] > 0.0 && image[c] > 0.0 {
                grad_num[r] += b[(r, c)] * ((image[c] / dv[c]).ln() + 1.0);
            }
        }
    }
    let eps = 1e-300;
    (0..d)
        .map(|r| {
            let grad_den = ((mu[r].max(eps)) / du[r]).ln() + 1.0;
            (den * grad_num[r] - num * grad_den) / (den * den).max(1e-30)
        })
        .collect()
}
