//! Execute the sequential sweep as an actual sampler and measure empirical
//! mixing.
//!
//! RNG: ChaCha12 with a 64-bit master seed; chain `c` started from facet
//! `s` uses stream `s·2³² + c`, so trajectories are reproducible across
//! runs and platforms. Conditional rows are drawn from precomputed pinning
//! tables (facet-indexed), not rejection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::complex::{Face, WeightedComplex};
use crate::error::{Error, Result};
use crate::walks;

struct SideTable {
    /// Group id of each facet under the off-`i` projection.
    group_of: Vec<usize>,
    /// Per group: member facet indices and cumulative conditional masses.
    members: Vec<Vec<usize>>,
    cumulative: Vec<Vec<f64>>,
}

/// A sweep sampler bound to one complex and one update order.
pub struct SweepSampler<'a> {
    complex: &'a WeightedComplex,
    order: Vec<usize>,
    tables: Vec<SideTable>,
}

impl<'a> SweepSampler<'a> {
    pub fn new(complex: &'a WeightedComplex, order: &[usize]) -> Result<Self> {
        // delegate the permutation check
        walks::sequential_sweep(complex, order).map(|_| ())?;
        let mut tables = Vec::with_capacity(order.len());
        for &side in order {
            let off: Vec<usize> =
                complex.side_ids().into_iter().filter(|&s| s != side).collect();
            let groups = complex.group_by_projection(&off);
            let mut group_of = vec![0usize; complex.facet_count()];
            let mut members = Vec::with_capacity(groups.len());
            let mut cumulative = Vec::with_capacity(groups.len());
            for (gid, idxs) in groups.into_values().enumerate() {
                let total: f64 = idxs.iter().map(|&i| complex.pi()[i]).sum();
                let mut acc = 0.0;
                let mut cum = Vec::with_capacity(idxs.len());
                for &i in &idxs {
                    group_of[i] = gid;
                    acc += complex.pi()[i] / total;
                    cum.push(acc);
                }
                members.push(idxs);
                cumulative.push(cum);
            }
            tables.push(SideTable { group_of, members, cumulative });
        }
        Ok(SweepSampler { complex, order: order.to_vec(), tables })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// One full sweep from a facet index: apply every update in order.
    pub fn sweep_index(&self, mut state: usize, rng: &mut impl Rng) -> usize {
        for table in &self.tables {
            let gid = table.group_of[state];
            let cum = &table.cumulative[gid];
            let r: f64 = rng.gen();
            let k = cum.partition_point(|&c| c < r).min(cum.len() - 1);
            state = table.members[gid][k];
        }
        state
    }

    /// One full sweep from a facet.
    pub fn sweep_step(&self, state: &Face, rng: &mut impl Rng) -> Result<Face> {
        let idx = self
            .complex
            .facet_index(state)
            .ok_or_else(|| Error::FaceNotInComplex(state.label()))?;
        Ok(self.complex.facets()[self.sweep_index(idx, rng)].clone())
    }

    /// Deterministic RNG for one (start, chain) pair under a master seed.
    fn chain_rng(seed: u64, start: usize, chain: usize) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(((start as u64) << 32) | chain as u64);
        rng
    }

    /// A single trajectory of facet indices, `steps + 1` entries including
    /// the start.
    pub fn trajectory(&self, start: usize, steps: usize, seed: u64) -> Vec<usize> {
        let mut rng = Self::chain_rng(seed, start, 0);
        let mut out = Vec::with_capacity(steps + 1);
        let mut state = start;
        out.push(state);
        for _ in 0..steps {
            state = self.sweep_index(state, &mut rng);
            out.push(state);
        }
        out
    }
}

/// A Monte-Carlo TVD estimate with its conservative confidence halfwidth
/// `√(|Ω|/chains)`.
#[derive(Clone, Copy, Debug)]
pub struct TvdEstimate {
    pub estimate: f64,
    pub ci: f64,
}

/// Monte-Carlo estimate of the worst-start ℓ₁ distance to stationarity
/// after `t` sweeps, over `chains` chains per start state.
pub fn empirical_tvd(
    x: &WeightedComplex,
    order: &[usize],
    t: usize,
    chains: usize,
    seed: u64,
) -> Result<TvdEstimate> {
    let curve = empirical_tvd_curve(x, order, t, chains, seed)?;
    Ok(curve[t])
}

/// TVD estimates for every `t` in `0..=steps` from one simulation pass.
pub fn empirical_tvd_curve(
    x: &WeightedComplex,
    order: &[usize],
    steps: usize,
    chains: usize,
    seed: u64,
) -> Result<Vec<TvdEstimate>> {
    assert!(chains >= 1);
    let sampler = SweepSampler::new(x, order)?;
    let m = x.facet_count();
    let ci = (m as f64 / chains as f64).sqrt();
    let mut worst = vec![0.0f64; steps + 1];
    let mut hist = vec![0u64; m];
    for start in 0..m {
        let mut states: Vec<usize> = vec![start; chains];
        let mut rngs: Vec<ChaCha12Rng> =
            (0..chains).map(|c| SweepSampler::chain_rng(seed, start, c)).collect();
        for (t, w) in worst.iter_mut().enumerate() {
            if t > 0 {
                for (s, rng) in states.iter_mut().zip(rngs.iter_mut()) {
                    *s = sampler.sweep_index(*s, rng);
                }
            }
            hist.iter_mut().for_each(|h| *h = 0);
            for &s in &states {
                hist[s] += 1;
            }
            let tvd: f64 = hist
                .iter()
                .zip(x.pi().iter())
                .map(|(&h, &p)| (h as f64 / chains as f64 - p).abs())
                .sum();
            *w = w.max(tvd);
        }
    }
    Ok(worst.into_iter().map(|estimate| TvdEstimate { estimate, ci }).collect())
}

/// Smallest `t` whose empirical TVD is at most `eps_target` within the
/// confidence halfwidth (`estimate ≤ ε + ci`); the Monte-Carlo noise floor
/// makes the raw estimate unattainable for small `ε`.
pub fn empirical_mixing_time(
    x: &WeightedComplex,
    order: &[usize],
    eps_target: f64,
    seed: u64,
    chains: usize,
    budget: usize,
) -> Result<usize> {
    assert!(eps_target > 0.0 && eps_target < 1.0);
    let curve = empirical_tvd_curve(x, order, budget, chains, seed)?;
    for (t, est) in curve.iter().enumerate() {
        if est.estimate <= eps_target + est.ci {
            return Ok(t);
        }
    }
    Err(Error::BudgetExceeded(budget))
}
