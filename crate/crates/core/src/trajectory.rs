//! Seeded Monte Carlo unravelling of the lossy beam-splitter chain.
//!
//! After each splitter the absorber is applied as a two-branch Kraus measurement:
//! `K_absorb = diag(√(1−η), 0)` and `K_pass = diag(√η, 1)`. Averaging over branches recovers the
//! non-selective `A = diag(√η, 1)`, so outcome frequencies converge to the analytic port
//! probabilities.
//!
//! Trajectory `i` draws from ChaCha8 stream `i` under the master seed. Counts are integers, so
//! estimates are bit-identical for any thread count or schedule.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::beam_splitter_matrix;
use crate::error::{invalid, IfmError, Result};
use crate::model::{InterferometerSpec, ModeState};

const CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TrajectoryOutcome {
    ExitA,
    ExitB,
    /// Captured by the absorber that follows splitter `stage` (1-based).
    Absorbed { stage: u32 },
}

impl TrajectoryOutcome {
    pub fn absorbed_at_stage(&self) -> Option<u32> {
        match *self {
            TrajectoryOutcome::Absorbed { stage } => Some(stage),
            _ => None,
        }
    }
}

/// Propagates one particle through `spec`, sampling absorption after every splitter.
pub fn run_trajectory<R: Rng + ?Sized>(spec: &InterferometerSpec<f64>, rng: &mut R) -> TrajectoryOutcome {
    let b = beam_splitter_matrix(spec.theta()).expect("spec angle validated");
    let eta = spec.eta();
    let mut state = ModeState::lower();
    for stage in 1..=spec.n_stages() {
        state = b.apply(state);
        let norm = state.norm_sqr();
        let p_absorb = (1.0 - eta) * state.amp_u * state.amp_u / norm;
        if rng.random::<f64>() < p_absorb {
            return TrajectoryOutcome::Absorbed { stage };
        }
        let damped = ModeState::new(state.amp_u * eta.sqrt(), state.amp_l);
        let scale = damped.norm_sqr().sqrt();
        state = ModeState::new(damped.amp_u / scale, damped.amp_l / scale);
    }
    if rng.random::<f64>() < state.amp_u * state.amp_u / state.norm_sqr() {
        TrajectoryOutcome::ExitA
    } else {
        TrajectoryOutcome::ExitB
    }
}

/// Random stream for trajectory (or electron) `index` under `seed`.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub p_exit_a: f64,
    pub p_exit_b: f64,
    pub p_absorbed: f64,
    pub stderr_a: f64,
    pub stderr_b: f64,
    pub stderr_abs: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl McEstimate {
    fn from_counts(counts: [u64; 3], n_samples: u64, seed: u64) -> Self {
        let n = n_samples as f64;
        let frac = |c: u64| c as f64 / n;
        let stderr = |p: f64| (p * (1.0 - p) / n).sqrt();
        let (a, b) = (frac(counts[0]), frac(counts[1]));
        let abs = frac(counts[2]);
        Self {
            p_exit_a: a,
            p_exit_b: b,
            p_absorbed: abs,
            stderr_a: stderr(a),
            stderr_b: stderr(b),
            stderr_abs: stderr(abs),
            n_samples,
            seed,
        }
    }
}

fn check_samples(n: u64) -> Result<()> {
    if n == 0 {
        return Err(invalid("n_samples", "at least one sample is required"));
    }
    Ok(())
}

/// Runs `body` on a dedicated pool of `threads` workers, or on the current pool when `None`.
fn with_threads<R: Send>(threads: Option<usize>, body: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        None => Ok(body()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| IfmError::ThreadPool(e.to_string()))?;
            Ok(pool.install(body))
        }
    }
}

/// Sums per-index tallies over `0..n` in fixed chunks, in parallel.
fn tally<const K: usize>(n: u64, per_index: impl Fn(u64) -> usize + Sync) -> [u64; K] {
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut counts = [0u64; K];
            for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                counts[per_index(i)] += 1;
            }
            counts
        })
        .reduce(|| [0u64; K], |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        })
}

/// Outcome frequencies over `n_samples` trajectories on the current rayon pool.
pub fn estimate_probabilities(spec: &InterferometerSpec<f64>, n_samples: u64, seed: u64) -> Result<McEstimate> {
    check_samples(n_samples)?;
    let counts = tally::<3>(n_samples, |i| match run_trajectory(spec, &mut substream(seed, i)) {
        TrajectoryOutcome::ExitA => 0,
        TrajectoryOutcome::ExitB => 1,
        TrajectoryOutcome::Absorbed { .. } => 2,
    });
    Ok(McEstimate::from_counts(counts, n_samples, seed))
}

/// [`estimate_probabilities`] on a pool of `threads` workers (`None`: current pool).
pub fn estimate_probabilities_with_threads(
    spec: &InterferometerSpec<f64>,
    n_samples: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<McEstimate> {
    with_threads(threads, || estimate_probabilities(spec, n_samples, seed))?
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartitionNoiseEstimate {
    /// Sample variance of the transmitted count divided by the number of electrons.
    pub variance_ratio: f64,
    /// Monte Carlo standard error of `variance_ratio`.
    pub stderr: f64,
    /// Transmission probability `cos²θ` into the lower output.
    pub transmission: f64,
    pub n_electrons: u64,
    pub seed: u64,
}

/// Partition noise of a single lossless splitter fed one electron at a time on path b.
///
/// Each electron stays on path b with `p = cos²θ`; the result converges to `p(1−p)`, which is
/// `S̃(0)` for the unitary splitter.
pub fn partition_noise_mc(theta: f64, n_electrons: u64, seed: u64) -> Result<PartitionNoiseEstimate> {
    check_samples(n_electrons)?;
    let b = beam_splitter_matrix(theta)?;
    let p = b.entry(crate::model::Mode::L, crate::model::Mode::L).powi(2);
    let [transmitted, _] = tally::<2>(n_electrons, |i| usize::from(substream(seed, i).random::<f64>() >= p));
    let n = n_electrons as f64;
    let k = transmitted as f64;
    let variance_ratio = if n_electrons > 1 { k * (n - k) / (n * (n - 1.0)) } else { 0.0 };
    let p_hat = k / n;
    let sigma2 = p_hat * (1.0 - p_hat);
    let mu4 = sigma2 * (1.0 - 3.0 * p_hat + 3.0 * p_hat * p_hat);
    let stderr = ((mu4 - sigma2 * sigma2).max(0.0) / n).sqrt();
    Ok(PartitionNoiseEstimate { variance_ratio, stderr, transmission: p, n_electrons, seed })
}

/// [`partition_noise_mc`] on a pool of `threads` workers (`None`: current pool).
pub fn partition_noise_mc_with_threads(
    theta: f64,
    n_electrons: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<PartitionNoiseEstimate> {
    with_threads(threads, || partition_noise_mc(theta, n_electrons, seed))?
}
