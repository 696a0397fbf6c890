//! Path-integral Monte Carlo with sign diagnostics.
//!
//! The sampler runs a Metropolis chain over allowed closed paths. Direct
//! mode requires a certified globally stoquastic input and samples the
//! weight distribution itself; reweighted mode accepts any real
//! Hamiltonian, samples the magnitude distribution (the flattened
//! Hamiltonian's weights), and returns the ratio estimator together with
//! the average sign. Proposals mix single-(slice, bit) flips with
//! adjacent-slice pair flips; anything creating a zero-weight segment is
//! rejected outright, which leaves the fixed point untouched.
//!
//! Randomness comes from a counter-based splittable generator seeded per
//! chain; identical parameters and seed reproduce results bit for bit.

pub mod oracle;
pub mod path;
pub mod reference;

pub use oracle::{EntryOracle, PauliEntryOracle, Stoquastified};
pub use path::{
    check_path_positivity, enumerate_paths, local_energy, path_weight, path_weight_exact,
    EnergyNorm, PathConfig, PathError,
};
pub use reference::{exact_reference, ExactReference};

use crate::bits::Mask;
use crate::hamiltonian::{Hamiltonian, HamiltonianError};
use crate::stoq_check::{check_global, StoqStatus, DEFAULT_GLOBAL_BUDGET};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QmcMode {
    /// Requires a globally stoquastic input; all weights nonnegative.
    Direct,
    /// Any real input; samples |W| and reweights by the sign.
    Reweighted,
}

#[derive(Clone, Debug, Serialize)]
pub struct QmcParams {
    pub beta: f64,
    pub slices: usize,
    pub sweeps: u64,
    pub burn_in: u64,
    pub thinning: u64,
    pub seed: u64,
    pub chains: usize,
    pub mode: QmcMode,
    /// Fraction of multi-slice flips in the proposal mix.
    pub pair_flip_prob: f64,
    /// Longest slice span of a multi-slice flip; the default of 2 keeps
    /// the plain adjacent-slice pair move.
    pub max_flip_span: usize,
    pub energy_norm: EnergyNorm,
}

impl QmcParams {
    pub fn new(beta: f64, slices: usize, sweeps: u64, seed: u64, mode: QmcMode) -> Self {
        QmcParams {
            beta,
            slices,
            sweeps,
            burn_in: sweeps / 10,
            thinning: 1,
            seed,
            chains: 1,
            mode,
            pair_flip_prob: 0.2,
            max_flip_span: 2,
            energy_norm: EnergyNorm::OverN,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QmcResult {
    pub energy: f64,
    pub stderr: f64,
    pub avg_sign: f64,
    pub sign_stderr: f64,
    pub acceptance: f64,
    pub sweeps: u64,
    pub samples: u64,
    pub seed: u64,
    pub beta: f64,
    pub slices: usize,
    pub mode: QmcMode,
}

#[derive(Debug, Error)]
pub enum QmcError {
    #[error("direct mode requires a certified globally stoquastic Hamiltonian (status {0:?})")]
    NotStoquastic(StoqStatus),
    #[error("parameters invalid: {0}")]
    BadParams(String),
    #[error("no allowed initial path: every scanned diagonal factor vanishes")]
    NoInitialPath,
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
    #[error(transparent)]
    Path(#[from] PathError),
}

fn validate_params(params: &QmcParams) -> Result<(), QmcError> {
    if params.slices < 2 {
        return Err(QmcError::BadParams("need at least 2 slices".into()));
    }
    if params.beta <= 0.0 {
        return Err(QmcError::BadParams("beta must be positive".into()));
    }
    if params.chains == 0 {
        return Err(QmcError::BadParams("need at least one chain".into()));
    }
    if params.thinning == 0 {
        return Err(QmcError::BadParams("thinning must be at least 1".into()));
    }
    if params.sweeps <= params.burn_in {
        return Err(QmcError::BadParams(
            "sweeps must exceed the burn-in".into(),
        ));
    }
    Ok(())
}

/// Initial path: constant at the lexicographically smallest string whose
/// diagonal factor is non-zero; the scan is capped so large systems fail
/// fast rather than enumerate forever.
fn initial_path<O: EntryOracle>(oracle: &O, tau: f64, slices: usize) -> Result<PathConfig, QmcError> {
    let n = oracle.num_qubits();
    let cap = 1u64 << n.min(16);
    for rank in 0..cap {
        let x = Mask::from_lex_rank(n, rank);
        if 1.0 - tau * oracle.diag(&x) != 0.0 {
            return Ok(PathConfig::constant(x, slices));
        }
    }
    Err(QmcError::NoInitialPath)
}

struct ChainState<'a, O: EntryOracle> {
    oracle: &'a O,
    tau: f64,
    n: usize,
    slices: usize,
    path: Vec<Mask>,
    /// `factors[i] = <x_{i+1}|I - tau H|x_i>` with true signs.
    factors: Vec<f64>,
    accepted: u64,
    attempted: u64,
}

impl<'a, O: EntryOracle> ChainState<'a, O> {
    fn new(oracle: &'a O, tau: f64, start: PathConfig) -> Self {
        let slices = start.num_slices();
        let n = oracle.num_qubits();
        let factors = (0..slices)
            .map(|i| {
                path::transfer_factor(oracle, tau, &start.slices[i], &start.slices[(i + 1) % slices])
            })
            .collect();
        ChainState {
            oracle,
            tau,
            n,
            slices,
            path: start.slices,
            factors,
            accepted: 0,
            attempted: 0,
        }
    }

    fn factor(&self, i: usize) -> f64 {
        path::transfer_factor(
            self.oracle,
            self.tau,
            &self.path[i],
            &self.path[(i + 1) % self.slices],
        )
    }

    fn sign(&self) -> f64 {
        let negatives = self.factors.iter().filter(|f| **f < 0.0).count();
        if negatives % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Propose flipping bit `bit` in `span` consecutive slices starting
    /// at `slice`; Metropolis-accept on the magnitude ratio.
    fn propose(&mut self, slice: usize, bit: usize, span: usize, rng: &mut ChaCha12Rng) {
        self.attempted += 1;
        for k in 0..span {
            self.path[(slice + k) % self.slices].flip(bit);
        }
        // affected factors: the edge entering the span, the edges inside
        // it, and the edge leaving it (deduplicated when the span wraps)
        let mut affected: Vec<usize> = Vec::with_capacity(span + 1);
        for k in 0..=span.min(self.slices - 1) {
            let idx = (slice + self.slices - 1 + k) % self.slices;
            if !affected.contains(&idx) {
                affected.push(idx);
            }
        }
        let mut ratio = 1.0;
        let mut new_factors: Vec<(usize, f64)> = Vec::with_capacity(affected.len());
        let mut zero = false;
        for &idx in &affected {
            let f = self.factor(idx);
            if f == 0.0 {
                zero = true;
                break;
            }
            ratio *= (f / self.factors[idx]).abs();
            new_factors.push((idx, f));
        }
        let accept = !zero && rng.gen::<f64>() < ratio;
        if accept {
            for (idx, f) in new_factors {
                self.factors[idx] = f;
            }
            self.accepted += 1;
        } else {
            for k in 0..span {
                self.path[(slice + k) % self.slices].flip(bit);
            }
        }
    }

    fn sweep(&mut self, pair_prob: f64, max_span: usize, rng: &mut ChaCha12Rng) {
        let moves = self.slices * self.n.max(1);
        let cap = max_span.clamp(2, self.slices);
        for _ in 0..moves {
            let slice = rng.gen_range(0..self.slices);
            let bit = rng.gen_range(0..self.n);
            let span = if rng.gen::<f64>() < pair_prob {
                rng.gen_range(2..=cap)
            } else {
                1
            };
            self.propose(slice, bit, span, rng);
        }
    }
}

struct ChainOutput {
    weighted: Vec<f64>,
    signs: Vec<f64>,
    accepted: u64,
    attempted: u64,
}

fn run_chain<O: EntryOracle>(
    oracle: &O,
    params: &QmcParams,
    chain_index: usize,
    start: PathConfig,
) -> Result<ChainOutput, QmcError> {
    let tau = params.beta / params.slices as f64;
    let mut rng = ChaCha12Rng::seed_from_u64(params.seed);
    rng.set_stream(chain_index as u64 + 1);
    let mut chain = ChainState::new(oracle, tau, start);
    let mut weighted = Vec::new();
    let mut signs = Vec::new();
    for sweep in 0..params.sweeps {
        chain.sweep(params.pair_flip_prob, params.max_flip_span, &mut rng);
        if sweep >= params.burn_in && (sweep - params.burn_in) % params.thinning == 0 {
            let path = PathConfig {
                slices: chain.path.clone(),
            };
            let h = local_energy(oracle, &path, tau, params.energy_norm)?;
            let s = chain.sign();
            weighted.push(h * s);
            signs.push(s);
        }
    }
    Ok(ChainOutput {
        weighted,
        signs,
        accepted: chain.accepted,
        attempted: chain.attempted,
    })
}

const BATCHES: usize = 32;

fn batch_means(values: &[f64], batches: usize) -> Vec<f64> {
    let b = batches.min(values.len()).max(1);
    let size = values.len() / b;
    (0..b)
        .map(|i| {
            let lo = i * size;
            let hi = if i + 1 == b { values.len() } else { lo + size };
            values[lo..hi].iter().sum::<f64>() / (hi - lo).max(1) as f64
        })
        .collect()
}

fn stderr_of(batch: &[f64]) -> f64 {
    let b = batch.len();
    if b < 2 {
        return f64::NAN;
    }
    let mean = batch.iter().sum::<f64>() / b as f64;
    let var = batch.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (b - 1) as f64;
    (var / b as f64).sqrt()
}

/// Run the sampler. Direct mode first certifies stoquasticity (an
/// `Undecided` verdict is a refusal, not a guess).
pub fn run_qmc(h: &Hamiltonian, params: &QmcParams) -> Result<QmcResult, QmcError> {
    validate_params(params)?;
    if params.mode == QmcMode::Direct {
        let verdict = check_global(h, DEFAULT_GLOBAL_BUDGET)?;
        if !verdict.is_stoquastic() {
            return Err(QmcError::NotStoquastic(verdict.status));
        }
    }
    let oracle = PauliEntryOracle::new(h)?;
    let tau = params.beta / params.slices as f64;
    let start = initial_path(&oracle, tau, params.slices)?;

    let outputs: Vec<Result<ChainOutput, QmcError>> = {
        use rayon::prelude::*;
        (0..params.chains)
            .into_par_iter()
            .map(|c| run_chain(&oracle, params, c, start.clone()))
            .collect()
    };
    let mut all_weighted = Vec::new();
    let mut all_signs = Vec::new();
    let mut energy_batches = Vec::new();
    let mut sign_batches = Vec::new();
    let mut accepted = 0u64;
    let mut attempted = 0u64;
    for out in outputs {
        let out = out?;
        let wb = batch_means(&out.weighted, BATCHES);
        let sb = batch_means(&out.signs, BATCHES);
        for (w, s) in wb.iter().zip(&sb) {
            if *s != 0.0 {
                energy_batches.push(w / s);
            }
            sign_batches.push(*s);
        }
        all_weighted.extend(out.weighted);
        all_signs.extend(out.signs);
        accepted += out.accepted;
        attempted += out.attempted;
    }
    let sum_ws: f64 = all_weighted.iter().sum();
    let sum_s: f64 = all_signs.iter().sum();
    let energy = sum_ws / sum_s;
    let avg_sign = if params.mode == QmcMode::Direct {
        debug_assert!(all_signs.iter().all(|s| *s == 1.0));
        1.0
    } else {
        sum_s / all_signs.len() as f64
    };
    Ok(QmcResult {
        energy,
        stderr: stderr_of(&energy_batches),
        avg_sign,
        sign_stderr: if params.mode == QmcMode::Direct {
            0.0
        } else {
            stderr_of(&sign_batches)
        },
        acceptance: accepted as f64 / attempted.max(1) as f64,
        sweeps: params.sweeps,
        samples: all_signs.len() as u64,
        seed: params.seed,
        beta: params.beta,
        slices: params.slices,
        mode: params.mode,
    })
}

/// Sampled path histogram for distribution tests: counts of visited
/// paths keyed by their concatenated bit strings.
pub fn sample_path_histogram(
    h: &Hamiltonian,
    params: &QmcParams,
) -> Result<HashMap<String, u64>, QmcError> {
    validate_params(params)?;
    let oracle = PauliEntryOracle::new(h)?;
    let tau = params.beta / params.slices as f64;
    let start = initial_path(&oracle, tau, params.slices)?;
    let mut rng = ChaCha12Rng::seed_from_u64(params.seed);
    rng.set_stream(1);
    let mut chain = ChainState::new(&oracle, tau, start);
    let mut histogram: HashMap<String, u64> = HashMap::new();
    for sweep in 0..params.sweeps {
        chain.sweep(params.pair_flip_prob, params.max_flip_span, &mut rng);
        if sweep >= params.burn_in && (sweep - params.burn_in) % params.thinning == 0 {
            let key: String = chain
                .path
                .iter()
                .map(|s| s.to_bitstring())
                .collect::<Vec<_>>()
                .join("|");
            *histogram.entry(key).or_insert(0) += 1;
        }
    }
    Ok(histogram)
}
