//! Closed path configurations and their weights.
//!
//! A path is a cyclic sequence of `N` basis strings; its weight is the
//! product of transfer factors `<x_{i+1}|I - tau H|x_i>` around the
//! cycle. For globally stoquastic Hamiltonians every factor — hence every
//! weight — is nonnegative; the sign problem is precisely the failure of
//! that property.

use crate::bits::Mask;
use crate::hamiltonian::{Hamiltonian, HamiltonianError};
use crate::qmc::oracle::EntryOracle;
use crate::ratio::Rat;
use num::Zero;
use thiserror::Error;

/// A closed sequence of `N` basis strings (`x_{N+1} = x_1` implicitly).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathConfig {
    pub slices: Vec<Mask>,
}

impl PathConfig {
    pub fn constant(x: Mask, slices: usize) -> Self {
        PathConfig {
            slices: vec![x; slices],
        }
    }

    pub fn num_slices(&self) -> usize {
        self.slices.len()
    }

    pub fn to_bitstrings(&self) -> Vec<String> {
        self.slices.iter().map(|s| s.to_bitstring()).collect()
    }
}

#[derive(Debug, Error)]
pub enum PathError {
    #[error("path contains a zero-weight segment between slices {0} and {1}")]
    ZeroWeightSegment(usize, usize),
    #[error("enumeration budget exceeded: n * N = {0} > {1}")]
    EnumerationBudget(usize, usize),
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
}

/// Transfer factor `<to|I - tau H|from>` in double precision.
pub fn transfer_factor<O: EntryOracle>(oracle: &O, tau: f64, from: &Mask, to: &Mask) -> f64 {
    if from == to {
        1.0 - tau * oracle.diag(from)
    } else {
        -tau * oracle.entry(from, to)
    }
}

/// Path weight `prod_i <x_{i+1}|I - tau H|x_i>`.
pub fn path_weight<O: EntryOracle>(oracle: &O, path: &PathConfig, beta: f64, slices: usize) -> f64 {
    debug_assert_eq!(path.num_slices(), slices);
    let tau = beta / slices as f64;
    let mut w = 1.0;
    for i in 0..slices {
        let from = &path.slices[i];
        let to = &path.slices[(i + 1) % slices];
        w *= transfer_factor(oracle, tau, from, to);
    }
    w
}

/// Exact rational path weight for rational `tau`.
pub fn path_weight_exact(h: &Hamiltonian, path: &PathConfig, tau: &Rat) -> Result<Rat, HamiltonianError> {
    let slices = path.num_slices();
    let mut w = Rat::from_integer(1.into());
    for i in 0..slices {
        let from = &path.slices[i];
        let to = &path.slices[(i + 1) % slices];
        let entry = h.matrix_entry(from, to)?;
        let factor = if from == to {
            Rat::from_integer(1.into()) - tau.clone() * entry
        } else {
            -tau.clone() * entry
        };
        w *= factor;
    }
    Ok(w)
}

/// Normalization convention of the local-energy average; `OverN` is the
/// one validated against the exact reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum EnergyNorm {
    OverN,
    OverNMinusOne,
}

/// Local energy of an allowed path:
/// `(1/norm) sum_i <x_{i+1}|H(I - tau H)|x_i> / <x_{i+1}|I - tau H|x_i>`.
/// The numerator only needs rows reachable from `x_i`.
pub fn local_energy<O: EntryOracle>(
    oracle: &O,
    path: &PathConfig,
    tau: f64,
    norm: EnergyNorm,
) -> Result<f64, PathError> {
    let slices = path.num_slices();
    let mut sum = 0.0;
    for i in 0..slices {
        let from = &path.slices[i];
        let to = &path.slices[(i + 1) % slices];
        let den = transfer_factor(oracle, tau, from, to);
        if den == 0.0 {
            return Err(PathError::ZeroWeightSegment(i, (i + 1) % slices));
        }
        // <to|H(I - tau H)|from> = H_{to,from} - tau (H^2)_{to,from};
        // the middle state z runs over from itself and its neighbors
        let h_direct = oracle.entry(from, to);
        let mut h_squared = oracle.diag(from) * h_direct;
        for z in oracle.neighbors(from) {
            let first = oracle.entry(from, &z);
            if first == 0.0 {
                continue;
            }
            h_squared += oracle.entry(&z, to) * first;
        }
        let num = h_direct - tau * h_squared;
        sum += num / den;
    }
    let divisor = match norm {
        EnergyNorm::OverN => slices as f64,
        EnergyNorm::OverNMinusOne => (slices - 1).max(1) as f64,
    };
    Ok(sum / divisor)
}

/// Enumerate every closed path over the full state space; the budget
/// caps `n * N` at 20 bits.
pub fn enumerate_paths(n: usize, slices: usize) -> Result<Vec<PathConfig>, PathError> {
    let bits = n * slices;
    if bits > 20 {
        return Err(PathError::EnumerationBudget(bits, 20));
    }
    let mut out = Vec::with_capacity(1 << bits);
    for rank in 0..(1u64 << bits) {
        let slices_vec: Vec<Mask> = (0..slices)
            .map(|i| {
                let chunk = (rank >> ((slices - 1 - i) * n)) & ((1 << n) - 1);
                Mask::from_lex_rank(n, chunk)
            })
            .collect();
        out.push(PathConfig { slices: slices_vec });
    }
    Ok(out)
}

/// Exhaustively decide whether every closed path has nonnegative weight;
/// on failure the lexicographically first counterexample and its exact
/// weight are returned.
pub fn check_path_positivity(
    h: &Hamiltonian,
    beta: &Rat,
    slices: usize,
) -> Result<(bool, Option<(PathConfig, Rat)>), PathError> {
    let n = h.num_qubits();
    let bits = n * slices;
    if bits > 20 {
        return Err(PathError::EnumerationBudget(bits, 20));
    }
    let tau = beta / Rat::from_integer((slices as i64).into());
    // sign table of I - tau H over the full state space
    let dim = 1usize << n;
    let mut sign = vec![vec![0i8; dim]; dim];
    for u in 0..dim {
        let x = Mask::from_index(n, u);
        for v in 0..dim {
            let y = Mask::from_index(n, v);
            let entry = h.matrix_entry(&x, &y)?;
            let factor = if u == v {
                Rat::from_integer(1.into()) - tau.clone() * entry
            } else {
                -tau.clone() * entry
            };
            sign[v][u] = if factor.is_zero() {
                0
            } else if factor < Rat::zero() {
                -1
            } else {
                1
            };
        }
    }
    for path in enumerate_paths(n, slices)? {
        let mut s = 1i8;
        for i in 0..slices {
            let from = path.slices[i].to_index();
            let to = path.slices[(i + 1) % slices].to_index();
            s *= sign[to][from];
            if s == 0 {
                break;
            }
        }
        if s < 0 {
            let w = path_weight_exact(h, &path, &tau)?;
            debug_assert!(w < Rat::zero());
            return Ok((false, Some((path, w))));
        }
    }
    Ok((true, None))
}
