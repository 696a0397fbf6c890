//! Acceptance probability of the stoquastic verifier built from a
//! decomposition: a uniformly random choice among `H_0` and the `m'`
//! conjugated flip terms, each measured through `(I + G)/2`. The average
//! collapses to the closed form
//!
//! `p(psi) = 1/2 (1 - <psi|H + beta I|psi> / ((m' + 1) M))`,
//!
//! which the per-term route must match to full precision. The primitive
//! measurement expectations (projector, threshold projector, scaled
//! Hamiltonian, and their X-tensored variants) are exposed alongside,
//! together with the exact threshold-averaging identity that reduces the
//! scaled measurement to threshold measurements.

use crate::bits::Mask;
use crate::decompose::{apply_circuit, StoqDecomposition};
use crate::flip::ParityPoly;
use crate::hamiltonian::{Hamiltonian, HamiltonianError};
use crate::ratio::{to_f64, Rat};
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StoqmaError {
    #[error("state vector has dimension {0}, expected {1}")]
    DimensionMismatch(usize, usize),
    #[error("state vector is not normalized (norm^2 = {0})")]
    NotNormalized(f64),
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
}

fn check_state(psi: &[f64], n: usize) -> Result<(), StoqmaError> {
    if psi.len() != 1 << n {
        return Err(StoqmaError::DimensionMismatch(psi.len(), 1 << n));
    }
    let norm2: f64 = psi.iter().map(|a| a * a).sum();
    if (norm2 - 1.0).abs() > 1e-9 {
        return Err(StoqmaError::NotNormalized(norm2));
    }
    Ok(())
}

/// `<psi|(I + |0><0|_q)/2|psi>`, optionally tensored with `X_r`.
pub fn expectation_zero_projector(psi: &[f64], qubit: usize, x_qubit: Option<usize>) -> f64 {
    let mut acc = 0.0;
    for (u, a) in psi.iter().enumerate() {
        if (u >> qubit) & 1 == 0 {
            acc += match x_qubit {
                None => a * psi[u],
                Some(r) => a * psi[u ^ (1 << r)],
            };
        }
    }
    0.5 * (1.0 + acc)
}

/// Diagonal classical function given as values on the full index space.
pub struct ClassicalDiag {
    pub n: usize,
    values: Vec<Rat>,
}

impl ClassicalDiag {
    pub fn from_poly(n: usize, poly: &ParityPoly) -> Self {
        let values = (0..(1usize << n))
            .map(|u| poly.eval(&Mask::from_index(n, u)))
            .collect();
        ClassicalDiag { n, values }
    }

    pub fn value(&self, u: usize) -> &Rat {
        &self.values[u]
    }

    pub fn norm(&self) -> Rat {
        self.values
            .iter()
            .map(crate::ratio::rat_abs)
            .max()
            .unwrap_or_else(Rat::zero)
    }

    /// Exact check of `(1/M) ∫_0^M Π_{>=alpha} dalpha = H / M` via
    /// eigen-projector summation: group the strings by eigenvalue and
    /// accumulate `lambda · Π_lambda`; the sum must reproduce every
    /// diagonal value exactly. Requires `0 <= H <= M`.
    pub fn averaging_identity_holds(&self, m_bound: &Rat) -> bool {
        let mut projectors: BTreeMap<Rat, Vec<usize>> = BTreeMap::new();
        for (u, v) in self.values.iter().enumerate() {
            if v < &Rat::zero() || v > m_bound {
                return false;
            }
            projectors.entry(v.clone()).or_default().push(u);
        }
        let mut reconstructed = vec![Rat::zero(); self.values.len()];
        for (lambda, members) in &projectors {
            for &u in members {
                reconstructed[u] += lambda;
            }
        }
        reconstructed == self.values
    }

    /// `<psi|(I + G)/2|psi>` for `G = Π_{>=alpha}` (strings with value at
    /// least `alpha`), optionally tensored with `X_r`.
    pub fn expectation_threshold(&self, psi: &[f64], alpha: &Rat, x_qubit: Option<usize>) -> f64 {
        let mut acc = 0.0;
        for (u, a) in psi.iter().enumerate() {
            if self.values[u] >= *alpha {
                acc += match x_qubit {
                    None => a * psi[u],
                    Some(r) => a * psi[u ^ (1 << r)],
                };
            }
        }
        0.5 * (1.0 + acc)
    }

    /// `<psi|(I + G)/2|psi>` for `G = H/M`, optionally tensored with `X_r`.
    pub fn expectation_scaled(&self, psi: &[f64], m_bound: &Rat, x_qubit: Option<usize>) -> f64 {
        let m = to_f64(m_bound);
        let mut acc = 0.0;
        for (u, a) in psi.iter().enumerate() {
            let v = to_f64(&self.values[u]) / m;
            acc += match x_qubit {
                None => v * a * psi[u],
                Some(r) => v * a * psi[u ^ (1 << r)],
            };
        }
        0.5 * (1.0 + acc)
    }
}

/// Acceptance report: the per-term average and the closed form, which
/// must agree to numerical precision.
#[derive(Clone, Debug)]
pub struct AcceptanceReport {
    /// `(1/(m'+1)) sum_j <psi|(I+G_j)/2|psi>`.
    pub per_term_average: f64,
    /// `1/2 (1 - <psi|H+beta I|psi> / ((m'+1) M))`.
    pub closed_form: f64,
    pub m_prime: usize,
    pub norm_bound: f64,
}

impl AcceptanceReport {
    pub fn acceptance(&self) -> f64 {
        self.per_term_average
    }
}

/// Compute the verifier acceptance probability on a (real) witness state
/// from both routes.
pub fn stoqma_acceptance(
    h: &Hamiltonian,
    decomposition: &StoqDecomposition,
    psi: &[f64],
) -> Result<AcceptanceReport, StoqmaError> {
    let n = h.num_qubits();
    check_state(psi, n)?;
    let dim = 1usize << n;
    let m = to_f64(&decomposition.norm_bound);

    // j = 0: G = H_0 / M (diagonal)
    let h0 = ClassicalDiag::from_poly(n, &decomposition.h0);
    let mut total = h0.expectation_scaled(psi, &decomposition.norm_bound, None);

    // j >= 1: G_j = U_j (X ⊗ H_j / M) U_j†
    for term in &decomposition.terms {
        // phi = U† psi, i.e. phi[c] = psi[pi(c)]
        let mut phi = vec![0.0; dim];
        for (c, slot) in phi.iter_mut().enumerate() {
            let b = apply_circuit(&term.gates, &Mask::from_index(n, c));
            *slot = psi[b.to_index()];
        }
        // <phi| X_flip ⊗ H_j |phi> / M
        let mut acc = 0.0;
        for (c, a) in phi.iter().enumerate() {
            let mask = Mask::from_index(n, c);
            if !mask.and(&term.proj).is_zero() {
                continue;
            }
            let v = to_f64(&term.values.eval(&mask)) / m;
            acc += v * a * phi[c ^ (1 << term.flip_qubit)];
        }
        total += 0.5 * (1.0 + acc);
    }

    let count = (decomposition.m_prime + 1) as f64;
    let per_term_average = total / count;

    let energy = crate::dense::expectation(h, psi)?;
    let closed_form =
        0.5 * (1.0 - (energy + to_f64(&decomposition.beta)) / (count * m));

    Ok(AcceptanceReport {
        per_term_average,
        closed_form,
        m_prime: decomposition.m_prime,
        norm_bound: m,
    })
}
