//! Exact thermal references from dense diagonalization, with the
//! free-energy sanity bound `|F(beta) - E_0| <= n / beta` asserted on
//! every call and the monotone approach of the thermal energy to the
//! ground energy spot-checked at doubled beta.

use crate::dense::spectrum;
use crate::hamiltonian::{Hamiltonian, HamiltonianError};
use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Debug, Serialize)]
pub struct ExactReference {
    /// Thermal expectation `<H>_beta`.
    pub energy: f64,
    /// Partition function `Z(beta)`.
    pub z: f64,
    /// Free energy `F(beta) = -ln(Z)/beta` (undefined at `beta = 0`).
    pub free_energy: f64,
    /// Ground energy.
    pub e0: f64,
    pub beta: f64,
}

#[derive(Debug, Error)]
pub enum ReferenceError {
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
    #[error("free-energy bound violated: |F - E0| = {0} > n/beta = {1}")]
    FreeEnergyBound(f64, f64),
    #[error("thermal energy failed the monotone approach to E0")]
    NotMonotone,
    #[error("beta must be nonnegative")]
    NegativeBeta,
}

fn thermal_energy(eigenvalues: &[f64], beta: f64, e0: f64) -> (f64, f64) {
    // shift by e0 for numerical stability; z returned unshifted
    let mut z_shifted = 0.0;
    let mut num = 0.0;
    for &ev in eigenvalues {
        let w = (-(beta) * (ev - e0)).exp();
        z_shifted += w;
        num += ev * w;
    }
    (num / z_shifted, z_shifted)
}

/// Dense-oracle thermal quantities at inverse temperature `beta >= 0`.
/// At `beta = 0` the free energy is reported as negative infinity and
/// the bound check is skipped.
pub fn exact_reference(h: &Hamiltonian, beta: f64) -> Result<ExactReference, ReferenceError> {
    if beta < 0.0 {
        return Err(ReferenceError::NegativeBeta);
    }
    let eigenvalues = spectrum(h)?;
    let n = h.num_qubits() as f64;
    let e0 = eigenvalues[0];
    let (energy, z_shifted) = thermal_energy(&eigenvalues, beta, e0);
    if beta == 0.0 {
        return Ok(ExactReference {
            energy,
            z: eigenvalues.len() as f64,
            free_energy: f64::NEG_INFINITY,
            e0,
            beta,
        });
    }
    let z = z_shifted * (-beta * e0).exp();
    let free_energy = e0 - z_shifted.ln() / beta;
    let bound = n / beta;
    if (free_energy - e0).abs() > bound + 1e-9 {
        return Err(ReferenceError::FreeEnergyBound(
            (free_energy - e0).abs(),
            bound,
        ));
    }
    // monotone approach: <H>_{2 beta} <= <H>_beta and both at least E0
    let (energy_2b, _) = thermal_energy(&eigenvalues, 2.0 * beta, e0);
    if energy + 1e-9 < e0 || energy_2b > energy + 1e-9 {
        return Err(ReferenceError::NotMonotone);
    }
    Ok(ExactReference {
        energy,
        z,
        free_energy,
        e0,
        beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{Letter, PauliString, PauliTerm};
    use crate::ratio::{rat, to_f64};

    fn tfim4() -> Hamiltonian {
        let mut terms = Vec::new();
        for i in 0..3 {
            terms.push(PauliTerm::new(
                rat(-1),
                PauliString::from_letters(4, &[(i, Letter::Z), (i + 1, Letter::Z)]),
            ));
        }
        for i in 0..4 {
            terms.push(PauliTerm::new(
                rat(-1),
                PauliString::from_letters(4, &[(i, Letter::X)]),
            ));
        }
        Hamiltonian::new(4, terms).unwrap()
    }

    #[test]
    fn z_at_zero_beta_is_dimension() {
        let r = exact_reference(&tfim4(), 0.0).unwrap();
        assert_eq!(r.z, 16.0);
    }

    #[test]
    fn low_temperature_pins_ground_energy() {
        let h = tfim4();
        let r = exact_reference(&h, 1000.0).unwrap();
        assert!((r.energy - r.e0).abs() <= 2.0 * 4.0 / 1000.0);
    }

    #[test]
    fn diagonal_matches_classical_gibbs() {
        let h = Hamiltonian::new(
            3,
            vec![
                PauliTerm::new(rat(1), PauliString::from_letters(3, &[(0, Letter::Z), (1, Letter::Z)])),
                PauliTerm::new(rat(-2), PauliString::from_letters(3, &[(2, Letter::Z)])),
            ],
        )
        .unwrap();
        let beta = 0.7;
        let r = exact_reference(&h, beta).unwrap();
        // independent classical sum over spin configurations
        let groups = h.flip_groups().unwrap();
        let diag = groups.get(&crate::bits::Mask::zeros(3)).unwrap();
        let mut z = 0.0;
        let mut num = 0.0;
        for b in crate::bits::Mask::lex_iter(3) {
            let e = to_f64(&diag.entry(&b));
            let w = (-beta * e).exp();
            z += w;
            num += e * w;
        }
        assert!((r.energy - num / z).abs() < 1e-10);
        assert!((r.z - z).abs() < 1e-9 * z);
    }
}
