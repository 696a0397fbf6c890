//! Dense desk-scale backend: materialized matrices, spectra, thermal
//! expectations. Serves as the exhaustive oracle everything else is
//! checked against.
//!
//! Basis convention: state index `u` has bit `i` of the string at binary
//! weight `2^i` (see [`Mask::to_index`]).

use crate::bits::Mask;
use crate::hamiltonian::{Hamiltonian, HamiltonianError};
use crate::ratio::to_f64;
use nalgebra::DMatrix;

/// Default cap on dense materialization.
pub const DENSE_THRESHOLD: usize = 14;

fn check_cap(n: usize, cap: usize) -> Result<(), HamiltonianError> {
    if n > cap {
        return Err(HamiltonianError::DenseThresholdExceeded(n, cap));
    }
    Ok(())
}

/// Materialize a real Hamiltonian as a `2^n x 2^n` matrix.
pub fn dense_matrix(h: &Hamiltonian) -> Result<DMatrix<f64>, HamiltonianError> {
    dense_matrix_capped(h, DENSE_THRESHOLD)
}

pub fn dense_matrix_capped(h: &Hamiltonian, cap: usize) -> Result<DMatrix<f64>, HamiltonianError> {
    check_cap(h.num_qubits(), cap)?;
    if !h.is_real() {
        return Err(HamiltonianError::NonReal);
    }
    let n = h.num_qubits();
    let dim = 1usize << n;
    let mut m = DMatrix::zeros(dim, dim);
    let offset = to_f64(h.offset());
    for u in 0..dim {
        m[(u, u)] += offset;
    }
    for t in h.terms() {
        let coeff = to_f64(&t.coeff);
        // real string: i^{y_count} = (-1)^{y_count/2}
        let base = if (t.string.y_count() / 2) % 2 == 1 {
            -coeff
        } else {
            coeff
        };
        let flip = t.string.x_mask().to_index();
        for u in 0..dim {
            let b = Mask::from_index(n, u);
            let sign = if b.parity_and(t.string.z_mask()) { -base } else { base };
            m[(u ^ flip, u)] += sign;
        }
    }
    Ok(m)
}

/// Split a (possibly non-real) Hermitian Pauli sum into its real and
/// imaginary parts `H = A + iB` with `A` symmetric, `B` antisymmetric.
fn dense_parts(h: &Hamiltonian, cap: usize) -> Result<(DMatrix<f64>, DMatrix<f64>), HamiltonianError> {
    check_cap(h.num_qubits(), cap)?;
    let n = h.num_qubits();
    let dim = 1usize << n;
    let mut re = DMatrix::zeros(dim, dim);
    let mut im = DMatrix::zeros(dim, dim);
    let offset = to_f64(h.offset());
    for u in 0..dim {
        re[(u, u)] += offset;
    }
    for t in h.terms() {
        let coeff = to_f64(&t.coeff);
        let y = t.string.y_count();
        let (target, base) = match y % 4 {
            0 => (&mut re, coeff),
            1 => (&mut im, coeff),
            2 => (&mut re, -coeff),
            _ => (&mut im, -coeff),
        };
        let flip = t.string.x_mask().to_index();
        for u in 0..dim {
            let b = Mask::from_index(n, u);
            let sign = if b.parity_and(t.string.z_mask()) { -base } else { base };
            target[(u ^ flip, u)] += sign;
        }
    }
    Ok((re, im))
}

/// Sorted eigenvalues (ascending) of a Hermitian Pauli sum. Real inputs
/// diagonalize directly; odd-Y inputs go through the real embedding
/// `[[A, -B], [B, A]]`, which carries each eigenvalue twice.
pub fn spectrum(h: &Hamiltonian) -> Result<Vec<f64>, HamiltonianError> {
    spectrum_capped(h, DENSE_THRESHOLD)
}

pub fn spectrum_capped(h: &Hamiltonian, cap: usize) -> Result<Vec<f64>, HamiltonianError> {
    if h.is_real() {
        let m = dense_matrix_capped(h, cap)?;
        let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return Ok(ev);
    }
    let (a, b) = dense_parts(h, cap)?;
    let dim = a.nrows();
    let mut big = DMatrix::zeros(2 * dim, 2 * dim);
    big.view_mut((0, 0), (dim, dim)).copy_from(&a);
    big.view_mut((dim, dim), (dim, dim)).copy_from(&a);
    big.view_mut((0, dim), (dim, dim)).copy_from(&(-&b));
    big.view_mut((dim, 0), (dim, dim)).copy_from(&b);
    let mut ev: Vec<f64> = big.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(ev.into_iter().step_by(2).collect())
}

/// Ground state (lowest eigenvalue and a real eigenvector) of a real
/// Hamiltonian.
pub fn ground_state(h: &Hamiltonian) -> Result<(f64, Vec<f64>), HamiltonianError> {
    let m = dense_matrix(h)?;
    let eig = m.symmetric_eigen();
    let mut best = 0;
    for i in 1..eig.eigenvalues.len() {
        if eig.eigenvalues[i] < eig.eigenvalues[best] {
            best = i;
        }
    }
    Ok((
        eig.eigenvalues[best],
        eig.eigenvectors.column(best).iter().copied().collect(),
    ))
}

/// `<psi|H|psi>` for a real state vector.
pub fn expectation(h: &Hamiltonian, psi: &[f64]) -> Result<f64, HamiltonianError> {
    let m = dense_matrix(h)?;
    let v = nalgebra::DVector::from_column_slice(psi);
    Ok((v.transpose() * m * &v)[(0, 0)])
}

/// Exact Trotterized thermal expectation
/// `Tr(H (I - tau H)^N) / Tr((I - tau H)^N)` with `tau = beta / N`; the
/// quantity the path-integral estimator converges to.
pub fn trotter_expectation(h: &Hamiltonian, beta: f64, slices: usize) -> Result<f64, HamiltonianError> {
    let m = dense_matrix(h)?;
    let dim = m.nrows();
    let tau = beta / slices as f64;
    let a = DMatrix::identity(dim, dim) - m.scale(tau);
    let mut power = DMatrix::identity(dim, dim);
    let mut base = a;
    let mut k = slices;
    while k > 0 {
        if k & 1 == 1 {
            power = &power * &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    let num = (&m * &power).trace();
    let den = power.trace();
    Ok(num / den)
}

/// Exact mean of the path-integral local-energy estimator over allowed
/// paths (those with no vanishing transfer factor), with the `1/N`
/// normalization:
///
/// `Tr(B A^{N-1}) / Tr(A^N)` where `A = I - tau H` and `B` is
/// `H (I - tau H)` masked to the non-zero pattern of `A`.
///
/// This differs from [`trotter_expectation`] exactly by the contribution
/// of paths containing a forbidden transition, which the sampler rejects.
pub fn estimator_mean(h: &Hamiltonian, beta: f64, slices: usize) -> Result<f64, HamiltonianError> {
    let m = dense_matrix(h)?;
    let dim = m.nrows();
    let tau = beta / slices as f64;
    let a = DMatrix::identity(dim, dim) - m.scale(tau);
    let mut b = &m * &a;
    for r in 0..dim {
        for c in 0..dim {
            if a[(r, c)] == 0.0 {
                b[(r, c)] = 0.0;
            }
        }
    }
    let mut a_pow = DMatrix::identity(dim, dim);
    for _ in 0..(slices - 1) {
        a_pow = &a_pow * &a;
    }
    let num = (&b * &a_pow).trace();
    let den = (&a * &a_pow).trace();
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{Letter, PauliString, PauliTerm};
    use crate::ratio::rat;

    fn ham(n: usize, terms: &[(i64, &[(usize, Letter)])]) -> Hamiltonian {
        Hamiltonian::new(
            n,
            terms
                .iter()
                .map(|(c, ls)| PauliTerm::new(rat(*c), PauliString::from_letters(n, ls))),
        )
        .unwrap()
    }

    #[test]
    fn spectrum_of_minus_x() {
        let h = ham(1, &[(-1, &[(0, Letter::X)])]);
        let ev = spectrum(&h).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_of_zz() {
        let h = ham(2, &[(1, &[(0, Letter::Z), (1, Letter::Z)])]);
        let ev = spectrum(&h).unwrap();
        let expect = [-1.0, -1.0, 1.0, 1.0];
        for (a, b) in ev.iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn non_real_spectrum_via_embedding() {
        // Y has eigenvalues ±1
        let h = ham(1, &[(2, &[(0, Letter::Y)])]);
        let ev = spectrum(&h).unwrap();
        assert_eq!(ev.len(), 2);
        assert!((ev[0] + 2.0).abs() < 1e-9 && (ev[1] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn dense_agrees_with_matrix_entry() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(21);
        let h = crate::corpus::random_real_hamiltonian(4, 6, 3, &mut rng);
        let m = dense_matrix(&h).unwrap();
        for _ in 0..50 {
            let x = Mask::from_lex_rank(4, rng.gen_range(0..16));
            let y = Mask::from_lex_rank(4, rng.gen_range(0..16));
            let exact = h.matrix_entry(&x, &y).unwrap();
            let dense = m[(y.to_index(), x.to_index())];
            assert!((to_f64(&exact) - dense).abs() < 1e-12);
        }
    }

    #[test]
    fn trotter_expectation_minus_x() {
        // closed-form check: tau = 1/2, N = 2
        let h = ham(1, &[(-1, &[(0, Letter::X)])]);
        let e = trotter_expectation(&h, 1.0, 2).unwrap();
        assert!((e - (-0.8)).abs() < 1e-12);
    }
}
