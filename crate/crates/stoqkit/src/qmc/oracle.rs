//! Sparse matrix-entry oracles in double precision, the representation
//! the sampler walks on. Entries derive from the flip-group structure,
//! so evaluation touches only the terms of the one group selected by
//! `x XOR y`.

use crate::bits::Mask;
use crate::hamiltonian::{Hamiltonian, HamiltonianError};
use crate::ratio::to_f64;
use std::collections::BTreeMap;

/// Anything that can answer `<y|H|x>` sparsely.
pub trait EntryOracle {
    fn num_qubits(&self) -> usize;
    /// Flip masks with potentially non-zero off-diagonal entries.
    fn flip_masks(&self) -> &[Mask];
    fn diag(&self, x: &Mask) -> f64;
    /// Off-diagonal entry `<x XOR flip | H | x>` for one of the flip
    /// masks.
    fn offdiag(&self, x: &Mask, flip_index: usize) -> f64;

    fn entry(&self, x: &Mask, y: &Mask) -> f64 {
        let diff = x.xor(y);
        if diff.is_zero() {
            return self.diag(x);
        }
        match self.flip_masks().iter().position(|s| s == &diff) {
            Some(i) => self.offdiag(x, i),
            None => 0.0,
        }
    }

    /// States reachable from `x` with a possibly non-zero entry,
    /// excluding `x` itself.
    fn neighbors(&self, x: &Mask) -> Vec<Mask> {
        self.flip_masks().iter().map(|s| x.xor(s)).collect()
    }
}

struct GroupData {
    /// `(z outside S, z inside S, signed coefficient)` per member term.
    parts: Vec<(Mask, Mask, f64)>,
}

/// Entry oracle over the Pauli-sum form of a real Hamiltonian.
pub struct PauliEntryOracle {
    n: usize,
    offset: f64,
    diag_parts: Vec<(Mask, f64)>,
    flips: Vec<Mask>,
    groups: Vec<GroupData>,
}

impl PauliEntryOracle {
    pub fn new(h: &Hamiltonian) -> Result<Self, HamiltonianError> {
        if !h.is_real() {
            return Err(HamiltonianError::NonReal);
        }
        let n = h.num_qubits();
        let mut diag_parts = Vec::new();
        let mut grouped: BTreeMap<Mask, Vec<(Mask, Mask, f64)>> = BTreeMap::new();
        for t in h.terms() {
            let base = to_f64(&t.coeff)
                * if (t.string.y_count() / 2) % 2 == 1 {
                    -1.0
                } else {
                    1.0
                };
            if t.string.is_diagonal() {
                diag_parts.push((t.string.z_mask().clone(), base));
            } else {
                let s = t.string.x_mask().clone();
                let z_out = t.string.z_mask().minus(&s);
                let z_in = t.string.z_mask().and(&s);
                grouped.entry(s).or_default().push((z_out, z_in, base));
            }
        }
        let mut flips = Vec::with_capacity(grouped.len());
        let mut groups = Vec::with_capacity(grouped.len());
        for (s, parts) in grouped {
            flips.push(s);
            groups.push(GroupData { parts });
        }
        Ok(PauliEntryOracle {
            n,
            offset: to_f64(h.offset()),
            diag_parts,
            flips,
            groups,
        })
    }
}

impl EntryOracle for PauliEntryOracle {
    fn num_qubits(&self) -> usize {
        self.n
    }

    fn flip_masks(&self) -> &[Mask] {
        &self.flips
    }

    fn diag(&self, x: &Mask) -> f64 {
        let mut acc = self.offset;
        for (z, c) in &self.diag_parts {
            acc += if x.parity_and(z) { -c } else { *c };
        }
        acc
    }

    fn offdiag(&self, x: &Mask, flip_index: usize) -> f64 {
        let mut acc = 0.0;
        for (z_out, z_in, c) in &self.groups[flip_index].parts {
            let parity = x.parity_and(z_out) ^ x.parity_and(z_in);
            acc += if parity { -c } else { *c };
        }
        acc
    }
}

/// The sign-flattened version: off-diagonal entries replaced by
/// `-|entry|`, diagonal unchanged. Not a Pauli sum in general (the
/// absolute value is nonlocal), so it lives behind the oracle interface;
/// sparsity and flip structure are inherited.
pub struct Stoquastified<'a, O: EntryOracle>(pub &'a O);

impl<O: EntryOracle> EntryOracle for Stoquastified<'_, O> {
    fn num_qubits(&self) -> usize {
        self.0.num_qubits()
    }

    fn flip_masks(&self) -> &[Mask] {
        self.0.flip_masks()
    }

    fn diag(&self, x: &Mask) -> f64 {
        self.0.diag(x)
    }

    fn offdiag(&self, x: &Mask, flip_index: usize) -> f64 {
        -self.0.offdiag(x, flip_index).abs()
    }
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
    fn oracle_matches_exact_entries() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(101);
        for _ in 0..20 {
            let h = crate::corpus::random_real_hamiltonian(4, 6, 3, &mut rng);
            let oracle = PauliEntryOracle::new(&h).unwrap();
            for _ in 0..30 {
                let x = Mask::from_lex_rank(4, rng.gen_range(0..16));
                let y = Mask::from_lex_rank(4, rng.gen_range(0..16));
                let exact = to_f64(&h.matrix_entry(&x, &y).unwrap());
                assert!((oracle.entry(&x, &y) - exact).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn stoquastified_examples() {
        // H = +X0: the flattened oracle equals the entries of -X0
        let h = ham(1, &[(1, &[(0, Letter::X)])]);
        let oracle = PauliEntryOracle::new(&h).unwrap();
        let tilde = Stoquastified(&oracle);
        let zero = Mask::zeros(1);
        let one = Mask::unit(1, 0);
        assert_eq!(tilde.entry(&zero, &one), -1.0);
        assert_eq!(tilde.entry(&one, &zero), -1.0);
        assert_eq!(tilde.diag(&zero), 0.0);

        // already stoquastic input: flattening is the identity
        let hs = ham(2, &[(-2, &[(0, Letter::X), (1, Letter::X)]), (1, &[(0, Letter::Z)])]);
        let o2 = PauliEntryOracle::new(&hs).unwrap();
        let t2 = Stoquastified(&o2);
        for u in 0..4 {
            for v in 0..4 {
                let x = Mask::from_index(2, u);
                let y = Mask::from_index(2, v);
                assert_eq!(o2.entry(&x, &y), t2.entry(&x, &y));
            }
        }
    }

    #[test]
    fn mixed_sign_group_flattens_pointwise() {
        use rand::rngs::StdRng;
        use rand::SeedableRng;
        let mut rng = StdRng::seed_from_u64(103);
        let h = crate::corpus::random_real_hamiltonian(6, 8, 3, &mut rng);
        let oracle = PauliEntryOracle::new(&h).unwrap();
        let tilde = Stoquastified(&oracle);
        let m = crate::dense::dense_matrix(&h).unwrap();
        for u in 0..64usize {
            let x = Mask::from_index(6, u);
            for y in oracle.neighbors(&x) {
                let dense = m[(y.to_index(), x.to_index())];
                assert!((tilde.entry(&x, &y) + dense.abs()).abs() < 1e-12);
            }
        }
    }
}
