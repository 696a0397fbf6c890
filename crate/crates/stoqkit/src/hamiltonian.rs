//! Hamiltonian data model: a finite sum of real-coefficient Pauli terms
//! with exact rational coefficients.
//!
//! Identity terms are tracked separately as an energy offset. Terms are
//! kept deduplicated and sorted, so structural equality is semantic
//! equality. All values are immutable after construction and safe to
//! share across workers.

use crate::bits::Mask;
use crate::clifford::{CliffordTableau, SignedPauli};
use crate::flip::FlipGroup;
use crate::pauli::{PauliString, PauliTerm, RatComplex};
use crate::ratio::Rat;
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HamiltonianError {
    #[error("term acts on {term_qubits} qubits but the Hamiltonian is declared on {declared}")]
    QubitCountMismatch { term_qubits: usize, declared: usize },
    #[error("Hamiltonian has a term with odd Y-count; operation requires a real matrix")]
    NonReal,
    #[error("qubit count {0} exceeds the dense threshold {1}")]
    DenseThresholdExceeded(usize, usize),
}

/// Free-form provenance carried along with generated instances.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Metadata {
    pub name: Option<String>,
    pub provenance: Option<String>,
}

/// A sum of Pauli terms on `n` qubits, plus an identity offset.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    n: usize,
    terms: Vec<PauliTerm>,
    offset: Rat,
    pub meta: Metadata,
}

impl PartialEq for Hamiltonian {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.offset == other.offset && self.terms == other.terms
    }
}

impl Eq for Hamiltonian {}

impl Hamiltonian {
    /// Build from raw terms: duplicates are merged, zero coefficients
    /// dropped, identity terms folded into the offset, terms sorted.
    pub fn new(
        n: usize,
        raw: impl IntoIterator<Item = PauliTerm>,
    ) -> Result<Self, HamiltonianError> {
        let mut merged: BTreeMap<PauliString, Rat> = BTreeMap::new();
        let mut offset = Rat::zero();
        for t in raw {
            if t.string.num_qubits() != n {
                return Err(HamiltonianError::QubitCountMismatch {
                    term_qubits: t.string.num_qubits(),
                    declared: n,
                });
            }
            if t.string.is_identity() {
                offset += t.coeff;
                continue;
            }
            let c = merged.entry(t.string).or_insert_with(Rat::zero);
            *c += t.coeff;
        }
        let terms: Vec<PauliTerm> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| PauliTerm::new(c, s))
            .collect();
        Ok(Hamiltonian {
            n,
            terms,
            offset,
            meta: Metadata::default(),
        })
    }

    pub fn zero(n: usize) -> Self {
        Hamiltonian {
            n,
            terms: Vec::new(),
            offset: Rat::zero(),
            meta: Metadata::default(),
        }
    }

    pub fn with_meta(mut self, name: &str, provenance: &str) -> Self {
        self.meta.name = Some(name.to_string());
        self.meta.provenance = Some(provenance.to_string());
        self
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Non-identity terms, sorted by Pauli string.
    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Identity coefficient.
    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    /// Locality: largest term support, 0 for a pure offset.
    pub fn locality(&self) -> usize {
        self.terms.iter().map(|t| t.string.weight()).max().unwrap_or(0)
    }

    /// True iff every term has a real matrix (even Y-count).
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.is_real())
    }

    /// True iff every term is diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(|t| t.string.is_diagonal())
    }

    /// Interaction degree: the largest number of distinct other qubits any
    /// qubit shares a term with.
    pub fn max_interaction_degree(&self) -> usize {
        let mut neighbors: Vec<Mask> = vec![Mask::zeros(self.n); self.n];
        for t in &self.terms {
            let sup = t.string.support();
            for q in sup.iter_ones() {
                neighbors[q] = neighbors[q].or(&sup);
            }
        }
        (0..self.n)
            .map(|q| {
                let nb = &neighbors[q];
                if nb.is_zero() {
                    0
                } else {
                    nb.popcount() - 1
                }
            })
            .max()
            .unwrap_or(0)
    }

    /// Sum of coefficient magnitudes (each Pauli string has unit norm),
    /// including the offset: an upper bound on the operator norm and the
    /// exact value of `sum_i ||h_i||` over stored terms.
    pub fn coeff_norm_sum(&self) -> Rat {
        let mut acc = crate::ratio::rat_abs(&self.offset);
        for t in &self.terms {
            acc += crate::ratio::rat_abs(&t.coeff);
        }
        acc
    }

    pub fn add(&self, other: &Hamiltonian) -> Result<Hamiltonian, HamiltonianError> {
        if self.n != other.n {
            return Err(HamiltonianError::QubitCountMismatch {
                term_qubits: other.n,
                declared: self.n,
            });
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        terms.push(PauliTerm::new(
            self.offset.clone() + &other.offset,
            PauliString::identity(self.n),
        ));
        Hamiltonian::new(self.n, terms)
    }

    pub fn scale(&self, c: &Rat) -> Hamiltonian {
        let terms = self
            .terms
            .iter()
            .map(|t| PauliTerm::new(t.coeff.clone() * c, t.string.clone()))
            .chain(std::iter::once(PauliTerm::new(
                self.offset.clone() * c,
                PauliString::identity(self.n),
            )))
            .collect::<Vec<_>>();
        Hamiltonian::new(self.n, terms).expect("scaling preserves qubit count")
    }

    /// Re-embed on `n_total` qubits sending local qubit `i` to
    /// `qubit_map[i]`.
    pub fn embed(&self, n_total: usize, qubit_map: &[usize]) -> Hamiltonian {
        assert_eq!(qubit_map.len(), self.n);
        debug_assert!(
            {
                let mut seen = vec![false; n_total];
                qubit_map.iter().all(|&q| !std::mem::replace(&mut seen[q], true))
            },
            "embedding map must be injective"
        );
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut x = Mask::zeros(n_total);
                let mut z = Mask::zeros(n_total);
                for i in 0..self.n {
                    if t.string.x_mask().get(i) {
                        x.set(qubit_map[i], true);
                    }
                    if t.string.z_mask().get(i) {
                        z.set(qubit_map[i], true);
                    }
                }
                PauliTerm::new(t.coeff.clone(), PauliString::from_masks(x, z))
            })
            .chain(std::iter::once(PauliTerm::new(
                self.offset.clone(),
                PauliString::identity(n_total),
            )))
            .collect::<Vec<_>>();
        Hamiltonian::new(n_total, terms).expect("embedding is index-safe")
    }

    /// Left-multiply every term by a Pauli string with disjoint support
    /// (e.g. tensoring a flip factor onto a diagonal Hamiltonian). The
    /// offset is absorbed into a `factor` term.
    pub fn premultiply_disjoint(&self, factor: &PauliString) -> Hamiltonian {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                assert!(t.string.support().is_disjoint_from(&factor.support()));
                let (s, phase) = factor.multiply(&t.string).unwrap();
                debug_assert_eq!(phase.real_sign(), Some(1));
                PauliTerm::new(t.coeff.clone(), s)
            })
            .chain(std::iter::once(PauliTerm::new(
                self.offset.clone(),
                factor.clone(),
            )))
            .collect::<Vec<_>>();
        Hamiltonian::new(self.n, terms).expect("disjoint premultiplication is length-safe")
    }

    /// Group terms by X-pattern. The diagonal group (if any diagonal terms
    /// or a non-zero offset exist) is keyed by the empty mask and includes
    /// the offset as a constant.
    ///
    /// Errors on terms with odd Y-count: their entries are imaginary.
    pub fn flip_groups(&self) -> Result<BTreeMap<Mask, FlipGroup>, HamiltonianError> {
        if !self.is_real() {
            return Err(HamiltonianError::NonReal);
        }
        let mut buckets: BTreeMap<Mask, Vec<PauliTerm>> = BTreeMap::new();
        for t in &self.terms {
            buckets
                .entry(t.string.x_mask().clone())
                .or_default()
                .push(t.clone());
        }
        if !self.offset.is_zero() {
            buckets
                .entry(Mask::zeros(self.n))
                .or_default()
                .push(PauliTerm::new(self.offset.clone(), PauliString::identity(self.n)));
        }
        Ok(buckets
            .into_iter()
            .map(|(s, terms)| (s.clone(), FlipGroup::new(s, terms)))
            .collect())
    }

    /// Exact matrix entry `<y|H|x>` of a real Hamiltonian.
    pub fn matrix_entry(&self, x: &Mask, y: &Mask) -> Result<Rat, HamiltonianError> {
        let (re, im) = self.matrix_entry_complex(x, y);
        if !im.is_zero() {
            return Err(HamiltonianError::NonReal);
        }
        Ok(re)
    }

    /// Exact complex matrix entry `<y|H|x>` as `(re, im)`.
    pub fn matrix_entry_complex(&self, x: &Mask, y: &Mask) -> (Rat, Rat) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        let diff = x.xor(y);
        let mut acc = RatComplex::zero();
        if diff.is_zero() {
            acc.re += &self.offset;
        }
        for t in &self.terms {
            if t.string.x_mask() == &diff {
                let (_, v) = t.apply_to_basis(x);
                acc.add_assign(&v);
            }
        }
        (acc.re, acc.im)
    }

    /// Conjugate by a Hadamard mask `W(x) = ⊗_i W_i^{x_i}`: per-qubit
    /// letter exchange X <-> Z with Y -> -Y on the masked qubits. An exact
    /// involution.
    pub fn conjugate_hadamard(&self, mask: &Mask) -> Hamiltonian {
        assert_eq!(mask.len(), self.n, "Hadamard mask length mismatch");
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let moved_x = t.string.x_mask().and(mask);
                let moved_z = t.string.z_mask().and(mask);
                let x = t.string.x_mask().minus(mask).or(&moved_z);
                let z = t.string.z_mask().minus(mask).or(&moved_x);
                let flips = t.string.x_mask().and(t.string.z_mask()).and(mask).popcount();
                let coeff = if flips % 2 == 1 {
                    -t.coeff.clone()
                } else {
                    t.coeff.clone()
                };
                PauliTerm::new(coeff, PauliString::from_masks(x, z))
            })
            .chain(std::iter::once(PauliTerm::new(
                self.offset.clone(),
                PauliString::identity(self.n),
            )))
            .collect::<Vec<_>>();
        let mut h = Hamiltonian::new(self.n, terms).expect("conjugation preserves qubit count");
        h.meta = self.meta.clone();
        h
    }

    /// Conjugate by a Clifford tableau with exact sign tracking. The
    /// spectrum is preserved; the result may contain odd-Y strings (a real
    /// Hamiltonian can acquire imaginary entries under a general
    /// Clifford).
    pub fn conjugate_clifford(&self, tableau: &CliffordTableau) -> Hamiltonian {
        assert_eq!(tableau.num_qubits(), self.n, "tableau size mismatch");
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let img = tableau.conjugate(&SignedPauli::plus(t.string.clone()));
                let coeff = if img.neg {
                    -t.coeff.clone()
                } else {
                    t.coeff.clone()
                };
                PauliTerm::new(coeff, img.string)
            })
            .chain(std::iter::once(PauliTerm::new(
                self.offset.clone(),
                PauliString::identity(self.n),
            )))
            .collect::<Vec<_>>();
        let mut h = Hamiltonian::new(self.n, terms).expect("conjugation preserves qubit count");
        h.meta = self.meta.clone();
        h
    }
}
