//! Clifford tableaux: signed Pauli images of the X/Z generators under a
//! Clifford map, with exact sign tracking.
//!
//! A tableau is valid when the images preserve the symplectic form:
//! `image(X_i)` anticommutes with `image(Z_i)` and commutes with every
//! other image. Conjugation of a Hamiltonian term multiplies generator
//! images with exact phase bookkeeping, so spectra are preserved to the
//! letter.

use crate::bits::Mask;
use crate::pauli::{PauliString, Phase};
use std::fmt;
use thiserror::Error;

/// A Hermitian Pauli string with a sign: `(-1)^neg · string`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedPauli {
    pub neg: bool,
    pub string: PauliString,
}

impl SignedPauli {
    pub fn plus(string: PauliString) -> Self {
        SignedPauli { neg: false, string }
    }

    pub fn minus(string: PauliString) -> Self {
        SignedPauli { neg: true, string }
    }

    pub fn new(neg: bool, string: PauliString) -> Self {
        SignedPauli { neg, string }
    }

    pub fn num_qubits(&self) -> usize {
        self.string.num_qubits()
    }

    pub fn negate(&self) -> Self {
        SignedPauli {
            neg: !self.neg,
            string: self.string.clone(),
        }
    }

    pub fn sign(&self) -> i8 {
        if self.neg {
            -1
        } else {
            1
        }
    }

    /// Product of two signed Hermitian strings as `(string, i-exponent)`;
    /// the exponent is even exactly when the factors commute.
    pub fn mul_with_phase(&self, other: &SignedPauli) -> (PauliString, Phase) {
        let (s, mut phase) = self
            .string
            .multiply(&other.string)
            .expect("signed Pauli product on mismatched lengths");
        if self.neg ^ other.neg {
            phase = phase.mul(Phase::MINUS_ONE);
        }
        (s, phase)
    }

    /// Product of two commuting signed Hermitian strings.
    ///
    /// Panics if the factors anticommute (the product would be
    /// anti-Hermitian).
    pub fn mul(&self, other: &SignedPauli) -> SignedPauli {
        let (s, phase) = self.mul_with_phase(other);
        let sign = phase
            .real_sign()
            .expect("product of anticommuting strings is not Hermitian");
        SignedPauli {
            neg: sign < 0,
            string: s,
        }
    }
}

impl fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.neg { "-" } else { "+" }, self.string)
    }
}

/// Elementary Clifford gates with exact conjugation rules on signed
/// Paulis. Enough to express any Clifford via gate sequences.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    Sdg(usize),
    SqrtX(usize),
    SqrtXdg(usize),
    Cnot(usize, usize),
    X(usize),
    Z(usize),
}

impl CliffordGate {
    pub fn inverse(self) -> CliffordGate {
        match self {
            CliffordGate::S(i) => CliffordGate::Sdg(i),
            CliffordGate::Sdg(i) => CliffordGate::S(i),
            CliffordGate::SqrtX(i) => CliffordGate::SqrtXdg(i),
            CliffordGate::SqrtXdg(i) => CliffordGate::SqrtX(i),
            g => g,
        }
    }

    /// Conjugate a signed Pauli in place: `P -> G P G†`.
    pub fn conjugate(self, p: &mut SignedPauli) {
        let (x, z) = (p.string.x_mask().clone(), p.string.z_mask().clone());
        match self {
            CliffordGate::H(i) => {
                // X <-> Z, Y -> -Y
                let (xb, zb) = (x.get(i), z.get(i));
                if xb && zb {
                    p.neg = !p.neg;
                }
                let mut nx = x;
                let mut nz = z;
                nx.set(i, zb);
                nz.set(i, xb);
                p.string = PauliString::from_masks(nx, nz);
            }
            CliffordGate::S(i) => {
                // X -> Y, Y -> -X, Z -> Z
                let (xb, zb) = (x.get(i), z.get(i));
                if xb && zb {
                    p.neg = !p.neg;
                }
                let mut nz = z;
                nz.set(i, zb ^ xb);
                p.string = PauliString::from_masks(x, nz);
            }
            CliffordGate::Sdg(i) => {
                // X -> -Y, Y -> X, Z -> Z
                let (xb, zb) = (x.get(i), z.get(i));
                if xb && !zb {
                    p.neg = !p.neg;
                }
                let mut nz = z;
                nz.set(i, zb ^ xb);
                p.string = PauliString::from_masks(x, nz);
            }
            CliffordGate::SqrtX(i) => {
                // Z -> -Y, Y -> Z, X -> X
                let (xb, zb) = (x.get(i), z.get(i));
                if zb && !xb {
                    p.neg = !p.neg;
                }
                let mut nx = x;
                nx.set(i, xb ^ zb);
                p.string = PauliString::from_masks(nx, z);
            }
            CliffordGate::SqrtXdg(i) => {
                // Z -> Y, Y -> -Z, X -> X
                let (xb, zb) = (x.get(i), z.get(i));
                if zb && xb {
                    p.neg = !p.neg;
                }
                let mut nx = x;
                nx.set(i, xb ^ zb);
                p.string = PauliString::from_masks(nx, z);
            }
            CliffordGate::Cnot(c, t) => {
                let (xc, zc) = (x.get(c), z.get(c));
                let (xt, zt) = (x.get(t), z.get(t));
                if xc && zt && (xt == zc) {
                    p.neg = !p.neg;
                }
                let mut nx = x;
                let mut nz = z;
                nx.set(t, xt ^ xc);
                nz.set(c, zc ^ zt);
                p.string = PauliString::from_masks(nx, nz);
            }
            CliffordGate::X(i) => {
                if z.get(i) {
                    p.neg = !p.neg;
                }
            }
            CliffordGate::Z(i) => {
                if x.get(i) {
                    p.neg = !p.neg;
                }
            }
        }
    }
}

/// Conjugate through a gate sequence applied left to right:
/// `P -> g_k … g_1 P g_1† … g_k†`.
pub fn conjugate_by_circuit(gates: &[CliffordGate], p: &SignedPauli) -> SignedPauli {
    let mut out = p.clone();
    for &g in gates {
        g.conjugate(&mut out);
    }
    out
}

/// Conjugate by the inverse of a gate sequence.
pub fn conjugate_by_inverse(gates: &[CliffordGate], p: &SignedPauli) -> SignedPauli {
    let mut out = p.clone();
    for &g in gates.iter().rev() {
        g.inverse().conjugate(&mut out);
    }
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableauError {
    #[error("tableau images must act on {expected} qubits, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("symplectic form violated between image {0} and image {1}")]
    SymplecticViolation(usize, usize),
}

/// Images of the X/Z generators under a Clifford map, with sign bits.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliffordTableau {
    n: usize,
    x_images: Vec<SignedPauli>,
    z_images: Vec<SignedPauli>,
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Self {
        CliffordTableau {
            n,
            x_images: (0..n).map(|i| SignedPauli::plus(PauliString::x_on(n, i))).collect(),
            z_images: (0..n).map(|i| SignedPauli::plus(PauliString::z_on(n, i))).collect(),
        }
    }

    /// Build from explicit generator images and validate the symplectic
    /// invariant.
    pub fn from_images(
        x_images: Vec<SignedPauli>,
        z_images: Vec<SignedPauli>,
    ) -> Result<Self, TableauError> {
        let n = x_images.len();
        assert_eq!(n, z_images.len(), "need one X and one Z image per qubit");
        let t = CliffordTableau { n, x_images, z_images };
        t.validate()?;
        Ok(t)
    }

    /// Tableau realized by a gate sequence.
    pub fn from_circuit(n: usize, gates: &[CliffordGate]) -> Self {
        let mut t = CliffordTableau::identity(n);
        for img in t.x_images.iter_mut().chain(t.z_images.iter_mut()) {
            *img = conjugate_by_circuit(gates, img);
        }
        t
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_image(&self, i: usize) -> &SignedPauli {
        &self.x_images[i]
    }

    pub fn z_image(&self, i: usize) -> &SignedPauli {
        &self.z_images[i]
    }

    /// Check the symplectic invariant on all generator pairs.
    pub fn validate(&self) -> Result<(), TableauError> {
        let all: Vec<(usize, &SignedPauli)> = self
            .x_images
            .iter()
            .chain(self.z_images.iter())
            .enumerate()
            .collect();
        for (idx, img) in &all {
            if img.num_qubits() != self.n {
                return Err(TableauError::WrongLength {
                    expected: self.n,
                    found: img.num_qubits(),
                });
            }
            let _ = idx;
        }
        for i in 0..all.len() {
            for j in (i + 1)..all.len() {
                let commute = all[i].1.string.commutes(&all[j].1.string).unwrap();
                // X_i and Z_i anticommute; everything else commutes
                let expect_commute = !(i + self.n == j);
                if commute != expect_commute {
                    return Err(TableauError::SymplecticViolation(i, j));
                }
            }
        }
        Ok(())
    }

    /// Image of an arbitrary signed Pauli string under the map.
    ///
    /// The string decomposes as `i^{y_count} · prod_i X_i^{x_i} Z_i^{z_i}`;
    /// each factor is replaced by its image and the product is carried out
    /// with exact phases. The result is guaranteed Hermitian.
    pub fn conjugate(&self, p: &SignedPauli) -> SignedPauli {
        assert_eq!(p.num_qubits(), self.n, "tableau size mismatch");
        let mut acc_string = PauliString::identity(self.n);
        let mut acc_phase = Phase::from_i_exponent(p.string.y_count() as u32);
        if p.neg {
            acc_phase = acc_phase.mul(Phase::MINUS_ONE);
        }
        for i in 0..self.n {
            if p.string.x_mask().get(i) {
                let img = &self.x_images[i];
                let (s, ph) = acc_string.multiply(&img.string).unwrap();
                acc_string = s;
                acc_phase = acc_phase.mul(ph);
                if img.neg {
                    acc_phase = acc_phase.mul(Phase::MINUS_ONE);
                }
            }
            if p.string.z_mask().get(i) {
                let img = &self.z_images[i];
                let (s, ph) = acc_string.multiply(&img.string).unwrap();
                acc_string = s;
                acc_phase = acc_phase.mul(ph);
                if img.neg {
                    acc_phase = acc_phase.mul(Phase::MINUS_ONE);
                }
            }
        }
        let sign = acc_phase
            .real_sign()
            .expect("conjugation of a Hermitian Pauli must stay Hermitian");
        SignedPauli {
            neg: sign < 0,
            string: acc_string,
        }
    }

    /// The inverse map, obtained by solving for the preimages of the
    /// standard generators.
    pub fn inverse(&self) -> CliffordTableau {
        // Conjugating each standard generator by the inverse amounts to
        // finding, for each X_i/Z_i, the product of current images equal
        // to it. Solve over F2 using the symplectic pairing: the
        // coefficient of X_j (resp Z_j) in the preimage of P equals the
        // anticommutation of P with image(Z_j) (resp image(X_j)).
        let n = self.n;
        let preimage = |target: &PauliString| -> SignedPauli {
            let mut x_sel = Mask::zeros(n);
            let mut z_sel = Mask::zeros(n);
            for j in 0..n {
                if target.anticommutes(&self.z_images[j].string).unwrap() {
                    x_sel.set(j, true);
                }
                if target.anticommutes(&self.x_images[j].string).unwrap() {
                    z_sel.set(j, true);
                }
            }
            let pre = PauliString::from_masks(x_sel, z_sel);
            let image = self.conjugate(&SignedPauli::plus(pre.clone()));
            debug_assert_eq!(&image.string, target, "inverse solve must hit the target string");
            // map(sign · pre) = sign · image; choose sign so the image is +target
            SignedPauli::new(image.neg, pre)
        };

        let x_images = (0..n).map(|i| preimage(&PauliString::x_on(n, i))).collect();
        let z_images = (0..n).map(|i| preimage(&PauliString::z_on(n, i))).collect();
        let inv = CliffordTableau { n, x_images, z_images };
        debug_assert!(inv.validate().is_ok());
        inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Letter;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn hadamard_rules() {
        let h = CliffordGate::H(0);
        let mut p = SignedPauli::plus(PauliString::x_on(1, 0));
        h.conjugate(&mut p);
        assert_eq!(p, SignedPauli::plus(PauliString::z_on(1, 0)));

        let mut y = SignedPauli::plus(PauliString::from_letters(1, &[(0, Letter::Y)]));
        h.conjugate(&mut y);
        assert_eq!(y, SignedPauli::minus(PauliString::from_letters(1, &[(0, Letter::Y)])));
    }

    #[test]
    fn s_gate_rules() {
        let s = CliffordGate::S(0);
        let mut x = SignedPauli::plus(PauliString::x_on(1, 0));
        s.conjugate(&mut x);
        assert_eq!(x, SignedPauli::plus(PauliString::from_letters(1, &[(0, Letter::Y)])));
        let mut y = SignedPauli::plus(PauliString::from_letters(1, &[(0, Letter::Y)]));
        s.conjugate(&mut y);
        assert_eq!(y, SignedPauli::minus(PauliString::x_on(1, 0)));
    }

    #[test]
    fn cnot_yy_identity() {
        // CNOT (Y x Y) CNOT = -(X x Z)
        let g = CliffordGate::Cnot(0, 1);
        let mut p = SignedPauli::plus(PauliString::from_letters(
            2,
            &[(0, Letter::Y), (1, Letter::Y)],
        ));
        g.conjugate(&mut p);
        assert_eq!(
            p,
            SignedPauli::minus(PauliString::from_letters(2, &[(0, Letter::X), (1, Letter::Z)]))
        );
    }

    #[test]
    fn gate_inverses_cancel() {
        let mut rng = StdRng::seed_from_u64(3);
        let gates = [
            CliffordGate::H(0),
            CliffordGate::S(1),
            CliffordGate::SqrtX(2),
            CliffordGate::Cnot(0, 2),
            CliffordGate::Cnot(2, 1),
            CliffordGate::Sdg(0),
            CliffordGate::X(1),
            CliffordGate::Z(2),
        ];
        for _ in 0..50 {
            let letters: Vec<(usize, Letter)> = (0..3)
                .map(|i| {
                    (
                        i,
                        match rng.gen_range(0..4) {
                            0 => Letter::I,
                            1 => Letter::X,
                            2 => Letter::Y,
                            _ => Letter::Z,
                        },
                    )
                })
                .collect();
            let p = SignedPauli::new(rng.gen(), PauliString::from_letters(3, &letters));
            let q = conjugate_by_circuit(&gates, &p);
            let back = conjugate_by_inverse(&gates, &q);
            assert_eq!(back, p);
        }
    }

    #[test]
    fn circuit_tableau_matches_gatewise_conjugation() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..40 {
            let n = rng.gen_range(1..5);
            let gates = crate::corpus::random_clifford_circuit(n, 12, &mut rng);
            let t = CliffordTableau::from_circuit(n, &gates);
            t.validate().unwrap();
            for _ in 0..6 {
                let letters: Vec<(usize, Letter)> = (0..n)
                    .map(|i| {
                        (
                            i,
                            match rng.gen_range(0..4) {
                                0 => Letter::I,
                                1 => Letter::X,
                                2 => Letter::Y,
                                _ => Letter::Z,
                            },
                        )
                    })
                    .collect();
                let p = SignedPauli::new(rng.gen(), PauliString::from_letters(n, &letters));
                assert_eq!(t.conjugate(&p), conjugate_by_circuit(&gates, &p));
            }
        }
    }

    #[test]
    fn inverse_undoes_the_map() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..30 {
            let n = rng.gen_range(1..5);
            let gates = crate::corpus::random_clifford_circuit(n, 10, &mut rng);
            let t = CliffordTableau::from_circuit(n, &gates);
            let inv = t.inverse();
            for i in 0..n {
                let x = SignedPauli::plus(PauliString::x_on(n, i));
                let z = SignedPauli::plus(PauliString::z_on(n, i));
                assert_eq!(inv.conjugate(&t.conjugate(&x)), x);
                assert_eq!(inv.conjugate(&t.conjugate(&z)), z);
            }
        }
    }
}
