//! Exact algebra of signed Pauli strings.
//!
//! A Pauli string is stored in symplectic form as a pair of bit masks
//! `(x, z)`: the letter on qubit `i` is I/X/Z/Y according to
//! `(x_i, z_i) = (0,0)/(1,0)/(0,1)/(1,1)`. Products track the exact phase
//! as a power of `i`; there is no floating-point phase arithmetic
//! anywhere.
//!
//! With `Y = i·XZ`, the letter at `(x, z)` is `i^{xz} X^x Z^z`, so a string
//! `P` equals `i^{y_count(P)}` times the ordered product of its `X`- and
//! `Z`-parts. The operator matrix of a string is real iff `y_count` is
//! even.

use crate::bits::Mask;
use crate::ratio::{to_f64, Rat};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

/// A power of the imaginary unit, tracked exactly mod 4.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_i_exponent(e: u32) -> Phase {
        Phase((e % 4) as u8)
    }

    pub fn i_exponent(self) -> u8 {
        self.0
    }

    pub fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }

    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    /// The real sign for even phases; `None` for `±i`.
    pub fn real_sign(self) -> Option<i8> {
        match self.0 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+1",
            1 => "+i",
            2 => "-1",
            _ => "-i",
        })
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliError {
    #[error("qubit count mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

/// An n-qubit Pauli string in symplectic (x-mask, z-mask) form, without
/// sign or coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliString {
    x: Mask,
    z: Mask,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            x: Mask::zeros(n),
            z: Mask::zeros(n),
        }
    }

    pub fn from_masks(x: Mask, z: Mask) -> Self {
        assert_eq!(x.len(), z.len(), "x/z mask length mismatch");
        PauliString { x, z }
    }

    pub fn from_letters(n: usize, letters: &[(usize, Letter)]) -> Self {
        let mut x = Mask::zeros(n);
        let mut z = Mask::zeros(n);
        for &(i, l) in letters {
            match l {
                Letter::I => {}
                Letter::X => x.set(i, true),
                Letter::Z => z.set(i, true),
                Letter::Y => {
                    x.set(i, true);
                    z.set(i, true);
                }
            }
        }
        PauliString { x, z }
    }

    /// Single-qubit X on qubit `i`.
    pub fn x_on(n: usize, i: usize) -> Self {
        PauliString::from_letters(n, &[(i, Letter::X)])
    }

    /// Single-qubit Z on qubit `i`.
    pub fn z_on(n: usize, i: usize) -> Self {
        PauliString::from_letters(n, &[(i, Letter::Z)])
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_mask(&self) -> &Mask {
        &self.x
    }

    pub fn z_mask(&self) -> &Mask {
        &self.z
    }

    pub fn letter(&self, i: usize) -> Letter {
        match (self.x.get(i), self.z.get(i)) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (false, true) => Letter::Z,
            (true, true) => Letter::Y,
        }
    }

    /// Qubits on which the string acts non-trivially.
    pub fn support(&self) -> Mask {
        self.x.or(&self.z)
    }

    pub fn weight(&self) -> usize {
        self.support().popcount()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn y_count(&self) -> usize {
        self.x.and(&self.z).popcount()
    }

    /// The operator matrix is real iff the number of Y letters is even.
    pub fn is_real(&self) -> bool {
        self.y_count() % 2 == 0
    }

    /// True iff the string is diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        self.x.is_zero()
    }

    /// Exact product: returns `R` and the phase such that
    /// `P · Q = phase · R` as operators.
    pub fn multiply(&self, other: &PauliString) -> Result<(PauliString, Phase), PauliError> {
        if self.num_qubits() != other.num_qubits() {
            return Err(PauliError::LengthMismatch(self.num_qubits(), other.num_qubits()));
        }
        let rx = self.x.xor(&other.x);
        let rz = self.z.xor(&other.z);
        // i^{y(P)} i^{y(Q)} (-1)^{<P.z, Q.x>} = phase · i^{y(R)}
        let mut e = (self.y_count() + other.y_count()) as u32;
        if self.z.parity_and(&other.x) {
            e += 2;
        }
        e += 3 * rx.and(&rz).popcount() as u32; // subtract y(R) mod 4
        Ok((PauliString { x: rx, z: rz }, Phase::from_i_exponent(e)))
    }

    /// True iff the strings commute: the symplectic form
    /// `<P.x, Q.z> + <P.z, Q.x>` is even.
    pub fn commutes(&self, other: &PauliString) -> Result<bool, PauliError> {
        if self.num_qubits() != other.num_qubits() {
            return Err(PauliError::LengthMismatch(self.num_qubits(), other.num_qubits()));
        }
        Ok(!(self.x.parity_and(&other.z) ^ self.z.parity_and(&other.x)))
    }

    pub fn anticommutes(&self, other: &PauliString) -> Result<bool, PauliError> {
        self.commutes(other).map(|c| !c)
    }

    /// Action on a basis state: `P |b> = phase · (-1)^{<b, z>} |b XOR x>`
    /// with `phase = i^{y_count}`.
    pub fn apply_to_basis(&self, b: &Mask) -> (Mask, Phase) {
        assert_eq!(b.len(), self.num_qubits());
        let out = b.xor(&self.x);
        let mut e = self.y_count() as u32;
        if b.parity_and(&self.z) {
            e += 2;
        }
        (out, Phase::from_i_exponent(e))
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("I");
        }
        let mut first = true;
        for i in 0..self.num_qubits() {
            let c = match self.letter(i) {
                Letter::I => continue,
                Letter::X => 'X',
                Letter::Y => 'Y',
                Letter::Z => 'Z',
            };
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", c, i)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Exact complex value with rational parts; the only complex arithmetic
/// the crate needs is rational multiples of powers of `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatComplex {
    pub re: Rat,
    pub im: Rat,
}

impl RatComplex {
    pub fn zero() -> Self {
        RatComplex {
            re: Rat::zero(),
            im: Rat::zero(),
        }
    }

    pub fn real(re: Rat) -> Self {
        RatComplex {
            re,
            im: Rat::zero(),
        }
    }

    pub fn from_phase(coeff: &Rat, phase: Phase) -> Self {
        match phase.i_exponent() {
            0 => RatComplex::real(coeff.clone()),
            1 => RatComplex {
                re: Rat::zero(),
                im: coeff.clone(),
            },
            2 => RatComplex::real(-coeff.clone()),
            _ => RatComplex {
                re: Rat::zero(),
                im: -coeff.clone(),
            },
        }
    }

    pub fn add_assign(&mut self, other: &RatComplex) {
        self.re += &other.re;
        self.im += &other.im;
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }
}

/// A real-coefficient Pauli term `coeff · P`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PauliTerm {
    pub coeff: Rat,
    pub string: PauliString,
}

impl PauliTerm {
    pub fn new(coeff: Rat, string: PauliString) -> Self {
        PauliTerm { coeff, string }
    }

    /// True iff the stored operator has a real matrix.
    pub fn is_real(&self) -> bool {
        self.string.is_real()
    }

    /// The unique non-zero column entry `<y|T|b>`: returns `y` and the
    /// exact complex value.
    pub fn apply_to_basis(&self, b: &Mask) -> (Mask, RatComplex) {
        let (y, phase) = self.string.apply_to_basis(b);
        (y, RatComplex::from_phase(&self.coeff, phase))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn single(l: Letter) -> PauliString {
        PauliString::from_letters(1, &[(0, l)])
    }

    #[test]
    fn single_qubit_multiplication_table() {
        let (r, p) = single(Letter::X).multiply(&single(Letter::Y)).unwrap();
        assert_eq!(r, single(Letter::Z));
        assert_eq!(p, Phase::I);

        let (r, p) = single(Letter::Y).multiply(&single(Letter::X)).unwrap();
        assert_eq!(r, single(Letter::Z));
        assert_eq!(p, Phase::MINUS_I);

        let (r, p) = single(Letter::Y).multiply(&single(Letter::Z)).unwrap();
        assert_eq!(r, single(Letter::X));
        assert_eq!(p, Phase::I);

        let (r, p) = single(Letter::Z).multiply(&single(Letter::X)).unwrap();
        assert_eq!(r, single(Letter::Y));
        assert_eq!(p, Phase::I);

        let (r, p) = single(Letter::X).multiply(&single(Letter::X)).unwrap();
        assert!(r.is_identity());
        assert_eq!(p, Phase::ONE);
    }

    #[test]
    fn two_qubit_product_phase() {
        let xx = PauliString::from_letters(2, &[(0, Letter::X), (1, Letter::X)]);
        let yy = PauliString::from_letters(2, &[(0, Letter::Y), (1, Letter::Y)]);
        let zz = PauliString::from_letters(2, &[(0, Letter::Z), (1, Letter::Z)]);
        let (r, p) = xx.multiply(&yy).unwrap();
        assert_eq!(r, zz);
        assert_eq!(p, Phase::MINUS_ONE);
    }

    #[test]
    fn identity_is_neutral() {
        let p = PauliString::from_letters(3, &[(0, Letter::X), (2, Letter::Y)]);
        let (r, phase) = p.multiply(&PauliString::identity(3)).unwrap();
        assert_eq!(r, p);
        assert_eq!(phase, Phase::ONE);
    }

    #[test]
    fn commutation_examples() {
        let x = single(Letter::X);
        let z = single(Letter::Z);
        assert!(!x.commutes(&z).unwrap());

        let x1x2 = PauliString::from_letters(2, &[(0, Letter::X), (1, Letter::X)]);
        let z1z2 = PauliString::from_letters(2, &[(0, Letter::Z), (1, Letter::Z)]);
        assert!(x1x2.commutes(&z1z2).unwrap());

        // same-letter neighbors commute, different-letter anticommute
        let xx_12 = PauliString::from_letters(3, &[(0, Letter::X), (1, Letter::X)]);
        let yy_23 = PauliString::from_letters(3, &[(1, Letter::Y), (2, Letter::Y)]);
        assert!(!xx_12.commutes(&yy_23).unwrap());
        let xx_23 = PauliString::from_letters(3, &[(1, Letter::X), (2, Letter::X)]);
        assert!(xx_12.commutes(&xx_23).unwrap());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let a = PauliString::identity(2);
        let b = PauliString::identity(3);
        assert!(a.multiply(&b).is_err());
        assert!(a.commutes(&b).is_err());
    }

    #[test]
    fn basis_action_examples() {
        let n1 = |l| PauliTerm::new(rat(1), single(l));
        let zero = Mask::zeros(1);
        let one = Mask::unit(1, 0);

        let (y, v) = n1(Letter::X).apply_to_basis(&zero);
        assert_eq!(y, one);
        assert_eq!(v, RatComplex::real(rat(1)));

        let (y, v) = n1(Letter::Y).apply_to_basis(&zero);
        assert_eq!(y, one);
        assert_eq!(v.re, rat(0));
        assert_eq!(v.im, rat(1)); // Y|0> = i|1>

        let (y, v) = n1(Letter::Z).apply_to_basis(&one);
        assert_eq!(y, one);
        assert_eq!(v, RatComplex::real(rat(-1)));
    }

    fn random_string(n: usize, rng: &mut StdRng) -> PauliString {
        let letters: Vec<(usize, Letter)> = (0..n)
            .map(|i| {
                let l = match rng.gen_range(0..4) {
                    0 => Letter::I,
                    1 => Letter::X,
                    2 => Letter::Y,
                    _ => Letter::Z,
                };
                (i, l)
            })
            .collect();
        PauliString::from_letters(n, &letters)
    }

    /// Evaluate `coeff · P` applied through a chain of strings to a basis
    /// state, gathering the exact phase.
    fn apply_chain(strings: &[&PauliString], b: &Mask) -> (Mask, Phase) {
        let mut state = b.clone();
        let mut phase = Phase::ONE;
        for s in strings.iter().rev() {
            let (next, p) = s.apply_to_basis(&state);
            state = next;
            phase = phase.mul(p);
        }
        (state, phase)
    }

    #[test]
    fn multiply_is_associative_and_phase_consistent() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..6);
            let p = random_string(n, &mut rng);
            let q = random_string(n, &mut rng);
            let r = random_string(n, &mut rng);

            let (pq, ph_pq) = p.multiply(&q).unwrap();
            let (pq_r, ph1) = pq.multiply(&r).unwrap();
            let ph_left = ph_pq.mul(ph1);

            let (qr, ph_qr) = q.multiply(&r).unwrap();
            let (p_qr, ph2) = p.multiply(&qr).unwrap();
            let ph_right = ph_qr.mul(ph2);

            assert_eq!(pq_r, p_qr);
            assert_eq!(ph_left, ph_right);

            // applying the product string to random basis states agrees
            // with applying the factors in sequence
            for _ in 0..4 {
                let b = Mask::from_lex_rank(n, rng.gen_range(0..(1u64 << n)));
                let (y1, phase1) = pq_r.apply_to_basis(&b);
                let (y2, phase2) = apply_chain(&[&p, &q, &r], &b);
                assert_eq!(y1, y2);
                assert_eq!(ph_left.mul(phase1), phase2);
            }
        }
    }

    #[test]
    fn commutation_matches_basis_evaluation() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..5);
            let p = random_string(n, &mut rng);
            let q = random_string(n, &mut rng);
            let commutes = p.commutes(&q).unwrap();
            // PQ and QP agree on every basis state iff the strings commute
            let mut all_equal = true;
            for b in Mask::lex_iter(n) {
                let (y1, ph1) = apply_chain(&[&p, &q], &b);
                let (y2, ph2) = apply_chain(&[&q, &p], &b);
                assert_eq!(y1, y2);
                if ph1 != ph2 {
                    all_equal = false;
                }
            }
            assert_eq!(commutes, all_equal);
        }
    }

    #[test]
    fn even_y_count_means_real_entries() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..100 {
            let n = rng.gen_range(1..5);
            let s = random_string(n, &mut rng);
            let term = PauliTerm::new(rat(3), s.clone());
            for b in Mask::lex_iter(n) {
                let (_, v) = term.apply_to_basis(&b);
                assert_eq!(v.is_real(), s.is_real());
            }
        }
    }
}
