//! Decomposition of a globally stoquastic Hamiltonian into classically
//! conjugated flip terms:
//!
//! `H + beta·I = -H_0 + sum_j U_j (-X ⊗ H_j) U_j†`
//!
//! with `beta <= 0`, every `H_j` a nonnegative diagonal classical
//! Hamiltonian, and each `U_j` a circuit of X and CNOT gates. The
//! invariants (`H_j >= 0`, `||H_j|| <= M`, exact reconstruction,
//! `m' <= m·2^{2k}`) are verified before the value is returned.

use crate::bits::Mask;
use crate::flip::ParityPoly;
use crate::hamiltonian::{Hamiltonian, HamiltonianError};
use crate::ratio::{rat, rat_abs, to_f64, Rat};
use crate::stoq_check::{check_global, GlobalVerdict, StoqStatus};
use num::Zero;
use serde::Serialize;
use thiserror::Error;

/// Classical reversible gate, applied to basis strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitGate {
    X(usize),
    Cnot { control: usize, target: usize },
}

impl CircuitGate {
    pub fn apply(self, b: &mut Mask) {
        match self {
            CircuitGate::X(i) => b.flip(i),
            CircuitGate::Cnot { control, target } => {
                if b.get(control) {
                    b.flip(target);
                }
            }
        }
    }
}

impl Serialize for CircuitGate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CircuitGate::X(i) => s.serialize_str(&format!("X {i}")),
            CircuitGate::Cnot { control, target } => {
                s.serialize_str(&format!("CNOT {control} {target}"))
            }
        }
    }
}

fn serialize_mask_indices<S: serde::Serializer>(m: &Mask, s: S) -> Result<S::Ok, S::Error> {
    use serde::Serialize;
    m.iter_ones().collect::<Vec<usize>>().serialize(s)
}

/// Apply a gate list in order to a basis string.
pub fn apply_circuit(gates: &[CircuitGate], b: &Mask) -> Mask {
    let mut out = b.clone();
    for g in gates {
        g.apply(&mut out);
    }
    out
}

/// One conjugated flip term `U (-X_{flip} ⊗ H_j) U†`.
///
/// `H_j` is the product of a zero-projector on `proj` (the non-flip
/// qubits of the flip set) and the classical function `values` over the
/// group's outer support.
#[derive(Clone, Debug, Serialize)]
pub struct StoqTerm {
    /// Flip set `S` (bit string).
    pub s: String,
    /// Canonical pair representative over `S`.
    pub rep: String,
    /// Qubit carrying the X flip (first qubit of `S`).
    pub flip_qubit: usize,
    /// X gates then CNOTs, the circuit `U_j` of the construction.
    pub gates: Vec<CircuitGate>,
    /// Qubits that `H_j` projects onto `|0>`.
    #[serde(serialize_with = "serialize_mask_indices")]
    pub proj: Mask,
    /// Classical diagonal function over the outer support.
    pub values: ParityPoly,
    /// `||H_j||`, the maximum of the classical function.
    #[serde(with = "crate::ratio::serde_rat")]
    pub norm: Rat,
}

impl StoqTerm {
    /// Entry `<b'|term|b>`; non-zero only when `b' = b XOR e_{flip}` after
    /// undoing the circuit.
    pub fn entry(&self, b_out: &Mask, b_in: &Mask) -> Rat {
        let gates_inv: Mask = {
            // U|c> = |apply(gates, c)>, so preimages undo the gates in
            // reverse order; X and CNOT are self-inverse
            let mut c = b_in.clone();
            for g in self.gates.iter().rev() {
                g.apply(&mut c);
            }
            c
        };
        let mut c_out = b_out.clone();
        for g in self.gates.iter().rev() {
            g.apply(&mut c_out);
        }
        let c_in = gates_inv;
        if c_out != c_in.xor(&Mask::unit(c_in.len(), self.flip_qubit)) {
            return Rat::zero();
        }
        if !c_in.and(&self.proj).is_zero() {
            return Rat::zero();
        }
        -self.values.eval(&c_in)
    }
}

/// The full decomposition record.
#[derive(Clone, Debug, Serialize)]
pub struct StoqDecomposition {
    #[serde(with = "crate::ratio::serde_rat")]
    pub beta: Rat,
    /// `H_0(y) = -diag(H)(y) - beta`, a nonnegative classical function.
    pub h0: ParityPoly,
    pub terms: Vec<StoqTerm>,
    /// Term count `m'`.
    pub m_prime: usize,
    /// Norm bound `M = 2 sum_i ||h_i||`.
    #[serde(with = "crate::ratio::serde_rat")]
    pub norm_bound: Rat,
}

#[derive(Debug, Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
    #[error("input is not globally stoquastic (status {0:?})")]
    NotStoquastic(StoqStatus),
    #[error("internal invariant failed: {0}")]
    InvariantFailed(String),
}

/// Decompose a globally stoquastic Hamiltonian per the construction:
/// `beta = -sum_i ||diag(h_i)||`, `H_0 = -diag(H) - beta`, and one term
/// per flip group and canonical pair representative with
/// `H_{S,x}(y) = -<x'y|H|xy> >= 0`.
pub fn decompose_global(h: &Hamiltonian) -> Result<StoqDecomposition, DecomposeError> {
    let verdict: GlobalVerdict = check_global(h, crate::stoq_check::DEFAULT_GLOBAL_BUDGET)?;
    if !verdict.is_stoquastic() {
        return Err(DecomposeError::NotStoquastic(verdict.status));
    }
    let n = h.num_qubits();
    let groups = h.flip_groups()?;

    // beta = -(sum of |coeff| over diagonal terms + |offset|)
    let mut beta = -rat_abs(h.offset());
    for t in h.terms() {
        if t.string.is_diagonal() {
            beta -= rat_abs(&t.coeff);
        }
    }

    // H_0 = -diag(H) - beta over the diagonal group's support
    let diag_key = Mask::zeros(n);
    let mut h0 = match groups.get(&diag_key) {
        Some(g) => g.entry_poly(&Mask::zeros(n)).negate(),
        None => ParityPoly::zero(Mask::zeros(n)),
    };
    h0.add_constant(-beta.clone());

    let norm_bound = h.coeff_norm_sum() * rat(2);

    let mut terms = Vec::new();
    for (s, group) in &groups {
        if s.is_zero() {
            continue;
        }
        let flip_qubit = s.first_set_bit().expect("non-empty flip set");
        let proj = s.minus(&Mask::unit(n, flip_qubit));
        for rep in group.pair_representatives() {
            let values = group.entry_poly(&rep).negate();
            if values.is_zero() {
                continue;
            }
            let (norm, _) = values.max_over_support();
            let (min, _) = values.min_over_support();
            if min < Rat::zero() {
                return Err(DecomposeError::InvariantFailed(format!(
                    "H_j must be nonnegative for S={}, rep={}",
                    s.to_bitstring(),
                    rep.to_bitstring()
                )));
            }
            if norm > norm_bound {
                return Err(DecomposeError::InvariantFailed(
                    "||H_j|| exceeded the norm bound".into(),
                ));
            }
            let mut gates: Vec<CircuitGate> = rep.iter_ones().map(CircuitGate::X).collect();
            for q in s.iter_ones().filter(|&q| q != flip_qubit) {
                gates.push(CircuitGate::Cnot {
                    control: flip_qubit,
                    target: q,
                });
            }
            terms.push(StoqTerm {
                s: s.to_bitstring(),
                rep: rep.to_bitstring(),
                flip_qubit,
                gates,
                proj: proj.clone(),
                values,
                norm,
            });
        }
    }

    let m_prime = terms.len();
    let decomposition = StoqDecomposition {
        beta,
        h0,
        terms,
        m_prime,
        norm_bound,
    };

    // m' <= m 2^{2k}
    let bound = h.num_terms() << (2 * h.locality()).min(40);
    if m_prime > bound {
        return Err(DecomposeError::InvariantFailed(format!(
            "m' = {m_prime} exceeds m·2^(2k) = {bound}"
        )));
    }
    verify_reconstruction(h, &decomposition)
        .map_err(DecomposeError::InvariantFailed)?;
    Ok(decomposition)
}

/// Exact groupwise reconstruction check: for every flip group the terms
/// reproduce every off-diagonal entry, and the diagonal satisfies
/// `-H_0 = diag(H) + beta` pointwise. Entries are functions of the
/// relevant coordinates only, so enumerating those is exhaustive.
pub fn verify_reconstruction(h: &Hamiltonian, d: &StoqDecomposition) -> Result<(), String> {
    let n = h.num_qubits();
    let groups = h.flip_groups().map_err(|e| e.to_string())?;
    for (s, group) in &groups {
        if s.is_zero() {
            // -H_0(y) = diag(H)(y) + beta
            for y in group.relevant().subsets() {
                let want = group.entry(&y) + &d.beta;
                let got = -d.h0.eval(&y);
                if want != got {
                    return Err(format!(
                        "diagonal mismatch at y={}: {want} vs {got}",
                        y.to_bitstring()
                    ));
                }
            }
            continue;
        }
        let members: Vec<&StoqTerm> = d
            .terms
            .iter()
            .filter(|t| t.s == s.to_bitstring())
            .collect();
        for b in group.relevant().subsets() {
            let b_out = b.xor(s);
            let want = group.entry(&b);
            let mut got = Rat::zero();
            for t in &members {
                got += t.entry(&b_out, &b);
            }
            if want != got {
                return Err(format!(
                    "off-diagonal mismatch at b={} S={}: {want} vs {got}",
                    b.to_bitstring(),
                    s.to_bitstring()
                ));
            }
        }
    }
    // H_0 nonnegative
    let (min_h0, _) = d.h0.min_over_support();
    if min_h0 < Rat::zero() {
        return Err("H_0 has a negative value".into());
    }
    // every term norm within the bound
    for t in &d.terms {
        if t.norm > d.norm_bound {
            return Err("term norm exceeds M".into());
        }
    }
    let _ = n;
    Ok(())
}

/// Spot-check the reconstruction on explicit full-length entries
/// (`x`, `x XOR S`) including coordinates outside the relevant set.
pub fn spot_check_entries(
    h: &Hamiltonian,
    d: &StoqDecomposition,
    samples: usize,
    seed: u64,
) -> Result<(), String> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let n = h.num_qubits();
    if n > 30 {
        return Err("spot check capped at 30 qubits".into());
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let groups = h.flip_groups().map_err(|e| e.to_string())?;
    let masks: Vec<Mask> = groups.keys().cloned().collect();
    if masks.is_empty() {
        // the zero Hamiltonian: nothing to reconstruct
        return Ok(());
    }
    for _ in 0..samples {
        let x = Mask::from_lex_rank(n, rng.gen_range(0..(1u64 << n)));
        let s = &masks[rng.gen_range(0..masks.len())];
        let y = x.xor(s);
        let want = h.matrix_entry(&x, &y).map_err(|e| e.to_string())?;
        let got = if s.is_zero() {
            -d.h0.eval(&x) - &d.beta
        } else {
            d.terms.iter().map(|t| t.entry(&y, &x)).fold(Rat::zero(), |a, v| a + v)
        };
        if want != got {
            return Err(format!(
                "spot check failed at x={} y={}: {} vs {}",
                x.to_bitstring(),
                y.to_bitstring(),
                to_f64(&want),
                to_f64(&got)
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{Letter, PauliString, PauliTerm};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

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
    fn minus_x_single_flip_term() {
        let h = ham(1, &[(-1, &[(0, Letter::X)])]);
        let d = decompose_global(&h).unwrap();
        assert_eq!(d.beta, rat(0));
        assert_eq!(d.m_prime, 1);
        assert!(d.h0.is_zero());
        // H_j is the scalar 1
        assert_eq!(d.terms[0].norm, rat(1));
        assert!(d.terms[0].gates.is_empty());
    }

    #[test]
    fn x_times_projector() {
        // H = -X0 (I + Z1): one term with identity circuit, H_j = I + Z1
        let h = ham(2, &[(-1, &[(0, Letter::X)]), (-1, &[(0, Letter::X), (1, Letter::Z)])]);
        let d = decompose_global(&h).unwrap();
        assert_eq!(d.beta, rat(0));
        assert_eq!(d.m_prime, 1);
        let t = &d.terms[0];
        assert!(t.gates.is_empty());
        assert_eq!(t.values.eval(&Mask::zeros(2)), rat(2));
        assert_eq!(t.values.eval(&Mask::unit(2, 1)), rat(0));
    }

    #[test]
    fn diagonal_case() {
        let h = ham(1, &[(1, &[(0, Letter::Z)])]);
        let d = decompose_global(&h).unwrap();
        assert_eq!(d.beta, rat(-1));
        assert!(d.terms.is_empty());
        // H_0 = I - Z0: values 0 at |0>, 2 at |1>
        assert_eq!(d.h0.eval(&Mask::zeros(1)), rat(0));
        assert_eq!(d.h0.eval(&Mask::unit(1, 0)), rat(2));
    }

    #[test]
    fn rejects_non_stoquastic_input() {
        let h = ham(1, &[(1, &[(0, Letter::X)])]);
        assert!(matches!(
            decompose_global(&h),
            Err(DecomposeError::NotStoquastic(_))
        ));
    }

    #[test]
    fn random_stoquastic_reconstruction() {
        let mut rng = StdRng::seed_from_u64(47);
        for _ in 0..25 {
            let h = crate::corpus::random_stoquastic(6, 3, 3, &mut rng);
            let d = decompose_global(&h).unwrap();
            verify_reconstruction(&h, &d).unwrap();
            spot_check_entries(&h, &d, 40, 99).unwrap();
            assert!(d.beta <= rat(0));
            assert!(d.m_prime <= h.num_terms() << (2 * h.locality()));
        }
    }
}
