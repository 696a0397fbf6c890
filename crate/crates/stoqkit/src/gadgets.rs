//! Gadget Hamiltonians restricting which product-basis changes can
//! sign-cure a total Hamiltonian, and the full assembly reducing
//! exists-forall clause violation to mask-curability.
//!
//! `G_2` pins designated qubits to the identity: any Hadamard on a pinned
//! qubit or its partner ancilla leaves a positive off-diagonal entry no
//! other term can cancel. `G_1` restricts every protected qubit to
//! Hadamard-or-identity. The assembly places a control-X qubit over
//! `k·I - H_C`, wires the exists block through `G_2`, and protects
//! everything with `G_1`; masks over the forall block (extended to the
//! matching ancilla triples) then cure it exactly when the formula has a
//! forall assignment violating `k` clauses for every exists assignment.

use crate::bits::Mask;
use crate::cnf::{eval_neg_minmax, CnfFormula};
use crate::hamiltonian::Hamiltonian;
use crate::hc::{build_hc, HcError};
use crate::pauli::{Letter, PauliString, PauliTerm};
use crate::ratio::rat;
use crate::stoq_check::{check_global, GlobalVerdict, DEFAULT_GLOBAL_BUDGET};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error(transparent)]
    Hc(#[from] HcError),
    #[error(transparent)]
    Hamiltonian(#[from] crate::hamiltonian::HamiltonianError),
    #[error(transparent)]
    Cnf(#[from] crate::cnf::CnfError),
}

/// `G_2 = sum_j (-X_{u_j} X_{d_j} + Z_{u_j} Z_{d_j})` over qubit pairs.
pub fn build_g2(n_total: usize, pairs: &[(usize, usize)]) -> Hamiltonian {
    let mut terms = Vec::with_capacity(2 * pairs.len());
    for &(u, d) in pairs {
        terms.push(PauliTerm::new(
            rat(-1),
            PauliString::from_letters(n_total, &[(u, Letter::X), (d, Letter::X)]),
        ));
        terms.push(PauliTerm::new(
            rat(1),
            PauliString::from_letters(n_total, &[(u, Letter::Z), (d, Letter::Z)]),
        ));
    }
    Hamiltonian::new(n_total, terms).expect("gadget terms are in range")
}

/// Per-qubit block of `G_1` for a protected qubit `u` with ancillas
/// `(a, b, c)`:
/// `-(X_c + Z_c) - (XX + YY + ZZ)_{u,a} - (3XX + YY + 2ZZ)_{a,b}
///  - (XX + YY + ZZ)_{b,c}`.
pub fn build_g1(n_total: usize, blocks: &[(usize, [usize; 3])]) -> Hamiltonian {
    let mut terms = Vec::new();
    let heis = |i: usize, j: usize, w: [i64; 3], terms: &mut Vec<PauliTerm>| {
        for (axis, c) in [Letter::X, Letter::Y, Letter::Z].iter().zip(w) {
            terms.push(PauliTerm::new(
                rat(-c),
                PauliString::from_letters(n_total, &[(i, *axis), (j, *axis)]),
            ));
        }
    };
    for &(u, [a, b, c]) in blocks {
        terms.push(PauliTerm::new(
            rat(-1),
            PauliString::from_letters(n_total, &[(c, Letter::X)]),
        ));
        terms.push(PauliTerm::new(
            rat(-1),
            PauliString::from_letters(n_total, &[(c, Letter::Z)]),
        ));
        heis(u, a, [1, 1, 1], &mut terms);
        heis(a, b, [3, 1, 2], &mut terms);
        heis(b, c, [1, 1, 1], &mut terms);
    }
    Hamiltonian::new(n_total, terms).expect("gadget terms are in range")
}

/// The standard layout for a base Hamiltonian on `n + l` qubits whose
/// last `l` qubits are pinned: core `0..n+l`, partner ancillas
/// `d_j = n + l + j`, then one `(a, b, c)` triple per core-or-partner
/// qubit. Total `4n + 8l` qubits.
pub fn build_gadgets(n: usize, l: usize) -> (Hamiltonian, Hamiltonian) {
    let core = n + 2 * l;
    let total = 4 * n + 8 * l;
    let pairs: Vec<(usize, usize)> = (0..l).map(|j| (n + j, n + l + j)).collect();
    let g2 = build_g2(total, &pairs);
    let blocks: Vec<(usize, [usize; 3])> = (0..core)
        .map(|u| {
            let base = core + 3 * u;
            (u, [base, base + 1, base + 2])
        })
        .collect();
    let g1 = build_g1(total, &blocks);
    (g1, g2)
}

/// Qubit layout of the assembled instance.
#[derive(Clone, Debug, Serialize)]
pub struct Sigma2Layout {
    pub n_forall: usize,
    pub n_exists: usize,
    /// Control qubit carrying the X over `k·I - H_C`.
    pub control: usize,
    /// Partner ancillas of the exists block.
    pub d_block: Vec<usize>,
    /// `(protected qubit, [a, b, c])` triples.
    pub triples: Vec<(usize, [usize; 3])>,
    pub total_qubits: usize,
}

impl Sigma2Layout {
    pub fn new(n: usize, l: usize) -> Self {
        let control = n + l;
        let d_block: Vec<usize> = (0..l).map(|j| n + l + 1 + j).collect();
        let protected = n + 2 * l + 1;
        let triples: Vec<(usize, [usize; 3])> = (0..protected)
            .map(|u| {
                let base = protected + 3 * u;
                (u, [base, base + 1, base + 2])
            })
            .collect();
        Sigma2Layout {
            n_forall: n,
            n_exists: l,
            control,
            d_block,
            triples,
            total_qubits: 4 * protected,
        }
    }

    /// Expand a forall-block mask to include the ancilla triples of the
    /// masked qubits (the mask family under which the gadgets provably
    /// stay stoquastic).
    pub fn expand_mask(&self, x: &Mask) -> Mask {
        debug_assert_eq!(x.len(), self.n_forall);
        let mut full = Mask::zeros(self.total_qubits);
        for i in 0..self.n_forall {
            if x.get(i) {
                full.set(i, true);
                let (_, [a, b, c]) = self.triples[i];
                full.set(a, true);
                full.set(b, true);
                full.set(c, true);
            }
        }
        full
    }
}

/// Assemble `H = (X ⊗ (k·I - H_C) ⊗ I + G_2) ⊗ I + G_1` on the
/// documented layout; 3-local throughout.
pub fn assemble_sigma2(
    f: &CnfFormula,
    k: i64,
) -> Result<(Hamiltonian, Sigma2Layout), GadgetError> {
    let n = f.n_forall;
    let l = f.n_exists;
    let layout = Sigma2Layout::new(n, l);
    let total = layout.total_qubits;

    let hc = build_hc(f)?;
    let hc_embedded = hc.embed(total, &(0..n + l).collect::<Vec<_>>());
    let shifted = Hamiltonian::new(
        total,
        vec![PauliTerm::new(rat(k), PauliString::identity(total))],
    )?
    .add(&hc_embedded.scale(&rat(-1)))?;
    let core = shifted.premultiply_disjoint(&PauliString::x_on(total, layout.control));

    let pairs: Vec<(usize, usize)> = (0..l).map(|j| (n + j, layout.d_block[j])).collect();
    let g2 = build_g2(total, &pairs);
    let g1 = build_g1(total, &layout.triples);

    let h = core.add(&g2)?.add(&g1)?;
    Ok((
        h.with_meta("sigma2", "mask-curability assembly"),
        layout,
    ))
}

/// Outcome of the end-to-end check on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct Sigma2Equivalence {
    pub curable_mask: Option<String>,
    pub hamiltonian_side: bool,
    pub oracle_side: bool,
    pub agreement: bool,
}

/// Exhaustive mask search over the forall register (masks extended to
/// their ancilla triples) against the quantified-violation oracle.
pub fn sigma2_mask_equivalence(
    f: &CnfFormula,
    k: i64,
) -> Result<Sigma2Equivalence, GadgetError> {
    let (h, layout) = assemble_sigma2(f, k)?;
    let mut curable: Option<String> = None;
    for x in Mask::lex_iter(layout.n_forall) {
        let mask = layout.expand_mask(&x);
        let conj = h.conjugate_hadamard(&mask);
        let verdict = check_global(&conj, DEFAULT_GLOBAL_BUDGET)?;
        if verdict.is_stoquastic() {
            curable = Some(x.to_bitstring());
            break;
        }
    }
    let oracle = if k < 0 {
        true
    } else {
        eval_neg_minmax(f, k as usize)?
    };
    Ok(Sigma2Equivalence {
        hamiltonian_side: curable.is_some(),
        oracle_side: oracle,
        agreement: curable.is_some() == oracle,
        curable_mask: curable,
    })
}

/// Per-mask outcome of the gadget-restriction audit.
#[derive(Clone, Debug, Serialize)]
pub struct RestrictionOutcome {
    pub mask: String,
    /// A positive off-diagonal entry of the conjugated `G_2`, when the
    /// mask touches a pinned qubit or its partner.
    pub violation: Option<(String, String, f64)>,
    /// Qubits where the witness pair differs.
    pub differing: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    pub n: usize,
    pub l: usize,
    pub outcomes: Vec<RestrictionOutcome>,
    /// True when every mask touching a pinned or partner qubit produced a
    /// violation and every mask confined to the free block left `G_2`
    /// stoquastic.
    pub all_consistent: bool,
}

/// For each given mask over the `4n + 8l` layout: conjugate `G_2` and
/// exhibit a positive off-diagonal entry whenever the mask touches the
/// pinned block, confirming that masks confined to the first `n` qubits
/// leave `G_2` stoquastic.
pub fn verify_gadget_restriction(n: usize, l: usize, masks: &[Mask]) -> RestrictionReport {
    let (_, g2) = build_gadgets(n, l);
    let total = 4 * n + 8 * l;
    let mut outcomes = Vec::new();
    let mut all_consistent = true;
    for mask in masks {
        debug_assert_eq!(mask.len(), total);
        let touches_pinned = (n..n + 2 * l).any(|q| mask.get(q));
        let conj = g2.conjugate_hadamard(mask);
        let verdict: GlobalVerdict =
            check_global(&conj, DEFAULT_GLOBAL_BUDGET).expect("G_2 is a real Hamiltonian");
        let violation = verdict.witness_masks().map(|(x, y)| {
            (
                x.to_bitstring(),
                y.to_bitstring(),
                verdict.witness_value.unwrap_or_default(),
            )
        });
        let differing = verdict
            .witness_masks()
            .map(|(x, y)| x.xor(&y).iter_ones().collect())
            .unwrap_or_default();
        if touches_pinned != violation.is_some() {
            all_consistent = false;
        }
        outcomes.push(RestrictionOutcome {
            mask: mask.to_bitstring(),
            violation,
            differing,
        });
    }
    RestrictionReport {
        n,
        l,
        outcomes,
        all_consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Lit;
    use crate::ratio::{rat_abs, Rat};
    use num::Zero;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn g2_single_pair_coefficients() {
        let (_, g2) = build_gadgets(0, 1);
        assert_eq!(g2.num_terms(), 2);
        let coeffs: Vec<Rat> = g2.terms().iter().map(|t| t.coeff.clone()).collect();
        assert!(coeffs.contains(&rat(-1)) && coeffs.contains(&rat(1)));
    }

    #[test]
    fn g1_block_coefficients() {
        // one protected qubit, no pinned block: 11 terms, coefficient
        // multiset {-1 x9, -3, -2}
        let (g1, _) = build_gadgets(1, 0);
        assert_eq!(g1.num_terms(), 11);
        let mut ones = 0;
        let mut threes = 0;
        let mut twos = 0;
        for t in g1.terms() {
            match crate::ratio::to_f64(&t.coeff) {
                v if v == -1.0 => ones += 1,
                v if v == -3.0 => threes += 1,
                v if v == -2.0 => twos += 1,
                v => panic!("unexpected coefficient {v}"),
            }
        }
        assert_eq!((ones, threes, twos), (9, 1, 1));
    }

    #[test]
    fn empty_gadgets() {
        let (g1, g2) = build_gadgets(0, 0);
        assert_eq!(g1.num_terms(), 0);
        assert_eq!(g2.num_terms(), 0);
    }

    #[test]
    fn gadgets_are_stoquastic_unmasked() {
        let (g1, g2) = build_gadgets(2, 1);
        assert!(check_global(&g1, 24).unwrap().is_stoquastic());
        assert!(check_global(&g2, 24).unwrap().is_stoquastic());
    }

    #[test]
    fn restriction_examples() {
        // l = 1, n = 0: Hadamard on the partner ancilla d_1 produces a
        // +1 entry; the empty mask leaves G_2 stoquastic
        let total = 8;
        let d_mask = Mask::unit(total, 1);
        let none = Mask::zeros(total);
        let report = verify_gadget_restriction(0, 1, &[none, d_mask]);
        assert!(report.all_consistent);
        assert!(report.outcomes[0].violation.is_none());
        let v = report.outcomes[1].violation.as_ref().unwrap();
        assert_eq!(v.2, 1.0);
        assert_eq!(report.outcomes[1].differing, vec![1]);
    }

    #[test]
    fn restriction_localizes_to_touched_block() {
        // n = 0, l = 2: mask on the second pinned qubit only; the witness
        // differs inside the j = 2 pair
        let total = 16;
        let mask = Mask::unit(total, 1); // second pinned qubit (n + j, j = 1)
        let report = verify_gadget_restriction(0, 2, &[mask]);
        assert!(report.all_consistent);
        let differing = &report.outcomes[0].differing;
        assert!(differing.iter().all(|&q| q == 1 || q == 3));
    }

    #[test]
    fn assembly_is_three_local_with_gadget_terms() {
        let f = CnfFormula::new(1, 1, vec![vec![Lit::pos(0), Lit::pos(1)]]).unwrap();
        let (h, layout) = assemble_sigma2(&f, 1).unwrap();
        assert_eq!(layout.total_qubits, 4 * (1 + 1) + 8 * 1);
        assert_eq!(h.num_qubits(), layout.total_qubits);
        assert!(h.locality() <= 3);
        // gadget coefficients present with the exact values
        let mut minus_three = 0;
        let mut minus_two = 0;
        for t in h.terms() {
            if t.coeff == rat(-3) {
                minus_three += 1;
            }
            if t.coeff == rat(-2) {
                minus_two += 1;
            }
        }
        let protected = layout.triples.len();
        assert_eq!(minus_three, protected);
        assert_eq!(minus_two, protected);
    }

    #[test]
    fn assembly_empty_formula_reduces_to_gadgets() {
        let f = CnfFormula::new(0, 0, vec![]).unwrap();
        let (h, _) = assemble_sigma2(&f, 0).unwrap();
        // core is X ⊗ 0 = 0; G_2 empty; only the control's G_1 block
        let (g1_only, _) = build_gadgets(1, 0);
        assert_eq!(h.num_terms(), g1_only.num_terms());
    }

    #[test]
    fn end_to_end_equivalence_small() {
        let mut rng = StdRng::seed_from_u64(97);
        let mut yes = 0;
        let mut no = 0;
        for _ in 0..12 {
            let n_forall = rng.gen_range(1..3);
            let n_exists = rng.gen_range(1..(5 - n_forall).min(3));
            let total = n_forall + n_exists;
            let m = rng.gen_range(1..4);
            let clauses: Vec<Vec<Lit>> = (0..m)
                .map(|_| {
                    let len = rng.gen_range(1..=2usize);
                    let mut vars: Vec<usize> = (0..total).collect();
                    (0..len)
                        .map(|_| {
                            let i = rng.gen_range(0..vars.len());
                            Lit {
                                var: vars.remove(i),
                                negated: rng.gen(),
                            }
                        })
                        .collect()
                })
                .collect();
            let f = CnfFormula::new(n_forall, n_exists, clauses).unwrap();
            let k = rng.gen_range(0..=(m as i64));
            let eq = sigma2_mask_equivalence(&f, k).unwrap();
            assert!(eq.agreement, "mask search must agree with the oracle");
            if eq.oracle_side {
                yes += 1;
            } else {
                no += 1;
            }
        }
        assert!(yes > 0 && no > 0, "sweep must exercise both outcomes");
    }

    #[test]
    fn coupling_sum_sanity() {
        let (g1, _) = build_gadgets(1, 0);
        assert!(!g1.coeff_norm_sum().is_zero());
        assert_eq!(rat_abs(&rat(-3)), rat(3));
    }
}
