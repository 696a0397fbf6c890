//! The clause Hamiltonian `H_C` of a <=2-CNF with a forall/exists
//! variable split: each clause contributes a product of single-qubit
//! factors, `(X_i + I)` / `(Z_i + I)` for positive/negated forall
//! literals and `|0><0|` / `|1><1|` for positive/negated exists literals.
//!
//! Under any Hadamard mask `x` on the forall block, the conjugate
//! `H_C(x)` has nonnegative off-diagonal entries, its diagonal is
//! minimized on the all-ones forall sector, and the minimized diagonal
//! counts the clauses violated by `(x, y)`. All three properties are
//! checked exhaustively by [`verify_hc_properties`].

use crate::bits::Mask;
use crate::cnf::{CnfFormula, Lit};
use crate::hamiltonian::{Hamiltonian, HamiltonianError};
use crate::pauli::{Letter, PauliString, PauliTerm};
use crate::ratio::{rat, rat_frac, Rat};
use num::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HcError {
    #[error("clause {0} has {1} literals; the construction needs at most 2")]
    ClauseTooLong(usize, usize),
    #[error("clause {0} repeats variable {1}")]
    RepeatedVariable(usize, usize),
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
}

/// One clause factor as a sum of weighted single-qubit Paulis.
fn factor(lit: &Lit, n_forall: usize, n: usize) -> Vec<(Rat, PauliString)> {
    let q = lit.var;
    if q < n_forall {
        // forall literal: (X + I) or (Z + I)
        let letter = if lit.negated { Letter::Z } else { Letter::X };
        vec![
            (rat(1), PauliString::from_letters(n, &[(q, letter)])),
            (rat(1), PauliString::identity(n)),
        ]
    } else {
        // exists literal: |0><0| = (I + Z)/2 or |1><1| = (I - Z)/2
        let z_sign = if lit.negated { rat_frac(-1, 2) } else { rat_frac(1, 2) };
        vec![
            (rat_frac(1, 2), PauliString::identity(n)),
            (z_sign, PauliString::from_letters(n, &[(q, Letter::Z)])),
        ]
    }
}

/// Build `H_C` on `n_forall + n_exists` qubits (variable index = qubit
/// index).
pub fn build_hc(f: &CnfFormula) -> Result<Hamiltonian, HcError> {
    let n = f.num_vars();
    let mut terms: Vec<PauliTerm> = Vec::new();
    for (ci, clause) in f.clauses.iter().enumerate() {
        if clause.len() > 2 {
            return Err(HcError::ClauseTooLong(ci, clause.len()));
        }
        if clause.len() == 2 && clause[0].var == clause[1].var {
            return Err(HcError::RepeatedVariable(ci, clause[0].var));
        }
        let mut product: Vec<(Rat, PauliString)> =
            vec![(rat(1), PauliString::identity(n))];
        for lit in clause {
            let mut next = Vec::new();
            for (c1, s1) in &product {
                for (c2, s2) in factor(lit, f.n_forall, n) {
                    let (s, phase) = s1.multiply(&s2).unwrap();
                    debug_assert_eq!(phase.real_sign(), Some(1));
                    next.push((c1.clone() * c2, s));
                }
            }
            product = next;
        }
        terms.extend(product.into_iter().map(|(c, s)| PauliTerm::new(c, s)));
    }
    Ok(Hamiltonian::new(n, terms)?.with_meta("hc", "clause Hamiltonian"))
}

/// The Hadamard conjugate `H_C(x)` for a mask over the forall block.
pub fn hc_conjugate(h: &Hamiltonian, f: &CnfFormula, x: &Mask) -> Hamiltonian {
    debug_assert_eq!(x.len(), f.n_forall);
    let mut full = Mask::zeros(h.num_qubits());
    for i in 0..f.n_forall {
        if x.get(i) {
            full.set(i, true);
        }
    }
    h.conjugate_hadamard(&full)
}

/// Violated-clause count with the forall assignment read off the mask
/// and the exists assignment off the basis bits.
fn violated(f: &CnfFormula, x: &Mask, y_bits: &Mask) -> usize {
    let mut assignment = Mask::zeros(f.num_vars());
    for i in 0..f.n_forall {
        if x.get(i) {
            assignment.set(i, true);
        }
    }
    for j in 0..f.n_exists {
        if y_bits.get(f.n_forall + j) {
            assignment.set(f.n_forall + j, true);
        }
    }
    f.violated_count(&assignment)
}

/// Exhaustively check the three displayed properties of `H_C(x)` for
/// every mask `x`. Caps at 14 total variables.
pub fn verify_hc_properties(f: &CnfFormula) -> Result<(), String> {
    let n = f.num_vars();
    if n > 14 {
        return Err(format!("{n} variables exceed the verification cap"));
    }
    let h = build_hc(f).map_err(|e| e.to_string())?;
    for x in Mask::lex_iter(f.n_forall) {
        let hx = hc_conjugate(&h, f, &x);
        let groups = hx.flip_groups().map_err(|e| e.to_string())?;
        // property 1: off-diagonal entries are nonnegative
        for (s, group) in &groups {
            if s.is_zero() {
                continue;
            }
            for b in group.relevant().subsets() {
                if group.entry(&b) < Rat::zero() {
                    return Err(format!(
                        "negative off-diagonal entry at x={} b={}",
                        x.to_bitstring(),
                        b.to_bitstring()
                    ));
                }
            }
        }
        // properties 2 and 3 on the diagonal
        let diag = |b: &Mask| -> Rat {
            match groups.get(&Mask::zeros(n)) {
                Some(g) => g.entry(b) ,
                None => hx.offset().clone(),
            }
        };
        for b in Mask::lex_iter(n) {
            let mut ones = b.clone();
            for i in 0..f.n_forall {
                ones.set(i, true);
            }
            let v = diag(&b);
            let floor = diag(&ones);
            if v < floor {
                return Err(format!(
                    "diagonal at {} undercuts the all-ones sector for x={}",
                    b.to_bitstring(),
                    x.to_bitstring()
                ));
            }
            let count = violated(f, &x, &ones);
            if floor != rat(count as i64) {
                return Err(format!(
                    "all-ones diagonal {} != violated count {} at x={} y-bits={}",
                    floor,
                    count,
                    x.to_bitstring(),
                    ones.to_bitstring()
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn paper_example_formula() {
        // (a1 ∨ b2) ∧ (¬a2 ∨ b1) on 2 forall + 2 exists variables:
        // X_0 ⊗ |0><0|_3 + Z_1 ⊗ |0><0|_2
        let f = CnfFormula::new(
            2,
            2,
            vec![
                vec![Lit::pos(0), Lit::pos(3)],
                vec![Lit::neg(1), Lit::pos(2)],
            ],
        )
        .unwrap();
        let h = build_hc(&f).unwrap();
        // (X_0 + I)(I + Z_3)/2 + (Z_1 + I)(I + Z_2)/2 expanded
        let expect = Hamiltonian::new(
            4,
            vec![
                PauliTerm::new(rat_frac(1, 2), PauliString::from_letters(4, &[(0, Letter::X)])),
                PauliTerm::new(
                    rat_frac(1, 2),
                    PauliString::from_letters(4, &[(0, Letter::X), (3, Letter::Z)]),
                ),
                PauliTerm::new(rat_frac(1, 2), PauliString::from_letters(4, &[(3, Letter::Z)])),
                PauliTerm::new(rat_frac(1, 2), PauliString::from_letters(4, &[(1, Letter::Z)])),
                PauliTerm::new(
                    rat_frac(1, 2),
                    PauliString::from_letters(4, &[(1, Letter::Z), (2, Letter::Z)]),
                ),
                PauliTerm::new(rat_frac(1, 2), PauliString::from_letters(4, &[(2, Letter::Z)])),
                PauliTerm::new(rat(1), PauliString::identity(4)),
            ],
        )
        .unwrap();
        assert_eq!(h, expect);
        verify_hc_properties(&f).unwrap();
    }

    #[test]
    fn mask_on_first_forall_qubit_swaps_x_to_z() {
        // the clause factor (X_0 + I) ⊗ |0><0|_3 conjugates to
        // (Z_0 + I) ⊗ |0><0|_3 under a Hadamard on qubit 0
        let f = CnfFormula::new(
            2,
            2,
            vec![vec![Lit::pos(0), Lit::pos(3)]],
        )
        .unwrap();
        let h = build_hc(&f).unwrap();
        let mut x = Mask::zeros(2);
        x.set(0, true);
        let hx = hc_conjugate(&h, &f, &x);
        let g = CnfFormula::new(2, 2, vec![vec![Lit::neg(0), Lit::pos(3)]]).unwrap();
        let expect = build_hc(&g).unwrap();
        assert_eq!(hx.terms(), expect.terms());
        assert_eq!(hx.offset(), expect.offset());
    }

    #[test]
    fn empty_formula_is_zero() {
        let f = CnfFormula::new(1, 1, vec![]).unwrap();
        let h = build_hc(&f).unwrap();
        assert_eq!(h.num_terms(), 0);
        assert!(h.offset().is_zero());
    }

    #[test]
    fn rejects_three_literal_clauses() {
        let f = CnfFormula::new(3, 0, vec![vec![Lit::pos(0), Lit::pos(1), Lit::pos(2)]]).unwrap();
        assert!(matches!(build_hc(&f), Err(HcError::ClauseTooLong(0, 3))));
    }

    #[test]
    fn random_formulas_satisfy_all_properties() {
        let mut rng = StdRng::seed_from_u64(89);
        for _ in 0..25 {
            let n_forall = rng.gen_range(1..4);
            let n_exists = rng.gen_range(1..4);
            let total = n_forall + n_exists;
            let m = rng.gen_range(1..6);
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
            verify_hc_properties(&f).unwrap();
        }
    }
}
