//! Deciders for global and m-termwise stoquasticity.
//!
//! Global stoquasticity is settled flip group by flip group: every entry
//! of group `S` is an evaluation of the entry function `f_S(a, y)`, so the
//! Hamiltonian is globally stoquastic iff every such maximum is at most
//! zero. A group whose relevant support exceeds the budget yields an
//! `Undecided` verdict — never a guess.
//!
//! Termwise stoquasticity reduces to one exact linear feasibility problem
//! per flip pair, over the cone of subcube-indicator generators; see
//! [`crate::termwise`].

use crate::bits::Mask;
use crate::hamiltonian::{Hamiltonian, HamiltonianError};
use crate::ratio::{to_f64, Rat};
use num::Zero;
use rayon::prelude::*;
use serde::Serialize;

/// Outcome of the global stoquasticity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum StoqStatus {
    Stoquastic,
    NotStoquastic,
    /// A flip group's relevant support exceeded the budget; the offending
    /// flip mask is reported as a bit string.
    Undecided { group: String },
}

/// Verdict with an optional violating entry.
#[derive(Clone, Debug, Serialize)]
pub struct GlobalVerdict {
    pub status: StoqStatus,
    /// Pair `(x, y)` with `<x|H|y> > 0`, free coordinates set to zero;
    /// present iff the status is `NotStoquastic`.
    pub witness: Option<(String, String)>,
    /// Value of the witness entry.
    pub witness_value: Option<f64>,
    /// Largest relevant support encountered.
    pub budget_used: usize,
}

impl GlobalVerdict {
    pub fn is_stoquastic(&self) -> bool {
        self.status == StoqStatus::Stoquastic
    }

    pub fn witness_masks(&self) -> Option<(Mask, Mask)> {
        self.witness.as_ref().map(|(x, y)| {
            (
                Mask::from_bitstring(x).expect("stored witness is a bit string"),
                Mask::from_bitstring(y).expect("stored witness is a bit string"),
            )
        })
    }
}

pub const DEFAULT_GLOBAL_BUDGET: usize = 24;

enum GroupOutcome {
    AllNonPositive,
    Positive { witness: Mask, value: Rat },
    OverBudget,
}

/// Decide global stoquasticity by exhaustive per-group maximization.
///
/// `budget` caps the relevant-support size of any single flip group; a
/// group above the cap produces `Undecided`. A positive entry found in an
/// in-budget group is definitive regardless of other groups.
pub fn check_global(h: &Hamiltonian, budget: usize) -> Result<GlobalVerdict, HamiltonianError> {
    let groups = h.flip_groups()?;
    let mut budget_used = 0usize;

    let outcomes: Vec<(Mask, GroupOutcome)> = groups
        .iter()
        .filter(|(s, _)| !s.is_zero())
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(s, group)| {
            let r = group.relevant().popcount();
            if r > budget {
                return (s.clone(), GroupOutcome::OverBudget);
            }
            // enumerate embedded strings b over R in lexicographic order;
            // keep canonical pair representatives only (first S-bit zero)
            let first_s = s.first_set_bit().expect("non-empty flip mask");
            let mut best: Option<(Rat, Mask)> = None;
            for b in group.relevant().subsets() {
                if b.get(first_s) {
                    continue;
                }
                let v = group.entry(&b);
                match &best {
                    Some((bv, _)) if *bv >= v => {}
                    _ => best = Some((v, b)),
                }
            }
            let (max, arg) = best.expect("at least one assignment");
            if max > Rat::zero() {
                (s.clone(), GroupOutcome::Positive { witness: arg, value: max })
            } else {
                (s.clone(), GroupOutcome::AllNonPositive)
            }
        })
        .collect();

    for (s, _) in &outcomes {
        budget_used = budget_used.max(groups[s].relevant().popcount());
    }
    let mut over_budget: Option<Mask> = None;
    for (s, outcome) in &outcomes {
        match outcome {
            GroupOutcome::Positive { witness, value } => {
                let x = witness.clone();
                let y = x.xor(s);
                return Ok(GlobalVerdict {
                    status: StoqStatus::NotStoquastic,
                    witness: Some((x.to_bitstring(), y.to_bitstring())),
                    witness_value: Some(to_f64(value)),
                    budget_used,
                });
            }
            GroupOutcome::OverBudget => {
                if over_budget.is_none() {
                    over_budget = Some(s.clone());
                }
            }
            GroupOutcome::AllNonPositive => {}
        }
    }
    if let Some(s) = over_budget {
        return Ok(GlobalVerdict {
            status: StoqStatus::Undecided {
                group: s.to_bitstring(),
            },
            witness: None,
            witness_value: None,
            budget_used,
        });
    }
    Ok(GlobalVerdict {
        status: StoqStatus::Stoquastic,
        witness: None,
        witness_value: None,
        budget_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::dense_matrix;
    use crate::pauli::{Letter, PauliString, PauliTerm};
    use crate::ratio::rat;
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
    fn minus_x_is_stoquastic() {
        let h = ham(1, &[(-1, &[(0, Letter::X)])]);
        assert!(check_global(&h, 24).unwrap().is_stoquastic());
    }

    #[test]
    fn plus_xx_witness() {
        let h = ham(2, &[(1, &[(0, Letter::X), (1, Letter::X)])]);
        let v = check_global(&h, 24).unwrap();
        assert_eq!(v.status, StoqStatus::NotStoquastic);
        let (x, y) = v.witness_masks().unwrap();
        assert_eq!(x.to_bitstring(), "00");
        assert_eq!(y.to_bitstring(), "11");
        assert_eq!(v.witness_value, Some(1.0));
    }

    #[test]
    fn prop1_triangle_instance_is_stoquastic() {
        // X0 (-I - Z1Z2 - Z2Z3 - Z1Z3): the triangle instance with E0 = -1
        let h = ham(
            4,
            &[
                (-1, &[(0, Letter::X)]),
                (-1, &[(0, Letter::X), (1, Letter::Z), (2, Letter::Z)]),
                (-1, &[(0, Letter::X), (2, Letter::Z), (3, Letter::Z)]),
                (-1, &[(0, Letter::X), (1, Letter::Z), (3, Letter::Z)]),
            ],
        );
        assert!(check_global(&h, 24).unwrap().is_stoquastic());
    }

    #[test]
    fn undecided_when_over_budget() {
        // flip group {0} with relevant support of 5 exceeds a budget of 4
        let h = ham(
            5,
            &[(
                1,
                &[
                    (0, Letter::X),
                    (1, Letter::Z),
                    (2, Letter::Z),
                    (3, Letter::Z),
                    (4, Letter::Z),
                ],
            )],
        );
        let v = check_global(&h, 4).unwrap();
        assert_eq!(
            v.status,
            StoqStatus::Undecided {
                group: "10000".into()
            }
        );
        assert!(check_global(&h, 5).unwrap().status == StoqStatus::NotStoquastic);
    }

    #[test]
    fn soundness_against_dense_offdiagonal() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..40 {
            let h = crate::corpus::random_real_hamiltonian(5, 7, 3, &mut rng);
            let verdict = check_global(&h, 24).unwrap();
            let m = dense_matrix(&h).unwrap();
            let mut any_positive = false;
            for r in 0..m.nrows() {
                for c in 0..m.ncols() {
                    if r != c && m[(r, c)] > 1e-12 {
                        any_positive = true;
                    }
                }
            }
            assert_eq!(verdict.is_stoquastic(), !any_positive);
            if let Some((x, y)) = verdict.witness_masks() {
                let entry = h.matrix_entry(&x, &y).unwrap();
                assert!(entry > Rat::zero());
            }
        }
    }
}
