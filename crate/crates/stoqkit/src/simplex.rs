//! Exact linear feasibility over the rationals.
//!
//! Decides whether `A p = b` has a solution with `p >= 0` via a dense
//! phase-one simplex with Bland's rule, so termination is guaranteed and
//! no verdict ever rests on floating-point tolerances. On infeasibility a
//! Farkas certificate `y` with `yᵀA <= 0`, `yᵀb > 0` is extracted from
//! the final tableau and re-verified against the original data before the
//! answer is trusted.

use crate::ratio::Rat;
use num::{Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    /// A solution `p >= 0` with `A p = b`, one entry per column of `A`.
    Feasible(Vec<Rat>),
    /// Farkas certificate: `y` with `yᵀA <= 0` and `yᵀb > 0`.
    Infeasible(Vec<Rat>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Solve the feasibility problem `A p = b, p >= 0` exactly.
///
/// `a` is row-major with `rows x cols` entries. Panics on ragged input.
pub fn solve_feasibility(a: &[Vec<Rat>], b: &[Rat]) -> Feasibility {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = a.first().map_or(0, |r| r.len());
    for r in a {
        assert_eq!(r.len(), cols);
    }

    // tableau: [A | I | b], artificial basis, minimize sum of artificials.
    // rows are pre-scaled so b >= 0.
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let flip = b[i].is_negative();
        let mut row: Vec<Rat> = Vec::with_capacity(cols + rows + 1);
        for j in 0..cols {
            row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..rows {
            row.push(if k == i { Rat::one_rat() } else { Rat::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let total_cols = cols + rows; // excluding rhs
    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    // objective row: reduced costs of minimizing the sum of artificials,
    // expressed via the current basis: z_j - c_j = sum of artificial rows.
    let mut obj: Vec<Rat> = vec![Rat::zero(); total_cols + 1];
    for row in &t {
        for (j, v) in row.iter().enumerate() {
            obj[j] += v;
        }
    }
    for j in cols..cols + rows {
        obj[j] = Rat::zero();
    }

    loop {
        // Bland: entering column = smallest index with positive reduced cost
        let mut enter = None;
        for (j, o) in obj.iter().enumerate().take(total_cols) {
            if o.is_positive() {
                enter = Some(j);
                break;
            }
        }
        let Some(enter) = enter else { break };

        // leaving row: min ratio, ties to the smallest basis variable
        let mut leave: Option<(usize, Rat)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = row[total_cols].clone() / row[enter].clone();
                match &leave {
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                    None => leave = Some((i, ratio)),
                }
            }
        }
        let Some((leave, _)) = leave else {
            // unbounded phase-one objective cannot happen (bounded below by 0)
            unreachable!("phase-one simplex objective is bounded");
        };

        // pivot
        let pivot = t[leave][enter].clone();
        for v in t[leave].iter_mut() {
            *v /= pivot.clone();
        }
        for i in 0..rows {
            if i != leave && !t[i][enter].is_zero() {
                let factor = t[i][enter].clone();
                for j in 0..=total_cols {
                    let delta = factor.clone() * t[leave][j].clone();
                    t[i][j] -= delta;
                }
            }
        }
        if !obj[enter].is_zero() {
            let factor = obj[enter].clone();
            for j in 0..=total_cols {
                let delta = factor.clone() * t[leave][j].clone();
                obj[j] -= delta;
            }
        }
        basis[leave] = enter;
    }

    let optimum = obj[total_cols].clone();
    if optimum.is_zero() {
        let mut p = vec![Rat::zero(); cols];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < cols {
                p[bv] = t[i][total_cols].clone();
            }
        }
        // exact re-verification of A p = b
        for i in 0..rows {
            let mut acc = Rat::zero();
            for j in 0..cols {
                acc += a[i][j].clone() * p[j].clone();
            }
            assert_eq!(acc, b[i], "simplex solution must satisfy the system exactly");
        }
        Feasibility::Feasible(p)
    } else {
        // Farkas vector from the reduced costs on the artificial columns:
        // the final `z_k - c_k` of artificial k is `y_k - 1`, and rows
        // scaled to make b nonnegative flip the corresponding entry back.
        let mut y: Vec<Rat> = Vec::with_capacity(rows);
        for i in 0..rows {
            let yi = Rat::one_rat() + obj[cols + i].clone();
            y.push(if b[i].is_negative() { -yi } else { yi });
        }
        // exact verification: yᵀ A <= 0 and yᵀ b > 0
        for j in 0..cols {
            let mut acc = Rat::zero();
            for i in 0..rows {
                acc += y[i].clone() * a[i][j].clone();
            }
            assert!(
                !acc.is_positive(),
                "Farkas certificate failed column verification"
            );
        }
        let mut rhs = Rat::zero();
        for i in 0..rows {
            rhs += y[i].clone() * b[i].clone();
        }
        assert!(rhs.is_positive(), "Farkas certificate failed rhs verification");
        Feasibility::Infeasible(y)
    }
}

trait RatOne {
    fn one_rat() -> Rat;
}

impl RatOne for Rat {
    fn one_rat() -> Rat {
        use num::One;
        Rat::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{rat, rat_frac};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    fn v(vals: &[i64]) -> Vec<Rat> {
        vals.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn feasible_system() {
        // p1 + p2 = 2, p1 - p2 = 0 -> p = (1, 1)
        let a = m(&[&[1, 1], &[1, -1]]);
        let b = v(&[2, 0]);
        match solve_feasibility(&a, &b) {
            Feasibility::Feasible(p) => {
                assert_eq!(p, vec![rat(1), rat(1)]);
            }
            _ => panic!("expected feasible"),
        }
    }

    #[test]
    fn infeasible_by_sign() {
        // p1 = -1 has no nonnegative solution
        let a = m(&[&[1]]);
        let b = v(&[-1]);
        assert!(!solve_feasibility(&a, &b).is_feasible());
    }

    #[test]
    fn infeasible_by_conflict() {
        // p1 + p2 = 1 and p1 + p2 = 2 conflict
        let a = m(&[&[1, 1], &[1, 1]]);
        let b = v(&[1, 2]);
        match solve_feasibility(&a, &b) {
            Feasibility::Infeasible(y) => assert_eq!(y.len(), 2),
            _ => panic!("expected infeasible"),
        }
    }

    #[test]
    fn rational_pivots_stay_exact() {
        let a = vec![
            vec![rat_frac(1, 3), rat_frac(1, 6), rat(0)],
            vec![rat(0), rat_frac(1, 2), rat_frac(-1, 4)],
        ];
        let b = vec![rat_frac(1, 2), rat_frac(1, 8)];
        match solve_feasibility(&a, &b) {
            Feasibility::Feasible(p) => {
                // verify exactly
                assert_eq!(
                    a[0][0].clone() * p[0].clone() + a[0][1].clone() * p[1].clone(),
                    rat_frac(1, 2)
                );
            }
            _ => panic!("expected feasible"),
        }
    }

    #[test]
    fn randomized_feasibility_cross_check() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..60 {
            let rows = rng.gen_range(1..4);
            let cols = rng.gen_range(1..5);
            let a: Vec<Vec<Rat>> = (0..rows)
                .map(|_| (0..cols).map(|_| rat(rng.gen_range(-3i64..=3))).collect())
                .collect();
            // build b from a known nonnegative solution half the time
            let feasible_by_construction = rng.gen_bool(0.5);
            let b: Vec<Rat> = if feasible_by_construction {
                let p: Vec<Rat> = (0..cols).map(|_| rat(rng.gen_range(0i64..=3))).collect();
                (0..rows)
                    .map(|i| {
                        (0..cols)
                            .map(|j| a[i][j].clone() * p[j].clone())
                            .fold(Rat::zero(), |acc, x| acc + x)
                    })
                    .collect()
            } else {
                (0..rows).map(|_| rat(rng.gen_range(-3i64..=3))).collect()
            };
            let result = solve_feasibility(&a, &b);
            if feasible_by_construction {
                assert!(result.is_feasible());
            }
            // both branches re-verify internally; reaching here is the test
        }
    }
}
