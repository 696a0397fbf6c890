//! Seeded random instance generators backing the verification sweeps and
//! tests. Coefficients are small rationals so boundary cases (entries
//! exactly zero) actually occur.

use crate::bits::Mask;
use crate::hamiltonian::Hamiltonian;
use crate::pauli::{Letter, PauliString, PauliTerm};
use crate::ratio::{rat, rat_frac, Rat};
use rand::Rng;

fn random_coeff(rng: &mut impl Rng) -> Rat {
    let num = rng.gen_range(-4i64..=4);
    let den = *[1i64, 2, 4].get(rng.gen_range(0..3)).unwrap();
    if num == 0 {
        rat(1)
    } else {
        rat_frac(num, den)
    }
}

/// A random real string (even Y-count) supported on the given qubits.
fn random_real_string_on(n: usize, support: &[usize], rng: &mut impl Rng) -> PauliString {
    loop {
        let letters: Vec<(usize, Letter)> = support
            .iter()
            .map(|&q| {
                let l = match rng.gen_range(0..3) {
                    0 => Letter::X,
                    1 => Letter::Y,
                    _ => Letter::Z,
                };
                (q, l)
            })
            .collect();
        let s = PauliString::from_letters(n, &letters);
        if s.is_real() && !s.is_identity() {
            return s;
        }
    }
}

/// Random real k-local Hamiltonian with up to `max_terms` terms.
pub fn random_real_hamiltonian(
    n: usize,
    max_terms: usize,
    locality: usize,
    rng: &mut impl Rng,
) -> Hamiltonian {
    let terms: Vec<PauliTerm> = (0..max_terms)
        .map(|_| {
            let k = rng.gen_range(1..=locality.min(n));
            let mut support: Vec<usize> = Vec::new();
            while support.len() < k {
                let q = rng.gen_range(0..n);
                if !support.contains(&q) {
                    support.push(q);
                }
            }
            support.sort_unstable();
            PauliTerm::new(random_coeff(rng), random_real_string_on(n, &support, rng))
        })
        .collect();
    Hamiltonian::new(n, terms).expect("generated terms are length-consistent")
}

/// Random 2-local Hamiltonian (pairs plus single-site X/Z terms).
pub fn random_two_local(n: usize, max_terms: usize, rng: &mut impl Rng) -> Hamiltonian {
    random_real_hamiltonian(n, max_terms, 2, rng)
}

/// Random globally stoquastic Hamiltonian: per flip group, the entry
/// function is shifted by a constant so its maximum is at most zero (a
/// pure X-string on the group's flip set realizes the shift exactly).
pub fn random_stoquastic(
    n: usize,
    groups: usize,
    locality: usize,
    rng: &mut impl Rng,
) -> Hamiltonian {
    let mut terms: Vec<PauliTerm> = Vec::new();
    // random diagonal part
    for _ in 0..rng.gen_range(0..=n) {
        let k = rng.gen_range(1..=locality.min(n));
        let mut support: Vec<usize> = Vec::new();
        while support.len() < k {
            let q = rng.gen_range(0..n);
            if !support.contains(&q) {
                support.push(q);
            }
        }
        let letters: Vec<(usize, Letter)> = support.iter().map(|&q| (q, Letter::Z)).collect();
        terms.push(PauliTerm::new(
            random_coeff(rng),
            PauliString::from_letters(n, &letters),
        ));
    }
    for _ in 0..groups {
        let flip_size = rng.gen_range(1..=locality.min(n).max(1));
        let mut flips: Vec<usize> = Vec::new();
        while flips.len() < flip_size {
            let q = rng.gen_range(0..n);
            if !flips.contains(&q) {
                flips.push(q);
            }
        }
        flips.sort_unstable();
        let s = Mask::from_indices(n, &flips);
        let mut group_terms: Vec<PauliTerm> = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            // letters: X or Y (in pairs) on the flip set, optional Z tail
            let mut letters: Vec<(usize, Letter)> = Vec::new();
            let mut y_positions: Vec<usize> = flips
                .iter()
                .copied()
                .filter(|_| rng.gen_bool(0.3))
                .collect();
            if y_positions.len() % 2 == 1 {
                y_positions.pop();
            }
            for &q in &flips {
                let l = if y_positions.contains(&q) { Letter::Y } else { Letter::X };
                letters.push((q, l));
            }
            let budget = locality.saturating_sub(flip_size);
            for _ in 0..rng.gen_range(0..=budget) {
                let q = rng.gen_range(0..n);
                if letters.iter().all(|(seen, _)| *seen != q) {
                    letters.push((q, Letter::Z));
                }
            }
            group_terms.push(PauliTerm::new(
                random_coeff(rng),
                PauliString::from_letters(n, &letters),
            ));
        }
        // shift the group's entry function down to its maximum
        let g = crate::flip::FlipGroup::new(s.clone(), group_terms.clone());
        let mut max: Option<Rat> = None;
        for a in g.pair_representatives() {
            let (m, _) = g.entry_poly(&a).max_over_support();
            if max.as_ref().map_or(true, |cur| m > *cur) {
                max = Some(m);
            }
        }
        let max = max.unwrap();
        let x_letters: Vec<(usize, Letter)> = flips.iter().map(|&q| (q, Letter::X)).collect();
        group_terms.push(PauliTerm::new(
            -max,
            PauliString::from_letters(n, &x_letters),
        ));
        terms.extend(group_terms);
    }
    Hamiltonian::new(n, terms).expect("generated terms are length-consistent")
}

/// Random k-local Hamiltonian whose interaction hypergraph has bounded
/// degree: hyperedges are drawn from a fixed set of cliques so each qubit
/// sees at most `degree_cap` others.
pub fn random_bounded_degree(
    n: usize,
    k: usize,
    degree_cap: usize,
    terms_count: usize,
    rng: &mut impl Rng,
) -> Hamiltonian {
    // partition qubits into blocks of size degree_cap + 1; terms live
    // inside a block, so interaction degree stays at most degree_cap
    let block = degree_cap + 1;
    let blocks: Vec<Vec<usize>> = (0..n)
        .step_by(block)
        .map(|start| (start..(start + block).min(n)).collect())
        .collect();
    let terms: Vec<PauliTerm> = (0..terms_count)
        .map(|_| {
            let b = &blocks[rng.gen_range(0..blocks.len())];
            let size = rng.gen_range(1..=k.min(b.len()));
            let mut support = b.clone();
            while support.len() > size {
                let i = rng.gen_range(0..support.len());
                support.remove(i);
            }
            PauliTerm::new(random_coeff(rng), random_real_string_on(n, &support, rng))
        })
        .collect();
    Hamiltonian::new(n, terms).expect("generated terms are length-consistent")
}


/// A random elementary-gate circuit, for tableau stress tests.
pub fn random_clifford_circuit(
    n: usize,
    len: usize,
    rng: &mut impl Rng,
) -> Vec<crate::clifford::CliffordGate> {
    use crate::clifford::CliffordGate;
    (0..len)
        .map(|_| {
            let i = rng.gen_range(0..n);
            match rng.gen_range(0..7) {
                0 => CliffordGate::H(i),
                1 => CliffordGate::S(i),
                2 => CliffordGate::SqrtX(i),
                3 => CliffordGate::X(i),
                4 => CliffordGate::Z(i),
                5 if n > 1 => {
                    let mut j = rng.gen_range(0..n);
                    if j == i {
                        j = (j + 1) % n;
                    }
                    CliffordGate::Cnot(i, j)
                }
                _ => CliffordGate::Sdg(i),
            }
        })
        .collect()
}


/// Random open XYZ chain eligible for the Clifford cure: one edge-parity
/// class gets all coupling products forced nonnegative.
pub fn random_eligible_xyz(sites: usize, rng: &mut impl Rng) -> crate::xyz::XyzChain {
    let x_parity = rng.gen_range(0..2usize);
    let couplings: Vec<(Rat, Rat, Rat)> = (0..sites - 1)
        .map(|e| {
            let mut triple = (
                rat(rng.gen_range(-3i64..=3)),
                rat(rng.gen_range(-3i64..=3)),
                rat(rng.gen_range(-3i64..=3)),
            );
            if e % 2 == x_parity {
                let product_negative = triple.0.clone() * &triple.1 * &triple.2 < rat(0);
                if product_negative {
                    triple.2 = -triple.2;
                }
            }
            triple
        })
        .collect();
    crate::xyz::XyzChain::open(couplings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn stoquastic_generator_is_stoquastic() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..20 {
            let h = random_stoquastic(5, 3, 3, &mut rng);
            assert!(h.is_real());
            let verdict = crate::stoq_check::check_global(&h, 24).unwrap();
            assert!(verdict.is_stoquastic(), "generator must emit stoquastic instances");
        }
    }

    #[test]
    fn bounded_degree_respects_cap() {
        let mut rng = StdRng::seed_from_u64(19);
        for _ in 0..20 {
            let h = random_bounded_degree(9, 3, 2, 10, &mut rng);
            assert!(h.max_interaction_degree() <= 2);
        }
    }
}
