//! The m-termwise stoquasticity decider.
//!
//! A Hamiltonian is m-termwise stoquastic iff, for every flip group `S`
//! and every pair representative `a`, the negated entry function
//! `-f_S(a, ·)` lies in the cone generated by subcube indicators
//! `1[y_T = z]` with `T ⊆ R \ S` and `|S| + |T| <= m`. Each generator
//! corresponds one-to-one to an m-local stoquastic extremal term
//! `-(|a'><a| + |a><a'|)_S ⊗ |z><z|_T`, so a feasible point is itself the
//! termwise decomposition.
//!
//! Indicators on a strict subset of the coordinates split into indicators
//! on supersets, so only supports of the maximal admissible size are
//! enumerated. Any entry function with parity weight above `m - |S|` is
//! rejected before the solver runs; membership itself is settled by the
//! exact rational simplex — doubles are forbidden here because cone
//! membership is boundary-sensitive.

use crate::bits::Mask;
use crate::flip::FlipGroup;
use crate::hamiltonian::{Hamiltonian, HamiltonianError};
use crate::pauli::PauliTerm;
use crate::ratio::{rat, Rat};
use crate::simplex::{solve_feasibility, Feasibility};
use num::Zero;
use rayon::prelude::*;
use serde::Serialize;

/// One extremal stoquastic generator
/// `-weight · (|a'><a| + |a><a'|)_S ⊗ |z><z|_T`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StoqGenerator {
    /// Flip set `S` as a bit string.
    pub s: String,
    /// Pair representative over `S` (bits outside `S` zero).
    pub a: String,
    /// Projector support `T ⊆ R \ S`.
    pub t: String,
    /// Projected assignment `z` over `T`.
    pub z: String,
    /// Nonnegative rational weight.
    #[serde(with = "crate::ratio::serde_rat")]
    pub weight: Rat,
}

impl StoqGenerator {
    pub fn s_mask(&self) -> Mask {
        Mask::from_bitstring(&self.s).unwrap()
    }
    pub fn a_mask(&self) -> Mask {
        Mask::from_bitstring(&self.a).unwrap()
    }
    pub fn t_mask(&self) -> Mask {
        Mask::from_bitstring(&self.t).unwrap()
    }
    pub fn z_mask(&self) -> Mask {
        Mask::from_bitstring(&self.z).unwrap()
    }

    /// Entry `<b XOR S|G|b>` of this generator.
    pub fn entry(&self, b: &Mask) -> Rat {
        let s = self.s_mask();
        let a = self.a_mask();
        let t = self.t_mask();
        let z = self.z_mask();
        let b_in_s = b.and(&s);
        if b_in_s != a && b_in_s != a.xor(&s) {
            return Rat::zero();
        }
        if b.and(&t) != z {
            return Rat::zero();
        }
        -self.weight.clone()
    }
}

/// Reason a pair was infeasible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NoReason {
    /// `m` is smaller than the flip-set size.
    FlipSetTooWide,
    /// Non-zero parity coefficient above degree `m - |S|`.
    DegreeExceeded,
    /// The exact solver produced a verified Farkas certificate.
    ConeInfeasible,
}

/// YES certificate: generators plus the untouched diagonal remainder.
/// NO certificate: the infeasible flip group and pair.
#[derive(Clone, Debug, Serialize)]
pub enum TermwiseCertificate {
    Yes {
        m: usize,
        generators: Vec<StoqGenerator>,
        /// Diagonal terms (always stoquastic on their own), serialized as
        /// HSUM term lines.
        diagonal: Vec<String>,
    },
    No {
        m: usize,
        s: String,
        a: String,
        reason: NoReason,
    },
}

impl TermwiseCertificate {
    pub fn is_yes(&self) -> bool {
        matches!(self, TermwiseCertificate::Yes { .. })
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k > items.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance lexicographically
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

enum PairOutcome {
    Feasible(Vec<StoqGenerator>),
    Infeasible(NoReason),
}

fn decide_pair(group: &FlipGroup, a: &Mask, m: usize) -> PairOutcome {
    let s = group.s_mask();
    let s_size = s.popcount();
    if m < s_size {
        return PairOutcome::Infeasible(NoReason::FlipSetTooWide);
    }
    let d = m - s_size;
    let poly = group.entry_poly(a);
    if poly.degree() > d {
        return PairOutcome::Infeasible(NoReason::DegreeExceeded);
    }
    let outer = group.outer();
    let w = outer.popcount();
    let n = s.len();

    if d >= w {
        // point indicators on all of R \ S: feasible iff -f >= 0 pointwise
        let mut gens = Vec::new();
        for y in outer.subsets() {
            let v = poly.eval(&y);
            if v > Rat::zero() {
                return PairOutcome::Infeasible(NoReason::ConeInfeasible);
            }
            if !v.is_zero() {
                gens.push(StoqGenerator {
                    s: s.to_bitstring(),
                    a: a.to_bitstring(),
                    t: outer.to_bitstring(),
                    z: y.to_bitstring(),
                    weight: -v,
                });
            }
        }
        return PairOutcome::Feasible(gens);
    }

    // general case: supports of size exactly d inside R \ S
    let positions: Vec<usize> = outer.iter_ones().collect();
    let supports: Vec<Mask> = combinations(&positions, d)
        .into_iter()
        .map(|c| Mask::from_indices(n, &c))
        .collect();
    // variables: (support, z) pairs in deterministic order
    let mut vars: Vec<(Mask, Mask)> = Vec::new();
    for t in &supports {
        for z in t.subsets() {
            vars.push((t.clone(), z));
        }
    }
    // equations: parity coefficient of chi_{T'} for every T' of degree <= d
    let mut eq_sets: Vec<Mask> = Vec::new();
    for deg in 0..=d {
        for c in combinations(&positions, deg) {
            eq_sets.push(Mask::from_indices(n, &c));
        }
    }
    // 1[y_T = z] = 2^{-|T|} sum_{T' ⊆ T} (-1)^{<z, T'>} chi_{T'}(y)
    let mut a_mat: Vec<Vec<Rat>> = vec![vec![Rat::zero(); vars.len()]; eq_sets.len()];
    let mut b_vec: Vec<Rat> = Vec::with_capacity(eq_sets.len());
    let coeffs = poly.coeffs();
    for (row, tp) in eq_sets.iter().enumerate() {
        let target = coeffs.get(tp).cloned().unwrap_or_else(Rat::zero);
        b_vec.push(-target);
        for (col, (t, z)) in vars.iter().enumerate() {
            if tp.is_subset_of(t) {
                let scale = Rat::new(
                    num::BigInt::from(1),
                    num::BigInt::from(1i64 << t.popcount()),
                );
                let signed = if z.parity_and(tp) { -scale } else { scale };
                a_mat[row][col] = signed;
            }
        }
    }
    match solve_feasibility(&a_mat, &b_vec) {
        Feasibility::Feasible(p) => {
            let gens = vars
                .into_iter()
                .zip(p)
                .filter(|(_, w)| !w.is_zero())
                .map(|((t, z), weight)| StoqGenerator {
                    s: s.to_bitstring(),
                    a: a.to_bitstring(),
                    t: t.to_bitstring(),
                    z: z.to_bitstring(),
                    weight,
                })
                .collect();
            PairOutcome::Feasible(gens)
        }
        Feasibility::Infeasible(_) => PairOutcome::Infeasible(NoReason::ConeInfeasible),
    }
}

/// Decide whether `h` is m-termwise stoquastic, with a constructive
/// certificate either way.
pub fn check_termwise(h: &Hamiltonian, m: usize) -> Result<TermwiseCertificate, HamiltonianError> {
    let groups = h.flip_groups()?;
    let mut diagonal: Vec<String> = Vec::new();
    if !h.offset().is_zero() {
        diagonal.push(format!("{} I", crate::ratio::format_rat(h.offset())));
    }
    for t in h.terms() {
        if t.string.is_diagonal() {
            diagonal.push(term_line(t));
        }
    }

    // per-(S, a) subproblems are independent; reduce in sorted order
    let pairs: Vec<(Mask, Mask)> = groups
        .iter()
        .filter(|(s, _)| !s.is_zero())
        .flat_map(|(s, g)| g.pair_representatives().into_iter().map(move |a| (s.clone(), a)))
        .collect();
    let outcomes: Vec<(Mask, Mask, PairOutcome)> = pairs
        .into_par_iter()
        .map(|(s, a)| {
            let outcome = decide_pair(&groups[&s], &a, m);
            (s, a, outcome)
        })
        .collect();

    let mut generators = Vec::new();
    for (s, a, outcome) in outcomes {
        match outcome {
            PairOutcome::Feasible(gens) => generators.extend(gens),
            PairOutcome::Infeasible(reason) => {
                return Ok(TermwiseCertificate::No {
                    m,
                    s: s.to_bitstring(),
                    a: a.to_bitstring(),
                    reason,
                });
            }
        }
    }
    Ok(TermwiseCertificate::Yes {
        m,
        generators,
        diagonal,
    })
}

fn term_line(t: &PauliTerm) -> String {
    let mut line = crate::ratio::format_rat(&t.coeff);
    for i in 0..t.string.num_qubits() {
        match t.string.letter(i) {
            crate::pauli::Letter::I => {}
            l => line.push_str(&format!(" {:?}{}", l, i)),
        }
    }
    line
}

/// Exhaustively verify a YES certificate against the Hamiltonian: every
/// generator is m-local with nonnegative weight, and per flip group the
/// generators reproduce every entry exactly.
pub fn verify_certificate(
    h: &Hamiltonian,
    cert: &TermwiseCertificate,
) -> Result<(), String> {
    let TermwiseCertificate::Yes { m, generators, .. } = cert else {
        return Err("not a YES certificate".into());
    };
    for g in generators {
        if g.weight < Rat::zero() {
            return Err(format!("negative weight generator {g:?}"));
        }
        let locality = g.s_mask().popcount() + g.t_mask().popcount();
        if locality > *m {
            return Err(format!("generator exceeds locality {m}: {g:?}"));
        }
        if !g.t_mask().is_disjoint_from(&g.s_mask()) {
            return Err("generator support overlaps its flip set".into());
        }
        if !g.z_mask().is_subset_of(&g.t_mask()) {
            return Err("generator z outside its support".into());
        }
    }
    let groups = h.flip_groups().map_err(|e| e.to_string())?;
    for (s, group) in &groups {
        if s.is_zero() {
            continue;
        }
        let gens: Vec<&StoqGenerator> = generators
            .iter()
            .filter(|g| &g.s_mask() == s)
            .collect();
        // entries depend only on coordinates in R plus generator supports
        let mut domain = group.relevant().clone();
        for g in &gens {
            domain = domain.or(&g.t_mask());
        }
        for b in domain.subsets() {
            let want = group.entry(&b);
            let mut got = Rat::zero();
            for g in &gens {
                got += g.entry(&b);
            }
            if want != got {
                return Err(format!(
                    "entry mismatch at b={} for S={}: H gives {want}, generators give {got}",
                    b.to_bitstring(),
                    s.to_bitstring()
                ));
            }
        }
    }
    // no generator may reference a flip set that is not a group of H
    for g in generators {
        if !groups.contains_key(&g.s_mask()) {
            return Err(format!("generator flip set {} not present in H", g.s));
        }
    }
    Ok(())
}

/// Convenience: the certificate as one merged Hamiltonian (generators
/// expanded to Pauli sums plus the untouched diagonal part); equals `h`
/// exactly when the certificate verifies.
pub fn certificate_to_hamiltonian(
    h: &Hamiltonian,
    cert: &TermwiseCertificate,
) -> Option<Hamiltonian> {
    let TermwiseCertificate::Yes { generators, .. } = cert else {
        return None;
    };
    let n = h.num_qubits();
    let mut acc = Hamiltonian::zero(n);
    for t in h.terms() {
        if t.string.is_diagonal() {
            acc = acc
                .add(&Hamiltonian::new(n, vec![t.clone()]).unwrap())
                .unwrap();
        }
    }
    let offs = Hamiltonian::new(
        n,
        vec![PauliTerm::new(
            h.offset().clone(),
            crate::pauli::PauliString::identity(n),
        )],
    )
    .unwrap();
    acc = acc.add(&offs).unwrap();
    for g in generators {
        acc = acc.add(&generator_to_hamiltonian(n, g)).unwrap();
    }
    Some(acc)
}

/// Expand `-w (|a'><a| + |a><a'|)_S ⊗ |z><z|_T` into Pauli terms.
fn generator_to_hamiltonian(n: usize, g: &StoqGenerator) -> Hamiltonian {
    use crate::pauli::{Letter, PauliString};
    let s = g.s_mask();
    let a = g.a_mask();
    let t = g.t_mask();
    let z = g.z_mask();
    // flip part: over the qubits of S, (|a'><a| + h.c.) expands into
    // 2^{-|S|} sum over masks u ⊆ S of X/Y letters: product over i in S of
    // (X_i or, with sign (-1)^{a_i}, Y_i contributing i-phases). Assemble
    // by direct product of single-qubit operators: |1-b><b| = (X - i(-1)^b Y)/2
    // ... done symbolically via repeated tensoring below.
    #[derive(Clone)]
    struct Accum {
        coeff: Rat,
        letters: Vec<(usize, Letter)>,
        i_pow: u8,
    }
    // expand the single dyad |a'><a|; adding the conjugate cancels the
    // odd-Y branches and doubles the even ones
    let mut parts: Vec<Accum> = vec![Accum {
        coeff: g.weight.clone() * rat(-2),
        letters: Vec::new(),
        i_pow: 0,
    }];
    for i in s.iter_ones() {
        let b = a.get(i);
        // |1-b><b|_i = (X_i + i(-1)^{b} ... ) derive: |1><0| = (X - iY)/2, |0><1| = (X + iY)/2
        let mut next = Vec::with_capacity(parts.len() * 2);
        for p in &parts {
            // X branch
            let mut px = p.clone();
            px.coeff = px.coeff / rat(2);
            px.letters.push((i, Letter::X));
            next.push(px);
            // Y branch with phase ∓i
            let mut py = p.clone();
            py.coeff = py.coeff / rat(2);
            py.letters.push((i, Letter::Y));
            py.i_pow = (py.i_pow + if b { 1 } else { 3 }) % 4;
            next.push(py);
        }
        parts = next;
    }
    for i in t.iter_ones() {
        let want_one = z.get(i);
        // |z_i><z_i| = (I ± Z_i)/2
        let mut next = Vec::with_capacity(parts.len() * 2);
        for p in &parts {
            let mut pi = p.clone();
            pi.coeff = pi.coeff / rat(2);
            next.push(pi);
            let mut pz = p.clone();
            pz.coeff = pz.coeff / rat(2);
            if want_one {
                pz.coeff = -pz.coeff;
            }
            pz.letters.push((i, Letter::Z));
            next.push(pz);
        }
        parts = next;
    }
    let terms: Vec<PauliTerm> = parts
        .into_iter()
        .filter_map(|p| {
            // imaginary components cancel pairwise across the Hermitian sum;
            // only even i-powers survive with (-1)^{i_pow/2}
            match p.i_pow {
                0 => Some(PauliTerm::new(p.coeff, PauliString::from_letters(n, &p.letters))),
                2 => Some(PauliTerm::new(-p.coeff, PauliString::from_letters(n, &p.letters))),
                _ => {
                    let string = PauliString::from_letters(n, &p.letters);
                    // odd i-power strings have odd Y-count and cancel with
                    // the conjugate branch; drop them
                    debug_assert!(!string.is_real());
                    None
                }
            }
        })
        .collect();
    Hamiltonian::new(n, terms).expect("generator expansion is length-safe")
}
