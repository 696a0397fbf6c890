//! Sign-curing by basis change: exhaustive Hadamard-mask search and the
//! machinery for Clifford cures specified through generator images.
//!
//! A partial Clifford map is given as signed Pauli images of an
//! independent generator set. Such a map extends to a full Clifford iff
//! it preserves all commutation relations; [`complete_tableau`] performs
//! the extension constructively by canonicalizing both sides with
//! elementary circuits and composing one against the inverse of the
//! other.

use crate::bits::Mask;
use crate::clifford::{
    conjugate_by_circuit, conjugate_by_inverse, CliffordGate, CliffordTableau, SignedPauli,
};
use crate::hamiltonian::{Hamiltonian, HamiltonianError};
use crate::pauli::{PauliString, Phase};
use crate::stoq_check::{check_global, StoqStatus, DEFAULT_GLOBAL_BUDGET};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CuringError {
    #[error("qubit count {0} exceeds the exhaustive mask-search budget {1}")]
    SearchBudgetExceeded(usize, usize),
    #[error("global check returned Undecided for flip group {0}; cannot certify any mask")]
    Undecided(String),
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
}

pub const DEFAULT_MASK_SEARCH_BUDGET: usize = 20;

/// Exhaustive search over all `2^n` Hadamard masks in lexicographic
/// order; returns the smallest mask whose conjugate is globally
/// stoquastic, or `None`.
pub fn search_hadamard_mask(
    h: &Hamiltonian,
    max_n: usize,
) -> Result<Option<Mask>, CuringError> {
    let n = h.num_qubits();
    if n > max_n {
        return Err(CuringError::SearchBudgetExceeded(n, max_n));
    }
    use rayon::prelude::*;
    // parallel over mask ranks; find_map_first keeps the sequential
    // semantics (smallest curing mask, or the first undecided group)
    let masks: Vec<Mask> = Mask::lex_iter(n).collect();
    let found = masks
        .into_par_iter()
        .find_map_first(|mask| {
            let conj = h.conjugate_hadamard(&mask);
            match check_global(&conj, DEFAULT_GLOBAL_BUDGET) {
                Ok(verdict) => match verdict.status {
                    StoqStatus::Stoquastic => Some(Ok(mask)),
                    StoqStatus::NotStoquastic => None,
                    StoqStatus::Undecided { group } => Some(Err(CuringError::Undecided(group))),
                },
                Err(e) => Some(Err(CuringError::Hamiltonian(e))),
            }
        });
    match found {
        Some(Ok(mask)) => Ok(Some(mask)),
        Some(Err(e)) => Err(e),
        None => Ok(None),
    }
}

/// Images of an independent Pauli generator set, plus induced images of
/// products whose signs are forced by the product relations.
#[derive(Clone, Debug)]
pub struct GeneratorImageMap {
    n: usize,
    pairs: Vec<(PauliString, SignedPauli)>,
    induced: Vec<(PauliString, SignedPauli)>,
}

/// First violated requirement found by [`validate_images`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ImageViolation {
    #[error("generators {0} and {1}: source commutation {2} but image commutation {3}")]
    CommutationMismatch(usize, usize, bool, bool),
    #[error("sources are not independent (generator {0} is a product of earlier ones)")]
    SourcesDependent(usize),
    #[error("images are not independent (image {0} is a product of earlier ones)")]
    ImagesDependent(usize),
    #[error("induced product {0} is not generated by the independent set")]
    InducedNotInSpan(usize),
    #[error("induced product {0}: declared image {1} but products force {2}")]
    InducedSignMismatch(usize, String, String),
    #[error("generator {0} is the identity")]
    IdentityGenerator(usize),
}

impl GeneratorImageMap {
    pub fn new(n: usize, pairs: Vec<(PauliString, SignedPauli)>) -> Self {
        GeneratorImageMap {
            n,
            pairs,
            induced: Vec::new(),
        }
    }

    pub fn identity(n: usize, generators: Vec<PauliString>) -> Self {
        let pairs = generators
            .into_iter()
            .map(|g| (g.clone(), SignedPauli::plus(g)))
            .collect();
        GeneratorImageMap::new(n, pairs)
    }

    pub fn with_induced(mut self, source: PauliString, image: SignedPauli) -> Self {
        self.induced.push((source, image));
        self
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(PauliString, SignedPauli)] {
        &self.pairs
    }

    pub fn induced(&self) -> &[(PauliString, SignedPauli)] {
        &self.induced
    }

    /// Image of an arbitrary string in the span of the generators
    /// (including its forced sign), or `None` if outside the span.
    pub fn image_of(&self, source: &PauliString) -> Option<SignedPauli> {
        let selection = solve_f2(
            &self.pairs.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>(),
            source,
        )?;
        // product of selected sources = i^{e_s} source (strings match by
        // construction); image = i^{-e_s} product of selected images
        let mut src_acc = SignedPauli::plus(PauliString::identity(self.n));
        let mut src_phase = Phase::ONE;
        let mut img_acc = SignedPauli::plus(PauliString::identity(self.n));
        let mut img_phase = Phase::ONE;
        for (j, (s, t)) in self.pairs.iter().enumerate() {
            if !selection.get(j) {
                continue;
            }
            let (ss, sp) = src_acc.mul_with_phase(&SignedPauli::plus(s.clone()));
            src_acc = SignedPauli::plus(ss);
            src_phase = src_phase.mul(sp);
            let (is, ip) = img_acc.mul_with_phase(t);
            img_acc = SignedPauli::plus(is);
            img_phase = img_phase.mul(ip);
        }
        if &src_acc.string != source {
            return None;
        }
        // net phase i^{img - src} must be real (commutation data matches)
        let net = img_phase.mul(Phase::from_i_exponent(
            (4 - src_phase.i_exponent() as u32) % 4,
        ));
        let sign = net.real_sign()?;
        Some(SignedPauli::new(sign < 0, img_acc.string))
    }
}

/// Symplectic vector of a string: (x bits, z bits).
fn symplectic_bits(p: &PauliString) -> (Mask, Mask) {
    (p.x_mask().clone(), p.z_mask().clone())
}

/// Solve `product of subset = target` over F2; returns the subset as a
/// selection mask over the generator list, or `None` if out of span.
fn solve_f2(generators: &[PauliString], target: &PauliString) -> Option<Mask> {
    let r = generators.len();
    let n = target.num_qubits();
    // Gaussian elimination on the 2n-bit vectors with selection tracking
    let mut rows: Vec<(Mask, Mask, Mask)> = generators
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let (x, z) = symplectic_bits(g);
            (x, z, Mask::unit(r.max(1), j))
        })
        .collect();
    let (mut tx, mut tz) = symplectic_bits(target);
    let mut t_sel = Mask::zeros(r.max(1));
    let mut used = vec![false; rows.len()];
    for bit in 0..(2 * n) {
        let get = |x: &Mask, z: &Mask| {
            if bit < n {
                x.get(bit)
            } else {
                z.get(bit - n)
            }
        };
        let pivot = (0..rows.len()).find(|&i| !used[i] && get(&rows[i].0, &rows[i].1));
        let Some(p) = pivot else {
            continue;
        };
        used[p] = true;
        let (px, pz, psel) = rows[p].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != p && !used[i] && get(&row.0, &row.1) {
                row.0 = row.0.xor(&px);
                row.1 = row.1.xor(&pz);
                row.2 = row.2.xor(&psel);
            }
        }
        if get(&tx, &tz) {
            tx = tx.xor(&px);
            tz = tz.xor(&pz);
            t_sel = t_sel.xor(&psel);
        }
    }
    if tx.is_zero() && tz.is_zero() {
        Some(t_sel)
    } else {
        None
    }
}

/// F2 rank of the symplectic vectors.
fn symplectic_rank(strings: &[PauliString]) -> usize {
    let Some(first) = strings.first() else { return 0 };
    let n = first.num_qubits();
    let mut basis: Vec<(Mask, Mask)> = Vec::new();
    'outer: for s in strings {
        let (mut x, mut z) = symplectic_bits(s);
        for (bx, bz) in &basis {
            // reduce by the leading bit of each basis vector
            let lead = leading_bit(bx, bz, n);
            if let Some(l) = lead {
                if get_bit(&x, &z, l, n) {
                    x = x.xor(bx);
                    z = z.xor(bz);
                }
            }
        }
        if x.is_zero() && z.is_zero() {
            continue 'outer;
        }
        basis.push((x, z));
    }
    basis.len()
}

fn leading_bit(x: &Mask, z: &Mask, n: usize) -> Option<usize> {
    (0..(2 * n)).find(|&b| get_bit(x, z, b, n))
}

fn get_bit(x: &Mask, z: &Mask, bit: usize, n: usize) -> bool {
    if bit < n {
        x.get(bit)
    } else {
        z.get(bit - n)
    }
}

/// Check that a generator image map preserves all commutation relations,
/// that both sides are independent, and that every declared induced
/// product matches the sign forced by the generator products.
pub fn validate_images(map: &GeneratorImageMap) -> Result<(), ImageViolation> {
    let r = map.pairs.len();
    for (j, (s, _)) in map.pairs.iter().enumerate() {
        if s.is_identity() {
            return Err(ImageViolation::IdentityGenerator(j));
        }
    }
    for i in 0..r {
        for j in (i + 1)..r {
            let sc = map.pairs[i].0.commutes(&map.pairs[j].0).unwrap();
            let ic = map.pairs[i]
                .1
                .string
                .commutes(&map.pairs[j].1.string)
                .unwrap();
            if sc != ic {
                return Err(ImageViolation::CommutationMismatch(i, j, sc, ic));
            }
        }
    }
    let sources: Vec<PauliString> = map.pairs.iter().map(|(s, _)| s.clone()).collect();
    let images: Vec<PauliString> = map.pairs.iter().map(|(_, t)| t.string.clone()).collect();
    for k in 1..=r {
        if symplectic_rank(&sources[..k]) < k {
            return Err(ImageViolation::SourcesDependent(k - 1));
        }
        if symplectic_rank(&images[..k]) < k {
            return Err(ImageViolation::ImagesDependent(k - 1));
        }
    }
    for (idx, (source, declared)) in map.induced.iter().enumerate() {
        let forced = map
            .image_of(source)
            .ok_or(ImageViolation::InducedNotInSpan(idx))?;
        if &forced != declared {
            return Err(ImageViolation::InducedSignMismatch(
                idx,
                declared.to_string(),
                forced.to_string(),
            ));
        }
    }
    Ok(())
}

#[derive(Debug, Error)]
pub enum CompletionError {
    #[error(transparent)]
    Invalid(#[from] ImageViolation),
    #[error("internal validation failure: completed tableau does not reproduce image {0}")]
    InternalValidationFailure(usize),
}

/// Canonicalize `gens[j]` to `±X_slot`, appending gates to `circuit` and
/// conjugating every generator in the list.
fn reduce_to_x(gens: &mut [SignedPauli], j: usize, slot: usize, circuit: &mut Vec<CliffordGate>) {
    let mut staged: Vec<CliffordGate> = Vec::new();
    let g = &gens[j];
    let n = g.num_qubits();
    for i in 0..n {
        match g.string.letter(i) {
            crate::pauli::Letter::Z => staged.push(CliffordGate::H(i)),
            crate::pauli::Letter::Y => staged.push(CliffordGate::Sdg(i)),
            _ => {}
        }
    }
    apply_gates(gens, &staged, circuit);
    let support: Vec<usize> = gens[j].string.support().iter_ones().collect();
    debug_assert!(!support.is_empty());
    let pivot = support[0];
    let mut staged: Vec<CliffordGate> = support[1..]
        .iter()
        .map(|&i| CliffordGate::Cnot(pivot, i))
        .collect();
    if pivot != slot {
        staged.push(CliffordGate::Cnot(pivot, slot));
        staged.push(CliffordGate::Cnot(slot, pivot));
        staged.push(CliffordGate::Cnot(pivot, slot));
    }
    apply_gates(gens, &staged, circuit);
    debug_assert_eq!(gens[j].string, PauliString::x_on(n, slot));
}

/// Canonicalize `gens[j]` to `±Z_slot` with gates that fix `X_slot`;
/// requires `gens[j]` to anticommute with `X_slot`.
fn reduce_to_z_fixing_x(
    gens: &mut [SignedPauli],
    j: usize,
    slot: usize,
    circuit: &mut Vec<CliffordGate>,
) {
    let n = gens[j].num_qubits();
    let mut staged: Vec<CliffordGate> = Vec::new();
    for i in 0..n {
        let letter = gens[j].string.letter(i);
        if i == slot {
            if letter == crate::pauli::Letter::Y {
                staged.push(CliffordGate::SqrtX(i));
            }
            continue;
        }
        match letter {
            crate::pauli::Letter::X => staged.push(CliffordGate::H(i)),
            crate::pauli::Letter::Y => staged.push(CliffordGate::SqrtX(i)),
            _ => {}
        }
    }
    apply_gates(gens, &staged, circuit);
    let tail: Vec<usize> = gens[j]
        .string
        .z_mask()
        .iter_ones()
        .filter(|&i| i != slot)
        .collect();
    let staged: Vec<CliffordGate> = tail
        .into_iter()
        .map(|t| CliffordGate::Cnot(t, slot))
        .collect();
    apply_gates(gens, &staged, circuit);
    debug_assert_eq!(gens[j].string, PauliString::z_on(n, slot));
}

fn apply_gates(gens: &mut [SignedPauli], staged: &[CliffordGate], circuit: &mut Vec<CliffordGate>) {
    for &g in staged {
        for p in gens.iter_mut() {
            g.conjugate(p);
        }
        circuit.push(g);
    }
}

/// Find a symplectic vector `v` with prescribed commutation against every
/// current image: anticommuting with entry `anti`, commuting with all
/// others. Such a partner always exists because the constrained vectors
/// are independent and the form is non-degenerate.
fn solve_virtual_partner(imgs: &[SignedPauli], anti: usize, n: usize) -> PauliString {
    // constraints: sym(v, w_k) = b_k; the functional of w is (w_z | w_x)
    let mut rows: Vec<(Mask, Mask, bool)> = imgs
        .iter()
        .enumerate()
        .map(|(k, w)| (w.string.z_mask().clone(), w.string.x_mask().clone(), k == anti))
        .collect();
    let mut vx = Mask::zeros(n);
    let mut vz = Mask::zeros(n);
    let mut pivoted: Vec<(usize, usize)> = Vec::new(); // (row, column bit)
    let mut used = vec![false; rows.len()];
    for bit in 0..(2 * n) {
        let get = |a: &Mask, b: &Mask| if bit < n { a.get(bit) } else { b.get(bit - n) };
        let Some(p) = (0..rows.len()).find(|&i| !used[i] && get(&rows[i].0, &rows[i].1)) else {
            continue;
        };
        used[p] = true;
        let (px, pz, pb) = rows[p].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != p && get(&row.0, &row.1) {
                row.0 = row.0.xor(&px);
                row.1 = row.1.xor(&pz);
                row.2 ^= pb;
            }
        }
        pivoted.push((p, bit));
    }
    // back-substitute: set the pivot coordinate of each row to its rhs,
    // free coordinates stay zero; rows were fully reduced against each
    // other so assignments are independent
    for &(row, bit) in &pivoted {
        let (ref rx, ref rz, rb) = rows[row];
        let _ = (rx, rz);
        if rb {
            if bit < n {
                vx.set(bit, true);
            } else {
                vz.set(bit - n, true);
            }
        }
    }
    let v = PauliString::from_masks(vx, vz);
    for (k, w) in imgs.iter().enumerate() {
        debug_assert_eq!(
            v.anticommutes(&w.string).unwrap(),
            k == anti,
            "virtual partner constraints must be satisfiable"
        );
    }
    v
}

/// Multiply pair `u` by pair `j` on both sides with a common phase
/// normalization, preserving the map relation.
fn absorb_pair(
    src: &mut [SignedPauli],
    img: &mut [SignedPauli],
    u: usize,
    j: usize,
) {
    let (s_str, s_ph) = src[u].mul_with_phase(&src[j]);
    let (i_str, i_ph) = img[u].mul_with_phase(&img[j]);
    // normalize both with i^{-s_ph}; commutation equality keeps the net
    // image phase real
    let net = i_ph.mul(Phase::from_i_exponent((4 - s_ph.i_exponent() as u32) % 4));
    let sign = net
        .real_sign()
        .expect("matched commutation keeps pair products Hermitian together");
    src[u] = SignedPauli::plus(s_str);
    img[u] = SignedPauli::new(sign < 0, i_str);
}

/// Extend a validated partial map to a full Clifford tableau via
/// symplectic canonicalization of both sides; the returned tableau
/// reproduces every generator image exactly (re-checked before return).
pub fn complete_tableau(map: &GeneratorImageMap) -> Result<CliffordTableau, CompletionError> {
    validate_images(map)?;
    let n = map.n;
    let r = map.pairs.len();
    let mut src: Vec<SignedPauli> = map
        .pairs
        .iter()
        .map(|(s, _)| SignedPauli::plus(s.clone()))
        .collect();
    let mut img: Vec<SignedPauli> = map.pairs.iter().map(|(_, t)| t.clone()).collect();
    let mut c_src: Vec<CliffordGate> = Vec::new();
    let mut c_img: Vec<CliffordGate> = Vec::new();

    let mut slot = 0usize;
    let mut j = 0usize;
    // canonical pattern per processed generator: (index, is_z, slot)
    let mut canon: Vec<(usize, bool, usize)> = Vec::new();
    while j < r {
        reduce_to_x(&mut src, j, slot, &mut c_src);
        reduce_to_x(&mut img, j, slot, &mut c_img);
        canon.push((j, false, slot));
        let x_slot = PauliString::x_on(n, slot);
        let partner = ((j + 1)..r).find(|&k| src[k].string.anticommutes(&x_slot).unwrap());
        if let Some(k) = partner {
            src.swap(j + 1, k);
            img.swap(j + 1, k);
            reduce_to_z_fixing_x(&mut src, j + 1, slot, &mut c_src);
            reduce_to_z_fixing_x(&mut img, j + 1, slot, &mut c_img);
            canon.push((j + 1, true, slot));
            for u in (j + 2)..r {
                if src[u].string.x_mask().get(slot) {
                    absorb_pair(&mut src, &mut img, u, j);
                }
                if src[u].string.z_mask().get(slot) {
                    absorb_pair(&mut src, &mut img, u, j + 1);
                }
            }
            j += 2;
        } else {
            // isolated: remaining generators commute with X_slot, so only
            // X letters at the slot can remain on the source side; clear
            // them, then complete to a hyperbolic pair with a virtual
            // partner so the image side is pinned down as well
            for u in (j + 1)..r {
                debug_assert!(!src[u].string.z_mask().get(slot));
                if src[u].string.x_mask().get(slot) {
                    absorb_pair(&mut src, &mut img, u, j);
                }
            }
            let v = solve_virtual_partner(&img, j, n);
            let virt = src.len();
            src.push(SignedPauli::plus(PauliString::z_on(n, slot)));
            img.push(SignedPauli::plus(v));
            reduce_to_z_fixing_x(&mut src, virt, slot, &mut c_src);
            reduce_to_z_fixing_x(&mut img, virt, slot, &mut c_img);
            canon.push((virt, true, slot));
            j += 1;
        }
        slot += 1;
    }

    // align image-side canonical signs with the source side
    for &(idx, is_z, s) in &canon {
        if src[idx].neg != img[idx].neg {
            let fix = if is_z {
                CliffordGate::X(s)
            } else {
                CliffordGate::Z(s)
            };
            for p in img.iter_mut() {
                fix.conjugate(p);
            }
            c_img.push(fix);
        }
    }
    debug_assert!(canon.iter().all(|&(idx, _, _)| src[idx] == img[idx]));

    // T = C_img^{-1} ∘ C_src on the standard generators
    let build = |p: SignedPauli| -> SignedPauli {
        conjugate_by_inverse(&c_img, &conjugate_by_circuit(&c_src, &p))
    };
    let x_images: Vec<SignedPauli> = (0..n)
        .map(|q| build(SignedPauli::plus(PauliString::x_on(n, q))))
        .collect();
    let z_images: Vec<SignedPauli> = (0..n)
        .map(|q| build(SignedPauli::plus(PauliString::z_on(n, q))))
        .collect();
    let tableau = CliffordTableau::from_images(x_images, z_images)
        .expect("canonicalization circuits compose to a valid Clifford");

    for (idx, (source, image)) in map.pairs.iter().enumerate() {
        if &tableau.conjugate(&SignedPauli::plus(source.clone())) != image {
            return Err(CompletionError::InternalValidationFailure(idx));
        }
    }
    Ok(tableau)
}
