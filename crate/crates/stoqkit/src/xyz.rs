//! Disordered XYZ chains and their sign cures.
//!
//! Two curing routes are implemented. The single-qubit route searches per
//! site over the 24 signed axis permutations with unit determinant
//! (single-qubit Cliffords acting on the coupling axes); an edge is cured
//! when the transformed triple stays diagonal and satisfies
//! `a_xx <= -|a_yy|`. The Clifford route maps one edge-parity class to
//! Z-strings and the other to X-strings through a generator image map,
//! eligible when every edge of the X-side class has
//! `a_xx * a_yy * a_zz >= 0`; the image map is validated and the
//! transformed Hamiltonian is checked 4-termwise stoquastic before the
//! cure is returned.

use crate::clifford::{CliffordTableau, SignedPauli};
use crate::curing::{complete_tableau, validate_images, GeneratorImageMap};
use crate::hamiltonian::Hamiltonian;
use crate::hsum::ChainFile;
use crate::pauli::{Letter, PauliString, PauliTerm};
use crate::ratio::{rat, rat_abs, Rat};
use crate::stoq_check::{check_global, DEFAULT_GLOBAL_BUDGET};
use crate::termwise::check_termwise;
use num::Zero;
use thiserror::Error;

/// Coupling axes in fixed order.
const AXES: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

/// An XYZ Heisenberg chain with per-edge coupling triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XyzChain {
    sites: usize,
    closed: bool,
    /// `couplings[e] = (a_xx, a_yy, a_zz)` on edge `(e, e+1)` (the last
    /// edge of a closed chain wraps to site 0).
    couplings: Vec<(Rat, Rat, Rat)>,
}

impl XyzChain {
    pub fn open(couplings: Vec<(Rat, Rat, Rat)>) -> Self {
        let sites = couplings.len() + 1;
        XyzChain {
            sites,
            closed: false,
            couplings,
        }
    }

    pub fn closed(couplings: Vec<(Rat, Rat, Rat)>) -> Self {
        let sites = couplings.len();
        assert!(sites >= 3, "a closed chain needs at least 3 sites");
        XyzChain {
            sites,
            closed: true,
            couplings,
        }
    }

    pub fn from_file(f: &ChainFile) -> Self {
        if f.closed {
            XyzChain::closed(f.couplings.clone())
        } else {
            XyzChain::open(f.couplings.clone())
        }
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn edges(&self) -> usize {
        self.couplings.len()
    }

    pub fn coupling(&self, e: usize) -> &(Rat, Rat, Rat) {
        &self.couplings[e]
    }

    /// Endpoint sites of edge `e`.
    pub fn edge_sites(&self, e: usize) -> (usize, usize) {
        (e, (e + 1) % self.sites)
    }

    /// The chain as a Pauli-sum Hamiltonian.
    pub fn hamiltonian(&self) -> Hamiltonian {
        let n = self.sites;
        let mut terms = Vec::new();
        for e in 0..self.edges() {
            let (i, j) = self.edge_sites(e);
            let (xx, yy, zz) = &self.couplings[e];
            for (axis, c) in AXES.iter().zip([xx, yy, zz]) {
                if !c.is_zero() {
                    terms.push(PauliTerm::new(
                        c.clone(),
                        PauliString::from_letters(n, &[(i, *axis), (j, *axis)]),
                    ));
                }
            }
        }
        Hamiltonian::new(n, terms).expect("chain terms are length-consistent")
    }
}

/// A 3x3 signed permutation of the coupling axes with determinant +1;
/// the action of a single-qubit Clifford on (X, Y, Z).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SignedPermutation {
    /// Image axis of each source axis.
    pub perm: [usize; 3],
    /// Sign carried onto each source axis.
    pub sign: [i8; 3],
}

impl SignedPermutation {
    pub fn identity() -> Self {
        SignedPermutation {
            perm: [0, 1, 2],
            sign: [1, 1, 1],
        }
    }

    fn parity(perm: &[usize; 3]) -> i8 {
        let mut inversions = 0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn determinant(&self) -> i8 {
        Self::parity(&self.perm) * self.sign[0] * self.sign[1] * self.sign[2]
    }

    /// The full group of order 24, in a fixed deterministic order.
    pub fn all() -> Vec<SignedPermutation> {
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut out = Vec::with_capacity(24);
        for perm in perms {
            for bits in 0..8u8 {
                let sign = [
                    if bits & 1 == 0 { 1 } else { -1 },
                    if bits & 2 == 0 { 1 } else { -1 },
                    if bits & 4 == 0 { 1 } else { -1 },
                ];
                let candidate = SignedPermutation { perm, sign };
                if candidate.determinant() == 1 {
                    out.push(candidate);
                }
            }
        }
        debug_assert_eq!(out.len(), 24);
        out
    }
}

/// Transformed coupling triple of one edge under site maps
/// `(left, right)`, or `None` when the transform leaves the diagonal
/// (and the edge stops being XYZ-form).
pub fn transform_edge(
    left: &SignedPermutation,
    right: &SignedPermutation,
    triple: &(Rat, Rat, Rat),
) -> Option<(Rat, Rat, Rat)> {
    let alphas = [&triple.0, &triple.1, &triple.2];
    let mut out = [Rat::zero(), Rat::zero(), Rat::zero()];
    for w in 0..3 {
        if alphas[w].is_zero() {
            continue;
        }
        if left.perm[w] != right.perm[w] {
            return None;
        }
        let s = left.sign[w] * right.sign[w];
        let value = if s < 0 {
            -alphas[w].clone()
        } else {
            alphas[w].clone()
        };
        out[left.perm[w]] += value;
    }
    let [xx, yy, zz] = out;
    Some((xx, yy, zz))
}

/// The per-edge curing criterion: diagonal form with `a_xx <= -|a_yy|`.
pub fn edge_cured(triple: &(Rat, Rat, Rat)) -> bool {
    triple.0 <= -rat_abs(&triple.1)
}

fn edge_ok(
    left: &SignedPermutation,
    right: &SignedPermutation,
    triple: &(Rat, Rat, Rat),
) -> bool {
    transform_edge(left, right, triple).is_some_and(|t| edge_cured(&t))
}

/// A successful single-qubit cure: the per-site assignment and the
/// transformed (stoquastic) chain.
#[derive(Clone, Debug)]
pub struct SingleQubitCure {
    pub assignment: Vec<SignedPermutation>,
    pub transformed: XyzChain,
}

/// Search for a per-site signed-permutation assignment curing every edge.
/// Open chains run edge-local dynamic programming over the 24 choices per
/// site; closed chains fix the first site and close the cycle. Returns
/// the lexicographically smallest assignment in the canonical group
/// order, or `None` after exhausting the search space.
pub fn search_xyz_single_qubit(chain: &XyzChain) -> Option<SingleQubitCure> {
    let elements = SignedPermutation::all();
    let n = chain.sites();
    if chain.edges() == 0 {
        return Some(SingleQubitCure {
            assignment: vec![SignedPermutation::identity(); n],
            transformed: chain.clone(),
        });
    }
    let assignment = if chain.is_closed() {
        let mut found = None;
        'outer: for first in 0..elements.len() {
            if let Some(tail) = dp_path(chain, &elements, Some(first)) {
                found = Some(tail);
                break 'outer;
            }
        }
        found?
    } else {
        dp_path(chain, &elements, None)?
    };
    let transformed = XyzChain {
        sites: chain.sites,
        closed: chain.closed,
        couplings: (0..chain.edges())
            .map(|e| {
                let (i, j) = chain.edge_sites(e);
                transform_edge(&assignment[i], &assignment[j], chain.coupling(e))
                    .expect("accepted assignment keeps every edge diagonal")
            })
            .collect(),
    };
    Some(SingleQubitCure {
        assignment,
        transformed,
    })
}

/// Backward feasibility then greedy forward choice; `fixed_first` pins
/// site 0 (used to close cycles).
fn dp_path(
    chain: &XyzChain,
    elements: &[SignedPermutation],
    fixed_first: Option<usize>,
) -> Option<Vec<SignedPermutation>> {
    let n = chain.sites();
    let m = elements.len();
    // feasible[s][p]: sites s..n can be assigned with site s set to p
    let mut feasible = vec![vec![false; m]; n];
    for p in 0..m {
        let last_ok = if chain.is_closed() {
            // closing edge (n-1, 0)
            let first = fixed_first.expect("closed chains pin the first site");
            edge_ok(&elements[p], &elements[first], chain.coupling(n - 1))
        } else {
            true
        };
        feasible[n - 1][p] = last_ok;
    }
    for s in (0..n - 1).rev() {
        for p in 0..m {
            feasible[s][p] = (0..m).any(|q| {
                feasible[s + 1][q] && edge_ok(&elements[p], &elements[q], chain.coupling(s))
            });
        }
    }
    let first_choice = match fixed_first {
        Some(f) => {
            if !feasible[0][f] {
                return None;
            }
            f
        }
        None => (0..m).find(|&p| feasible[0][p])?,
    };
    let mut picks = vec![first_choice];
    for s in 1..n {
        let prev = *picks.last().unwrap();
        let q = (0..m).find(|&q| {
            feasible[s][q] && edge_ok(&elements[prev], &elements[q], chain.coupling(s - 1))
        })?;
        picks.push(q);
    }
    Some(picks.into_iter().map(|i| elements[i]).collect())
}

/// Exhaustive oracle over all `24^n` assignments (small chains only);
/// agrees with the dynamic program.
pub fn search_xyz_brute_force(chain: &XyzChain) -> Option<Vec<SignedPermutation>> {
    let n = chain.sites();
    assert!(n <= 5, "brute-force oracle capped at 5 sites");
    let elements = SignedPermutation::all();
    let m = elements.len();
    let mut indices = vec![0usize; n];
    loop {
        let ok = (0..chain.edges()).all(|e| {
            let (i, j) = chain.edge_sites(e);
            edge_ok(&elements[indices[i]], &elements[indices[j]], chain.coupling(e))
        });
        if ok {
            return Some(indices.into_iter().map(|i| elements[i]).collect());
        }
        // odometer
        let mut pos = n;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < m {
                break;
            }
            indices[pos] = 0;
        }
    }
}

#[derive(Debug, Error)]
pub enum XyzCureError {
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("internal validation failure: {0}")]
    InternalValidationFailure(String),
}

/// A Clifford cure: the generator image map, its completed tableau, and
/// the transformed Hamiltonian (4-termwise stoquastic).
#[derive(Clone, Debug)]
pub struct XyzCliffordCure {
    pub map: GeneratorImageMap,
    pub tableau: CliffordTableau,
    pub transformed: Hamiltonian,
    /// 0-based edge-index parity of the X-side class, or `None` for the
    /// identity cure of an already stoquastic chain.
    pub x_side_parity: Option<usize>,
}

fn sign_of(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r < &Rat::zero() {
        -1
    } else {
        1
    }
}

/// Image table of the cure, parameterized by the X-side parity; boundary
/// factors on nonexistent sites are dropped.
fn thm5_images(
    n: usize,
    e: usize,
    x_side: bool,
    triple: &(Rat, Rat, Rat),
) -> ((SignedPauli, SignedPauli), SignedPauli) {
    if !x_side {
        // Z-side: XX -> Z_e, YY -> Z_e Z_{e+1}; signs fixed to +1 (any
        // consistent choice is valid for diagonal images)
        let xx = SignedPauli::plus(PauliString::z_on(n, e));
        let yy = SignedPauli::plus(PauliString::from_letters(
            n,
            &[(e, Letter::Z), (e + 1, Letter::Z)],
        ));
        let zz = xx.mul(&yy).negate();
        return ((xx, yy), zz);
    }
    // X-side: XX -> Dxx X_e X_{e+2}, YY -> Dyy X_{e-1} X_e X_{e+1} X_{e+2}
    // with the Δ signs chosen so every off-diagonal image coefficient
    // comes out nonpositive; ZZ is forced by the product relation.
    let (axx, ayy, azz) = triple;
    let (mut dxx, mut dyy) = (0i8, 0i8);
    'pick: for cand_xx in [-1i8, 1] {
        for cand_yy in [-1i8, 1] {
            let c1 = sign_of(axx) * cand_xx <= 0;
            let c2 = sign_of(ayy) * cand_yy <= 0;
            let c3 = -cand_xx * cand_yy * sign_of(azz) <= 0;
            if c1 && c2 && c3 {
                dxx = cand_xx;
                dyy = cand_yy;
                break 'pick;
            }
        }
    }
    assert!(dxx != 0, "eligibility guarantees a consistent sign choice");
    let mut xx_sites = vec![(e, Letter::X)];
    if e + 2 < n {
        xx_sites.push((e + 2, Letter::X));
    }
    let mut yy_sites = Vec::new();
    for site in [e.wrapping_sub(1), e, e + 1, e + 2] {
        if site < n {
            yy_sites.push((site, Letter::X));
        }
    }
    let xx = SignedPauli::new(dxx < 0, PauliString::from_letters(n, &xx_sites));
    let yy = SignedPauli::new(dyy < 0, PauliString::from_letters(n, &yy_sites));
    let zz = xx.mul(&yy).negate();
    ((xx, yy), zz)
}

/// Sign-cure an open XYZ chain by a Clifford transformation when one
/// edge-parity class has all coupling products nonnegative. The image map
/// is validated, completed to a tableau, and the transformed Hamiltonian
/// is certified 4-termwise stoquastic; any internal check failing is an
/// error that must never fire.
pub fn cure_xyz_clifford(chain: &XyzChain) -> Result<XyzCliffordCure, XyzCureError> {
    if chain.is_closed() {
        return Err(XyzCureError::NotApplicable(
            "closed chains: the XX and YY terms are not independent".into(),
        ));
    }
    let n = chain.sites();
    let h = chain.hamiltonian();

    if check_global(&h, DEFAULT_GLOBAL_BUDGET)
        .map_err(|e| XyzCureError::InternalValidationFailure(e.to_string()))?
        .is_stoquastic()
    {
        // nothing to cure: identity map on the chain generators
        let gens: Vec<PauliString> = (0..chain.edges())
            .flat_map(|e| {
                let (i, j) = chain.edge_sites(e);
                [
                    PauliString::from_letters(n, &[(i, Letter::X), (j, Letter::X)]),
                    PauliString::from_letters(n, &[(i, Letter::Y), (j, Letter::Y)]),
                ]
            })
            .collect();
        let map = GeneratorImageMap::identity(n, gens);
        let tableau = complete_tableau(&map)
            .map_err(|e| XyzCureError::InternalValidationFailure(e.to_string()))?;
        return Ok(XyzCliffordCure {
            map,
            tableau,
            transformed: h,
            x_side_parity: None,
        });
    }

    let class_ok = |parity: usize| {
        (0..chain.edges())
            .filter(|e| e % 2 == parity)
            .all(|e| {
                let (a, b, c) = chain.coupling(e);
                sign_of(a) * sign_of(b) * sign_of(c) >= 0
            })
    };
    // 0-based odd edges are the paper's even edges; prefer that class
    let x_parity = if class_ok(1) {
        1
    } else if class_ok(0) {
        0
    } else {
        return Err(XyzCureError::NotApplicable(
            "neither edge-parity class has all coupling products nonnegative".into(),
        ));
    };

    let mut pairs = Vec::new();
    let mut induced = Vec::new();
    let mut transformed_terms: Vec<PauliTerm> = Vec::new();
    for e in 0..chain.edges() {
        let (i, j) = chain.edge_sites(e);
        let x_side = e % 2 == x_parity;
        let ((img_xx, img_yy), img_zz) = thm5_images(n, e, x_side, chain.coupling(e));
        let src_xx = PauliString::from_letters(n, &[(i, Letter::X), (j, Letter::X)]);
        let src_yy = PauliString::from_letters(n, &[(i, Letter::Y), (j, Letter::Y)]);
        let src_zz = PauliString::from_letters(n, &[(i, Letter::Z), (j, Letter::Z)]);
        let (axx, ayy, azz) = chain.coupling(e);
        for (src, img, coeff) in [
            (src_xx.clone(), img_xx.clone(), axx),
            (src_yy.clone(), img_yy.clone(), ayy),
            (src_zz.clone(), img_zz.clone(), azz),
        ] {
            if !coeff.is_zero() {
                let c = if img.neg { -coeff.clone() } else { coeff.clone() };
                transformed_terms.push(PauliTerm::new(c, img.string.clone()));
            }
            let _ = src;
        }
        pairs.push((src_xx, img_xx));
        pairs.push((src_yy, img_yy));
        induced.push((src_zz, img_zz));
    }
    let mut map = GeneratorImageMap::new(n, pairs);
    for (s, t) in induced {
        map = map.with_induced(s, t);
    }
    validate_images(&map).map_err(|e| XyzCureError::InternalValidationFailure(e.to_string()))?;
    let tableau =
        complete_tableau(&map).map_err(|e| XyzCureError::InternalValidationFailure(e.to_string()))?;

    let transformed = Hamiltonian::new(n, transformed_terms)
        .map_err(|e| XyzCureError::InternalValidationFailure(e.to_string()))?;
    let via_tableau = h.conjugate_clifford(&tableau);
    if via_tableau != transformed {
        return Err(XyzCureError::InternalValidationFailure(
            "tableau conjugation disagrees with the image table".into(),
        ));
    }
    match check_termwise(&transformed, 4) {
        Ok(cert) if cert.is_yes() => {}
        Ok(_) => {
            return Err(XyzCureError::InternalValidationFailure(
                "transformed chain is not 4-termwise stoquastic".into(),
            ))
        }
        Err(e) => return Err(XyzCureError::InternalValidationFailure(e.to_string())),
    }
    Ok(XyzCliffordCure {
        map,
        tableau,
        transformed,
        x_side_parity: Some(x_parity),
    })
}

/// The three-qubit separation example with `b_12 = diag(2, 0, 1)` and
/// `b_23 = diag(1, 3, 2)`: single-qubit curing fails, the Clifford cure
/// succeeds.
pub fn h123_chain() -> XyzChain {
    XyzChain::open(vec![
        (rat(2), rat(0), rat(1)),
        (rat(1), rat(3), rat(2)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::spectrum;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn group_has_order_24_with_unit_determinants() {
        let all = SignedPermutation::all();
        assert_eq!(all.len(), 24);
        assert!(all.iter().all(|p| p.determinant() == 1));
    }

    #[test]
    fn ferromagnetic_chain_cured_by_identity() {
        let chain = XyzChain::open(vec![(rat(-1), rat(-1), rat(-1)); 3]);
        let cure = search_xyz_single_qubit(&chain).unwrap();
        assert!(cure
            .assignment
            .iter()
            .all(|p| *p == SignedPermutation::identity()));
        assert!(check_global(&cure.transformed.hamiltonian(), 24)
            .unwrap()
            .is_stoquastic());
    }

    #[test]
    fn antiferromagnet_cured_by_alternating_flips() {
        let chain = XyzChain::open(vec![(rat(1), rat(1), rat(1)); 3]);
        let cure = search_xyz_single_qubit(&chain).unwrap();
        for triple in &cure.transformed.couplings {
            assert_eq!(triple, &(rat(-1), rat(-1), rat(1)));
        }
        assert!(check_global(&cure.transformed.hamiltonian(), 24)
            .unwrap()
            .is_stoquastic());
    }

    #[test]
    fn h123_has_no_single_qubit_cure() {
        let chain = h123_chain();
        assert!(search_xyz_single_qubit(&chain).is_none());
        assert!(search_xyz_brute_force(&chain).is_none());
    }

    #[test]
    fn h123_clifford_cure_succeeds_and_preserves_spectrum() {
        let chain = h123_chain();
        let cure = cure_xyz_clifford(&chain).unwrap();
        assert_eq!(cure.x_side_parity, Some(1));
        let original = spectrum(&chain.hamiltonian()).unwrap();
        let transformed = spectrum(&cure.transformed).unwrap();
        assert_eq!(original.len(), 8);
        for (a, b) in original.iter().zip(&transformed) {
            assert!((a - b).abs() < 1e-9);
        }
        assert!(check_global(&cure.transformed, 24).unwrap().is_stoquastic());
    }

    #[test]
    fn ineligible_chain_is_rejected() {
        // 4 sites, edge products: e0 = -1, e1 = -1, e2 = +1; both parity
        // classes contain a negative product
        let chain = XyzChain::open(vec![
            (rat(1), rat(1), rat(-1)),
            (rat(1), rat(1), rat(-1)),
            (rat(1), rat(1), rat(1)),
        ]);
        assert!(matches!(
            cure_xyz_clifford(&chain),
            Err(XyzCureError::NotApplicable(_))
        ));
    }

    #[test]
    fn closed_chains_not_applicable() {
        let chain = XyzChain::closed(vec![(rat(1), rat(1), rat(1)); 3]);
        assert!(matches!(
            cure_xyz_clifford(&chain),
            Err(XyzCureError::NotApplicable(_))
        ));
    }

    #[test]
    fn zz_only_chain_returns_identity_map() {
        let chain = XyzChain::open(vec![(rat(0), rat(0), rat(1)), (rat(0), rat(0), rat(-2))]);
        let cure = cure_xyz_clifford(&chain).unwrap();
        assert_eq!(cure.x_side_parity, None);
        assert_eq!(cure.transformed, chain.hamiltonian());
        assert_eq!(cure.tableau, CliffordTableau::identity(3));
    }

    #[test]
    fn dp_agrees_with_brute_force() {
        let mut rng = StdRng::seed_from_u64(71);
        for _ in 0..30 {
            let sites = rng.gen_range(2..5);
            let couplings: Vec<(Rat, Rat, Rat)> = (0..sites - 1)
                .map(|_| {
                    (
                        rat(rng.gen_range(-2i64..=2)),
                        rat(rng.gen_range(-2i64..=2)),
                        rat(rng.gen_range(-2i64..=2)),
                    )
                })
                .collect();
            let chain = XyzChain::open(couplings);
            let dp = search_xyz_single_qubit(&chain);
            let brute = search_xyz_brute_force(&chain);
            assert_eq!(dp.is_some(), brute.is_some());
            if let Some(cure) = dp {
                // every returned cure is verified stoquastic
                assert!(check_global(&cure.transformed.hamiltonian(), 24)
                    .unwrap()
                    .is_stoquastic());
            }
        }
    }

    #[test]
    fn random_eligible_chains_cure() {
        let mut rng = StdRng::seed_from_u64(73);
        for _ in 0..20 {
            let sites = rng.gen_range(3..7);
            let chain = crate::corpus::random_eligible_xyz(sites, &mut rng);
            let cure = cure_xyz_clifford(&chain).unwrap();
            let s1 = spectrum(&chain.hamiltonian()).unwrap();
            let s2 = spectrum(&cure.transformed).unwrap();
            for (a, b) in s1.iter().zip(&s2) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn closed_chain_search_honors_cycle() {
        // uniform ferromagnet on a triangle: identity works
        let chain = XyzChain::closed(vec![(rat(-1), rat(-1), rat(-1)); 3]);
        let cure = search_xyz_single_qubit(&chain).unwrap();
        assert!(check_global(&cure.transformed.hamiltonian(), 24)
            .unwrap()
            .is_stoquastic());
    }

    /// The boundary drop keeps commutation intact: image of the mask used
    /// for the final X-side edge loses its out-of-range factor.
    #[test]
    fn boundary_factors_dropped() {
        let n = 3;
        let ((xx, yy), _) = thm5_images(n, 1, true, &(rat(1), rat(3), rat(2)));
        assert_eq!(xx.string, PauliString::x_on(3, 1));
        assert_eq!(
            yy.string,
            PauliString::from_letters(3, &[(0, Letter::X), (1, Letter::X), (2, Letter::X)])
        );

    }
}
