//! Flip groups and parity polynomials.
//!
//! Grouping the terms of a real Hamiltonian by their X-pattern `S`
//! partitions all matrix entries: `<x|H|y>` is non-zero only when
//! `x XOR y` equals the flip mask of some group. Within the group the
//! entry is a function of the in-state alone, expressed here in the
//! parity (Fourier) basis over the relevant coordinates — the form both
//! stoquasticity deciders consume directly.

use crate::bits::Mask;
use crate::pauli::PauliTerm;
use crate::ratio::{format_rat, Rat};
use num::Zero;
use serde::ser::SerializeStruct;
use serde::Serialize;
use std::collections::BTreeMap;

/// A real multilinear function `f(y) = sum_T c_T · (-1)^{|y AND T|}` over
/// a declared support mask.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParityPoly {
    support: Mask,
    coeffs: BTreeMap<Mask, Rat>,
}

impl ParityPoly {
    pub fn zero(support: Mask) -> Self {
        ParityPoly {
            support,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(support: Mask, c: Rat) -> Self {
        let mut p = ParityPoly::zero(support);
        p.add_term(Mask::zeros(p.support.len()), c);
        p
    }

    /// Add `c · (-1)^{<y, t>}`; `t` must lie inside the support.
    pub fn add_term(&mut self, t: Mask, c: Rat) {
        assert!(t.is_subset_of(&self.support) || t.is_zero());
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(t.clone()).or_insert_with(Rat::zero);
        *entry += c;
        // keep the map sparse so degree checks see true support
        if entry.is_zero() {
            self.coeffs.remove(&t);
        }
    }

    pub fn support(&self) -> &Mask {
        &self.support
    }

    pub fn coeffs(&self) -> &BTreeMap<Mask, Rat> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `|T|` with a non-zero coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(|t| t.popcount()).max().unwrap_or(0)
    }

    pub fn eval(&self, y: &Mask) -> Rat {
        let mut acc = Rat::zero();
        for (t, c) in &self.coeffs {
            if y.parity_and(t) {
                acc -= c;
            } else {
                acc += c;
            }
        }
        acc
    }

    pub fn negate(&self) -> ParityPoly {
        ParityPoly {
            support: self.support.clone(),
            coeffs: self.coeffs.iter().map(|(t, c)| (t.clone(), -c.clone())).collect(),
        }
    }

    pub fn add_constant(&mut self, c: Rat) {
        self.add_term(Mask::zeros(self.support.len()), c);
    }

    /// Exact maximum over assignments of the support coordinates, along
    /// with the lexicographically smallest maximizer (coordinates outside
    /// the support fixed to zero).
    pub fn max_over_support(&self) -> (Rat, Mask) {
        let mut best: Option<(Rat, Mask)> = None;
        for y in self.support.subsets() {
            let v = self.eval(&y);
            match &best {
                Some((bv, _)) if *bv >= v => {}
                _ => best = Some((v, y)),
            }
        }
        best.expect("support enumeration is never empty")
    }

    /// Exact minimum over assignments, lexicographically smallest argmin.
    pub fn min_over_support(&self) -> (Rat, Mask) {
        let (m, arg) = self.negate().max_over_support();
        (-m, arg)
    }
}

/// All terms flipping a fixed qubit subset `S`, with the machinery to
/// evaluate the entry function `f_S(a, y) = <a'y|H|ay>` where `a'` is `a`
/// with the bits of `S` flipped.
#[derive(Clone, Debug)]
pub struct FlipGroup {
    s: Mask,
    relevant: Mask,
    terms: Vec<PauliTerm>,
    /// per-term precomputation: (z outside S, z inside S, signed coeff)
    parts: Vec<(Mask, Mask, Rat)>,
}

impl Serialize for ParityPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let support: Vec<usize> = self.support.iter_ones().collect();
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(t, c)| {
                serde_json::json!({
                    "parity": t.iter_ones().collect::<Vec<usize>>(),
                    "coeff": format_rat(c),
                })
            })
            .collect();
        let mut out = s.serialize_struct("ParityPoly", 2)?;
        out.serialize_field("support", &support)?;
        out.serialize_field("coeffs", &coeffs)?;
        out.end()
    }
}

impl FlipGroup {
    /// Build from terms whose x-mask all equal `s`. Every term must be
    /// real (even Y-count).
    pub fn new(s: Mask, terms: Vec<PauliTerm>) -> Self {
        let n = s.len();
        let mut relevant = s.clone();
        let mut parts = Vec::with_capacity(terms.len());
        for t in &terms {
            debug_assert_eq!(t.string.x_mask(), &s);
            debug_assert!(t.is_real());
            relevant = relevant.or(t.string.z_mask());
            let z_out = t.string.z_mask().minus(&s);
            let z_in = t.string.z_mask().and(&s);
            // i^{y_count} = (-1)^{y_count/2} for real terms
            let sign = if (t.string.y_count() / 2) % 2 == 1 {
                -t.coeff.clone()
            } else {
                t.coeff.clone()
            };
            parts.push((z_out, z_in, sign));
        }
        let _ = n;
        FlipGroup {
            s,
            relevant,
            terms,
            parts,
        }
    }

    /// The flip mask `S` (empty for the diagonal group).
    pub fn s_mask(&self) -> &Mask {
        &self.s
    }

    /// Relevant support `R = S ∪ (union of member Z/Y supports)`.
    pub fn relevant(&self) -> &Mask {
        &self.relevant
    }

    /// Coordinates the entry function varies over besides the pair label.
    pub fn outer(&self) -> Mask {
        self.relevant.minus(&self.s)
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn is_diagonal(&self) -> bool {
        self.s.is_zero()
    }

    /// Entry polynomial `f_S(a, ·)` over `R \ S` for a fixed assignment
    /// `a` of the bits inside `S` (given as a full-length mask whose bits
    /// outside `S` are ignored).
    pub fn entry_poly(&self, a: &Mask) -> ParityPoly {
        let mut poly = ParityPoly::zero(self.outer());
        for (z_out, z_in, coeff) in &self.parts {
            let c = if a.parity_and(z_in) {
                -coeff.clone()
            } else {
                coeff.clone()
            };
            poly.add_term(z_out.clone(), c);
        }
        poly
    }

    /// Direct entry evaluation `<b XOR S | H_group | b>` for a full basis
    /// string `b`.
    pub fn entry(&self, b: &Mask) -> Rat {
        let mut acc = Rat::zero();
        for (z_out, z_in, coeff) in &self.parts {
            let parity = b.parity_and(z_out) ^ b.parity_and(z_in);
            if parity {
                acc -= coeff;
            } else {
                acc += coeff;
            }
        }
        acc
    }

    /// Canonical pair representatives: assignments of the `S` bits whose
    /// first set bit of `S` is 0, enumerated in lexicographic order of the
    /// embedded strings. The diagonal group yields the single empty
    /// assignment.
    pub fn pair_representatives(&self) -> Vec<Mask> {
        if self.s.is_zero() {
            return vec![Mask::zeros(self.s.len())];
        }
        let first = self.s.first_set_bit().expect("non-empty flip mask");
        self.s.subsets().filter(|a| !a.get(first)).collect()
    }
}
