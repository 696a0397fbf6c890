//! Hardness-reduction instance generators with exhaustive oracles.
//!
//! Every generator is paired with an independent brute-force oracle so
//! equivalences can be verified end to end: Ising ground states against
//! flip-group maxima, the planar-spin-glass threshold question against
//! the global stoquasticity verdict of the generated Hamiltonian, and
//! frustration-free decomposability against the termwise decider.

use crate::bits::Mask;
use crate::hamiltonian::{Hamiltonian, HamiltonianError};
use crate::hsum::GraphFile;
use crate::pauli::{Letter, PauliString, PauliTerm};
use crate::ratio::{rat, rat_abs, Rat};
use crate::termwise::check_termwise;
use num::Zero;
use serde::Serialize;
use thiserror::Error;

/// An Ising instance: weighted simple graph, optionally with unit local
/// fields on every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsingInstance {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, Rat)>,
    pub unit_fields: bool,
}

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("instance with {0} vertices exceeds the enumeration budget {1}")]
    SizeBudget(usize, usize),
    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    EpsilonOutOfRange(String),
    #[error("input Hamiltonian must be diagonal")]
    NotDiagonal,
    #[error("input Hamiltonian must be traceless")]
    NotTraceless,
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
}

pub const ENUMERATION_BUDGET: usize = 24;

impl IsingInstance {
    pub fn from_graph(g: &GraphFile, unit_fields: bool) -> Self {
        IsingInstance {
            vertices: g.vertices,
            edges: g.edges.clone(),
            unit_fields,
        }
    }

    /// Energy of a spin configuration, spins given as bits with
    /// `bit = 0 -> S = +1`.
    pub fn energy(&self, config: &Mask) -> Rat {
        let spin = |v: usize| if config.get(v) { rat(-1) } else { rat(1) };
        let mut acc = Rat::zero();
        for (u, v, j) in &self.edges {
            acc += j.clone() * spin(*u) * spin(*v);
        }
        if self.unit_fields {
            for v in 0..self.vertices {
                acc += spin(v);
            }
        }
        acc
    }

    /// Exact minimum energy and the lexicographically smallest minimizing
    /// configuration (as spin values, `+1`/`-1` per vertex).
    pub fn ground(&self) -> Result<(Rat, Vec<i8>), ReductionError> {
        if self.vertices > ENUMERATION_BUDGET {
            return Err(ReductionError::SizeBudget(self.vertices, ENUMERATION_BUDGET));
        }
        let n = self.vertices.max(1);
        let mut best: Option<(Rat, Mask)> = None;
        for config in Mask::lex_iter(if self.vertices == 0 { 0 } else { n }) {
            let e = self.energy(&config);
            match &best {
                Some((be, _)) if *be <= e => {}
                _ => best = Some((e, config)),
            }
        }
        let (e, config) = best.expect("enumeration covers at least one configuration");
        let spins = (0..self.vertices)
            .map(|v| if config.get(v) { -1 } else { 1 })
            .collect();
        Ok((e, spins))
    }

    /// Sum of coupling magnitudes; the instance is frustrated iff the
    /// ground energy exceeds `-sum |J|` (no configuration satisfies every
    /// edge simultaneously). Fields are excluded, matching the
    /// unfrustrated-bound convention for pure Ising instances.
    pub fn coupling_magnitude_sum(&self) -> Rat {
        self.edges.iter().map(|(_, _, j)| rat_abs(j)).sum()
    }
}

/// Exact minimum of `sum_{(i,j) in E} S_i S_j + sum_i S_i` over spin
/// configurations, with the lexicographically smallest minimizer
/// (enumeration order prefers `S = +1`). Couplings of the instance are
/// ignored: the planar-spin-glass question is posed with unit weights.
pub fn solve_ps(instance: &IsingInstance) -> Result<(Rat, Vec<i8>), ReductionError> {
    let unit = IsingInstance {
        vertices: instance.vertices,
        edges: instance
            .edges
            .iter()
            .map(|(u, v, _)| (*u, *v, rat(1)))
            .collect(),
        unit_fields: true,
    };
    unit.ground()
}

/// Report attached to generated instances.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub construction: String,
    pub oracle_answer: String,
    pub hamiltonian_answer: String,
    pub agreement: bool,
}

/// The flip-qubit construction `X_0 ⊗ (E_0 - H_Ising)` on
/// `vertices + 1` qubits, with `E_0` computed exactly by enumeration.
/// Also reports whether the instance is frustrated.
pub fn gen_prop1(instance: &IsingInstance) -> Result<(Hamiltonian, bool), ReductionError> {
    let (e0, _) = instance.ground()?;
    let n = instance.vertices + 1;
    let mut terms = vec![PauliTerm::new(e0.clone(), PauliString::x_on(n, 0))];
    for (u, v, j) in &instance.edges {
        terms.push(PauliTerm::new(
            -j.clone(),
            PauliString::from_letters(n, &[(0, Letter::X), (u + 1, Letter::Z), (v + 1, Letter::Z)]),
        ));
    }
    if instance.unit_fields {
        for v in 0..instance.vertices {
            terms.push(PauliTerm::new(
                rat(-1),
                PauliString::from_letters(n, &[(0, Letter::X), (v + 1, Letter::Z)]),
            ));
        }
    }
    let frustrated = e0 > -instance.coupling_magnitude_sum();
    let h = Hamiltonian::new(n, terms)?.with_meta("prop1", "flip-qubit Ising construction");
    Ok((h, frustrated))
}

/// Decide whether a diagonal traceless Hamiltonian admits an m-local
/// frustration-free decomposition, by the correspondence with
/// (m+1)-termwise stoquasticity of `X_0 ⊗ (E_0 - H_class)`.
pub fn check_frustration_free_decomposition(
    h_class: &Hamiltonian,
    m: usize,
) -> Result<bool, ReductionError> {
    if !h_class.is_diagonal() {
        return Err(ReductionError::NotDiagonal);
    }
    if !h_class.offset().is_zero() {
        return Err(ReductionError::NotTraceless);
    }
    let n_class = h_class.num_qubits();
    if n_class > ENUMERATION_BUDGET {
        return Err(ReductionError::SizeBudget(n_class, ENUMERATION_BUDGET));
    }
    // E_0 by enumeration over the diagonal support
    let groups = h_class.flip_groups()?;
    let e0 = match groups.get(&Mask::zeros(n_class)) {
        Some(diag) => {
            let poly = diag.entry_poly(&Mask::zeros(n_class));
            poly.min_over_support().0
        }
        None => Rat::zero(),
    };
    let n = n_class + 1;
    let mut terms = vec![PauliTerm::new(e0, PauliString::x_on(n, 0))];
    for t in h_class.terms() {
        let shifted: Vec<(usize, Letter)> = std::iter::once((0, Letter::X))
            .chain(t.string.z_mask().iter_ones().map(|q| (q + 1, Letter::Z)))
            .collect();
        terms.push(PauliTerm::new(
            -t.coeff.clone(),
            PauliString::from_letters(n, &shifted),
        ));
    }
    let h = Hamiltonian::new(n, terms)?;
    Ok(check_termwise(&h, m + 1)?.is_yes())
}

/// The coNP-hardness construction on `vertices + 1` qubits:
/// `(K + eps) X_f - sum_{(i,j)} Z_i Z_j X_f - sum_i Z_i X_f` with the
/// flip qubit `f` last. Globally stoquastic iff the unit-coupling
/// spin-glass minimum exceeds `K`.
pub fn gen_conp(
    instance: &IsingInstance,
    k: i64,
    eps: &Rat,
) -> Result<Hamiltonian, ReductionError> {
    if eps <= &Rat::zero() || eps >= &rat(1) {
        return Err(ReductionError::EpsilonOutOfRange(crate::ratio::format_rat(eps)));
    }
    let nv = instance.vertices;
    let n = nv + 1;
    let flip = nv;
    let mut terms = vec![PauliTerm::new(
        rat(k) + eps,
        PauliString::x_on(n, flip),
    )];
    for (u, v, _) in &instance.edges {
        terms.push(PauliTerm::new(
            rat(-1),
            PauliString::from_letters(n, &[(*u, Letter::Z), (*v, Letter::Z), (flip, Letter::X)]),
        ));
    }
    for v in 0..nv {
        terms.push(PauliTerm::new(
            rat(-1),
            PauliString::from_letters(n, &[(v, Letter::Z), (flip, Letter::X)]),
        ));
    }
    Ok(Hamiltonian::new(n, terms)?.with_meta("conp", "spin-glass threshold construction"))
}
