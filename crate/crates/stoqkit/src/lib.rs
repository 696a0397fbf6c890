//! Stoquasticity deciders, sign-curing constructions, hardness-instance
//! generators, and path-integral Monte Carlo for k-local qubit
//! Hamiltonians.
//!
//! The deciders ([`stoq_check`], [`termwise`]) work entirely over exact
//! rationals and return constructive certificates; [`decompose`] and
//! [`stoqma`] build the verifier-facing decomposition of a globally
//! stoquastic Hamiltonian; [`curing`] and [`xyz`] search for and
//! construct sign-curing basis changes; [`reductions`], [`cnf`], [`hc`],
//! and [`gadgets`] generate hardness instances together with exhaustive
//! oracles; [`qmc`] samples thermal expectations with sign diagnostics;
//! [`verify`] replays every module's invariants on seeded corpora.

pub mod bits;
pub mod clifford;
pub mod cnf;
pub mod corpus;
pub mod curing;
pub mod decompose;
pub mod dense;
pub mod flip;
pub mod gadgets;
pub mod hc;
pub mod hamiltonian;
pub mod hsum;
pub mod pauli;
pub mod qmc;
pub mod ratio;
pub mod reductions;
pub mod simplex;
pub mod stoq_check;
pub mod stoqma;
pub mod termwise;
pub mod verify;
pub mod xyz;

/// Cap the global worker pool; a no-op if a pool already exists.
pub fn configure_thread_pool(threads: usize) {
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
}
