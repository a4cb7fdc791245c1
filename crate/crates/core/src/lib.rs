//! Deformed Heisenberg algebras realized through deformed oscillators.
//!
//! The q-deformed relation `XP - qPX = i` and its two-parameter extension
//! `pXP - qPX = i` are mapped onto oscillator algebras
//! `[N, a±] = ±a±`, `H(N)a⁻a⁺ - G(N)a⁺a⁻ = 1` with structure function
//! `a⁺a⁻ = Φ(N)`. The crate provides:
//!
//! - [`dsf`]: q-, (p,q)- and symmetric brackets, the closed-form structure
//!   functions of the eight coefficient families, and the reconstruction of
//!   `Φ(n)` from an arbitrary `(G, H)` pair.
//! - [`families`]: the coefficient functions `f, g, h, k`, the operator
//!   functions `H(N), G(N)`, and the general `c(0), d(0)` solution.
//! - [`fock`]: truncated Fock-space matrices for `a⁺, a⁻, N, X, P` and
//!   residual checks of every defining relation.
//! - [`spectra`]: energy levels, ground-state energies and accidental
//!   degeneracy roots.
//! - [`symmetry`]: `q ↔ q⁻¹` symmetrized structure functions (complex `q` on
//!   the unit circle) and diagonal pseudo-Hermiticity metrics.
//!
//! Units: `ħ = 1`, energies in units of `ħω`.

pub mod dsf;
pub mod error;
pub mod families;
pub mod fock;
pub mod spectra;
pub mod symmetry;

pub use dsf::{
    bracket_pq, bracket_q, bracket_sym, phi_closed, phi_from_gh, phi_ratio_check,
    DeformationParams, Family, FamilyId, SfKind, Specialization, StructureFunction,
};
pub use error::{Error, Result};
pub use families::{
    coefficients, general_gh, gh_pair, verify_ratio_recursions, CoefficientSet, GhPair,
};
pub use fock::{
    build_rep, build_rep_from_phi, verify_gh_relation, verify_heisenberg, verify_ladder, FockRep,
    Residual, HBAR,
};
pub use spectra::{
    degeneracy_equation, energy, find_degeneracy, ground_state_table, spectrum, DegeneracyRoot,
    DegeneracySearch, SpectrumReport,
};
pub use symmetry::{
    find_metric, hermiticity_defect, phi_symmetrized, phi_symmetrized_pq, symmetrized_forms,
    MetricDiagonal, SymmetrizedForms, Target,
};
