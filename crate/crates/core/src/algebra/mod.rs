//! Exact Fock representations of the Heisenberg and Clifford algebras and
//! the super-Fock model of `⊕_n H_*(Hilb^n X)`.

mod boson;
mod fermion;
mod relations;
mod state;
mod superfock;

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

pub use boson::{bilinear_b, BosonKey, BosonicState, CentralScalar};
pub use fermion::{FermionKey, FermionicState};
pub use relations::{
    check_adjointness, check_boson_derivation, check_bilinear_closed_form,
    check_fermion_derivation, commutator_check, highest_weight_span, random_samples,
    Counterexample, FockKind, RelationCheck, RelationOutcome, RelationReport, SpanReport,
    WeightSpan,
};
pub use state::State;
pub use superfock::{
    super_basis, super_character, super_character_brute_force, CentralCharges, GeneratorSpec,
    Parity, Slot, SuperFockState, SuperKey,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("central charge undefined for mode {0}")]
    CentralChargeUndefined(u32),
    #[error("central charge for mode {0} must be nonzero")]
    ZeroCentralCharge(u32),
    #[error("central scalar must be nonzero")]
    ZeroCentralScalar,
    #[error("cohomological degree {0} outside 0..=4")]
    InvalidDegree(u8),
}

/// Mode indices start at 1.
pub(crate) fn check_mode(i: u32) {
    assert!(i >= 1, "mode index must be >= 1, got {i}");
}

/// `(-1)^k` as a rational.
pub(crate) fn sign(k: usize) -> BigRational {
    if k % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}
