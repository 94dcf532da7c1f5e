//! Stability hierarchy for tuples under simultaneous conjugation.

mod classify;
mod hm;
mod orbit;
mod pool;
mod rep;

use thiserror::Error;

use crate::linalg::LinalgError;
use crate::onepar::OneParamError;

pub use classify::{
    classify, classify_with_seed, destabilize, flags_of, ClassificationReport, DestabWitness, Dims, Flags, Labels,
    NOTE_CENTRAL_ACTION, NOTE_NO_RATIONAL_SUBSPACE, NOTE_RANK_ONE, NOTE_STABLE_EQUICENTRAL,
};
pub use hm::{destab_report, h_approx, hm_crosscheck, HApprox, HmReport, LambdaCheck};
pub use orbit::{intertwiners, orbit_member, OrbitMembership, OrbitMethod, GRID_MAX_DIM, RANDOM_TRIALS};
pub use pool::{candidate_subspaces, conjugator_pool, invariant_subspaces};
pub use rep::{classify_rep, evaluate_word, Letter, RepPresentation, RepReport, NOTE_GOOD_CENTRAL};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error(transparent)]
    OneParam(#[from] OneParamError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("images violate relator {relator}")]
    NotARepresentation { relator: usize },
    #[error("presentation has {expected} generators, got {found} images")]
    GeneratorCount { expected: usize, found: usize },
    #[error("relator {relator}: {reason}")]
    BadRelator { relator: usize, reason: String },
    #[error("internal: {0}")]
    Internal(String),
}
