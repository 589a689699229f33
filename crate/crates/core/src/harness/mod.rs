//! Verification harness: fixtures, JSON instances, law sampling, sweeps and the CLI.

pub mod cli;
pub mod fixtures;
pub mod instance;
pub mod laws;
pub mod sweep;
pub mod verify;

use thiserror::Error;

use crate::coeff::AlgebraError;
use crate::constructions::ConstructionError;
use crate::graded::GradedError;
use crate::group_ring::GroupRingError;
use crate::groups::GroupError;
use crate::scalar::ScalarError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("unknown sweep family `{0}`")]
    UnknownFamily(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Input(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    GroupRing(#[from] GroupRingError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}
