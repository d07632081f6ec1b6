//! Exact optimization over potentials and tetrations: Qvol and its
//! certificates, tet-volume by branch and bound, the `T_v` family proof, and
//! volume-to-surface-area ratios of cylinders.

mod bnb;
mod family;
mod model;
mod qvol;
mod verify;
mod vsa;

pub use bnb::{tetvol, tetvol_with, TetvolResult};
pub use family::{certify_family, FamilyCertificate, FamilyReport, WINDOW};
pub use model::{tet_rank, tet_unrank};
pub use qvol::{qvol, qvol_with, LpResult};
pub use verify::{verify_lp, verify_tetvol};
pub use vsa::{
    cap_total, maximize_caps, shipped_phi42_potential, u_potential_value, vsa, vsa_threshold, vsa_with_threshold,
    VsaResult, PHI42_POTENTIAL,
};

use thiserror::Error;

use crate::lp::LpError;
use crate::phyllo::PhylloError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptError {
    #[error(transparent)]
    Lp(#[from] LpError),

    #[error(transparent)]
    Phyllo(#[from] PhylloError),

    #[error("v={v}: {check} failed")]
    FamilyCheck { v: u32, check: String },

    #[error("unsupported cylinder ({a}, {b}) for vsa")]
    Unsupported { a: u32, b: u32 },

    #[error("solver returned an invalid certificate: {0}")]
    Certificate(String),
}
