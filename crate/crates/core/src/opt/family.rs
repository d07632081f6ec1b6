use std::ops::RangeInclusive;

use num_rational::BigRational;

use super::OptError;
use crate::complex::cone;
use crate::phyllo::build_t;
use crate::potential::{check_good, eval_surface, GapPotential, CLAMP};

/// Goodness of a gap potential is checked on `0..WINDOW`.
pub const WINDOW: u32 = 36;

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyCertificate {
    pub v: u32,
    /// `ρ(T_v)`, a lower bound.
    pub surface: BigRational,
    /// Size of the cone from a maximum-degree vertex, an upper bound.
    pub cone_size: u64,
    pub tetvol: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    /// Number of 4-subsets of the window whose volume was checked.
    pub window_tets: u64,
    pub rows: Vec<FamilyCertificate>,
}

/// Proves `tetvol(T_v) = 2v - 10` for each `v` from a good gap potential:
/// the potential bounds tet-volume below by `ρ(T_v)`, the cone bounds it above.
///
/// A gap potential's volume on a 4-subset depends only on the clamped gaps of
/// the subset, and every clamped pattern already occurs inside the window, so
/// one goodness check covers every `v`.
pub fn certify_family(range: RangeInclusive<u32>, rho: &GapPotential<BigRational>) -> Result<FamilyReport, OptError> {
    let fail = |v: u32, check: &str| OptError::FamilyCheck { v, check: check.to_string() };
    if let Some(v) = range.clone().find(|&v| v < 13) {
        return Err(fail(v, "T_v needs v >= 13"));
    }
    let first = *range.start();
    let widest = 3 * CLAMP + 1;
    if widest > WINDOW {
        return Err(fail(first, "window covers every clamped gap pattern"));
    }
    let window: Vec<u32> = (0..WINDOW).collect();
    let window_tets = check_good(rho, &window).map_err(|e| fail(first, &format!("goodness ({e})")))?;
    let mut rows = Vec::new();
    for v in range {
        let t = build_t(v)?;
        let target = 2 * v as i64 - 10;
        let surface = eval_surface(rho, &t);
        if surface != BigRational::from_integer(target.into()) {
            return Err(fail(v, &format!("rho(T_v) = {target} (got {surface})")));
        }
        let tau = cone(&t, t.max_degree_vertex()).map_err(|e| fail(v, &e.to_string()))?;
        if tau.boundary() != t.chain::<i64>() {
            return Err(fail(v, "cone boundary"));
        }
        let cone_size = tau.len() as u64;
        if cone_size as i64 != target {
            return Err(fail(v, &format!("cone size = {target} (got {cone_size})")));
        }
        rows.push(FamilyCertificate { v, surface, cone_size, tetvol: cone_size });
    }
    Ok(FamilyReport { window_tets, rows })
}
