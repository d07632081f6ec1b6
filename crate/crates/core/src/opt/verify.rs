//! Independent re-checks of solver output using only chains and potentials.

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::bnb::TetvolResult;
use super::qvol::LpResult;
use crate::complex::Triation;
use crate::potential::{check_good, eval_surface};
use crate::scalar::ceil_int;

/// The potential is good on `0..v`, the chain tetrates `σ`, and both reach the optimum.
pub fn verify_lp(sigma: &Triation, result: &LpResult) -> bool {
    let vertices: Vec<u32> = (0..sigma.v()).collect();
    check_good(&result.dual_certificate, &vertices).is_ok()
        && eval_surface(&result.dual_certificate, sigma) == result.optimum
        && result.primal_certificate.boundary() == sigma.chain::<BigRational>()
        && result.primal_certificate.mass() == result.optimum
}

/// The tetration has unit coefficients, bounds `σ`, has `value` tets, and
/// respects the verified Qvol bound.
pub fn verify_tetvol(sigma: &Triation, result: &TetvolResult) -> bool {
    let tau = &result.tetration;
    let unit = tau.iter().all(|(_, c)| c.abs().is_one());
    let floor = ceil_int(&result.qvol.optimum);
    unit && tau.boundary() == sigma.chain::<i64>()
        && tau.len() as u64 == result.value
        && result.lower_bound_used == result.qvol.optimum
        && verify_lp(sigma, &result.qvol)
        && BigRational::from_integer(result.value.into()) >= BigRational::from_integer(floor.clone())
        && result.lower_bound <= result.value
        && (!result.proved || result.lower_bound == result.value)
}
