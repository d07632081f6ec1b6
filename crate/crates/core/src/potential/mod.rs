//! Volume potentials (2-cochains on vertex triples), their volume forms, and
//! the goodness check `vol ≤ 1` that turns a potential into a tet-volume
//! lower bound.

mod cylinder;
mod gap;
mod icos;
mod volume;

pub use cylinder::{ClassKey, CylinderClasses, CylinderPotential};
pub use gap::{find_gap_potential, gap_class, GapPotential, GapSearch, CLAMP};
pub use icos::reconstruct_icos_potential;
pub use volume::VolumePotential;

use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{canonicalize, Chain3, ComplexError, Triation, Vertex};
use crate::scalar::Scalar;

/// An antisymmetric function on ordered triples, given by its values on
/// sorted triples.
pub trait Potential<S: Scalar>: Sync {
    /// Value on `a < b < c`.
    fn sorted_value(&self, t: [Vertex; 3]) -> S;

    /// Value on an ordered triple of distinct labels.
    fn value(&self, t: [Vertex; 3]) -> Result<S, ComplexError> {
        let (sorted, sign) = canonicalize(t)?;
        let x = self.sorted_value(sorted);
        Ok(if sign > 0 { x } else { -x })
    }
}

impl<S: Scalar, P: Potential<S> + ?Sized> Potential<S> for &P {
    fn sorted_value(&self, t: [Vertex; 3]) -> S {
        (**self).sorted_value(t)
    }
}

/// The zero potential.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroPotential;

impl<S: Scalar> Potential<S> for ZeroPotential {
    fn sorted_value(&self, _: [Vertex; 3]) -> S {
        S::zero()
    }
}

/// `vol(abcd) = ρ(bcd) - ρ(acd) + ρ(abd) - ρ(abc)` on a sorted tet.
pub fn vol_sorted<S: Scalar, P: Potential<S> + ?Sized>(rho: &P, t: [Vertex; 4]) -> S {
    let [a, b, c, d] = t;
    let mut v = rho.sorted_value([b, c, d]);
    v -= rho.sorted_value([a, c, d]);
    v += rho.sorted_value([a, b, d]);
    v -= rho.sorted_value([a, b, c]);
    v
}

/// Volume form on an ordered tet; alternating in the vertex order.
pub fn vol_form<S: Scalar, P: Potential<S> + ?Sized>(rho: &P, tet: [Vertex; 4]) -> Result<S, ComplexError> {
    let (sorted, sign) = canonicalize(tet)?;
    let v = vol_sorted(rho, sorted);
    Ok(if sign > 0 { v } else { -v })
}

/// `ρ(σ)`: the sum of `ρ` over the oriented faces.
pub fn eval_surface<S: Scalar, P: Potential<S> + ?Sized>(rho: &P, sigma: &Triation) -> S {
    let mut total = S::zero();
    for &(t, sign) in sigma.canonical_faces() {
        let x = rho.sorted_value(t);
        if sign > 0 {
            total += x;
        } else {
            total -= x;
        }
    }
    total
}

/// Coefficient rings a chain can be paired with a potential over `S`.
pub trait Coefficient<S: Scalar>: Clone {
    fn to_scalar(&self) -> S;
}

impl<S: Scalar> Coefficient<S> for i64 {
    fn to_scalar(&self) -> S {
        S::from_int(*self)
    }
}

impl<S: Scalar> Coefficient<S> for S {
    fn to_scalar(&self) -> S {
        self.clone()
    }
}

/// `vol_ρ(τ)`: the volume form summed over the chain with its coefficients.
pub fn eval_chain<S: Scalar, C: Coefficient<S> + num_traits::Signed, P: Potential<S> + ?Sized>(rho: &P, tau: &Chain3<C>) -> S {
    let mut total = S::zero();
    for (t, c) in tau.iter() {
        total += vol_sorted(rho, *t) * c.to_scalar();
    }
    total
}

/// A sorted tet whose volume has absolute value above 1.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("vol{tet:?} = {value}")]
pub struct Violation<S: Scalar> {
    pub tet: [Vertex; 4],
    pub value: S,
}

/// Checks `|vol_ρ| ≤ 1` on every 4-subset of `vertices`. Returns the number of
/// tets checked, or the lexicographically first violation.
pub fn check_good<S: Scalar, P: Potential<S> + ?Sized>(rho: &P, vertices: &[Vertex]) -> Result<u64, Violation<S>> {
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    let n = vs.len();
    let one = S::one();
    let first = (0..n)
        .into_par_iter()
        .map(|i| {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        let tet = [vs[i], vs[j], vs[k], vs[l]];
                        let value = vol_sorted(rho, tet);
                        if (value.abs() - one.clone()).is_pos() {
                            return Some(Violation { tet, value });
                        }
                    }
                }
            }
            None
        })
        .find_first(Option::is_some)
        .flatten();
    match first {
        Some(v) => Err(v),
        None => Ok(binomial(n as u64, 4)),
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn zero_potential() {
        let z = ZeroPotential;
        assert_eq!(vol_form::<BigRational, _>(&z, [3, 1, 4, 0]).unwrap(), BigRational::from_int(0));
        assert_eq!(check_good::<BigRational, _>(&z, &(0..10).collect::<Vec<_>>()), Ok(210));
        assert!(vol_form::<f64, _>(&z, [1, 1, 2, 3]).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(36, 4), 58_905);
        assert_eq!(binomial(20, 4), 4845);
        assert_eq!(binomial(3, 4), 0);
    }
}
