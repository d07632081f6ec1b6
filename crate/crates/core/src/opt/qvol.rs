use std::collections::BTreeMap;

use num_rational::BigRational;

use super::model::{tet_unrank, TetModel};
use super::OptError;
use crate::complex::{Chain3, Triation, Vertex};
use crate::lp::{solve_certified, Checkpoint, CertifiedStats, LpOptions};
use crate::potential::VolumePotential;

/// Qvol of a triation with both sides of the duality.
#[derive(Clone, Debug)]
pub struct LpResult {
    pub optimum: BigRational,
    /// A good potential with `ρ(σ)` equal to the optimum.
    pub dual_certificate: VolumePotential<BigRational>,
    /// A fractional tetration of `σ` whose mass is the optimum.
    pub primal_certificate: Chain3<BigRational>,
    /// Weak-duality checkpoints of the exact run.
    pub trace: Vec<Checkpoint<BigRational>>,
    pub stats: CertifiedStats,
}

/// An LP relaxation with some tet coefficients prescribed.
pub(crate) struct NodeSolution {
    /// Mass of the prescribed tets plus the LP optimum.
    pub bound: BigRational,
    /// Full chain, prescribed tets included.
    pub chain: Chain3<BigRational>,
    pub potential: VolumePotential<BigRational>,
    pub trace: Vec<Checkpoint<BigRational>>,
    pub stats: CertifiedStats,
}

pub(crate) fn solve_node(
    sigma: &Triation,
    gauge: Vertex,
    fixed: &BTreeMap<u64, i64>,
    opts: &LpOptions,
) -> Result<NodeSolution, OptError> {
    let float = TetModel::<f64>::new(sigma, gauge, fixed);
    let exact = TetModel::<BigRational>::new(sigma, gauge, fixed);
    let (sol, stats) = solve_certified(&float, &exact, opts)?;
    let mut chain = Chain3::new();
    let mut fixed_mass = 0i64;
    for (&id, &c) in fixed {
        if c != 0 {
            chain.add_canonical(tet_unrank(id), BigRational::from_integer(c.into()));
            fixed_mass += c.abs();
        }
    }
    for (id, x) in sol.primal {
        chain.add_canonical(tet_unrank(id), x);
    }
    let mut potential = VolumePotential::new();
    for (r, y) in sol.duals.into_iter().enumerate() {
        potential.set(exact.triple(r), y).expect("row triples are distinct");
    }
    Ok(NodeSolution {
        bound: sol.objective + BigRational::from_integer(fixed_mass.into()),
        chain,
        potential,
        trace: sol.trace,
        stats,
    })
}

/// `Qvol(σ)`: the largest `ρ(σ)` over good potentials, solved exactly.
pub fn qvol(sigma: &Triation) -> Result<LpResult, OptError> {
    qvol_with(sigma, &LpOptions::default())
}

pub fn qvol_with(sigma: &Triation, opts: &LpOptions) -> Result<LpResult, OptError> {
    let node = solve_node(sigma, sigma.max_degree_vertex(), &BTreeMap::new(), opts)?;
    Ok(LpResult {
        optimum: node.bound,
        dual_certificate: node.potential,
        primal_certificate: node.chain,
        trace: node.trace,
        stats: node.stats,
    })
}
