use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::model::tet_rank;
use super::qvol::{solve_node, LpResult};
use super::OptError;
use crate::complex::{cone, Chain3, Triation};
use crate::lp::{LpError, LpOptions};
use crate::scalar::ceil_int;

/// Tet-volume of a triation, or the best bracket found within the node budget.
#[derive(Clone, Debug)]
pub struct TetvolResult {
    /// Size of `tetration`.
    pub value: u64,
    pub tetration: Chain3<i64>,
    /// Qvol, the root relaxation.
    pub lower_bound_used: BigRational,
    pub qvol: LpResult,
    /// Proven lower bound; equals `value` when `proved`.
    pub lower_bound: u64,
    pub proved: bool,
    /// LP relaxations solved, the root included.
    pub nodes: u64,
}

fn ceil_u64(x: &BigRational) -> u64 {
    ceil_int(x).to_u64().unwrap_or(0)
}

/// The chain as a tetration when every coefficient is 0 or ±1.
fn integral(chain: &Chain3<BigRational>) -> Option<Chain3<i64>> {
    let mut out = Chain3::new();
    for (t, c) in chain.iter() {
        if !c.is_integer() || c.abs() > BigRational::one() {
            return None;
        }
        out.add_canonical(*t, if c.is_positive() { 1 } else { -1 });
    }
    Some(out)
}

/// Branches on the tet whose coefficient is farthest from {-1, 0, 1}, the
/// first such tet in sorted order on ties. Children come back farthest value
/// first, so popping from the end explores the nearest value first.
fn children(fixed: &BTreeMap<u64, i64>, chain: &Chain3<BigRational>) -> Vec<BTreeMap<u64, i64>> {
    let dist = |x: &BigRational, k: i64| (x - BigRational::from_integer(k.into())).abs();
    let mut pick: Option<([u32; 4], BigRational, BigRational)> = None;
    for (t, c) in chain.iter() {
        let d = [-1, 0, 1].iter().map(|&k| dist(c, k)).min().expect("three values");
        if d.is_zero() {
            continue;
        }
        if pick.as_ref().is_none_or(|(_, _, best)| d > *best) {
            pick = Some((*t, c.clone(), d));
        }
    }
    let Some((t, x, _)) = pick else {
        return Vec::new();
    };
    let mut values = [0i64, 1, -1];
    values.sort_by_key(|&k| std::cmp::Reverse(dist(&x, k)));
    values
        .iter()
        .map(|&k| {
            let mut f = fixed.clone();
            f.insert(tet_rank(t), k);
            f
        })
        .collect()
}

/// Exact tet-volume by depth-first branch and bound over coefficients in
/// {-1, 0, 1}, starting from the cone at a maximum-degree vertex.
pub fn tetvol(sigma: &Triation, node_budget: u64) -> Result<TetvolResult, OptError> {
    tetvol_with(sigma, node_budget, &LpOptions::default())
}

pub fn tetvol_with(sigma: &Triation, node_budget: u64, opts: &LpOptions) -> Result<TetvolResult, OptError> {
    let gauge = sigma.max_degree_vertex();
    let root = solve_node(sigma, gauge, &BTreeMap::new(), opts)?;
    let floor = ceil_u64(&root.bound);
    let mut best = cone(sigma, gauge).map_err(|e| OptError::Certificate(e.to_string()))?;
    let mut stack: Vec<(BTreeMap<u64, i64>, u64)> = Vec::new();
    match integral(&root.chain) {
        Some(c) if c.len() < best.len() => best = c,
        Some(_) => {}
        None => stack.extend(children(&BTreeMap::new(), &root.chain).into_iter().map(|f| (f, floor))),
    }
    let mut nodes = 1u64;
    while best.len() as u64 > floor {
        let Some((fixed, parent)) = stack.pop() else {
            break;
        };
        if parent >= best.len() as u64 {
            continue;
        }
        if nodes >= node_budget {
            stack.push((fixed, parent));
            break;
        }
        nodes += 1;
        let node = match solve_node(sigma, gauge, &fixed, opts) {
            Ok(n) => n,
            Err(OptError::Lp(LpError::Infeasible)) => continue,
            Err(e) => return Err(e),
        };
        let bound = ceil_u64(&node.bound);
        if bound >= best.len() as u64 {
            continue;
        }
        match integral(&node.chain) {
            Some(c) => best = c,
            None => stack.extend(children(&fixed, &node.chain).into_iter().map(|f| (f, bound))),
        }
    }
    let value = best.len() as u64;
    let open = stack.iter().map(|(_, b)| *b).filter(|&b| b < value).min();
    let (proved, lower_bound) = match open {
        Some(b) if value > floor => (false, b.max(floor)),
        _ => (true, value),
    };
    let qvol = LpResult {
        optimum: root.bound.clone(),
        dual_certificate: root.potential,
        primal_certificate: root.chain,
        trace: root.trace,
        stats: root.stats,
    };
    Ok(TetvolResult { value, tetration: best, lower_bound_used: root.bound, qvol, lower_bound, proved, nodes })
}
