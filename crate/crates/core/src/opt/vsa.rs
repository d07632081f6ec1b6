//! Volume-to-surface-area ratios: the best average face value of a
//! translation-invariant good potential on an infinite cylinder.
//!
//! Potentials are constant on the classes of [`CylinderClasses`]. A 4-subset
//! can be translated so that one of its lowest points is the origin, and a
//! level gap of `K` or more can be shrunk to exactly `K` without changing the
//! class of any sub-triple, so goodness only has to be imposed on 4-subsets
//! through the origin spanning at most `3K` levels.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::OptError;
use crate::complex::Vertex;
use crate::lp::{solve_certified, Column, LpOptions, LpSolution, Model};
use crate::phyllo::Phyllocylinder;
use crate::potential::{ClassKey, CylinderClasses, CylinderPotential, Potential};
use crate::scalar::{rat, Scalar};

/// The potential on Φ_{4,2} behind the `U_v` bounds, as shipped.
pub const PHI42_POTENTIAL: &str = include_str!("../../data/phi42.txt");

pub fn shipped_phi42_potential() -> CylinderPotential<BigRational> {
    CylinderPotential::from_text(PHI42_POTENTIAL).expect("shipped potential parses")
}

/// `31/32·(2v - 12) + 5/2`, the value of the shipped potential on `U_v`.
pub fn u_potential_value(v: u32) -> BigRational {
    rat(31, 32) * rat(2 * v as i64 - 12, 1) + rat(5, 2)
}

/// Cylinders with girth 6 or 7.
const SUPPORTED: [(u32, u32); 7] = [(6, 0), (5, 1), (4, 2), (3, 3), (6, 1), (5, 2), (4, 3)];

/// Cluster threshold `⌈(girth + 1)/g⌉ + 1` levels: points closer than this
/// can share a lattice face or a short loop around the cylinder.
pub fn vsa_threshold(cyl: &Phyllocylinder) -> u32 {
    let g = cyl.spiral_count();
    (cyl.girth() + 1).div_ceil(g) + 1
}

#[derive(Clone, Debug)]
pub struct VsaResult {
    pub a: u32,
    pub b: u32,
    pub threshold: u32,
    pub value: BigRational,
    /// An optimal potential.
    pub potential: CylinderPotential<BigRational>,
    /// Number of classes that occur in some constraint.
    pub classes: usize,
    /// Distinct goodness constraints after merging equal rows.
    pub constraints: usize,
}

struct ClassLp {
    classes: CylinderClasses,
    keys: Vec<ClassKey>,
    index: BTreeMap<ClassKey, usize>,
    /// Each row is `vol` as a combination of class values, first coefficient positive.
    cons: Vec<Vec<(usize, i64)>>,
}

impl ClassLp {
    fn build(classes: CylinderClasses) -> Self {
        let g = classes.cylinder().spiral_count() as i64;
        let k = classes.threshold() as i64;
        let mut lp = ClassLp { classes, keys: Vec::new(), index: BTreeMap::new(), cons: Vec::new() };
        let origin = (0i64, 0i64);
        let pts: Vec<(i64, i64)> =
            (0..=3 * k).flat_map(|l| (0..g).map(move |s| (l, s))).filter(|&p| p != origin).collect();
        let mut rows = BTreeSet::new();
        for trip in pts.iter().combinations(3) {
            let [a, b, c, d] = [origin, *trip[0], *trip[1], *trip[2]];
            let mut terms: BTreeMap<usize, i64> = BTreeMap::new();
            for (t, sign) in [([b, c, d], 1), ([a, c, d], -1), ([a, b, d], 1), ([a, b, c], -1)] {
                if let Some((var, s)) = lp.var(&t) {
                    *terms.entry(var).or_insert(0) += sign * s;
                }
            }
            let mut row: Vec<(usize, i64)> = terms.into_iter().filter(|&(_, c)| c != 0).collect();
            if row.is_empty() {
                continue;
            }
            if row[0].1 < 0 {
                row.iter_mut().for_each(|(_, c)| *c = -*c);
            }
            rows.insert(row);
        }
        lp.cons = rows.into_iter().collect();
        lp
    }

    /// Variable and sign for an ordered point triple, allocating new classes.
    fn var(&mut self, t: &[(i64, i64); 3]) -> Option<(usize, i64)> {
        let (key, sign) = self.classes.classify(t)?;
        let n = self.keys.len();
        let var = *self.index.entry(key.clone()).or_insert(n);
        if var == n {
            self.keys.push(key);
        }
        Some((var, sign as i64))
    }

    /// Coefficients of `Σ weight·ρ(face)` over the given index triples.
    fn face_vector(&mut self, faces: &[[i64; 3]], weight: &BigRational) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.keys.len()];
        for f in faces {
            let pts = f.map(|n| self.classes.point(n));
            if let Some((var, s)) = self.var(&pts) {
                out.resize(self.keys.len(), BigRational::zero());
                out[var] += weight * BigRational::from_integer(s.into());
            }
        }
        out
    }

    fn model<S: Scalar>(&self, rhs: &[BigRational], extra: Option<Column<BigRational>>) -> ClassModel<S> {
        let lift = |x: &BigRational| S::from_rational(x);
        let mut cols: Vec<Column<S>> = self
            .cons
            .iter()
            .enumerate()
            .map(|(j, row)| Column {
                id: j as u64,
                entries: row.iter().map(|&(r, c)| (r, S::from_int(c))).collect(),
                cost_up: S::one(),
                cost_down: Some(S::one()),
            })
            .collect();
        if let Some(c) = extra {
            cols.push(Column {
                id: c.id,
                entries: c.entries.iter().map(|(r, x)| (*r, lift(x))).collect(),
                cost_up: lift(&c.cost_up),
                cost_down: c.cost_down.as_ref().map(lift),
            });
        }
        let mut b: Vec<S> = rhs.iter().map(lift).collect();
        b.resize(self.keys.len(), S::zero());
        ClassModel { rows: self.keys.len(), rhs: b, cols }
    }

    fn potential(&self, duals: &[BigRational]) -> CylinderPotential<BigRational> {
        let mut rho = CylinderPotential::new(self.classes);
        for (key, y) in self.keys.iter().zip(duals) {
            rho.set(key.clone(), y.clone());
        }
        rho
    }

    /// Every goodness row holds exactly for `y`.
    fn good(&self, y: &[BigRational]) -> bool {
        let one = BigRational::from_integer(1.into());
        self.cons.iter().all(|row| {
            let dot: BigRational = row.iter().map(|&(r, c)| &y[r] * BigRational::from_integer(c.into())).sum();
            dot.abs() <= one
        })
    }
}

struct ClassModel<S> {
    rows: usize,
    rhs: Vec<S>,
    cols: Vec<Column<S>>,
}

impl<S: Scalar> Model<S> for ClassModel<S> {
    fn rows(&self) -> usize {
        self.rows
    }
    fn rhs(&self) -> Vec<S> {
        self.rhs.clone()
    }
    fn initial_columns(&self) -> Vec<Column<S>> {
        self.cols.clone()
    }
    fn column(&self, id: u64) -> Option<Column<S>> {
        self.cols.get(id as usize).cloned()
    }
}

/// Solves and checks both sides: `y` is good, `Σ x_j a_j = b`, and the
/// objective equals `bᵀy`.
fn solve_checked(lp: &ClassLp, rhs: &[BigRational], extra: Option<Column<BigRational>>) -> Result<LpSolution<BigRational>, OptError> {
    let fm: ClassModel<f64> = lp.model(rhs, extra.clone());
    let qm: ClassModel<BigRational> = lp.model(rhs, extra);
    let (sol, _) = solve_certified(&fm, &qm, &LpOptions::default())?;
    if !lp.good(&sol.duals) {
        return Err(OptError::Certificate("cylinder potential is not good".into()));
    }
    let mut image = vec![BigRational::zero(); qm.rows];
    let mut cost = BigRational::zero();
    for (id, x) in &sol.primal {
        let col = qm.column(*id).expect("primal column exists");
        for (r, a) in &col.entries {
            image[*r] += a * x;
        }
        cost += if x.is_positive() { x * &col.cost_up } else { -x * col.cost_down.as_ref().expect("two-sided") };
    }
    let dual_value: BigRational = qm.rhs.iter().zip(&sol.duals).map(|(b, y)| b * y).sum();
    if image != qm.rhs || cost != sol.objective || dual_value != sol.objective {
        return Err(OptError::Certificate("cylinder LP duality check".into()));
    }
    Ok(sol)
}

pub fn vsa(a: u32, b: u32) -> Result<VsaResult, OptError> {
    let cyl = Phyllocylinder::new(a, b).map_err(|_| OptError::Unsupported { a, b })?;
    vsa_with_threshold(a, b, vsa_threshold(&cyl))
}

pub fn vsa_with_threshold(a: u32, b: u32, threshold: u32) -> Result<VsaResult, OptError> {
    if !SUPPORTED.contains(&(a, b)) || threshold == 0 {
        return Err(OptError::Unsupported { a, b });
    }
    let cyl = Phyllocylinder::new(a, b)?;
    let mut lp = ClassLp::build(CylinderClasses::new(cyl, threshold));
    let objective = lp.face_vector(&cyl.faces_at(0), &rat(1, 2));
    let sol = solve_checked(&lp, &objective, None)?;
    Ok(VsaResult {
        a,
        b,
        threshold,
        value: sol.objective,
        potential: lp.potential(&sol.duals),
        classes: lp.keys.len(),
        constraints: lp.cons.len(),
    })
}

/// Among good potentials with the optimal face average, one with the largest
/// total on the cap faces of the `v`-vertex truncation. Returns it with that total.
pub fn maximize_caps(result: &VsaResult, v: u32) -> Result<(CylinderPotential<BigRational>, BigRational), OptError> {
    let classes = *result.potential.classes();
    let cyl = classes.cylinder();
    let mut lp = ClassLp::build(classes);
    let caps: Vec<[i64; 3]> = cyl.cap_faces(v).into_iter().map(|f| f.map(|x| x as i64)).collect();
    let cap_vector = lp.face_vector(&caps, &rat(1, 1));
    let average = lp.face_vector(&cyl.faces_at(0), &rat(1, 2));
    let pin = Column {
        id: lp.cons.len() as u64,
        entries: average.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(r, x)| (r, x.clone())).collect(),
        cost_up: result.value.clone(),
        cost_down: Some(-result.value.clone()),
    };
    let sol = solve_checked(&lp, &cap_vector, Some(pin))?;
    Ok((lp.potential(&sol.duals), sol.objective))
}

/// `ρ` summed over the faces of a truncation's caps, by direct evaluation.
pub fn cap_total(rho: &CylinderPotential<BigRational>, caps: &[[Vertex; 3]]) -> BigRational {
    caps.iter().map(|f| rho.value(*f).expect("cap faces have distinct labels")).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        let k = |a, b| vsa_threshold(&Phyllocylinder::new(a, b).unwrap());
        assert_eq!([k(5, 1), k(6, 0), k(4, 2), k(3, 3), k(5, 2)], [8, 3, 5, 4, 9]);
    }

    #[test]
    fn unsupported_cylinders() {
        assert!(matches!(vsa(7, 0), Err(OptError::Unsupported { .. })));
        assert!(matches!(vsa(2, 3), Err(OptError::Unsupported { .. })));
    }

    #[test]
    fn girth_six_single_spiral() {
        let r = vsa(5, 1).unwrap();
        assert_eq!(r.value, rat(1, 1));
        assert_eq!(r.potential.face_average(), rat(1, 1));
    }
}
