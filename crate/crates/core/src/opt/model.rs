//! The minimal fractional tetration of a triation as an LP over tets.
//!
//! Rows are the vertex triples avoiding a gauge vertex `g`. A 2-chain whose
//! difference from `σ` is a cycle supported on triples through `g` must equal
//! `σ`, so matching `σ` off `g` is enough. The dual variables are then a good
//! potential normalized to vanish on triples through `g`. Every tet through
//! `g` is a unit column, which makes the cone from `g` a feasible start.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::complex::{canonicalize, tet_faces, Triation, Vertex};
use crate::lp::{BasicVar, Column, Dir, Model, Scan};
use crate::potential::binomial;
use crate::scalar::Scalar;

const NONE: u32 = u32::MAX;

/// Rank of a sorted tet in the combinatorial number system.
pub fn tet_rank(t: [Vertex; 4]) -> u64 {
    (0..4).map(|k| binomial(t[k] as u64, k as u64 + 1)).sum()
}

/// Inverse of [`tet_rank`].
pub fn tet_unrank(mut r: u64) -> [Vertex; 4] {
    let mut out = [0; 4];
    for k in (1..=4u64).rev() {
        let mut x = k - 1;
        while binomial(x + 1, k) <= r {
            x += 1;
        }
        out[(k - 1) as usize] = x as Vertex;
        r -= binomial(x, k);
    }
    out
}

pub(crate) struct TetModel<S: Scalar> {
    v: u32,
    gauge: Vertex,
    row_of: Vec<u32>,
    triples: Vec<[Vertex; 3]>,
    rhs: Vec<S>,
    /// Tets with a prescribed coefficient; their columns are withheld.
    fixed: BTreeMap<u64, i64>,
}

impl<S: Scalar> TetModel<S> {
    pub(crate) fn new(sigma: &Triation, gauge: Vertex, fixed: &BTreeMap<u64, i64>) -> Self {
        let v = sigma.v();
        let n = v as usize;
        let mut row_of = vec![NONE; n * n * n];
        let mut triples = Vec::new();
        for a in 0..v {
            for b in a + 1..v {
                for c in b + 1..v {
                    if a != gauge && b != gauge && c != gauge {
                        row_of[(a as usize * n + b as usize) * n + c as usize] = triples.len() as u32;
                        triples.push([a, b, c]);
                    }
                }
            }
        }
        let mut model = TetModel { v, gauge, row_of, triples, rhs: Vec::new(), fixed: fixed.clone() };
        let mut rhs = vec![S::zero(); model.triples.len()];
        for &(t, sign) in sigma.canonical_faces() {
            if let Some(r) = model.row(t) {
                rhs[r] += S::from_int(sign as i64);
            }
        }
        for (&id, &c) in fixed {
            for (face, sign) in tet_faces(tet_unrank(id)) {
                if let Some(r) = model.row(face) {
                    rhs[r] -= S::from_int(c * sign as i64);
                }
            }
        }
        model.rhs = rhs;
        model
    }

    fn row(&self, t: [Vertex; 3]) -> Option<usize> {
        let n = self.v as usize;
        let r = self.row_of[(t[0] as usize * n + t[1] as usize) * n + t[2] as usize];
        (r != NONE).then_some(r as usize)
    }

    pub(crate) fn triple(&self, row: usize) -> [Vertex; 3] {
        self.triples[row]
    }

    fn entries(&self, t: [Vertex; 4]) -> Vec<(usize, i8)> {
        let mut e: Vec<(usize, i8)> =
            tet_faces(t).into_iter().filter_map(|(f, s)| self.row(f).map(|r| (r, s))).collect();
        e.sort_unstable();
        e
    }

    fn tet_column(&self, id: u64) -> Column<S> {
        Column {
            id,
            entries: self.entries(tet_unrank(id)).into_iter().map(|(r, s)| (r, S::from_int(s as i64))).collect(),
            cost_up: S::one(),
            cost_down: Some(S::one()),
        }
    }

    fn gauge_tet(&self, t: [Vertex; 3]) -> u64 {
        let (sorted, _) = canonicalize([self.gauge, t[0], t[1], t[2]]).expect("gauge is not in a row triple");
        tet_rank(sorted)
    }
}

impl<S: Scalar> Model<S> for TetModel<S> {
    fn rows(&self) -> usize {
        self.triples.len()
    }

    fn rhs(&self) -> Vec<S> {
        self.rhs.clone()
    }

    fn initial_columns(&self) -> Vec<Column<S>> {
        self.triples
            .iter()
            .map(|&t| self.gauge_tet(t))
            .filter(|id| !self.fixed.contains_key(id))
            .map(|id| self.tet_column(id))
            .collect()
    }

    fn column(&self, id: u64) -> Option<Column<S>> {
        (id < binomial(self.v as u64, 4) && !self.fixed.contains_key(&id)).then(|| self.tet_column(id))
    }

    fn scan(&self, duals: &[S], cost_weight: &S, limit: usize) -> Scan<S> {
        let v = self.v;
        let per_first: Vec<(Vec<(S, u64)>, S)> = (0..v)
            .into_par_iter()
            .map(|a| {
                let mut found = Vec::new();
                let mut scale = S::one();
                for b in a + 1..v {
                    for c in b + 1..v {
                        for d in c + 1..v {
                            let t = [a, b, c, d];
                            let id = tet_rank(t);
                            if self.fixed.contains_key(&id) {
                                continue;
                            }
                            let mut dot = S::zero();
                            for (r, s) in self.entries(t) {
                                if s > 0 {
                                    dot += &duals[r];
                                } else {
                                    dot -= &duals[r];
                                }
                            }
                            let mag = dot.abs();
                            if mag > scale {
                                scale = mag.clone();
                            }
                            let reduced = cost_weight.clone() - mag;
                            if limit > 0 && reduced.is_neg() && !reduced.is_negligible() {
                                found.push((reduced, id));
                            }
                        }
                    }
                }
                (found, scale)
            })
            .collect();
        let mut scale = S::one();
        let mut found = Vec::new();
        for (f, s) in per_first {
            if s > scale {
                scale = s;
            }
            found.extend(f);
        }
        found.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("comparable").then(x.1.cmp(&y.1)));
        found.truncate(limit);
        Scan { columns: found.into_iter().map(|(_, id)| self.tet_column(id)).collect(), scale: Some(scale) }
    }

    fn is_lazy(&self) -> bool {
        true
    }

    /// The cone from the gauge vertex.
    fn crash_basis(&self) -> Option<Vec<BasicVar>> {
        let mut basis = Vec::with_capacity(self.triples.len());
        for (r, &t) in self.triples.iter().enumerate() {
            let id = self.gauge_tet(t);
            if self.fixed.contains_key(&id) {
                return None;
            }
            let entry = self.entries(tet_unrank(id))[0].1;
            let x = if entry > 0 { self.rhs[r].clone() } else { -self.rhs[r].clone() };
            let dir = if x.is_neg() { Dir::Down } else { Dir::Up };
            basis.push(BasicVar::Col { id, dir });
        }
        Some(basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_round_trip() {
        let mut expected = 0;
        for d in 0..9 {
            for c in 0..d {
                for b in 0..c {
                    for a in 0..b {
                        let t = [a, b, c, d];
                        assert_eq!(tet_unrank(tet_rank(t)), t);
                        assert!(tet_rank(t) < binomial(9, 4));
                        expected += 1;
                    }
                }
            }
        }
        assert_eq!(expected, binomial(9, 4));
        assert_eq!(tet_rank([0, 1, 2, 3]), 0);
    }
}
