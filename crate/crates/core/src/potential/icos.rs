//! A good potential on the icosahedron with `ρ(icos) = 15`.
//!
//! Faces get 3/4 (as oriented), triples containing no edge get 0, and the
//! remaining triples are solved for by a feasibility LP on `|vol| ≤ 1`. The
//! solution is then averaged over the rotation group, which keeps it good and
//! leaves the face values alone.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{vol_sorted, Potential, VolumePotential};
use crate::complex::{automorphisms, icosahedron, tet_faces, Triation, Vertex};
use crate::lp::{solve_certified, Column, LpError, LpOptions, Model};
use crate::scalar::{rat, Scalar};

struct FeasibilityModel<S> {
    rows: usize,
    cols: Vec<Column<S>>,
}

impl<S: Scalar> Model<S> for FeasibilityModel<S> {
    fn rows(&self) -> usize {
        self.rows
    }
    fn rhs(&self) -> Vec<S> {
        vec![S::zero(); self.rows]
    }
    fn initial_columns(&self) -> Vec<Column<S>> {
        self.cols.clone()
    }
    fn column(&self, id: u64) -> Option<Column<S>> {
        self.cols.get(id as usize).cloned()
    }
}

fn has_edge(sigma: &Triation, t: [Vertex; 3]) -> bool {
    let edges = sigma.edges();
    [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]].iter().any(|e| edges.binary_search(e).is_ok())
}

pub fn reconstruct_icos_potential() -> Result<VolumePotential<BigRational>, LpError> {
    let ico = icosahedron();
    let v = ico.v();
    let mut fixed = VolumePotential::new();
    for f in ico.faces() {
        fixed.set(f, rat(3, 4)).expect("faces have distinct labels");
    }
    let mut var_of: BTreeMap<[Vertex; 3], usize> = BTreeMap::new();
    for a in 0..v {
        for b in a + 1..v {
            for c in b + 1..v {
                let t = [a, b, c];
                if fixed.sorted_value(t).is_zero() && has_edge(&ico, t) {
                    let n = var_of.len();
                    var_of.insert(t, n);
                }
            }
        }
    }
    // vol(T) = f_T + Σ a_T,k y_k must lie in [-1, 1]
    let mut cols_q: Vec<Column<BigRational>> = Vec::new();
    for a in 0..v {
        for b in a + 1..v {
            for c in b + 1..v {
                for d in c + 1..v {
                    let tet = [a, b, c, d];
                    let f = vol_sorted(&fixed, tet);
                    let mut entries: Vec<(usize, BigRational)> = tet_faces(tet)
                        .into_iter()
                        .filter_map(|(face, s)| var_of.get(&face).map(|&k| (k, BigRational::from_integer(s.into()))))
                        .collect();
                    entries.sort_by_key(|e| e.0);
                    cols_q.push(Column {
                        id: cols_q.len() as u64,
                        entries,
                        cost_up: BigRational::one() - &f,
                        cost_down: Some(BigRational::one() + &f),
                    });
                }
            }
        }
    }
    let cols_f: Vec<Column<f64>> = cols_q
        .iter()
        .map(|c| Column {
            id: c.id,
            entries: c.entries.iter().map(|(r, x)| (*r, x.as_f64())).collect(),
            cost_up: c.cost_up.as_f64(),
            cost_down: c.cost_down.as_ref().map(Scalar::as_f64),
        })
        .collect();
    let rows = var_of.len();
    let exact = FeasibilityModel { rows, cols: cols_q };
    let float = FeasibilityModel { rows, cols: cols_f };
    let (sol, _) = solve_certified(&float, &exact, &LpOptions::default())?;
    let mut rho = fixed.clone();
    for (t, &k) in &var_of {
        rho.set(*t, sol.duals[k].clone()).expect("distinct labels");
    }
    let group = automorphisms(&ico);
    let order = BigRational::from_integer(group.len().into());
    let mut sym = VolumePotential::new();
    for a in 0..v {
        for b in a + 1..v {
            for c in b + 1..v {
                let mut total = BigRational::zero();
                for g in &group {
                    let image = [g[a as usize], g[b as usize], g[c as usize]];
                    total += rho.value(image).expect("automorphisms are bijections");
                }
                sym.set([a, b, c], total / &order).expect("distinct labels");
            }
        }
    }
    Ok(sym)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{check_good, eval_surface};

    #[test]
    fn good_with_value_fifteen() {
        let rho = reconstruct_icos_potential().unwrap();
        let ico = icosahedron();
        assert_eq!(eval_surface(&rho, &ico), rat(15, 1));
        assert_eq!(check_good(&rho, &(0..12).collect::<Vec<_>>()), Ok(495));
        for f in ico.faces() {
            assert_eq!(rho.value(f).unwrap(), rat(3, 4));
        }
    }
}
