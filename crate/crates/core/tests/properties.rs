use std::collections::BTreeMap;

use itertools::Itertools;
use num_rational::BigRational;
use proptest::prelude::*;

use tetvol::complex::{icosahedron, Chain2, Chain3, Triation, Vertex};
use tetvol::flip::PolygonTriangulation;
use tetvol::lp::{solve, solve_certified, Column, LpOptions, Model};
use tetvol::phyllo::{build_t, build_u};
use tetvol::potential::{eval_chain, vol_form, GapPotential, Potential, VolumePotential, CLAMP};

const V: u32 = 9;

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn triple() -> impl Strategy<Value = [Vertex; 3]> {
    proptest::sample::subsequence((0..V).collect::<Vec<_>>(), 3).prop_shuffle().prop_map(|s| [s[0], s[1], s[2]])
}

fn tet() -> impl Strategy<Value = [Vertex; 4]> {
    proptest::sample::subsequence((0..V).collect::<Vec<_>>(), 4)
        .prop_shuffle()
        .prop_map(|s| [s[0], s[1], s[2], s[3]])
}

fn ratio() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

fn potential() -> impl Strategy<Value = VolumePotential<BigRational>> {
    proptest::collection::vec((triple(), ratio()), 0..40).prop_map(|entries| {
        let mut rho = VolumePotential::new();
        for (t, x) in entries {
            rho.set(t, x).unwrap();
        }
        rho
    })
}

fn chain() -> impl Strategy<Value = Chain3<i64>> {
    proptest::collection::vec((tet(), -3i64..=3), 0..25).prop_map(|terms| {
        let mut tau = Chain3::new();
        for (t, c) in terms {
            tau.add_simplex(t, c).unwrap();
        }
        tau
    })
}

/// `ρ` summed over a 2-chain, face by face.
fn pair_2chain(rho: &VolumePotential<BigRational>, c: &Chain2<i64>) -> BigRational {
    c.iter().map(|(t, k)| rho.sorted_value(*t) * BigRational::from_integer((*k).into())).sum()
}

/// Edge boundary of a 2-chain: `∂[abc] = [bc] - [ac] + [ab]` on sorted triples.
fn edge_boundary(c: &Chain2<i64>) -> BTreeMap<[Vertex; 2], i64> {
    let mut out = BTreeMap::new();
    for (&[a, b, cc], &k) in c.iter() {
        for (e, s) in [([b, cc], 1), ([a, cc], -1), ([a, b], 1)] {
            *out.entry(e).or_insert(0) += s * k;
        }
    }
    out.retain(|_, k| *k != 0);
    out
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn stokes_identity(rho in potential(), tau in chain()) {
        prop_assert_eq!(eval_chain(&rho, &tau), pair_2chain(&rho, &tau.boundary()));
    }

    #[test]
    fn stokes_identity_for_fractional_chains(rho in potential(), terms in proptest::collection::vec((tet(), ratio()), 0..15)) {
        let mut tau: Chain3<BigRational> = Chain3::new();
        for (t, c) in terms {
            tau.add_simplex(t, c).unwrap();
        }
        let lhs = eval_chain(&rho, &tau);
        let rhs: BigRational = tau.boundary().iter().map(|(t, k)| rho.sorted_value(*t) * k).sum();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn boundary_of_a_boundary_vanishes(tau in chain()) {
        prop_assert!(edge_boundary(&tau.boundary()).is_empty());
    }

    #[test]
    fn boundary_of_a_four_simplex_boundary_vanishes(s in proptest::sample::subsequence((0..V).collect::<Vec<_>>(), 5)) {
        let mut cell = Chain3::new();
        for skip in 0..5 {
            let rest: Vec<Vertex> = (0..5).filter(|&i| i != skip).map(|i| s[i]).collect();
            let sign = if skip % 2 == 0 { 1 } else { -1 };
            cell.add_simplex([rest[0], rest[1], rest[2], rest[3]], sign).unwrap();
        }
        prop_assert!(cell.boundary().is_empty());
    }

    #[test]
    fn vol_form_is_alternating(rho in potential(), t in tet()) {
        let base = vol_form(&rho, t).unwrap();
        let mut seen = 0;
        for p in (0..4).permutations(4) {
            let moved = [t[p[0]], t[p[1]], t[p[2]], t[p[3]]];
            let expected = if inversions(&p).is_multiple_of(2) { base.clone() } else { -base.clone() };
            prop_assert_eq!(vol_form(&rho, moved).unwrap(), expected);
            seen += 1;
        }
        prop_assert_eq!(seen, 24);
    }

    #[test]
    fn float_and_exact_potentials_agree_on_dyadic_values(entries in proptest::collection::vec((triple(), -64i64..=64), 0..30), tau in chain()) {
        let mut exact = VolumePotential::new();
        for (t, x) in entries {
            exact.set(t, rat(x, 8)).unwrap();
        }
        let float: VolumePotential<f64> = exact.map(|x| num_traits::ToPrimitive::to_f64(x).unwrap());
        let e: BigRational = eval_chain(&exact, &tau);
        let f: f64 = eval_chain(&float, &tau);
        prop_assert_eq!(num_traits::ToPrimitive::to_f64(&e).unwrap(), f);
    }

    #[test]
    fn chain_text_round_trip(tau in chain()) {
        let text = tau.to_text();
        let back = Chain3::from_text(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back, tau);
    }

    #[test]
    fn volume_potential_text_round_trip(rho in potential()) {
        let text = rho.to_text();
        let back = VolumePotential::from_text(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn gap_potential_text_round_trip(values in proptest::collection::vec(ratio(), (CLAMP * CLAMP) as usize)) {
        let mut rho = GapPotential::zero();
        for (i, x) in values.into_iter().enumerate() {
            rho.set(i as u32 / CLAMP + 1, i as u32 % CLAMP + 1, x);
        }
        let text = rho.to_text();
        prop_assert_eq!(GapPotential::from_text(&text).unwrap().to_text(), text);
    }

    #[test]
    fn polygon_text_round_trip(v in 4u32..14, flips in proptest::collection::vec(any::<proptest::sample::Index>(), 0..40)) {
        let mut t = PolygonTriangulation::fan(v, 0).unwrap();
        for i in flips {
            let d = t.diagonals()[i.index(t.diagonals().len())];
            t = t.flip(d).unwrap();
        }
        let text = t.to_text();
        prop_assert_eq!(PolygonTriangulation::from_text(&text).unwrap(), t);
    }
}

fn assert_round_trip(t: &Triation) {
    let text = t.to_text();
    let back = Triation::from_text(&text).unwrap();
    assert_eq!(back.to_text(), text);
    assert_eq!(&back, t);
}

#[test]
fn generated_triations_round_trip_byte_identically() {
    assert_round_trip(&icosahedron());
    for v in 13..=100 {
        assert_round_trip(&build_t(v).unwrap());
    }
    for v in (12..=100).step_by(2) {
        assert_round_trip(&build_u(v).unwrap());
    }
}

/// Dense LP with a unit column per row, so every right-hand side is feasible.
#[derive(Debug)]
struct Dense {
    b: Vec<i64>,
    cols: Vec<(Vec<(usize, i64)>, i64, Option<i64>)>,
}

impl<S: tetvol::scalar::Scalar> Model<S> for Dense {
    fn rows(&self) -> usize {
        self.b.len()
    }
    fn rhs(&self) -> Vec<S> {
        self.b.iter().map(|&x| S::from_int(x)).collect()
    }
    fn initial_columns(&self) -> Vec<Column<S>> {
        self.cols
            .iter()
            .enumerate()
            .map(|(id, (e, p, n))| Column {
                id: id as u64,
                entries: e.iter().map(|&(r, x)| (r, S::from_int(x))).collect(),
                cost_up: S::from_int(*p),
                cost_down: n.map(S::from_int),
            })
            .collect()
    }
    fn column(&self, id: u64) -> Option<Column<S>> {
        self.initial_columns().into_iter().find(|c| c.id == id)
    }
}

fn dense_lp() -> impl Strategy<Value = Dense> {
    (2usize..6).prop_flat_map(|m| {
        let b = proptest::collection::vec(-5i64..=5, m);
        let extra = proptest::collection::vec(
            (proptest::collection::vec(-2i64..=2, m), 1i64..=4, proptest::option::of(1i64..=4)),
            0..10,
        );
        (b, 1i64..=3, extra).prop_map(move |(b, unit_cost, extra)| {
            let mut cols: Vec<(Vec<(usize, i64)>, i64, Option<i64>)> =
                (0..m).map(|r| (vec![(r, 1)], unit_cost, Some(unit_cost))).collect();
            for (coefs, p, n) in extra {
                let e: Vec<(usize, i64)> = coefs.into_iter().enumerate().filter(|&(_, x)| x != 0).collect();
                if !e.is_empty() {
                    cols.push((e, p, n));
                }
            }
            Dense { b, cols }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn weak_duality_holds_at_every_checkpoint(lp in dense_lp()) {
        let opts = LpOptions { trace_every: 1, ..LpOptions::default() };
        let sol = solve::<BigRational, _>(&lp, None, &[], &opts).unwrap();
        for w in sol.trace.windows(2) {
            prop_assert!(w[1].primal <= w[0].primal);
        }
        for c in &sol.trace {
            prop_assert!(c.primal >= sol.objective);
            if let Some(bound) = &c.dual_bound {
                prop_assert!(*bound <= sol.objective);
            }
        }
        // strong duality at the end: bᵀy equals the objective
        let by: BigRational = lp.b.iter().zip(&sol.duals).map(|(b, y)| y * BigRational::from_integer((*b).into())).sum();
        prop_assert_eq!(by, sol.objective.clone());
        let (certified, _) = solve_certified(&lp, &lp, &opts).unwrap();
        prop_assert_eq!(certified.objective, sol.objective);
    }

    #[test]
    fn duals_are_feasible(lp in dense_lp()) {
        let sol = solve::<BigRational, _>(&lp, None, &[], &LpOptions::default()).unwrap();
        for c in Model::<BigRational>::initial_columns(&lp) {
            let dot = c.dot(&sol.duals);
            prop_assert!(dot <= c.cost_up);
            if let Some(n) = &c.cost_down {
                prop_assert!(-dot <= *n);
            }
        }
    }
}
