use num_rational::BigRational;
use num_traits::{One, Signed};

use tetvol::complex::{cone, icosahedron, isomorphic, Triation};
use tetvol::opt::{qvol, tetvol, verify_lp, verify_tetvol, LpResult};
use tetvol::phyllo::{build_t, build_u};
use tetvol::potential::{check_good, eval_chain, eval_surface, reconstruct_icos_potential, vol_sorted};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn assert_trace(r: &LpResult) {
    assert!(!r.trace.is_empty());
    for c in &r.trace {
        assert!(c.primal >= r.optimum);
        if let Some(b) = &c.dual_bound {
            assert!(*b <= r.optimum);
        }
    }
}

/// Faces not containing the max-degree vertex: the size of the cone from it.
fn cone_size(sigma: &Triation) -> u64 {
    let g = sigma.max_degree_vertex();
    sigma.faces().filter(|f| !f.contains(&g)).count() as u64
}

#[test]
fn icosahedron_qvol_and_tetvol_are_fifteen() {
    let ico = icosahedron();
    let q = qvol(&ico).unwrap();
    assert_eq!(q.optimum, rat(15, 1));
    assert!(verify_lp(&ico, &q));
    assert_trace(&q);
    let t = tetvol(&ico, 100).unwrap();
    assert_eq!((t.value, t.proved), (15, true));
    assert!(verify_tetvol(&ico, &t));
    assert_eq!(cone_size(&ico), 15);
}

#[test]
fn symmetric_icosahedron_potential_is_tight_on_every_cone() {
    let ico = icosahedron();
    let rho = reconstruct_icos_potential().unwrap();
    assert_eq!(eval_surface(&rho, &ico), rat(15, 1));
    assert!(check_good(&rho, &(0..12).collect::<Vec<_>>()).is_ok());
    // 15 tets of volume at most 1 add up to 15, so each is exactly 1
    for a in 0..12 {
        let tau = cone(&ico, a).unwrap();
        assert_eq!(tau.len(), 15);
        assert_eq!(eval_chain(&rho, &tau), rat(15, 1));
        for (t, c) in tau.iter() {
            assert_eq!(vol_sorted(&rho, *t) * BigRational::from_integer((*c).into()), BigRational::one());
        }
    }
}

#[test]
fn t_family_qvol_matches_the_cone() {
    for v in 13..=15 {
        let sigma = build_t(v).unwrap();
        let q = qvol(&sigma).unwrap();
        assert_eq!(q.optimum, rat(2 * v as i64 - 10, 1), "v={v}");
        assert!(verify_lp(&sigma, &q));
        assert_eq!(cone_size(&sigma), 2 * v as u64 - 10);
    }
}

#[test]
fn u_rows_up_to_eighteen() {
    // (v, tetvol, tetvol - Qvol) from the defect table
    for (v, tv, gap) in [(12, 15, rat(0, 1)), (14, 18, rat(0, 1)), (16, 22, rat(0, 1)), (18, 26, rat(0, 1))] {
        let sigma = build_u(v).unwrap();
        let r = tetvol(&sigma, 1000).unwrap();
        assert!(r.proved, "v={v}");
        assert_eq!(r.value, tv, "v={v}");
        assert_eq!(BigRational::from_integer(tv.into()) - &r.qvol.optimum, gap, "v={v}");
        assert!(verify_tetvol(&sigma, &r));
        assert_trace(&r.qvol);
    }
}

#[test]
fn u12_is_the_icosahedron() {
    assert!(isomorphic(&build_u(12).unwrap(), &icosahedron()));
    assert!(!isomorphic(&build_u(14).unwrap(), &icosahedron()));
}

#[test]
fn qvol_certificate_pieces_are_checked_independently() {
    let sigma = build_t(14).unwrap();
    let q = qvol(&sigma).unwrap();
    let tau = &q.primal_certificate;
    assert_eq!(tau.boundary(), sigma.chain::<BigRational>());
    let mass: BigRational = tau.iter().map(|(_, c)| c.abs()).sum();
    assert_eq!(mass, q.optimum);
    // Stokes: the dual potential pairs with the primal chain to ρ(σ)
    assert_eq!(eval_chain(&q.dual_certificate, tau), eval_surface(&q.dual_certificate, &sigma));
}
