use num_rational::BigRational;
use num_traits::ToPrimitive;

use tetvol::opt::{cap_total, maximize_caps, shipped_phi42_potential, u_potential_value, vsa, PHI42_POTENTIAL};
use tetvol::phyllo::{build_u, Phyllocylinder};
use tetvol::potential::{check_good, eval_surface};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

#[test]
fn ratios_of_the_smaller_cylinders() {
    assert_eq!(vsa(4, 2).unwrap().value, rat(31, 32));
    assert_eq!(vsa(3, 3).unwrap().value, rat(23, 24));
    assert_eq!(vsa(5, 2).unwrap().value, rat(1, 1));
    assert_eq!(vsa(4, 3).unwrap().value, rat(1, 1));
}

#[test]
fn shipped_potential_is_reproduced_by_the_cap_lp() {
    let r = vsa(4, 2).unwrap();
    let (rho, caps) = maximize_caps(&r, 12).unwrap();
    assert_eq!(caps, rat(5, 2));
    assert_eq!(rho.to_text(), PHI42_POTENTIAL);
}

#[test]
fn shipped_potential_gives_the_u_formula() {
    let rho = shipped_phi42_potential();
    let cyl = Phyllocylinder::new(4, 2).unwrap();
    assert_eq!(rho.face_average(), rat(31, 32));
    for v in (12..=32).step_by(2) {
        let u = build_u(v).unwrap();
        let surface = eval_surface(&rho, &u);
        // 2v - 12 lattice faces and the caps
        let expected = rat(31, 32) * rat(2 * v as i64 - 12, 1) + rat(5, 2);
        assert_eq!(surface, expected, "v={v}");
        assert_eq!(u_potential_value(v), expected);
        assert_eq!(cap_total(&rho, &cyl.cap_faces(v)), rat(5, 2), "v={v}");
        assert_eq!(u.face_count() - cyl.cap_faces(v).len(), 2 * v as usize - 12);
    }
}

#[test]
fn shipped_potential_is_good_on_u_vertex_sets() {
    let rho = shipped_phi42_potential();
    for v in [12, 20, 32] {
        assert!(check_good(&rho, &(0..v).collect::<Vec<_>>()).is_ok(), "v={v}");
    }
}

#[test]
fn ceiling_matches_known_tet_volumes() {
    let rho = shipped_phi42_potential();
    // tetvol(U_v) for v = 12..20 from the defect table
    for (v, tv) in [(12u32, 15i64), (14, 18), (16, 22), (18, 26), (20, 30)] {
        let surface = eval_surface(&rho, &build_u(v).unwrap());
        assert_eq!(surface.ceil().to_integer().to_i64(), Some(tv), "v={v}");
    }
}
