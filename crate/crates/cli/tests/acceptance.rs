//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach standard output.

use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tetvol::complex::{icosahedron, isomorphic, Chain3, Triation, Vertex};
use tetvol::flip::{find_gap_pair, survey, GapPairSearch};
use tetvol::opt::{
    certify_family, qvol, shipped_phi42_potential, tetvol, u_potential_value, verify_lp, verify_tetvol, vsa, LpResult,
};
use tetvol::phyllo::{build_t, build_u};
use tetvol::potential::{eval_chain, eval_surface, find_gap_potential, vol_form, GapPotential, Potential, VolumePotential};
use tetvol::Rational;

/// The 24 orderings of four positions with their signs.
fn signed_permutations() -> Vec<([usize; 4], i64)> {
    let mut out = Vec::new();
    for code in 0..256usize {
        let p = [code & 3, (code >> 2) & 3, (code >> 4) & 3, (code >> 6) & 3];
        if (0..4).all(|i| p.contains(&i)) {
            let inv = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            out.push((p, if inv % 2 == 0 { 1 } else { -1 }));
        }
    }
    out
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("took {elapsed:.1?}, limit {limit:?}"))
}

/// The defect table rows this run must reproduce: (v, tetvol, tetvol - Qvol, tetvol - ρ).
fn defect_rows() -> Vec<(u32, u64, Rational, Rational)> {
    vec![
        (12, 15, rat(0, 1), rat(7, 8)),
        (14, 18, rat(0, 1), rat(0, 1)),
        (16, 22, rat(0, 1), rat(1, 8)),
        (18, 26, rat(0, 1), rat(1, 4)),
        (20, 30, rat(1, 5), rat(3, 8)),
    ]
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_tetvol"))
        .args(["prove", "13", "60", "--out", "/dev/null"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("prove exited with {:?}", out.status.code()))?;
    let text = String::from_utf8_lossy(&out.stdout);
    let expected: String = (13..=60).map(|v| format!("v={v} tetvol={} CERTIFIED\n", 2 * v - 10)).collect();
    ensure(text == expected, || "prove output differs from v=.. tetvol=2v-10 CERTIFIED".into())?;

    let rho = find_gap_potential().ok_or("no gap potential")?.potential;
    let report = certify_family(13..=60, &rho).map_err(|e| e.to_string())?;
    ensure(report.window_tets == 58_905, || format!("window checked {} tets", report.window_tets))?;
    for row in &report.rows {
        let target = 2 * row.v as u64 - 10;
        let t = build_t(row.v).map_err(|e| e.to_string())?;
        ensure(eval_surface(&rho, &t) == Rational::from_integer(target.into()), || format!("rho(T_{})", row.v))?;
        ensure(row.cone_size == target, || format!("cone size at v={}", row.v))?;
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("48 rows certified, 58905 window tets, {:.1?}", start.elapsed()))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let ico = icosahedron();
    let q = qvol(&ico).map_err(|e| e.to_string())?;
    ensure(q.optimum == rat(15, 1), || format!("qvol = {}", q.optimum))?;
    ensure(verify_lp(&ico, &q), || "Qvol certificates fail".into())?;
    let t = tetvol(&ico, 1000).map_err(|e| e.to_string())?;
    ensure(t.value == 15 && t.proved, || format!("tetvol = {} proved={}", t.value, t.proved))?;
    ensure(verify_tetvol(&ico, &t), || "tetration certificate fails".into())?;
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("qvol=15 tetvol=15, certificates verified, {:.1?}", start.elapsed()))
}

fn criterion_3(traces: &mut Vec<LpResult>) -> Check {
    let start = Instant::now();
    for (v, tv, gap, _) in defect_rows() {
        let sigma = build_u(v).map_err(|e| e.to_string())?;
        let r = tetvol(&sigma, 2000).map_err(|e| e.to_string())?;
        ensure(r.proved && r.value == tv, || format!("v={v}: tetvol {} proved={}", r.value, r.proved))?;
        let got = Rational::from_integer(tv.into()) - &r.qvol.optimum;
        ensure(got == gap, || format!("v={v}: tetvol - Qvol = {got}, table {gap}"))?;
        ensure(verify_tetvol(&sigma, &r), || format!("v={v}: certificate fails"))?;
        traces.push(r.qvol);
    }
    Ok(format!("rows 12..20 match, {:.1?}", start.elapsed()))
}

fn criterion_4() -> Check {
    let rho = shipped_phi42_potential();
    for (v, tv, _, rho_gap) in defect_rows() {
        let u = build_u(v).map_err(|e| e.to_string())?;
        let surface = eval_surface(&rho, &u);
        let formula = rat(31, 32) * rat(2 * v as i64 - 12, 1) + rat(5, 2);
        ensure(surface == formula && u_potential_value(v) == formula, || format!("v={v}: rho(U_v) = {surface}"))?;
        ensure(surface.ceil().to_integer().to_u64() == Some(tv), || format!("v={v}: ceil(rho) != tetvol"))?;
        ensure(Rational::from_integer(tv.into()) - &surface == rho_gap, || format!("v={v}: tetvol - rho"))?;
        let good = tetvol::potential::check_good(&rho, &(0..v).collect::<Vec<_>>());
        ensure(good.is_ok(), || format!("v={v}: potential not good: {good:?}"))?;
    }
    Ok("formula and ceiling hold on rows 12..20".into())
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let expected = [((6, 0), rat(1, 1)), ((4, 2), rat(31, 32)), ((3, 3), rat(23, 24)), ((5, 2), rat(1, 1)), ((4, 3), rat(1, 1))];
    let mut parts = Vec::new();
    for ((a, b), want) in expected {
        let r = vsa(a, b).map_err(|e| e.to_string())?;
        ensure(r.value == want, || format!("vsa({a},{b}) = {}", r.value))?;
        parts.push(format!("({a},{b})={}", r.value));
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("{} in {:.1?}", parts.join(" "), start.elapsed()))
}

fn random_potential(rng: &mut ChaCha8Rng, v: u32) -> VolumePotential<Rational> {
    let mut rho = VolumePotential::new();
    for _ in 0..rng.random_range(0..40) {
        let t = random_subset::<3>(rng, v);
        rho.set(t, rat(rng.random_range(-40..=40), rng.random_range(1..=12))).expect("distinct");
    }
    rho
}

fn random_subset<const N: usize>(rng: &mut ChaCha8Rng, v: u32) -> [Vertex; N] {
    let mut out = [0; N];
    let mut k = 0;
    while k < N {
        let x = rng.random_range(0..v);
        if !out[..k].contains(&x) {
            out[k] = x;
            k += 1;
        }
    }
    out
}

fn random_chain(rng: &mut ChaCha8Rng, v: u32) -> Chain3<i64> {
    let mut tau = Chain3::new();
    for _ in 0..rng.random_range(0..25) {
        tau.add_simplex(random_subset::<4>(rng, v), rng.random_range(-3..=3)).expect("distinct");
    }
    tau
}

fn criterion_6(traces: &[LpResult]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let perms = signed_permutations();
    for case in 0..1000 {
        let (rho, tau) = (random_potential(&mut rng, 9), random_chain(&mut rng, 9));
        let boundary = tau.boundary();
        let rhs: Rational = boundary.iter().map(|(t, c)| rho.sorted_value(*t) * Rational::from_integer((*c).into())).sum();
        ensure(eval_chain(&rho, &tau) == rhs, || format!("Stokes fails on case {case}"))?;
        let mut edges = std::collections::BTreeMap::new();
        for (&[a, b, c], &k) in boundary.iter() {
            for (e, s) in [([b, c], 1), ([a, c], -1), ([a, b], 1)] {
                *edges.entry(e).or_insert(0i64) += s * k;
            }
        }
        ensure(edges.values().all(|&k| k == 0), || format!("boundary of boundary nonzero on case {case}"))?;
        let t = random_subset::<4>(&mut rng, 9);
        let base = vol_form(&rho, t).map_err(|e| e.to_string())?;
        ensure(perms.len() == 24, || "permutation count".into())?;
        for (p, sign) in &perms {
            let moved = [t[p[0]], t[p[1]], t[p[2]], t[p[3]]];
            let want = if *sign > 0 { base.clone() } else { -base.clone() };
            ensure(vol_form(&rho, moved).map_err(|e| e.to_string())? == want, || format!("vol_form not alternating on case {case}"))?;
        }
        ensure(Chain3::from_text(&tau.to_text()).ok() == Some(tau.clone()), || "chain round trip".into())?;
        ensure(VolumePotential::from_text(&rho.to_text()).map(|r| r.to_text()).ok() == Some(rho.to_text()), || {
            "potential round trip".into()
        })?;
    }
    let mut sphere_count = 1;
    let round_trip = |t: &Triation| Triation::from_text(&t.to_text()).map(|b| b.to_text()).ok() == Some(t.to_text());
    ensure(round_trip(&icosahedron()), || "icos round trip".into())?;
    for v in 12..=100 {
        for t in [build_t(v).ok(), build_u(v).ok()].into_iter().flatten() {
            ensure(round_trip(&t), || format!("triation round trip at v={v}"))?;
            sphere_count += 1;
        }
    }
    let gap = find_gap_potential().ok_or("no gap potential")?.potential;
    ensure(GapPotential::from_text(&gap.to_text()).ok() == Some(gap.clone()), || "gap potential round trip".into())?;
    let mut checkpoints = 0;
    for r in traces {
        ensure(!r.trace.is_empty(), || "an LP solve left no trace".into())?;
        for w in r.trace.windows(2) {
            ensure(w[1].primal <= w[0].primal, || "primal objective increased".into())?;
        }
        for c in &r.trace {
            checkpoints += 1;
            ensure(c.primal >= r.optimum, || "primal below optimum".into())?;
            if let Some(b) = &c.dual_bound {
                ensure(*b <= r.optimum, || "dual bound above optimum".into())?;
            }
        }
    }
    Ok(format!(
        "1000 Stokes/boundary/24-permutation cases, {sphere_count} sphere round trips, {checkpoints} LP checkpoints over {} solves",
        traces.len()
    ))
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let s = survey(8, 100_000).map_err(|e| e.to_string())?;
    ensure(s.violations.is_empty() && s.unproven == 0, || format!("{} violations, {} unproven", s.violations.len(), s.unproven))?;
    let GapPairSearch::Found(pair) = find_gap_pair(10, 100_000).map_err(|e| e.to_string())? else {
        return Err("find_gap_pair(10) found nothing".into());
    };
    ensure((pair.tetvol, pair.flipdist) == (9, 10), || format!("pair has tetvol {} flipdist {}", pair.tetvol, pair.flipdist))?;
    within(start.elapsed(), Duration::from_secs(600))?;
    Ok(format!("{} pairs at v=8 without violation; v=10 pair tetvol=9 flipdist=10, {:.1?}", s.pairs, start.elapsed()))
}

fn criterion_8() -> Check {
    let u12 = build_u(12).map_err(|e| e.to_string())?;
    ensure(isomorphic(&u12, &icosahedron()), || "U_12 is not isomorphic to the icosahedron".into())?;
    Ok("U_12 ≅ icosahedron".into())
}

fn main() {
    let mut traces = Vec::new();
    let mut results: Vec<(u32, &str, Check)> = Vec::new();
    results.push((1, "T_v family proof for v = 13..60", criterion_1()));
    results.push((2, "icosahedron qvol and tetvol", criterion_2()));
    let c3 = criterion_3(&mut traces);
    results.push((3, "defect table rows 12..20", c3));
    results.push((4, "U_v potential formula", criterion_4()));
    results.push((5, "vsa values", criterion_5()));
    for sigma in [icosahedron(), build_t(13).expect("T_13")] {
        if let Ok(r) = qvol(&sigma) {
            traces.push(r);
        }
    }
    results.push((6, "property suites", criterion_6(&traces)));
    results.push((7, "flip distance against tet-volume", criterion_7()));
    results.push((8, "U_12 isomorphic to the icosahedron", criterion_8()));

    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(detail) => println!("PASS {n}: {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {n}: {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
