//! Commands behind the `tetvol` binary. Each returns the text for standard
//! output and, where there is one, an artifact that `--out` writes to a file.

pub mod render;

use std::fs;
use std::path::Path;

use anyhow::anyhow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tetvol::complex::{icosahedron, Triation};
use tetvol::flip::{flip_distance, glue, PolygonTriangulation};
use tetvol::opt::{
    certify_family, qvol, shipped_phi42_potential, tetvol, verify_lp, verify_tetvol, vsa, OptError,
};
use tetvol::phyllo::{build_t, build_u};
use tetvol::potential::{eval_surface, find_gap_potential};
use tetvol::scalar::fmt_ratio;
use tetvol::{FractionalChain, Rational};

/// A failed command. Usage errors exit with 2, verification failures with 1.
#[derive(Debug)]
pub enum CliError {
    Usage(anyhow::Error),
    Verification(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(e) => write!(f, "usage error: {e:#}"),
            CliError::Verification(e) => write!(f, "verification failed: {e:#}"),
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(anyhow!("{msg}"))
}

fn failed(msg: impl std::fmt::Display) -> CliError {
    CliError::Verification(anyhow!("{msg}"))
}

/// Result of a command: `stdout` is always printed; `artifact` goes to
/// `--out` when given, otherwise to standard output after `stdout`.
#[derive(Debug, Default, PartialEq)]
pub struct Output {
    pub stdout: String,
    pub artifact: Option<String>,
}

impl Output {
    fn text(stdout: String) -> Self {
        Output { stdout, artifact: None }
    }

    fn artifact(stdout: String, artifact: String) -> Self {
        Output { stdout, artifact: Some(artifact) }
    }
}

pub type CmdResult = Result<Output, CliError>;

/// Default node budget for branch and bound.
pub const DEFAULT_NODE_BUDGET: u64 = 2000;
/// Default flip cap for `flipdist`.
pub const DEFAULT_FLIP_CAP: u32 = 64;

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(Path::new(path)).map_err(|e| usage(format!("cannot read {path}: {e}")))
}

fn generated(family: &str, v: Option<u32>) -> Result<Option<Triation>, CliError> {
    let need_v = || v.ok_or_else(|| usage(format!("family {family} needs a vertex count")));
    let t = match family {
        "icos" => icosahedron(),
        "T" => build_t(need_v()?).map_err(usage)?,
        "U" => build_u(need_v()?).map_err(usage)?,
        _ => return Ok(None),
    };
    Ok(Some(t))
}

/// A family name (`T v`, `U v`, `icos`) or a triation file.
pub fn load_triation(input: &str, v: Option<u32>) -> Result<Triation, CliError> {
    if let Some(t) = generated(input, v)? {
        return Ok(t);
    }
    Triation::from_text(&read(input)?).map_err(|e| failed(format!("{input}: {e}")))
}

fn load_polygon(path: &str) -> Result<PolygonTriangulation, CliError> {
    PolygonTriangulation::from_text(&read(path)?).map_err(|e| failed(format!("{path}: {e}")))
}

/// A triangulation reached by `v²` seeded random flips from the fan at 0.
pub fn random_polygon(v: u32, seed: u64) -> Result<PolygonTriangulation, CliError> {
    let mut t = PolygonTriangulation::fan(v, 0).map_err(usage)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if t.diagonals().is_empty() {
        return Ok(t);
    }
    for _ in 0..v * v {
        let d = t.diagonals()[rng.random_range(0..t.diagonals().len())];
        t = t.flip(d).expect("own diagonal");
    }
    Ok(t)
}

/// `generate T|U <v>`, `generate icos`, `generate fan <v>`, `generate polygon <v>`.
pub fn cmd_generate(family: &str, v: Option<u32>, seed: u64) -> CmdResult {
    if let Some(t) = generated(family, v)? {
        return Ok(Output::artifact(String::new(), t.to_text()));
    }
    let v = v.ok_or_else(|| usage(format!("family {family} needs a vertex count")))?;
    let poly = match family {
        "fan" => PolygonTriangulation::fan(v, 0).map_err(usage)?,
        "polygon" => random_polygon(v, seed)?,
        _ => return Err(usage(format!("unknown family {family}; expected T, U, icos, fan or polygon"))),
    };
    Ok(Output::artifact(String::new(), poly.to_text()))
}

pub fn cmd_validate(path: &str) -> CmdResult {
    let t = Triation::from_text(&read(path)?).map_err(|e| failed(format!("{path}: {e}")))?;
    Ok(Output::text(format!("valid v={} f={} e={}\n", t.v(), t.face_count(), t.edges().len())))
}

fn chain_text(chain: &FractionalChain) -> String {
    chain
        .iter()
        .map(|(t, c)| format!("t {} {} {} {} {}\n", t[0], t[1], t[2], t[3], fmt_ratio(c)))
        .collect()
}

/// Qvol with both certificates checked; the artifact is the dual potential
/// followed by the fractional tetration.
pub fn cmd_qvol(input: &str, v: Option<u32>) -> CmdResult {
    let sigma = load_triation(input, v)?;
    let r = qvol(&sigma).map_err(failed)?;
    if !verify_lp(&sigma, &r) {
        return Err(failed("Qvol certificates do not check"));
    }
    let stdout = format!("v={} qvol={} certified\n", sigma.v(), fmt_ratio(&r.optimum));
    let artifact = format!("{}{}", r.dual_certificate.to_text(), chain_text(&r.primal_certificate));
    Ok(Output::artifact(stdout, artifact))
}

fn report_line(v: u32, tetvol: u64, qvol: &Rational, proved: bool) -> String {
    let gap = Rational::from_integer(tetvol.into()) - qvol;
    let status = if proved { "proved" } else { "budget" };
    format!("v={v} tetvol={tetvol} qvol={} gap={} status={status}", fmt_ratio(qvol), fmt_ratio(&gap))
}

/// Branch and bound; the artifact is the best tetration found.
pub fn cmd_tetvol(input: &str, v: Option<u32>, budget: u64) -> CmdResult {
    let sigma = load_triation(input, v)?;
    let r = tetvol(&sigma, budget).map_err(failed)?;
    if !verify_tetvol(&sigma, &r) || !verify_lp(&sigma, &r.qvol) {
        return Err(failed("tetration or Qvol certificate does not check"));
    }
    let stdout = format!("{}\n", report_line(sigma.v(), r.value, &r.qvol.optimum, r.proved));
    Ok(Output::artifact(stdout, r.tetration.to_text()))
}

pub fn cmd_flipdist(a: &str, b: &str, cap: u32) -> CmdResult {
    let (a, b) = (load_polygon(a)?, load_polygon(b)?);
    if a.v() != b.v() {
        return Err(usage(format!("polygons have {} and {} vertices", a.v(), b.v())));
    }
    let d = flip_distance(&a, &b, cap).map_err(failed)?;
    Ok(Output::text(format!("flipdist={d}\n")))
}

pub fn cmd_glue(a: &str, b: &str) -> CmdResult {
    let (a, b) = (load_polygon(a)?, load_polygon(b)?);
    let t = glue(&a, &b).map_err(usage)?;
    Ok(Output::artifact(String::new(), t.to_text()))
}

/// Certifies `tetvol(T_v) = 2v - 10` on `from..=to`; the artifact is the gap potential used.
pub fn cmd_prove(from: u32, to: u32) -> CmdResult {
    if from < 13 || to < from {
        return Err(usage(format!("prove needs 13 <= from <= to, got {from}..{to}")));
    }
    let search = find_gap_potential().ok_or_else(|| failed("no good gap potential found"))?;
    let report = certify_family(from..=to, &search.potential).map_err(failed)?;
    let mut stdout = String::new();
    for row in &report.rows {
        stdout.push_str(&format!("v={} tetvol={} CERTIFIED\n", row.v, row.tetvol));
    }
    Ok(Output::artifact(stdout, search.potential.to_text()))
}

/// Rows of the `U_v` defect table: tetvol, tetvol - Qvol and tetvol - ρ for
/// the shipped Φ_{4,2} potential.
pub fn cmd_table_defect(rows: &[u32], budget: u64) -> CmdResult {
    if let Some(&v) = rows.iter().find(|&&v| !(12..=32).contains(&v) || v % 2 == 1) {
        return Err(usage(format!("table rows are even v in 12..=32, got {v}")));
    }
    let rho = shipped_phi42_potential();
    let mut stdout = String::new();
    for &v in rows {
        let sigma = build_u(v).map_err(usage)?;
        let surface = eval_surface(&rho, &sigma);
        let r = tetvol(&sigma, budget).map_err(failed)?;
        if !verify_tetvol(&sigma, &r) || !verify_lp(&sigma, &r.qvol) {
            return Err(failed(format!("v={v}: certificate does not check")));
        }
        let rho_gap = Rational::from_integer(r.value.into()) - &surface;
        stdout.push_str(&format!(
            "{} rho={} rho_gap={}\n",
            report_line(v, r.value, &r.qvol.optimum, r.proved),
            fmt_ratio(&surface),
            fmt_ratio(&rho_gap)
        ));
    }
    Ok(Output::text(stdout))
}

pub fn cmd_vsa(a: u32, b: u32) -> CmdResult {
    let r = vsa(a, b).map_err(|e| match e {
        OptError::Unsupported { .. } => usage(e),
        other => failed(other),
    })?;
    let stdout = format!(
        "vsa({a},{b})={} K={} classes={} constraints={}\n",
        fmt_ratio(&r.value),
        r.threshold,
        r.classes,
        r.constraints
    );
    Ok(Output::artifact(stdout, r.potential.to_text()))
}

pub fn cmd_render(input: &str, v: Option<u32>) -> CmdResult {
    let sigma = load_triation(input, v)?;
    let (svg, _) = render::render_svg(&sigma).map_err(CliError::Usage)?;
    Ok(Output::artifact(String::new(), svg))
}
