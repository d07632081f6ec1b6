//! Unwrapped-cylinder SVG of a `T_v` or `U_v` triation.
//!
//! Each vertex is drawn at a lattice point whose coordinate around the
//! cylinder lies in `[0, L)`, `L` the circumference. Lattice faces poking out
//! of the strip are drawn again one circumference over; cap faces are drawn
//! between the vertices' strip positions at the two ends.

use std::collections::BTreeMap;
use std::fmt::Write;

use anyhow::{bail, Result};
use tetvol::complex::{Triation, Vertex};
use tetvol::phyllo::{build_t, build_u, Phyllocylinder};

const SCALE: f64 = 40.0;
const MARGIN: f64 = 50.0;

/// Face counts of a rendered diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderStats {
    pub lattice: usize,
    /// Lattice faces drawn a second time across the cut.
    pub duplicated: usize,
    pub caps: usize,
}

struct Strip {
    cyl: Phyllocylinder,
    a: i64,
    b: i64,
    /// `4·|Q|²`, `Q = a - bω` the quotient vector.
    four_l2: i64,
}

impl Strip {
    fn new(cyl: Phyllocylinder) -> Self {
        let (a, b) = (cyl.a() as i64, cyl.b() as i64);
        Strip { cyl, a, b, four_l2: 4 * (a * a - a * b + b * b) }
    }

    /// `4·(P·Q)` for `P = u + wω`; integral, so the cut is decided exactly.
    fn around4(&self, (u, w): (i64, i64)) -> i64 {
        (2 * u + w) * (2 * self.a - self.b) - 3 * w * self.b
    }

    /// Lattice point of each index in `0..v` with around-coordinate in `[0, L)`.
    fn representatives(&self, v: i64) -> BTreeMap<i64, (i64, i64)> {
        let r = v + 2 * (self.a + self.b);
        let mut out = BTreeMap::new();
        for u in -r..=r {
            for w in -r..=r {
                let n = self.cyl.index(u, w);
                if !(0..v).contains(&n) || out.contains_key(&n) {
                    continue;
                }
                let k = self.around4((u, w)).div_euclid(self.four_l2);
                out.insert(n, (u - k * self.a, w + k * self.b));
            }
        }
        out
    }

    /// SVG coordinates: along the cylinder to the right, around it downward.
    fn xy(&self, (u, w): (i64, i64)) -> (f64, f64) {
        let (px, py) = (u as f64 + w as f64 / 2.0, w as f64 * 3f64.sqrt() / 2.0);
        let (qx, qy) = (self.a as f64 - self.b as f64 / 2.0, -(self.b as f64) * 3f64.sqrt() / 2.0);
        let l = (qx * qx + qy * qy).sqrt();
        let around = (px * qx + py * qy) / l;
        let along = (-px * qy + py * qx) / l;
        (along, around)
    }
}

fn family_of(sigma: &Triation) -> Result<(&'static str, Phyllocylinder)> {
    let v = sigma.v();
    let candidates = [("T", 5, 1, build_t(v)), ("U", 4, 2, build_u(v))];
    for (name, a, b, built) in candidates {
        if built.is_ok_and(|t| t.canonical_faces() == sigma.canonical_faces()) {
            return Ok((name, Phyllocylinder::new(a, b)?));
        }
    }
    bail!("render needs a T_v or U_v triation with its generated labels; this {v}-vertex triation is neither")
}

fn polygon(out: &mut String, class: &str, pts: &[(f64, f64)]) {
    let coords: Vec<String> =
        pts.iter().map(|(x, y)| format!("{:.2},{:.2}", MARGIN + SCALE * x, MARGIN + SCALE * y)).collect();
    writeln!(out, r#"<polygon class="{class}" points="{}"/>"#, coords.join(" ")).expect("write to string");
}

pub fn render_svg(sigma: &Triation) -> Result<(String, RenderStats)> {
    let (family, cyl) = family_of(sigma)?;
    let strip = Strip::new(cyl);
    let v = sigma.v() as i64;
    let reps = strip.representatives(v);
    let inside = |p: (i64, i64)| (0..v).contains(&cyl.index(p.0, p.1));
    let mut stats = RenderStats { lattice: 0, duplicated: 0, caps: 0 };
    let mut body = String::new();

    for &(u, w) in reps.values() {
        for shape in [[(0, 0), (1, 0), (1, 1)], [(0, 0), (1, 1), (0, 1)]] {
            let pts = shape.map(|(du, dw)| (u + du, w + dw));
            if !pts.iter().all(|&p| inside(p)) {
                continue;
            }
            stats.lattice += 1;
            polygon(&mut body, "lattice", &pts.map(|p| strip.xy(p)));
            let a4: Vec<i64> = pts.iter().map(|&p| strip.around4(p)).collect();
            let shift = if a4.iter().any(|&x| x >= strip.four_l2) {
                Some(-1)
            } else if a4.iter().any(|&x| x < 0) {
                Some(1)
            } else {
                None
            };
            if let Some(k) = shift {
                stats.duplicated += 1;
                let moved = pts.map(|(pu, pw)| (pu + k * strip.a, pw - k * strip.b));
                polygon(&mut body, "lattice cut", &moved.map(|p| strip.xy(p)));
            }
        }
    }
    for f in cyl.cap_faces(sigma.v()) {
        stats.caps += 1;
        let pts = f.map(|n: Vertex| strip.xy(reps[&(n as i64)]));
        polygon(&mut body, "cap", &pts);
    }
    for (n, &p) in &reps {
        let (x, y) = strip.xy(p);
        let (x, y) = (MARGIN + SCALE * x, MARGIN + SCALE * y);
        writeln!(body, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3"/><text x="{:.2}" y="{:.2}">{n}</text>"#, x + 4.0, y - 4.0)
            .expect("write to string");
    }

    let pts: Vec<(f64, f64)> = reps.values().map(|&p| strip.xy(p)).collect();
    let max_x = pts.iter().map(|p| p.0).fold(0.0, f64::max) + 1.0;
    let (width, height) = (2.0 * MARGIN + SCALE * max_x, 2.0 * MARGIN + SCALE * (strip.four_l2 as f64).sqrt() / 2.0);
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .expect("write to string");
    writeln!(svg, "<title>{family}_{v} unwrapped</title>").expect("write to string");
    svg.push_str(
        "<style>polygon{stroke:#333;stroke-width:1}.lattice{fill:#dde8f4}.cut{fill:#f4e4dd;stroke-dasharray:4 2}\
         .cap{fill:none;stroke:#b33}text{font:10px sans-serif}</style>\n",
    );
    svg.push_str(&body);
    svg.push_str("</svg>\n");
    Ok((svg, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representatives_cover_every_vertex_inside_the_strip() {
        let strip = Strip::new(Phyllocylinder::new(4, 2).unwrap());
        let reps = strip.representatives(20);
        assert_eq!(reps.len(), 20);
        for (&n, &p) in &reps {
            assert_eq!(strip.cyl.index(p.0, p.1), n);
            assert!((0..strip.four_l2).contains(&strip.around4(p)));
        }
    }

    #[test]
    fn refuses_other_spheres() {
        assert!(render_svg(&tetvol::complex::icosahedron()).is_err());
    }
}
