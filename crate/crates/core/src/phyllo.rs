//! Phyllocylinders: the triangular lattice modulo a translation, indexed by
//! integers, and the capped truncations `T_v` (from Φ_{5,1}) and `U_v`
//! (from Φ_{4,2}).
//!
//! A lattice point `u + wω` has height `h = b·u + a·w`, which is constant along
//! the quotient direction `(a, -b)`. With `g = gcd(a, b)` the cylinder has `g`
//! parallel spirals; a point gets level `L = h / g`, spiral `s = (x·u - y·w) mod g`
//! where `x·(a/g) + y·(b/g) = 1`, and index `n = g·L + s`.

use std::collections::BTreeSet;
use std::ops::Range;

use thiserror::Error;

use crate::complex::{validate_triation, ComplexError, Triation, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhylloError {
    #[error("unsupported cylinder ({a}, {b}): need a >= 1 and 0 <= b <= a")]
    Unsupported { a: u32, b: u32 },

    #[error("empty index window")]
    EmptyWindow,

    #[error("family {family} needs {requirement}, got v={v}")]
    BadSize { family: &'static str, requirement: &'static str, v: u32 },

    #[error("capped truncation is not a sphere: {0}")]
    Invalid(#[from] ComplexError),

    #[error("expected {expected} cap faces, got {got}")]
    CapCount { expected: usize, got: usize },
}

/// The cylinder Φ_{a,b} with vertices indexed by integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Phyllocylinder {
    a: i64,
    b: i64,
    g: i64,
    // index change and spiral change for the steps 1 and ω
    step1: (i64, i64),
    step_omega: (i64, i64),
}

/// Euclid's recursion: `(g, x, y)` with `a·x + b·y = g`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl Phyllocylinder {
    pub fn new(a: u32, b: u32) -> Result<Self, PhylloError> {
        if a == 0 || b > a {
            return Err(PhylloError::Unsupported { a, b });
        }
        let (a, b) = (a as i64, b as i64);
        let g = ext_gcd(a, b).0;
        let (_, x, y) = ext_gcd(a / g, b / g);
        Ok(Phyllocylinder {
            a,
            b,
            g,
            step1: (b / g, x.rem_euclid(g)),
            step_omega: (a / g, (-y).rem_euclid(g)),
        })
    }

    pub fn a(&self) -> u32 {
        self.a as u32
    }

    pub fn b(&self) -> u32 {
        self.b as u32
    }

    pub fn girth(&self) -> u32 {
        (self.a + self.b) as u32
    }

    /// Number of parallel spirals, `gcd(a, b)`.
    pub fn spiral_count(&self) -> u32 {
        self.g as u32
    }

    /// Index of the lattice point `u + wω`.
    pub fn index(&self, u: i64, w: i64) -> i64 {
        self.walk(0, u, w)
    }

    /// Index reached from `n` by the lattice step `du + dw·ω`.
    pub fn walk(&self, n: i64, du: i64, dw: i64) -> i64 {
        let (level, spiral) = (n.div_euclid(self.g), n.rem_euclid(self.g));
        let level = level + du * self.step1.0 + dw * self.step_omega.0;
        let spiral = (spiral + du * self.step1.1 + dw * self.step_omega.1).rem_euclid(self.g);
        self.g * level + spiral
    }

    /// The six neighbours of `n` in counterclockwise order starting at `n + 1`.
    pub fn neighbors(&self, n: i64) -> [i64; 6] {
        [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)].map(|(du, dw)| self.walk(n, du, dw))
    }

    /// The up face `(p, p+1, p+1+ω)` and down face `(p, p+1+ω, p+ω)` at `p`.
    pub fn faces_at(&self, p: i64) -> [[i64; 3]; 2] {
        let e1 = self.walk(p, 1, 0);
        let e1w = self.walk(p, 1, 1);
        let ew = self.walk(p, 0, 1);
        [[p, e1, e1w], [p, e1w, ew]]
    }

    /// Faces anchored at each index in `window`, up face first.
    pub fn lattice_faces(&self, window: Range<i64>) -> Result<Vec<[i64; 3]>, PhylloError> {
        if window.is_empty() {
            return Err(PhylloError::EmptyWindow);
        }
        Ok(window.flat_map(|p| self.faces_at(p)).collect())
    }

    /// Largest index offset between a face's anchor and its other vertices.
    fn reach(&self) -> i64 {
        self.g * (self.step1.0 + self.step_omega.0 + 1)
    }

    /// All lattice faces whose vertices lie in `0..v`, as vertex labels.
    pub fn faces_within(&self, v: u32) -> Vec<[Vertex; 3]> {
        let v = v as i64;
        (-self.reach()..v)
            .flat_map(|p| self.faces_at(p))
            .filter(|f| f.iter().all(|&q| (0..v).contains(&q)))
            .map(|f| f.map(|q| q as Vertex))
            .collect()
    }

    /// Cap faces closing the truncation to `0..v`.
    ///
    /// A lattice face meeting the window at one end is kept after moving each
    /// outside vertex onto the end level of its own spiral (below 0 to
    /// `q mod g`, above `v` to `v - g + (q - v) mod g`); faces that degenerate
    /// are dropped. Both rims then close up with four triangles each.
    pub fn cap_faces(&self, v: u32) -> Vec<[Vertex; 3]> {
        let (v, g) = (v as i64, self.g);
        let inside = |q: i64| (0..v).contains(&q);
        let mut caps = BTreeSet::new();
        for p in -self.reach()..v {
            for f in self.faces_at(p) {
                let lo = f.iter().any(|&q| q < 0);
                let hi = f.iter().any(|&q| q >= v);
                if !(lo || hi) || (lo && hi) || !f.iter().any(|&q| inside(q)) {
                    continue;
                }
                let h = f.map(|q| {
                    if q < 0 {
                        q.rem_euclid(g)
                    } else if q >= v {
                        v - g + (q - v).rem_euclid(g)
                    } else {
                        q
                    }
                });
                if h[0] != h[1] && h[1] != h[2] && h[0] != h[2] {
                    caps.insert(rotate_min(h.map(|q| q as Vertex)));
                }
            }
        }
        caps.into_iter().collect()
    }

    /// Truncation to `0..v` with both rims capped; validated as a sphere.
    pub fn capped(&self, v: u32) -> Result<Triation, PhylloError> {
        let mut faces = self.faces_within(v);
        faces.extend(self.cap_faces(v));
        Ok(validate_triation(&faces)?)
    }
}

fn rotate_min(f: [Vertex; 3]) -> [Vertex; 3] {
    let i = (0..3).min_by_key(|&i| f[i]).unwrap_or(0);
    [f[i], f[(i + 1) % 3], f[(i + 2) % 3]]
}

/// Number of faces in `sigma` that are not lattice faces of `cyl`.
pub fn non_lattice_faces(cyl: &Phyllocylinder, sigma: &Triation) -> usize {
    let lattice: BTreeSet<[Vertex; 3]> =
        cyl.faces_within(sigma.v()).into_iter().map(rotate_min).collect();
    sigma.faces().filter(|f| !lattice.contains(&rotate_min(*f))).count()
}

fn check_caps(cyl: &Phyllocylinder, t: &Triation) -> Result<(), PhylloError> {
    let got = non_lattice_faces(cyl, t);
    if got != 8 {
        return Err(PhylloError::CapCount { expected: 8, got });
    }
    Ok(())
}

/// `T_v`: Φ_{5,1} truncated to `0..v`, capped by a four-triangle fan at each end.
pub fn build_t(v: u32) -> Result<Triation, PhylloError> {
    if v < 13 {
        return Err(PhylloError::BadSize { family: "T", requirement: "v >= 13", v });
    }
    let cyl = Phyllocylinder::new(5, 1)?;
    let t = cyl.capped(v)?;
    check_caps(&cyl, &t)?;
    Ok(t)
}

/// `U_v`: Φ_{4,2} truncated to `0..v` (v even), each rim closed by four triangles.
pub fn build_u(v: u32) -> Result<Triation, PhylloError> {
    if v < 12 || v % 2 == 1 {
        return Err(PhylloError::BadSize { family: "U", requirement: "even v >= 12", v });
    }
    let cyl = Phyllocylinder::new(4, 2)?;
    let t = cyl.capped(v)?;
    check_caps(&cyl, &t)?;
    Ok(t)
}

/// Capped truncation of another girth-6 or girth-7 cylinder with the same
/// cap rule. No claim is made about its tet-volume.
pub fn build_experimental(a: u32, b: u32, v: u32) -> Result<Triation, PhylloError> {
    let cyl = Phyllocylinder::new(a, b)?;
    let g = cyl.spiral_count();
    if !v.is_multiple_of(g) || v < 3 * cyl.girth() {
        return Err(PhylloError::BadSize {
            family: "experimental",
            requirement: "v a multiple of gcd(a,b) and at least three girths",
            v,
        });
    }
    cyl.capped(v)
}
