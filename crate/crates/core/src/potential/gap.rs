//! Translation-invariant potentials on integer vertices of Φ_{5,1}, depending
//! only on the two gaps of a sorted triple, each clamped at [`CLAMP`].

use num_rational::BigRational;

use super::Potential;
use crate::complex::{ComplexError, Vertex};
use crate::phyllo::Phyllocylinder;
use crate::scalar::{fmt_ratio, parse_ratio, Scalar};

/// Gaps of this size or more are treated as equal.
pub const CLAMP: u32 = 6;

/// Clamped gaps `(min(b-a, 6), min(c-b, 6))` of a sorted triple.
pub fn gap_class(t: [Vertex; 3]) -> (u32, u32) {
    ((t[1] - t[0]).min(CLAMP), (t[2] - t[1]).min(CLAMP))
}

/// A potential given by a 6×6 table on gap classes.
#[derive(Clone, Debug, PartialEq)]
pub struct GapPotential<S: Scalar> {
    table: Vec<S>,
}

fn slot(g1: u32, g2: u32) -> usize {
    assert!((1..=CLAMP).contains(&g1) && (1..=CLAMP).contains(&g2), "gap class out of range");
    ((g1 - 1) * CLAMP + (g2 - 1)) as usize
}

impl<S: Scalar> GapPotential<S> {
    pub fn zero() -> Self {
        GapPotential { table: vec![S::zero(); (CLAMP * CLAMP) as usize] }
    }

    pub fn get(&self, g1: u32, g2: u32) -> &S {
        &self.table[slot(g1, g2)]
    }

    pub fn set(&mut self, g1: u32, g2: u32, value: S) {
        self.table[slot(g1, g2)] = value;
    }

    /// Table rows `g1 = 1..=6`, each with columns `g2 = 1..=6`.
    pub fn rows(&self) -> Vec<Vec<S>> {
        self.table.chunks(CLAMP as usize).map(|r| r.to_vec()).collect()
    }
}

impl<S: Scalar> Potential<S> for GapPotential<S> {
    fn sorted_value(&self, t: [Vertex; 3]) -> S {
        let (g1, g2) = gap_class(t);
        self.table[slot(g1, g2)].clone()
    }
}

impl GapPotential<BigRational> {
    /// All 36 entries as `g g1 g2 p/q` lines.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for g1 in 1..=CLAMP {
            for g2 in 1..=CLAMP {
                s.push_str(&format!("g {g1} {g2} {}\n", fmt_ratio(self.get(g1, g2))));
            }
        }
        s
    }

    /// Missing entries default to 0.
    pub fn from_text(text: &str) -> Result<Self, ComplexError> {
        let mut rho = Self::zero();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = || ComplexError::Parse {
                line: i + 1,
                message: format!("expected `g g1 g2 p/q` with gaps in 1..=6, got `{line}`"),
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "g" {
                return Err(err());
            }
            let g1: u32 = parts[1].parse().map_err(|_| err())?;
            let g2: u32 = parts[2].parse().map_err(|_| err())?;
            if !(1..=CLAMP).contains(&g1) || !(1..=CLAMP).contains(&g2) {
                return Err(err());
            }
            rho.set(g1, g2, parse_ratio(parts[3]).ok_or_else(err)?);
        }
        Ok(rho)
    }
}

/// Outcome of [`find_gap_potential`].
#[derive(Clone, Debug)]
pub struct GapSearch {
    pub potential: GapPotential<BigRational>,
    /// Assignments tried before the first solution.
    pub nodes: u64,
}

struct Constraint {
    terms: Vec<(usize, i64)>,
    lo: i64,
    hi: i64,
}

/// Adds `sign·ρ(class of t)` for an ordered triple to a term list.
fn push_triple(terms: &mut Vec<(usize, i64)>, t: [i64; 3], coef: i64) {
    let (sorted, sign) = crate::complex::canonicalize(t.map(|x| x as Vertex)).expect("distinct");
    let (g1, g2) = gap_class(sorted);
    terms.push((slot(g1, g2), coef * sign as i64));
}

fn merged(mut terms: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    terms.sort_unstable();
    let mut out: Vec<(usize, i64)> = Vec::new();
    for (v, c) in terms {
        match out.last_mut() {
            Some((w, d)) if *w == v => *d += c,
            _ => out.push((v, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    out
}

fn constraints() -> Vec<Constraint> {
    let cyl = Phyllocylinder::new(5, 1).expect("(5,1) is supported");
    let mut out = Vec::new();
    // every lattice face has value 1
    for f in cyl.faces_at(CLAMP as i64 * 3) {
        let mut terms = Vec::new();
        push_triple(&mut terms, f, 1);
        out.push(Constraint { terms: merged(terms), lo: 1, hi: 1 });
    }
    // the eight cap faces of any T_v contribute 2 in total
    let mut terms = Vec::new();
    for f in cyl.cap_faces(13) {
        push_triple(&mut terms, f.map(|x| x as i64), 1);
    }
    out.push(Constraint { terms: merged(terms), lo: 2, hi: 2 });
    // every clamped gap pattern of a 4-tuple appears as (0, p, p+q, p+q+r)
    for p in 1..=CLAMP as i64 {
        for q in 1..=CLAMP as i64 {
            for r in 1..=CLAMP as i64 {
                let [a, b, c, d] = [0, p, p + q, p + q + r];
                let mut terms = Vec::new();
                push_triple(&mut terms, [b, c, d], 1);
                push_triple(&mut terms, [a, c, d], -1);
                push_triple(&mut terms, [a, b, d], 1);
                push_triple(&mut terms, [a, b, c], -1);
                let terms = merged(terms);
                if !terms.is_empty() {
                    out.push(Constraint { terms, lo: -1, hi: 1 });
                }
            }
        }
    }
    out
}

/// Depth-first search for a gap table with values in {-1, 0, 1} making every
/// lattice face of Φ_{5,1} worth 1, the caps of `T_v` worth 2 together, and
/// every tet volume at most 1 in absolute value.
///
/// Classes are assigned in order `(g1, g2)` = (1,1), (1,2), …, (6,6), trying
/// 0, then 1, then -1; the first complete assignment is returned. Partial
/// assignments are pruned when some constraint can no longer be met.
pub fn find_gap_potential() -> Option<GapSearch> {
    let cons = constraints();
    let nvars = (CLAMP * CLAMP) as usize;
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); nvars];
    for (i, c) in cons.iter().enumerate() {
        for &(v, _) in &c.terms {
            touching[v].push(i);
        }
    }
    let mut values: Vec<Option<i64>> = vec![None; nvars];
    let mut nodes = 0u64;

    fn feasible(c: &Constraint, values: &[Option<i64>]) -> bool {
        let (mut sum, mut slack) = (0i64, 0i64);
        for &(v, k) in &c.terms {
            match values[v] {
                Some(x) => sum += k * x,
                None => slack += k.abs(),
            }
        }
        sum - slack <= c.hi && sum + slack >= c.lo
    }

    fn dfs(
        var: usize,
        values: &mut Vec<Option<i64>>,
        cons: &[Constraint],
        touching: &[Vec<usize>],
        nodes: &mut u64,
    ) -> bool {
        if var == values.len() {
            return true;
        }
        for x in [0, 1, -1] {
            *nodes += 1;
            values[var] = Some(x);
            if touching[var].iter().all(|&i| feasible(&cons[i], values)) && dfs(var + 1, values, cons, touching, nodes) {
                return true;
            }
        }
        values[var] = None;
        false
    }

    if !dfs(0, &mut values, &cons, &touching, &mut nodes) {
        return None;
    }
    let mut potential = GapPotential::zero();
    for g1 in 1..=CLAMP {
        for g2 in 1..=CLAMP {
            let x = values[slot(g1, g2)].expect("assigned");
            potential.set(g1, g2, BigRational::from_int(x));
        }
    }
    Some(GapSearch { potential, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn gap_classes_clamp() {
        assert_eq!(gap_class([0, 1, 6]), (1, 5));
        assert_eq!(gap_class([3, 20, 21]), (6, 1));
        assert_eq!(gap_class([0, 6, 40]), (6, 6));
    }

    #[test]
    fn text_round_trip() {
        let mut rho = GapPotential::zero();
        rho.set(1, 5, rat(1, 1));
        rho.set(5, 1, rat(-1, 1));
        rho.set(2, 3, rat(31, 32));
        let text = rho.to_text();
        assert_eq!(text.lines().count(), 36);
        assert!(text.contains("g 2 3 31/32\n"));
        assert_eq!(GapPotential::from_text(&text).unwrap(), rho);
        assert!(GapPotential::from_text("g 0 1 1/1").is_err());
        assert!(GapPotential::from_text("g 1 7 1/1").is_err());
    }

    #[test]
    fn constraint_system_shape() {
        let cons = constraints();
        // two face equations, one cap equation; 4-tuple rows whose terms cancel are dropped
        assert_eq!(cons.iter().filter(|c| c.lo == c.hi).count(), 3);
        assert!(cons.len() <= 3 + 216);
    }
}
