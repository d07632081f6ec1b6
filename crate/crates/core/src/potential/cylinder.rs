//! Translation-invariant potentials on a phyllocylinder Φ_{a,b} with any
//! number of spirals.
//!
//! A vertex `n` sits at level `n div g` on spiral `n mod g`. Points of a triple
//! whose levels differ by at least `K` are "far apart"; the triple splits into
//! clusters of nearby points and its class records only the shape of each
//! cluster (level and spiral offsets from the cluster's first point). This is
//! the cylinder analogue of clamping integer gaps.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_rational::BigRational;

use super::Potential;
use crate::complex::{ComplexError, Vertex};
use crate::phyllo::Phyllocylinder;
use crate::scalar::{fmt_ratio, parse_ratio, Scalar};

/// Shapes of the clusters of a point set, lowest cluster first. Each shape
/// lists `(Δlevel, Δspiral)` of the later points relative to the first.
pub type ClassKey = Vec<Vec<(i64, i64)>>;

/// Classifier for point sets on a cylinder with cluster threshold `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CylinderClasses {
    cyl: Phyllocylinder,
    k: i64,
}

fn parity(perm: &[usize]) -> i8 {
    let mut sign = 1i8;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

impl CylinderClasses {
    pub fn new(cyl: Phyllocylinder, k: u32) -> Self {
        CylinderClasses { cyl, k: k as i64 }
    }

    pub fn cylinder(&self) -> Phyllocylinder {
        self.cyl
    }

    pub fn threshold(&self) -> u32 {
        self.k as u32
    }

    /// `(level, spiral)` of an index.
    pub fn point(&self, n: i64) -> (i64, i64) {
        let g = self.cyl.spiral_count() as i64;
        (n.div_euclid(g), n.rem_euclid(g))
    }

    /// Class of an ordered point list and the sign relating the list to the
    /// class's canonical order. `None` when two canonical orders of equal shape
    /// have opposite parity, which forces any invariant potential to vanish.
    pub fn classify(&self, pts: &[(i64, i64)]) -> Option<(ClassKey, i8)> {
        let g = self.cyl.spiral_count() as i64;
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by_key(|&i| pts[i].0);
        let mut clusters: Vec<Vec<usize>> = vec![vec![order[0]]];
        for &i in &order[1..] {
            let last = *clusters.last().and_then(|c| c.last()).expect("nonempty");
            if pts[i].0 - pts[last].0 >= self.k {
                clusters.push(vec![i]);
            } else {
                clusters.last_mut().expect("nonempty").push(i);
            }
        }
        let mut key = Vec::with_capacity(clusters.len());
        let mut canonical = Vec::with_capacity(pts.len());
        for cl in &clusters {
            let mut sorted = cl.clone();
            sorted.sort_unstable();
            let mut best: Option<(Vec<(i64, i64)>, Vec<usize>, i8)> = None;
            let mut ambiguous = false;
            for pm in cl.iter().copied().permutations(cl.len()) {
                if pm.windows(2).any(|w| pts[w[0]].0 > pts[w[1]].0) {
                    continue;
                }
                let o = pts[pm[0]];
                let shape: Vec<(i64, i64)> =
                    pm[1..].iter().map(|&q| (pts[q].0 - o.0, (pts[q].1 - o.1).rem_euclid(g))).collect();
                let rel: Vec<usize> = pm.iter().map(|x| sorted.binary_search(x).expect("member")).collect();
                let sign = parity(&rel);
                match &best {
                    Some((b, _, s)) if shape == *b => ambiguous |= sign != *s,
                    Some((b, _, _)) if shape > *b => {}
                    _ => {
                        best = Some((shape, pm, sign));
                        ambiguous = false;
                    }
                }
            }
            let (shape, pm, _) = best.expect("level order is always possible");
            if ambiguous {
                return None;
            }
            key.push(shape);
            canonical.extend(pm);
        }
        Some((key, parity(&canonical)))
    }

    /// Class of an ordered triple of vertex indices.
    pub fn classify_triple(&self, t: [i64; 3]) -> Option<(ClassKey, i8)> {
        self.classify(&t.map(|n| self.point(n)))
    }
}

/// A potential constant on the classes of a [`CylinderClasses`].
#[derive(Clone, Debug, PartialEq)]
pub struct CylinderPotential<S: Scalar> {
    classes: CylinderClasses,
    values: BTreeMap<ClassKey, S>,
}

impl<S: Scalar> CylinderPotential<S> {
    pub fn new(classes: CylinderClasses) -> Self {
        CylinderPotential { classes, values: BTreeMap::new() }
    }

    pub fn classes(&self) -> &CylinderClasses {
        &self.classes
    }

    pub fn set(&mut self, key: ClassKey, value: S) {
        if value.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, value);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ClassKey, &S)> {
        self.values.iter()
    }

    /// Value on an ordered triple of indices (any integers, not only labels).
    pub fn triple_value(&self, t: [i64; 3]) -> S {
        match self.classes.classify_triple(t) {
            Some((key, sign)) => match self.values.get(&key) {
                Some(x) if sign > 0 => x.clone(),
                Some(x) => -x.clone(),
                None => S::zero(),
            },
            None => S::zero(),
        }
    }

    /// Mean value over the up and down lattice faces.
    pub fn face_average(&self) -> S {
        let [up, down] = self.classes.cyl.faces_at(0);
        (self.triple_value(up) + self.triple_value(down)) / S::from_int(2)
    }
}

impl<S: Scalar> Potential<S> for CylinderPotential<S> {
    fn sorted_value(&self, t: [Vertex; 3]) -> S {
        self.triple_value(t.map(|x| x as i64))
    }
}

fn key_text(key: &ClassKey) -> String {
    key.iter()
        .map(|shape| {
            if shape.is_empty() {
                "*".to_string()
            } else {
                shape.iter().map(|(l, s)| format!("{l}.{s}")).join(",")
            }
        })
        .join("|")
}

fn parse_key(text: &str) -> Option<ClassKey> {
    text.split('|')
        .map(|shape| {
            if shape == "*" {
                return Some(Vec::new());
            }
            shape
                .split(',')
                .map(|p| {
                    let (l, s) = p.split_once('.')?;
                    Some((l.parse().ok()?, s.parse().ok()?))
                })
                .collect()
        })
        .collect()
}

impl CylinderPotential<BigRational> {
    /// Header `cyl <a> <b> <K>`, then `c <class> <p/q>` per nonzero class.
    /// A class is written cluster by cluster, separated by `|`; each cluster
    /// lists `Δlevel.Δspiral` offsets separated by `,`, or `*` for a single point.
    pub fn to_text(&self) -> String {
        let c = self.classes.cyl;
        let mut s = format!("cyl {} {} {}\n", c.a(), c.b(), self.classes.k);
        for (key, x) in &self.values {
            s.push_str(&format!("c {} {}\n", key_text(key), fmt_ratio(x)));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, ComplexError> {
        let mut out: Option<Self> = None;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |m: &str| ComplexError::Parse { line: i + 1, message: format!("{m}: `{line}`") };
            let parts: Vec<&str> = line.split_whitespace().collect();
            match (parts.first().copied(), &mut out) {
                (Some("cyl"), None) if parts.len() == 4 => {
                    let nums: Vec<u32> = parts[1..]
                        .iter()
                        .map(|p| p.parse())
                        .collect::<Result<_, _>>()
                        .map_err(|_| err("bad header"))?;
                    let cyl = Phyllocylinder::new(nums[0], nums[1]).map_err(|_| err("unsupported cylinder"))?;
                    out = Some(Self::new(CylinderClasses::new(cyl, nums[2])));
                }
                (Some("c"), Some(rho)) if parts.len() == 3 => {
                    let key = parse_key(parts[1]).ok_or_else(|| err("bad class"))?;
                    let x = parse_ratio(parts[2]).ok_or_else(|| err("bad value"))?;
                    rho.set(key, x);
                }
                _ => return Err(err("unexpected line")),
            }
        }
        out.ok_or(ComplexError::Parse { line: 1, message: "missing `cyl` header".into() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn classes(a: u32, b: u32, k: u32) -> CylinderClasses {
        CylinderClasses::new(Phyllocylinder::new(a, b).unwrap(), k)
    }

    #[test]
    fn single_spiral_classes_match_gaps() {
        let c = classes(5, 1, 6);
        let (k, s) = c.classify_triple([3, 4, 9]).unwrap();
        assert_eq!((k, s), (vec![vec![(1, 0), (6, 0)]], 1));
        // a far point is its own cluster regardless of distance
        let (k1, _) = c.classify_triple([0, 2, 30]).unwrap();
        let (k2, _) = c.classify_triple([0, 2, 9]).unwrap();
        assert_eq!(k1, k2);
        assert_eq!(k1, vec![vec![(2, 0)], vec![]]);
    }

    #[test]
    fn sign_follows_order() {
        let c = classes(4, 2, 5);
        let (k1, s1) = c.classify_triple([0, 3, 4]).unwrap();
        let (k2, s2) = c.classify_triple([0, 4, 3]).unwrap();
        assert_eq!(k1, k2);
        assert_eq!(s1, -s2);
    }

    #[test]
    fn same_level_pairs_on_two_spirals_are_symmetric() {
        // on Φ_{6,0}, six points per level; {0, 3} looks the same from either end
        let c = classes(6, 0, 2);
        assert!(c.classify_triple([0, 3, 20]).is_none());
        assert!(c.classify_triple([0, 1, 20]).is_some());
    }

    #[test]
    fn translation_invariance() {
        let c = classes(4, 2, 5);
        let mut rho = CylinderPotential::new(c);
        rho.set(c.classify_triple([0, 1, 3]).unwrap().0, rat(1, 2));
        for shift in [2i64, 4, 10] {
            assert_eq!(rho.triple_value([shift, shift + 1, shift + 3]), rho.triple_value([0, 1, 3]));
        }
    }

    #[test]
    fn text_round_trip() {
        let c = classes(4, 2, 5);
        let mut rho = CylinderPotential::new(c);
        rho.set(c.classify_triple([0, 1, 3]).unwrap().0, rat(31, 32));
        rho.set(c.classify_triple([0, 2, 40]).unwrap().0, rat(-1, 2));
        let text = rho.to_text();
        assert!(text.starts_with("cyl 4 2 5\n"));
        assert_eq!(CylinderPotential::from_text(&text).unwrap(), rho);
    }
}
