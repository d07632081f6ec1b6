//! Formal sums of oriented simplices with coefficients in a signed ring.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::ops::{Add, Neg, Sub};

use num_traits::Signed;

use super::simplex::{sort_with_sign, tet_faces, Vertex};
use super::ComplexError;

/// A finite chain keyed by sorted `N`-tuples. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain<const N: usize, C> {
    coeffs: BTreeMap<[Vertex; N], C>,
}

/// Integer (or fractional) 2-chain: weighted oriented triangles.
pub type Chain2<C = i64> = Chain<3, C>;
/// Integer (or fractional) 3-chain: weighted oriented tetrahedra.
pub type Chain3<C = i64> = Chain<4, C>;

impl<const N: usize, C> Default for Chain<N, C> {
    fn default() -> Self {
        Chain {
            coeffs: BTreeMap::new(),
        }
    }
}

impl<const N: usize, C: Signed + Clone> Chain<N, C> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coef` times the oriented simplex `tuple` (any vertex order).
    pub fn add_simplex(&mut self, tuple: [Vertex; N], coef: C) -> Result<(), ComplexError> {
        let (sorted, sign) = super::simplex::canonicalize(tuple)?;
        self.add_canonical(sorted, if sign > 0 { coef } else { -coef });
        Ok(())
    }

    /// Adds to a sorted tuple directly.
    pub fn add_canonical(&mut self, sorted: [Vertex; N], coef: C) {
        if coef.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&sorted) {
            Some(c) => {
                *c = c.clone() + coef;
                if c.is_zero() {
                    self.coeffs.remove(&sorted);
                }
            }
            None => {
                self.coeffs.insert(sorted, coef);
            }
        }
    }

    /// Coefficient of an oriented tuple (sign-adjusted), zero when absent.
    pub fn coefficient(&self, tuple: [Vertex; N]) -> C {
        let (sorted, sign) = sort_with_sign(tuple);
        match self.coeffs.get(&sorted) {
            Some(c) if sign > 0 => c.clone(),
            Some(c) => -c.clone(),
            None => C::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Vertex; N], &C)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of absolute coefficients (`|τ|` for a tetration).
    pub fn mass(&self) -> C {
        self.coeffs.values().fold(C::zero(), |acc, c| acc + c.abs())
    }

    pub fn scale(&self, factor: &C) -> Self {
        let mut out = Self::new();
        for (k, c) in &self.coeffs {
            out.add_canonical(*k, c.clone() * factor.clone());
        }
        out
    }

    /// Applies `f` to every coefficient (for ring changes such as `i64 -> Rational`).
    pub fn map<D: Signed + Clone>(&self, f: impl Fn(&C) -> D) -> Chain<N, D> {
        let mut out = Chain::new();
        for (k, c) in &self.coeffs {
            out.add_canonical(*k, f(c));
        }
        out
    }

    /// Largest label appearing in the chain.
    pub fn max_vertex(&self) -> Option<Vertex> {
        self.coeffs.keys().flat_map(|k| k.iter().copied()).max()
    }

    /// True when every coefficient is `+1` or `-1`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.values().all(|c| c.abs() == C::one())
    }
}

impl<C: Signed + Clone> Chain3<C> {
    /// `∂[abcd] = [bcd] - [acd] + [abd] - [abc]`, extended linearly.
    pub fn boundary(&self) -> Chain2<C> {
        let mut out = Chain2::new();
        for (tet, c) in &self.coeffs {
            for (face, sign) in tet_faces(*tet) {
                out.add_canonical(face, if sign > 0 { c.clone() } else { -c.clone() });
            }
        }
        out
    }

    /// A tetration of `target`: unit coefficients and boundary equal to it.
    pub fn is_tetration_of(&self, target: &Chain2<C>) -> bool {
        self.is_unit() && self.boundary() == *target
    }
}

impl<const N: usize, C: Signed + Clone> Add for &Chain<N, C> {
    type Output = Chain<N, C>;

    fn add(self, rhs: Self) -> Chain<N, C> {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_canonical(*k, c.clone());
        }
        out
    }
}

impl<const N: usize, C: Signed + Clone> Sub for &Chain<N, C> {
    type Output = Chain<N, C>;

    fn sub(self, rhs: Self) -> Chain<N, C> {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_canonical(*k, -c.clone());
        }
        out
    }
}

impl<const N: usize, C: Signed + Clone> Neg for &Chain<N, C> {
    type Output = Chain<N, C>;

    fn neg(self) -> Chain<N, C> {
        self.map(|c| -c.clone())
    }
}

impl<const N: usize, C: Signed + Clone> FromIterator<([Vertex; N], C)> for Chain<N, C> {
    /// Collects sorted tuples with coefficients, summing repeats.
    fn from_iter<I: IntoIterator<Item = ([Vertex; N], C)>>(iter: I) -> Self {
        let mut out = Chain::new();
        for (k, c) in iter {
            let (sorted, sign) = sort_with_sign(k);
            out.add_canonical(sorted, if sign > 0 { c } else { -c });
        }
        out
    }
}

impl<C: Signed + Clone + Display> Chain3<C> {
    /// One `t a b c d coef` line per stored tet, sorted labels.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (t, c) in &self.coeffs {
            s.push_str(&format!("t {} {} {} {} {}\n", t[0], t[1], t[2], t[3], c));
        }
        s
    }
}

impl Chain3<i64> {
    pub fn from_text(text: &str) -> Result<Self, ComplexError> {
        let mut chain = Chain3::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = || ComplexError::Parse {
                line: lineno + 1,
                message: format!("expected `t a b c d coef`, got `{line}`"),
            };
            let mut parts = line.split_whitespace();
            if parts.next() != Some("t") {
                return Err(parse_err());
            }
            let nums: Vec<i64> = parts
                .map(|p| p.parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| parse_err())?;
            if nums.len() != 5 || nums[..4].iter().any(|&x| x < 0 || x > u32::MAX as i64) {
                return Err(parse_err());
            }
            let tet = [nums[0] as u32, nums[1] as u32, nums[2] as u32, nums[3] as u32];
            chain.add_simplex(tet, nums[4])?;
        }
        Ok(chain)
    }
}
