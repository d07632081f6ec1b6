use std::collections::BTreeMap;

use num_rational::BigRational;

use super::Potential;
use crate::complex::{canonicalize, ComplexError, Vertex};
use crate::scalar::{fmt_ratio, parse_ratio, Scalar};

/// A potential stored explicitly on sorted triples; absent triples are 0.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumePotential<S: Scalar> {
    values: BTreeMap<[Vertex; 3], S>,
}

impl<S: Scalar> Default for VolumePotential<S> {
    fn default() -> Self {
        VolumePotential { values: BTreeMap::new() }
    }
}

impl<S: Scalar> VolumePotential<S> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `ρ(t)` for an ordered triple, so the sorted value gets the permutation sign.
    pub fn set(&mut self, t: [Vertex; 3], value: S) -> Result<(), ComplexError> {
        let (sorted, sign) = canonicalize(t)?;
        let value = if sign > 0 { value } else { -value };
        if value.is_zero() {
            self.values.remove(&sorted);
        } else {
            self.values.insert(sorted, value);
        }
        Ok(())
    }

    /// Nonzero values on sorted triples, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (&[Vertex; 3], &S)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Copies any potential's values on every triple of `0..v`.
    pub fn tabulate<P: Potential<S> + ?Sized>(rho: &P, v: u32) -> Self {
        let mut out = Self::new();
        for a in 0..v {
            for b in a + 1..v {
                for c in b + 1..v {
                    let x = rho.sorted_value([a, b, c]);
                    if !x.is_zero() {
                        out.values.insert([a, b, c], x);
                    }
                }
            }
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> VolumePotential<T> {
        VolumePotential {
            values: self
                .values
                .iter()
                .map(|(k, x)| (*k, f(x)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }
}

impl<S: Scalar> Potential<S> for VolumePotential<S> {
    fn sorted_value(&self, t: [Vertex; 3]) -> S {
        self.values.get(&t).cloned().unwrap_or_else(S::zero)
    }
}

impl VolumePotential<BigRational> {
    /// One `r a b c p/q` line per nonzero value, `a < b < c`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (t, x) in &self.values {
            s.push_str(&format!("r {} {} {} {}\n", t[0], t[1], t[2], fmt_ratio(x)));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, ComplexError> {
        let mut rho = Self::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = || ComplexError::Parse {
                line: i + 1,
                message: format!("expected `r a b c p/q`, got `{line}`"),
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 5 || parts[0] != "r" {
                return Err(err());
            }
            let mut t = [0 as Vertex; 3];
            for k in 0..3 {
                t[k] = parts[k + 1].parse().map_err(|_| err())?;
            }
            if !(t[0] < t[1] && t[1] < t[2]) {
                return Err(err());
            }
            let x = parse_ratio(parts[4]).ok_or_else(err)?;
            rho.set(t, x)?;
        }
        Ok(rho)
    }
}
