//! Monomial ideals of the polynomial ring `R[Z_ρ : ρ ∈ Σ1]`, by exponent vectors.

use std::fmt;

use crate::error::{Result, ToricError};

/// A monomial ideal given by its minimal generators (sorted).
///
/// An ideal with no generators is the zero ideal; the generator `0` is the unit ideal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<Vec<i64>>,
}

/// `a ≤ b` coordinatewise.
pub fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn minimalize(mut gens: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    gens.sort();
    gens.dedup();
    let keep: Vec<bool> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            !gens
                .iter()
                .enumerate()
                .any(|(j, h)| j != i && divides(h, g))
        })
        .collect();
    gens.into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect()
}

impl MonomialIdeal {
    pub fn new(nvars: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        for g in &generators {
            if g.len() != nvars {
                return Err(ToricError::InvalidInput(format!(
                    "monomial {g:?} has {} exponents, expected {nvars}",
                    g.len()
                )));
            }
            if g.iter().any(|&e| e < 0) {
                return Err(ToricError::InvalidInput(format!(
                    "monomial {g:?} has a negative exponent"
                )));
            }
        }
        Ok(Self::from_valid(nvars, generators))
    }

    pub(crate) fn from_valid(nvars: usize, generators: Vec<Vec<i64>>) -> Self {
        MonomialIdeal {
            nvars,
            generators: minimalize(generators),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            generators: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            generators: vec![vec![0; nvars]],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    /// Membership of the monomial with exponent `m` (entries may be negative, in which
    /// case the answer is about the monomial in `S`, so `false`).
    pub fn contains(&self, m: &[i64]) -> bool {
        m.iter().all(|&e| e >= 0) && self.generators.iter().any(|g| divides(g, m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Self {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::from_valid(self.nvars, gens)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Self {
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Self::from_valid(self.nvars, gens)
    }

    pub fn power(&self, k: u32) -> Self {
        let mut acc = Self::unit(self.nvars);
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Self {
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(lcm(a, b));
            }
        }
        Self::from_valid(self.nvars, gens)
    }

    /// `(self : z^g)`.
    pub fn colon_monomial(&self, g: &[i64]) -> Self {
        let gens = self
            .generators
            .iter()
            .map(|a| a.iter().zip(g).map(|(x, y)| (x - y).max(0)).collect())
            .collect();
        Self::from_valid(self.nvars, gens)
    }

    /// `(self : z^g^∞)`: exponents on the support of `g` are dropped.
    pub fn stable_colon_monomial(&self, g: &[i64]) -> Self {
        let gens = self
            .generators
            .iter()
            .map(|a| {
                a.iter()
                    .zip(g)
                    .map(|(x, y)| if *y > 0 { 0 } else { *x })
                    .collect()
            })
            .collect();
        Self::from_valid(self.nvars, gens)
    }

    /// `(self : other)`.
    pub fn colon(&self, other: &MonomialIdeal) -> Self {
        if other.is_zero() {
            return Self::unit(self.nvars);
        }
        let mut acc: Option<Self> = None;
        for g in &other.generators {
            let c = self.colon_monomial(g);
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c),
            });
        }
        acc.unwrap()
    }

    /// `⋃_k (self : other^k)`, as the intersection of the stable colons by the
    /// generators of `other`.
    pub fn saturate(&self, other: &MonomialIdeal) -> Self {
        if other.is_zero() {
            return Self::unit(self.nvars);
        }
        let mut acc: Option<Self> = None;
        for g in &other.generators {
            let c = self.stable_colon_monomial(g);
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c),
            });
        }
        acc.unwrap()
    }

    pub fn max_exponent(&self) -> i64 {
        self.generators
            .iter()
            .flat_map(|g| g.iter().copied())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g:?}")?;
        }
        write!(f, ">")
    }
}
