//! Cohomology of monomial modules over the Cox ring: Čech cohomology on the cover by
//! maximal-cone charts, local cohomology with respect to the irrelevant ideal via the
//! stable Koszul complex, torsion, saturation and the comparison between the two.

mod complex;
mod compute;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

pub use compute::{
    chart_monomial_predicate, CohomologyContext, CohomologyReport, FinitenessReport,
    PieceStability, SgDegreeReport, SgReport, TorsionPiece,
};

use crate::cox::MonomialIdeal;
use crate::error::{Result, ToricError};
use crate::lattice::{FinAbGroup, GroupElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Rationals,
    PrimeField(u64),
    Integers,
}

impl BaseRing {
    pub fn is_field(self) -> bool {
        !matches!(self, BaseRing::Integers)
    }

    /// Parses `QQ`, `ZZ`, `F<p>` or `Fp` (the latter with `prime` supplied).
    pub fn parse(s: &str, prime: Option<u64>) -> Result<Self> {
        let bad = || ToricError::InvalidInput(format!("unknown base ring '{s}'"));
        let base = match s {
            "QQ" | "Q" => BaseRing::Rationals,
            "ZZ" | "Z" => BaseRing::Integers,
            "Fp" => BaseRing::PrimeField(prime.ok_or_else(|| {
                ToricError::InvalidInput("base Fp needs a prime".into())
            })?),
            _ => {
                let p = s.strip_prefix('F').ok_or_else(bad)?;
                BaseRing::PrimeField(u64::from_str(p).map_err(|_| bad())?)
            }
        };
        if let BaseRing::PrimeField(p) = base {
            if !is_prime(p) {
                return Err(ToricError::InvalidInput(format!("{p} is not prime")));
            }
        }
        Ok(base)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Rationals => write!(f, "QQ"),
            BaseRing::Integers => write!(f, "ZZ"),
            BaseRing::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// A finitely generated module over the base: a dimension over a field, or free rank
/// and invariant factors over `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModuleDescriptor {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl ModuleDescriptor {
    /// Normalizes the torsion part into a divisibility chain.
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Self {
        let torsion = FinAbGroup::from_invariants(0, &torsion).torsion().to_vec();
        ModuleDescriptor { rank, torsion }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &ModuleDescriptor) -> Self {
        let mut t = self.torsion.clone();
        t.extend(other.torsion.iter().cloned());
        Self::new(self.rank + other.rank, t)
    }

    /// `k` copies.
    pub fn times(&self, k: u64) -> Self {
        let mut t = Vec::new();
        for _ in 0..k {
            t.extend(self.torsion.iter().cloned());
        }
        Self::new(self.rank * k as usize, t)
    }
}

impl fmt::Display for ModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(format!("rank {}", self.rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `S_B(shift) / annihilator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub shift: GroupElement,
    pub annihilator: MonomialIdeal,
}

/// A finite direct sum of shifted monomial cyclic modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialModule {
    pub summands: Vec<Summand>,
}

impl MonomialModule {
    /// The free module `S_B(shift)`.
    pub fn free(nvars: usize, shift: GroupElement) -> Self {
        Self::quotient(shift, MonomialIdeal::zero(nvars))
    }

    pub fn quotient(shift: GroupElement, annihilator: MonomialIdeal) -> Self {
        MonomialModule {
            summands: vec![Summand { shift, annihilator }],
        }
    }

    pub fn zero() -> Self {
        MonomialModule {
            summands: Vec::new(),
        }
    }
}

/// `⋃_k (a : i^k)` inside the Cox ring.
pub fn saturate(a: &MonomialIdeal, i: &MonomialIdeal) -> MonomialIdeal {
    a.saturate(i)
}
