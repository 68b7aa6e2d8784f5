//! Virtual polytopes and the Picard group of a fan, embedded in the class group `A`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cox::{is_small, CoxGrading};
use crate::error::{Result, ToricError};
use crate::fan_scheme::Fan;
use crate::lattice::vector::{dot, IntVec};
use crate::lattice::{kernel_basis, FinAbGroup, GroupElement, Index, IntMatrix};

/// A family `(m_σ)` indexed by the maximal cones, stored in the order of
/// [`Fan::maximal_cones`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualPolytope {
    pub assignment: Vec<IntVec>,
}

impl VirtualPolytope {
    /// `(m_σ - m_τ)` vanishes on `σ ∩ τ` for every pair of maximal cones.
    pub fn is_compatible(&self, f: &Fan) -> bool {
        let maxes = f.maximal_cones();
        for (i, &s) in maxes.iter().enumerate() {
            for (j, &t) in maxes.iter().enumerate().skip(i + 1) {
                for rho in common_rays(f, s, t) {
                    let x = &f.rays()[rho];
                    if dot(&self.assignment[i], x) != dot(&self.assignment[j], x) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `(m_σ(ρ_N))_ρ` with `σ` any maximal cone containing `ρ`.
    pub fn ray_values(&self, f: &Fan) -> IntVec {
        let maxes = f.maximal_cones();
        (0..f.rays().len())
            .map(|rho| {
                let mut values = maxes
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| f.cone(m).rays.contains(&rho))
                    .map(|(i, _)| dot(&self.assignment[i], &f.rays()[rho]));
                let first = values.next().expect("every ray lies in a maximal cone");
                for v in values {
                    assert_eq!(v, first, "virtual polytope is compatible");
                }
                first
            })
            .collect()
    }
}

fn common_rays(f: &Fan, s: usize, t: usize) -> Vec<usize> {
    let other = &f.cone(t).rays;
    f.cone(s)
        .rays
        .iter()
        .copied()
        .filter(|r| other.contains(r))
        .collect()
}

/// A basis of the lattice of virtual polytopes (translations by `M` included).
pub fn virtual_polytope_lattice(f: &Fan) -> Vec<VirtualPolytope> {
    let n = f.ambient_rank();
    let maxes = f.maximal_cones();
    let unknowns = n * maxes.len();
    let mut rows: Vec<IntVec> = Vec::new();
    for (i, &s) in maxes.iter().enumerate() {
        for (j, &t) in maxes.iter().enumerate().skip(i + 1) {
            for rho in common_rays(f, s, t) {
                let mut row = vec![BigInt::zero(); unknowns];
                for (k, x) in f.rays()[rho].iter().enumerate() {
                    row[i * n + k] = x.clone();
                    row[j * n + k] = -x;
                }
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        IntMatrix::identity(unknowns)
    } else {
        kernel_basis(&IntMatrix::from_rows(&rows, unknowns))
    };
    basis
        .column_vectors()
        .into_iter()
        .map(|col| VirtualPolytope {
            assignment: col.chunks(n.max(1)).take(maxes.len()).map(|c| c[..n].to_vec()).collect(),
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct PicardGroup {
    pub generators: Vec<GroupElement>,
    pub abstract_type: FinAbGroup,
    pub index: Index,
}

pub fn picard_group(f: &Fan, g: &CoxGrading) -> Result<PicardGroup> {
    if f.is_empty() {
        return Err(ToricError::EmptyFan);
    }
    let a = g.class_group();
    let mut generators: Vec<GroupElement> = virtual_polytope_lattice(f)
        .iter()
        .map(|p| a.project(&p.ray_values(f)))
        .filter(|e| !e.is_zero())
        .collect();
    generators.sort();
    generators.dedup();
    Ok(PicardGroup {
        abstract_type: a.subgroup_structure(&generators),
        index: a.subgroup_index(&generators),
        generators,
    })
}

/// Outcome of checking that `Pic` is small, and big when the fan is simplicial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicPropertyReport {
    pub small: bool,
    pub big: bool,
    pub big_asserted: bool,
}

impl PicPropertyReport {
    pub fn passed(&self) -> bool {
        self.small && (self.big || !self.big_asserted)
    }
}

pub fn verify_pic_properties(f: &Fan, g: &CoxGrading, p: &PicardGroup) -> PicPropertyReport {
    PicPropertyReport {
        small: is_small(f, g, &p.generators),
        big: p.index.is_finite(),
        big_asserted: f.is_simplicial(),
    }
}
