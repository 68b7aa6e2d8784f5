//! Finitely generated abelian groups presented as cokernels of integer matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::normal_form::{
    hermite_normal_form, kernel_basis, lattice_basis, lattice_contains, smith_normal_form,
    solve_integer,
};
use super::vector::IntVec;

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_1 | d_2 | ...`, together with the map
/// from the presenting lattice onto it.
///
/// `presentation_map` has `free_rank + torsion.len()` rows: the free coordinates first,
/// then one row per torsion coefficient (read modulo that coefficient).
#[derive(Clone)]
pub struct FinAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
    presentation_map: IntMatrix,
}

/// Element of a [`FinAbGroup`] in its normalized coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub free_part: IntVec,
    pub torsion_part: IntVec,
}

/// Index of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl Index {
    pub fn is_finite(&self) -> bool {
        matches!(self, Index::Finite(_))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(k) => write!(f, "{k}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.free_part.iter().chain(&self.torsion_part).all(Zero::is_zero)
    }

    /// Free coordinates followed by torsion coordinates.
    pub fn coordinates(&self) -> IntVec {
        self.free_part
            .iter()
            .chain(&self.torsion_part)
            .cloned()
            .collect()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coordinates().iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Cokernel of `m : Z^cols -> Z^rows`, i.e. `Z^rows / im(m)`, with its projection.
///
/// The free coordinates of the projection are put in Hermite form so the output does
/// not depend on incidental pivot choices.
pub fn cokernel(m: &IntMatrix) -> FinAbGroup {
    let rows = m.rows();
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let r = snf.rank();

    let mut torsion = Vec::new();
    let mut torsion_rows = Vec::new();
    for (i, d) in diag.iter().enumerate().take(r) {
        if d.is_one() {
            continue;
        }
        torsion.push(d.clone());
        torsion_rows.push(snf.u.row(i).iter().map(|x| x.mod_floor(d)).collect::<IntVec>());
    }
    let free_rows: Vec<IntVec> = (r..rows).map(|i| snf.u.row_vec(i)).collect();
    let free_rows = if free_rows.is_empty() {
        free_rows
    } else {
        let (h, _) = hermite_normal_form(&IntMatrix::from_rows(&free_rows, rows));
        h.row_vectors()
    };
    let free_rank = free_rows.len();
    let mut all = free_rows;
    all.extend(torsion_rows);
    FinAbGroup {
        free_rank,
        torsion,
        presentation_map: IntMatrix::from_rows(&all, rows),
    }
}

impl FinAbGroup {
    /// The abstract group with the given invariants; elements are presented by their
    /// own coordinates. Arbitrary positive orders are normalized into a divisibility chain.
    pub fn from_invariants(free_rank: usize, orders: &[BigInt]) -> Self {
        let k = orders.len();
        let mut rel = IntMatrix::zeros(free_rank + k, k);
        for (i, d) in orders.iter().enumerate() {
            rel[(free_rank + i, i)] = d.clone();
        }
        // the cokernel's presentation map is then in terms of the input coordinates
        cokernel(&rel)
    }

    pub fn trivial() -> Self {
        Self::from_invariants(0, &[])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn presentation_map(&self) -> &IntMatrix {
        &self.presentation_map
    }

    /// Rank of the presenting lattice.
    pub fn ambient_rank(&self) -> usize {
        self.presentation_map.cols()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Index {
        if self.free_rank > 0 {
            Index::Infinite
        } else {
            Index::Finite(self.torsion.iter().product())
        }
    }

    /// Largest invariant factor (1 for torsion-free groups).
    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free_part: vec![BigInt::zero(); self.free_rank],
            torsion_part: vec![BigInt::zero(); self.torsion.len()],
        }
    }

    /// Builds an element from free and torsion coordinates, reducing the latter.
    pub fn element(&self, free_part: IntVec, torsion_part: IntVec) -> GroupElement {
        assert_eq!(free_part.len(), self.free_rank, "free coordinate count");
        assert_eq!(torsion_part.len(), self.torsion.len(), "torsion coordinate count");
        self.reduce(GroupElement {
            free_part,
            torsion_part,
        })
    }

    /// Element from concatenated coordinates (free first).
    pub fn element_from_coordinates(&self, coords: &[BigInt]) -> Option<GroupElement> {
        if coords.len() != self.free_rank + self.torsion.len() {
            return None;
        }
        Some(self.element(
            coords[..self.free_rank].to_vec(),
            coords[self.free_rank..].to_vec(),
        ))
    }

    pub fn reduce(&self, mut e: GroupElement) -> GroupElement {
        for (x, d) in e.torsion_part.iter_mut().zip(&self.torsion) {
            *x = x.mod_floor(d);
        }
        e
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(GroupElement {
            free_part: super::vector::add(&a.free_part, &b.free_part),
            torsion_part: super::vector::add(&a.torsion_part, &b.torsion_part),
        })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(GroupElement {
            free_part: super::vector::sub(&a.free_part, &b.free_part),
            torsion_part: super::vector::sub(&a.torsion_part, &b.torsion_part),
        })
    }

    pub fn scale(&self, k: &BigInt, a: &GroupElement) -> GroupElement {
        self.reduce(GroupElement {
            free_part: super::vector::scale(k, &a.free_part),
            torsion_part: super::vector::scale(k, &a.torsion_part),
        })
    }

    /// Image of a vector of the presenting lattice.
    pub fn project(&self, x: &[BigInt]) -> GroupElement {
        let coords = self.presentation_map.mul_vec(x);
        self.reduce(GroupElement {
            free_part: coords[..self.free_rank].to_vec(),
            torsion_part: coords[self.free_rank..].to_vec(),
        })
    }

    /// Coordinates of the relation lattice `0 ⊕ d_i Z` inside the coordinate lattice.
    fn relation_columns(&self) -> Vec<IntVec> {
        let k = self.free_rank + self.torsion.len();
        self.torsion
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut c = vec![BigInt::zero(); k];
                c[self.free_rank + i] = d.clone();
                c
            })
            .collect()
    }

    /// Decides `x ∈ <gens>` by Hermite reduction of the lifted system.
    pub fn subgroup_membership(&self, x: &GroupElement, gens: &[GroupElement]) -> bool {
        let mut lattice: Vec<IntVec> = gens.iter().map(GroupElement::coordinates).collect();
        lattice.extend(self.relation_columns());
        lattice_contains(&lattice, &x.coordinates())
    }

    /// `[G : <gens>]`.
    pub fn subgroup_index(&self, gens: &[GroupElement]) -> Index {
        self.quotient(gens).order()
    }

    /// `G / <gens>`.
    pub fn quotient(&self, gens: &[GroupElement]) -> FinAbGroup {
        let k = self.free_rank + self.torsion.len();
        let mut cols: Vec<IntVec> = gens.iter().map(GroupElement::coordinates).collect();
        cols.extend(self.relation_columns());
        cokernel(&IntMatrix::from_columns(&cols, k))
    }

    /// Abstract isomorphism type of `<gens>`.
    pub fn subgroup_structure(&self, gens: &[GroupElement]) -> FinAbGroup {
        let k = self.free_rank + self.torsion.len();
        let g = gens.len();
        let mut cols: Vec<IntVec> = gens.iter().map(GroupElement::coordinates).collect();
        cols.extend(self.relation_columns());
        let system = IntMatrix::from_columns(&cols, k);
        let ker = kernel_basis(&system);
        let relations: Vec<IntVec> = ker
            .column_vectors()
            .into_iter()
            .map(|c| c[..g].to_vec())
            .collect();
        cokernel(&IntMatrix::from_columns(&relations, g))
    }

    /// Some preimage of `e` in the presenting lattice.
    pub fn lift(&self, e: &GroupElement) -> IntVec {
        let n = self.ambient_rank();
        let t = self.torsion.len();
        let k = self.free_rank + t;
        let mut system = IntMatrix::zeros(k, n + t);
        for i in 0..k {
            for j in 0..n {
                system[(i, j)] = self.presentation_map[(i, j)].clone();
            }
        }
        for (i, d) in self.torsion.iter().enumerate() {
            system[(self.free_rank + i, n + i)] = d.clone();
        }
        let sol = solve_integer(&system, &e.coordinates())
            .expect("presentation map of a cokernel is surjective");
        sol[..n].to_vec()
    }

    /// Canonical basis (Hermite rows) of the kernel of the presentation map.
    pub fn kernel_lattice(&self) -> Vec<IntVec> {
        let n = self.ambient_rank();
        let t = self.torsion.len();
        let k = self.free_rank + t;
        let mut system = IntMatrix::zeros(k, n + t);
        for i in 0..k {
            for j in 0..n {
                system[(i, j)] = self.presentation_map[(i, j)].clone();
            }
        }
        for (i, d) in self.torsion.iter().enumerate() {
            system[(self.free_rank + i, n + i)] = d.clone();
        }
        let ker = kernel_basis(&system);
        let gens: Vec<IntVec> = ker
            .column_vectors()
            .into_iter()
            .map(|c| c[..n].to_vec())
            .collect();
        lattice_basis(&gens, n)
    }

    /// Canonical generators `e_1, ..., e_k` (images of the coordinate unit vectors).
    pub fn canonical_generators(&self) -> Vec<GroupElement> {
        let k = self.free_rank + self.torsion.len();
        (0..k)
            .map(|i| {
                let mut c = vec![BigInt::zero(); k];
                c[i] = BigInt::one();
                self.element_from_coordinates(&c).unwrap()
            })
            .filter(|e| !e.is_zero())
            .collect()
    }
}

impl PartialEq for FinAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }
}

impl Eq for FinAbGroup {}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vector::int_vec;

    fn z(k: i64) -> BigInt {
        BigInt::from(k)
    }

    #[test]
    fn cokernel_of_zero_1x1_is_z() {
        let g = cokernel(&IntMatrix::zeros(1, 1));
        assert_eq!(g, FinAbGroup::from_invariants(1, &[]));
        assert_eq!(g.project(&int_vec(&[5])).free_part, int_vec(&[5]));
    }

    #[test]
    fn cokernel_of_empty_column_matrix_is_free() {
        let g = cokernel(&IntMatrix::zeros(3, 0));
        assert_eq!(g.free_rank(), 3);
        assert_eq!(g.presentation_map(), &IntMatrix::identity(3));
    }

    #[test]
    fn cokernel_p2() {
        let c = IntMatrix::from_i64_rows(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let g = cokernel(&c);
        assert_eq!(g.free_rank(), 1);
        assert!(g.torsion().is_empty());
        assert_eq!(g.presentation_map().row_vec(0), int_vec(&[1, 1, 1]));
    }

    #[test]
    fn cokernel_weighted_projective_plane() {
        let c = IntMatrix::from_i64_rows(&[&[1, 0], &[0, 1], &[-1, -2]]);
        let g = cokernel(&c);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.presentation_map().row_vec(0), int_vec(&[1, 2, 1]));
    }

    #[test]
    fn from_invariants_normalizes() {
        let g = FinAbGroup::from_invariants(0, &[z(2), z(3)]);
        assert_eq!(g.torsion(), &[z(6)]);
        let g = FinAbGroup::from_invariants(1, &[z(4), z(2)]);
        assert_eq!(g.torsion(), &[z(2), z(4)]);
    }

    #[test]
    fn index_examples() {
        let g = FinAbGroup::from_invariants(1, &[]);
        assert_eq!(g.subgroup_index(&g.canonical_generators()), Index::Finite(z(1)));
        let three = g.element(int_vec(&[3]), vec![]);
        assert_eq!(g.subgroup_index(&[three]), Index::Finite(z(3)));
        let g2 = FinAbGroup::from_invariants(2, &[]);
        let e = g2.element(int_vec(&[1, 0]), vec![]);
        assert_eq!(g2.subgroup_index(&[e]), Index::Infinite);
    }

    #[test]
    fn membership_examples() {
        let g = FinAbGroup::from_invariants(1, &[]);
        assert!(g.subgroup_membership(&g.zero(), &[]));
        let two = g.element(int_vec(&[2]), vec![]);
        let gens = [g.element(int_vec(&[4]), vec![]), g.element(int_vec(&[6]), vec![])];
        assert!(g.subgroup_membership(&two, &gens));
        let z2 = FinAbGroup::from_invariants(0, &[z(2)]);
        let gen = z2.element(vec![], int_vec(&[1]));
        assert!(!z2.subgroup_membership(&gen, &[]));
    }

    #[test]
    fn lift_and_kernel() {
        let c = IntMatrix::from_i64_rows(&[&[1, 0], &[1, 2]]);
        let g = cokernel(&c);
        assert_eq!(g.torsion(), &[z(2)]);
        for e in g.canonical_generators() {
            assert_eq!(g.project(&g.lift(&e)), e);
        }
        let ker = g.kernel_lattice();
        for k in &ker {
            assert!(g.project(k).is_zero());
        }
        assert_eq!(ker.len(), 2);
    }

    #[test]
    fn subgroup_structure_of_even_integers() {
        let g = FinAbGroup::from_invariants(1, &[z(2)]);
        let h = g.subgroup_structure(&[g.element(int_vec(&[2]), int_vec(&[1]))]);
        assert_eq!(h, FinAbGroup::from_invariants(1, &[]));
        let t = g.subgroup_structure(&[g.element(int_vec(&[0]), int_vec(&[1]))]);
        assert_eq!(t, FinAbGroup::from_invariants(0, &[z(2)]));
    }
}
