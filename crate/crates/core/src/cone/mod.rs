//! Rational polyhedral cones over a lattice `N ≅ Z^n`.
//!
//! A [`Polycone`] keeps both descriptions in canonical form: primitive extreme rays
//! (reduced modulo the lineality lattice when the cone is not sharp) plus a Hermite
//! basis of the lineality lattice, and the same data for the dual cone, which are the
//! facet normals and the equations of the linear span. With sorted lists structural
//! equality coincides with equality of cones.

mod dd;
mod hilbert;

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Result, ToricError};
use crate::lattice::vector::{content, dot, is_zero_vec, neg, IntVec};
use crate::lattice::{kernel_basis, lattice_basis, reduce_mod_lattice, solve_integer, IntMatrix};

pub use dd::{cone_of_constraints, Generators};
pub use hilbert::{hilbert_basis, monoid_presentation_split, triangulate, MonoidBasis};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polycone {
    ambient_rank: usize,
    rays: Vec<IntVec>,
    lineality: Vec<IntVec>,
    facet_normals: Vec<IntVec>,
    equations: Vec<IntVec>,
}

/// Basis of `{y : y·v = 0 for all v in vectors}`, a saturated lattice.
pub(crate) fn perp_basis(vectors: &[IntVec], n: usize) -> Vec<IntVec> {
    kernel_basis(&IntMatrix::from_rows(vectors, n)).column_vectors()
}

/// Canonical (lineality lattice basis, sorted ray representatives) of a cone.
fn canonicalize(gens: &Generators, n: usize) -> (Vec<IntVec>, Vec<IntVec>) {
    if gens.lineality.is_empty() {
        let mut rays: Vec<IntVec> = gens
            .rays
            .iter()
            .filter(|r| !is_zero_vec(r))
            .map(|r| crate::lattice::vector::primitive(r))
            .collect();
        rays.sort();
        rays.dedup();
        return (Vec::new(), rays);
    }
    let perp = perp_basis(&gens.lineality, n);
    let saturated = perp_basis(&perp, n);
    let lineality = lattice_basis(&saturated, n);
    let quotient = IntMatrix::from_rows(&perp, n);
    let mut rays: Vec<IntVec> = Vec::new();
    for r in &gens.rays {
        let q = quotient.mul_vec(r);
        let g = content(&q);
        if g.is_zero() {
            continue;
        }
        let target: IntVec = q.iter().map(|x| x / &g).collect();
        let lift = solve_integer(&quotient, &target)
            .expect("quotient by a saturated lattice is surjective");
        rays.push(reduce_mod_lattice(&lift, &lineality));
    }
    rays.sort();
    rays.dedup();
    (lineality, rays)
}

fn with_equations(constraints: &[IntVec], equations: &[IntVec]) -> Vec<IntVec> {
    let mut all = constraints.to_vec();
    for e in equations {
        all.push(e.clone());
        all.push(neg(e));
    }
    all
}

impl Polycone {
    fn assemble(n: usize, primal: &Generators, dual: &Generators) -> Self {
        let (lineality, rays) = canonicalize(primal, n);
        let (equations, facet_normals) = canonicalize(dual, n);
        Self {
            ambient_rank: n,
            rays,
            lineality,
            facet_normals,
            equations,
        }
    }

    /// Nonnegative span of `vecs` in `R^n`. Redundant generators are dropped and the
    /// remaining ones primitivized.
    pub fn from_generators(vecs: &[IntVec], n: usize) -> Self {
        for v in vecs {
            assert_eq!(v.len(), n, "generator length must equal the ambient rank");
        }
        let dual = cone_of_constraints(vecs, n);
        let primal = cone_of_constraints(&with_equations(&dual.rays, &dual.lineality), n);
        Self::assemble(n, &primal, &dual)
    }

    /// `{x : u(x) >= 0 for u in inequalities, e(x) = 0 for e in equations}`.
    pub fn from_inequalities(inequalities: &[IntVec], equations: &[IntVec], n: usize) -> Self {
        let primal = cone_of_constraints(&with_equations(inequalities, equations), n);
        let dual = cone_of_constraints(&with_equations(&primal.rays, &primal.lineality), n);
        Self::assemble(n, &primal, &dual)
    }

    pub fn zero(n: usize) -> Self {
        Self::from_generators(&[], n)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Extreme ray generators (for a non-sharp cone: representatives modulo the
    /// lineality lattice).
    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    /// A generating set: the rays plus both signs of the lineality basis. For sharp
    /// cones this is the unique minimal generating set.
    pub fn generators(&self) -> Vec<IntVec> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(neg(l));
        }
        g
    }

    pub fn facet_normals(&self) -> &[IntVec] {
        &self.facet_normals
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    pub fn lineality_rank(&self) -> usize {
        self.lineality.len()
    }

    pub fn dim(&self) -> usize {
        self.ambient_rank - self.equations.len()
    }

    pub fn is_sharp(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_zero_cone(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// A sharp cone is simplicial when its rays are linearly independent.
    pub fn is_simplicial(&self) -> bool {
        self.is_sharp() && self.rays.len() == self.dim()
    }

    pub fn contains_point(&self, x: &[num_bigint::BigInt]) -> bool {
        self.facet_normals.iter().all(|u| !dot(u, x).is_negative())
            && self.equations.iter().all(|e| dot(e, x).is_zero())
    }

    pub fn dual(&self) -> Polycone {
        Polycone {
            ambient_rank: self.ambient_rank,
            rays: self.facet_normals.clone(),
            lineality: self.equations.clone(),
            facet_normals: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn intersect(&self, other: &Polycone) -> Polycone {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let mut ineq = self.facet_normals.clone();
        ineq.extend(other.facet_normals.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Polycone::from_inequalities(&ineq, &eqs, self.ambient_rank)
    }

    /// All faces, from the zero cone up to the cone itself, sorted by dimension.
    pub fn faces(&self) -> Result<Vec<Polycone>> {
        if !self.is_sharp() {
            return Err(ToricError::NotSharp);
        }
        let tight: Vec<BTreeSet<usize>> = self
            .facet_normals
            .iter()
            .map(|u| {
                (0..self.rays.len())
                    .filter(|&i| dot(u, &self.rays[i]).is_zero())
                    .collect()
            })
            .collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut stack = vec![(0..self.rays.len()).collect::<BTreeSet<usize>>()];
        while let Some(s) = stack.pop() {
            if !seen.insert(s.clone()) {
                continue;
            }
            for f in &tight {
                let t: BTreeSet<usize> = s.intersection(f).copied().collect();
                if !seen.contains(&t) {
                    stack.push(t);
                }
            }
        }
        let mut faces: Vec<Polycone> = seen
            .into_iter()
            .map(|s| {
                let gens: Vec<IntVec> = s.iter().map(|&i| self.rays[i].clone()).collect();
                Polycone::from_generators(&gens, self.ambient_rank)
            })
            .collect();
        faces.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.rays.cmp(&b.rays)));
        Ok(faces)
    }

    /// Whether `self` is a face of `other`: contained in it and equal to the
    /// intersection of `other` with every facet hyperplane containing `self`.
    pub fn is_face_of(&self, other: &Polycone) -> bool {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        if !self.generators().iter().all(|g| other.contains_point(g)) {
            return false;
        }
        let gens = self.generators();
        let mut eqs = other.equations.clone();
        for u in &other.facet_normals {
            if gens.iter().all(|g| dot(u, g).is_zero()) {
                eqs.push(u.clone());
            }
        }
        Polycone::from_inequalities(&other.facet_normals, &eqs, self.ambient_rank) == *self
    }

    /// A lattice point in the relative interior (the sum of the generators).
    pub fn relative_interior_point(&self) -> IntVec {
        let mut p = vec![num_bigint::BigInt::zero(); self.ambient_rank];
        for r in &self.rays {
            p = crate::lattice::vector::add(&p, r);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vector::int_vec;

    fn cone(gens: &[&[i64]], n: usize) -> Polycone {
        let g: Vec<IntVec> = gens.iter().map(|v| int_vec(v)).collect();
        Polycone::from_generators(&g, n)
    }

    #[test]
    fn empty_generators_give_zero_cone() {
        let c = cone(&[], 2);
        assert!(c.is_zero_cone());
        assert!(c.is_sharp());
        assert_eq!(c.dim(), 0);
    }

    #[test]
    fn interior_generator_is_removed() {
        let c = cone(&[&[1, 0], &[0, 1], &[1, 1]], 2);
        assert_eq!(c.rays(), &[int_vec(&[0, 1]), int_vec(&[1, 0])]);
    }

    #[test]
    fn generators_are_primitivized() {
        let c = cone(&[&[2, 0]], 2);
        assert_eq!(c.rays(), &[int_vec(&[1, 0])]);
    }

    #[test]
    fn dual_of_orthant_is_orthant() {
        let c = cone(&[&[1, 0], &[0, 1]], 2);
        assert_eq!(c.dual(), c);
    }

    #[test]
    fn dual_of_a1_cone() {
        let c = cone(&[&[1, 0], &[1, 2]], 2);
        assert_eq!(c.dual(), cone(&[&[0, 1], &[2, -1]], 2));
        assert_eq!(c.dual(), Polycone::from_generators(c.facet_normals(), 2));
    }

    #[test]
    fn dual_of_zero_cone_is_everything() {
        let d = cone(&[], 2).dual();
        assert_eq!(d.lineality_rank(), 2);
        assert!(d.rays().is_empty());
        assert_eq!(d, cone(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], 2));
    }

    #[test]
    fn halfplane_canonical_form() {
        let a = cone(&[&[1, 0], &[0, 1], &[0, -1]], 2);
        let b = cone(&[&[1, 5], &[0, 3], &[0, -1]], 2);
        assert_eq!(a, b);
        assert_eq!(a.rays(), &[int_vec(&[1, 0])]);
        assert_eq!(a.lineality(), &[int_vec(&[0, 1])]);
    }

    #[test]
    fn faces_of_orthant() {
        let f = cone(&[&[1, 0], &[0, 1]], 2).faces().unwrap();
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn faces_of_ray() {
        let f = cone(&[&[1, 1]], 2).faces().unwrap();
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn faces_of_non_sharp_cone_fail() {
        let c = cone(&[&[1, 0], &[-1, 0]], 2);
        assert_eq!(c.faces(), Err(ToricError::NotSharp));
    }

    #[test]
    fn face_relation_examples() {
        let orthant = cone(&[&[1, 0], &[0, 1]], 2);
        assert!(cone(&[], 2).is_face_of(&orthant));
        assert!(cone(&[&[1, 0]], 2).is_face_of(&orthant));
        assert!(!cone(&[&[1, 1]], 2).is_face_of(&orthant));
    }

    #[test]
    fn intersection_examples() {
        let orthant = cone(&[&[1, 0], &[0, 1]], 2);
        let other = cone(&[&[0, 1], &[-1, 0]], 2);
        assert_eq!(orthant.intersect(&other), cone(&[&[0, 1]], 2));
        assert_eq!(orthant.intersect(&orthant), orthant);
        let a = cone(&[&[1, 0], &[1, 2]], 2);
        let b = cone(&[&[1, 2], &[0, 1]], 2);
        assert_eq!(a.intersect(&b), cone(&[&[1, 2]], 2));
    }
}
