//! Hilbert bases of the monoids of lattice points in sharp cones.
//!
//! The cone is triangulated by pulling its first ray; every lattice point of a
//! simplicial piece is a point of its half-open fundamental parallelepiped plus an
//! N-combination of the rays. Those candidates are then reduced to the irreducible ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{perp_basis, Polycone};
use crate::error::{Result, ToricError};
use crate::lattice::vector::{dot, is_zero_vec, sub, IntVec};
use crate::lattice::{kernel_basis, reduce_mod_lattice, smith_normal_form, solve_integer, IntMatrix};

/// Minimal generating set of a pointed affine monoid, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MonoidBasis {
    pub elements: Vec<IntVec>,
}

impl MonoidBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Simplicial cones (as ray lists) covering a sharp cone.
pub fn triangulate(cone: &Polycone) -> Vec<Vec<IntVec>> {
    let rays = cone.rays();
    if rays.len() <= cone.dim() {
        return vec![rays.to_vec()];
    }
    let apex = &rays[0];
    let mut out = Vec::new();
    for u in cone.facet_normals() {
        if dot(u, apex).is_zero() {
            continue;
        }
        let facet: Vec<IntVec> = rays
            .iter()
            .filter(|r| dot(u, r).is_zero())
            .cloned()
            .collect();
        let facet = Polycone::from_generators(&facet, cone.ambient_rank());
        for mut simplex in triangulate(&facet) {
            simplex.push(apex.clone());
            out.push(simplex);
        }
    }
    out
}

/// Nonzero lattice points of `{Σ λ_i v_i : 0 <= λ_i < 1}` for linearly independent
/// columns `v_i` of a square matrix.
fn parallelepiped_points(basis: &[IntVec]) -> Vec<IntVec> {
    let d = basis.len();
    let v = IntMatrix::from_columns(basis, d);
    let (inv, den) = v.rational_inverse().expect("simplicial cone has independent rays");
    let snf = smith_normal_form(&v);
    let u_inv = snf
        .u
        .unimodular_inverse()
        .expect("Smith transform is unimodular");
    let orders = snf.diagonal();

    let mut points = Vec::new();
    let mut y = vec![BigInt::zero(); d];
    loop {
        let x = u_inv.mul_vec(&y);
        let lambda: IntVec = inv.mul_vec(&x).iter().map(|l| l.mod_floor(&den)).collect();
        let p: IntVec = v.mul_vec(&lambda).iter().map(|c| c / &den).collect();
        if !is_zero_vec(&p) {
            points.push(p);
        }
        // odometer over the box Π [0, d_i)
        let mut i = 0;
        loop {
            if i == d {
                return points;
            }
            y[i] += 1;
            if y[i] < orders[i] {
                break;
            }
            y[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// Hilbert basis of a full-dimensional sharp cone.
fn hilbert_basis_full(cone: &Polycone) -> Vec<IntVec> {
    let mut candidates: Vec<IntVec> = cone.rays().to_vec();
    for simplex in triangulate(cone) {
        candidates.extend(parallelepiped_points(&simplex));
    }
    candidates.sort();
    candidates.dedup();
    let irreducible: Vec<IntVec> = candidates
        .iter()
        .filter(|x| {
            !candidates
                .iter()
                .any(|y| y != *x && cone.contains_point(&sub(x, y)))
        })
        .cloned()
        .collect();
    irreducible
}

/// The unique minimal generating set of the monoid of lattice points of a sharp cone.
pub fn hilbert_basis(cone: &Polycone) -> Result<MonoidBasis> {
    if !cone.is_sharp() {
        return Err(ToricError::NotSharp);
    }
    if cone.rays().is_empty() {
        return Ok(MonoidBasis::default());
    }
    let n = cone.ambient_rank();
    let d = cone.dim();
    // lattice basis of span(cone) ∩ N
    let span = kernel_basis(&IntMatrix::from_rows(cone.equations(), n));
    let local_rays: Vec<IntVec> = cone
        .rays()
        .iter()
        .map(|r| solve_integer(&span, r).expect("ray lies in the saturated span"))
        .collect();
    let local = Polycone::from_generators(&local_rays, d);
    let mut elements: Vec<IntVec> = hilbert_basis_full(&local)
        .iter()
        .map(|y| span.mul_vec(y))
        .collect();
    elements.sort();
    Ok(MonoidBasis { elements })
}

/// Lattice points of an arbitrary cone as `(sharp part) × (unit group)`: returns a
/// Hilbert basis of the sharp quotient lifted to `N`, and a basis of the lineality
/// lattice.
pub fn monoid_presentation_split(cone: &Polycone) -> (MonoidBasis, Vec<IntVec>) {
    if cone.is_sharp() {
        return (hilbert_basis(cone).expect("sharp"), Vec::new());
    }
    let n = cone.ambient_rank();
    let units = cone.lineality().to_vec();
    let perp = perp_basis(&units, n);
    let quotient_map = IntMatrix::from_rows(&perp, n);
    let q_rays: Vec<IntVec> = cone.rays().iter().map(|r| quotient_map.mul_vec(r)).collect();
    let quotient = Polycone::from_generators(&q_rays, perp.len());
    let q_basis = hilbert_basis(&quotient).expect("quotient by the lineality space is sharp");
    let mut elements: Vec<IntVec> = q_basis
        .elements
        .iter()
        .map(|h| {
            let lift = solve_integer(&quotient_map, h).expect("quotient map is surjective");
            reduce_mod_lattice(&lift, &units)
        })
        .collect();
    elements.sort();
    (MonoidBasis { elements }, units)
}
