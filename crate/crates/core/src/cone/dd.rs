//! Double description: generators of `{x : h(x) >= 0 for every constraint h}`.
//!
//! Constraints are added one at a time (Fourier–Motzkin in the dual picture). A pair
//! of rays on opposite sides of a new constraint is combined only when it is adjacent,
//! which is decided by the rank of the previously processed constraints tight at both.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::vector::{dot, is_zero_vec, primitive, unit_vector, IntVec};
use crate::lattice::IntMatrix;

/// Lineality basis and extreme ray representatives of a polyhedral cone.
#[derive(Clone, Debug, Default)]
pub struct Generators {
    pub lineality: Vec<IntVec>,
    pub rays: Vec<IntVec>,
}

/// Generators of the cone cut out by `constraints` in `Q^dim`.
pub fn cone_of_constraints(constraints: &[IntVec], dim: usize) -> Generators {
    let mut lineality: Vec<IntVec> = (0..dim).map(|i| unit_vector(dim, i)).collect();
    let mut rays: Vec<IntVec> = Vec::new();
    let mut processed: Vec<IntVec> = Vec::new();

    for h in constraints {
        debug_assert_eq!(h.len(), dim);
        if is_zero_vec(h) {
            continue;
        }
        if let Some(idx) = lineality.iter().position(|l| !dot(h, l).is_zero()) {
            let mut l = lineality.remove(idx);
            let mut hl = dot(h, &l);
            if hl.is_negative() {
                l = l.iter().map(|x| -x).collect();
                hl = -hl;
            }
            let straighten = |v: &IntVec| -> IntVec {
                let hv = dot(h, v);
                let w: IntVec = v
                    .iter()
                    .zip(&l)
                    .map(|(vi, li)| &hl * vi - &hv * li)
                    .collect();
                primitive(&w)
            };
            lineality = lineality.iter().map(straighten).collect();
            rays = rays.iter().map(straighten).collect();
            rays.push(primitive(&l));
        } else {
            let values: Vec<BigInt> = rays.iter().map(|r| dot(h, r)).collect();
            let effective_dim = dim - lineality.len();
            let mut next: Vec<IntVec> = Vec::new();
            for (r, v) in rays.iter().zip(&values) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (i, p) in rays.iter().enumerate() {
                if !values[i].is_positive() {
                    continue;
                }
                for (j, q) in rays.iter().enumerate() {
                    if !values[j].is_negative() {
                        continue;
                    }
                    if !adjacent(p, q, &processed, effective_dim) {
                        continue;
                    }
                    let (hp, hq) = (&values[i], &values[j]);
                    let w: IntVec = p
                        .iter()
                        .zip(q)
                        .map(|(pi, qi)| hp * qi - hq * pi)
                        .collect();
                    next.push(primitive(&w));
                }
            }
            next.sort();
            next.dedup();
            rays = next;
        }
        processed.push(h.clone());
    }
    Generators { lineality, rays }
}

fn adjacent(p: &IntVec, q: &IntVec, processed: &[IntVec], effective_dim: usize) -> bool {
    if effective_dim < 2 {
        return false;
    }
    let tight: Vec<IntVec> = processed
        .iter()
        .filter(|h| dot(h, p).is_zero() && dot(h, q).is_zero())
        .cloned()
        .collect();
    if tight.len() + 2 < effective_dim {
        return false;
    }
    let cols = p.len();
    let rank = if tight.is_empty() {
        0
    } else {
        IntMatrix::from_rows(&tight, cols).rank()
    };
    rank + 2 == effective_dim
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vector::int_vec;

    #[test]
    fn orthant() {
        let g = cone_of_constraints(&[int_vec(&[1, 0]), int_vec(&[0, 1])], 2);
        assert!(g.lineality.is_empty());
        let mut rays = g.rays;
        rays.sort();
        assert_eq!(rays, vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
    }

    #[test]
    fn halfplane_keeps_a_line() {
        let g = cone_of_constraints(&[int_vec(&[1, 0])], 2);
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.rays.len(), 1);
    }

    #[test]
    fn redundant_constraint_dropped() {
        let g = cone_of_constraints(
            &[int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[1, 1])],
            2,
        );
        assert_eq!(g.rays.len(), 2);
    }

    #[test]
    fn square_pyramid_dual() {
        // facets of the cone over a square
        let cons = [
            int_vec(&[1, 0, 1]),
            int_vec(&[-1, 0, 1]),
            int_vec(&[0, 1, 1]),
            int_vec(&[0, -1, 1]),
        ];
        let g = cone_of_constraints(&cons, 3);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays.len(), 4);
        for r in &g.rays {
            assert_eq!(r[2], BigInt::from(1));
        }
    }
}
