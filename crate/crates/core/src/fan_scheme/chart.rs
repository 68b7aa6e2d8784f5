//! Affine charts: generators and binomial relations of the monoid algebra of `σ∨ ∩ M`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::Fan;
use crate::cone::{monoid_presentation_split, perp_basis, MonoidBasis, Polycone};
use crate::error::{Result, ToricError};
use crate::lattice::vector::{add, dot, scale, sub, IntVec};
use crate::lattice::{solve_integer, IntMatrix};

pub const DEFAULT_DEGREE_BOUND: u32 = 12;

/// `x^lhs = x^rhs · t^unit_shift`, where `t` runs over the unit basis of the chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialRelation {
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
    pub unit_shift: IntVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPresentation {
    pub monoid_basis: MonoidBasis,
    /// Basis of the unit group `σ⊥ ∩ M`.
    pub units: Vec<IntVec>,
    pub unit_rank: usize,
    pub binomial_relations: Vec<BinomialRelation>,
}

impl ChartPresentation {
    /// The lattice point `Σ a_i h_i` for an exponent vector over the monoid basis.
    pub fn evaluate(&self, exponents: &[u32], n: usize) -> IntVec {
        let mut acc = vec![BigInt::zero(); n];
        for (a, h) in exponents.iter().zip(&self.monoid_basis.elements) {
            if *a > 0 {
                acc = add(&acc, &scale(&BigInt::from(*a), h));
            }
        }
        acc
    }

    /// `Σ c_i t_i` for a unit shift.
    pub fn unit_value(&self, shift: &[BigInt], n: usize) -> IntVec {
        let mut acc = vec![BigInt::zero(); n];
        for (c, t) in shift.iter().zip(&self.units) {
            acc = add(&acc, &scale(c, t));
        }
        acc
    }
}

/// Generators and relations of `R[σ∨ ∩ M]` for the cone with index `cone_index`.
///
/// Relations are complete for every fiber of the evaluation map whose grading is at
/// most `degree_bound` times the smallest generator weight, so each relation has total
/// degree at most `degree_bound`.
pub fn chart_presentation(f: &Fan, cone_index: usize, degree_bound: u32) -> ChartPresentation {
    let cone = &f.cone(cone_index).cone;
    presentation_of_dual(cone, degree_bound)
}

fn presentation_of_dual(cone: &Polycone, degree_bound: u32) -> ChartPresentation {
    let n = cone.ambient_rank();
    let (basis, units) = monoid_presentation_split(&cone.dual());
    let unit_rank = units.len();
    let relations = if basis.len() < 2 {
        Vec::new()
    } else {
        binomial_relations(&basis.elements, &units, n, degree_bound)
    };
    ChartPresentation {
        monoid_basis: basis,
        units,
        unit_rank,
        binomial_relations: relations,
    }
}

fn binomial_relations(
    basis: &[IntVec],
    units: &[IntVec],
    n: usize,
    degree_bound: u32,
) -> Vec<BinomialRelation> {
    let k = basis.len();
    let quotient = if units.is_empty() {
        IntMatrix::identity(n)
    } else {
        IntMatrix::from_rows(&perp_basis(units, n), n)
    };
    let q: Vec<IntVec> = basis.iter().map(|h| quotient.mul_vec(h)).collect();
    let q_cone = Polycone::from_generators(&q, quotient.rows());
    let mut w = vec![BigInt::zero(); quotient.rows()];
    for u in q_cone.facet_normals() {
        w = add(&w, u);
    }
    let weights: Vec<u64> = q
        .iter()
        .map(|v| dot(&w, v).to_u64().expect("generator weights are small and positive"))
        .collect();
    let w_min = *weights.iter().min().expect("nonempty basis");
    let budget = w_min * u64::from(degree_bound);

    // all exponent vectors of weight <= budget, grouped into fibers
    let mut fibers: BTreeMap<(u64, IntVec), Vec<Vec<u32>>> = BTreeMap::new();
    let mut a = vec![0u32; k];
    let mut weight = 0u64;
    loop {
        let value: IntVec = {
            let mut acc = vec![BigInt::zero(); quotient.rows()];
            for (ai, qi) in a.iter().zip(&q) {
                if *ai > 0 {
                    acc = add(&acc, &scale(&BigInt::from(*ai), qi));
                }
            }
            acc
        };
        fibers.entry((weight, value)).or_default().push(a.clone());
        let mut i = 0;
        loop {
            if i == k {
                return connect_fibers(fibers, basis, units, n);
            }
            if weight + weights[i] <= budget {
                a[i] += 1;
                weight += weights[i];
                break;
            }
            weight -= weights[i] * u64::from(a[i]);
            a[i] = 0;
            i += 1;
        }
    }
}

fn connect_fibers(
    fibers: BTreeMap<(u64, IntVec), Vec<Vec<u32>>>,
    basis: &[IntVec],
    units: &[IntVec],
    n: usize,
) -> Vec<BinomialRelation> {
    let unit_matrix = IntMatrix::from_columns(units, n);
    let mut moves: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut relations = Vec::new();
    for (_, mut fiber) in fibers {
        if fiber.len() < 2 {
            continue;
        }
        fiber.sort();
        let index: BTreeMap<Vec<u32>, usize> =
            fiber.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let mut parent: Vec<usize> = (0..fiber.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (i, a) in fiber.iter().enumerate() {
            for (p, r) in &moves {
                for (from, to) in [(p, r), (r, p)] {
                    if from.iter().zip(a).all(|(x, y)| x <= y) {
                        let b: Vec<u32> = a
                            .iter()
                            .zip(from.iter().zip(to))
                            .map(|(ai, (f, t))| ai - f + t)
                            .collect();
                        if let Some(&j) = index.get(&b) {
                            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                            parent[ri] = rj;
                        }
                    }
                }
            }
        }
        // smallest member of each component, in order
        let mut roots: Vec<usize> = Vec::new();
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..fiber.len() {
            let r = find(&mut parent, i);
            if !roots.contains(&r) {
                roots.push(r);
                reps.push(i);
            }
        }
        let head = fiber[reps[0]].clone();
        for &j in &reps[1..] {
            let other = fiber[j].clone();
            let diff = sub(&eval(&head, basis, n), &eval(&other, basis, n));
            let shift = if units.is_empty() {
                Vec::new()
            } else {
                solve_integer(&unit_matrix, &diff).expect("fiber difference is a unit")
            };
            moves.push((head.clone(), other.clone()));
            relations.push(BinomialRelation {
                lhs: head.clone(),
                rhs: other,
                unit_shift: shift,
            });
        }
    }
    relations
}

fn eval(a: &[u32], basis: &[IntVec], n: usize) -> IntVec {
    let mut acc = vec![BigInt::zero(); n];
    for (ai, h) in a.iter().zip(basis) {
        if *ai > 0 {
            acc = add(&acc, &scale(&BigInt::from(*ai), h));
        }
    }
    acc
}

/// An element `u ∈ σ∨ ∩ M` with `τ = σ ∩ ker(u)`: the sum of the monoid basis
/// elements of `σ` that vanish on `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingElement {
    pub element: IntVec,
    pub exponents: Vec<u32>,
}

pub fn gluing_element(f: &Fan, tau: usize, sigma: usize) -> Result<GluingElement> {
    if !f.is_face(tau, sigma) {
        return Err(ToricError::NotAFace {
            face: tau,
            cone: sigma,
        });
    }
    let n = f.ambient_rank();
    let (basis, _) = monoid_presentation_split(&f.cone(sigma).cone.dual());
    let tau_rays = f.cone(tau).cone.rays();
    let exponents: Vec<u32> = basis
        .elements
        .iter()
        .map(|h| u32::from(tau_rays.iter().all(|r| dot(h, r).is_zero())))
        .collect();
    Ok(GluingElement {
        element: eval(&exponents, &basis.elements, n),
        exponents,
    })
}
