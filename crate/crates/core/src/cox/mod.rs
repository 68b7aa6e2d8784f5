//! The Cox ring layer: the sequence `M -> Z^Σ1 -> A -> 0`, the monomials `Ẑ_σ`, the
//! irrelevant ideal, subgroups `B ⊆ A`, and the degree-zero chart monoids.

mod ideal;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

pub use ideal::{divides, lcm, MonomialIdeal};

use crate::cone::{monoid_presentation_split, Polycone};
use crate::error::{Result, ToricError};
use crate::fan_scheme::Fan;
use crate::lattice::vector::{add, scale, IntVec};
use crate::lattice::{cokernel, lattice_basis, reduce_mod_lattice, FinAbGroup, GroupElement, Index, IntMatrix};

/// `c : M -> Z^Σ1`, its cokernel `A`, and the ray degrees `α_ρ`.
#[derive(Clone, Debug)]
pub struct CoxGrading {
    c_matrix: IntMatrix,
    class_group: FinAbGroup,
    ray_degrees: Vec<GroupElement>,
}

pub fn cox_grading(f: &Fan) -> CoxGrading {
    let c_matrix = f.ray_matrix();
    let class_group = cokernel(&c_matrix);
    let r = f.rays().len();
    let ray_degrees = (0..r)
        .map(|i| {
            let mut e = vec![BigInt::zero(); r];
            e[i] = BigInt::one();
            class_group.project(&e)
        })
        .collect();
    CoxGrading {
        c_matrix,
        class_group,
        ray_degrees,
    }
}

impl CoxGrading {
    /// Rows indexed by rays: `c(u)_ρ = u(ρ_N)`.
    pub fn c_matrix(&self) -> &IntMatrix {
        &self.c_matrix
    }

    pub fn class_group(&self) -> &FinAbGroup {
        &self.class_group
    }

    pub fn ray_degrees(&self) -> &[GroupElement] {
        &self.ray_degrees
    }

    pub fn ray_count(&self) -> usize {
        self.ray_degrees.len()
    }

    /// `a(v)`.
    pub fn degree(&self, v: &[i64]) -> GroupElement {
        let v: IntVec = v.iter().map(|&x| BigInt::from(x)).collect();
        self.class_group.project(&v)
    }

    pub fn degree_of(&self, v: &[BigInt]) -> GroupElement {
        self.class_group.project(v)
    }

    /// `c(u)`.
    pub fn c(&self, u: &[BigInt]) -> IntVec {
        self.c_matrix.mul_vec(u)
    }

    pub fn is_c_injective(&self) -> bool {
        let n = self.c_matrix.cols();
        n == 0 || self.c_matrix.rank() == n
    }

    /// Hermite basis of `im(c)`.
    pub fn image_lattice(&self) -> Vec<IntVec> {
        lattice_basis(&self.c_matrix.column_vectors(), self.ray_count())
    }
}

/// The exponent vector of `Ẑ_σ`: ones on the rays outside `σ`.
pub fn zhat(f: &Fan, cone_index: usize) -> Vec<i64> {
    let rays = &f.cone(cone_index).rays;
    (0..f.rays().len())
        .map(|i| i64::from(!rays.contains(&i)))
        .collect()
}

/// `⟨Ẑ_σ : σ ∈ Σ⟩`, minimally generated by the maximal cones.
pub fn irrelevant_ideal(f: &Fan) -> MonomialIdeal {
    let gens = f.maximal_cones().iter().map(|&m| zhat(f, m)).collect();
    MonomialIdeal::from_valid(f.rays().len(), gens)
}

/// A subgroup `B ⊆ A` with its big/small flags.
#[derive(Clone, Debug)]
pub struct SubgroupB {
    pub generators: Vec<GroupElement>,
    pub index: Index,
    pub big: bool,
    pub small: bool,
}

impl SubgroupB {
    pub fn new(f: &Fan, g: &CoxGrading, generators: Vec<GroupElement>) -> Self {
        let index = g.class_group.subgroup_index(&generators);
        let big = index.is_finite();
        let small = is_small(f, g, &generators);
        SubgroupB {
            generators,
            index,
            big,
            small,
        }
    }

    /// `B = A`.
    pub fn whole(f: &Fan, g: &CoxGrading) -> Self {
        Self::new(f, g, g.class_group.canonical_generators())
    }

    pub fn contains(&self, g: &CoxGrading, alpha: &GroupElement) -> bool {
        g.class_group.subgroup_membership(alpha, &self.generators)
    }
}

pub fn is_big(b: &[GroupElement], g: &CoxGrading) -> bool {
    g.class_group.subgroup_index(b).is_finite()
}

/// `B ⊆ ⋂_σ ⟨α_ρ : ρ ∉ σ⟩`.
pub fn is_small(f: &Fan, g: &CoxGrading, b: &[GroupElement]) -> bool {
    f.cones().iter().all(|c| {
        let span: Vec<GroupElement> = (0..g.ray_count())
            .filter(|i| !c.rays.contains(i))
            .map(|i| g.ray_degrees[i].clone())
            .collect();
        b.iter()
            .all(|x| g.class_group.subgroup_membership(x, &span))
    })
}

/// Least `m >= 1` with `m · deg(Ẑ_σ) ∈ B` for every cone `σ`.
pub fn restriction_exponent(b: &SubgroupB, f: &Fan, g: &CoxGrading) -> Result<u64> {
    let index = match &b.index {
        Index::Finite(k) => k.clone(),
        Index::Infinite => return Err(ToricError::NotBig),
    };
    let bound = (index * g.class_group.exponent())
        .to_u64()
        .ok_or_else(|| ToricError::InvalidInput("subgroup index too large".into()))?;
    let degrees: Vec<GroupElement> = (0..f.cones().len())
        .map(|i| g.degree(&zhat(f, i)))
        .collect();
    for m in 1..=bound {
        let k = BigInt::from(m);
        if degrees
            .iter()
            .all(|d| b.contains(g, &g.class_group.scale(&k, d)))
        {
            return Ok(m);
        }
    }
    Err(ToricError::NotBig)
}

/// Generators `Ẑ_σ^m` (σ maximal) of an ideal of `S_B` with the same radical as `I_B`.
pub fn restricted_irrelevant_ideal(f: &Fan, g: &CoxGrading, b: &SubgroupB) -> Result<MonomialIdeal> {
    let m = restriction_exponent(b, f, g)? as i64;
    let gens = f
        .maximal_cones()
        .iter()
        .map(|&s| zhat(f, s).iter().map(|e| e * m).collect())
        .collect();
    Ok(MonomialIdeal::from_valid(f.rays().len(), gens))
}

/// A pointed monoid times a free unit group, both inside `Z^Σ1`, in canonical form:
/// `units` is a Hermite basis and `elements` are reduced modulo it and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartMonoid {
    pub elements: Vec<IntVec>,
    pub units: Vec<IntVec>,
}

impl ChartMonoid {
    fn canonical(elements: Vec<IntVec>, units: Vec<IntVec>, dim: usize) -> Self {
        let units = lattice_basis(&units, dim);
        let mut elements: Vec<IntVec> = elements
            .iter()
            .map(|e| reduce_mod_lattice(e, &units))
            .collect();
        elements.sort();
        elements.dedup();
        ChartMonoid { elements, units }
    }
}

/// `{v ∈ Z^Σ1 : a(v) = 0, v_ρ >= 0 for ρ ∈ σ}`, the monoid of the degree-zero chart ring.
pub fn chart_degree_zero(f: &Fan, g: &CoxGrading, cone_index: usize) -> ChartMonoid {
    let r = g.ray_count();
    let kernel = g.class_group.kernel_lattice();
    let k = kernel.len();
    let inequalities: Vec<IntVec> = f
        .cone(cone_index)
        .rays
        .iter()
        .map(|&rho| kernel.iter().map(|b| b[rho].clone()).collect())
        .collect();
    let cone = Polycone::from_inequalities(&inequalities, &[], k);
    let (basis, units) = monoid_presentation_split(&cone);
    let embed = |y: &IntVec| -> IntVec {
        let mut acc = vec![BigInt::zero(); r];
        for (yi, b) in y.iter().zip(&kernel) {
            acc = add(&acc, &scale(yi, b));
        }
        acc
    };
    ChartMonoid::canonical(
        basis.elements.iter().map(embed).collect(),
        units.iter().map(embed).collect(),
        r,
    )
}

/// Whether `c` maps `σ∨ ∩ M` isomorphically onto the degree-zero chart monoid.
pub fn compare_chart_iso(f: &Fan, g: &CoxGrading, cone_index: usize) -> bool {
    if !g.is_c_injective() {
        return false;
    }
    let (basis, units) = monoid_presentation_split(&f.cone(cone_index).cone.dual());
    let image = ChartMonoid::canonical(
        basis.elements.iter().map(|u| g.c(u)).collect(),
        units.iter().map(|u| g.c(u)).collect(),
        g.ray_count(),
    );
    image == chart_degree_zero(f, g, cone_index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::lattice::vector::int_vec;

    fn free_degrees(g: &CoxGrading) -> Vec<IntVec> {
        g.ray_degrees().iter().map(|d| d.coordinates()).collect()
    }

    #[test]
    fn p2_grading() {
        let g = cox_grading(&catalog::p2());
        assert_eq!(g.class_group().free_rank(), 1);
        assert!(g.class_group().torsion().is_empty());
        let d = free_degrees(&g);
        assert!(d == vec![int_vec(&[1]); 3] || d == vec![int_vec(&[-1]); 3]);
    }

    #[test]
    fn blowup_grading() {
        let g = cox_grading(&catalog::blowup_chart());
        let d = free_degrees(&g);
        assert!(
            d == vec![int_vec(&[-1]), int_vec(&[-1]), int_vec(&[1])]
                || d == vec![int_vec(&[1]), int_vec(&[1]), int_vec(&[-1])]
        );
    }

    #[test]
    fn a1_class_group() {
        let g = cox_grading(&catalog::a1());
        assert_eq!(g.class_group().free_rank(), 0);
        assert_eq!(g.class_group().torsion(), &[BigInt::from(2)]);
    }

    #[test]
    fn zhat_examples() {
        let p2 = catalog::p2();
        assert_eq!(zhat(&p2, p2.find_cone(&[0, 1]).unwrap()), vec![0, 0, 1]);
        assert_eq!(zhat(&p2, p2.zero_cone().unwrap()), vec![1, 1, 1]);
        let o = catalog::orthant();
        assert_eq!(zhat(&o, o.find_cone(&[0, 1]).unwrap()), vec![0, 0]);
    }

    #[test]
    fn irrelevant_ideals() {
        assert_eq!(irrelevant_ideal(&catalog::p2()).generators().len(), 3);
        let i = irrelevant_ideal(&catalog::p1xp1());
        assert_eq!(i.generators().len(), 4);
        assert!(i.generators().iter().all(|g| g.iter().sum::<i64>() == 2));
        assert!(irrelevant_ideal(&catalog::orthant()).is_unit());
    }

    #[test]
    fn big_and_small() {
        let f = catalog::p2();
        let g = cox_grading(&f);
        let a = SubgroupB::whole(&f, &g);
        assert!(a.big && a.small);
        assert_eq!(restriction_exponent(&a, &f, &g).unwrap(), 1);
        let three = g.class_group().element(int_vec(&[3]), vec![]);
        let b = SubgroupB::new(&f, &g, vec![three]);
        assert!(b.big && b.small);
        assert_eq!(b.index, Index::Finite(BigInt::from(3)));
        assert_eq!(restriction_exponent(&b, &f, &g).unwrap(), 3);

        let f = catalog::a1();
        let g = cox_grading(&f);
        let a = SubgroupB::whole(&f, &g);
        assert!(a.big && !a.small);
        assert_eq!(restriction_exponent(&a, &f, &g).unwrap(), 1);
    }

    #[test]
    fn not_big_is_reported() {
        let f = catalog::p2();
        let g = cox_grading(&f);
        let b = SubgroupB::new(&f, &g, vec![]);
        assert_eq!(restriction_exponent(&b, &f, &g), Err(ToricError::NotBig));
    }

    #[test]
    fn p2_degree_zero_chart() {
        let f = catalog::p2();
        let g = cox_grading(&f);
        let m = chart_degree_zero(&f, &g, f.find_cone(&[0, 1]).unwrap());
        assert!(m.units.is_empty());
        assert_eq!(m.elements, vec![int_vec(&[0, 1, -1]), int_vec(&[1, 0, -1])]);
    }

    #[test]
    fn p1_degree_zero_chart() {
        let f = catalog::p1();
        let g = cox_grading(&f);
        let m = chart_degree_zero(&f, &g, f.find_cone(&[0]).unwrap());
        assert_eq!(m.elements, vec![int_vec(&[1, -1])]);
    }

    #[test]
    fn chart_iso_probe() {
        let f = catalog::p2();
        let g = cox_grading(&f);
        assert!((0..f.cones().len()).all(|i| compare_chart_iso(&f, &g, i)));
        let f = catalog::single_ray();
        let g = cox_grading(&f);
        assert!(!compare_chart_iso(&f, &g, f.find_cone(&[0]).unwrap()));
    }
}
