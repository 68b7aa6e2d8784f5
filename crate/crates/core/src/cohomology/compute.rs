use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::complex::{invariants, rank_over, SubsetComplex};
use super::{BaseRing, ModuleDescriptor, MonomialModule, Summand};
use crate::cox::{cox_grading, restriction_exponent, zhat, CoxGrading, MonomialIdeal, SubgroupB};
use crate::error::{Result, ToricError};
use crate::fan_scheme::Fan;
use crate::lattice::{
    cokernel, kernel_basis, reduce_mod_lattice, solve_integer, GroupElement, IntMatrix, IntVec,
};

const MAX_CHARTS: usize = 16;

/// Whether `z^v` is a nonzero basis monomial of `(S/ann)` localized at the variables
/// outside the cone `cone_index`.
pub fn chart_monomial_predicate(f: &Fan, ann: &MonomialIdeal, cone_index: usize, v: &[i64]) -> bool {
    alive(ann, &f.cone(cone_index).rays, v)
}

/// `v >= 0` on `kept`, and no generator of `ann` lies below `v` on `kept`.
fn alive(ann: &MonomialIdeal, kept: &[usize], v: &[i64]) -> bool {
    kept.iter().all(|&r| v[r] >= 0)
        && !ann
            .generators()
            .iter()
            .any(|g| kept.iter().all(|&r| g[r] <= v[r]))
}

/// Largest `∞`-norm of `B^{-1}` over invertible `n × n` submatrices `B` of the ray
/// rows, enumerating at most a few thousand subsets. Never below 1.
fn vertex_scale(rows: &[Vec<i64>]) -> f64 {
    const BUDGET: usize = 4096;
    let n = rows.first().map_or(0, Vec::len);
    let mut best = 1.0f64;
    let mut pick: Vec<usize> = (0..n).collect();
    let mut seen = 0;
    if n == 0 || rows.len() < n {
        return best;
    }
    loop {
        if let Some(norm) = inverse_norm(&pick.iter().map(|&i| rows[i].clone()).collect::<Vec<_>>()) {
            best = best.max(norm);
        }
        seen += 1;
        // next n-subset in lexicographic order
        let Some(i) = (0..n).rev().find(|&i| pick[i] < rows.len() - n + i) else {
            break;
        };
        if seen >= BUDGET {
            break;
        }
        pick[i] += 1;
        for j in i + 1..n {
            pick[j] = pick[j - 1] + 1;
        }
    }
    best
}

/// `‖B^{-1}‖_∞` by Gauss-Jordan in floating point; `None` when `B` is singular.
fn inverse_norm(b: &[Vec<i64>]) -> Option<f64> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = b
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<f64> = r.iter().map(|&x| x as f64).collect();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs()))?;
        if m[p][c].abs() < 1e-9 {
            return None;
        }
        m.swap(c, p);
        let pivot = m[c][c];
        m[c].iter_mut().for_each(|x| *x /= pivot);
        for r in 0..n {
            if r != c {
                let k = m[r][c];
                for j in 0..2 * n {
                    m[r][j] -= k * m[c][j];
                }
            }
        }
    }
    m.iter()
        .map(|r| r[n..].iter().map(|x| x.abs()).sum::<f64>())
        .max_by(f64::total_cmp)
}

/// Present cells of the Čech complex (nonempty sets of maximal cones) and of the
/// Koszul complex (sets of irrelevant generators) at one lattice point.
type Pattern = (Vec<u32>, Vec<u32>);

/// Everything computed for one summand set, one degree and one box radius.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Analysis {
    cech: Vec<ModuleDescriptor>,
    local: Vec<ModuleDescriptor>,
    module_piece: ModuleDescriptor,
    torsion: ModuleDescriptor,
    exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degree: GroupElement,
    pub base: BaseRing,
    pub radius: i64,
    /// `H^i_**(F)_α`, `i = 0, 1, ...`.
    pub cech: Vec<ModuleDescriptor>,
    /// `ⁱH_I(F)_α`, `i = 0, 1, ...`.
    pub local: Vec<ModuleDescriptor>,
    /// `Γ_I(F)_α`.
    pub torsion: ModuleDescriptor,
    /// `F_α`.
    pub module_piece: ModuleDescriptor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionPiece {
    pub degree: GroupElement,
    pub monomials: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgDegreeReport {
    pub degree: GroupElement,
    pub torsion: ModuleDescriptor,
    pub module_piece: ModuleDescriptor,
    pub sections: ModuleDescriptor,
    pub first_local: ModuleDescriptor,
    /// `0 -> Γ_I(F) -> F -> Γ_**(F) -> ¹H_I(F) -> 0` is exact in this degree.
    pub exact: bool,
    /// `(i, H^i_** ≅ ⁱ⁺¹H_I)` for `i >= 1`.
    pub isomorphisms: Vec<(usize, bool)>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgReport {
    pub degrees: Vec<SgDegreeReport>,
    pub all_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceStability {
    pub degree: GroupElement,
    pub radius: i64,
    pub stable: bool,
    pub cech: Option<Vec<ModuleDescriptor>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitenessReport {
    pub complete: bool,
    pub warning: Option<String>,
    pub pieces: Vec<PieceStability>,
    pub all_stable: bool,
    /// Finiteness is claimed only for complete fans.
    pub asserted: bool,
}

impl FinitenessReport {
    pub fn passed(&self) -> bool {
        !self.asserted || self.all_stable
    }
}

/// A full fan with its Cox grading, a big subgroup `B` and the data of both complexes.
#[derive(Clone, Debug)]
pub struct CohomologyContext {
    fan: Fan,
    grading: CoxGrading,
    subgroup: SubgroupB,
    exponent: u64,
    charts: usize,
    // rays of ⋂J for every set J of maximal cones (bit mask)
    chart_rays: Vec<Vec<usize>>,
    // rays outside the supports of the generators in T
    koszul_rays: Vec<Vec<usize>>,
    generators: Vec<Vec<i64>>,
    image_hnf: Vec<IntVec>,
    c_rows: Vec<Vec<i64>>,
    // bound on |u|_∞ / |v|_∞ at a vertex `<u, ρ> = -v_ρ` cut out by n rays
    vertex_scale: f64,
}

impl CohomologyContext {
    /// `b = None` means `B = A`.
    pub fn new(f: &Fan, b: Option<Vec<GroupElement>>) -> Result<Self> {
        if f.is_empty() {
            return Err(ToricError::EmptyFan);
        }
        if !f.is_full() {
            return Err(ToricError::NotFull);
        }
        let grading = cox_grading(f);
        let subgroup = match b {
            None => SubgroupB::whole(f, &grading),
            Some(gens) => SubgroupB::new(f, &grading, gens),
        };
        let exponent = restriction_exponent(&subgroup, f, &grading)?;
        let maxes = f.maximal_cones();
        let k = maxes.len();
        if k > MAX_CHARTS {
            return Err(ToricError::InvalidInput(format!(
                "{k} maximal cones; at most {MAX_CHARTS} are supported"
            )));
        }
        let r = f.rays().len();
        let generators: Vec<Vec<i64>> = maxes
            .iter()
            .map(|&s| zhat(f, s).iter().map(|e| e * exponent as i64).collect())
            .collect();
        let all_rays: Vec<usize> = (0..r).collect();
        let chart_rays = (0..1u32 << k)
            .map(|mask| {
                all_rays
                    .iter()
                    .copied()
                    .filter(|rho| {
                        (0..k).all(|i| mask & (1 << i) == 0 || f.cone(maxes[i]).rays.contains(rho))
                    })
                    .collect()
            })
            .collect();
        let koszul_rays = (0..1u32 << k)
            .map(|mask| {
                all_rays
                    .iter()
                    .copied()
                    .filter(|&rho| (0..k).all(|i| mask & (1 << i) == 0 || generators[i][rho] == 0))
                    .collect()
            })
            .collect();
        let c_rows: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                grading
                    .c_matrix()
                    .row(i)
                    .iter()
                    .map(|x| x.to_i64().expect("ray coordinates fit in i64"))
                    .collect()
            })
            .collect();
        let vertex_scale = vertex_scale(&c_rows);
        Ok(CohomologyContext {
            fan: f.clone(),
            image_hnf: grading.image_lattice(),
            grading,
            subgroup,
            exponent,
            charts: k,
            chart_rays,
            koszul_rays,
            generators,
            c_rows,
            vertex_scale,
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn grading(&self) -> &CoxGrading {
        &self.grading
    }

    pub fn subgroup(&self) -> &SubgroupB {
        &self.subgroup
    }

    /// The uniform exponent `m` with `Ẑ_σ^m ∈ S_B`.
    pub fn restriction_exponent(&self) -> u64 {
        self.exponent
    }

    /// `⟨Ẑ_σ^m : σ maximal⟩`, whose radical in `S_B` is that of `I_B`.
    pub fn irrelevant(&self) -> MonomialIdeal {
        MonomialIdeal::from_valid(self.fan.rays().len(), self.generators.clone())
    }

    fn check_degree(&self, alpha: &GroupElement, what: &str) -> Result<()> {
        let a = self.grading.class_group();
        if alpha.free_part.len() != a.free_rank() || alpha.torsion_part.len() != a.torsion().len()
        {
            return Err(ToricError::InvalidInput(format!(
                "{what} {alpha} does not have the shape of the class group {a}"
            )));
        }
        if !self.subgroup.contains(&self.grading, alpha) {
            return Err(ToricError::DegreeNotInSubgroup(format!("{what} {alpha}")));
        }
        Ok(())
    }

    fn check_module(&self, module: &MonomialModule) -> Result<()> {
        let r = self.fan.rays().len();
        for s in &module.summands {
            self.check_degree(&s.shift, "shift")?;
            if s.annihilator.nvars() != r {
                return Err(ToricError::InvalidInput(format!(
                    "annihilator over {} variables, but the fan has {r} rays",
                    s.annihilator.nvars()
                )));
            }
            for g in s.annihilator.generators() {
                let d = self.grading.degree(g);
                if !self.subgroup.contains(&self.grading, &d) {
                    return Err(ToricError::DegreeNotInSubgroup(format!(
                        "annihilator generator {g:?} has degree {d}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// A small preimage of `delta` under `a`.
    fn base_point(&self, delta: &GroupElement) -> Vec<i64> {
        let lift = self.grading.class_group().lift(delta);
        reduce_mod_lattice(&lift, &self.image_hnf)
            .iter()
            .map(|x| x.to_i64().expect("base point fits in i64"))
            .collect()
    }

    fn shifted(&self, alpha: &GroupElement, s: &Summand) -> GroupElement {
        self.grading.class_group().add(alpha, &s.shift)
    }

    /// `2 + K (|v_0|_∞ + e)` with `e` the largest annihilator exponent and `K` the
    /// worst vertex scale of the rays, maximized over the summands.
    pub fn default_radius(&self, module: &MonomialModule, alpha: &GroupElement) -> i64 {
        module
            .summands
            .iter()
            .map(|s| {
                let v0 = self.base_point(&self.shifted(alpha, s));
                let reach = v0.iter().map(|x| x.abs()).max().unwrap_or(0) + s.annihilator.max_exponent();
                2 + (self.vertex_scale * reach as f64).ceil() as i64
            })
            .max()
            .unwrap_or(2)
    }

    /// Calls `visit` with `v = c(u) + v_0` for every `u` in the box `|u_i| <= radius`.
    fn for_each_point(&self, v0: &[i64], radius: i64, mut visit: impl FnMut(&[i64])) {
        let n = self.fan.ambient_rank();
        let mut u = vec![-radius; n];
        let mut v = vec![0i64; v0.len()];
        loop {
            for (rho, row) in self.c_rows.iter().enumerate() {
                v[rho] = v0[rho] + row.iter().zip(&u).map(|(a, b)| a * b).sum::<i64>();
            }
            visit(&v);
            let mut i = 0;
            loop {
                if i == n {
                    return;
                }
                if u[i] < radius {
                    u[i] += 1;
                    break;
                }
                u[i] = -radius;
                i += 1;
            }
        }
    }

    fn patterns(&self, s: &Summand, delta: &GroupElement, radius: i64) -> BTreeMap<Pattern, u64> {
        let v0 = self.base_point(delta);
        let masks = 1u32 << self.charts;
        let mut out: BTreeMap<Pattern, u64> = BTreeMap::new();
        self.for_each_point(&v0, radius, |v| {
            let cech: Vec<u32> = (1..masks)
                .filter(|&m| alive(&s.annihilator, &self.chart_rays[m as usize], v))
                .collect();
            let koszul: Vec<u32> = (0..masks)
                .filter(|&m| alive(&s.annihilator, &self.koszul_rays[m as usize], v))
                .collect();
            if !cech.is_empty() || !koszul.is_empty() {
                *out.entry((cech, koszul)).or_insert(0) += 1;
            }
        });
        out
    }

    fn analyze(
        &self,
        module: &MonomialModule,
        alpha: &GroupElement,
        base: BaseRing,
        radius: i64,
    ) -> Analysis {
        let k = self.charts;
        let mut cech = vec![ModuleDescriptor::zero(); k];
        let mut local = vec![ModuleDescriptor::zero(); k + 1];
        let mut module_piece = ModuleDescriptor::zero();
        let mut torsion = ModuleDescriptor::zero();
        let mut exact = true;
        for s in &module.summands {
            let delta = self.shifted(alpha, s);
            for ((cech_cells, koszul_cells), mult) in self.patterns(s, &delta, radius) {
                let c = SubsetComplex::new(&cech_cells, k, 1);
                let l = SubsetComplex::new(&koszul_cells, k, 0);
                let hc = c.cohomology(base);
                let hl = l.cohomology(base);
                for (acc, h) in cech.iter_mut().zip(&hc) {
                    *acc = acc.direct_sum(&h.times(mult));
                }
                for (acc, h) in local.iter_mut().zip(&hl) {
                    *acc = acc.direct_sum(&h.times(mult));
                }
                let in_module = koszul_cells.contains(&0);
                if in_module {
                    module_piece.rank += mult as usize;
                    if !koszul_cells.iter().any(|m| m.count_ones() == 1) {
                        torsion.rank += mult as usize;
                    }
                }
                exact &= four_term_exact(&c, in_module, &hl, base);
            }
        }
        Analysis {
            cech,
            local,
            module_piece,
            torsion,
            exact,
        }
    }

    /// Runs at `radius` and `radius + 2`; disagreement is `BOX_UNSTABLE`.
    fn stable_analysis(
        &self,
        module: &MonomialModule,
        alpha: &GroupElement,
        base: BaseRing,
        radius: Option<i64>,
    ) -> Result<(Analysis, i64)> {
        self.check_degree(alpha, "degree")?;
        self.check_module(module)?;
        let r = radius.unwrap_or_else(|| self.default_radius(module, alpha));
        let a = self.analyze(module, alpha, base, r);
        let b = self.analyze(module, alpha, base, r + 2);
        if a != b {
            return Err(ToricError::BoxUnstable {
                radius: r,
                next: r + 2,
            });
        }
        Ok((a, r))
    }

    pub fn report(
        &self,
        module: &MonomialModule,
        alpha: &GroupElement,
        base: BaseRing,
        radius: Option<i64>,
    ) -> Result<CohomologyReport> {
        let (a, r) = self.stable_analysis(module, alpha, base, radius)?;
        Ok(CohomologyReport {
            degree: alpha.clone(),
            base,
            radius: r,
            cech: a.cech,
            local: a.local,
            torsion: a.torsion,
            module_piece: a.module_piece,
        })
    }

    /// `H^i_**(F)_α` for `i = 0, 1, ...`.
    pub fn cech_cohomology(
        &self,
        module: &MonomialModule,
        alpha: &GroupElement,
        base: BaseRing,
        radius: Option<i64>,
    ) -> Result<Vec<ModuleDescriptor>> {
        Ok(self.report(module, alpha, base, radius)?.cech)
    }

    /// `ⁱH_I(F)_α` for `i = 0, 1, ...`.
    pub fn local_cohomology(
        &self,
        module: &MonomialModule,
        alpha: &GroupElement,
        base: BaseRing,
        radius: Option<i64>,
    ) -> Result<Vec<ModuleDescriptor>> {
        Ok(self.report(module, alpha, base, radius)?.local)
    }

    /// Monomials spanning `Γ_I(F)_α`: those of `F_α` that die in every chart.
    pub fn torsion_functor(
        &self,
        module: &MonomialModule,
        alpha: &GroupElement,
        radius: Option<i64>,
    ) -> Result<Vec<TorsionPiece>> {
        self.check_degree(alpha, "degree")?;
        self.check_module(module)?;
        let r = radius.unwrap_or_else(|| self.default_radius(module, alpha));
        let collect = |radius: i64| -> Vec<TorsionPiece> {
            module
                .summands
                .iter()
                .map(|s| {
                    let delta = self.shifted(alpha, s);
                    let mut monomials = Vec::new();
                    self.for_each_point(&self.base_point(&delta), radius, |v| {
                        if alive(&s.annihilator, &self.koszul_rays[0], v)
                            && (0..self.charts).all(|i| {
                                !alive(&s.annihilator, &self.koszul_rays[1usize << i], v)
                            })
                        {
                            monomials.push(v.to_vec());
                        }
                    });
                    monomials.sort();
                    TorsionPiece {
                        degree: delta,
                        monomials,
                    }
                })
                .collect()
        };
        let a = collect(r);
        if a != collect(r + 2) {
            return Err(ToricError::BoxUnstable {
                radius: r,
                next: r + 2,
            });
        }
        Ok(a)
    }

    /// Checks the four-term exact sequence and `H^i_** ≅ ⁱ⁺¹H_I` in each degree.
    pub fn serre_grothendieck_check(
        &self,
        module: &MonomialModule,
        degrees: &[GroupElement],
        base: BaseRing,
        radius: Option<i64>,
    ) -> Result<SgReport> {
        let mut out = Vec::new();
        for alpha in degrees {
            let (a, _) = self.stable_analysis(module, alpha, base, radius)?;
            let top = a.cech.len().max(self.fan.ambient_rank() + 1);
            let zero = ModuleDescriptor::zero();
            let isomorphisms: Vec<(usize, bool)> = (1..top)
                .map(|i| {
                    let h = a.cech.get(i).unwrap_or(&zero);
                    let l = a.local.get(i + 1).unwrap_or(&zero);
                    (i, h == l)
                })
                .collect();
            let bookkeeping = a.torsion.rank + a.cech[0].rank
                == a.module_piece.rank + a.local[1].rank
                && a.torsion == a.local[0];
            let exact = a.exact && bookkeeping;
            let pass = exact && isomorphisms.iter().all(|(_, ok)| *ok);
            out.push(SgDegreeReport {
                degree: alpha.clone(),
                torsion: a.torsion,
                module_piece: a.module_piece,
                sections: a.cech[0].clone(),
                first_local: a.local[1].clone(),
                exact,
                isomorphisms,
                pass,
            });
        }
        let all_pass = out.iter().all(|d| d.pass);
        Ok(SgReport {
            degrees: out,
            all_pass,
        })
    }

    /// Whether every requested graded piece of `H^*_**` stabilizes in the box.
    pub fn finiteness_probe(
        &self,
        module: &MonomialModule,
        degrees: &[GroupElement],
        base: BaseRing,
        radius: Option<i64>,
    ) -> Result<FinitenessReport> {
        let complete = self.fan.is_complete();
        let warning = (!complete)
            .then(|| "fan is not complete: finiteness is not claimed".to_string());
        let mut pieces = Vec::new();
        for alpha in degrees {
            let r = radius.unwrap_or_else(|| self.default_radius(module, alpha));
            match self.stable_analysis(module, alpha, base, Some(r)) {
                Ok((a, _)) => pieces.push(PieceStability {
                    degree: alpha.clone(),
                    radius: r,
                    stable: true,
                    cech: Some(a.cech),
                }),
                Err(ToricError::BoxUnstable { .. }) => pieces.push(PieceStability {
                    degree: alpha.clone(),
                    radius: r,
                    stable: false,
                    cech: None,
                }),
                Err(e) => return Err(e),
            }
        }
        let all_stable = pieces.iter().all(|p| p.stable);
        Ok(FinitenessReport {
            complete,
            warning,
            pieces,
            all_stable,
            asserted: complete,
        })
    }
}

/// At one lattice point: with `ε : F_u -> Č^0` the restriction to the charts, checks
/// `d^0 ε = 0`, `ker ε ≅ ⁰H` and `ker d^0 / im ε ≅ ¹H` against the Koszul cohomology.
fn four_term_exact(
    cech: &SubsetComplex,
    in_module: bool,
    koszul: &[ModuleDescriptor],
    base: BaseRing,
) -> bool {
    let c0 = cech.cells.first().map_or(0, Vec::len);
    let f0 = usize::from(in_module);
    let mut eps = IntMatrix::zeros(c0, f0);
    if in_module {
        for i in 0..c0 {
            eps[(i, 0)] = BigInt::one();
        }
    }
    let d0 = cech
        .differentials
        .first()
        .cloned()
        .unwrap_or_else(|| IntMatrix::zeros(0, c0));
    if !(&d0 * &eps).is_zero() {
        return false;
    }
    let r_eps = rank_over(&invariants(&eps), base);
    let gamma_i = ModuleDescriptor::new(f0 - r_eps, Vec::new());
    let h1 = match base {
        BaseRing::Integers => {
            let kb = if d0.rows() == 0 {
                IntMatrix::identity(c0)
            } else {
                kernel_basis(&d0)
            };
            let coords: Vec<IntVec> = eps
                .column_vectors()
                .iter()
                .map(|col| solve_integer(&kb, col).expect("image of ε lies in ker d^0"))
                .collect();
            let q = cokernel(&IntMatrix::from_columns(&coords, kb.cols()));
            ModuleDescriptor::new(q.free_rank(), q.torsion().to_vec())
        }
        _ => {
            let r_d0 = rank_over(&invariants(&d0), base);
            ModuleDescriptor::new(c0 - r_d0 - r_eps, Vec::new())
        }
    };
    let zero = ModuleDescriptor::zero();
    koszul.first().unwrap_or(&zero) == &gamma_i && koszul.get(1).unwrap_or(&zero) == &h1
}
