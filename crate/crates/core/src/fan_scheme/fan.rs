use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::cone::Polycone;
use crate::error::{Result, ToricError};
use crate::lattice::vector::{is_zero_vec, primitive, IntVec};
use crate::lattice::IntMatrix;

/// A cone of a fan together with the indices of its rays in the fan's ray list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanCone {
    pub cone: Polycone,
    pub rays: Vec<usize>,
}

impl FanCone {
    pub fn dim(&self) -> usize {
        self.cone.dim()
    }
}

/// A finite face-closed set of sharp cones meeting pairwise in common faces.
///
/// Cones are sorted by dimension and then by ray indices, so the zero cone (when the
/// fan is nonempty) has index 0.
#[derive(Clone, Debug)]
pub struct Fan {
    ambient_rank: usize,
    rays: Vec<IntVec>,
    cones: Vec<FanCone>,
    maximal: Vec<usize>,
    // faces[i]: indices j with cone j a face of cone i (including i)
    faces: Vec<Vec<usize>>,
}

impl Fan {
    /// Builds the fan generated by the given maximal cones (as sets of ray indices).
    pub fn from_maximal_cones(
        ambient_rank: usize,
        ray_vectors: &[IntVec],
        max_cones: &[Vec<usize>],
    ) -> Result<Fan> {
        let mut rays = Vec::with_capacity(ray_vectors.len());
        for (i, r) in ray_vectors.iter().enumerate() {
            if r.len() != ambient_rank {
                return Err(ToricError::InvalidInput(format!(
                    "ray {i} has length {} but the ambient rank is {ambient_rank}",
                    r.len()
                )));
            }
            if is_zero_vec(r) {
                return Err(ToricError::InvalidInput(format!("ray {i} is zero")));
            }
            rays.push(primitive(r));
        }
        let mut by_vector: BTreeMap<IntVec, usize> = BTreeMap::new();
        for (i, r) in rays.iter().enumerate() {
            if let Some(j) = by_vector.insert(r.clone(), i) {
                return Err(ToricError::InvalidInput(format!(
                    "rays {j} and {i} span the same ray"
                )));
            }
        }

        let mut ray_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for (k, mc) in max_cones.iter().enumerate() {
            let mut idx: Vec<usize> = mc.clone();
            idx.sort_unstable();
            idx.dedup();
            if let Some(&bad) = idx.iter().find(|&&i| i >= rays.len()) {
                return Err(ToricError::InvalidInput(format!(
                    "maximal cone {k} refers to missing ray {bad}"
                )));
            }
            let gens: Vec<IntVec> = idx.iter().map(|&i| rays[i].clone()).collect();
            let cone = Polycone::from_generators(&gens, ambient_rank);
            if !cone.is_sharp() {
                return Err(ToricError::NotSharp);
            }
            if cone.rays().len() != idx.len() {
                return Err(ToricError::InvalidFan(format!(
                    "maximal cone {k} lists a ray that is not one of its extreme rays"
                )));
            }
            for face in cone.faces()? {
                let mut face_idx: Vec<usize> =
                    face.rays().iter().map(|r| by_vector[r]).collect();
                face_idx.sort_unstable();
                ray_sets.insert(face_idx);
            }
        }

        let mut cones: Vec<FanCone> = ray_sets
            .into_iter()
            .map(|idx| {
                let gens: Vec<IntVec> = idx.iter().map(|&i| rays[i].clone()).collect();
                FanCone {
                    cone: Polycone::from_generators(&gens, ambient_rank),
                    rays: idx,
                }
            })
            .collect();
        cones.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.rays.cmp(&b.rays)));

        for i in 0..rays.len() {
            if !cones.iter().any(|c| c.rays == [i]) {
                return Err(ToricError::InvalidFan(format!(
                    "ray {i} is not a cone of the fan"
                )));
            }
        }

        for i in 0..cones.len() {
            for j in i + 1..cones.len() {
                let meet = cones[i].cone.intersect(&cones[j].cone);
                if !meet.is_face_of(&cones[i].cone) || !meet.is_face_of(&cones[j].cone) {
                    return Err(ToricError::InvalidFan(format!(
                        "cones with rays {:?} and {:?} meet in a non-face",
                        cones[i].rays, cones[j].rays
                    )));
                }
            }
        }

        let faces: Vec<Vec<usize>> = cones
            .iter()
            .map(|c| {
                (0..cones.len())
                    .filter(|&j| cones[j].rays.iter().all(|r| c.rays.contains(r)))
                    .collect()
            })
            .collect();
        let maximal: Vec<usize> = (0..cones.len())
            .filter(|&i| !(0..cones.len()).any(|j| j != i && faces[j].contains(&i)))
            .collect();

        Ok(Fan {
            ambient_rank,
            rays,
            cones,
            maximal,
            faces,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Primitive ray generators in input order.
    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn cones(&self) -> &[FanCone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &FanCone {
        &self.cones[i]
    }

    pub fn maximal_cones(&self) -> &[usize] {
        &self.maximal
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Indices of the faces of cone `i`, itself included.
    pub fn faces_of(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    /// `τ ≼ σ` by index.
    pub fn is_face(&self, tau: usize, sigma: usize) -> bool {
        self.faces[sigma].contains(&tau)
    }

    /// Index of the cone with exactly these rays.
    pub fn find_cone(&self, ray_indices: &[usize]) -> Option<usize> {
        let mut idx = ray_indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        self.cones.iter().position(|c| c.rays == idx)
    }

    /// Index of the zero cone, absent only for the empty fan.
    pub fn zero_cone(&self) -> Option<usize> {
        self.find_cone(&[])
    }

    /// The matrix whose rows are the ray generators (the map `u ↦ (u(ρ_N))_ρ`).
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.rays, self.ambient_rank)
    }

    /// The support is all of `R^n`. Decided by facet pairing: every maximal cone is
    /// full-dimensional, every facet of a maximal cone lies in exactly two maximal
    /// cones, and the maximal cones are connected through shared facets.
    pub fn is_complete(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let n = self.ambient_rank;
        if n == 0 {
            return true;
        }
        if self.maximal.iter().any(|&m| self.cones[m].dim() != n) {
            return false;
        }
        let mut owners: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &m in &self.maximal {
            for &f in &self.faces[m] {
                if self.cones[f].dim() + 1 == n {
                    owners.entry(f).or_default().push(m);
                }
            }
        }
        if owners.values().any(|o| o.len() != 2) {
            return false;
        }
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut queue: VecDeque<usize> = VecDeque::from([self.maximal[0]]);
        while let Some(m) = queue.pop_front() {
            if !seen.insert(m) {
                continue;
            }
            for o in owners.values() {
                if o.contains(&m) {
                    queue.extend(o.iter().copied().filter(|x| !seen.contains(x)));
                }
            }
        }
        seen.len() == self.maximal.len()
    }

    /// The rays span `R^n`.
    pub fn is_full(&self) -> bool {
        let rank = if self.rays.is_empty() {
            0
        } else {
            self.ray_matrix().rank()
        };
        rank == self.ambient_rank
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(|c| c.cone.is_simplicial())
    }

    /// Whether `x` lies in the support.
    pub fn support_contains(&self, x: &[num_bigint::BigInt]) -> bool {
        self.maximal
            .iter()
            .any(|&m| self.cones[m].cone.contains_point(x))
    }
}
