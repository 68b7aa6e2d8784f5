//! Cohomology of small cochain complexes of free modules over `Q`, `F_p` or `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{BaseRing, ModuleDescriptor};
use crate::lattice::{smith_normal_form, IntMatrix};

/// Cells are subsets of `{0, .., k-1}` encoded as bit masks; the complex has one basis
/// vector per present cell, in degree `popcount(mask) - offset`. The differential sends
/// `J` to `Σ_{j ∉ J} (-1)^{#{i ∈ J : i < j}} (J ∪ {j})`, dropping absent cells.
pub(crate) struct SubsetComplex {
    pub cells: Vec<Vec<u32>>,
    pub differentials: Vec<IntMatrix>,
}

impl SubsetComplex {
    pub fn new(present: &[u32], k: usize, offset: usize) -> Self {
        let top = k + 1 - offset;
        let mut cells: Vec<Vec<u32>> = vec![Vec::new(); top];
        for &m in present {
            cells[m.count_ones() as usize - offset].push(m);
        }
        for c in &mut cells {
            c.sort_unstable();
        }
        let mut differentials = Vec::with_capacity(top.saturating_sub(1));
        for p in 0..top.saturating_sub(1) {
            let (src, dst) = (&cells[p], &cells[p + 1]);
            let mut d = IntMatrix::zeros(dst.len(), src.len());
            for (col, &j) in src.iter().enumerate() {
                for bit in 0..k {
                    if j & (1 << bit) != 0 {
                        continue;
                    }
                    let target = j | (1 << bit);
                    if let Ok(row) = dst.binary_search(&target) {
                        let below = (j & ((1u32 << bit) - 1)).count_ones();
                        d[(row, col)] = if below % 2 == 0 {
                            BigInt::one()
                        } else {
                            -BigInt::one()
                        };
                    }
                }
            }
            differentials.push(d);
        }
        SubsetComplex {
            cells,
            differentials,
        }
    }

    pub fn cohomology(&self, base: BaseRing) -> Vec<ModuleDescriptor> {
        cohomology(
            &self.cells.iter().map(Vec::len).collect::<Vec<_>>(),
            &self.differentials,
            base,
        )
    }
}

/// Nonzero Smith invariants of a matrix.
pub(crate) fn invariants(m: &IntMatrix) -> Vec<BigInt> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    smith_normal_form(m)
        .diagonal()
        .into_iter()
        .filter(|d| !d.is_zero())
        .map(|d| d.abs())
        .collect()
}

pub(crate) fn rank_over(invariants: &[BigInt], base: BaseRing) -> usize {
    match base {
        BaseRing::PrimeField(p) => {
            let p = BigInt::from(p);
            invariants.iter().filter(|d| !d.is_multiple_of(&p)).count()
        }
        _ => invariants.len(),
    }
}

/// `H^p = ker d_p / im d_{p-1}` for `d_p : C^p -> C^{p+1}`.
pub(crate) fn cohomology(
    dims: &[usize],
    differentials: &[IntMatrix],
    base: BaseRing,
) -> Vec<ModuleDescriptor> {
    let inv: Vec<Vec<BigInt>> = differentials.iter().map(invariants).collect();
    (0..dims.len())
        .map(|p| {
            let out = inv.get(p).map_or(0, |i| rank_over(i, base));
            let incoming = if p > 0 { inv.get(p - 1) } else { None };
            let inc = incoming.map_or(0, |i| rank_over(i, base));
            let torsion = match (base, incoming) {
                (BaseRing::Integers, Some(i)) => {
                    i.iter().filter(|d| !d.is_one()).cloned().collect()
                }
                _ => Vec::new(),
            };
            ModuleDescriptor::new(dims[p] - out - inc, torsion)
        })
        .collect()
}
