//! Smith and Hermite normal forms and the lattice computations built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::vector::IntVec;

/// Result of [`smith_normal_form`]: `d = u * m * v`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Diagonal entries `d_1 | d_2 | ...`, including trailing zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, u, v);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and go again
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            if let Some(i) = offending {
                a.add_row_multiple(t, i, &BigInt::one());
                u.add_row_multiple(t, i, &BigInt::one());
                continue;
            }
            if a[(t, t)].is_negative() {
                a.negate_row(t);
                u.negate_row(t);
            }
            break;
        }
    }
    finish(a, u, v)
}

fn finish(d: IntMatrix, u: IntMatrix, v: IntMatrix) -> Smith {
    Smith { u, d, v }
}

/// Row-style Hermite normal form: `h = u * m`, `u` unimodular, `h` in row echelon
/// form with positive pivots and entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !h[(i, c)].is_zero()
                    && best.map_or(true, |b| h[(i, c)].abs() < h[(b, c)].abs())
                {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                clean &= h[(i, c)].is_zero();
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Checks the shape conditions of [`hermite_normal_form`]'s output.
pub fn is_hermite_form(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..h.rows() {
        let pivot = (0..h.cols()).find(|&j| !h[(i, j)].is_zero());
        match pivot {
            None => seen_zero_row = true,
            Some(p) => {
                if seen_zero_row || last_pivot.is_some_and(|lp| p <= lp) || !h[(i, p)].is_positive()
                {
                    return false;
                }
                for k in 0..i {
                    if h[(k, p)].is_negative() || h[(k, p)] >= h[(i, p)] {
                        return false;
                    }
                }
                last_pivot = Some(p);
            }
        }
    }
    true
}

/// Canonical basis (nonzero HNF rows) of the lattice spanned by `gens`.
pub fn lattice_basis(gens: &[IntVec], dim: usize) -> Vec<IntVec> {
    if gens.is_empty() {
        return Vec::new();
    }
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(gens, dim));
    h.row_vectors()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Reduces `x` modulo the lattice whose canonical basis is `hnf_rows` (as returned by
/// [`lattice_basis`]). The result is the canonical representative of `x + lattice`.
pub fn reduce_mod_lattice(x: &[BigInt], hnf_rows: &[IntVec]) -> IntVec {
    let mut x = x.to_vec();
    for row in hnf_rows {
        let Some(p) = row.iter().position(|e| !e.is_zero()) else {
            continue;
        };
        let q = x[p].div_floor(&row[p]);
        if q.is_zero() {
            continue;
        }
        for (xi, ri) in x.iter_mut().zip(row) {
            *xi -= &q * ri;
        }
    }
    x
}

/// Membership of `x` in the lattice spanned by `gens`.
pub fn lattice_contains(gens: &[IntVec], x: &[BigInt]) -> bool {
    let basis = lattice_basis(gens, x.len());
    reduce_mod_lattice(x, &basis).iter().all(Zero::is_zero)
}

/// Columns form a Z-basis of `{x : m x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let idx: Vec<usize> = (r..m.cols()).collect();
    snf.v.select_cols(&idx)
}

/// Some integer solution of `m x = b`, if one exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<IntVec> {
    assert_eq!(b.len(), m.rows());
    let snf = smith_normal_form(m);
    let ub = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, rhs) in ub.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_default();
        if d.is_zero() {
            if !rhs.is_zero() {
                return None;
            }
        } else {
            let (q, rem) = rhs.div_rem(&d);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Orders of the cyclic factors of `Z^rows / im(m)`: nontrivial invariant factors
/// followed by one zero per free summand.
pub fn cokernel_invariants(m: &IntMatrix) -> (usize, Vec<BigInt>) {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let torsion = snf.diagonal()[..r]
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    (m.rows() - r, torsion)
}
