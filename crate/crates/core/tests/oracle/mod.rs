//! Brute-force reference computations shared by the integration tests. Nothing here
//! calls into the normal-form or cohomology code under test.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn q(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Row-reduces over `Q`; returns the rank and the reduced rows.
fn eliminate(rows: &[Vec<BigRational>]) -> (usize, Vec<Vec<BigRational>>) {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for x in m[rank].iter_mut() {
            *x = &*x / &pivot;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let k = m[r][c].clone();
                for j in 0..cols {
                    let sub = &k * &m[rank][j];
                    m[r][j] = &m[r][j] - sub;
                }
            }
        }
        rank += 1;
    }
    (rank, m)
}

pub fn rank_q(rows: &[Vec<BigInt>]) -> usize {
    let r: Vec<Vec<BigRational>> = rows.iter().map(|x| x.iter().map(q).collect()).collect();
    eliminate(&r).0
}

pub fn rank_q_i64(rows: &[Vec<i64>]) -> usize {
    rank_q(&to_big(rows))
}

pub fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = mod_inverse(m[rank][c], p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let k = m[r][c];
                for j in 0..cols {
                    m[r][j] = (m[r][j] - k * m[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    (1..p).find(|x| a * x % p == 1).expect("p is prime")
}

pub fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Determinant by cofactor-free rational elimination.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(q).collect()).collect();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d = &d * &a[c][c];
        for r in c + 1..n {
            let k = &a[r][c] / &a[c][c];
            for j in c..n {
                let sub = &k * &a[c][j];
                a[r][j] = &a[r][j] - sub;
            }
        }
    }
    assert!(d.is_integer());
    d.to_integer()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors of `Z^rows / im(m)` from determinantal divisors: `d_i = Δ_i / Δ_{i-1}`
/// where `Δ_i` is the gcd of the `i × i` minors. Returns `(free rank, factors > 1)`.
pub fn cokernel_by_minors(m: &[Vec<i64>]) -> (usize, Vec<BigInt>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut factors = Vec::new();
    let mut rank = 0;
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| BigInt::from(m[r][c])).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        rank = k;
        let d = &g / &prev;
        if !d.is_one() {
            factors.push(d);
        }
        prev = g;
    }
    (rows - rank, factors)
}

/// Whether `x` is an integer combination of the columns `basis` (assumed independent).
pub fn in_integer_span(basis: &[Vec<BigInt>], x: &[BigInt]) -> bool {
    let n = x.len();
    let k = basis.len();
    if k == 0 {
        return x.iter().all(Zero::is_zero);
    }
    // augmented system [B | x], rows indexed by coordinates
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigRational> = basis.iter().map(|b| q(&b[i])).collect();
            r.push(q(&x[i]));
            r
        })
        .collect();
    let (rank, red) = eliminate(&rows);
    if rank > k {
        return false;
    }
    // the reduced rows carry the unique coefficients in the last column
    red.iter().take(k).all(|r| r[k].is_integer())
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Base rings for the dense Čech oracle.
#[derive(Clone, Copy, Debug)]
pub enum Coeffs {
    Q,
    Mod(i64),
}

fn rank_in(rows: &[Vec<i64>], c: Coeffs) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    match c {
        Coeffs::Q => rank_q_i64(rows),
        Coeffs::Mod(p) => rank_mod_p(rows, p),
    }
}

/// Dense Čech cohomology of `O(Σ a_ρ D_ρ)` on a fan given by rays and maximal cones:
/// sum over every `u` with `|u_i| <= radius` of the Čech complex of the subsets `J` of
/// maximal cones for which `<u, ρ> + a_ρ >= 0` on all rays common to `J`.
pub fn cech_line_bundle(
    rays: &[Vec<i64>],
    cones: &[Vec<usize>],
    a: &[i64],
    radius: i64,
    coeffs: Coeffs,
) -> Vec<usize> {
    let n = rays[0].len();
    let k = cones.len();
    let mut total = vec![0usize; k];
    let mut u = vec![-radius; n];
    loop {
        let alive = |mask: usize| -> bool {
            (0..rays.len())
                .filter(|rho| (0..k).filter(|j| mask >> j & 1 == 1).all(|j| cones[j].contains(rho)))
                .all(|rho| dot(&u, &rays[rho]) + a[rho] >= 0)
        };
        let cells: Vec<Vec<usize>> = (0..k)
            .map(|p| {
                (1usize..1 << k)
                    .filter(|m| m.count_ones() as usize == p + 1 && alive(*m))
                    .collect()
            })
            .collect();
        let mut ranks = vec![0usize; k];
        for p in 0..k.saturating_sub(1) {
            let rows: Vec<Vec<i64>> = cells[p + 1]
                .iter()
                .map(|&t| {
                    cells[p]
                        .iter()
                        .map(|&s| {
                            if s & t != s {
                                return 0;
                            }
                            let bit = (t ^ s).trailing_zeros();
                            let below = (s & ((1 << bit) - 1)).count_ones();
                            if below % 2 == 0 {
                                1
                            } else {
                                -1
                            }
                        })
                        .collect()
                })
                .collect();
            ranks[p] = rank_in(&rows, coeffs);
        }
        for p in 0..k {
            let incoming = if p > 0 { ranks[p - 1] } else { 0 };
            total[p] += cells[p].len() - ranks[p] - incoming;
        }
        let mut i = 0;
        while i < n && u[i] == radius {
            u[i] = -radius;
            i += 1;
        }
        if i == n {
            break;
        }
        u[i] += 1;
    }
    total
}

pub fn binomial(n: i64, k: i64) -> usize {
    if n < k || k < 0 {
        return 0;
    }
    let mut r = 1i128;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as usize
}

/// Sign-normalized gcd helper for tests that compare cyclic groups.
pub fn abs_gcd(xs: &[BigInt]) -> BigInt {
    xs.iter().fold(BigInt::zero(), |g, x| g.gcd(&x.abs()))
}

pub fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}

/// `Σ_u Σ_J (-1)^{|J|-1} [J alive at u]` over the box, the Euler characteristic of
/// the dense Čech complex of `O(Σ a_ρ D_ρ)`.
pub fn cech_euler(rays: &[Vec<i64>], cones: &[Vec<usize>], a: &[i64], radius: i64) -> i64 {
    let n = rays[0].len();
    let k = cones.len();
    let mut chi = 0i64;
    let mut u = vec![-radius; n];
    loop {
        for mask in 1usize..1 << k {
            let alive = (0..rays.len())
                .filter(|rho| (0..k).filter(|j| mask >> j & 1 == 1).all(|j| cones[j].contains(rho)))
                .all(|rho| dot(&u, &rays[rho]) + a[rho] >= 0);
            if alive {
                chi += if mask.count_ones() % 2 == 1 { 1 } else { -1 };
            }
        }
        let mut i = 0;
        while i < n && u[i] == radius {
            u[i] = -radius;
            i += 1;
        }
        if i == n {
            break;
        }
        u[i] += 1;
    }
    chi
}

/// Lattice points `u` with `<u, ρ> + a_ρ >= 0` for every ray, inside the box.
pub fn polytope_points(rays: &[Vec<i64>], a: &[i64], radius: i64) -> usize {
    let n = rays[0].len();
    let mut count = 0;
    let mut u = vec![-radius; n];
    loop {
        if rays.iter().zip(a).all(|(r, &x)| dot(&u, r) + x >= 0) {
            count += 1;
        }
        let mut i = 0;
        while i < n && u[i] == radius {
            u[i] = -radius;
            i += 1;
        }
        if i == n {
            break;
        }
        u[i] += 1;
    }
    count
}
