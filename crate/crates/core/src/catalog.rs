//! Small fans used throughout the tests and by the CLI catalog.

use crate::error::Result;
use crate::fan_scheme::Fan;
use crate::lattice::vector::{int_vec, IntVec};

fn build(n: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Result<Fan> {
    let rays: Vec<IntVec> = rays.iter().map(|r| int_vec(r)).collect();
    let cones: Vec<Vec<usize>> = cones.iter().map(|c| c.to_vec()).collect();
    Fan::from_maximal_cones(n, &rays, &cones)
}

fn fixed(n: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
    build(n, rays, cones).expect("catalog fan is valid")
}

pub fn p1() -> Fan {
    fixed(1, &[&[1], &[-1]], &[&[0], &[1]])
}

pub fn p2() -> Fan {
    fixed(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]])
}

pub fn p1xp1() -> Fan {
    fixed(
        2,
        &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
        &[&[0, 2], &[2, 1], &[1, 3], &[3, 0]],
    )
}

/// The first Hirzebruch surface.
pub fn f1() -> Fan {
    fixed(
        2,
        &[&[1, 0], &[0, 1], &[-1, 1], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
    )
}

/// The weighted projective plane with weights (1, 1, 2).
pub fn p112() -> Fan {
    fixed(2, &[&[1, 0], &[0, 1], &[-1, -2]], &[&[0, 1], &[1, 2], &[0, 2]])
}

/// The plane blown up at the origin, without its exceptional chart closure: two
/// smooth cones sharing the ray (1,1).
pub fn blowup_chart() -> Fan {
    fixed(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 2], &[2, 1]])
}

pub fn orthant() -> Fan {
    fixed(2, &[&[1, 0], &[0, 1]], &[&[0, 1]])
}

pub fn single_ray() -> Fan {
    fixed(2, &[&[1, 0]], &[&[0]])
}

/// The cone over a square, with all its faces.
pub fn cone_over_square() -> Fan {
    fixed(
        3,
        &[&[1, 1, 1], &[1, -1, 1], &[-1, -1, 1], &[-1, 1, 1]],
        &[&[0, 1, 2, 3]],
    )
}

/// The `A_1` singularity `cone((1,0),(1,2))`, whose class group is `Z/2`.
pub fn a1() -> Fan {
    fixed(2, &[&[1, 0], &[1, 2]], &[&[0, 1]])
}

/// A ray placed inside a 2-cone; rejected with `INVALID_FAN`.
pub fn interior_ray_violation() -> Result<Fan> {
    build(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 1], &[2]])
}

/// Named valid fans of the catalog.
pub fn all() -> Vec<(&'static str, Fan)> {
    vec![
        ("P1", p1()),
        ("P2", p2()),
        ("P1xP1", p1xp1()),
        ("F1", f1()),
        ("P112", p112()),
        ("blowup_chart", blowup_chart()),
        ("orthant", orthant()),
        ("single_ray", single_ray()),
        ("cone_over_square", cone_over_square()),
        ("A1", a1()),
    ]
}
