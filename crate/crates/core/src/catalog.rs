//! Named example objects: standard simplices, cubes, cross-polytopes, the
//! `Σ_{d,m}` and Reeve families, and a small `GL(2, Z)` generating set.

use num_bigint::BigInt;

use crate::group::{GroupElement, GroupKind, GroupPresentation, Matrix2};
use crate::point::LatticePoint;
use crate::polytope::LatticePolytope;
use crate::triangulation::{LatticeSimplex, Triangulation};

fn simplex(vertices: Vec<LatticePoint>) -> LatticeSimplex {
    LatticeSimplex::new(vertices).expect("catalog simplex is full-dimensional")
}

fn hull(points: Vec<LatticePoint>) -> LatticePolytope {
    LatticePolytope::hull(points).expect("catalog polytope is non-empty")
}

/// `σ_d = conv{0, e_1, ..., e_d}`.
pub fn unit_simplex(d: usize) -> LatticeSimplex {
    assert!(d >= 1, "dimension must be positive");
    let mut v = vec![LatticePoint::zero(d)];
    v.extend((0..d).map(|i| LatticePoint::unit(d, i)));
    simplex(v)
}

/// All `2^d` points with coordinates in `{lo, hi}`.
fn box_corners(d: usize, lo: i64, hi: i64) -> Vec<LatticePoint> {
    (0..1u64 << d)
        .map(|mask| {
            LatticePoint::new(
                (0..d)
                    .map(|i| BigInt::from(if mask >> i & 1 == 1 { hi } else { lo }))
                    .collect(),
            )
        })
        .collect()
}

/// `[0, 1]^d`.
pub fn unit_cube(d: usize) -> LatticePolytope {
    assert!(d >= 1, "dimension must be positive");
    hull(box_corners(d, 0, 1))
}

/// `[-1, 1]^d`.
pub fn symmetric_cube(d: usize) -> LatticePolytope {
    assert!(d >= 1, "dimension must be positive");
    hull(box_corners(d, -1, 1))
}

fn signed_units(d: usize) -> Vec<LatticePoint> {
    (0..d)
        .flat_map(|i| {
            let e = LatticePoint::unit(d, i);
            [-&e, e]
        })
        .collect()
}

/// `conv{±e_1, ..., ±e_d}`.
pub fn cross_polytope(d: usize) -> LatticePolytope {
    assert!(d >= 1, "dimension must be positive");
    hull(signed_units(d))
}

/// The `2^d` simplices `conv{0, ±e_1, ..., ±e_d}`, one per orthant.
pub fn cross_polytope_fan(d: usize) -> Triangulation {
    let simplices = (0..1u64 << d)
        .map(|mask| {
            let mut v = vec![LatticePoint::zero(d)];
            v.extend((0..d).map(|i| {
                let e = LatticePoint::unit(d, i);
                if mask >> i & 1 == 1 { -&e } else { e }
            }));
            simplex(v)
        })
        .collect();
    Triangulation::new(cross_polytope(d), simplices).expect("fan matches its polytope")
}

fn with_apex(d: usize, first: i64, m: u64) -> LatticeSimplex {
    assert!(d >= 1, "dimension must be positive");
    let mut v = vec![LatticePoint::zero(d)];
    v.extend((0..d - 1).map(|i| LatticePoint::unit(d, i)));
    let mut apex = vec![BigInt::from(first); d];
    apex[d - 1] = BigInt::from(m);
    v.push(LatticePoint::new(apex));
    simplex(v)
}

/// `Σ_{d,m} = conv{0, e_1, ..., e_{d-1}, (-1, ..., -1, m)}`.
///
/// Panics if `m == 0`.
pub fn sigma(d: usize, m: u64) -> LatticeSimplex {
    assert!(m >= 1, "m must be positive");
    with_apex(d, -1, m)
}

/// The Reeve simplex `Σ'_{d,m} = conv{0, e_1, ..., e_{d-1}, (1, ..., 1, m)}`.
///
/// Panics if `m == 0`.
pub fn sigma_prime(d: usize, m: u64) -> LatticeSimplex {
    assert!(m >= 1, "m must be positive");
    with_apex(d, 1, m)
}

/// `conv{±e_1, ±e_2, ±(-1, -1, 3)}`: symmetric, and its integer points
/// generate `Z^3`, yet `2P ∩ Z^3` is larger than `2 * (P ∩ Z^3)`.
pub fn symmetric_counterexample() -> LatticePolytope {
    let a = LatticePoint::from([-1, -1, 3]);
    hull(vec![
        LatticePoint::unit(3, 0),
        -&LatticePoint::unit(3, 0),
        LatticePoint::unit(3, 1),
        -&LatticePoint::unit(3, 1),
        -&a,
        a,
    ])
}

/// The staircase triangulation of `[0, 1]^d`: one simplex per permutation,
/// `d!` in total.
pub fn staircase_triangulation(d: usize) -> Triangulation {
    use itertools::Itertools;
    let simplices = (0..d)
        .permutations(d)
        .map(|perm| {
            let mut v = vec![LatticePoint::zero(d)];
            for &axis in &perm {
                let next = v.last().unwrap() + &LatticePoint::unit(d, axis);
                v.push(next);
            }
            simplex(v)
        })
        .collect();
    Triangulation::new(unit_cube(d), simplices).expect("staircase matches the cube")
}

/// `[ω_0, ..., ω_5]`: the identity, the swap, the shear `[[1,1],[0,1]]`,
/// and the products `ω_2 ω_1`, `ω_2^{-1}`, `ω_4 ω_1`.
pub fn gl2z_generators() -> Vec<Matrix2> {
    [
        (1, 0, 0, 1),
        (0, 1, 1, 0),
        (1, 1, 0, 1),
        (1, 1, 1, 0),
        (1, -1, 0, 1),
        (-1, 1, 1, 0),
    ]
    .into_iter()
    .map(|(a, b, c, d)| Matrix2::from_i64(a, b, c, d).expect("unimodular"))
    .collect()
}

pub fn gl2z_presentation() -> GroupPresentation {
    GroupPresentation::new(GroupKind::Gl2z, gl2z_generators().into_iter().map(GroupElement::Matrix))
        .expect("ω_0 is the identity")
}
