//! Independent brute-force oracles shared by the integration tests. None of
//! them goes through facets, Bareiss elimination or the library's ball code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use latpoly::group::{GroupElement, GroupPresentation};
use latpoly::lp::convex_weights;
use latpoly::{ElementSet, LatticePoint, LatticePolytope, PointSet, RationalPoint};

pub fn pt(c: &[i64]) -> LatticePoint {
    LatticePoint::from(c)
}

pub fn polytope(points: &[&[i64]]) -> LatticePolytope {
    LatticePolytope::hull(points.iter().map(|p| pt(p))).unwrap()
}

/// Leibniz expansion over all permutations.
pub fn leibniz_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    (0..n)
        .permutations(n)
        .map(|perm| {
            let inversions = (0..n)
                .tuple_combinations()
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let prod: BigInt = perm.iter().enumerate().map(|(r, &c)| m[r][c].clone()).product();
            if inversions % 2 == 0 { prod } else { -prod }
        })
        .sum()
}

/// Integer points of `nP` (`n >= 1`) by testing every box point with a convex-weight LP
/// against the vertex list.
pub fn lattice_points_by_lp(p: &LatticePolytope, n: u64) -> BTreeSet<LatticePoint> {
    let d = p.dim();
    let nb = BigInt::from(n);
    let lo: Vec<i64> = (0..d)
        .map(|k| p.vertices().iter().map(|v| i64::try_from(&v.coords()[k] * &nb).unwrap()).min().unwrap())
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|k| p.vertices().iter().map(|v| i64::try_from(&v.coords()[k] * &nb).unwrap()).max().unwrap())
        .collect();
    (0..d)
        .map(|k| lo[k]..=hi[k])
        .multi_cartesian_product()
        .map(LatticePoint::from)
        .filter(|y| convex_weights(p.vertices(), &RationalPoint::scaled_down(y, n)).is_some())
        .collect()
}

/// All sums of `n`-element multisets of `s`.
pub fn sums_of_multisets(s: &[LatticePoint], dim: usize, n: usize) -> BTreeSet<LatticePoint> {
    if n == 0 {
        return BTreeSet::from([LatticePoint::zero(dim)]);
    }
    s.iter()
        .combinations_with_replacement(n)
        .map(|c| c.into_iter().fold(LatticePoint::zero(dim), |acc, x| &acc + x))
        .collect()
}

pub fn set_of(s: &PointSet) -> BTreeSet<LatticePoint> {
    s.iter().cloned().collect()
}

/// Products `g_1 g_2 ... g_n` of every word of length exactly `n`, formed by
/// explicit matrix/vector arithmetic.
pub fn words_of_length(g: &GroupPresentation, n: usize) -> BTreeSet<GroupElement> {
    let gens: Vec<GroupElement> = g.generators().iter().cloned().collect();
    if n == 0 {
        return BTreeSet::from([g.identity()]);
    }
    std::iter::repeat_n(gens.iter(), n)
        .multi_cartesian_product()
        .map(|word| word.into_iter().cloned().reduce(|a, b| product(&a, &b)).unwrap())
        .collect()
}

fn product(a: &GroupElement, b: &GroupElement) -> GroupElement {
    match (a, b) {
        (GroupElement::Vector(x), GroupElement::Vector(y)) => GroupElement::Vector(x + y),
        (GroupElement::Matrix(x), GroupElement::Matrix(y)) => {
            let [a, b, c, d] = x.entries();
            let [e, f, g, h] = y.entries();
            GroupElement::Matrix(
                latpoly::Matrix2::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h).unwrap(),
            )
        }
        _ => unreachable!(),
    }
}

pub fn element_set(s: &ElementSet) -> BTreeSet<GroupElement> {
    s.iter().cloned().collect()
}

/// `|x|_1` for a vector element.
pub fn l1(x: &LatticePoint) -> BigInt {
    x.coords().iter().map(|c| c.abs()).fold(BigInt::zero(), |a, b| a + b)
}
