//! Worked examples for every public operation.

mod common;

use num_bigint::BigInt;

use common::*;
use latpoly::group::{
    check_boundary_equality, check_boundary_range, omega_boundary, omega_interior, word_ball,
    zd_presentation_from_polytope, DEFAULT_BALL_CAP,
};
use latpoly::minkowski::{check_equality, decompose, generates_zd, minkowski_power, minkowski_sum};
use latpoly::triangulation::{
    check_lemma1_equivalences, classify_simplex, is_unimodular, search_primitive_triangulation,
    validate_triangulation, SearchConfig, SearchOutcome, TriangulationFailure,
};
use latpoly::{
    catalog, ElementSet, GroupElement, IntegerMatrix, LatticePoint, LatticeSimplex, PointSet, Rational, RationalPoint,
    Triangulation,
};

fn set(dim: usize, pts: &[&[i64]]) -> PointSet {
    PointSet::new(dim, pts.iter().map(|p| pt(p))).unwrap()
}

fn simplex(pts: &[&[i64]]) -> LatticeSimplex {
    LatticeSimplex::new(pts.iter().map(|p| pt(p)).collect()).unwrap()
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

#[test]
fn hulls() {
    assert_eq!(polytope(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).vertices().len(), 4);
    assert_eq!(polytope(&[&[0], &[1], &[2]]).vertices(), &[pt(&[0]), pt(&[2])]);
    let sigma = catalog::sigma(3, 2);
    assert_eq!(sigma.polytope().vertices().len(), 4);
}

#[test]
fn facets() {
    let square = catalog::unit_cube(2);
    assert_eq!(square.facets().unwrap().len(), 4);
    let tri = catalog::unit_simplex(2).polytope();
    let facets = tri.facets().unwrap();
    assert_eq!(facets.len(), 3);
    assert!(facets
        .iter()
        .any(|h| h.normal() == &pt(&[1, 1]) && h.offset() == &BigInt::from(1)));
    assert_eq!(catalog::sigma(3, 2).polytope().facets().unwrap().len(), 4);
}

#[test]
fn membership() {
    let half = |c: &[i64]| RationalPoint::scaled_down(&pt(c), 2);
    assert!(catalog::unit_cube(2).contains(&half(&[1, 1])).unwrap());
    assert!(!catalog::unit_simplex(2).polytope().contains(&half(&[1, 2])).unwrap());
    assert!(catalog::symmetric_counterexample().contains(&half(&[-1, -1, 1])).unwrap());
}

#[test]
fn integer_points_and_volume() {
    assert_eq!(catalog::unit_cube(2).integer_points(2).unwrap().len(), 9);
    assert_eq!(catalog::sigma(3, 2).polytope().integer_points(1).unwrap().len(), 4);
    let s33 = catalog::sigma(3, 3).polytope().integer_points(1).unwrap();
    assert_eq!(s33.len(), 5);
    assert!(s33.contains(&LatticePoint::unit(3, 2)));
    assert_eq!(catalog::unit_cube(3).volume().unwrap(), q(1, 1));
    assert_eq!(catalog::sigma(3, 2).polytope().volume().unwrap(), q(1, 3));
    assert_eq!(catalog::unit_simplex(2).polytope().volume().unwrap(), q(1, 2));
}

#[test]
fn minkowski_examples() {
    assert_eq!(minkowski_sum(&set(1, &[&[0], &[1]]), &set(1, &[&[0], &[1]])).unwrap(), set(1, &[&[0], &[1], &[2]]));
    let a = set(2, &[&[3, -1], &[0, 2]]);
    assert_eq!(minkowski_sum(&a, &PointSet::origin(2)).unwrap(), a);
    let omega = catalog::symmetric_counterexample().integer_points(1).unwrap();
    assert!(!minkowski_power(&omega, 2).contains(&pt(&[-1, -1, 1])));
    for d in 1..=3 {
        let sigma = catalog::unit_simplex(d).polytope();
        let vertices = PointSet::new(d, sigma.vertices().to_vec()).unwrap();
        for n in 0..=4 {
            assert_eq!(minkowski_power(&vertices, n), sigma.integer_points(n).unwrap(), "d = {d}, n = {n}");
        }
    }
}

#[test]
fn equality_examples() {
    let r = check_equality(&catalog::sigma(3, 2).polytope(), 2).unwrap();
    assert!(!r.holds);
    assert_eq!(r.witness, Some(LatticePoint::unit(3, 2)));
    let r = check_equality(&catalog::symmetric_counterexample(), 2).unwrap();
    assert_eq!(r.witness, Some(pt(&[-1, -1, 1])));
}

#[test]
fn decomposition_examples() {
    let square = catalog::unit_cube(2);
    let t = Triangulation::new(
        square.clone(),
        vec![simplex(&[&[0, 0], &[1, 0], &[1, 1]]), simplex(&[&[0, 0], &[0, 1], &[1, 1]])],
    )
    .unwrap();
    let dec = decompose(&square, &t, 2, &pt(&[1, 2])).unwrap();
    assert_eq!(dec.summands, vec![pt(&[0, 1]), pt(&[1, 1])]);

    let segment = catalog::unit_cube(1);
    let t = Triangulation::new(segment.clone(), vec![simplex(&[&[0], &[1]])]).unwrap();
    let dec = decompose(&segment, &t, 3, &pt(&[2])).unwrap();
    assert_eq!(dec.summands, vec![pt(&[0]), pt(&[1]), pt(&[1])]);

    let cross = catalog::cross_polytope(2);
    let dec = decompose(&cross, &catalog::cross_polytope_fan(2), 2, &pt(&[1, -1])).unwrap();
    assert_eq!(dec.summands, vec![pt(&[0, -1]), pt(&[1, 0])]);
}

#[test]
fn generation_examples() {
    assert!(generates_zd(&set(2, &[&[0, 0], &[1, 0], &[-1, 0], &[0, 1], &[0, -1]])).unwrap());
    assert!(!generates_zd(&set(2, &[&[0, 0], &[2, 0], &[-2, 0], &[0, 1], &[0, -1]])).unwrap());
    let omega = catalog::symmetric_counterexample().integer_points(1).unwrap();
    assert!(generates_zd(&omega).unwrap());
}

#[test]
fn unimodularity_examples() {
    assert!(is_unimodular(&IntegerMatrix::identity(3)));
    let sigma = IntegerMatrix::from_columns(&[pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[-1, -1, 2])]).unwrap();
    assert!(!is_unimodular(&sigma));
    let shear = IntegerMatrix::from_rows(vec![vec![1.into(), 1.into()], vec![0.into(), 1.into()]]).unwrap();
    assert!(is_unimodular(&shear));

    assert_eq!(check_lemma1_equivalences(&IntegerMatrix::identity(2)).unwrap().as_array(), [true; 6]);
    assert_eq!(
        check_lemma1_equivalences(&sigma).unwrap().as_array(),
        [false, false, false, false, false, true]
    );
    let sigma_2_1 = IntegerMatrix::from_columns(&[pt(&[1, 0]), pt(&[-1, 1])]).unwrap();
    assert_eq!(sigma_2_1, catalog::sigma(2, 1).edge_matrix());
    assert_eq!(check_lemma1_equivalences(&sigma_2_1).unwrap().as_array(), [true; 6]);
}

#[test]
fn classification_examples() {
    let unit = classify_simplex(&catalog::unit_simplex(3)).unwrap();
    assert!(unit.is_primitive && unit.is_elementary);
    let sigma = classify_simplex(&catalog::sigma(3, 2)).unwrap();
    assert!(sigma.is_elementary && !sigma.is_primitive);
    assert_eq!(sigma.normalized_volume, BigInt::from(2));
    let reeve = classify_simplex(&catalog::sigma_prime(3, 5)).unwrap();
    assert!(reeve.is_elementary && !reeve.is_primitive);
    assert_eq!(reeve.normalized_volume, BigInt::from(5));
    for m in 1..=6 {
        assert!(classify_simplex(&catalog::sigma_prime(3, m)).unwrap().is_elementary);
    }
    let s45 = classify_simplex(&catalog::sigma(4, 5)).unwrap();
    assert_eq!(s45.non_vertex_points, set(4, &[&[0, 0, 0, 1]]));
}

#[test]
fn validation_examples() {
    let square = catalog::unit_cube(2);
    let diagonal = Triangulation::new(
        square.clone(),
        vec![simplex(&[&[0, 0], &[1, 0], &[1, 1]]), simplex(&[&[0, 0], &[0, 1], &[1, 1]])],
    )
    .unwrap();
    assert!(validate_triangulation(&diagonal).unwrap().is_primitive());
    for d in 1..=3 {
        assert!(validate_triangulation(&catalog::cross_polytope_fan(d)).unwrap().is_primitive());
    }
    let t = simplex(&[&[0, 0], &[1, 0], &[1, 1]]);
    let doubled = Triangulation::new(square, vec![t.clone(), t]).unwrap();
    let report = validate_triangulation(&doubled).unwrap();
    assert!(!report.is_valid());
    assert!(report
        .failures
        .iter()
        .any(|f| matches!(f, TriangulationFailure::InteriorsOverlap { first: 0, second: 1 })));
    assert!(validate_triangulation(&catalog::staircase_triangulation(3)).unwrap().is_primitive());
}

#[test]
fn search_examples() {
    let cfg = SearchConfig::default();
    let square = search_primitive_triangulation(&catalog::unit_cube(2), &cfg).unwrap();
    assert_eq!(square.triangulation().unwrap().len(), 2);
    let sigma = search_primitive_triangulation(&catalog::sigma(3, 2).polytope(), &cfg).unwrap();
    assert!(matches!(sigma, SearchOutcome::Exhausted { .. }));
    let cube = search_primitive_triangulation(&catalog::unit_cube(3), &cfg).unwrap();
    let t = cube.triangulation().unwrap();
    assert!(validate_triangulation(t).unwrap().is_primitive());
}

fn vectors(points: impl IntoIterator<Item = LatticePoint>) -> ElementSet {
    points.into_iter().map(GroupElement::Vector).collect()
}

#[test]
fn group_examples() {
    let cross = zd_presentation_from_polytope(&catalog::cross_polytope(2)).unwrap();
    let ball = word_ball(&cross, 2).unwrap();
    let l1_ball = vectors(
        (-2..=2)
            .flat_map(|x| (-2..=2).map(move |y| pt(&[x, y])))
            .filter(|p| l1(p) <= BigInt::from(2)),
    );
    assert_eq!(ball, l1_ball);
    assert_eq!(word_ball(&cross, 0).unwrap(), vectors([pt(&[0, 0])]));

    let gl = catalog::gl2z_presentation();
    assert_eq!(word_ball(&gl, 1).unwrap(), *gl.generators());

    let segment = zd_presentation_from_polytope(&polytope(&[&[-1], &[1]])).unwrap();
    let a = vectors((-2..=2).map(|i| pt(&[i])));
    assert_eq!(omega_interior(&segment, &a), vectors((-1..=1).map(|i| pt(&[i]))));
    assert_eq!(omega_boundary(&segment, &a), vectors([pt(&[-2]), pt(&[2])]));
    assert!(omega_interior(&gl, &ElementSet::new()).is_empty());

    let w1 = GroupElement::Matrix(catalog::gl2z_generators()[1].clone());
    let omega_1 = word_ball(&gl, 1).unwrap();
    assert!(omega_interior(&gl, &omega_1).contains(&w1));
    assert!(!omega_boundary(&gl, &omega_1).contains(&w1));

    let rim = omega_boundary(&cross, &word_ball(&cross, 3).unwrap());
    assert_eq!(rim.len(), 12);

    assert!(check_boundary_range(&cross, 1, 5, DEFAULT_BALL_CAP).unwrap().iter().all(|r| r.holds));
    let r = check_boundary_equality(&gl, 1).unwrap();
    assert!(!r.holds && r.rhs_minus_lhs.contains(&w1));
    assert!(check_boundary_range(&segment, 1, 8, DEFAULT_BALL_CAP).unwrap().iter().all(|r| r.holds));

    assert_eq!(zd_presentation_from_polytope(&catalog::symmetric_cube(2)).unwrap().generators().len(), 9);
    assert_eq!(zd_presentation_from_polytope(&catalog::cross_polytope(3)).unwrap().generators().len(), 7);
    assert_eq!(
        zd_presentation_from_polytope(&catalog::symmetric_counterexample()).unwrap().generators().len(),
        9
    );
}
