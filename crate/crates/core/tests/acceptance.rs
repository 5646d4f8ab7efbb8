//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use latpoly::group::{
    check_boundary_range, omega_boundary, omega_interior, word_balls, zd_presentation_from_polytope,
    DEFAULT_BALL_CAP,
};
use latpoly::minkowski::{check_equality_range, decompose, generates_zd, minkowski_power};
use latpoly::polytope::DEFAULT_POINT_CAP;
use latpoly::triangulation::{
    check_lemma1_equivalences, classify_simplex, search_primitive_triangulation, validate_triangulation,
    SearchConfig,
};
use latpoly::{catalog, GroupElement, GroupPresentation, IntegerMatrix, LatticePoint, LatticePolytope, PointSet, RationalPoint};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err(e: latpoly::Error) -> String {
    e.to_string()
}

fn sigma_integer_points() -> Outcome {
    let mut checked = 0;
    for d in 3..=5usize {
        for m in 1..=6u64 {
            let s = catalog::sigma(d, m);
            let class = classify_simplex(&s).map_err(err)?;
            let k = m / d as u64;
            let expected = PointSet::new(
                d,
                (1..=k).map(|j| LatticePoint::unit(d, d - 1).scaled(&BigInt::from(j))),
            )
            .map_err(err)?;
            ensure!(
                class.non_vertex_points == expected,
                "sigma({d},{m}): got {:?}",
                class.non_vertex_points.points()
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} simplices, non-vertex points = multiples of e_d up to floor(m/d)"))
}

fn reeve_simplices() -> Outcome {
    for m in 1..=6u64 {
        let class = classify_simplex(&catalog::sigma_prime(3, m)).map_err(err)?;
        ensure!(class.is_elementary, "sigma'(3,{m}) is not elementary");
        ensure!(
            class.normalized_volume == BigInt::from(m),
            "sigma'(3,{m}) has normalized volume {}",
            class.normalized_volume
        );
    }
    Ok("sigma'(3,m) elementary with normalized volume m for m = 1..6".into())
}

fn sigma_3_2_counterexample() -> Outcome {
    let p = catalog::sigma(3, 2).polytope();
    let r = check_equality_range(&p, 1..=2, DEFAULT_POINT_CAP).map_err(err)?;
    ensure!(r[0].holds, "n = 1 fails with {:?}", r[0].witness);
    ensure!(!r[1].holds, "n = 2 holds");
    ensure!(
        r[1].witness == Some(LatticePoint::unit(3, 2)),
        "n = 2 witness {:?}",
        r[1].witness
    );
    Ok("holds at n = 1, fails at n = 2 with witness (0, 0, 1)".into())
}

fn delayed_failure() -> Outcome {
    let p = catalog::sigma(5, 2).polytope();
    let omega = p.integer_points(1).map_err(err)?;
    ensure!(omega.len() == 6, "|Ω| = {}", omega.len());
    let r = check_equality_range(&p, 1..=3, DEFAULT_POINT_CAP).map_err(err)?;
    let holds: Vec<bool> = r.iter().map(|r| r.holds).collect();
    ensure!(holds == [true, true, false], "holds = {holds:?}");
    // Independent check of the failure at n = 3 with the LP and multiset oracles.
    let lattice = lattice_points_by_lp(&p, 3);
    let sums = sums_of_multisets(omega.points(), 5, 3);
    ensure!(lattice.len() > sums.len(), "oracle sees no gap at n = 3");
    Ok(format!(
        "sigma(5,2) holds at n = 1, 2 and fails at n = 3 (witness {})",
        r[2].witness.as_ref().unwrap()
    ))
}

fn symmetric_counterexample() -> Outcome {
    let p = catalog::symmetric_counterexample();
    let omega = p.integer_points(1).map_err(err)?;
    let listed = PointSet::new(
        3,
        [
            [1, 0, 0],
            [-1, 0, 0],
            [0, 1, 0],
            [0, -1, 0],
            [0, 0, 1],
            [0, 0, -1],
            [-1, -1, 3],
            [1, 1, -3],
            [0, 0, 0],
        ]
        .map(LatticePoint::from),
    )
    .map_err(err)?;
    ensure!(omega == listed, "Ω = {:?}", omega.points());
    ensure!(generates_zd(&omega).map_err(err)?, "Ω does not generate Z^3");
    ensure!(
        p.interior_contains(&RationalPoint::from(&LatticePoint::zero(3))).map_err(err)?,
        "origin is not interior"
    );
    let x = pt(&[-1, -1, 1]);
    ensure!(p.contains_dilated(&x, 2).map_err(err)?, "(-1,-1,1) is not in 2P");
    ensure!(!minkowski_power(&omega, 2).contains(&x), "(-1,-1,1) is in 2*Ω");
    ensure!(!sums_of_multisets(omega.points(), 3, 2).contains(&x), "oracle finds (-1,-1,1) in 2*Ω");
    Ok("9 listed points, generates Z^3, 0 interior, (-1,-1,1) in 2P but not 2*Ω".into())
}

fn random_polygons() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut tested = 0;
    while tested < 200 {
        let count = rng.random_range(3..=6);
        let pts: Vec<LatticePoint> = (0..count)
            .map(|_| pt(&[rng.random_range(-4..=4), rng.random_range(-4..=4)]))
            .collect();
        let p = LatticePolytope::hull(pts).map_err(err)?;
        for r in check_equality_range(&p, 1..=5, DEFAULT_POINT_CAP).map_err(err)? {
            ensure!(r.holds, "polygon {:?} fails at n = {} with {:?}", p.vertices(), r.n, r.witness);
        }
        tested += 1;
    }
    Ok(format!("{tested} seeded polygons, equality holds for n = 1..5"))
}

fn primitive_pipeline() -> Outcome {
    let cases = [
        ("[0,1]^3", catalog::unit_cube(3)),
        ("[-1,1]^2", catalog::symmetric_cube(2)),
        ("cross-polytope d=2", catalog::cross_polytope(2)),
        ("cross-polytope d=3", catalog::cross_polytope(3)),
    ];
    let mut decomposed = 0usize;
    for (name, p) in &cases {
        let outcome = search_primitive_triangulation(p, &SearchConfig::default()).map_err(err)?;
        let Some(t) = outcome.triangulation() else {
            return Err(format!("{name}: search returned {outcome:?}"));
        };
        let report = validate_triangulation(t).map_err(err)?;
        ensure!(report.is_primitive(), "{name}: {:?}", report.failures);
        let omega = p.integer_points(1).map_err(err)?;
        for n in 1..=4u64 {
            for x in &p.integer_points(n).map_err(err)? {
                let dec = decompose(p, t, n, x).map_err(err)?;
                ensure!(dec.summands.len() as u64 == n, "{name}: {x} has {} summands", dec.summands.len());
                ensure!(dec.summands.iter().all(|s| omega.contains(s)), "{name}: summand outside Ω");
                ensure!(dec.sum() == *x, "{name}: summands of {x} add to {}", dec.sum());
                decomposed += 1;
            }
        }
    }
    Ok(format!("4 polytopes triangulated primitively, {decomposed} points decomposed"))
}

fn lemma1_random() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for _ in 0..500 {
        let d = rng.random_range(1..=3usize);
        let rows: Vec<Vec<BigInt>> = (0..d)
            .map(|_| (0..d).map(|_| BigInt::from(rng.random_range(-3..=3))).collect())
            .collect();
        let det = leibniz_det(&rows);
        let a = IntegerMatrix::from_rows(rows).map_err(err)?;
        let flags = check_lemma1_equivalences(&a).map_err(err)?;
        let first = flags.unimodular_conditions();
        ensure!(first.iter().all(|&f| f == first[0]), "{:?}: conditions disagree {first:?}", a.rows());
        let unit = det == BigInt::one() || -&det == BigInt::one();
        ensure!(first[0] == unit, "{:?}: flags {first:?} but det {det}", a.rows());
        if first[0] {
            ensure!(flags.simplex_is_elementary, "{:?}: simplex condition not implied", a.rows());
        }
        if d <= 2 && flags.simplex_is_elementary {
            ensure!(first[0], "{:?}: elementary simplex without unimodularity in d = {d}", a.rows());
        }
        ensure!(flags.singular == det.is_zero(), "{:?}: singular flag wrong", a.rows());
    }
    let s = check_lemma1_equivalences(&catalog::sigma(3, 2).edge_matrix()).map_err(err)?;
    ensure!(
        s.simplex_is_elementary && !s.determinant_is_unit,
        "sigma(3,2) flags {:?}",
        s.as_array()
    );
    Ok("500 seeded matrices consistent; sigma(3,2) elementary with det 2".into())
}

fn boundary_equality_polytopes() -> Outcome {
    let cases = [
        ("cross-polytope d=2", catalog::cross_polytope(2)),
        ("[-1,1]^2", catalog::symmetric_cube(2)),
        ("cross-polytope d=3", catalog::cross_polytope(3)),
    ];
    for (name, p) in &cases {
        let g = zd_presentation_from_polytope(p).map_err(err)?;
        for r in check_boundary_range(&g, 1, 5, DEFAULT_BALL_CAP).map_err(err)? {
            ensure!(r.holds, "{name} fails at n = {}", r.n);
        }
    }
    Ok("boundary equality holds for n = 1..5 on all three".into())
}

fn gl2z_counterexample() -> Outcome {
    let w = catalog::gl2z_generators();
    let g = catalog::gl2z_presentation();
    for (i, j) in [(0, 1), (1, 0), (2, 3), (3, 2), (4, 5), (5, 4)] {
        ensure!(w[i].mul(&w[1]) == w[j], "ω{i}ω1 = {} instead of ω{j}", w[i].mul(&w[1]));
    }
    let w1 = GroupElement::Matrix(w[1].clone());
    let balls = word_balls(&g, 1, DEFAULT_BALL_CAP).map_err(err)?;
    ensure!(balls[1].contains(&w1) && !balls[0].contains(&w1), "ω1 not in Ω_1 \\ Ω_0");
    ensure!(!omega_boundary(&g, &balls[1]).contains(&w1), "ω1 is on the Ω-boundary of Ω_1");
    let r = check_boundary_range(&g, 1, 1, DEFAULT_BALL_CAP).map_err(err)?;
    ensure!(!r[0].holds && r[0].rhs_minus_lhs.contains(&w1), "boundary equality does not fail at n = 1");
    Ok("six products verified, boundary equality fails at n = 1".into())
}

fn tested_groups() -> Result<Vec<(String, GroupPresentation)>, String> {
    let mut groups = vec![("GL(2,Z)".to_string(), catalog::gl2z_presentation())];
    let polytopes = [
        ("segment [-1,1]", polytope(&[&[-1], &[1]])),
        ("segment [-1,2]", polytope(&[&[-1], &[2]])),
        ("cross-polytope d=2", catalog::cross_polytope(2)),
        ("cross-polytope d=3", catalog::cross_polytope(3)),
        ("[-1,1]^2", catalog::symmetric_cube(2)),
        ("[-1,1]^3", catalog::symmetric_cube(3)),
        ("triangle (0,0),(1,0),(0,1)", catalog::unit_simplex(2).polytope()),
        ("sigma(3,2)", catalog::sigma(3, 2).polytope()),
        ("symmetric counterexample", catalog::symmetric_counterexample()),
    ];
    for (name, p) in polytopes {
        groups.push((name.to_string(), zd_presentation_from_polytope(&p).map_err(err)?));
    }
    Ok(groups)
}

fn inclusion_chains() -> Outcome {
    let groups = tested_groups()?;
    for (name, g) in &groups {
        let balls = word_balls(g, 5, DEFAULT_BALL_CAP).map_err(err)?;
        for n in 1..=5 {
            let inner = omega_interior(g, &balls[n]);
            ensure!(balls[n - 1].is_subset(&inner), "{name}: Ω_{} not inside int Ω_{n}", n - 1);
            ensure!(inner.is_subset(&balls[n]), "{name}: int Ω_{n} not inside Ω_{n}");
            let layer = balls[n].difference(&balls[n - 1]);
            ensure!(omega_boundary(g, &balls[n]).is_subset(&layer), "{name}: boundary of Ω_{n} leaves the layer");
        }
    }
    Ok(format!("{} groups, n = 1..5", groups.len()))
}

fn word_ball_oracle() -> Outcome {
    let polytopes = [
        polytope(&[&[-1], &[2]]),
        polytope(&[&[0, 0], &[1, 0], &[0, 1]]),
        catalog::cross_polytope(2),
        catalog::symmetric_cube(2),
        catalog::cross_polytope(3),
        catalog::unit_cube(3),
        catalog::sigma(3, 2).polytope(),
        catalog::symmetric_counterexample(),
    ];
    for p in &polytopes {
        let g = zd_presentation_from_polytope(p).map_err(err)?;
        let omega = p.integer_points(1).map_err(err)?;
        let balls = word_balls(&g, 5, DEFAULT_BALL_CAP).map_err(err)?;
        for (n, ball) in balls.iter().enumerate() {
            let power = minkowski_power(&omega, n as u64);
            let as_points = ball.to_point_set(p.dim()).ok_or("ball holds a matrix")?;
            ensure!(as_points == power, "{:?}: Ω_{n} differs from {n}*Ω", p.vertices());
            if n <= 3 {
                ensure!(
                    set_of(&power) == sums_of_multisets(omega.points(), p.dim(), n),
                    "{:?}: {n}*Ω differs from multiset oracle",
                    p.vertices()
                );
            }
        }
    }
    Ok(format!("{} polytopes, n = 0..5", polytopes.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("integer points of sigma(d,m)", sigma_integer_points),
        ("Reeve simplices are elementary", reeve_simplices),
        ("sigma(3,2) fails at n = 2", sigma_3_2_counterexample),
        ("sigma(5,2) first fails at n = 3", delayed_failure),
        ("symmetric counterexample", symmetric_counterexample),
        ("random lattice polygons", random_polygons),
        ("primitive triangulation pipeline", primitive_pipeline),
        ("unimodularity conditions on random matrices", lemma1_random),
        ("boundary equality for polytope generators", boundary_equality_polytopes),
        ("GL(2,Z) boundary counterexample", gl2z_counterexample),
        ("word-ball inclusion chains", inclusion_chains),
        ("word balls equal Minkowski powers", word_ball_oracle),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
