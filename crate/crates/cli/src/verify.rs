//! The reproduction suite: one row per claim about the bundled objects.

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use latpoly::group::{
    check_boundary_range, omega_boundary, omega_interior, word_ball, word_balls, zd_presentation_from_polytope,
    DEFAULT_BALL_CAP,
};
use latpoly::minkowski::{check_equality_range, decompose, generates_zd, minkowski_power, minkowski_sum};
use latpoly::polytope::DEFAULT_POINT_CAP;
use latpoly::triangulation::{
    check_lemma1_equivalences, classify_simplex, search_primitive_triangulation, validate_triangulation,
    SearchConfig, SearchOutcome,
};
use latpoly::{catalog, GroupElement, IntegerMatrix, LatticePoint, LatticePolytope, PointSet, Rational, RationalPoint};

use crate::report::Output;

pub struct Row {
    pub claim: &'static str,
    pub statement: &'static str,
    pub pass: bool,
    pub detail: String,
}

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn e(err: latpoly::Error) -> String {
    err.to_string()
}

fn pt(c: &[i64]) -> LatticePoint {
    LatticePoint::from(c)
}

fn sigma_integer_points() -> Check {
    for d in 3..=5usize {
        for m in 1..=6u64 {
            let class = classify_simplex(&catalog::sigma(d, m)).map_err(e)?;
            let expected = PointSet::new(
                d,
                (1..=m / d as u64).map(|j| LatticePoint::unit(d, d - 1).scaled(&BigInt::from(j))),
            )
            .map_err(e)?;
            ensure!(class.non_vertex_points == expected, "sigma({d},{m}) differs");
        }
    }
    Ok("d = 3..5, m = 1..6".into())
}

fn sigma_3_3_extra_point() -> Check {
    let pts = catalog::sigma(3, 3).polytope().integer_points(1).map_err(e)?;
    ensure!(pts.len() == 5 && pts.contains(&pt(&[0, 0, 1])), "got {} points", pts.len());
    Ok("4 vertices plus (0, 0, 1)".into())
}

fn sigma_volume() -> Check {
    for (d, m, fact) in [(3usize, 2u64, 6i64), (3, 5, 6), (4, 3, 24)] {
        let v = catalog::sigma(d, m).polytope().volume().map_err(e)?;
        ensure!(v == Rational::new(BigInt::from(m), BigInt::from(fact)), "sigma({d},{m}) volume {v}");
    }
    let cube = catalog::unit_cube(3).volume().map_err(e)?;
    ensure!(cube == Rational::one(), "cube volume {cube}");
    Ok("vol sigma(d,m) = m/d!, vol [0,1]^3 = 1".into())
}

fn sigma_3_2_pair_sums() -> Check {
    let omega = catalog::sigma(3, 2).polytope().integer_points(1).map_err(e)?;
    let sums = minkowski_sum(&omega, &omega).map_err(e)?;
    ensure!(sums.len() == 10, "{} pair sums", sums.len());
    ensure!(!sums.contains(&pt(&[0, 0, 1])), "e_3 is a pair sum");
    Ok("10 pair sums, e_3 missing".into())
}

fn sigma_3_2_equality() -> Check {
    let r = check_equality_range(&catalog::sigma(3, 2).polytope(), 1..=2, DEFAULT_POINT_CAP).map_err(e)?;
    ensure!(r[0].holds, "n = 1 fails");
    ensure!(!r[1].holds && r[1].witness == Some(pt(&[0, 0, 1])), "n = 2: {:?}", r[1].witness);
    Ok("holds at n = 1, witness (0, 0, 1) at n = 2".into())
}

fn sigma_5_2_delayed() -> Check {
    let p = catalog::sigma(5, 2).polytope();
    let r = check_equality_range(&p, 1..=3, DEFAULT_POINT_CAP).map_err(e)?;
    let holds: Vec<bool> = r.iter().map(|r| r.holds).collect();
    ensure!(holds == [true, true, false], "{holds:?}");
    Ok(format!("first failure at n = 3, witness {}", r[2].witness.as_ref().unwrap()))
}

fn symmetric_omega() -> Check {
    let omega = catalog::symmetric_counterexample().integer_points(1).map_err(e)?;
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
    .map_err(e)?;
    ensure!(omega == listed, "Ω has {} points", omega.len());
    ensure!(generates_zd(&omega).map_err(e)?, "Ω does not generate Z^3");
    let origin = RationalPoint::from(&LatticePoint::zero(3));
    ensure!(
        catalog::symmetric_counterexample().interior_contains(&origin).map_err(e)?,
        "0 is not interior"
    );
    Ok("9 points, generates Z^3, 0 interior".into())
}

fn symmetric_witness() -> Check {
    let p = catalog::symmetric_counterexample();
    let omega = p.integer_points(1).map_err(e)?;
    let x = pt(&[-1, -1, 1]);
    ensure!(p.contains_dilated(&x, 2).map_err(e)?, "not in 2P");
    ensure!(!minkowski_power(&omega, 2).contains(&x), "in 2*Ω");
    let r = check_equality_range(&p, 2..=2, DEFAULT_POINT_CAP).map_err(e)?;
    ensure!(r[0].witness == Some(x), "witness {:?}", r[0].witness);
    Ok("(-1, -1, 1) in 2P minus 2*Ω".into())
}

fn random_polygons(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let count = rng.random_range(3..=6);
        let pts: Vec<LatticePoint> = (0..count)
            .map(|_| pt(&[rng.random_range(-4..=4), rng.random_range(-4..=4)]))
            .collect();
        let p = LatticePolytope::hull(pts).map_err(e)?;
        for r in check_equality_range(&p, 1..=5, DEFAULT_POINT_CAP).map_err(e)? {
            ensure!(r.holds, "{:?} fails at n = {}", p.vertices(), r.n);
        }
    }
    Ok(format!("200 polygons, n = 1..5, seed {seed}"))
}

fn lemma1_random(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..500 {
        let d = rng.random_range(1..=3usize);
        let rows: Vec<Vec<BigInt>> = (0..d)
            .map(|_| (0..d).map(|_| BigInt::from(rng.random_range(-3..=3))).collect())
            .collect();
        let a = IntegerMatrix::from_rows(rows).map_err(e)?;
        let f = check_lemma1_equivalences(&a).map_err(e)?;
        let c = f.unimodular_conditions();
        ensure!(c.iter().all(|&x| x == c[0]), "{:?}: {c:?}", a.rows());
        ensure!(!c[0] || f.simplex_is_elementary, "{:?}: simplex condition not implied", a.rows());
        ensure!(d > 2 || !f.simplex_is_elementary || c[0], "{:?}: converse fails in d = {d}", a.rows());
    }
    Ok(format!("500 matrices, seed {seed}"))
}

fn sigma_3_2_lemma1() -> Check {
    let f = check_lemma1_equivalences(&catalog::sigma(3, 2).edge_matrix()).map_err(e)?;
    ensure!(f.as_array() == [false, false, false, false, false, true], "{:?}", f.as_array());
    Ok("only the simplex condition holds".into())
}

fn sigma_3_2_class() -> Check {
    let c = classify_simplex(&catalog::sigma(3, 2)).map_err(e)?;
    ensure!(c.is_elementary && !c.is_primitive, "elementary {}, primitive {}", c.is_elementary, c.is_primitive);
    ensure!(c.normalized_volume == BigInt::from(2), "volume {}", c.normalized_volume);
    Ok("elementary, not primitive, normalized volume 2".into())
}

fn reeve() -> Check {
    for m in 1..=6u64 {
        let c = classify_simplex(&catalog::sigma_prime(3, m)).map_err(e)?;
        ensure!(c.is_elementary, "m = {m} not elementary");
        ensure!(c.normalized_volume == BigInt::from(m), "m = {m}: volume {}", c.normalized_volume);
    }
    Ok("m = 1..6".into())
}

fn cross_fans() -> Check {
    for d in 1..=3 {
        let t = catalog::cross_polytope_fan(d);
        ensure!(t.len() == 1 << d, "d = {d}: {} simplices", t.len());
        let r = validate_triangulation(&t).map_err(e)?;
        ensure!(r.is_primitive(), "d = {d}: {:?}", r.failures);
    }
    Ok("2^d unit simplices, d = 1..3".into())
}

fn sigma_3_2_untriangulable() -> Check {
    let outcome =
        search_primitive_triangulation(&catalog::sigma(3, 2).polytope(), &SearchConfig::default()).map_err(e)?;
    ensure!(matches!(outcome, SearchOutcome::Exhausted { .. }), "{outcome:?}");
    Ok("search space exhausted".into())
}

fn primitive_pipeline() -> Check {
    let mut count = 0;
    for p in [
        catalog::unit_cube(3),
        catalog::symmetric_cube(2),
        catalog::cross_polytope(2),
        catalog::cross_polytope(3),
    ] {
        let outcome = search_primitive_triangulation(&p, &SearchConfig::default()).map_err(e)?;
        let t = outcome.triangulation().ok_or_else(|| format!("{outcome:?}"))?;
        ensure!(validate_triangulation(t).map_err(e)?.is_primitive(), "invalid triangulation");
        let omega = p.integer_points(1).map_err(e)?;
        for n in 1..=4 {
            for x in &p.integer_points(n).map_err(e)? {
                let dec = decompose(&p, t, n, x).map_err(e)?;
                ensure!(
                    dec.summands.len() as u64 == n && dec.sum() == *x && dec.summands.iter().all(|s| omega.contains(s)),
                    "bad decomposition of {x}"
                );
                count += 1;
            }
        }
    }
    Ok(format!("{count} points decomposed"))
}

fn gl2z_ball() -> Check {
    let g = catalog::gl2z_presentation();
    let ball = word_ball(&g, 1).map_err(e)?;
    let six: latpoly::ElementSet = catalog::gl2z_generators().into_iter().map(GroupElement::Matrix).collect();
    ensure!(ball == six && ball.len() == 6, "Ω_1 has {} elements", ball.len());
    Ok("Ω_1 is the six generators".into())
}

fn gl2z_products() -> Check {
    let w = catalog::gl2z_generators();
    ensure!(w[2].mul(&w[1]) == w[3], "ω2ω1 != ω3");
    ensure!(w[2].mul(&w[4]) == w[0], "ω4 is not the inverse of ω2");
    for (i, j) in [(0, 1), (1, 0), (2, 3), (3, 2), (4, 5), (5, 4)] {
        ensure!(w[i].mul(&w[1]) == w[j], "ω{i}ω1 != ω{j}");
    }
    Ok("Ωω1 = Ω".into())
}

fn gl2z_boundary() -> Check {
    let g = catalog::gl2z_presentation();
    let w1 = GroupElement::Matrix(catalog::gl2z_generators()[1].clone());
    let ball = word_ball(&g, 1).map_err(e)?;
    ensure!(omega_interior(&g, &ball).contains(&w1), "ω1 is not inner");
    ensure!(!omega_boundary(&g, &ball).contains(&w1), "ω1 on the boundary");
    let r = check_boundary_range(&g, 1, 1, DEFAULT_BALL_CAP).map_err(e)?;
    ensure!(!r[0].holds && r[0].rhs_minus_lhs.contains(&w1), "equality holds at n = 1");
    Ok("fails at n = 1, ω1 is the missing element".into())
}

fn boundary_equality() -> Check {
    for p in [catalog::cross_polytope(2), catalog::symmetric_cube(2), catalog::cross_polytope(3)] {
        let g = zd_presentation_from_polytope(&p).map_err(e)?;
        for r in check_boundary_range(&g, 1, 5, DEFAULT_BALL_CAP).map_err(e)? {
            ensure!(r.holds, "{:?} fails at n = {}", p.vertices(), r.n);
        }
    }
    Ok("cross-polytopes d = 2, 3 and [-1,1]^2, n = 1..5".into())
}

fn inclusion_chains() -> Check {
    let mut groups = vec![catalog::gl2z_presentation()];
    for p in [catalog::cross_polytope(2), catalog::symmetric_cube(3), catalog::symmetric_counterexample()] {
        groups.push(zd_presentation_from_polytope(&p).map_err(e)?);
    }
    for g in &groups {
        let balls = word_balls(g, 5, DEFAULT_BALL_CAP).map_err(e)?;
        for n in 1..=5 {
            let inner = omega_interior(g, &balls[n]);
            ensure!(balls[n - 1].is_subset(&inner) && inner.is_subset(&balls[n]), "{:?} at n = {n}", g.kind());
            let layer = balls[n].difference(&balls[n - 1]);
            ensure!(omega_boundary(g, &balls[n]).is_subset(&layer), "{:?} at n = {n}", g.kind());
        }
    }
    Ok(format!("{} groups, n = 1..5", groups.len()))
}

fn balls_are_powers() -> Check {
    for p in [catalog::cross_polytope(3), catalog::symmetric_cube(2), catalog::symmetric_counterexample()] {
        let g = zd_presentation_from_polytope(&p).map_err(e)?;
        let omega = p.integer_points(1).map_err(e)?;
        for (n, ball) in word_balls(&g, 5, DEFAULT_BALL_CAP).map_err(e)?.iter().enumerate() {
            ensure!(
                ball.to_point_set(p.dim()) == Some(minkowski_power(&omega, n as u64)),
                "differ at n = {n}"
            );
        }
    }
    Ok("n = 0..5".into())
}

fn dilated_sigma() -> Check {
    let p = catalog::sigma(3, 2).polytope().dilate(2);
    let cfg = SearchConfig {
        node_budget: 200_000,
        point_cap: 64,
    };
    let outcome = search_primitive_triangulation(&p, &cfg).map_err(e)?;
    let t = outcome.triangulation().ok_or_else(|| format!("{outcome:?}"))?;
    ensure!(validate_triangulation(t).map_err(e)?.is_primitive(), "invalid triangulation");
    ensure!(BigInt::from(t.len()) == p.normalized_volume().map_err(e)?, "simplex count");
    Ok(format!("2 sigma(3,2) has {} unimodular simplices", t.len()))
}

type Claim = (&'static str, &'static str, Box<dyn Fn() -> Check>);

fn claims(seed: u64) -> Vec<Claim> {
    vec![
        ("sigma-integer-points", "sigma(d,m) has exactly floor(m/d) non-vertex integer points, k e_d", Box::new(sigma_integer_points)),
        ("sigma-3-3-points", "sigma(3,3) has 5 integer points", Box::new(sigma_3_3_extra_point)),
        ("sigma-volume", "sigma(d,m) has volume m/d!", Box::new(sigma_volume)),
        ("sigma-3-2-pair-sums", "two integer points of sigma(3,2) never sum to e_3", Box::new(sigma_3_2_pair_sums)),
        ("sigma-3-2-equality", "equality fails for sigma(3,2) at n = 2 with witness e_3", Box::new(sigma_3_2_equality)),
        ("sigma-5-2-delayed", "equality for sigma(5,2) holds for n <= 2 and fails at n = 3", Box::new(sigma_5_2_delayed)),
        ("symmetric-omega", "the symmetric example has 9 integer points generating Z^3 with 0 interior", Box::new(symmetric_omega)),
        ("symmetric-witness", "(-1,-1,1) lies in 2P but not in 2*Ω for the symmetric example", Box::new(symmetric_witness)),
        ("polygons-equality", "equality holds for lattice polygons", Box::new(move || random_polygons(seed))),
        ("lemma1-random", "unimodularity conditions agree and imply elementary simplices", Box::new(move || lemma1_random(seed))),
        ("sigma-3-2-lemma1", "sigma(3,2) is elementary without being unimodular", Box::new(sigma_3_2_lemma1)),
        ("sigma-3-2-class", "sigma(3,2) is elementary and not primitive", Box::new(sigma_3_2_class)),
        ("reeve-elementary", "Reeve simplices sigma'(3,m) are elementary with volume m", Box::new(reeve)),
        ("cross-fan", "cross-polytopes split into 2^d unit simplices at the origin", Box::new(cross_fans)),
        ("sigma-3-2-untriangulable", "sigma(3,2) has no primitive triangulation", Box::new(sigma_3_2_untriangulable)),
        ("primitive-pipeline", "primitive triangulations give explicit decompositions", Box::new(primitive_pipeline)),
        ("dilated-sigma-triangulable", "2 sigma(3,2) has a primitive triangulation", Box::new(dilated_sigma)),
        ("gl2z-ball", "the six GL(2,Z) matrices form Ω_1", Box::new(gl2z_ball)),
        ("gl2z-products", "Ω ω1 = Ω for the GL(2,Z) generators", Box::new(gl2z_products)),
        ("gl2z-boundary", "boundary equality fails in GL(2,Z) at n = 1", Box::new(gl2z_boundary)),
        ("boundary-equality", "boundary equality holds for generators from primitively triangulable polytopes", Box::new(boundary_equality)),
        ("inclusion-chains", "Ω_(n-1) ⊆ int Ω_n ⊆ Ω_n and ∂Ω_n ⊆ Ω_n minus Ω_(n-1)", Box::new(inclusion_chains)),
        ("balls-are-powers", "word balls in Z^d equal Minkowski powers", Box::new(balls_are_powers)),
    ]
}

pub fn run(seed: u64) -> Vec<Row> {
    claims(seed)
        .into_iter()
        .map(|(claim, statement, check)| {
            let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
            let (pass, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Row {
                claim,
                statement,
                pass,
                detail,
            }
        })
        .collect()
}

pub fn output(seed: u64) -> Output {
    let rows = run(seed);
    let failed = rows.iter().filter(|r| !r.pass).count();
    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(
            text,
            "{}  {:<28} {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.claim,
            r.detail
        );
    }
    let _ = writeln!(text, "{} passed, {failed} failed", rows.len() - failed);
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| json!({"claim": r.claim, "statement": r.statement, "pass": r.pass, "detail": r.detail}))
        .collect();
    Output {
        inputs: json!({"seed": seed}),
        result: json!({"rows": json_rows, "passed": rows.len() - failed, "failed": failed}),
        text,
        failed: failed > 0,
    }
}
