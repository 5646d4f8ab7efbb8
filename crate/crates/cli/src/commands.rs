use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};

use latpoly::group::{check_boundary_range, omega_boundary, omega_interior, word_balls};
use latpoly::io;
use latpoly::minkowski::{check_equality_range, decompose, minkowski_power};
use latpoly::triangulation::{
    check_lemma1_equivalences, classify_simplex, is_elementary_polytope, search_primitive_triangulation,
    validate_triangulation, SearchConfig, SearchOutcome,
};
use latpoly::{GroupPresentation, LatticePoint, LatticePolytope, LatticeSimplex, Triangulation};

use crate::report::{CliError, Output, Settings};

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    io::parse_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: latpoly::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| match CliError::from(e) {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn load_polytope(path: &Path) -> Result<LatticePolytope, CliError> {
    let v = read_json(path)?;
    in_file(path, io::polytope_from_value(&v))
}

pub fn load_group(path: &Path) -> Result<GroupPresentation, CliError> {
    let v = read_json(path)?;
    let (g, inserted) = in_file(path, io::group_from_value(&v))?;
    if inserted {
        eprintln!("warning: {}: identity was missing from the generators and has been added", path.display());
    }
    Ok(g)
}

/// Parses `a..b`, `a..=b` (both inclusive) or a single `n`.
pub fn parse_range(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Input(format!("invalid range \"{s}\", expected e.g. 1..5"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    let (first, last) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if first == 0 || first > last {
        return Err(bad());
    }
    Ok((first, last))
}

/// Parses `1,-2,3` or `[1,-2,3]`.
pub fn parse_point(s: &str) -> Result<LatticePoint, CliError> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let coords = inner
        .split(',')
        .map(|c| BigInt::from_str(c.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Input(format!("invalid point \"{s}\", expected e.g. 1,-1")))?;
    Ok(LatticePoint::new(coords))
}

fn list<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let mut out = String::new();
    for item in items {
        let _ = writeln!(out, "  {item}");
    }
    if out.is_empty() {
        out.push_str("  none\n");
    }
    out
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "no"
    }
}

pub fn points(path: &Path, n: u64, s: &Settings) -> Result<Output, CliError> {
    let p = load_polytope(path)?;
    let pts = p.integer_points_capped(n, s.point_cap)?;
    Ok(Output {
        inputs: json!({"polytope": io::polytope_value(&p), "n": n}),
        result: json!({"count": pts.len(), "points": io::point_set_value(&pts)}),
        text: format!("{} integer points in {n}P\n{}", pts.len(), list(pts.iter())),
        failed: false,
    })
}

pub fn minkowski(path: &Path, n: u64, s: &Settings) -> Result<Output, CliError> {
    let p = load_polytope(path)?;
    let omega = p.integer_points_capped(1, s.point_cap)?;
    let power = minkowski_power(&omega, n);
    Ok(Output {
        inputs: json!({"polytope": io::polytope_value(&p), "n": n}),
        result: json!({
            "omega": io::point_set_value(&omega),
            "count": power.len(),
            "sum": io::point_set_value(&power),
        }),
        text: format!("{} points in {n}*(P ∩ Z^d)\n{}", power.len(), list(power.iter())),
        failed: false,
    })
}

pub fn check_equality(path: &Path, range: &str, s: &Settings) -> Result<Output, CliError> {
    let p = load_polytope(path)?;
    let (first, last) = parse_range(range)?;
    let reports = check_equality_range(&p, first..=last, s.point_cap)?;
    let mut text = String::from("   n  holds  witness\n");
    for r in &reports {
        let witness = r.witness.as_ref().map_or("-".to_string(), |w| w.to_string());
        let _ = writeln!(text, "{:>4}  {:<5}  {witness}", r.n, mark(r.holds));
    }
    Ok(Output {
        inputs: json!({"polytope": io::polytope_value(&p), "first": first, "last": last}),
        result: Value::Array(reports.iter().map(io::equality_report_value).collect()),
        text,
        failed: false,
    })
}

pub fn decompose_point(
    path: &Path,
    n: u64,
    point: &str,
    triangulation: Option<&Path>,
    search: &SearchConfig,
) -> Result<Output, CliError> {
    let p = load_polytope(path)?;
    let x = parse_point(point)?;
    let (t, source) = match triangulation {
        Some(tp) => {
            let v = read_json(tp)?;
            (in_file(tp, io::triangulation_from_value(&v))?, "file")
        }
        None => match search_primitive_triangulation(&p, search)? {
            SearchOutcome::Found(t) => (t, "search"),
            SearchOutcome::Exhausted { .. } => {
                return Err(CliError::Verification("the polytope has no primitive triangulation".into()))
            }
            SearchOutcome::BudgetExceeded { nodes } => {
                return Err(CliError::Cap(format!("search budget exhausted after {nodes} nodes")))
            }
        },
    };
    let dec = decompose(&p, &t, n, &x)?;
    let text = format!(
        "{x} = {}\n",
        dec.summands.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" + ")
    );
    Ok(Output {
        inputs: json!({"polytope": io::polytope_value(&p), "n": n, "point": io::point_value(&x)}),
        result: json!({
            "decomposition": io::decomposition_value(&dec),
            "triangulation_source": source,
            "triangulation": io::triangulation_value(&t),
        }),
        text,
        failed: false,
    })
}

pub fn classify(path: &Path, s: &Settings) -> Result<Output, CliError> {
    let v = read_json(path)?;
    let vertices = in_file(path, io::vertices_from_value(&v))?;
    let dim = vertices.first().map_or(0, LatticePoint::dim);
    let inputs = json!({"vertices": vertices.iter().map(io::point_value).collect::<Vec<_>>()});
    if vertices.len() == dim + 1 {
        let simplex = in_file(path, LatticeSimplex::new(vertices))?;
        let c = classify_simplex(&simplex)?;
        let text = format!(
            "simplex with normalized volume {}\nelementary: {}\nprimitive: {}\nother integer points:\n{}",
            c.normalized_volume,
            mark(c.is_elementary),
            mark(c.is_primitive),
            list(c.non_vertex_points.iter())
        );
        let mut result = io::simplex_class_value(&c);
        result["simplex"] = json!(true);
        return Ok(Output {
            inputs,
            result,
            text,
            failed: false,
        });
    }
    let p = in_file(path, LatticePolytope::hull(vertices))?;
    let pts = p.integer_points_capped(1, s.point_cap)?;
    let elementary = is_elementary_polytope(&p)?;
    Ok(Output {
        inputs,
        result: json!({
            "simplex": false,
            "elementary": elementary,
            "integer_points": pts.len(),
            "vertices": p.vertices().len(),
        }),
        text: format!(
            "polytope with {} vertices and {} integer points\nelementary: {}\n",
            p.vertices().len(),
            pts.len(),
            mark(elementary)
        ),
        failed: false,
    })
}

pub fn lemma1(path: &Path) -> Result<Output, CliError> {
    let v = read_json(path)?;
    let a = in_file(path, io::matrix_from_value(&v))?;
    let flags = check_lemma1_equivalences(&a)?;
    let names = [
        "A Z^d = Z^d",
        "A^-1 is integral",
        "det A = ±1",
        "A[0,1]^d has volume 1",
        "A[0,1]^d is elementary",
        "A σ_d is elementary",
    ];
    let mut text = format!("det A = {}\n", a.determinant());
    for (name, flag) in names.iter().zip(flags.as_array()) {
        let _ = writeln!(text, "  {:<24} {}", name, mark(flag));
    }
    Ok(Output {
        inputs: io::matrix_value(&a),
        result: io::lemma1_value(&flags),
        text,
        failed: false,
    })
}

pub fn validate(path: &Path) -> Result<Output, CliError> {
    let v = read_json(path)?;
    let t = in_file(path, io::triangulation_from_value(&v))?;
    let report = validate_triangulation(&t)?;
    let mut text = format!(
        "valid: {}\nelementary: {}\nprimitive: {}\n",
        mark(report.is_valid()),
        mark(report.is_elementary()),
        mark(report.is_primitive())
    );
    text.push_str(&list(report.failures.iter()));
    Ok(Output {
        inputs: io::triangulation_value(&t),
        result: io::triangulation_report_value(&report),
        text,
        failed: !report.is_valid(),
    })
}

pub fn search(path: &Path, config: &SearchConfig) -> Result<Output, CliError> {
    let p = load_polytope(path)?;
    let outcome = search_primitive_triangulation(&p, config)?;
    let inputs = json!({
        "polytope": io::polytope_value(&p),
        "node_budget": config.node_budget,
        "point_cap": config.point_cap,
    });
    let (result, text) = match &outcome {
        SearchOutcome::Found(t) => (
            json!({"outcome": "found", "simplices": t.len(), "triangulation": io::triangulation_value(t)}),
            found_text(t),
        ),
        SearchOutcome::Exhausted { nodes } => (
            json!({"outcome": "exhausted", "nodes": nodes}),
            format!("no primitive triangulation exists ({nodes} nodes searched)\n"),
        ),
        SearchOutcome::BudgetExceeded { nodes } => {
            return Err(CliError::Cap(format!(
                "search undecided after {nodes} nodes (raise --budget)"
            )))
        }
    };
    Ok(Output {
        inputs,
        result,
        text,
        failed: false,
    })
}

fn found_text(t: &Triangulation) -> String {
    let mut text = format!("primitive triangulation with {} simplices\n", t.len());
    for s in t.simplices() {
        let vs: Vec<String> = s.vertices().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(text, "  {}", vs.join(" "));
    }
    text
}

pub fn word_ball(path: &Path, n: u64, s: &Settings) -> Result<Output, CliError> {
    let g = load_group(path)?;
    let balls = word_balls(&g, n, s.ball_cap)?;
    let ball = balls.last().expect("at least the identity ball");
    Ok(Output {
        inputs: json!({"group": io::group_value(&g), "n": n}),
        result: json!({"n": n, "size": ball.len(), "elements": io::element_set_value(ball)}),
        text: format!("{} elements in Ω_{n}\n{}", ball.len(), list(ball.iter())),
        failed: false,
    })
}

pub fn boundary(path: &Path, n: u64, s: &Settings) -> Result<Output, CliError> {
    let g = load_group(path)?;
    let balls = word_balls(&g, n, s.ball_cap)?;
    let ball = balls.last().expect("at least the identity ball");
    let interior = omega_interior(&g, ball);
    let rim = omega_boundary(&g, ball);
    let mut text = format!("Ω_{n}: {} elements\nΩ-interior: {}\nΩ-boundary: {}\n", ball.len(), interior.len(), rim.len());
    text.push_str(&list(rim.iter()));
    let mut result = json!({
        "n": n,
        "ball_size": ball.len(),
        "interior": io::element_set_value(&interior),
        "boundary": io::element_set_value(&rim),
    });
    if n >= 1 {
        let layer = ball.difference(&balls[n as usize - 1]);
        result["layer"] = io::element_set_value(&layer);
    }
    Ok(Output {
        inputs: json!({"group": io::group_value(&g), "n": n}),
        result,
        text,
        failed: false,
    })
}

pub fn check_boundary(path: &Path, range: &str, s: &Settings) -> Result<Output, CliError> {
    let g = load_group(path)?;
    let (first, last) = parse_range(range)?;
    let reports = check_boundary_range(&g, first, last, s.ball_cap)?;
    let mut text = String::from("   n  holds  layer elements off the boundary\n");
    for r in &reports {
        let missing: Vec<String> = r.rhs_minus_lhs.iter().map(|e| e.to_string()).collect();
        let shown = if missing.is_empty() { "-".to_string() } else { missing.join(" ") };
        let _ = writeln!(text, "{:>4}  {:<5}  {shown}", r.n, mark(r.holds));
    }
    Ok(Output {
        inputs: json!({"group": io::group_value(&g), "first": first, "last": last}),
        result: Value::Array(reports.iter().map(io::boundary_report_value).collect()),
        text,
        failed: false,
    })
}
