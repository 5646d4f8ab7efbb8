//! `n`-fold Minkowski sums of finite point sets and their comparison with
//! the integer points of dilated polytopes.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::point::{LatticePoint, PointSet, Rational};
use crate::polytope::{LatticePolytope, DEFAULT_POINT_CAP};
use crate::triangulation::{search_primitive_triangulation, SearchConfig, SearchOutcome, Triangulation};

/// `{a + b : a in A, b in B}`.
pub fn minkowski_sum(a: &PointSet, b: &PointSet) -> Result<PointSet> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let mut sums = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            sums.push(x + y);
        }
    }
    PointSet::new(a.dim(), sums)
}

/// `n*S = S + ... + S` (`n` summands), with `0*S = {0}`.
pub fn minkowski_power(s: &PointSet, n: u64) -> PointSet {
    let mut acc = PointSet::origin(s.dim());
    for _ in 0..n {
        acc = minkowski_sum(&acc, s).expect("dimensions agree");
    }
    acc
}

/// `[0*S, 1*S, ..., max*S]`.
pub fn minkowski_powers(s: &PointSet, max: u64) -> Vec<PointSet> {
    let mut out = vec![PointSet::origin(s.dim())];
    for _ in 0..max {
        let next = minkowski_sum(out.last().unwrap(), s).expect("dimensions agree");
        out.push(next);
    }
    out
}

/// Outcome of comparing `(nP) ∩ Z^d` with `n*(P ∩ Z^d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityReport {
    pub n: u64,
    pub holds: bool,
    /// Lexicographically smallest point of `(nP) ∩ Z^d` missing from `n*(P ∩ Z^d)`.
    pub witness: Option<LatticePoint>,
}

/// Decides `(nP) ∩ Z^d = n*(P ∩ Z^d)` for a single `n >= 1`.
pub fn check_equality(p: &LatticePolytope, n: u64) -> Result<EqualityReport> {
    let mut reports = check_equality_range(p, n..=n, DEFAULT_POINT_CAP)?;
    Ok(reports.pop().expect("one report per n"))
}

/// [`check_equality`] for every `n` in `ns`, sharing the Minkowski powers.
pub fn check_equality_range(
    p: &LatticePolytope,
    ns: RangeInclusive<u64>,
    cap: u64,
) -> Result<Vec<EqualityReport>> {
    let omega = p.integer_points_capped(1, cap)?;
    if omega.is_empty() {
        return Err(Error::NoIntegerPoints);
    }
    let mut power = PointSet::origin(p.dim());
    let mut reached = 0;
    let mut reports = Vec::new();
    for n in ns {
        if n == 0 {
            return Err(Error::Internal("equality check needs n >= 1".into()));
        }
        while reached < n {
            power = minkowski_sum(&power, &omega)?;
            reached += 1;
        }
        let lattice = p.integer_points_capped(n, cap)?;
        if let Some(stray) = power.iter().find(|x| !lattice.contains(x)) {
            return Err(Error::Internal(format!(
                "{stray} is in {n}*(P ∩ Z^d) but not in {n}P"
            )));
        }
        let witness = lattice.iter().find(|x| !power.contains(x)).cloned();
        reports.push(EqualityReport {
            n,
            holds: witness.is_none(),
            witness,
        });
    }
    Ok(reports)
}

/// `n` points of `P ∩ Z^d` (a multiset, sorted) summing to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub summands: Vec<LatticePoint>,
    pub target: LatticePoint,
}

impl Decomposition {
    pub fn sum(&self) -> LatticePoint {
        self.summands
            .iter()
            .fold(LatticePoint::zero(self.target.dim()), |acc, s| &acc + s)
    }
}

/// Writes `x in (nP) ∩ Z^d` as a sum of `n` integer points of `P`, using the
/// first simplex of the primitive triangulation `t` that contains `x / n`.
///
/// With `w_0..w_d` the simplex vertices, the multiplicities `beta` solve
/// `[w_0 .. w_d; 1 .. 1] beta = [x; n]`. The matrix is unimodular, so `beta`
/// is integral, and non-negative exactly when `x / n` lies in the simplex.
pub fn decompose(
    p: &LatticePolytope,
    t: &Triangulation,
    n: u64,
    x: &LatticePoint,
) -> Result<Decomposition> {
    x.check_dim(p.dim())?;
    if n == 0 {
        return Err(Error::Internal("decomposition needs n >= 1".into()));
    }
    if t.polytope() != p {
        return Err(Error::Internal(
            "triangulation belongs to a different polytope".into(),
        ));
    }
    if !p.contains_dilated(x, n)? {
        return Err(Error::NotInPolytope {
            point: x.to_string(),
            n,
        });
    }
    let d = p.dim();
    let mut rhs: Vec<Rational> = x
        .coords()
        .iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect();
    rhs.push(Rational::from_integer(n.into()));

    for (index, simplex) in t.simplices().iter().enumerate() {
        let w = simplex.vertices();
        let system: Vec<Vec<Rational>> = (0..=d)
            .map(|row| {
                w.iter()
                    .map(|v| {
                        if row < d {
                            Rational::from_integer(v.coords()[row].clone())
                        } else {
                            Rational::one()
                        }
                    })
                    .collect()
            })
            .collect();
        let Some(beta) = linalg::solve(&system, &rhs) else {
            return Err(Error::DegenerateSimplex);
        };
        if beta.iter().any(Signed::is_negative) {
            continue;
        }
        let volume = simplex.normalized_volume();
        if !volume.is_one() {
            return Err(Error::NotPrimitive {
                index,
                volume: volume.to_string(),
            });
        }
        let mut summands = Vec::with_capacity(n as usize);
        let mut total = BigInt::zero();
        for (b, vertex) in beta.iter().zip(w) {
            if !b.is_integer() {
                return Err(Error::Internal(format!(
                    "non-integral multiplicity {b} in a unimodular system"
                )));
            }
            let count = b.to_integer();
            total += &count;
            let count = count.to_u64().filter(|&c| c <= n).ok_or_else(|| {
                Error::Internal(format!("multiplicity {b} outside 0..={n}"))
            })?;
            summands.extend(std::iter::repeat_n(vertex.clone(), count as usize));
        }
        if total != BigInt::from(n) {
            return Err(Error::Internal(format!(
                "multiplicities sum to {total}, expected {n}"
            )));
        }
        summands.sort_unstable();
        let decomposition = Decomposition {
            summands,
            target: x.clone(),
        };
        if &decomposition.sum() != x {
            return Err(Error::Internal("summands do not add up to the target".into()));
        }
        return Ok(decomposition);
    }
    Err(Error::NotCovered {
        point: x.to_string(),
    })
}

/// Whether the symmetric set `S` (with `0 in S`) generates `Z^d` as a group,
/// decided by the Hermite normal form of its elements.
pub fn generates_zd(s: &PointSet) -> Result<bool> {
    let d = s.dim();
    if !s.contains(&LatticePoint::zero(d)) {
        return Err(Error::MissingOrigin);
    }
    if let Some(p) = s.iter().find(|p| !s.contains(&-*p)) {
        return Err(Error::NotSymmetric {
            point: p.to_string(),
        });
    }
    let rows: Vec<Vec<BigInt>> = s.iter().map(|p| p.coords().to_vec()).collect();
    let hnf = linalg::hermite_normal_form(&rows);
    if hnf.len() < d {
        return Ok(false);
    }
    let index = (0..d).fold(BigInt::one(), |acc, k| acc * &hnf[k][k]);
    Ok(index.is_one())
}

/// Evidence gathered on whether primitive triangulations are necessary for
/// the equality to hold at every `n`.
#[derive(Clone, Debug)]
pub struct NecessityProbe {
    pub reports: Vec<EqualityReport>,
    pub search: SearchOutcome,
}

impl NecessityProbe {
    /// Equality held on every tested `n` while the search proved that no
    /// primitive triangulation exists. Such a polytope is only a candidate:
    /// finitely many `n` say nothing about all `n`.
    pub fn is_candidate(&self) -> bool {
        self.reports.iter().all(|r| r.holds) && matches!(self.search, SearchOutcome::Exhausted { .. })
    }
}

/// Checks the equality for `n = 1..=max_n` and searches for a primitive
/// triangulation of `p`.
pub fn probe_necessity(p: &LatticePolytope, max_n: u64, config: &SearchConfig) -> Result<NecessityProbe> {
    let reports = check_equality_range(p, 1..=max_n, DEFAULT_POINT_CAP)?;
    let search = search_primitive_triangulation(p, config)?;
    Ok(NecessityProbe { reports, search })
}
