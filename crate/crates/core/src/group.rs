//! Word balls in finitely generated groups and their `Ω`-boundaries.
//!
//! Two concrete group kinds are supported: `Z^d` under addition and
//! `GL(2, Z)` under matrix multiplication. Products are always formed by
//! multiplying with a generator on the left, `ω a`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::point::{LatticePoint, PointSet};
use crate::polytope::LatticePolytope;

/// Default cap on the size of a word ball.
pub const DEFAULT_BALL_CAP: usize = 1_000_000;

/// A 2x2 integer matrix with determinant `±1`, stored row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Matrix2([BigInt; 4]);

impl Matrix2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        let m = Matrix2([a, b, c, d]);
        let det = m.determinant();
        if !det.abs().is_one() {
            return Err(Error::NotInvertible {
                det: det.to_string(),
            });
        }
        Ok(m)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Matrix2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Matrix2([BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()])
    }

    pub fn entries(&self) -> &[BigInt; 4] {
        &self.0
    }

    pub fn determinant(&self) -> BigInt {
        let [a, b, c, d] = &self.0;
        a * d - b * c
    }

    pub fn mul(&self, rhs: &Matrix2) -> Matrix2 {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &rhs.0;
        Matrix2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// `Z^d` under addition.
    Zd(usize),
    /// `GL(2, Z)` under matrix multiplication.
    Gl2z,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Zd(d) => write!(f, "Z^{d}"),
            GroupKind::Gl2z => write!(f, "GL(2,Z)"),
        }
    }
}

/// An element of one of the supported groups. The derived order is the
/// canonical iteration order of [`ElementSet`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GroupElement {
    Vector(LatticePoint),
    Matrix(Matrix2),
}

impl GroupElement {
    fn belongs_to(&self, kind: GroupKind) -> bool {
        match (self, kind) {
            (GroupElement::Vector(v), GroupKind::Zd(d)) => v.dim() == d,
            (GroupElement::Matrix(_), GroupKind::Gl2z) => true,
            _ => false,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Vector(v) => v.fmt(f),
            GroupElement::Matrix(m) => m.fmt(f),
        }
    }
}

impl From<LatticePoint> for GroupElement {
    fn from(v: LatticePoint) -> Self {
        GroupElement::Vector(v)
    }
}

impl From<Matrix2> for GroupElement {
    fn from(m: Matrix2) -> Self {
        GroupElement::Matrix(m)
    }
}

/// A finite set of group elements in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElementSet(BTreeSet<GroupElement>);

impl ElementSet {
    pub fn new() -> Self {
        ElementSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.0.contains(g)
    }

    pub fn insert(&mut self, g: GroupElement) -> bool {
        self.0.insert(g)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElement> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        ElementSet(self.0.difference(&other.0).cloned().collect())
    }

    /// The vectors of a `Z^d` set as a [`PointSet`]; `None` if any element
    /// is a matrix.
    pub fn to_point_set(&self, dim: usize) -> Option<PointSet> {
        let points = self
            .0
            .iter()
            .map(|g| match g {
                GroupElement::Vector(v) => Some(v.clone()),
                GroupElement::Matrix(_) => None,
            })
            .collect::<Option<Vec<_>>>()?;
        PointSet::new(dim, points).ok()
    }
}

impl FromIterator<GroupElement> for ElementSet {
    fn from_iter<I: IntoIterator<Item = GroupElement>>(iter: I) -> Self {
        ElementSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = &'a GroupElement;
    type IntoIter = std::collections::btree_set::Iter<'a, GroupElement>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// A group kind together with a finite generating set `Ω` containing the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    kind: GroupKind,
    generators: ElementSet,
}

impl GroupPresentation {
    /// Fails with [`Error::MissingIdentity`] if `Ω` lacks the identity.
    pub fn new(kind: GroupKind, generators: impl IntoIterator<Item = GroupElement>) -> Result<Self> {
        let (presentation, inserted) = Self::with_identity(kind, generators)?;
        if inserted {
            return Err(Error::MissingIdentity);
        }
        Ok(presentation)
    }

    /// Like [`GroupPresentation::new`], but adds the identity when missing.
    /// The flag reports whether it was added.
    pub fn with_identity(
        kind: GroupKind,
        generators: impl IntoIterator<Item = GroupElement>,
    ) -> Result<(Self, bool)> {
        if kind == GroupKind::Zd(0) {
            return Err(Error::ZeroDimension);
        }
        let mut set = ElementSet::new();
        for g in generators {
            if !g.belongs_to(kind) {
                return Err(Error::KindMismatch {
                    kind: kind.to_string(),
                });
            }
            set.insert(g);
        }
        let inserted = set.insert(identity(kind));
        Ok((
            GroupPresentation {
                kind,
                generators: set,
            },
            inserted,
        ))
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn generators(&self) -> &ElementSet {
        &self.generators
    }

    pub fn identity(&self) -> GroupElement {
        identity(self.kind)
    }

    /// The product `a b`.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (a, b) {
            (GroupElement::Vector(x), GroupElement::Vector(y)) => GroupElement::Vector(x + y),
            (GroupElement::Matrix(x), GroupElement::Matrix(y)) => GroupElement::Matrix(x.mul(y)),
            _ => panic!("elements of different group kinds"),
        }
    }
}

fn identity(kind: GroupKind) -> GroupElement {
    match kind {
        GroupKind::Zd(d) => GroupElement::Vector(LatticePoint::zero(d)),
        GroupKind::Gl2z => GroupElement::Matrix(Matrix2::identity()),
    }
}

/// `Ω_n`, all products of `n` generators (`Ω_0 = {e}`).
pub fn word_ball(g: &GroupPresentation, n: u64) -> Result<ElementSet> {
    Ok(word_balls(g, n, DEFAULT_BALL_CAP)?.pop().expect("at least Ω_0"))
}

/// `[Ω_0, Ω_1, ..., Ω_n]`, failing once a ball would exceed `cap` elements.
pub fn word_balls(g: &GroupPresentation, n: u64, cap: usize) -> Result<Vec<ElementSet>> {
    let mut balls = vec![ElementSet::from_iter([g.identity()])];
    for _ in 0..n {
        let prev = balls.last().unwrap();
        let mut next = ElementSet::new();
        for w in g.generators() {
            for a in prev {
                next.insert(g.multiply(w, a));
                if next.len() > cap {
                    return Err(Error::ResourceCap {
                        what: "word ball",
                        requested: format!("more than {cap} elements"),
                        cap: cap as u64,
                    });
                }
            }
        }
        balls.push(next);
    }
    Ok(balls)
}

/// The `Ω`-inner points of `a`: those `x` with `ω x ∈ a` for every `ω ∈ Ω`.
pub fn omega_interior(g: &GroupPresentation, a: &ElementSet) -> ElementSet {
    a.iter()
        .filter(|x| g.generators().iter().all(|w| a.contains(&g.multiply(w, x))))
        .cloned()
        .collect()
}

/// `a` minus its `Ω`-interior.
pub fn omega_boundary(g: &GroupPresentation, a: &ElementSet) -> ElementSet {
    a.difference(&omega_interior(g, a))
}

/// Comparison of `∂_Ω Ω_n` (left) with `Ω_n \ Ω_{n-1}` (right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryReport {
    pub n: u64,
    pub holds: bool,
    pub lhs_minus_rhs: ElementSet,
    pub rhs_minus_lhs: ElementSet,
}

pub fn check_boundary_equality(g: &GroupPresentation, n: u64) -> Result<BoundaryReport> {
    let mut reports = check_boundary_range(g, n, n, DEFAULT_BALL_CAP)?;
    Ok(reports.pop().expect("one report"))
}

/// Boundary reports for `n = first..=last` (`first >= 1`).
pub fn check_boundary_range(
    g: &GroupPresentation,
    first: u64,
    last: u64,
    cap: usize,
) -> Result<Vec<BoundaryReport>> {
    if first == 0 {
        return Err(Error::Internal("boundary check needs n >= 1".into()));
    }
    let balls = word_balls(g, last, cap)?;
    let mut reports = Vec::new();
    for n in first..=last {
        let ball = &balls[n as usize];
        let layer = ball.difference(&balls[n as usize - 1]);
        let boundary = omega_boundary(g, ball);
        let lhs_minus_rhs = boundary.difference(&layer);
        if !lhs_minus_rhs.is_empty() {
            return Err(Error::Internal(format!(
                "Ω-boundary of Ω_{n} meets Ω_{}",
                n - 1
            )));
        }
        let rhs_minus_lhs = layer.difference(&boundary);
        reports.push(BoundaryReport {
            n,
            holds: rhs_minus_lhs.is_empty(),
            lhs_minus_rhs,
            rhs_minus_lhs,
        });
    }
    Ok(reports)
}

/// `Z^d` with `Ω = P ∩ Z^d`; requires `0 ∈ P`.
pub fn zd_presentation_from_polytope(p: &LatticePolytope) -> Result<GroupPresentation> {
    let omega = p.integer_points(1)?;
    if !omega.contains(&LatticePoint::zero(p.dim())) {
        return Err(Error::MissingOrigin);
    }
    GroupPresentation::new(
        GroupKind::Zd(p.dim()),
        omega.into_points().into_iter().map(GroupElement::Vector),
    )
}
