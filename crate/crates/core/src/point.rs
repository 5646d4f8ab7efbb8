//! Lattice points, rational points and canonical point sets.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// An integer vector in `Z^d`.
///
/// Ordering is lexicographic on the coordinates, which is the canonical order
/// used by [`PointSet`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticePoint(Vec<BigInt>);

impl LatticePoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticePoint(coords)
    }

    pub fn zero(dim: usize) -> Self {
        LatticePoint(vec![BigInt::zero(); dim])
    }

    /// The standard unit vector `e_{axis+1}` of `Z^dim`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut coords = vec![BigInt::zero(); dim];
        coords[axis] = BigInt::one();
        LatticePoint(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, factor: &BigInt) -> LatticePoint {
        LatticePoint(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn dot(&self, other: &LatticePoint) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint(
            self.0
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            })
        }
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(coords: Vec<i64>) -> Self {
        LatticePoint(coords.into_iter().map(BigInt::from).collect())
    }
}

impl From<&[i64]> for LatticePoint {
    fn from(coords: &[i64]) -> Self {
        LatticePoint(coords.iter().copied().map(BigInt::from).collect())
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(coords: [i64; N]) -> Self {
        LatticePoint(coords.into_iter().map(BigInt::from).collect())
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;

    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        assert_eq!(self.dim(), rhs.dim(), "adding points of different dimension");
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;

    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        assert_eq!(self.dim(), rhs.dim(), "subtracting points of different dimension");
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;

    fn neg(self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A point of `Q^d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalPoint(Vec<Rational>);

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalPoint(coords)
    }

    /// The point `x / n`.
    pub fn scaled_down(x: &LatticePoint, n: u64) -> Self {
        assert!(n > 0, "division of a lattice point by zero");
        let n = BigInt::from(n);
        RationalPoint(
            x.coords()
                .iter()
                .map(|c| Rational::new(c.clone(), n.clone()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// Returns the lattice point if every coordinate is an integer.
    pub fn to_lattice(&self) -> Option<LatticePoint> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(LatticePoint)
    }

    pub fn dot_integer(&self, normal: &LatticePoint) -> Rational {
        debug_assert_eq!(self.dim(), normal.dim());
        self.0
            .iter()
            .zip(normal.coords())
            .fold(Rational::zero(), |acc, (q, a)| {
                acc + q * Rational::from_integer(a.clone())
            })
    }
}

impl From<&LatticePoint> for RationalPoint {
    fn from(p: &LatticePoint) -> Self {
        p.to_rational()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite subset of `Z^d` kept sorted lexicographically and free of
/// duplicates, so two sets are equal exactly when their point lists are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PointSet {
    dim: usize,
    points: Vec<LatticePoint>,
}

impl PointSet {
    pub fn new(dim: usize, points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        let mut points: Vec<LatticePoint> = points.into_iter().collect();
        for p in &points {
            p.check_dim(dim)?;
        }
        points.sort_unstable();
        points.dedup();
        Ok(PointSet { dim, points })
    }

    pub fn empty(dim: usize) -> Self {
        PointSet {
            dim,
            points: Vec::new(),
        }
    }

    /// `{0}`, the value of `0P` and `0*S`.
    pub fn origin(dim: usize) -> Self {
        PointSet {
            dim,
            points: vec![LatticePoint::zero(dim)],
        }
    }

    /// Caller guarantees sorted, deduplicated points of dimension `dim`.
    pub(crate) fn from_sorted(dim: usize, points: Vec<LatticePoint>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        PointSet { dim, points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LatticePoint> {
        self.points.iter()
    }

    pub fn into_points(self) -> Vec<LatticePoint> {
        self.points
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    /// Points of `self` that are not in `other`, in canonical order.
    pub fn difference(&self, other: &PointSet) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self
                .points
                .iter()
                .filter(|p| !other.contains(p))
                .cloned()
                .collect(),
        }
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        PointSet::new(
            self.dim,
            self.points.iter().chain(other.points.iter()).cloned(),
        )
    }

    /// `{-s : s in self}`.
    pub fn negated(&self) -> PointSet {
        let mut points: Vec<LatticePoint> = self.points.iter().map(|p| -p).collect();
        points.sort_unstable();
        PointSet {
            dim: self.dim,
            points,
        }
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a LatticePoint;
    type IntoIter = std::slice::Iter<'a, LatticePoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}
