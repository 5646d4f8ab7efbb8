//! Lattice polytopes in V-representation with exact facet data.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp;
use crate::point::{LatticePoint, PointSet, Rational, RationalPoint};

/// Default cap on the number of bounding-box candidates scanned by
/// [`LatticePolytope::integer_points`].
pub const DEFAULT_POINT_CAP: u64 = 100_000_000;

/// The closed halfspace `{y : <normal, y> <= offset}` with a primitive normal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Halfspace {
    normal: LatticePoint,
    offset: BigInt,
}

impl Halfspace {
    pub fn new(normal: LatticePoint, offset: BigInt) -> Self {
        Halfspace { normal, offset }
    }

    pub fn normal(&self) -> &LatticePoint {
        &self.normal
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    pub fn contains(&self, y: &LatticePoint) -> bool {
        self.normal.dot(y) <= self.offset
    }

    pub fn contains_rational(&self, q: &RationalPoint) -> bool {
        q.dot_integer(&self.normal) <= Rational::from_integer(self.offset.clone())
    }

    /// Whether `y` lies on the bounding hyperplane.
    pub fn is_tight(&self, y: &LatticePoint) -> bool {
        self.normal.dot(y) == self.offset
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, y> <= {}", self.normal, self.offset)
    }
}

/// `conv(vertices)` for a finite set of lattice points.
///
/// The vertex list is irredundant and sorted lexicographically; facets are
/// computed on first use and cached.
#[derive(Clone, Debug)]
pub struct LatticePolytope {
    dim: usize,
    affine_dim: usize,
    vertices: Vec<LatticePoint>,
    facets: OnceLock<Vec<Halfspace>>,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl LatticePolytope {
    /// Convex hull of `points`, keeping only true vertices.
    pub fn hull(points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        let mut points: Vec<LatticePoint> = points.into_iter().collect();
        let Some(first) = points.first() else {
            return Err(Error::EmptyInput);
        };
        let dim = first.dim();
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for p in &points {
            p.check_dim(dim)?;
        }
        points.sort_unstable();
        points.dedup();
        let affine_dim = affine_rank(&points);

        let mut i = 0;
        while i < points.len() && points.len() > 1 {
            let candidate = points.remove(i);
            if lp::convex_weights(&points, &candidate.to_rational()).is_some() {
                continue;
            }
            points.insert(i, candidate);
            i += 1;
        }

        Ok(LatticePolytope {
            dim,
            affine_dim,
            vertices: points,
            facets: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    fn require_full_dimensional(&self) -> Result<()> {
        if self.is_full_dimensional() {
            Ok(())
        } else {
            Err(Error::NotFullDimensional {
                dim: self.dim,
                affine_dim: self.affine_dim,
            })
        }
    }

    /// Irredundant facet inequalities with primitive outward normals, sorted.
    ///
    /// Brute force over all `d`-subsets of vertices.
    pub fn facets(&self) -> Result<&[Halfspace]> {
        self.require_full_dimensional()?;
        Ok(self.facets.get_or_init(|| compute_facets(&self.vertices, self.dim)))
    }

    /// `nP` as a lattice polytope.
    pub fn dilate(&self, n: u64) -> LatticePolytope {
        if n == 0 {
            return LatticePolytope {
                dim: self.dim,
                affine_dim: 0,
                vertices: vec![LatticePoint::zero(self.dim)],
                facets: OnceLock::new(),
            };
        }
        let factor = BigInt::from(n);
        let facets = OnceLock::new();
        if let Some(fs) = self.facets.get() {
            let _ = facets.set(
                fs.iter()
                    .map(|h| Halfspace::new(h.normal.clone(), &h.offset * &factor))
                    .collect(),
            );
        }
        LatticePolytope {
            dim: self.dim,
            affine_dim: self.affine_dim,
            vertices: self.vertices.iter().map(|v| v.scaled(&factor)).collect(),
            facets,
        }
    }

    /// Exact membership of a rational point.
    pub fn contains(&self, q: &RationalPoint) -> Result<bool> {
        if q.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: q.dim(),
            });
        }
        if self.is_full_dimensional() {
            Ok(self.facets()?.iter().all(|h| h.contains_rational(q)))
        } else {
            self.contains_via_lp(q)
        }
    }

    /// Membership decided by LP feasibility of `q` as a convex combination
    /// of the vertices; valid in every dimension.
    pub fn contains_via_lp(&self, q: &RationalPoint) -> Result<bool> {
        if q.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: q.dim(),
            });
        }
        Ok(lp::convex_weights(&self.vertices, q).is_some())
    }

    /// Whether the integer point `x` lies in `nP`.
    pub fn contains_dilated(&self, x: &LatticePoint, n: u64) -> Result<bool> {
        x.check_dim(self.dim)?;
        if n == 0 {
            return Ok(x.is_zero());
        }
        if self.is_full_dimensional() {
            let n = BigInt::from(n);
            Ok(self
                .facets()?
                .iter()
                .all(|h| h.normal.dot(x) <= &h.offset * &n))
        } else {
            self.contains_via_lp(&RationalPoint::scaled_down(x, n))
        }
    }

    /// Whether `q` lies in the topological interior of `P` (empty unless
    /// `P` is full-dimensional).
    pub fn interior_contains(&self, q: &RationalPoint) -> Result<bool> {
        if q.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: q.dim(),
            });
        }
        if !self.is_full_dimensional() {
            return Ok(false);
        }
        Ok(self.facets()?.iter().all(|h| {
            q.dot_integer(&h.normal) < Rational::from_integer(h.offset.clone())
        }))
    }

    /// Integer bounding box `[lo_k, hi_k]` of `nP`.
    pub fn bounding_box(&self, n: u64) -> (Vec<BigInt>, Vec<BigInt>) {
        let factor = BigInt::from(n);
        (0..self.dim)
            .map(|k| {
                let (lo, hi) = self
                    .vertices
                    .iter()
                    .map(|v| &v.coords()[k])
                    .minmax()
                    .into_option()
                    .expect("polytope has at least one vertex");
                (lo * &factor, hi * &factor)
            })
            .unzip()
    }

    /// `(nP) ∩ Z^d` with the default candidate cap.
    pub fn integer_points(&self, n: u64) -> Result<PointSet> {
        self.integer_points_capped(n, DEFAULT_POINT_CAP)
    }

    /// `(nP) ∩ Z^d`, refusing to scan more than `cap` bounding-box candidates.
    pub fn integer_points_capped(&self, n: u64, cap: u64) -> Result<PointSet> {
        if n == 0 {
            return Ok(PointSet::origin(self.dim));
        }
        let (lo, hi) = self.bounding_box(n);
        let count = lo
            .iter()
            .zip(&hi)
            .fold(BigInt::one(), |acc, (l, h)| acc * (h - l + 1u32));
        if count > BigInt::from(cap) {
            return Err(Error::ResourceCap {
                what: "integer point enumeration",
                requested: format!("{count} candidates"),
                cap,
            });
        }

        let mut found = Vec::new();
        if self.is_full_dimensional() {
            let factor = BigInt::from(n);
            let facets = self.facets()?;
            let bounds: Vec<BigInt> = facets.iter().map(|h| &h.offset * &factor).collect();
            let mut y = lo.clone();
            // values[f] = <normal_f, y>, maintained incrementally.
            let mut values: Vec<BigInt> = facets
                .iter()
                .map(|h| h.normal.dot(&LatticePoint::new(y.clone())))
                .collect();
            loop {
                if values.iter().zip(&bounds).all(|(v, b)| v <= b) {
                    found.push(LatticePoint::new(y.clone()));
                }
                if !advance(&mut y, &lo, &hi, |k, step| {
                    for (v, h) in values.iter_mut().zip(facets) {
                        *v += &h.normal.coords()[k] * step;
                    }
                }) {
                    break;
                }
            }
        } else {
            let mut y = lo.clone();
            loop {
                let candidate = LatticePoint::new(y.clone());
                if self.contains_via_lp(&RationalPoint::scaled_down(&candidate, n))? {
                    found.push(candidate);
                }
                if !advance(&mut y, &lo, &hi, |_, _| {}) {
                    break;
                }
            }
        }
        // Odometer order with the first coordinate most significant is lexicographic.
        Ok(PointSet::from_sorted(self.dim, found))
    }

    /// Exact `d`-volume.
    pub fn volume(&self) -> Result<Rational> {
        let normalized = self.normalized_volume()?;
        let factorial = (1..=self.dim).fold(BigInt::one(), |acc, k| acc * k);
        Ok(Rational::new(normalized, factorial))
    }

    /// `d!` times the volume; an integer for lattice polytopes.
    pub fn normalized_volume(&self) -> Result<BigInt> {
        Ok(self
            .pulling_simplices()?
            .iter()
            .map(|s| simplex_determinant(&self.vertices, s).abs())
            .sum())
    }

    /// Pulling triangulation: fan from the first vertex over the facets not
    /// containing it, recursively. Simplices are vertex-index lists.
    pub(crate) fn pulling_simplices(&self) -> Result<Vec<Vec<usize>>> {
        let facets = self.facets()?;
        let incidence: Vec<Vec<usize>> = facets
            .iter()
            .map(|h| {
                (0..self.vertices.len())
                    .filter(|&i| h.is_tight(&self.vertices[i]))
                    .collect()
            })
            .collect();
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        Ok(self.pull(&all, self.dim, &incidence))
    }

    fn pull(&self, face: &[usize], face_dim: usize, incidence: &[Vec<usize>]) -> Vec<Vec<usize>> {
        if face_dim == 0 {
            return vec![vec![face[0]]];
        }
        let apex = face[0];
        let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for inc in incidence {
            let sub: Vec<usize> = face.iter().copied().filter(|i| inc.contains(i)).collect();
            if sub.len() < face_dim || sub.contains(&apex) || subfaces.contains(&sub) {
                continue;
            }
            let pts: Vec<LatticePoint> = sub.iter().map(|&i| self.vertices[i].clone()).collect();
            if affine_rank(&pts) == face_dim - 1 {
                subfaces.insert(sub);
            }
        }
        let mut out = Vec::new();
        for sub in subfaces {
            for mut s in self.pull(&sub, face_dim - 1, incidence) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    }
}

/// Odometer step over the box `[lo, hi]`, last coordinate fastest.
/// `on_change(k, delta)` is told every coordinate change. Returns false
/// once the box is exhausted.
fn advance(
    y: &mut [BigInt],
    lo: &[BigInt],
    hi: &[BigInt],
    mut on_change: impl FnMut(usize, &BigInt),
) -> bool {
    for k in (0..y.len()).rev() {
        if y[k] < hi[k] {
            y[k] += 1u32;
            on_change(k, &BigInt::one());
            return true;
        }
        let back = &lo[k] - &y[k];
        on_change(k, &back);
        y[k] = lo[k].clone();
    }
    false
}

/// Affine dimension of a point list (`0` for a single point).
pub(crate) fn affine_rank(points: &[LatticePoint]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let diffs: Vec<Vec<BigInt>> = rest.iter().map(|p| (p - first).into_coords()).collect();
    if diffs.is_empty() {
        0
    } else {
        linalg::rank_int(&diffs)
    }
}

/// Determinant of the edge matrix of the simplex `vertices[idx]`.
pub(crate) fn simplex_determinant(vertices: &[LatticePoint], idx: &[usize]) -> BigInt {
    let base = &vertices[idx[0]];
    let edges: Vec<Vec<BigInt>> = idx[1..]
        .iter()
        .map(|&i| (&vertices[i] - base).into_coords())
        .collect();
    linalg::determinant(&edges)
}

fn compute_facets(vertices: &[LatticePoint], dim: usize) -> Vec<Halfspace> {
    let mut found: BTreeSet<Halfspace> = BTreeSet::new();
    for subset in (0..vertices.len()).combinations(dim) {
        let base = &vertices[subset[0]];
        let diffs: Vec<Vec<BigInt>> = subset[1..]
            .iter()
            .map(|&i| (&vertices[i] - base).into_coords())
            .collect();
        let Some(normal) = linalg::primitive_normal(&diffs, dim) else {
            continue;
        };
        let normal = LatticePoint::new(normal);
        let offset = normal.dot(base);
        let (mut below, mut above) = (false, false);
        for v in vertices {
            match normal.dot(v).cmp(&offset) {
                std::cmp::Ordering::Less => below = true,
                std::cmp::Ordering::Greater => above = true,
                std::cmp::Ordering::Equal => {}
            }
            if below && above {
                break;
            }
        }
        match (below, above) {
            (true, false) => {
                found.insert(Halfspace::new(normal, offset));
            }
            (false, true) => {
                found.insert(Halfspace::new(-&normal, -offset));
            }
            _ => {}
        }
    }
    found.into_iter().collect()
}
