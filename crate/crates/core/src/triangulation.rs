//! Unimodular matrices, lattice simplices, triangulations and the search for
//! primitive (unimodular) triangulations.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp;
use crate::point::{LatticePoint, PointSet, Rational, RationalPoint};
use crate::polytope::LatticePolytope;

/// Largest dimension accepted by [`check_lemma1_equivalences`] by default;
/// the parallelotope conditions enumerate a box.
pub const DEFAULT_EQUIVALENCE_DIM: usize = 4;

/// A square integer matrix, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != rows.len()) {
            return Err(Error::NotSquare {
                rows: rows.len(),
                cols: bad.len(),
            });
        }
        Ok(IntegerMatrix { rows })
    }

    /// The matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[LatticePoint]) -> Result<Self> {
        let d = columns.len();
        for c in columns {
            c.check_dim(d)?;
        }
        let rows = (0..d)
            .map(|i| columns.iter().map(|c| c.coords()[i].clone()).collect())
            .collect();
        IntegerMatrix::from_rows(rows)
    }

    pub fn identity(dim: usize) -> Self {
        IntegerMatrix::from_columns(&(0..dim).map(|i| LatticePoint::unit(dim, i)).collect_vec())
            .expect("identity is square")
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> LatticePoint {
        LatticePoint::new(self.rows.iter().map(|r| r[j].clone()).collect())
    }

    pub fn columns(&self) -> Vec<LatticePoint> {
        (0..self.dim()).map(|j| self.column(j)).collect()
    }

    pub fn determinant(&self) -> BigInt {
        linalg::determinant(&self.rows)
    }

    pub fn apply(&self, x: &LatticePoint) -> LatticePoint {
        LatticePoint::new(
            self.rows
                .iter()
                .map(|r| r.iter().zip(x.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }
}

/// `det A = ±1`.
pub fn is_unimodular(a: &IntegerMatrix) -> bool {
    a.determinant().abs().is_one()
}

/// The six conditions on an integer matrix `A`, each evaluated on its own:
///
/// 1. `A(Z^d) = Z^d`
/// 2. `A^{-1}` is an integer matrix
/// 3. `det A = ±1`
/// 4. the parallelotope `A([0,1]^d)` has volume 1
/// 5. that parallelotope contains no integer points besides its `2^d` corners
/// 6. the simplex `conv{0, a_1, ..., a_d}` is elementary
///
/// The first five are equivalent; the sixth follows from them and is
/// equivalent to them only for `d <= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnimodularityFlags {
    pub singular: bool,
    pub image_is_whole_lattice: bool,
    pub inverse_is_integral: bool,
    pub determinant_is_unit: bool,
    pub parallelotope_has_unit_volume: bool,
    pub parallelotope_is_elementary: bool,
    pub simplex_is_elementary: bool,
}

impl UnimodularityFlags {
    /// Conditions 1 through 5, in order.
    pub fn unimodular_conditions(&self) -> [bool; 5] {
        [
            self.image_is_whole_lattice,
            self.inverse_is_integral,
            self.determinant_is_unit,
            self.parallelotope_has_unit_volume,
            self.parallelotope_is_elementary,
        ]
    }

    pub fn as_array(&self) -> [bool; 6] {
        let c = self.unimodular_conditions();
        [c[0], c[1], c[2], c[3], c[4], self.simplex_is_elementary]
    }
}

/// Evaluates all six conditions with the default dimension bound.
pub fn check_lemma1_equivalences(a: &IntegerMatrix) -> Result<UnimodularityFlags> {
    check_lemma1_equivalences_bounded(a, DEFAULT_EQUIVALENCE_DIM)
}

/// Singular matrices report every condition as false and set `singular`:
/// their parallelotope and simplex are not full-dimensional, so conditions
/// 4 to 6 have no meaning for them.
pub fn check_lemma1_equivalences_bounded(a: &IntegerMatrix, max_dim: usize) -> Result<UnimodularityFlags> {
    let d = a.dim();
    if d > max_dim {
        return Err(Error::ResourceCap {
            what: "matrix condition check",
            requested: format!("dimension {d}"),
            cap: max_dim as u64,
        });
    }
    let columns = a.columns();
    let corners: Vec<LatticePoint> = (0..1usize << d)
        .map(|mask| {
            (0..d)
                .filter(|k| mask >> k & 1 == 1)
                .fold(LatticePoint::zero(d), |acc, k| &acc + &columns[k])
        })
        .collect();
    let parallelotope = LatticePolytope::hull(corners.clone())?;
    if !parallelotope.is_full_dimensional() {
        return Ok(UnimodularityFlags {
            singular: true,
            image_is_whole_lattice: false,
            inverse_is_integral: false,
            determinant_is_unit: false,
            parallelotope_has_unit_volume: false,
            parallelotope_is_elementary: false,
            simplex_is_elementary: false,
        });
    }

    let column_rows: Vec<Vec<BigInt>> = columns.iter().map(|c| c.coords().to_vec()).collect();
    let hnf = linalg::hermite_normal_form(&column_rows);
    let image_is_whole_lattice = hnf.len() == d && (0..d).all(|k| hnf[k][k].is_one());

    let inverse_is_integral = linalg::inverse(a.rows())
        .is_some_and(|inv| inv.iter().flatten().all(Rational::is_integer));

    let determinant_is_unit = is_unimodular(a);

    let parallelotope_has_unit_volume = parallelotope.volume()?.is_one();

    let corner_set = PointSet::new(d, corners)?;
    let parallelotope_is_elementary =
        corner_set.len() == 1 << d && parallelotope.integer_points(1)? == corner_set;

    let mut simplex_vertices = vec![LatticePoint::zero(d)];
    simplex_vertices.extend(columns);
    let simplex = LatticeSimplex::new(simplex_vertices)?;
    let simplex_is_elementary = classify_simplex(&simplex)?.is_elementary;

    Ok(UnimodularityFlags {
        singular: false,
        image_is_whole_lattice,
        inverse_is_integral,
        determinant_is_unit,
        parallelotope_has_unit_volume,
        parallelotope_is_elementary,
        simplex_is_elementary,
    })
}

/// A full-dimensional lattice simplex given by its `d + 1` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSimplex {
    vertices: Vec<LatticePoint>,
}

impl LatticeSimplex {
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::EmptyInput);
        };
        let d = first.dim();
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        for v in &vertices {
            v.check_dim(d)?;
        }
        if vertices.len() != d + 1 {
            return Err(Error::SimplexArity {
                expected: d + 1,
                found: vertices.len(),
            });
        }
        let simplex = LatticeSimplex { vertices };
        if simplex.determinant().is_zero() {
            return Err(Error::DegenerateSimplex);
        }
        Ok(simplex)
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Edge matrix with columns `v_i - v_0`.
    pub fn edge_matrix(&self) -> IntegerMatrix {
        let base = &self.vertices[0];
        let edges: Vec<LatticePoint> = self.vertices[1..].iter().map(|v| v - base).collect();
        IntegerMatrix::from_columns(&edges).expect("d edges in Z^d")
    }

    pub fn determinant(&self) -> BigInt {
        let base = &self.vertices[0];
        let rows: Vec<Vec<BigInt>> = self.vertices[1..]
            .iter()
            .map(|v| (v - base).into_coords())
            .collect();
        linalg::determinant(&rows)
    }

    /// `|det|` of the edge matrix, i.e. `d!` times the volume.
    pub fn normalized_volume(&self) -> BigInt {
        self.determinant().abs()
    }

    pub fn is_primitive(&self) -> bool {
        self.normalized_volume().is_one()
    }

    pub fn polytope(&self) -> LatticePolytope {
        LatticePolytope::hull(self.vertices.clone()).expect("simplex vertices are valid")
    }

    /// Barycentric coordinates of `q`, summing to one.
    pub fn barycentric(&self, q: &RationalPoint) -> Result<Vec<Rational>> {
        let d = self.dim();
        if q.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: q.dim(),
            });
        }
        let system: Vec<Vec<Rational>> = (0..=d)
            .map(|row| {
                self.vertices
                    .iter()
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
        let mut rhs = q.coords().to_vec();
        rhs.push(Rational::one());
        linalg::solve(&system, &rhs).ok_or(Error::DegenerateSimplex)
    }

    pub fn contains(&self, q: &RationalPoint) -> Result<bool> {
        Ok(self.barycentric(q)?.iter().all(|c| !c.is_negative()))
    }
}

/// Elementary/primitive classification of a lattice simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexClass {
    pub is_elementary: bool,
    pub is_primitive: bool,
    pub normalized_volume: BigInt,
    pub non_vertex_points: PointSet,
}

pub fn classify_simplex(s: &LatticeSimplex) -> Result<SimplexClass> {
    let vertices = PointSet::new(s.dim(), s.vertices().iter().cloned())?;
    let non_vertex_points = s.polytope().integer_points(1)?.difference(&vertices);
    let normalized_volume = s.normalized_volume();
    Ok(SimplexClass {
        is_elementary: non_vertex_points.is_empty(),
        is_primitive: normalized_volume.is_one(),
        normalized_volume,
        non_vertex_points,
    })
}

/// Whether the only integer points of `p` are its vertices.
pub fn is_elementary_polytope(p: &LatticePolytope) -> Result<bool> {
    Ok(p.integer_points(1)?.len() == p.vertices().len())
}

/// A list of full-dimensional lattice simplices claimed to triangulate a
/// polytope. Nothing beyond dimensions is checked at construction; see
/// [`validate_triangulation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    polytope: LatticePolytope,
    simplices: Vec<LatticeSimplex>,
}

impl Triangulation {
    pub fn new(polytope: LatticePolytope, simplices: Vec<LatticeSimplex>) -> Result<Self> {
        for s in &simplices {
            if s.dim() != polytope.dim() {
                return Err(Error::DimensionMismatch {
                    expected: polytope.dim(),
                    found: s.dim(),
                });
            }
        }
        Ok(Triangulation {
            polytope,
            simplices,
        })
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn simplices(&self) -> &[LatticeSimplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }
}

/// Pulling triangulation on the vertices of `p`.
pub fn pulling_triangulation(p: &LatticePolytope) -> Result<Triangulation> {
    let simplices = p
        .pulling_simplices()?
        .into_iter()
        .map(|idx| LatticeSimplex::new(idx.iter().map(|&i| p.vertices()[i].clone()).collect()))
        .collect::<Result<Vec<_>>>()?;
    Triangulation::new(p.clone(), simplices)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangulationFailure {
    PolytopeNotFullDimensional,
    SimplexOutside { index: usize, vertex: LatticePoint },
    VolumeMismatch { simplices: Rational, polytope: Rational },
    InteriorsOverlap { first: usize, second: usize },
    ImproperIntersection { first: usize, second: usize },
}

impl std::fmt::Display for TriangulationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::PolytopeNotFullDimensional => write!(f, "polytope is not full-dimensional"),
            Self::SimplexOutside { index, vertex } => {
                write!(f, "simplex {index} has vertex {vertex} outside the polytope")
            }
            Self::VolumeMismatch { simplices, polytope } => {
                write!(f, "simplices cover volume {simplices}, polytope has {polytope}")
            }
            Self::InteriorsOverlap { first, second } => {
                write!(f, "simplices {first} and {second} have overlapping interiors")
            }
            Self::ImproperIntersection { first, second } => write!(
                f,
                "simplices {first} and {second} do not meet in a common face"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulationReport {
    pub failures: Vec<TriangulationFailure>,
    pub all_elementary: bool,
    pub all_primitive: bool,
}

impl TriangulationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn is_elementary(&self) -> bool {
        self.is_valid() && self.all_elementary
    }

    pub fn is_primitive(&self) -> bool {
        self.is_valid() && self.all_primitive
    }
}

/// Checks containment, exact volume, disjoint interiors and face-to-face
/// intersection for every simplex and pair of simplices.
pub fn validate_triangulation(t: &Triangulation) -> Result<TriangulationReport> {
    let p = t.polytope();
    let mut failures = Vec::new();
    let mut all_elementary = true;
    let mut all_primitive = true;
    for s in t.simplices() {
        let class = classify_simplex(s)?;
        all_elementary &= class.is_elementary;
        all_primitive &= class.is_primitive;
    }
    if !p.is_full_dimensional() {
        failures.push(TriangulationFailure::PolytopeNotFullDimensional);
        return Ok(TriangulationReport {
            failures,
            all_elementary,
            all_primitive,
        });
    }

    for (index, s) in t.simplices().iter().enumerate() {
        if let Some(v) = s.vertices().iter().find(|v| !p.contains_dilated(v, 1).unwrap_or(false)) {
            failures.push(TriangulationFailure::SimplexOutside {
                index,
                vertex: v.clone(),
            });
        }
    }

    let d = p.dim();
    let factorial = (1..=d).fold(BigInt::one(), |acc, k| acc * k);
    let covered: BigInt = t.simplices().iter().map(LatticeSimplex::normalized_volume).sum();
    let covered = Rational::new(covered, factorial);
    let expected = p.volume()?;
    if covered != expected {
        failures.push(TriangulationFailure::VolumeMismatch {
            simplices: covered,
            polytope: expected,
        });
    }

    for (i, j) in (0..t.len()).tuple_combinations() {
        let (a, b) = (&t.simplices()[i], &t.simplices()[j]);
        if interiors_intersect(a, b) {
            failures.push(TriangulationFailure::InteriorsOverlap { first: i, second: j });
        }
        if !meet_in_common_face(a, b) {
            failures.push(TriangulationFailure::ImproperIntersection { first: i, second: j });
        }
    }

    Ok(TriangulationReport {
        failures,
        all_elementary,
        all_primitive,
    })
}

/// Columns `[v; 1]` for each vertex, negated when `negate`.
fn lifted_columns(s: &LatticeSimplex, negate: bool) -> Vec<Vec<Rational>> {
    s.vertices()
        .iter()
        .map(|v| {
            let mut col: Vec<Rational> = v
                .coords()
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect();
            col.push(Rational::one());
            if negate {
                col.iter_mut().for_each(|c| *c = -&*c);
            }
            col
        })
        .collect()
}

fn columns_to_rows(columns: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let height = columns[0].len();
    (0..height)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect()
}

/// Whether the interiors of two full-dimensional simplices meet.
///
/// Looks for `lambda, mu > 0` with `sum lambda_i [v_i; 1] = sum mu_j [w_j; 1]`;
/// by homogeneity `lambda, mu >= 1` is equivalent, and the shift
/// `lambda = 1 + lambda'` turns that into a standard-form LP.
pub fn interiors_intersect(a: &LatticeSimplex, b: &LatticeSimplex) -> bool {
    let mut columns = lifted_columns(a, false);
    columns.extend(lifted_columns(b, true));
    let rows = columns_to_rows(&columns);
    let rhs: Vec<Rational> = rows.iter().map(|r| -r.iter().sum::<Rational>()).collect();
    lp::nonnegative_solution(&rows, &rhs).is_some()
}

/// Whether `a ∩ b = conv(common vertices)`, so that the intersection is a
/// face of both (every vertex subset of a simplex spans a face).
///
/// The intersection is larger exactly when some point of it has a positive
/// barycentric weight, with respect to `a`, on a vertex of `a` that `b`
/// lacks. For each such vertex `v` this is an LP in the cone
/// `sum lambda_i [v_i; 1] = sum mu_j [w_j; 1]`, `lambda, mu >= 0`, with
/// `lambda_v >= 1`.
pub fn meet_in_common_face(a: &LatticeSimplex, b: &LatticeSimplex) -> bool {
    let mut columns = lifted_columns(a, false);
    columns.extend(lifted_columns(b, true));
    let rows = columns_to_rows(&columns);
    for (i, v) in a.vertices().iter().enumerate() {
        if b.vertices().contains(v) {
            continue;
        }
        let rhs: Vec<Rational> = rows.iter().map(|r| -&r[i]).collect();
        if lp::nonnegative_solution(&rows, &rhs).is_some() {
            return false;
        }
    }
    true
}

/// Limits for [`search_primitive_triangulation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of search nodes before giving up.
    pub node_budget: u64,
    /// Maximum number of integer points of the polytope.
    pub point_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 1_000_000,
            point_cap: 14,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A validated primitive triangulation.
    Found(Triangulation),
    /// The search space was exhausted: no primitive triangulation exists.
    Exhausted { nodes: u64 },
    /// The node budget ran out first; nothing is known.
    BudgetExceeded { nodes: u64 },
}

impl SearchOutcome {
    pub fn triangulation(&self) -> Option<&Triangulation> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Depth-first search for a primitive triangulation of `p` using only the
/// integer points of `p` as vertices.
///
/// The first simplex is one of the unimodular simplices at the
/// lexicographically smallest vertex of `p` (some simplex of any
/// triangulation has it as a vertex). The complex then grows across its
/// lexicographically smallest interior facet that has a simplex on one side
/// only; every candidate for the other side is tried in lexicographic order.
/// Because the dual graph of a triangulation is connected, exhausting these
/// branches proves that no primitive triangulation exists.
pub fn search_primitive_triangulation(p: &LatticePolytope, config: &SearchConfig) -> Result<SearchOutcome> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            dim: p.dim(),
            affine_dim: p.affine_dim(),
        });
    }
    let omega = p.integer_points(1)?;
    if omega.len() > config.point_cap {
        return Err(Error::ResourceCap {
            what: "primitive triangulation search",
            requested: format!("{} integer points", omega.len()),
            cap: config.point_cap as u64,
        });
    }
    let target = p.normalized_volume()?;
    let mut search = Search::new(p, omega.points(), config.node_budget)?;
    let target: usize = target
        .try_into()
        .map_err(|_| Error::Internal("normalized volume out of range".into()))?;

    let start = omega
        .points()
        .binary_search(&p.vertices()[0])
        .expect("vertices are integer points");
    let roots: Vec<usize> = (0..search.candidates.len())
        .filter(|&c| search.candidates[c].contains(&start))
        .collect();

    for root in roots {
        search.place(root);
        let found = search.extend(target);
        match found {
            Err(Budget) => return Ok(SearchOutcome::BudgetExceeded { nodes: search.nodes }),
            Ok(true) => {
                let mut chosen = search.chosen.clone();
                chosen.sort_unstable();
                let simplices = chosen
                    .iter()
                    .map(|&c| {
                        LatticeSimplex::new(
                            search.candidates[c].iter().map(|&i| omega.points()[i].clone()).collect(),
                        )
                    })
                    .collect::<Result<Vec<_>>>()?;
                let t = Triangulation::new(p.clone(), simplices)?;
                if !validate_triangulation(&t)?.is_primitive() {
                    return Err(Error::Internal("search produced an invalid triangulation".into()));
                }
                return Ok(SearchOutcome::Found(t));
            }
            Ok(false) => search.unplace(root),
        }
    }
    Ok(SearchOutcome::Exhausted { nodes: search.nodes })
}

struct Budget;

struct Search<'a> {
    points: &'a [LatticePoint],
    /// Unimodular simplices on the integer points, as sorted index lists.
    candidates: Vec<Vec<usize>>,
    /// Facet (sorted index list of `d` points) -> candidates containing it.
    by_facet: HashMap<Vec<usize>, Vec<usize>>,
    on_boundary: HashMap<Vec<usize>, bool>,
    compatible: HashMap<(usize, usize), bool>,
    simplices: Vec<LatticeSimplex>,
    chosen: Vec<usize>,
    /// Facet -> number of chosen simplices containing it.
    facet_use: BTreeMap<Vec<usize>, usize>,
    open: BTreeSet<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(p: &LatticePolytope, points: &'a [LatticePoint], budget: u64) -> Result<Self> {
        let d = p.dim();
        let facets = p.facets()?;
        let mut candidates = Vec::new();
        let mut simplices = Vec::new();
        for subset in (0..points.len()).combinations(d + 1) {
            let s = LatticeSimplex {
                vertices: subset.iter().map(|&i| points[i].clone()).collect(),
            };
            if s.normalized_volume().is_one() {
                candidates.push(subset);
                simplices.push(s);
            }
        }
        let mut by_facet: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        let mut on_boundary = HashMap::new();
        for (c, cand) in candidates.iter().enumerate() {
            for skip in 0..=d {
                let facet: Vec<usize> = cand
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &i)| i)
                    .collect();
                on_boundary.entry(facet.clone()).or_insert_with(|| {
                    facets
                        .iter()
                        .any(|h| facet.iter().all(|&i| h.is_tight(&points[i])))
                });
                by_facet.entry(facet).or_default().push(c);
            }
        }
        Ok(Search {
            points,
            candidates,
            by_facet,
            on_boundary,
            compatible: HashMap::new(),
            simplices,
            chosen: Vec::new(),
            facet_use: BTreeMap::new(),
            open: BTreeSet::new(),
            nodes: 0,
            budget,
        })
    }

    fn facets_of(&self, c: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        let cand = &self.candidates[c];
        (0..cand.len()).map(move |skip| {
            cand.iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, &i)| i)
                .collect()
        })
    }

    fn place(&mut self, c: usize) {
        self.chosen.push(c);
        let facets: Vec<Vec<usize>> = self.facets_of(c).collect();
        for f in facets {
            let uses = self.facet_use.entry(f.clone()).or_insert(0);
            *uses += 1;
            if *uses == 1 && !self.on_boundary[&f] {
                self.open.insert(f);
            } else {
                self.open.remove(&f);
            }
        }
    }

    fn unplace(&mut self, c: usize) {
        let popped = self.chosen.pop();
        debug_assert_eq!(popped, Some(c));
        let facets: Vec<Vec<usize>> = self.facets_of(c).collect();
        for f in facets {
            let uses = self.facet_use.get_mut(&f).expect("facet was placed");
            *uses -= 1;
            if *uses == 0 {
                self.facet_use.remove(&f);
                self.open.remove(&f);
            } else if *uses == 1 && !self.on_boundary[&f] {
                self.open.insert(f);
            }
        }
    }

    fn is_compatible(&mut self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        if let Some(&ok) = self.compatible.get(&key) {
            return ok;
        }
        let (sa, sb) = (&self.simplices[a], &self.simplices[b]);
        let ok = meet_in_common_face(sa, sb) && meet_in_common_face(sb, sa);
        self.compatible.insert(key, ok);
        ok
    }

    /// Sign of the oriented volume of `facet ∪ {x}`.
    fn side(&self, facet: &[usize], x: usize) -> Sign {
        let base = &self.points[facet[0]];
        let mut rows: Vec<Vec<BigInt>> = facet[1..]
            .iter()
            .map(|&i| (&self.points[i] - base).into_coords())
            .collect();
        rows.push((&self.points[x] - base).into_coords());
        linalg::determinant(&rows).sign()
    }

    fn extend(&mut self, target: usize) -> std::result::Result<bool, Budget> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Budget);
        }
        let Some(facet) = self.open.first().cloned() else {
            return Ok(self.chosen.len() == target);
        };
        if self.chosen.len() >= target {
            return Ok(false);
        }
        let owner = *self
            .chosen
            .iter()
            .find(|&&c| self.candidates[c].iter().filter(|i| facet.contains(i)).count() == facet.len())
            .expect("an open facet has an owner");
        let apex = |c: usize, s: &Self| -> usize {
            *s.candidates[c].iter().find(|i| !facet.contains(i)).unwrap()
        };
        let owner_side = self.side(&facet, apex(owner, self));
        let options: Vec<usize> = self.by_facet[&facet]
            .iter()
            .copied()
            .filter(|&c| c != owner && self.side(&facet, apex(c, self)) == -owner_side)
            .collect();
        'next: for c in options {
            for k in 0..self.chosen.len() {
                let other = self.chosen[k];
                if !self.is_compatible(c, other) {
                    continue 'next;
                }
            }
            self.place(c);
            if self.extend(target)? {
                return Ok(true);
            }
            self.unplace(c);
        }
        Ok(false)
    }
}
