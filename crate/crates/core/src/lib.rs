//! Exact computations on lattice polytopes and word balls.
//!
//! The crate compares the integer points of a dilated lattice polytope,
//! `(nP) ∩ Z^d`, with the `n`-fold Minkowski sum of its integer points,
//! `n*(P ∩ Z^d)`, and compares the `Ω`-boundary of a word ball with the
//! layer `Ω_n \ Ω_{n-1}` in finitely generated groups. All arithmetic is
//! exact; there is no floating point anywhere.
//!
//! - [`polytope`]: hulls, facets, membership, integer points, volume.
//! - [`minkowski`]: Minkowski powers, the equality check, decompositions
//!   along primitive triangulations, and lattice generation.
//! - [`triangulation`]: unimodularity, simplex classification, validation
//!   of triangulations and search for primitive ones.
//! - [`group`]: word balls, `Ω`-interior and `Ω`-boundary.
//! - [`catalog`]: the named polytopes and generator sets used throughout.
//! - [`io`]: JSON file formats.

pub mod catalog;
pub mod error;
pub mod group;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod minkowski;
pub mod point;
pub mod polytope;
pub mod triangulation;

pub use error::{Error, Result};
pub use group::{ElementSet, GroupElement, GroupKind, GroupPresentation, Matrix2};
pub use minkowski::{Decomposition, EqualityReport};
pub use point::{LatticePoint, PointSet, Rational, RationalPoint};
pub use polytope::{Halfspace, LatticePolytope};
pub use triangulation::{IntegerMatrix, LatticeSimplex, SimplexClass, Triangulation};
