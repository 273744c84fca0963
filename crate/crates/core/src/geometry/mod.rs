//! Euclidean reflection-group geometry for affine-type systems.
//!
//! Everything here is double precision and only ever checks statements whose
//! combinatorial side (lengths, normal forms, membership) comes from the exact
//! layer.

mod gallery;
mod lemmas;
mod limits;
pub mod polytope;
mod realization;
mod sweep;

use nalgebra::DVector;

use crate::error::CoxeterError;
use crate::parabolic::ParabolicError;
use crate::word::GeneratorSubset;

pub use gallery::{
    check_geodesic_theorem, check_geodesic_theorem_with_tol, crossing_word, hausdorff, CrossingResult, Gallery,
    HausdorffReport, HausdorffValue, CROSSING_RETRIES, DEGENERACY_TOL, GEODESIC_TOL,
};
pub use lemmas::{
    chamber_intersection, check_convexity, check_halfspace_rep, check_lemma0, check_lemma1, check_lemma32,
    in_parabolic_region, ChamberIntersection, ConvexityReport, HalfspaceReport, Lemma0Outcome, Lemma1Outcome,
    Lemma32Outcome, BOUNDARY_TOL,
};
pub use limits::{
    limit_directions, limit_directions_with_probes, max_angular_gap, power_direction, LimitDirections,
    DIRECTION_CLUSTER_TOL,
};
pub use polytope::{HalfSpace, Polytope, PolytopeSummary};
pub use realization::{build_realization, Affine, EuclideanRealization, Wall, FOLD_ITERATION_CAP};
pub use sweep::{
    sweep_convexity, sweep_geodesic, sweep_geodesic_with_tol, sweep_halfspace, sweep_lemma0, sweep_lemma1,
    sweep_lemma31, sweep_lemma32, SweepReport,
};

/// A point of the ambient space.
pub type Point = DVector<f64>;

/// Side-of-wall tolerance.
pub const SIDE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("component {component} is not of affine type: {reason}")]
    NotAffineType { component: GeneratorSubset, reason: String },
    #[error("folding did not converge after {iterations} reflections")]
    NonConvergence { iterations: usize },
    #[error("sample point lies on the wall of generator {s}")]
    DegenerateSample { s: usize },
    #[error("segment stays degenerate after {attempts} basepoint perturbations")]
    DegenerateCrossing { attempts: usize },
    #[error("expected a 2-dimensional realization, got dimension {dim}")]
    DimensionNotTwo { dim: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Parabolic(#[from] ParabolicError),
}
