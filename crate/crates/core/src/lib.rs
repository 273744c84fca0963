//! Coxeter-system combinatorics and Euclidean reflection-group geometry.
//!
//! The combinatorial layer ([`system`], [`element`], [`enumerate`], [`parabolic`])
//! is exact: lengths, normal forms and descents never depend on floating point
//! for orders in {2, 3, 4, 5, 6, ∞}. The [`geometry`] layer realizes affine-type
//! systems on Euclidean space and checks chamber, wall and gallery statements
//! numerically against the combinatorics.

pub mod braid;
pub mod element;
pub mod enumerate;
pub mod error;
pub mod geometry;
pub mod parabolic;
pub mod ring;
pub mod system;
pub mod word;

pub use element::{normal_form, Element, ElementOrder, Side};
pub use enumerate::{ball, ball_with_cap, growth_series, subgroup_ball, subgroup_size, SubgroupSize};
pub use error::CoxeterError;
pub use system::{named, CoxeterSystem, Order, DEFAULT_BALL_CAP};
pub use word::{GeneratorSubset, Word};
