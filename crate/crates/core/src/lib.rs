//! Exact computation of mixed multiplier ideals of a tuple of ideals on a
//! surface with a rational singularity, starting from a common
//! log-resolution described by its weighted dual graph.
//!
//! The pipeline is:
//!
//! * [`graph`] validates the dual graph and the ideal divisors `F_1..F_r`,
//!   and derives the relative canonical divisor and the excesses;
//! * [`divisor`] implements the unloading procedure and evaluates the
//!   mixed multiplier ideal `J(a^λ)` as the antinef closure of
//!   `⌊λ_1 F_1 + … + λ_r F_r − K⌋`;
//! * [`region`] turns a point into the rational polytope of points whose
//!   ideal contains `J(a^λ)`;
//! * [`enumerate`] walks the constancy regions of the positive quadrant;
//! * [`jumping`] computes minimal jumping divisors and checks their
//!   structural properties.
//!
//! All arithmetic is exact; there is no floating point anywhere in the
//! computation paths.

pub mod divisor;
pub mod enumerate;
mod error;
pub mod graph;
pub mod jumping;
pub mod plane;
pub mod rational;
pub mod region;
pub mod report;

pub use divisor::{AntinefDivisor, Divisor, IdealRelation, IntDivisor, OrthantPoint};
pub use enumerate::{CFacet, ConstancyRecord, Enumeration};
pub use error::{Error, Result};
pub use graph::{CanonicalDivisor, DualGraph, IdealDivisorSet, RawInput, Resolution};
pub use rational::Rational;
pub use region::{Halfspace, RegionPolytope};
