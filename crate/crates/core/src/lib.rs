//! Weighted analytic function spaces on horizontal strips.
//!
//! The crate computes with weight functions and weight sequences (growth
//! conditions, relations, conjugates), builds zero-free analytic minorants on
//! strips from Poisson integrals, represents functionals by Cauchy transforms
//! and pairs them with test functions along contours, and evaluates Fourier,
//! Laplace and almost-analytic extension formulas with their bounds.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod almostanalytic;
pub mod error;
pub mod quad;
pub mod reps;
pub mod sequences;
pub mod spaces;
pub(crate) mod spec;
pub mod stripharmonic;
pub mod transforms;
pub mod verdict;
pub mod weights;

pub use error::{Error, ErrorKind, Result};
pub use num_complex::Complex64;
pub use quad::{Domain, Envelope, Estimate, QuadConfig, Rect};
pub use sequences::{Nontriviality, SeqCondition, WeightSequence};
pub use spec::parse_complex;
pub use verdict::{ConditionVerdict, GridConfig, Relation, RelationSet, Status};
pub use weights::{check_condition, compare_weights, AsymptoticTags, Condition, Weight, WeightKind};
pub use stripharmonic::{build_minorant, AnalyticMinorant, MinorantMode, Strip};
pub use spaces::{Flavor, SpaceParams, TestFunction};
pub use reps::{AnalyticRep, ContourSpec, Functional};
pub use transforms::{K1Norms, LaplaceBoundSpec, LaplaceCandidate, LaplaceRegion, Spectrum};
pub use almostanalytic::{build_extension, AlmostAnalyticExt, HalfPlaneFn, HalfPlaneGrowth};
