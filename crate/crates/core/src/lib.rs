//! Exact integral cohomology and Chern classes of smooth complete toric
//! varieties, fibered toric varieties, toric bundles over presented bases and
//! characteristic pairs.
//!
//! All arithmetic is over arbitrary-precision integers.

pub mod bundle;
pub mod chern;
pub mod cohomology;
pub mod corpus;
pub mod equivariant;
pub mod error;
pub mod fan;
pub mod io;
pub mod lattice;
pub mod poly;
pub mod twist;

pub use bundle::{build_bundle_ring, total_chern_general, BasePresentation, BundleRing, PresentedBase, TwistingClasses};
pub use chern::{chern_numbers, compare, total_chern_intrinsic, ChernNumber, ComparisonReport, FiberedToric};
pub use cohomology::{build_ring, CohomologyClass, GradedQuotientRing};
pub use equivariant::{masuda_check, MasudaReport, WeightPolynomial};
pub use error::{Error, Result};
pub use fan::{validate, Fan, ValidationReport};
pub use lattice::{IntMatrix, IntVector};
pub use poly::Poly;
pub use twist::{twisted_fan, twisted_pair, CharacteristicPair, PiecewiseLinearMap, TwistDecomposition};

pub use num_bigint::BigInt;
