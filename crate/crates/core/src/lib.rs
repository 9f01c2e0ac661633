//! Exact, exhaustive checks of lifting theory and its categorical companions
//! on finite structures.
//!
//! The crate is organised bottom-up:
//!
//! - [`measure_space`]: finite complete measure spaces with rational weights.
//! - [`measure_algebra`]: the quotient by null sets, set transforms, lower
//!   densities and liftings.
//! - [`filter_calculus`]: filters on finite ground sets, limits along filters
//!   and tail filters of directed families.
//! - [`lebesgue_diff`]: the Lebesgue transform, filter-kernels and the two-way
//!   passage between liftings and differentiating kernels.
//! - [`partial_magma`]: partial operation tables and their classification.
//! - [`category_kernel`]: finite categories as regular partial magmas, twin
//!   categories and natural transformations as homomorphisms of functors.
//! - [`yoneda_finite`]: natural transformations between hom-functors over
//!   finite discrete probe spaces and their ultrafilter kernels.
//!
//! Everything is exact: weights and function values are rationals and every
//! law is checked by enumeration rather than sampling, except where a test
//! explicitly draws seeded random functions.

pub mod category_kernel;
pub mod error;
pub mod filter_calculus;
pub mod lebesgue_diff;
pub mod measure_algebra;
pub mod measure_space;
pub mod partial_magma;
pub mod yoneda_finite;

pub use error::{Error, Result};
pub use measure_space::{MSet, MeasureSpace, Rational};
