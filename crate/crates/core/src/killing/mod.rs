//! Killing tensors and Killing vectors of Euclidean 3-space.

pub mod components;
pub mod dtt;
pub mod generators;
pub mod isometry;
pub mod lie;
pub mod nijenhuis;
pub mod params;

pub use components::{components_at, kt_components, kv_at, kv_components};
pub use dtt::dtt_dimension;
pub use generators::{generator_matrix, GeneratorMatrix};
pub use isometry::{apply_isometry, apply_isometry_kv, cayley_rotation, Isometry};
pub use lie::{lie_derivative, symmetry_basis};
pub use nijenhuis::{char_discriminant, has_distinct_eigenvalues, has_normal_eigenvectors, nijenhuis};
pub use params::{KtParams, KvParams, PARAM_NAMES};
