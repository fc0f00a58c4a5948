//! Canonical forms, essential parameters and separable charts.

pub mod catalog;
pub mod charts;
pub mod eig;
pub mod normal;

pub use catalog::{canonical_web_tensor, family_parameters};
pub use charts::{chart_map, chart_pushforward_check};
pub use eig::symmetric_eig3;
pub use normal::{
    canonical_chart, canonical_chart_of_ckt, family_residual, to_canonical, EssentialParams, SeparableChart,
};
