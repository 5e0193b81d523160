//! Sato-Tate groups: exact moment sequences of the trace of Frobenius
//! under Haar measure, trace measures, eigenangle samplers, and the
//! catalog of groups arising for abelian varieties of dimension up to 3.

mod catalog;
mod measure;
mod moments;
mod quadrature;
mod sample;
mod walks;

pub use catalog::{catalog_group, catalog_names, GroupSpec, CATALOG_MOMENT_DEPTH};
pub use measure::{theoretical_trace_histogram, TraceMeasure1D};
pub use moments::{
    convolve_moments, moment_sequence_f64, scale_moments, su2_moments, u1_moments, usp4_closed_form,
    MomentSequence,
};
pub use quadrature::{quadrature_moments, QuadratureTarget};
pub use sample::{sample_eigenangles, sample_traces, SamplerKind};
pub use walks::{walk_moments_usp, WALK_MAX_GENUS, WALK_MAX_MOMENT};
