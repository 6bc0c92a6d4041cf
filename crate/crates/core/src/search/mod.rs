//! Exact daisy Ramsey numbers for tiny parameters, and resampling search
//! for daisy-free colorings.

pub mod exact;
pub mod resample;

pub use exact::{
    exact_ramsey, Budget, ExactOptions, GroundOutcome, Instance, Proof, RamseyQuery, SearchOutcome,
    Variant, Verdict,
};
pub use resample::{
    daisy_event_count, dependency_degree, moser_tardos, ResampleOutcome, ResampleSummary,
};
