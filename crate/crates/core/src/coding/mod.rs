//! Error-probability bounds for binary linear block codes under ML decoding
//! over memoryless binary-input output-symmetric channels.
//!
//! The Rényi-divergence bound compares the normalized distance spectrum
//! `P_N` of a code against the binomial spectrum `Q_N` of the fully random
//! ensemble and trades a rate penalty `D_s(P_N‖Q_N)/N` against a shrunken
//! `ρ` range. Fixing `r = 1` recovers the Shulman–Feder bound.

pub mod bound;
pub mod channel;
pub mod spectrum;

pub use bound::{
    partitioned_bound, renyi_bound, renyi_bound_at_r, shulman_feder_bound,
    union_bhattacharyya_bound, BoundMethod, BoundReport, Partition,
};
pub use channel::{
    bhattacharyya_parameter, gallager_e0, random_coding_exponent, ChannelModel, ExponentPoint,
};
pub use spectrum::{
    binomial_pmf, parse_generator, spectrum_from_generator, spectrum_pmf, DistanceSpectrum,
    SpectrumPmf,
};
