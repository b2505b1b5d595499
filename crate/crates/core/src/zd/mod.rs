//! Annihilators, zero-divisor classes and the graphs built from them.

mod ann;
mod classes;
mod classic;
mod egraph;
mod linalg;
mod primes;

pub use ann::{annihilator, annihilator_via, choose_route, AnnRoute, AnnSet, Fingerprint};
pub use classes::{zero_divisor_classes, ZdClass, ZdStructure};
pub use classic::{
    cover_equality_check, cover_report as cover_report_for, gamma, weighted_cover, CoverReport,
    CoverWitness,
};
pub use egraph::{
    gamma_e, gamma_e_with, to_dot, ConsistencyReport, EGraph, EGraphJson, GammaOptions, VertexJson,
    EXHAUSTIVE_CONSISTENCY_LIMIT, SAMPLED_CONSISTENCY_PAIRS,
};
pub use primes::{associated_primes, associated_primes_by_pair_scan, maximal_in_f};
