//! Experiments built on the arithmetic layers: ideal chains, ring probes,
//! lemma suites and the worked example scenarios.

pub mod chain;
pub mod lemmas;
pub mod probes;
pub mod scenario;

pub use chain::{chain_explore, ChainReport, ChainStep};
pub use lemmas::{jordan_rigidity_search, rigid_lemma_suite, zero_divisor_search, PropertyReport};
pub use probes::{
    annihilator_chain, archimedean_probe, bounded_inverse_search,
    factorization_sequence_check_monoid, factorization_sequence_check_ring, ideal_closure,
    intersection_powers, leading_coeff_ideal_sample, AnnihilatorChainReport, ArchimedeanReport,
    FactorizationVerdict,
};
pub use scenario::{run_scenario, Claim, ScenarioParams, ScenarioReport, SCENARIOS};
