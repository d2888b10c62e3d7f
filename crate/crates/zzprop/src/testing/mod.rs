//! Query oracles and property testers for bounded-degree graphs.

mod distance;
mod oracle;
mod sample;
mod testers;

pub use distance::{brute_distance, normalized, MAX_BRUTE_N};
pub use oracle::{GraphOracle, StructureOracle};
pub use sample::{estimate_frequencies, explore_all, explore_ball, sample_rng, sample_size};
pub use testers::{
    clique_condition, framework_tester, freeness_case, freeness_params, freeness_tester, is_tau_free,
    is_tau_regular, maxcl, monte_carlo, regularity_m, regularity_params, regularity_tester, Forbidden,
    FrameworkParams, FreenessCase, RejectCause, TesterVerdict, TrialSummary, MAX_SAMPLES,
};
