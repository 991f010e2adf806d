//! Absolute summability indices as partial-sum ledgers, and the factor
//! hypotheses graded on finite prefixes.

mod hypotheses;
mod indices;
mod ledger;

pub use hypotheses::{check_hypotheses, check_lemma, FactorScenario, HypothesisLedger, Variant};
pub use indices::{factored_series, index_cesaro, index_matrix, index_weighted, CesaroOneMean};
pub use ledger::SummabilityLedger;
