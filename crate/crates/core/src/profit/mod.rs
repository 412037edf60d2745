//! Bipartite influence model and its expected-profit objective.

mod generate;
mod model;
mod montecarlo;
mod oracle;

pub use generate::GeneratorParams;
pub use model::{
    parse_instance, parse_strategy, serialize_instance, BipartiteInstance, SourceNode,
    StrategyDocument,
};
pub use montecarlo::{monte_carlo_spread, SpreadEstimate};
pub use oracle::ProfitOracle;

#[cfg(test)]
pub(crate) use model::fixtures;
