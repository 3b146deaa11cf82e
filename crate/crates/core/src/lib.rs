//! Fair k-center clustering under per-cluster group proportions and
//! per-color center quotas.

pub mod bounds;
pub mod generators;
pub mod instance;
pub mod lp;
pub mod metrics;
pub mod solution;
pub mod divide;
pub mod flow;
pub mod solvers;
pub mod audit;
pub mod oracle;
pub mod harness;
