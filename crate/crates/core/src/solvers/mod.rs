//! Color-blind, fair-assignment, quota-aware and post-processing solvers.

mod alg_ds;
mod assignment_gf;
mod gonzalez;
mod pipelines;

pub use alg_ds::alg_ds;
pub use assignment_gf::{alg_gf, assignment_gf, FairAssignment};
pub use gonzalez::gonzalez;
pub use pipelines::{ds_to_gfds, gf_to_gfds, PostProcessed};

use crate::bounds::BoundsError;
use crate::divide::DivideError;
use crate::flow::FlowError;
use crate::lp::LpError;
use crate::solution::SolutionError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("k={k} is outside 1..={n}")]
    BadK { k: usize, n: usize },
    #[error("no fair assignment exists even at the largest radius")]
    Infeasible,
    #[error("center quotas cannot be met: {0}")]
    InfeasibleQuota(String),
    #[error("no cluster offers another center of color {color}")]
    QuotaUnreachable { color: usize },
    #[error("cluster of center {center} has no point of a color with quota room")]
    MissingColorInCluster { center: usize },
    #[error("{used} centers exceed the budget k={k}")]
    BudgetExceeded { used: usize, k: usize },
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Divide(#[from] DivideError),
    #[error(transparent)]
    Solution(#[from] SolutionError),
}

impl SolverError {
    /// True for verdicts about the instance rather than failures of the code.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            SolverError::Infeasible
                | SolverError::InfeasibleQuota(_)
                | SolverError::QuotaUnreachable { .. }
                | SolverError::MissingColorInCluster { .. }
                | SolverError::Bounds(_)
        )
    }
}
