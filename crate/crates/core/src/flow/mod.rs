//! Integral flows with arc lower bounds and the flow-based rounding of
//! fractional fair assignments.

mod network;
mod rounding;

pub use network::{feasible_integral_flow, Arc, BoundedFlowNetwork};
pub use rounding::{max_flow_gf, rounding_network, snap, RoundingNetwork, SNAP_TOL};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("malformed network: {0}")]
    Malformed(String),
    #[error("rounding network has no flow of value {required}; the fractional input is inconsistent")]
    InternalInfeasible { required: u64 },
}
