//! Locating and identifying the ε-values at which the recurrence jumps.

mod bisect;
mod endpoint;
mod identify;
mod lattice;
mod partition;
mod reconstruct;
mod sweep;

use num_bigint::BigInt;
use thiserror::Error;

use crate::engine::EngineError;

pub use bisect::bisect_jump;
pub use endpoint::{verify_endpoint, EndpointReport, Side};
pub use identify::{
    identify_halfint_sqrt2, min_poly_deg2, HalfIntIdentifier, Identified, Identifier, IdentifierRegistry,
    MinPolyIdentifier, QuadPoly,
};
pub use partition::{validate_partition, PartitionIssue, PartitionReport};
pub use reconstruct::{reconstruct_table, DiscoveredRow};
pub use sweep::{jump_profile, sweep, StepSegment, SweepCell, DEFAULT_CELL_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscoveryError {
    #[error("cell budget {budget} exceeded at depth {depth_reached}; narrow the domain")]
    Budget { budget: usize, depth_reached: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("jump not bracketed: v_{n} is {at_lo} at lo and {at_hi} at hi, target {target}")]
    Bracket {
        n: usize,
        target: BigInt,
        at_lo: BigInt,
        at_hi: BigInt,
    },
    #[error("identification failed: {0}")]
    Identification(String),
    #[error("enclosure too wide for coefficient bound {bound}; raise the precision")]
    TooWide { bound: BigInt },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}
