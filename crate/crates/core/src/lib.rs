//! Exact arithmetic in ℚ(√2), certified floors for transcendental offsets,
//! and tools for floor recurrences that emit binary digits of quadratic
//! irrationals.

pub mod discovery;
pub mod engine;
pub mod exact;
pub mod reals;
pub mod strategy;

pub use exact::{BigRat, QSqrt2};
pub use strategy::{FloorRegistry, FloorStrategy};
