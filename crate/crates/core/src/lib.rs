//! Finite-volume solver for the one-dimensional Saint-Venant system over a
//! continuous piecewise-linear bottom.
//!
//! The scheme is the second-order semi-discrete central-upwind method with a
//! wet/dry reconstruction that keeps the water height nonnegative and keeps
//! combined "lake at rest" / "dry lake" states exactly steady. Outgoing mass
//! fluxes of cells that would run empty during a step are cut at the
//! cell's draining time, so the global CFL step is never reduced.

pub mod analysis;
pub mod boundary;
pub mod error;
pub mod evolution;
pub mod friction;
pub mod grid;
pub mod numerics;
pub mod reconstruction;
pub mod scenarios;

pub use boundary::{Boundary, BoundaryCondition};
pub use error::{Error, Result};
pub use evolution::{RunOptions, RunSummary, Solver, StepDiagnostics, StepView};
pub use grid::{Bathymetry, CellState, Grid, SchemeParams};
pub use reconstruction::Variant;
pub use scenarios::Scenario;
