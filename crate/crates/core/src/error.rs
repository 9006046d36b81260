use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("non-finite value in {quantity} at cell {cell} (t = {time})")]
    NonFinite {
        quantity: &'static str,
        cell: usize,
        time: f64,
    },
    #[error("negative water height {depth:e} at cell {cell} (t = {time})")]
    Positivity { cell: usize, depth: f64, time: f64 },
    #[error("time step {dt:e} fell below the floor {floor:e} at t = {time}")]
    StepUnderflow { dt: f64, floor: f64, time: f64 },
    #[error("incompatible grids: {0}")]
    IncompatibleGrids(String),
}

pub type Result<T> = std::result::Result<T, Error>;
