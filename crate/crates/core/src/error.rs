use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid: {0}")]
    Grid(String),

    #[error("pump: {0}")]
    Pump(String),

    #[error("parameters: {0}")]
    Params(String),

    #[error("solver: {0}")]
    Solver(String),

    #[error("phase: {0}")]
    Phase(String),

    #[error("measurement: {0}")]
    Measurement(String),

    #[error("noise: {0}")]
    Noise(String),

    #[error("scenario: {0}")]
    Scenario(String),
}
