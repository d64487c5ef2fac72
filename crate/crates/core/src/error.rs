use thiserror::Error;

/// Errors raised by the solvers and the potential evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("position {x} lies outside the well [-pi, pi]")]
    Domain { x: f64 },

    #[error("energy {energy} is at or below the potential minimum {minimum}")]
    BelowMinimum { energy: f64, minimum: f64 },

    #[error("Numerov denominator vanished (h = {h}, g = {g}); step too large")]
    SingularStep { h: f64, g: f64 },

    #[error("no sign change of the shooting objective on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("found {found} of {requested} levels below energy {max_energy}")]
    TooFewLevels {
        found: usize,
        requested: usize,
        max_energy: f64,
    },

    #[error("cannot normalize an identically zero function")]
    ZeroFunction,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no turning point for energy {energy} inside the search region")]
    NoTurningPoint { energy: f64 },

    #[error("{method} has no solution for level {level}")]
    Unsupported { method: &'static str, level: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
