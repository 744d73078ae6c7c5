use thiserror::Error;

/// Failures reported by the numerical routines and the front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument x = {x} outside the supported domain {domain}")]
    Domain { x: f64, domain: &'static str },

    #[error("order {m} outside the supported range |m| <= {max}")]
    OrderRange { m: i64, max: i32 },

    #[error("count {count} outside the supported range 1..={max}")]
    CountRange { count: usize, max: usize },

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("invalid mode index: {0}")]
    ModeIndex(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point outside the cavity: {0}")]
    OutsideCavity(String),

    #[error("root bracketing failed: {0}")]
    Bracket(String),

    #[error("result overflows double precision: {0}")]
    Overflow(String),

    #[error("ill-conditioned radial solution: {0}")]
    Conditioning(String),

    #[error("quadrature did not converge: achieved {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("spectrum would exceed {limit} modes")]
    TooManyModes { limit: usize },
}

impl Error {
    /// True for errors caused by invalid input rather than by a numerical failure.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Domain { .. }
                | Error::OrderRange { .. }
                | Error::CountRange { .. }
                | Error::Geometry(_)
                | Error::ModeIndex(_)
                | Error::InvalidParameter(_)
                | Error::OutsideCavity(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
