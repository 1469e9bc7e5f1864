use thiserror::Error;

/// Errors produced by the analytic routes, the Fock oracle and the CLI.
#[derive(Debug, Error)]
pub enum KerrError {
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error(
        "series did not converge: last shell contributes {achieved:.3e} \
         (tolerance {tol:.1e}) at truncation cap {cap}"
    )]
    Truncation { achieved: f64, tol: f64, cap: usize },

    #[error("at grid point ({x}, {y}): {source}")]
    GridPoint {
        x: f64,
        y: f64,
        #[source]
        source: Box<KerrError>,
    },

    #[error("chi*t = {chi_t} is not on the cat lattice (m' + 1/2)*pi")]
    NotCatTime { chi_t: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl KerrError {
    pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Self {
        Self::Domain { func, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, KerrError>;
