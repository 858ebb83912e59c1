use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("negative imaginary frequency {0} rad/s")]
    NegativeFrequency(f64),

    #[error("zero frequency is a limit point here; use the zero-frequency coefficients instead")]
    ZeroFrequency,

    #[error("transverse wavenumber y must be positive")]
    ZeroWavenumber,

    #[error("degenerate factorization: {which} is exactly 1; perturb the input by one ulp")]
    DegenerateFactorization { which: &'static str },

    #[error("temperature must be positive for {0}")]
    ZeroTemperature(&'static str),

    #[error("{what} did not converge: best estimate {estimate:e} with error {error:e}")]
    NonConvergence {
        what: &'static str,
        estimate: f64,
        error: f64,
    },

    #[error("temperature {temperature} K is outside the low-temperature range (must be below {limit} K)")]
    OutsideLowTemperatureRange { temperature: f64, limit: f64 },

    #[error("material file line {line}: {message}")]
    MaterialFile { line: usize, message: String },

    #[error("material `{name}` is missing `{field}`")]
    MissingMaterialField { name: String, field: &'static str },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub fn is_non_convergence(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}
