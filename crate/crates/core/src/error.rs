use thiserror::Error;

/// Errors raised by the numerical kernels and the outage pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in `{field}`: {reason}")]
    Domain { field: &'static str, reason: String },

    #[error("pole of the gamma function at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("regime alpha*mu == phi is not supported (alpha*mu = {alpha_mu}, phi = {phi})")]
    UnsupportedRegime { alpha_mu: f64, phi: f64 },

    #[error("{what} did not converge (achieved tolerance {achieved:e}){diagnostics}")]
    Numeric {
        what: &'static str,
        achieved: f64,
        diagnostics: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn numeric(what: &'static str, achieved: f64) -> Self {
        Error::Numeric {
            what,
            achieved,
            diagnostics: String::new(),
        }
    }
}

/// Rejects non-finite or non-positive values.
pub(crate) fn require_positive(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(field, format!("must be finite and > 0, got {value}")))
    }
}
