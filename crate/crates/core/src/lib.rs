//! Outage analysis of HARQ-aided terahertz links under joint α-μ fading and
//! stochastic antenna misalignment.
//!
//! * [`channel`]: path gain and pointing-error parameters.
//! * [`fading`]: density, distribution and sampler of the composite envelope.
//! * [`special`]: incomplete gamma, complex log-gamma, Mellin–Barnes and
//!   Bromwich kernels.
//! * [`outage`]: exact, asymptotic and diversity results for Type-I HARQ and
//!   chase combining, plus a grid-convolution oracle.
//! * [`montecarlo`]: seeded, stream-partitioned simulation.
//! * [`cli`]: sweep driver behind the `thz-harq` binary.

pub mod channel;
pub mod cli;
pub mod error;
pub mod exec;
pub mod fading;
pub mod montecarlo;
pub mod outage;
pub mod special;

pub use channel::{path_gain, pointing_params, MisalignmentGeometry, PointingParams, ThzLinkGeometry};
pub use error::{Error, Result};
pub use exec::Executor;
pub use fading::{FadingPointingParams, Regime};
pub use outage::{HarqConfig, Scheme};
