//! Numeric kernels: gamma-family functions, complex log-gamma, adaptive
//! quadrature, the Mellin–Barnes contour integral and Bromwich inversion.

mod bromwich;
mod complex_gamma;
mod foxh;
mod gamma;
pub mod quad;

pub use bromwich::{bromwich_from_values, bromwich_invert, bromwich_invert_with, BromwichConfig, Inversion};
pub use complex_gamma::log_gamma_complex;
pub use foxh::{foxh, foxh_two_residues, MellinBarnesSpec, NODE_CAP};
pub use gamma::{erf, gamma, ln_gamma, ln_upper_gamma, lower_gamma_regularized, upper_gamma};
