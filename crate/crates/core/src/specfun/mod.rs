//! Special functions: the generalized exponential integral `E_p`, the upper
//! incomplete gamma function, generalized harmonic numbers and ζ.

mod expint;
mod gamma;
mod harmonic;
mod root;

pub use expint::{expint, expint_inv, expint_series_origin, ws_fraction, ws_fraction_inv, ExpIntOrder};
pub use gamma::{gamma, ln_gamma, upper_gamma};
pub use harmonic::{harmonic, harmonic_approx, zeta, HarmonicSpec};
pub use root::RootBracket;
