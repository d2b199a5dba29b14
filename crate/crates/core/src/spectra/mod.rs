//! Exact weight-enumerator algebra over big integers and rationals.

mod affine;
mod gleason;
mod macwilliams;
mod params;
mod qr;
mod spectrum;
mod system;

pub use affine::{AffineForm, AffineSpectrum, AffineSpectrumFile, LinearSystem, Rational, SolutionSpace};
pub use gleason::{gleason_basis, gleason_fit, GleasonFit, GleasonMode};
pub use macwilliams::{macwilliams, macwilliams_with, KrawtchoukTable};
pub use params::{bound_parameters, lift_congruence, select_parameter, EtaInterval, ParameterCongruence};
pub use qr::{extend_spectrum_qr, pless_fill};
pub use spectrum::{SpectrumFile, SupportSpectrum, WeightSpectrum};
pub use system::{build_system, doubly_even_support};
