//! Exact arithmetic in `Q_p` at finite absolute precision.

mod maps;
mod number;

pub use maps::{phi, phi_inv, psi_phase, sqrt_unit};
pub(crate) use number::pow_u64;
pub use number::{max_relative_precision, AbsValue, PadicNumber};
