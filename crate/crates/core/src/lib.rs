//! p-adic Fuchs quantization on `L²(U_n)` and the unitary dual 2-cocycle
//! `F` on `X_n = U_n ⋉ Γ_n`, computed exactly on finite grids.
//!
//! All p-adic arithmetic is exact modulo `p^N` and all characters are
//! carried as exact [`Phase`]s until the last step, so floating point
//! only enters through matrix products.

pub mod cocycle;
pub mod error;
pub mod field;
pub mod fourier;
pub mod function;
pub mod grid;
pub mod linalg;
pub mod padic;
pub mod phase;
pub mod quantization;
pub mod verify;

pub use cocycle::{
    build_twist, cocycle_residual, induced_grid_permutation, unitarity_residual, xi_forward,
    xi_inverse, xi_jacobian_abs, Budget, TwistMethod, TwistOperator, XiPoint,
};
pub use error::{Error, Result};
pub use field::{LocalField, Qp};
pub use fourier::{fourier_gamma, fourier_gamma_inv, GammaFourier};
pub use function::{haar_integral, Domain, LcFunction};
pub use grid::{
    xn_inv, xn_mul, BallClass, GammaClass, Level, UnitClass, XnElement, XnGrid, DEFAULT_GUARD,
};
pub use linalg::OperatorMatrix;
pub use padic::{phi, phi_inv, psi_phase, sqrt_unit, AbsValue, PadicNumber};
pub use phase::Phase;
pub use quantization::{
    dequantize, omega_point, quantize, rep_pi, star_product, symmetry, GnPoint, Quantizer,
    StarMethod,
};
pub use verify::{
    all_passed, emit_report, parse_reports, run_suite, CheckReport, OutputFormat, RunConfig,
    Status, Suite,
};

pub use num_complex::Complex64;
