//! The unitary dual 2-cocycle `F` on `X_n × X_n`.
//!
//! `F = q^{2n} ∫ Ψ(φ(a₁)t₂ − φ(a₂)t₁) λ_{[g₁]⁻¹} ⊗ λ_{[g₂]⁻¹} d[g₁] d[g₂]`
//! is built either directly from its coefficient function or as
//! `(I⊗ℱ⁻¹⊗I⊗ℱ⁻¹) T_Ξ (I⊗ℱ⊗I⊗ℱ)`, where `T_Ξ f = f∘Ξ` and
//! `Ξ(a₁,x₁,a₂,x₂) = (φ⁻¹(a₂⁻¹x₂)a₁, x₁, φ⁻¹(−a₁⁻¹x₁)a₂, x₂)`.

use std::sync::OnceLock;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fourier::{normalized_fourier_matrix, GammaFourier};
use crate::grid::{BallClass, GammaClass, Level, UnitClass, XnGrid};
use crate::linalg::OperatorMatrix;
use crate::padic::{phi, phi_inv, pow_u64, psi_phase, sqrt_unit, AbsValue, PadicNumber};
use crate::phase::Phase;

/// A point `(a₁, x₁, a₂, x₂)` of `U_n × p^nZ_p × U_n × p^nZ_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiPoint {
    pub a1: PadicNumber,
    pub x1: PadicNumber,
    pub a2: PadicNumber,
    pub x2: PadicNumber,
}

impl XiPoint {
    pub fn new(a1: PadicNumber, x1: PadicNumber, a2: PadicNumber, x2: PadicNumber) -> Self {
        XiPoint { a1, x1, a2, x2 }
    }

    pub fn validate(&self, n: u32) -> Result<()> {
        let n = n as i64;
        for (name, a) in [("a1", &self.a1), ("a2", &self.a2)] {
            if !a.in_principal_units(n) {
                return Err(Error::Domain(format!("{name} = {a} is not in U_{n}")));
            }
        }
        for (name, x) in [("x1", &self.x1), ("x2", &self.x2)] {
            if !x.is_zero() && x.valuation() < n {
                return Err(Error::Domain(format!("{name} = {x} is not in p^{n} Z_p")));
            }
        }
        Ok(())
    }

    /// A uniformly random point known modulo `p^precision`.
    pub fn random<R: Rng + ?Sized>(p: u64, n: u32, precision: i64, rng: &mut R) -> Self {
        let n = n as i64;
        let span = pow_u64(p, precision - n);
        let mut draw =
            || PadicNumber::from_residue(p, 0, rng.gen_range(0..span), precision - n).shift(n);
        let one = PadicNumber::one(p, precision);
        let (u1, x1, u2, x2) = (draw(), draw(), draw(), draw());
        XiPoint::new(one + u1, x1, one + u2, x2)
    }

    /// The centre of grid cell `cell` (see [`induced_grid_permutation`]).
    pub fn cell_center(level: &Level, cell: usize) -> Self {
        let side = level.side();
        let xn = side * side;
        let (c1, c2) = (cell / xn, cell % xn);
        XiPoint {
            a1: UnitClass((c1 / side) as u64).representative(level),
            x1: BallClass((c1 % side) as u64).representative(level),
            a2: UnitClass((c2 / side) as u64).representative(level),
            x2: BallClass((c2 % side) as u64).representative(level),
        }
    }

    /// The level-m cell containing this point.
    pub fn cell(&self, level: &Level) -> Result<usize> {
        let side = level.side();
        let slot = |a: &PadicNumber, x: &PadicNumber| -> Result<usize> {
            Ok(UnitClass::from_padic(level, a)?.0 as usize * side
                + BallClass::from_padic(level, x)?.0 as usize)
        };
        Ok(slot(&self.a1, &self.x1)? * side * side + slot(&self.a2, &self.x2)?)
    }

    /// Componentwise congruence at the common precision.
    pub fn congruent(&self, other: &Self) -> bool {
        self.a1.congruent(&other.a1)
            && self.x1.congruent(&other.x1)
            && self.a2.congruent(&other.a2)
            && self.x2.congruent(&other.x2)
    }

    pub fn precision(&self) -> i64 {
        [self.a1, self.x1, self.a2, self.x2]
            .iter()
            .map(PadicNumber::precision)
            .min()
            .unwrap_or(0)
    }
}

/// `Ξ(a₁,x₁,a₂,x₂) = (φ⁻¹(a₂⁻¹x₂)a₁, x₁, φ⁻¹(−a₁⁻¹x₁)a₂, x₂)`.
pub fn xi_forward(pt: &XiPoint, n: u32) -> Result<XiPoint> {
    pt.validate(n)?;
    let nn = n as i64;
    let a = phi_inv(&(pt.a2.invert()? * pt.x2), nn)?;
    let b = phi_inv(&(-(pt.a1.invert()? * pt.x1)), nn)?;
    Ok(XiPoint::new(a * pt.a1, pt.x1, b * pt.a2, pt.x2))
}

/// `(U₊, U₋) = 1 + X₁X₂/2 + X₁²/2 ± X₁(1 + (X₁/2 + X₂/2)²)^{1/2}`, the two
/// solutions of the squared relation for `u₂²`.
pub fn root_branches(
    big_x1: &PadicNumber,
    big_x2: &PadicNumber,
) -> Result<(PadicNumber, PadicNumber)> {
    let p = big_x1.prime();
    let one = PadicNumber::one(p, big_x1.precision().max(big_x2.precision()));
    let half_sum = (*big_x1 + *big_x2).div_small(2);
    let s = sqrt_unit(&(one + half_sum.square()))?;
    let base = one + (*big_x1 * *big_x2).div_small(2) + big_x1.square().div_small(2);
    let d = *big_x1 * s;
    Ok((base + d, base - d))
}

/// `X₁U − ((U + X₂²/4)^{1/2} − X₂/2)(U − 1)`: zero exactly when `U` is
/// the square of an admissible `u₂`.
pub fn branch_residual(
    big_x1: &PadicNumber,
    big_x2: &PadicNumber,
    u: &PadicNumber,
) -> Result<PadicNumber> {
    let root = sqrt_unit(&(*u + big_x2.square().div_small(4)))?;
    let one = PadicNumber::one(u.prime(), u.precision());
    Ok(*big_x1 * *u - (root - big_x2.div_small(2)) * (*u - one))
}

/// The closed-form inverse of `Ξ` (the `U₊` branch).
pub fn xi_inverse(pt: &XiPoint, n: u32) -> Result<XiPoint> {
    pt.validate(n)?;
    let big_x1 = pt.x1 * pt.a1.invert()?;
    let big_x2 = pt.x2 * pt.a2.invert()?;
    let p = pt.a1.prime();
    let one = PadicNumber::one(p, pt.precision());
    let half_sum = (big_x1 + big_x2).div_small(2);
    let s = sqrt_unit(&(one + half_sum.square()))?;
    let mixed = (big_x1 * big_x2).div_small(2);
    let u2 = sqrt_unit(&(one + mixed + big_x1.square().div_small(2) + big_x1 * s))?;
    let u1 = sqrt_unit(&(one + mixed + big_x2.square().div_small(2) - big_x2 * s))?;
    Ok(XiPoint::new(pt.a1 * u1, pt.x1, pt.a2 * u2, pt.x2))
}

/// The two summands of `Jac_Ξ = AB + a₁⁻¹a₂⁻¹ D_A D_B x₁x₂`, with
/// `A = φ⁻¹(a₂⁻¹x₂)`, `B = φ⁻¹(−a₁⁻¹x₁)` and `D_y = (1 + y⁻²)⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiJacobian {
    pub leading: PadicNumber,
    pub correction: PadicNumber,
}

impl XiJacobian {
    pub fn value(&self) -> PadicNumber {
        self.leading + self.correction
    }
}

pub fn xi_jacobian(pt: &XiPoint, n: u32) -> Result<XiJacobian> {
    pt.validate(n)?;
    let nn = n as i64;
    let a1_inv = pt.a1.invert()?;
    let a2_inv = pt.a2.invert()?;
    let a = phi_inv(&(a2_inv * pt.x2), nn)?;
    let b = phi_inv(&(-(a1_inv * pt.x1)), nn)?;
    let one = PadicNumber::one(pt.a1.prime(), pt.precision());
    let d = |y: &PadicNumber| -> Result<PadicNumber> { (one + y.square().invert()?).invert() };
    Ok(XiJacobian {
        leading: a * b,
        correction: a1_inv * a2_inv * d(&a)? * d(&b)? * pt.x1 * pt.x2,
    })
}

/// `|Jac_Ξ|_p`.
pub fn xi_jacobian_abs(pt: &XiPoint, n: u32) -> Result<AbsValue> {
    let jac = xi_jacobian(pt, n)?.value();
    jac.abs().ok_or_else(|| {
        Error::Precision(format!(
            "Jacobian vanishes at precision {}",
            jac.precision()
        ))
    })
}

fn induced(level: &Level, map: impl Fn(&XiPoint) -> Result<XiPoint> + Sync) -> Result<Vec<usize>> {
    let cells = level.side().pow(4);
    let perm = (0..cells)
        .into_par_iter()
        .map(|c| map(&XiPoint::cell_center(level, c))?.cell(level))
        .collect::<Result<Vec<_>>>()?;
    check_bijective(&perm)?;
    Ok(perm)
}

/// The map induced by `Ξ` on the `p^{4m}` cells of
/// `U_n × p^nZ_p × U_n × p^nZ_p`. Cell `(k₁,r₁,k₂,r₂)` has index
/// `(k₁p^m + r₁)p^{2m} + k₂p^m + r₂`, matching the `X_n × X_n` order.
pub fn induced_grid_permutation(level: &Level) -> Result<Vec<usize>> {
    induced(level, |pt| xi_forward(pt, level.n()))
}

/// The map induced by the closed-form inverse of `Ξ`.
pub fn induced_inverse_permutation(level: &Level) -> Result<Vec<usize>> {
    induced(level, |pt| xi_inverse(pt, level.n()))
}

pub fn check_bijective(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        if j >= perm.len() || seen[j] {
            return Err(Error::NotAPermutation(format!(
                "cell {i} maps to {j}, which is out of range or already hit"
            )));
        }
        seen[j] = true;
    }
    Ok(())
}

/// Upper bound on dense working memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub bytes: usize,
}

impl Budget {
    pub fn megabytes(mb: usize) -> Self {
        Budget {
            bytes: mb.saturating_mul(1 << 20),
        }
    }

    pub fn check(&self, dim: usize, matrices: usize, what: &str) -> Result<()> {
        let need = (dim as u128) * (dim as u128) * 16 * matrices as u128;
        if need > self.bytes as u128 {
            return Err(Error::OutOfBudget(format!(
                "{what} needs {matrices} dense {dim}x{dim} matrices ({} MiB), budget is {} MiB",
                need >> 20,
                self.bytes >> 20
            )));
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::megabytes(1024)
    }
}

/// Largest triple-space dimension for which the dense cocycle check runs.
pub const COCYCLE_DIMENSION_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistMethod {
    Factorized,
    Direct,
}

/// The exact phase `φ(a₁)t₂ − φ(a₂)t₁` of the coefficient of `F`.
pub fn twist_phase(level: &Level, g1: usize, g2: usize) -> Result<Phase> {
    let side = level.side();
    let a1 = UnitClass((g1 / side) as u64).representative(level);
    let t1 = GammaClass((g1 % side) as u64).representative(level);
    let a2 = UnitClass((g2 / side) as u64).representative(level);
    let t2 = GammaClass((g2 % side) as u64).representative(level);
    psi_phase(&(phi(&a1)? * t2 - phi(&a2)? * t1))
}

/// `F` as a coefficient function `c([g₁],[g₂])` on `X_n²`, with the dense
/// matrix of `Σ c λ_{[g₁]⁻¹}⊗λ_{[g₂]⁻¹}` materialized on demand.
#[derive(Debug)]
pub struct TwistOperator {
    grid: XnGrid,
    phases: Option<Vec<Phase>>,
    coefficients: Vec<Complex64>,
    matrix: OnceLock<OperatorMatrix>,
}

impl TwistOperator {
    /// `c([g₁],[g₂]) = q^{2n} p^{-2(n+m)} Ψ(φ(a₁)t₂ − φ(a₂)t₁)`.
    pub fn new(level: Level) -> Result<Self> {
        let grid = XnGrid::new(level)?;
        let len = grid.len();
        let phases = (0..len * len)
            .into_par_iter()
            .map(|i| twist_phase(&level, i / len, i % len))
            .collect::<Result<Vec<_>>>()?;
        let scale = (level.q() as f64).powi(2 * level.n() as i32) * level.cell_weight().powi(2);
        let coefficients = phases.iter().map(|ph| ph.to_complex() * scale).collect();
        Ok(TwistOperator {
            grid,
            phases: Some(phases),
            coefficients,
            matrix: OnceLock::new(),
        })
    }

    /// An arbitrary coefficient function, indexed `g₁·|X_n| + g₂`.
    pub fn from_coefficients(grid: XnGrid, coefficients: Vec<Complex64>) -> Result<Self> {
        let len = grid.len();
        if coefficients.len() != len * len {
            return Err(Error::ParameterMismatch(format!(
                "{} coefficients for a grid of {len} points",
                coefficients.len()
            )));
        }
        Ok(TwistOperator {
            grid,
            phases: None,
            coefficients,
            matrix: OnceLock::new(),
        })
    }

    pub fn level(&self) -> &Level {
        self.grid.level()
    }

    pub fn grid(&self) -> &XnGrid {
        &self.grid
    }

    /// Dimension of `L²(X_n × X_n)` at this level.
    pub fn dimension(&self) -> usize {
        self.grid.len() * self.grid.len()
    }

    pub fn coefficient(&self, g1: usize, g2: usize) -> Complex64 {
        self.coefficients[g1 * self.grid.len() + g2]
    }

    pub fn coefficient_phase(&self, g1: usize, g2: usize) -> Option<Phase> {
        self.phases.as_ref().map(|ph| ph[g1 * self.grid.len() + g2])
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// The dense matrix, assembled from the coefficients if not yet built.
    pub fn matrix(&self) -> &OperatorMatrix {
        self.matrix
            .get_or_init(|| translation_sum(&self.grid, &self.coefficients, false))
    }

    /// `F*` from conjugated coefficients: `Σ c̄ λ_{[g₁]}⊗λ_{[g₂]}`.
    pub fn adjoint_from_coefficients(&self) -> OperatorMatrix {
        let conj: Vec<Complex64> = self.coefficients.iter().map(|c| c.conj()).collect();
        translation_sum(&self.grid, &conj, true)
    }
}

/// `Σ c(g₁,g₂) λ_{g₁^{±1}}⊗λ_{g₂^{±1}}` on `L²(X_n²)`, with
/// `λ_g f(h) = f(g⁻¹h)`; `forward = false` picks the inverse points.
fn translation_sum(grid: &XnGrid, coeffs: &[Complex64], forward: bool) -> OperatorMatrix {
    let len = grid.len();
    OperatorMatrix::from_fn(len * len, len * len, |row, col| {
        let (h1, h2) = (row / len, row % len);
        let (k1, k2) = (col / len, col % len);
        // forward: k = g⁻¹h, so g = h k⁻¹; otherwise k = g h, so g = k h⁻¹
        let (g1, g2) = if forward {
            (grid.mul(h1, grid.inv(k1)), grid.mul(h2, grid.inv(k2)))
        } else {
            (grid.mul(k1, grid.inv(h1)), grid.mul(k2, grid.inv(h2)))
        };
        coeffs[g1 * len + g2]
    })
}

/// Build `F` at the given level by the chosen construction.
pub fn build_twist(level: Level, method: TwistMethod, budget: Budget) -> Result<TwistOperator> {
    let side = level.side();
    let dim = side.pow(4);
    let twist = TwistOperator::new(level)?;
    let matrix = match method {
        TwistMethod::Direct => {
            budget.check(dim, 1, "direct construction of F")?;
            translation_sum(&twist.grid, &twist.coefficients, false)
        }
        TwistMethod::Factorized => {
            budget.check(dim, 4, "factorized construction of F")?;
            let perm = induced_grid_permutation(&level)?;
            let ft = GammaFourier::new(level)?;
            let id = OperatorMatrix::identity(side);
            let half = id.kron(&ft.forward_matrix());
            let half_inv = id.kron(&ft.inverse_matrix());
            let u = half.kron(&half);
            let u_inv = half_inv.kron(&half_inv);
            u_inv.matmul(&OperatorMatrix::composition(&perm).matmul(&u)?)?
        }
    };
    let _ = twist.matrix.set(matrix);
    Ok(twist)
}

/// `max(‖F*F − I‖, ‖FF* − I‖) / ‖I‖` in Frobenius norm.
pub fn unitarity_residual(twist: &TwistOperator) -> Result<f64> {
    twist.matrix().unitarity_residual()
}

/// Unitarity of `F` from its factorization, without the dense matrix:
/// `T_Ξ` must be an exact permutation and the normalized partial Fourier
/// transform unitary, with `ℱ⁻¹ℱ = I`. Returns the worse of the two float
/// residuals.
pub fn structured_unitarity_residual(level: &Level) -> Result<f64> {
    induced_grid_permutation(level)?;
    let ft = GammaFourier::new(*level)?;
    let normalized = normalized_fourier_matrix(&ft).unitarity_residual()?;
    let id = OperatorMatrix::identity(level.side());
    let round_trip = ft
        .inverse_matrix()
        .matmul(&ft.forward_matrix())?
        .sub(&id)?
        .frobenius_norm()
        / id.frobenius_norm();
    Ok(normalized.max(round_trip))
}

/// Which group element acts on a tensor leg of a lifted operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Leg {
    Id,
    First,
    Second,
}

/// `Σ c(g₁,g₂) λ_{ℓ₁}⊗λ_{ℓ₂}⊗λ_{ℓ₃}` on `L²(X_n³)`, where leg `ℓ` carries
/// `[g₁]⁻¹`, `[g₂]⁻¹` or the identity.
pub fn lift(grid: &XnGrid, coeffs: &[Complex64], legs: [Leg; 3]) -> OperatorMatrix {
    let len = grid.len();
    let dim = len * len * len;
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    data.par_chunks_mut(dim).enumerate().for_each(|(row, out)| {
        let h = [row / (len * len), (row / len) % len, row % len];
        for g1 in 0..len {
            for g2 in 0..len {
                let c = coeffs[g1 * len + g2];
                let k: Vec<usize> = legs
                    .iter()
                    .zip(h)
                    .map(|(leg, hl)| match leg {
                        Leg::Id => hl,
                        Leg::First => grid.mul(g1, hl),
                        Leg::Second => grid.mul(g2, hl),
                    })
                    .collect();
                out[(k[0] * len + k[1]) * len + k[2]] += c;
            }
        }
    });
    OperatorMatrix::from_rows(dim, dim, data).expect("lift has consistent shape")
}

/// `‖(1⊗F)(ι⊗Δ̂)F − (F⊗1)(Δ̂⊗ι)F‖ / ‖(1⊗F)(ι⊗Δ̂)F‖` for the coefficient
/// function of `twist`.
pub fn cocycle_residual(twist: &TwistOperator, budget: Budget) -> Result<f64> {
    let len = twist.grid.len();
    let dim = len * len * len;
    if dim > COCYCLE_DIMENSION_CAP {
        return Err(Error::OutOfBudget(format!(
            "triple space has dimension {dim}, above the dense cap {COCYCLE_DIMENSION_CAP}"
        )));
    }
    budget.check(dim, 6, "cocycle check")?;
    let c = &twist.coefficients;
    let g = &twist.grid;
    let lhs = lift(g, c, [Leg::Id, Leg::First, Leg::Second]).matmul(&lift(
        g,
        c,
        [Leg::First, Leg::Second, Leg::Second],
    ))?;
    let rhs = lift(g, c, [Leg::First, Leg::Second, Leg::Id]).matmul(&lift(
        g,
        c,
        [Leg::First, Leg::First, Leg::Second],
    ))?;
    let norm = lhs.frobenius_norm();
    if norm == 0.0 {
        return Err(Error::Domain(
            "left-hand side of the cocycle relation vanishes".into(),
        ));
    }
    Ok(lhs.sub(&rhs)?.frobenius_norm() / norm)
}
