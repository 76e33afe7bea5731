//! The Fourier transform `ℱ_Γ : L²(Γ_n) → L²(p^n Z_p)`,
//! `(ℱf)(x) = Σ_[t] f([t]) Ψ(x t)`, and its inverse
//! `f([t]) = p^n ∫_{p^n Z_p} g(x) conj(Ψ(x t)) dx`.
//!
//! The inverse normalization comes from `∫_{p^n Z_p} Ψ(x s) dx = p^{-n}·1{s ∈ p^{-n}Z_p}`;
//! `p^{n/2}·ℱ_Γ` is unitary between the two weighted spaces.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::{Domain, LcFunction};
use crate::grid::{BallClass, GammaClass, Level};
use crate::linalg::{pairwise_sum, OperatorMatrix};
use crate::padic::{pow_u64, psi_phase, PadicNumber};
use crate::phase::Phase;

/// Character table `Ψ(x_r t_s)` for one level.
#[derive(Debug, Clone)]
pub struct GammaFourier {
    level: Level,
    phases: Vec<Phase>,
}

impl GammaFourier {
    pub fn new(level: Level) -> Result<Self> {
        let side = level.side();
        let mut phases = Vec::with_capacity(side * side);
        for r in 0..side {
            let x = BallClass(r as u64).representative(&level);
            for s in 0..side {
                let t = GammaClass(s as u64).representative(&level);
                phases.push(psi_phase(&(x * t))?);
            }
        }
        Ok(GammaFourier { level, phases })
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    /// The exact phase of `Ψ(x_r t_s)`.
    pub fn phase(&self, r: usize, s: usize) -> Phase {
        self.phases[r * self.level.side() + s]
    }

    /// Matrix acting on value vectors: `(ℱf)[r] = Σ_s M[r,s] f[s]`.
    pub fn forward_matrix(&self) -> OperatorMatrix {
        let side = self.level.side();
        OperatorMatrix::from_fn(side, side, |r, s| self.phase(r, s).to_complex())
    }

    /// Matrix of the inverse on value vectors: `p^n · p^{-(n+m)} · conj(Ψ(x_r t_s))`.
    pub fn inverse_matrix(&self) -> OperatorMatrix {
        let side = self.level.side();
        let c = (self.level.p() as f64).powi(self.level.n() as i32) * self.level.cell_weight();
        OperatorMatrix::from_fn(side, side, |s, r| self.phase(r, s).to_complex().conj() * c)
    }

    pub fn forward(&self, f: &LcFunction) -> Result<LcFunction> {
        f.expect(&self.level, Domain::Gamma)?;
        let values = self.forward_matrix().apply(f.values())?;
        LcFunction::new(self.level, Domain::Ball, values)
    }

    pub fn inverse(&self, g: &LcFunction) -> Result<LcFunction> {
        g.expect(&self.level, Domain::Ball)?;
        let values = self.inverse_matrix().apply(g.values())?;
        LcFunction::new(self.level, Domain::Gamma, values)
    }
}

pub fn fourier_gamma(f: &LcFunction) -> Result<LcFunction> {
    GammaFourier::new(*f.level())?.forward(f)
}

pub fn fourier_gamma_inv(g: &LcFunction) -> Result<LcFunction> {
    GammaFourier::new(*g.level())?.inverse(g)
}

/// `p^{n/2}·ℱ_Γ` in the orthonormal bases (`Γ_n` points have weight 1,
/// balls weight `p^{-(n+m)}`).
pub fn normalized_fourier_matrix(ft: &GammaFourier) -> OperatorMatrix {
    let level = ft.level();
    let s = (level.p() as f64).powf(level.n() as f64 / 2.0) * level.cell_weight().sqrt();
    ft.forward_matrix().scale(Complex64::new(s, 0.0))
}

/// Runs `body` over the cells `t + p^n Z_p` of `p^{-(n+m)} Z_p`, each of
/// measure `p^{-n}`, with the class of `t` in `Γ_n`.
fn periodized_cells(
    f: &LcFunction,
    mut body: impl FnMut(&PadicNumber, usize) -> Result<Complex64>,
) -> Result<Complex64> {
    f.expect(f.level(), Domain::Gamma)?;
    let level = f.level();
    let (p, n, big_m) = (level.p(), level.n() as i64, level.big_m());
    let cells = pow_u64(p, big_m + n);
    let mut terms = Vec::with_capacity(cells as usize);
    for j in 0..cells {
        let t = PadicNumber::from_i64(p, j as i64, level.precision() + big_m).shift(-big_m);
        let class = GammaClass::from_padic(level, &t)?.0 as usize;
        terms.push(body(&t, class)? * (p as f64).powi(-(n as i32)));
    }
    Ok(pairwise_sum(&terms))
}

/// `∫_k f` for the `p^{-n}Z_p`-invariant function `f` on `k` that equals
/// `f̃([t])` on each class of the level-m support, summed over cells of
/// `k` directly.
pub fn periodized_integral(f: &LcFunction) -> Result<Complex64> {
    periodized_cells(f, |_, class| Ok(f.values()[class]))
}

/// `(ℱ_k f)(x) = ∫_k f(t) Ψ(xt) dt` for the same periodized `f`, for any
/// `x` with valuation at least `-n`.
pub fn periodized_fourier(f: &LcFunction, x: &PadicNumber) -> Result<Complex64> {
    let n = f.level().n() as i64;
    if !x.is_zero() && x.valuation() < -n {
        return Err(Error::Domain(format!(
            "{x} has valuation below -{n}; the cell sum is not exact there"
        )));
    }
    periodized_cells(f, |t, class| {
        Ok(f.values()[class] * psi_phase(&(*x * *t))?.to_complex())
    })
}
