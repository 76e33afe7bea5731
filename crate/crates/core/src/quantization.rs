//! The p-adic Fuchs calculus on `L²(U_n)` at level `m`.
//!
//! `π(a,t)φ(a₀) = Ψ(a₀⁻¹at) φ(a⁻¹a₀)`, `Σφ(a) = φ(a⁻¹)` and
//! `Ω([g]) = π(g)Σπ(g)*`, which acts as
//! `Ω(a,[t])φ(a₀) = Ψ(φ(aa₀⁻¹)t) φ(a²a₀⁻¹)`. The quantization map is
//! `𝛀(f) = c ∫_{X_n} f([g]) Ω([g]) d[g]` with `c = q^{n/2}`, the constant that
//! makes `𝛀` an isometry onto the Hilbert-Schmidt operators for the measure
//! `d[g] = da ⊗ counting`. With that constant the star product
//! `𝛀*(𝛀(f₁)𝛀(f₂))` has kernel
//! `K = c³ Ψ(φ(a₁a₂⁻¹)t₃ + φ(a₂a₃⁻¹)t₁ + φ(a₃a₁⁻¹)t₂)`.
//!
//! Every `Ω([g])` and `π(g)` is monomial (one nonzero entry per row), which
//! is how they are stored internally.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::{Domain, LcFunction};
use crate::grid::{GammaClass, Level, UnitClass, XnElement, XnGrid};
use crate::linalg::{pairwise_sum, OperatorMatrix};
use crate::padic::{phi, psi_phase, PadicNumber};
use crate::phase::Phase;

/// A point `(a, t)` of the covariance group `G_n = U_n ⋉ Q_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GnPoint {
    pub a: PadicNumber,
    pub t: PadicNumber,
}

impl GnPoint {
    pub fn new(a: PadicNumber, t: PadicNumber) -> Self {
        GnPoint { a, t }
    }

    /// The canonical lift of `[g]`: lowest-digit representatives.
    pub fn lift(level: &Level, g: &XnElement) -> Self {
        GnPoint {
            a: g.unit.representative(level),
            t: g.gamma.representative(level),
        }
    }

    /// `(a,t)·(a',t') = (aa', a'⁻¹t + t')`.
    pub fn mul(&self, other: &GnPoint) -> Result<GnPoint> {
        Ok(GnPoint {
            a: self.a * other.a,
            t: other.a.invert()? * self.t + other.t,
        })
    }

    pub fn inverse(&self) -> Result<GnPoint> {
        Ok(GnPoint {
            a: self.a.invert()?,
            t: -(self.a * self.t),
        })
    }

    /// The class `[g] = (a, t + p^{-n}Z_p)` in `X_n`.
    pub fn class(&self, level: &Level) -> Result<XnElement> {
        Ok(XnElement {
            unit: UnitClass::from_padic(level, &self.a)?,
            gamma: GammaClass::from_padic(level, &self.t)?,
        })
    }

    fn check_representable(&self, level: &Level) -> Result<()> {
        if !self.a.in_principal_units(level.n() as i64) {
            return Err(Error::Domain(format!(
                "{} is not in U_{}",
                self.a,
                level.n()
            )));
        }
        if !self.t.is_zero() && self.t.valuation() < -level.big_m() {
            return Err(Error::Domain(format!(
                "t = {} is too singular for level m = {} (valuation below -{})",
                self.t,
                level.m(),
                level.big_m()
            )));
        }
        Ok(())
    }
}

/// All points of `G_n` that act on the level-m space, modulo the kernel of
/// the action: `a` up to `U_{n+m}` and `t = s·p^{-(n+m)}` up to `Z_p`.
pub fn representable_gn_points(level: &Level) -> Vec<GnPoint> {
    let side = level.side() as u64;
    let span = crate::padic::pow_u64(level.p(), level.big_m());
    let mut out = Vec::with_capacity((side * span) as usize);
    for k in 0..side {
        let a = UnitClass(k).representative(level);
        for s in 0..span {
            let t = GammaClass(s).representative(level);
            out.push(GnPoint { a, t });
        }
    }
    out
}

/// A matrix with exactly one nonzero entry per row.
#[derive(Debug, Clone, PartialEq)]
struct Monomial {
    cols: Vec<usize>,
    phases: Vec<Phase>,
}

impl Monomial {
    fn dense(&self) -> OperatorMatrix {
        let n = self.cols.len();
        let mut m = OperatorMatrix::zeros(n, n);
        for (i, (&j, ph)) in self.cols.iter().zip(&self.phases).enumerate() {
            m[(i, j)] = ph.to_complex();
        }
        m
    }
}

fn units(level: &Level) -> Vec<PadicNumber> {
    (0..level.side() as u64)
        .map(|k| UnitClass(k).representative(level))
        .collect()
}

fn rep_pi_monomial(level: &Level, g: &GnPoint) -> Result<Monomial> {
    g.check_representable(level)?;
    let a_inv = g.a.invert()?;
    let at = g.a * g.t;
    let mut cols = Vec::with_capacity(level.side());
    let mut phases = Vec::with_capacity(level.side());
    for a0 in units(level) {
        cols.push(UnitClass::from_padic(level, &(a_inv * a0))?.0 as usize);
        phases.push(psi_phase(&(a0.invert()? * at))?);
    }
    Ok(Monomial { cols, phases })
}

/// The matrix of `π(a,t)` on the level-m subspace of `L²(U_n)`.
pub fn rep_pi(level: &Level, g: &GnPoint) -> Result<OperatorMatrix> {
    Ok(rep_pi_monomial(level, g)?.dense())
}

/// The group-inversion symmetry `Σφ(a) = φ(a⁻¹)`.
pub fn symmetry(level: &Level) -> Result<OperatorMatrix> {
    let mut cols = Vec::with_capacity(level.side());
    for a in units(level) {
        cols.push(UnitClass::from_padic(level, &a.invert()?)?.0 as usize);
    }
    let phases = vec![Phase::ZERO; cols.len()];
    Ok(Monomial { cols, phases }.dense())
}

fn omega_monomial(level: &Level, g: &XnElement) -> Result<Monomial> {
    let a = g.unit.representative(level);
    let t = g.gamma.representative(level);
    let a_sq = a.square();
    let mut cols = Vec::with_capacity(level.side());
    let mut phases = Vec::with_capacity(level.side());
    for a0 in units(level) {
        let a0_inv = a0.invert()?;
        cols.push(UnitClass::from_padic(level, &(a_sq * a0_inv))?.0 as usize);
        phases.push(psi_phase(&(phi(&(a * a0_inv))? * t))?);
    }
    Ok(Monomial { cols, phases })
}

/// `Ω([g])φ(a₀) = Ψ(φ(aa₀⁻¹)t) φ(a²a₀⁻¹)`.
pub fn omega_point(level: &Level, g: &XnElement) -> Result<OperatorMatrix> {
    Ok(omega_monomial(level, g)?.dense())
}

/// `Ω` evaluated through an arbitrary lift: `π(g) Σ π(g)*`.
pub fn omega_from_lift(level: &Level, g: &GnPoint) -> Result<OperatorMatrix> {
    let pi = rep_pi(level, g)?;
    pi.matmul(&symmetry(level)?)?.matmul(&pi.adjoint())
}

/// `c = q^{n/2}`, the isometric normalization of `𝛀`.
pub fn quantization_scale(level: &Level) -> f64 {
    (level.q() as f64).powf(level.n() as f64 / 2.0)
}

/// The quantization map at one level, with every `Ω([g])` precomputed.
#[derive(Debug, Clone)]
pub struct Quantizer {
    grid: XnGrid,
    omegas: Vec<Monomial>,
    /// `Ψ(φ(a_i a_j⁻¹) t_s)` indexed `(i·side + j)·side + s`.
    kernel_phases: Vec<Phase>,
}

impl Quantizer {
    pub fn new(level: Level) -> Result<Self> {
        let grid = XnGrid::new(level)?;
        let omegas = grid
            .elements()
            .map(|g| omega_monomial(&level, &g))
            .collect::<Result<Vec<_>>>()?;
        let us = units(&level);
        let ts: Vec<PadicNumber> = (0..level.side() as u64)
            .map(|s| GammaClass(s).representative(&level))
            .collect();
        let mut kernel_phases = Vec::with_capacity(level.side().pow(3));
        for ai in &us {
            for aj in &us {
                let x = phi(&(*ai * aj.invert()?))?;
                for t in &ts {
                    kernel_phases.push(psi_phase(&(x * *t))?);
                }
            }
        }
        Ok(Quantizer {
            grid,
            omegas,
            kernel_phases,
        })
    }

    pub fn level(&self) -> &Level {
        self.grid.level()
    }

    pub fn grid(&self) -> &XnGrid {
        &self.grid
    }

    pub fn omega(&self, g: usize) -> OperatorMatrix {
        self.omegas[g].dense()
    }

    /// `𝛀(f) = c Σ_{[g]} p^{-(n+m)} f([g]) Ω([g])`.
    pub fn quantize(&self, f: &LcFunction) -> Result<OperatorMatrix> {
        f.expect(self.level(), Domain::Xn)?;
        let side = self.level().side();
        let coeff = quantization_scale(self.level()) * f.weight();
        let mut out = OperatorMatrix::zeros(side, side);
        for (om, fv) in self.omegas.iter().zip(f.values()) {
            if fv.re == 0.0 && fv.im == 0.0 {
                continue;
            }
            let s = fv * coeff;
            for (i, (&j, ph)) in om.cols.iter().zip(&om.phases).enumerate() {
                out[(i, j)] += s * ph.to_complex();
            }
        }
        Ok(out)
    }

    /// The adjoint `𝛀*(A)([g]) = c·trace(Ω([g])* A)`, which is also the
    /// inverse of [`Quantizer::quantize`].
    pub fn dequantize(&self, a: &OperatorMatrix) -> Result<LcFunction> {
        let side = self.level().side();
        if a.rows() != side || a.cols() != side {
            return Err(Error::ParameterMismatch(format!(
                "operator of shape {}x{} on a {side}-dimensional space",
                a.rows(),
                a.cols()
            )));
        }
        let c = quantization_scale(self.level());
        let values = self
            .omegas
            .iter()
            .map(|om| {
                let terms: Vec<Complex64> = om
                    .cols
                    .iter()
                    .zip(&om.phases)
                    .enumerate()
                    .map(|(i, (&j, ph))| ph.to_complex().conj() * a[(i, j)])
                    .collect();
                pairwise_sum(&terms) * c
            })
            .collect();
        LcFunction::new(*self.level(), Domain::Xn, values)
    }

    /// The exact phase of `K([g₀],[g₁],[g₂])`.
    pub fn star_kernel_phase(&self, g0: usize, g1: usize, g2: usize) -> Phase {
        let side = self.level().side();
        let (a0, t0) = (g0 / side, g0 % side);
        let (a1, t1) = (g1 / side, g1 % side);
        let (a2, t2) = (g2 / side, g2 % side);
        let at = |i: usize, j: usize, s: usize| self.kernel_phases[(i * side + j) * side + s];
        at(a0, a1, t2) + at(a1, a2, t0) + at(a2, a0, t1)
    }

    /// `K([g₀],[g₁],[g₂]) = q^{3n/2} Ψ(φ(a₀a₁⁻¹)t₂ + φ(a₁a₂⁻¹)t₀ + φ(a₂a₀⁻¹)t₁)`.
    pub fn star_kernel(&self, g0: usize, g1: usize, g2: usize) -> Complex64 {
        self.star_kernel_phase(g0, g1, g2).to_complex() * quantization_scale(self.level()).powi(3)
    }

    pub fn star_product(
        &self,
        f1: &LcFunction,
        f2: &LcFunction,
        method: StarMethod,
    ) -> Result<LcFunction> {
        f1.expect(self.level(), Domain::Xn)?;
        f2.expect(self.level(), Domain::Xn)?;
        match method {
            StarMethod::HilbertSchmidt => {
                let prod = self.quantize(f1)?.matmul(&self.quantize(f2)?)?;
                self.dequantize(&prod)
            }
            StarMethod::Kernel => {
                let n = self.grid.len();
                let w2 = f1.weight() * f1.weight();
                let values = (0..n)
                    .map(|g0| {
                        let mut terms = Vec::with_capacity(n * n);
                        for (g1, v1) in f1.values().iter().enumerate() {
                            for (g2, v2) in f2.values().iter().enumerate() {
                                terms.push(self.star_kernel(g0, g1, g2) * v1 * v2);
                            }
                        }
                        pairwise_sum(&terms) * w2
                    })
                    .collect();
                LcFunction::new(*self.level(), Domain::Xn, values)
            }
        }
    }
}

/// Which route computes `f₁ ⋆ f₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarMethod {
    /// `∫∫ K([g₀],[g₁],[g₂]) f₁([g₁]) f₂([g₂]) d[g₁] d[g₂]`.
    Kernel,
    /// `𝛀*(𝛀(f₁)𝛀(f₂))`.
    HilbertSchmidt,
}

pub fn quantize(f: &LcFunction) -> Result<OperatorMatrix> {
    Quantizer::new(*f.level())?.quantize(f)
}

pub fn dequantize(level: &Level, a: &OperatorMatrix) -> Result<LcFunction> {
    Quantizer::new(*level)?.dequantize(a)
}

pub fn star_product(f1: &LcFunction, f2: &LcFunction, method: StarMethod) -> Result<LcFunction> {
    f1.check_compatible(f2)?;
    Quantizer::new(*f1.level())?.star_product(f1, f2, method)
}
