//! Complex functions on the level-m grids, with their Haar/counting weights.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{BallClass, Level, UnitClass, XnGrid};
use crate::linalg::pairwise_sum;
use crate::padic::phi;

/// Which grid an [`LcFunction`] lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    /// `U_n`, cells of Haar measure `p^{-(n+m)}`.
    Units,
    /// `Γ_n` truncated to `p^{-(n+m)} Z_p / p^{-n} Z_p`, counting measure.
    Gamma,
    /// `p^n Z_p`, balls of Haar measure `p^{-(n+m)}`.
    Ball,
    /// `X_n = U_n ⋉ Γ_n`, product measure.
    Xn,
}

impl Domain {
    pub fn len(&self, level: &Level) -> usize {
        match self {
            Domain::Units | Domain::Gamma | Domain::Ball => level.side(),
            Domain::Xn => level.side() * level.side(),
        }
    }

    pub fn weight(&self, level: &Level) -> f64 {
        match self {
            Domain::Gamma => 1.0,
            Domain::Units | Domain::Ball | Domain::Xn => level.cell_weight(),
        }
    }
}

/// A locally constant function at level `m`: one value per cell, in the
/// canonical grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct LcFunction {
    level: Level,
    domain: Domain,
    values: Vec<Complex64>,
}

impl LcFunction {
    pub fn new(level: Level, domain: Domain, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != domain.len(&level) {
            return Err(Error::ParameterMismatch(format!(
                "{} values for a {:?} grid of {} cells",
                values.len(),
                domain,
                domain.len(&level)
            )));
        }
        Ok(LcFunction {
            level,
            domain,
            values,
        })
    }

    pub fn zeros(level: Level, domain: Domain) -> Self {
        let len = domain.len(&level);
        LcFunction {
            level,
            domain,
            values: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    pub fn from_fn(level: Level, domain: Domain, f: impl Fn(usize) -> Complex64) -> Self {
        let values = (0..domain.len(&level)).map(f).collect();
        LcFunction {
            level,
            domain,
            values,
        }
    }

    pub fn constant(level: Level, domain: Domain, c: Complex64) -> Self {
        Self::from_fn(level, domain, |_| c)
    }

    /// Indicator of a single cell (a Dirac mass on `Γ_n`).
    pub fn indicator(level: Level, domain: Domain, index: usize) -> Self {
        Self::from_fn(level, domain, |i| {
            Complex64::new(if i == index { 1.0 } else { 0.0 }, 0.0)
        })
    }

    /// Complex Gaussian values, normalized to unit L² norm.
    pub fn random<R: Rng + ?Sized>(level: Level, domain: Domain, rng: &mut R) -> Self {
        let mut f = Self::from_fn(level, domain, |_| Complex64::new(0.0, 0.0));
        for v in &mut f.values {
            *v = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
        let norm = f.norm();
        f.scale(Complex64::new(1.0 / norm, 0.0))
    }

    #[inline]
    pub fn level(&self) -> &Level {
        &self.level
    }

    #[inline]
    pub fn domain(&self) -> Domain {
        self.domain
    }

    #[inline]
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn weight(&self) -> f64 {
        self.domain.weight(&self.level)
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.level != other.level || self.domain != other.domain {
            return Err(Error::ParameterMismatch(format!(
                "functions on {:?}@{:?} and {:?}@{:?}",
                self.domain, self.level, other.domain, other.level
            )));
        }
        Ok(())
    }

    pub(crate) fn expect(&self, level: &Level, domain: Domain) -> Result<()> {
        if &self.level != level || self.domain != domain {
            return Err(Error::ParameterMismatch(format!(
                "expected a function on {domain:?}@{level:?}, got {:?}@{:?}",
                self.domain, self.level
            )));
        }
        Ok(())
    }

    /// `∫ f` for the attached measure.
    pub fn integral(&self) -> Complex64 {
        pairwise_sum(&self.values) * self.weight()
    }

    /// `⟨f, g⟩ = ∫ conj(f)·g`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_compatible(other)?;
        let terms: Vec<Complex64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.conj() * b)
            .collect();
        Ok(pairwise_sum(&terms) * self.weight())
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).expect("same function").re.sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        LcFunction {
            values: self.values.iter().map(|v| v * s).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(LcFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
            ..self.clone()
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `f ∘ perm` for a map of cell labels.
    pub fn compose(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.values.len() {
            return Err(Error::ParameterMismatch(
                "cell map of the wrong size".into(),
            ));
        }
        Ok(LcFunction {
            values: perm.iter().map(|&j| self.values[j]).collect(),
            ..self.clone()
        })
    }

    /// Left translation `λ_[g] f ([h]) = f([g]^{-1}[h])` on `X_n`.
    pub fn left_translate(&self, grid: &XnGrid, g: usize) -> Result<Self> {
        self.expect(grid.level(), Domain::Xn)?;
        let g_inv = grid.inv(g);
        Ok(LcFunction {
            values: (0..self.values.len())
                .map(|h| self.values[grid.mul(g_inv, h)])
                .collect(),
            ..self.clone()
        })
    }
}

/// `a ↦ f(a²)` on `U_n`; squaring permutes the level-m cells.
pub fn pullback_sigma(f: &LcFunction) -> Result<LcFunction> {
    f.expect(f.level(), Domain::Units)?;
    let level = *f.level();
    let map = (0..level.side() as u64)
        .map(|k| {
            let a = UnitClass(k).representative(&level);
            Ok(UnitClass::from_padic(&level, &a.square())?.0 as usize)
        })
        .collect::<Result<Vec<_>>>()?;
    f.compose(&map)
}

/// `a ↦ h(φ(a))`, carrying a function on `p^n Z_p` to one on `U_n`.
pub fn pullback_phi(h: &LcFunction) -> Result<LcFunction> {
    h.expect(h.level(), Domain::Ball)?;
    let level = *h.level();
    let values = (0..level.side() as u64)
        .map(|k| {
            let a = UnitClass(k).representative(&level);
            Ok(h.values()[BallClass::from_padic(&level, &phi(&a)?)?.0 as usize])
        })
        .collect::<Result<Vec<_>>>()?;
    LcFunction::new(level, Domain::Units, values)
}

/// The Haar integral over `U_n`, an exact Riemann sum at level `m`.
pub fn haar_integral(f: &LcFunction) -> Result<Complex64> {
    if f.domain() != Domain::Units {
        return Err(Error::ParameterMismatch(format!(
            "haar_integral expects a function on U_n, got {:?}",
            f.domain()
        )));
    }
    Ok(f.integral())
}
