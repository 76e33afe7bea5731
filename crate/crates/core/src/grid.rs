//! The finite model of `U_n`, `Γ_n`, `p^n Z_p` and `X_n = U_n ⋉ Γ_n` at
//! resolution level `m`.
//!
//! With `M = n + m`, unit classes are cosets `a·U_M` (equivalently the
//! additive balls `a + p^M Z_p`), `Γ_n` is truncated to the classes of
//! `p^{-M} Z_p / p^{-n} Z_p`, and `p^n Z_p` is cut into balls of radius
//! `p^{-M}`. Locking the Γ support bound to the unit resolution makes
//! `Ψ(x·t)` and `Ψ(φ(a)·t)` exactly constant on cells, so every integral in
//! the calculus becomes an exact finite sum. Unit scaling never lowers a Γ
//! valuation, so the truncated set is closed under the group law.
//!
//! Canonical order: each class is labelled by the integer whose base-p
//! digits are its canonical digit string (`k` with `a = 1 + p^n k`, `s` with
//! `t = s·p^{-M}`, `r` with `x = p^n r`, all in `[0, p^m)`); an `X_n` point
//! `(a, [t])` has index `k·p^m + s` (unit component first).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{LocalField, Qp};
use crate::padic::{max_relative_precision, pow_u64, PadicNumber};

pub const DEFAULT_GUARD: u32 = 4;

/// Parameters `(p, n, m)` plus the guard digits of the working precision
/// `N = n + m + guard`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Level {
    p: u64,
    n: u32,
    m: u32,
    guard: u32,
}

impl Level {
    pub fn new(p: u64, n: u32, m: u32) -> Result<Self> {
        Self::with_guard(p, n, m, DEFAULT_GUARD)
    }

    pub fn with_guard(p: u64, n: u32, m: u32, guard: u32) -> Result<Self> {
        let field = Qp::new(p)?;
        if n < 1 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if m < 1 {
            return Err(Error::Config(
                "resolution level m must be at least 1".into(),
            ));
        }
        let level = Level {
            p: field.prime(),
            n,
            m,
            guard,
        };
        // Inverting p^{-M}-scale elements doubles the span; keep twice N representable.
        if 2 * (level.precision() + level.big_m()) > max_relative_precision(p) {
            return Err(Error::Config(format!(
                "working precision {} is too large for p = {p}",
                level.precision()
            )));
        }
        if (p as u128).pow(2 * m) > u32::MAX as u128 {
            return Err(Error::Config(format!(
                "p^(2m) = {p}^{} is too large a grid",
                2 * m
            )));
        }
        Ok(level)
    }

    pub fn field(&self) -> Qp {
        Qp::new(self.p).expect("validated at construction")
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn guard(&self) -> u32 {
        self.guard
    }

    pub fn q(&self) -> u64 {
        self.field().residue_cardinality()
    }

    /// `M = n + m`.
    #[inline]
    pub fn big_m(&self) -> i64 {
        (self.n + self.m) as i64
    }

    /// Working absolute precision `N = n + m + guard`.
    #[inline]
    pub fn precision(&self) -> i64 {
        (self.n + self.m + self.guard) as i64
    }

    /// `p^m`, the number of cells of each one-dimensional grid.
    #[inline]
    pub fn side(&self) -> usize {
        pow_u64(self.p, self.m as i64) as usize
    }

    /// Haar measure `p^{-M}` of one `U_n` or `p^n Z_p` cell.
    pub fn cell_weight(&self) -> f64 {
        (self.p as f64).powi(-(self.big_m() as i32))
    }

    pub fn padic(&self, value: i64) -> PadicNumber {
        PadicNumber::from_i64(self.p, value, self.precision())
    }

    fn check(&self, index: u64, what: &str) -> Result<()> {
        if index as usize >= self.side() {
            return Err(Error::ParameterMismatch(format!(
                "{what} label {index} is outside [0, {}) for this level",
                self.side()
            )));
        }
        Ok(())
    }
}

/// A coset `a·U_{n+m}` in `U_n`, labelled by `k` with `a = 1 + p^n k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitClass(pub u64);

impl UnitClass {
    pub fn representative(&self, level: &Level) -> PadicNumber {
        let p = level.p();
        let n = level.n() as i64;
        PadicNumber::one(p, level.precision())
            + PadicNumber::from_i64(p, self.0 as i64, level.precision() - n).shift(n)
    }

    pub fn from_padic(level: &Level, a: &PadicNumber) -> Result<Self> {
        if !a.in_principal_units(level.n() as i64) {
            return Err(Error::Domain(format!("{a} is not in U_{}", level.n())));
        }
        let r = a.residue(level.big_m())?;
        Ok(UnitClass((r - 1) / pow_u64(level.p(), level.n() as i64)))
    }
}

/// A class `[t] ∈ Γ_n` with `t = s·p^{-(n+m)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaClass(pub u64);

impl GammaClass {
    /// The lowest-digit representative `s·p^{-M}` known mod `p^N`.
    pub fn representative(&self, level: &Level) -> PadicNumber {
        let m = level.big_m();
        PadicNumber::from_i64(level.p(), self.0 as i64, level.precision() + m).shift(-m)
    }

    pub fn from_padic(level: &Level, t: &PadicNumber) -> Result<Self> {
        let m = level.big_m();
        if !t.is_zero() && t.valuation() < -m {
            return Err(Error::Domain(format!(
                "{t} has valuation {} below the level bound -{m}",
                t.valuation()
            )));
        }
        let scaled = t.shift(m);
        Ok(GammaClass(scaled.residue(level.m() as i64)?))
    }

    /// Canonical digits `a_j` for `j = -M, …, -n-1`.
    pub fn digits(&self, level: &Level) -> Vec<u8> {
        let mut s = self.0;
        (0..level.m())
            .map(|_| {
                let d = (s % level.p()) as u8;
                s /= level.p();
                d
            })
            .collect()
    }
}

/// A ball `x + p^{n+m} Z_p` in `p^n Z_p`, labelled by `r` with `x = p^n r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BallClass(pub u64);

impl BallClass {
    pub fn representative(&self, level: &Level) -> PadicNumber {
        let n = level.n() as i64;
        PadicNumber::from_i64(level.p(), self.0 as i64, level.precision() - n).shift(n)
    }

    pub fn from_padic(level: &Level, x: &PadicNumber) -> Result<Self> {
        let n = level.n() as i64;
        if x.valuation() < n {
            return Err(Error::Domain(format!("{x} is not in p^{n} Z_p")));
        }
        Ok(BallClass(x.residue(level.big_m())? / pow_u64(level.p(), n)))
    }
}

/// A point `(a, [t])` of the truncated phase space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct XnElement {
    pub unit: UnitClass,
    pub gamma: GammaClass,
}

impl XnElement {
    pub const IDENTITY: XnElement = XnElement {
        unit: UnitClass(0),
        gamma: GammaClass(0),
    };

    pub fn new(unit: u64, gamma: u64) -> Self {
        XnElement {
            unit: UnitClass(unit),
            gamma: GammaClass(gamma),
        }
    }

    pub fn index(&self, level: &Level) -> usize {
        self.unit.0 as usize * level.side() + self.gamma.0 as usize
    }

    pub fn from_index(level: &Level, i: usize) -> Self {
        let side = level.side();
        XnElement::new((i / side) as u64, (i % side) as u64)
    }

    fn validate(&self, level: &Level) -> Result<()> {
        level.check(self.unit.0, "unit")?;
        level.check(self.gamma.0, "gamma")
    }
}

/// `(a,[t])·(a',[t']) = (aa', [a'^{-1}t + t'])`.
pub fn xn_mul(level: &Level, g: &XnElement, h: &XnElement) -> Result<XnElement> {
    g.validate(level)?;
    h.validate(level)?;
    let a = g.unit.representative(level);
    let b = h.unit.representative(level);
    let t = g.gamma.representative(level);
    let u = h.gamma.representative(level);
    let prod_t = b.invert()? * t + u;
    Ok(XnElement {
        unit: UnitClass::from_padic(level, &(a * b))?,
        gamma: GammaClass::from_padic(level, &prod_t)?,
    })
}

/// `(a,[t])^{-1} = (a^{-1}, [-a t])`.
pub fn xn_inv(level: &Level, g: &XnElement) -> Result<XnElement> {
    g.validate(level)?;
    let a = g.unit.representative(level);
    let t = g.gamma.representative(level);
    Ok(XnElement {
        unit: UnitClass::from_padic(level, &a.invert()?)?,
        gamma: GammaClass::from_padic(level, &-(a * t))?,
    })
}

/// The `p^{2m}` points of `X_n` at level `m` with multiplication and
/// inversion tables in canonical order.
#[derive(Debug, Clone)]
pub struct XnGrid {
    level: Level,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl XnGrid {
    pub fn new(level: Level) -> Result<Self> {
        let len = level.side() * level.side();
        let elems: Vec<XnElement> = (0..len).map(|i| XnElement::from_index(&level, i)).collect();
        let reps: Vec<(PadicNumber, PadicNumber)> = elems
            .iter()
            .map(|g| {
                (
                    g.unit.representative(&level),
                    g.gamma.representative(&level),
                )
            })
            .collect();
        let invs: Vec<PadicNumber> = reps
            .iter()
            .map(|(a, _)| a.invert())
            .collect::<Result<_>>()?;
        let mut mul = Vec::with_capacity(len * len);
        for (a, t) in &reps {
            for ((b, u), b_inv) in reps.iter().zip(&invs) {
                let g = XnElement {
                    unit: UnitClass::from_padic(&level, &(*a * *b))?,
                    gamma: GammaClass::from_padic(&level, &(*b_inv * *t + *u))?,
                };
                mul.push(g.index(&level) as u32);
            }
        }
        let inv = elems
            .iter()
            .map(|g| xn_inv(&level, g).map(|h| h.index(&level) as u32))
            .collect::<Result<Vec<_>>>()?;
        let identity = XnElement::IDENTITY.index(&level);
        for i in 0..len {
            if mul[i * len + inv[i] as usize] as usize != identity {
                return Err(Error::ParameterMismatch(format!(
                    "group tables inconsistent at element {i}"
                )));
            }
        }
        Ok(XnGrid { level, mul, inv })
    }

    #[inline]
    pub fn level(&self) -> &Level {
        &self.level
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.inv.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv.is_empty()
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.len() + j] as usize
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inv[i] as usize
    }

    pub fn element(&self, i: usize) -> XnElement {
        XnElement::from_index(&self.level, i)
    }

    pub fn elements(&self) -> impl Iterator<Item = XnElement> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }
}
