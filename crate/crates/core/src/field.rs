//! Local fields admitted by the calculus.
//!
//! Only `Q_p` for an odd prime `p` is implemented. Residue characteristic 2
//! is rejected at construction: the square map and `a ↦ a - a⁻¹` are only
//! isometric bijections of `U_n` when 2 is a unit.

use crate::error::{Error, Result};

/// The pieces of a non-Archimedean local field the constructions depend on.
pub trait LocalField {
    /// Characteristic `p` of the residue field.
    fn residue_characteristic(&self) -> u64;
    /// Cardinality `q` of the residue field.
    fn residue_cardinality(&self) -> u64;
}

/// The field of p-adic numbers for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Qp {
    p: u64,
}

impl Qp {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::Config(
                "p = 2 is excluded: the field must not be of characteristic 2 nor an extension of Q_2 \
                 (2 has to be a unit for the square root and a ↦ a - 1/a to be isometric bijections of U_n)"
                    .into(),
            ));
        }
        if !is_prime(p) {
            return Err(Error::Config(format!("{p} is not a prime")));
        }
        Ok(Qp { p })
    }

    #[inline]
    pub fn prime(&self) -> u64 {
        self.p
    }
}

impl LocalField for Qp {
    fn residue_characteristic(&self) -> u64 {
        self.p
    }

    fn residue_cardinality(&self) -> u64 {
        self.p
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
