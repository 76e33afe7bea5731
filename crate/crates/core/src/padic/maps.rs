//! Structure maps on the higher principal units and the character Ψ.

use crate::error::{Error, Result};
use crate::phase::Phase;

use super::number::{pow_u64, PadicNumber};

fn require_u1(u: &PadicNumber, what: &str) -> Result<()> {
    if u.prime() == 2 {
        return Err(Error::Domain("p must be odd".into()));
    }
    if !u.in_principal_units(1) {
        return Err(Error::Domain(format!(
            "{what}: {u} is not in U_1 = 1 + pZ_p"
        )));
    }
    Ok(())
}

/// The square root `U_n → U_n`, inverse of `a ↦ a²`.
///
/// Newton iteration `s ← (s + u/s)/2` seeded at 1; the number of correct
/// digits doubles each step.
pub fn sqrt_unit(u: &PadicNumber) -> Result<PadicNumber> {
    require_u1(u, "sqrt_unit")?;
    let p = u.prime();
    let prec = u.precision();
    let mut s = PadicNumber::one(p, prec);
    // ceil(log2(prec)) + 2 steps is always enough from the seed 1.
    let max_steps = 2 + (64 - (prec.max(1) as u64).leading_zeros()) as usize;
    for _ in 0..max_steps {
        let next = (s + u.div(&s)?).div_small(2);
        if next.congruent(&s) {
            s = next;
            break;
        }
        s = next;
    }
    debug_assert!(s.square().congruent(u));
    Ok(s)
}

/// `φ(a) = a − a⁻¹`, mapping `U_n` onto `p^n Z_p`.
pub fn phi(a: &PadicNumber) -> Result<PadicNumber> {
    require_u1(a, "phi")?;
    Ok(*a - a.invert()?)
}

/// The inverse of [`phi`] on `p^n Z_p`: `a = x/2 + (1 + x²/4)^{1/2}`.
pub fn phi_inv(x: &PadicNumber, n: i64) -> Result<PadicNumber> {
    if x.valuation() < n.max(1) {
        return Err(Error::Domain(format!(
            "phi_inv: {x} has valuation {} < {n}",
            x.valuation()
        )));
    }
    let one = PadicNumber::one(x.prime(), x.precision());
    let radicand = one + x.square().div_small(4);
    Ok(x.div_small(2) + sqrt_unit(&radicand)?)
}

/// The exact phase of `Ψ(x) = e^{2πi·frac(x)}`, i.e. the sum of the digits of
/// `x` at negative powers of `p`.
pub fn psi_phase(x: &PadicNumber) -> Result<Phase> {
    if x.precision() < 0 {
        return Err(Error::Precision(format!(
            "Ψ needs all negative-power digits, but {x} is only known mod p^{}",
            x.precision()
        )));
    }
    if x.is_zero() || x.valuation() >= 0 {
        return Ok(Phase::ZERO);
    }
    let k = -x.valuation();
    let den = pow_u64(x.prime(), k);
    Ok(Phase::new((x.unit_residue() % den) as i128, den))
}
