use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest exponent `r` with `p^r <= 2^62`; bounds the relative precision so
/// residues and their products fit in `u64` / `u128`.
pub fn max_relative_precision(p: u64) -> i64 {
    let mut r = 0i64;
    let mut acc: u128 = 1;
    while acc * (p as u128) <= 1u128 << 62 {
        acc *= p as u128;
        r += 1;
    }
    r
}

pub(crate) fn pow_u64(p: u64, e: i64) -> u64 {
    debug_assert!(e >= 0);
    let mut acc = 1u64;
    for _ in 0..e {
        acc = acc.checked_mul(p).expect("p-adic modulus overflow");
    }
    acc
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `a` modulo `m`, for `gcd(a, m) = 1`.
pub(crate) fn invmod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// An element of `Q_p` known modulo `p^precision`.
///
/// The value is `p^valuation · unit`, where `unit` is a residue modulo
/// `p^(precision - valuation)` that is prime to `p`. An element whose known
/// digits are all zero is the zero-at-precision element; it is stored with
/// `valuation == precision` and `unit == 0`.
///
/// Precision bookkeeping follows the usual worst case: a sum is known to the
/// smaller of the two absolute precisions, a product `x·y` to
/// `min(N_x + v_y, N_y + v_x)`, and an inverse keeps the relative precision
/// (absolute precision `N - 2v`).
#[derive(Clone, Copy, Debug)]
pub struct PadicNumber {
    prime: u64,
    valuation: i64,
    unit: u64,
    precision: i64,
}

impl PadicNumber {
    pub fn zero(p: u64, precision: i64) -> Self {
        PadicNumber {
            prime: p,
            valuation: precision,
            unit: 0,
            precision,
        }
    }

    pub fn one(p: u64, precision: i64) -> Self {
        Self::from_i64(p, 1, precision)
    }

    /// Builds `p^valuation · residue` from a residue modulo `p^(precision - valuation)`.
    /// The residue need not be prime to `p`; extra factors are absorbed.
    pub fn from_residue(p: u64, valuation: i64, residue: u64, precision: i64) -> Self {
        let r = precision - valuation;
        if r <= 0 {
            return Self::zero(p, precision);
        }
        Self::check_relative(p, r);
        let md = pow_u64(p, r);
        Self::normalize(p, valuation, residue % md, r)
    }

    pub fn from_i64(p: u64, value: i64, precision: i64) -> Self {
        if value == 0 {
            return Self::zero(p, precision);
        }
        let mut v = 0i64;
        let mut x = value as i128;
        while x % p as i128 == 0 {
            x /= p as i128;
            v += 1;
        }
        let r = precision - v;
        if r <= 0 {
            return Self::zero(p, precision);
        }
        Self::check_relative(p, r);
        let md = pow_u64(p, r);
        let unit = x.rem_euclid(md as i128) as u64;
        PadicNumber {
            prime: p,
            valuation: v,
            unit,
            precision,
        }
    }

    /// `num / den` as a p-adic number known modulo `p^precision`.
    pub fn from_ratio(p: u64, num: i64, den: i64, precision: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDivision);
        }
        let mut k = 0i64;
        let mut d = den as i128;
        while d % p as i128 == 0 {
            d /= p as i128;
            k += 1;
        }
        // num/den = p^-k · num / d, with d a unit.
        let numer = Self::from_i64(p, num, precision + k);
        let unit_den = Self::from_i64(p, d as i64, precision + k);
        Ok((numer * unit_den.invert()?).shift(-k))
    }

    fn check_relative(p: u64, r: i64) {
        assert!(
            r <= max_relative_precision(p),
            "relative precision {r} exceeds the supported maximum {} for p = {p}",
            max_relative_precision(p)
        );
    }

    fn normalize(p: u64, mut valuation: i64, mut x: u64, mut r: i64) -> Self {
        let precision = valuation + r;
        if x == 0 {
            return Self::zero(p, precision);
        }
        while x.is_multiple_of(p) {
            x /= p;
            valuation += 1;
            r -= 1;
        }
        debug_assert!(r > 0);
        PadicNumber {
            prime: p,
            valuation,
            unit: x,
            precision,
        }
    }

    #[inline]
    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// `v(x)`; for the zero-at-precision element this is its precision.
    #[inline]
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    #[inline]
    pub fn precision(&self) -> i64 {
        self.precision
    }

    #[inline]
    pub fn relative_precision(&self) -> i64 {
        self.precision - self.valuation
    }

    /// Unit part as a residue modulo `p^relative_precision`.
    #[inline]
    pub fn unit_residue(&self) -> u64 {
        self.unit
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.unit == 0
    }

    /// Base-p digits of the unit part, least significant first.
    pub fn digits(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.relative_precision().max(0) as usize);
        let mut x = self.unit;
        for _ in 0..self.relative_precision() {
            out.push((x % self.prime) as u8);
            x /= self.prime;
        }
        out
    }

    /// `|x|_p = p^(-v)`, or `None` for the zero-at-precision element.
    pub fn abs(&self) -> Option<AbsValue> {
        (!self.is_zero()).then_some(AbsValue {
            prime: self.prime,
            exponent: -self.valuation,
        })
    }

    /// Multiplication by `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        PadicNumber {
            valuation: self.valuation + k,
            precision: self.precision + k,
            ..*self
        }
    }

    /// Forgets digits at and beyond `p^precision`.
    pub fn reduce(&self, precision: i64) -> Self {
        if precision >= self.precision {
            return *self;
        }
        if precision <= self.valuation {
            return Self::zero(self.prime, precision);
        }
        let r = precision - self.valuation;
        PadicNumber {
            unit: self.unit % pow_u64(self.prime, r),
            precision,
            ..*self
        }
    }

    /// Equality modulo `p^min(N_x, N_y)`.
    pub fn congruent(&self, other: &Self) -> bool {
        self.check_prime(other);
        let prec = self.precision.min(other.precision);
        let a = self.reduce(prec);
        let b = other.reduce(prec);
        a.valuation == b.valuation && a.unit == b.unit
    }

    /// The integer `x mod p^k` in `[0, p^k)`; requires `x ∈ Z_p` known mod `p^k`.
    pub fn residue(&self, k: i64) -> Result<u64> {
        if self.precision < k {
            return Err(Error::Precision(format!(
                "residue mod p^{k} requested from an element known mod p^{}",
                self.precision
            )));
        }
        if self.is_zero() || self.valuation >= k {
            return Ok(0);
        }
        if self.valuation < 0 {
            return Err(Error::Domain(format!(
                "residue of a non-integral element (valuation {})",
                self.valuation
            )));
        }
        let md = pow_u64(self.prime, k);
        Ok(mulmod(
            self.unit % md,
            pow_u64(self.prime, self.valuation),
            md,
        ))
    }

    /// Whether `x ∈ U_n = 1 + p^n Z_p`, as far as the known digits decide.
    pub fn in_principal_units(&self, n: i64) -> bool {
        self.valuation == 0 && (*self - Self::one(self.prime, self.precision)).valuation >= n
    }

    fn check_prime(&self, other: &Self) {
        assert_eq!(
            self.prime, other.prime,
            "p-adic numbers over different primes"
        );
    }

    fn scaled_residue(&self, base_valuation: i64, r: i64, md: u64) -> u64 {
        if self.is_zero() {
            return 0;
        }
        let shift = self.valuation - base_valuation;
        if shift >= r {
            return 0;
        }
        mulmod(self.unit % md, pow_u64(self.prime, shift), md)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_prime(other);
        let p = self.prime;
        let prec = self.precision.min(other.precision);
        let vmin = self.valuation.min(other.valuation);
        if prec <= vmin {
            return Self::zero(p, prec);
        }
        let r = prec - vmin;
        let md = pow_u64(p, r);
        let x = self.scaled_residue(vmin, r, md);
        let y = other.scaled_residue(vmin, r, md);
        Self::normalize(p, vmin, ((x as u128 + y as u128) % md as u128) as u64, r)
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return *self;
        }
        let md = pow_u64(self.prime, self.relative_precision());
        PadicNumber {
            unit: md - self.unit,
            ..*self
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_prime(other);
        let p = self.prime;
        if self.is_zero() || other.is_zero() {
            let prec = (self.precision + other.valuation).min(other.precision + self.valuation);
            return Self::zero(p, prec);
        }
        let r = self.relative_precision().min(other.relative_precision());
        let md = pow_u64(p, r);
        PadicNumber {
            prime: p,
            valuation: self.valuation + other.valuation,
            unit: mulmod(self.unit % md, other.unit % md, md),
            precision: self.valuation + other.valuation + r,
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Multiplicative inverse; the relative precision is preserved.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let r = self.relative_precision();
        let md = pow_u64(self.prime, r);
        let unit = invmod(self.unit, md).ok_or(Error::ZeroDivision)?;
        Ok(PadicNumber {
            prime: self.prime,
            valuation: -self.valuation,
            unit,
            precision: r - self.valuation,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.invert()?))
    }

    /// Division by a small integer prime to `p` (2 and 4 in the closed forms).
    pub fn div_small(&self, d: i64) -> Self {
        let den = Self::from_i64(self.prime, d, self.relative_precision().max(1));
        debug_assert_eq!(den.valuation, 0, "div_small expects a unit divisor");
        self.mul(&den.invert().expect("unit divisor"))
    }
}

impl PartialEq for PadicNumber {
    /// Congruence at the common precision (not transitive across precisions).
    fn eq(&self, other: &Self) -> bool {
        self.congruent(other)
    }
}

impl Add for PadicNumber {
    type Output = PadicNumber;
    fn add(self, rhs: Self) -> Self {
        PadicNumber::add(&self, &rhs)
    }
}

impl Sub for PadicNumber {
    type Output = PadicNumber;
    fn sub(self, rhs: Self) -> Self {
        PadicNumber::sub(&self, &rhs)
    }
}

impl Mul for PadicNumber {
    type Output = PadicNumber;
    fn mul(self, rhs: Self) -> Self {
        PadicNumber::mul(&self, &rhs)
    }
}

impl Neg for PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> Self {
        PadicNumber::neg(&self)
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O({}^{})", self.prime, self.precision);
        }
        write!(
            f,
            "{}·{}^{} + O({}^{})",
            self.unit, self.prime, self.valuation, self.prime, self.precision
        )
    }
}

/// The exact absolute value `p^exponent` of a nonzero p-adic number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbsValue {
    pub prime: u64,
    pub exponent: i64,
}

impl AbsValue {
    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    pub fn to_f64(&self) -> f64 {
        (self.prime as f64).powi(self.exponent as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 3;

    #[test]
    fn invert_four_mod_27() {
        let four = PadicNumber::from_i64(P, 4, 3);
        let inv = four.invert().unwrap();
        assert_eq!(inv.residue(3).unwrap(), 7);
        assert_eq!((4 * 7) % 27, 1);
    }

    #[test]
    fn invert_one_and_p() {
        let one = PadicNumber::one(P, 6);
        assert!(one.invert().unwrap().congruent(&one));
        let three = PadicNumber::from_i64(P, 3, 6);
        let inv = three.invert().unwrap();
        assert_eq!(inv.valuation(), -1);
        assert_eq!(inv.unit_residue(), 1);
        assert_eq!(inv.precision(), 4);
    }

    #[test]
    fn invert_zero_fails() {
        let z = PadicNumber::from_i64(P, 27, 3);
        assert!(z.is_zero());
        assert_eq!(z.invert().unwrap_err(), Error::ZeroDivision);
    }

    #[test]
    fn negative_numbers_use_expansion() {
        let m3 = PadicNumber::from_i64(P, -3, 2);
        assert_eq!(m3.residue(2).unwrap(), 6);
        assert_eq!(m3.digits(), vec![2]);
    }

    #[test]
    fn ratio_one_ninth() {
        let x = PadicNumber::from_ratio(P, 1, 9, 4).unwrap();
        assert_eq!(x.valuation(), -2);
        assert_eq!(x.unit_residue(), 1);
        let y = PadicNumber::from_ratio(P, 7, 9, 4).unwrap();
        assert_eq!(y.digits()[..2], [1, 2]);
    }

    #[test]
    fn precision_bookkeeping() {
        let a = PadicNumber::from_i64(P, 5, 4);
        let b = PadicNumber::from_i64(P, 9, 6);
        assert_eq!((a + b).precision(), 4);
        // min(N_a + v_b, N_b + v_a) = min(4 + 2, 6 + 0)
        assert_eq!((a * b).precision(), 6);
        let z = PadicNumber::zero(P, 3);
        assert_eq!((z * b).precision(), 5);
    }

    #[test]
    fn sum_cancels_to_zero_at_precision() {
        let a = PadicNumber::from_i64(P, 10, 3);
        let b = PadicNumber::from_i64(P, -10, 3);
        let s = a + b;
        assert!(s.is_zero());
        assert_eq!(s.precision(), 3);
    }

    #[test]
    fn abs_value() {
        let x = PadicNumber::from_ratio(P, 2, 27, 5).unwrap();
        assert_eq!(x.abs().unwrap().exponent, 3);
        assert!(PadicNumber::zero(P, 5).abs().is_none());
    }

    #[test]
    fn principal_units() {
        let a = PadicNumber::from_i64(P, 10, 5);
        assert!(a.in_principal_units(2));
        assert!(!a.in_principal_units(3));
        assert!(!PadicNumber::from_i64(P, 2, 5).in_principal_units(1));
    }

    #[test]
    fn residue_of_fraction_is_error() {
        let x = PadicNumber::from_ratio(P, 1, 3, 4).unwrap();
        assert!(x.residue(2).is_err());
    }
}
