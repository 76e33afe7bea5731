//! Exact values of the additive character before complex evaluation.

use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// An element `numerator / denominator` of `Q/Z`, kept reduced with
/// `0 <= numerator < denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Phase {
    numerator: u64,
    denominator: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Phase {
    pub const ZERO: Phase = Phase {
        numerator: 0,
        denominator: 1,
    };

    pub fn new(numerator: i128, denominator: u64) -> Self {
        assert!(denominator > 0, "phase denominator must be positive");
        let num = numerator.rem_euclid(denominator as i128) as u64;
        let g = gcd(num, denominator);
        if num == 0 {
            return Self::ZERO;
        }
        Phase {
            numerator: num / g,
            denominator: denominator / g,
        }
    }

    #[inline]
    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    #[inline]
    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    /// `e^{2πi·self}` in double precision.
    pub fn to_complex(&self) -> Complex64 {
        phase_to_complex(*self)
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        let g = gcd(self.denominator, rhs.denominator);
        let den = self.denominator / g * rhs.denominator;
        let a = self.numerator as i128 * (den / self.denominator) as i128;
        let b = rhs.numerator as i128 * (den / rhs.denominator) as i128;
        Phase::new(a + b, den)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::new(-(self.numerator as i128), self.denominator)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

/// `e^{2πi φ}`. The angle is folded into `(-1/2, 1/2]` turns first so the
/// result is accurate to a few ulps.
pub fn phase_to_complex(phase: Phase) -> Complex64 {
    if phase.is_zero() {
        return Complex64::new(1.0, 0.0);
    }
    let (n, d) = (phase.numerator as f64, phase.denominator as f64);
    let turns = if 2 * phase.numerator > phase.denominator {
        (n - d) / d
    } else {
        n / d
    };
    let (s, c) = (std::f64::consts::TAU * turns).sin_cos();
    Complex64::new(c, s)
}
