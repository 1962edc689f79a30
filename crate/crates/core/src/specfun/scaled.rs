use std::ops::{Mul, Sub};

use num_complex::Complex;

use crate::real::Real;

/// A nonzero complex number stored as `exp(log_modulus) * exp(i * phase)`,
/// with the phase kept in `(-pi, pi]`. Zero is `log_modulus = -inf`.
///
/// Kernel values and truncated exponential sums swing over thousands of
/// orders of magnitude before their Gaussian weights pull them back; keeping
/// the modulus in log scale makes those products and ratios exact while the
/// phase arithmetic stays ordinary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex<T> {
    log_modulus: T,
    phase: T,
}

/// Reduces an angle into `(-pi, pi]`.
pub(crate) fn wrap_phase<T: Real>(phi: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut r = phi % two_pi;
    if r > T::PI() {
        r -= two_pi;
    } else if r <= -T::PI() {
        r += two_pi;
    }
    r
}

impl<T: Real> ScaledComplex<T> {
    /// Builds a value from its log-modulus and phase; the phase is wrapped
    /// into `(-pi, pi]`.
    pub fn new(log_modulus: T, phase: T) -> Self {
        if log_modulus == T::neg_infinity() {
            return Self::zero();
        }
        ScaledComplex {
            log_modulus,
            phase: wrap_phase(phase),
        }
    }

    /// The representation of zero: `log_modulus = -inf`, `phase = 0`.
    pub fn zero() -> Self {
        ScaledComplex {
            log_modulus: T::neg_infinity(),
            phase: T::zero(),
        }
    }

    /// The multiplicative unit.
    pub fn one() -> Self {
        ScaledComplex {
            log_modulus: T::zero(),
            phase: T::zero(),
        }
    }

    pub fn from_complex(c: Complex<T>) -> Self {
        let m = c.norm();
        if m == T::zero() {
            return Self::zero();
        }
        ScaledComplex {
            log_modulus: m.ln(),
            phase: wrap_phase(c.arg()),
        }
    }

    /// Converts back to an ordinary complex number; overflows to infinity
    /// (and underflows to zero) exactly where `exp(log_modulus)` does.
    pub fn to_complex(self) -> Complex<T> {
        Complex::from_polar(self.log_modulus.exp(), self.phase)
    }

    pub fn log_modulus(self) -> T {
        self.log_modulus
    }

    pub fn phase(self) -> T {
        self.phase
    }

    /// `exp(log_modulus)`.
    pub fn modulus(self) -> T {
        self.log_modulus.exp()
    }

    pub fn is_zero(self) -> bool {
        self.log_modulus == T::neg_infinity()
    }

    /// The value divided by `exp(log_scale)`, as an ordinary complex number.
    /// Used to bring two values onto a common scale before adding them.
    pub(crate) fn descale(self, log_scale: T) -> Complex<T> {
        if self.is_zero() {
            return Complex::new(T::zero(), T::zero());
        }
        Complex::from_polar((self.log_modulus - log_scale).exp(), self.phase)
    }
}

impl<T: Real> Mul for ScaledComplex<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        ScaledComplex::new(self.log_modulus + rhs.log_modulus, self.phase + rhs.phase)
    }
}

impl<T: Real> Sub for ScaledComplex<T> {
    type Output = Self;

    /// Difference via a common scale: both operands are brought to the scale
    /// of the larger modulus, subtracted as ordinary complex numbers, and
    /// re-encoded. Cancellation therefore costs ordinary floating-point
    /// accuracy relative to the larger operand, never overflow.
    fn sub(self, rhs: Self) -> Self {
        if rhs.is_zero() {
            return self;
        }
        if self.is_zero() {
            return ScaledComplex::new(rhs.log_modulus, rhs.phase + T::PI());
        }
        let scale = self.log_modulus.max(rhs.log_modulus);
        let d = self.descale(scale) - rhs.descale(scale);
        let m = d.norm();
        if m == T::zero() {
            return Self::zero();
        }
        ScaledComplex::new(scale + m.ln(), d.arg())
    }
}
