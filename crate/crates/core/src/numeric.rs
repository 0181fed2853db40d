//! Complex scalar type, the principal square root and the tolerance policy.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

/// A complex number with finite components.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl ComplexValue {
    pub const ZERO: Self = Self::new(0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0);

    #[inline]
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    #[inline]
    pub const fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    #[inline]
    pub const fn imag(im: f64) -> Self {
        Self { re: 0.0, im }
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.re
    }

    #[inline]
    pub fn im(self) -> f64 {
        self.im
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    /// Modulus, computed without intermediate overflow.
    #[inline]
    pub fn abs(self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    /// Argument in `(-π, π]`.
    #[inline]
    pub fn arg(self) -> f64 {
        libm::atan2(self.im, self.re)
    }

    #[inline]
    pub fn scale(self, k: f64) -> Self {
        Self::new(self.re * k, self.im * k)
    }

    #[inline]
    pub fn square(self) -> Self {
        self * self
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Multiplicative inverse, scaled to avoid overflow for large moduli.
    pub fn recip(self) -> Self {
        Self::ONE / self
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_sign_negative() {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl From<f64> for ComplexValue {
    fn from(re: f64) -> Self {
        Self::real(re)
    }
}

impl Add for ComplexValue {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for ComplexValue {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for ComplexValue {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Div for ComplexValue {
    type Output = Self;
    /// Smith's algorithm.
    fn div(self, rhs: Self) -> Self {
        if libm::fabs(rhs.re) >= libm::fabs(rhs.im) {
            let r = rhs.im / rhs.re;
            let d = rhs.re + rhs.im * r;
            Self::new((self.re + self.im * r) / d, (self.im - self.re * r) / d)
        } else {
            let r = rhs.re / rhs.im;
            let d = rhs.re * r + rhs.im;
            Self::new((self.re * r + self.im) / d, (self.im * r - self.re) / d)
        }
    }
}

impl Neg for ComplexValue {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Add<f64> for ComplexValue {
    type Output = Self;
    #[inline]
    fn add(self, rhs: f64) -> Self {
        Self::new(self.re + rhs, self.im)
    }
}

impl Sub<f64> for ComplexValue {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: f64) -> Self {
        Self::new(self.re - rhs, self.im)
    }
}

impl Mul<f64> for ComplexValue {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Div<f64> for ComplexValue {
    type Output = Self;
    #[inline]
    fn div(self, rhs: f64) -> Self {
        Self::new(self.re / rhs, self.im / rhs)
    }
}

/// Principal square root.
///
/// The result has `Re ≥ 0`. On the negative real axis the value is the limit
/// from the upper half-plane, `i·√|z|`, regardless of the sign of a zero
/// imaginary part.
pub fn principal_sqrt(z: ComplexValue) -> ComplexValue {
    let (x, y) = (z.re, z.im);
    if x == 0.0 && y == 0.0 {
        return ComplexValue::ZERO;
    }
    let r = z.abs();
    if x >= 0.0 {
        let t = libm::sqrt(0.5 * (r + x));
        ComplexValue::new(t, y / (2.0 * t))
    } else {
        let t = libm::sqrt(0.5 * (r - x));
        let im = if y < 0.0 { -t } else { t };
        ComplexValue::new(libm::fabs(y) / (2.0 * t), im)
    }
}

/// Membership of `z` in the closed band around the nonpositive real axis.
pub fn in_gamma(z: ComplexValue, tol: &ToleranceConfig) -> bool {
    libm::fabs(z.im) <= tol.boundary_tol && z.re <= tol.boundary_tol
}

#[inline]
pub fn approx_eq(a: ComplexValue, b: ComplexValue, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Tolerance policy shared by every module.
///
/// `eq_tol` is applied relative to the scale of a configuration (its diameter)
/// wherever a length is compared; for the dimensionless quantities `w`, `σ₁`,
/// `σ₂` it is absolute.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToleranceConfig {
    pub eq_tol: f64,
    pub boundary_tol: f64,
    pub identity_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eq_tol: 1e-9,
            boundary_tol: 1e-9,
            identity_tol: 1e-10,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ToleranceError {
    #[error("tolerances must be finite and strictly positive")]
    NotPositive,
    #[error("eq_tol must not exceed boundary_tol")]
    Inverted,
}

impl ToleranceConfig {
    pub fn new(eq_tol: f64, boundary_tol: f64, identity_tol: f64) -> Result<Self, ToleranceError> {
        let cfg = Self {
            eq_tol,
            boundary_tol,
            identity_tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ToleranceError> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !(ok(self.eq_tol) && ok(self.boundary_tol) && ok(self.identity_tol)) {
            return Err(ToleranceError::NotPositive);
        }
        if self.eq_tol > self.boundary_tol {
            return Err(ToleranceError::Inverted);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    #[test]
    fn sqrt_positive_real_and_zero() {
        assert_eq!(principal_sqrt(c(4.0, 0.0)), c(2.0, 0.0));
        assert_eq!(principal_sqrt(c(0.0, 0.0)), c(0.0, 0.0));
        assert_eq!(principal_sqrt(c(-0.0, -0.0)), c(0.0, 0.0));
    }

    #[test]
    fn sqrt_of_i_squares_back() {
        let r = principal_sqrt(ComplexValue::I);
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert!(approx_eq(r, c(h, h), 1e-15));
        assert!(approx_eq(r * r, ComplexValue::I, 4.0 * f64::EPSILON));
    }

    #[test]
    fn sqrt_on_cut_uses_upper_limit() {
        assert_eq!(principal_sqrt(c(-4.0, 0.0)), c(0.0, 2.0));
        // a negative zero imaginary part does not flip the branch
        assert_eq!(principal_sqrt(c(-4.0, -0.0)), c(0.0, 2.0));
        let r = principal_sqrt(c(-4.0, 0.0));
        assert_eq!(r * r, c(-4.0, 0.0));
    }

    #[test]
    fn sqrt_just_below_cut_is_continuous_from_below() {
        let r = principal_sqrt(c(-4.0, -1e-300));
        assert!(r.re >= 0.0);
        assert!((r.im + 2.0).abs() < 1e-15);
    }

    #[test]
    fn gamma_membership() {
        let tol = ToleranceConfig::default();
        assert!(in_gamma(c(-5.0, 0.0), &tol));
        assert!(in_gamma(c(0.0, 0.0), &tol));
        assert!(!in_gamma(c(1.0, 1.0), &tol));
        assert!(!in_gamma(c(-5.0, 1e-6), &tol));
        assert!(in_gamma(c(-5.0, 5e-10), &tol));
    }

    #[test]
    fn approx_eq_examples() {
        assert!(approx_eq(c(1.0, 0.0), c(1.0, 0.0), 1e-9));
        assert!(!approx_eq(c(1.0, 0.0), c(1.0, 2e-9), 1e-9));
    }

    #[test]
    fn tolerance_validation() {
        assert!(ToleranceConfig::default().validate().is_ok());
        assert_eq!(
            ToleranceConfig::new(0.0, 1e-9, 1e-10),
            Err(ToleranceError::NotPositive)
        );
        assert_eq!(
            ToleranceConfig::new(1e-6, 1e-9, 1e-10),
            Err(ToleranceError::Inverted)
        );
    }

    #[test]
    fn division_matches_definition() {
        let a = c(-2.0, 8.0);
        let b = c(4.0, 1.0);
        let q = a / b;
        assert!(approx_eq(q, c(0.0, 2.0), 1e-15));
        assert!(approx_eq(q * b, a, 1e-14));
    }
}
