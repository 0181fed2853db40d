//! Root ordering, translation normalization, critical points and admissibility.

use alloc::vec::Vec;

use crate::numeric::{principal_sqrt, ComplexValue, ToleranceConfig};

/// Largest root modulus accepted by [`order_roots`].
pub const MAX_ROOT_MAGNITUDE: f64 = 1e100;
/// Smallest accepted ratio of root separation to root magnitude.
pub const MIN_SEPARATION_RATIO: f64 = 1e-12;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CubicError {
    #[error("roots must be finite")]
    NonFinite,
    #[error("roots are not distinct")]
    RootsNotDistinct,
    #[error("two roots have equal real parts")]
    RootRealPartsEqual,
    #[error("critical points have equal real parts")]
    CriticalRealPartsEqual,
    #[error("root magnitudes or separations are outside the supported range")]
    ScaleOutOfRange,
}

/// Three distinct roots ordered by real part, with labeled critical points.
///
/// Either `coincident` holds and `z1 == z2`, or `Re z1 < Re z2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderedCubic {
    pub w1: ComplexValue,
    pub w2: ComplexValue,
    pub w3: ComplexValue,
    pub z1: ComplexValue,
    pub z2: ComplexValue,
    pub coincident: bool,
}

impl OrderedCubic {
    pub fn roots(&self) -> [ComplexValue; 3] {
        [self.w1, self.w2, self.w3]
    }

    /// Diameter of the root set; the length unit for scale-aware tolerances.
    pub fn diameter(&self) -> f64 {
        diameter(self.w1, self.w2, self.w3)
    }

    pub fn derivative_at(&self, z: ComplexValue) -> ComplexValue {
        derivative_at(self.w1, self.w2, self.w3, z)
    }
}

/// `p'(z)` for `p(z) = (z − w1)(z − w2)(z − w3)`.
pub fn derivative_at(
    w1: ComplexValue,
    w2: ComplexValue,
    w3: ComplexValue,
    z: ComplexValue,
) -> ComplexValue {
    let e1 = w1 + w2 + w3;
    let e2 = w1 * w2 + w1 * w3 + w2 * w3;
    z.square() * 3.0 - e1 * z * 2.0 + e2
}

pub(crate) fn diameter(w1: ComplexValue, w2: ComplexValue, w3: ComplexValue) -> f64 {
    (w1 - w2).abs().max((w2 - w3).abs()).max((w3 - w1).abs())
}

/// The radicand `w1² + w2² + w3² − w1w3 − w1w2 − w2w3`, evaluated through
/// root differences so that it is unaffected by a common translation.
pub fn critical_radicand(w1: ComplexValue, w2: ComplexValue, w3: ComplexValue) -> ComplexValue {
    let a = w1 - w2;
    let b = w2 - w3;
    let c = w3 - w1;
    (a.square() + b.square() + c.square()) * 0.5
}

/// Both zeros of `p'`, `(1/3)(w1 + w2 + w3 ∓ √radicand)` with the principal
/// root. The first value never has the larger real part.
pub fn critical_points_direct(
    w1: ComplexValue,
    w2: ComplexValue,
    w3: ComplexValue,
) -> (ComplexValue, ComplexValue) {
    let s = w1 + w2 + w3;
    let r = principal_sqrt(critical_radicand(w1, w2, w3));
    ((s - r) / 3.0, (s + r) / 3.0)
}

/// Sorts three roots by real part and labels the critical points.
pub fn order_roots(
    r1: ComplexValue,
    r2: ComplexValue,
    r3: ComplexValue,
    tol: &ToleranceConfig,
) -> Result<OrderedCubic, CubicError> {
    if !(r1.is_finite() && r2.is_finite() && r3.is_finite()) {
        return Err(CubicError::NonFinite);
    }
    let scale = diameter(r1, r2, r3);
    let min_sep = (r1 - r2).abs().min((r2 - r3).abs()).min((r3 - r1).abs());
    if scale == 0.0 || min_sep <= tol.eq_tol * scale {
        return Err(CubicError::RootsNotDistinct);
    }
    let magnitude = r1.abs().max(r2.abs()).max(r3.abs());
    if magnitude > MAX_ROOT_MAGNITUDE || min_sep < MIN_SEPARATION_RATIO * magnitude {
        return Err(CubicError::ScaleOutOfRange);
    }

    let mut roots = [r1, r2, r3];
    roots.sort_by(|a, b| a.re.total_cmp(&b.re));
    let [w1, w2, w3] = roots;
    let band = tol.eq_tol * scale;
    if w2.re - w1.re <= band || w3.re - w2.re <= band {
        return Err(CubicError::RootRealPartsEqual);
    }

    let radicand = critical_radicand(w1, w2, w3);
    if radicand.abs() <= tol.eq_tol * scale * scale {
        let z = (w1 + w2 + w3) / 3.0;
        return Ok(OrderedCubic {
            w1,
            w2,
            w3,
            z1: z,
            z2: z,
            coincident: true,
        });
    }
    let (z1, z2) = critical_points_direct(w1, w2, w3);
    if z2.re - z1.re <= band {
        return Err(CubicError::CriticalRealPartsEqual);
    }
    Ok(OrderedCubic {
        w1,
        w2,
        w3,
        z1,
        z2,
        coincident: false,
    })
}

/// A configuration translated so that `w1 + w3 = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalizedCubic {
    pub w2n: ComplexValue,
    pub w3n: ComplexValue,
    pub offset: ComplexValue,
    /// `w2n / w3n`.
    pub w: ComplexValue,
}

impl NormalizedCubic {
    pub fn w1n(&self) -> ComplexValue {
        -self.w3n
    }

    /// Adds the offset back.
    pub fn denormalize(&self) -> [ComplexValue; 3] {
        [
            self.w1n() + self.offset,
            self.w2n + self.offset,
            self.w3n + self.offset,
        ]
    }
}

pub fn normalize(c: &OrderedCubic) -> NormalizedCubic {
    let offset = (c.w1 + c.w3) * 0.5;
    let w3n = (c.w3 - c.w1) * 0.5;
    let w2n = c.w2 - offset;
    NormalizedCubic {
        w2n,
        w3n,
        offset,
        w: w2n / w3n,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdmissibilityViolation {
    /// `Re w3 ≤ 0`.
    W3NotInRightHalfPlane,
    /// `Re w2 ≥ Re w3`.
    W2NotLeftOfW3,
    /// `Re w2 ≤ Re w1 = −Re w3`; required by the root ordering.
    W2NotRightOfW1,
    /// `w2 + w3 = 0` or `w2 = w3`.
    RootsCoincide,
    /// `3w3² + w2²` lies on the cut: the critical points are distinct but
    /// share their real part.
    RadicandOnCut,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// `w` lies, within `boundary_tol`, on `{Re w = 0, |Im w| ≥ √3}`.
    pub on_boundary: bool,
    /// `3w3² + w2² = 0`: a double critical point.
    pub coincident: bool,
    pub reasons: Vec<AdmissibilityViolation>,
}

/// Checks whether the normalized pair `(w2, w3)` admits the closed-form ratios.
///
/// Besides the four defining conditions this also enforces `Re w1 < Re w2`.
/// The double critical point `3w3² + w2² = 0` is accepted and flagged as
/// `coincident`.
pub fn assess_admissibility(
    w2n: ComplexValue,
    w3n: ComplexValue,
    tol: &ToleranceConfig,
) -> AdmissibilityReport {
    let mut reasons = Vec::new();
    let scale = diameter(-w3n, w2n, w3n);
    let band = tol.eq_tol * scale;

    if w3n.re <= band {
        reasons.push(AdmissibilityViolation::W3NotInRightHalfPlane);
    }
    if w2n.re >= w3n.re - band {
        reasons.push(AdmissibilityViolation::W2NotLeftOfW3);
    }
    if w2n.re <= -w3n.re + band {
        reasons.push(AdmissibilityViolation::W2NotRightOfW1);
    }
    if scale == 0.0 || (w2n + w3n).abs() <= band || (w2n - w3n).abs() <= band {
        reasons.push(AdmissibilityViolation::RootsCoincide);
    }

    let radicand = w3n.square() * 3.0 + w2n.square();
    let coincident = scale > 0.0 && radicand.abs() <= tol.eq_tol * scale * scale;
    if !coincident && (2.0 / 3.0) * principal_sqrt(radicand).re <= band {
        reasons.push(AdmissibilityViolation::RadicandOnCut);
    }

    let on_boundary = if w3n.abs() > 0.0 {
        let w = w2n / w3n;
        w.re.abs() <= tol.boundary_tol && w.im.abs() >= SQRT_3 - tol.boundary_tol
    } else {
        false
    };

    AdmissibilityReport {
        admissible: reasons.is_empty(),
        on_boundary,
        coincident,
        reasons,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Configuration {
    Generic,
    Collinear,
    Equilateral,
}

impl Configuration {
    pub fn as_str(self) -> &'static str {
        match self {
            Configuration::Generic => "generic",
            Configuration::Collinear => "collinear",
            Configuration::Equilateral => "equilateral",
        }
    }
}

/// Shape class of the root triangle.
///
/// Equilateral is decided through the radicand: it vanishes exactly when the
/// roots form an equilateral triangle, and to first order its relative size
/// is `√3` times the relative side-length defect. This is the same test that
/// marks a cubic `coincident`, so the two never disagree.
pub fn classify_roots(
    w1: ComplexValue,
    w2: ComplexValue,
    w3: ComplexValue,
    tol: &ToleranceConfig,
) -> Configuration {
    let scale = diameter(w1, w2, w3);
    let scale_sq = scale * scale;
    if critical_radicand(w1, w2, w3).abs() <= tol.eq_tol * scale_sq {
        return Configuration::Equilateral;
    }
    let area = 0.5 * ((w2 - w1) * (w3 - w1).conj()).im.abs();
    if area <= tol.eq_tol * scale_sq {
        Configuration::Collinear
    } else {
        Configuration::Generic
    }
}

pub fn classify_configuration(c: &OrderedCubic, tol: &ToleranceConfig) -> Configuration {
    classify_roots(c.w1, c.w2, c.w3, tol)
}
