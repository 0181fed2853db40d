//! Ratio vectors: the direct definition, the closed forms in `w = w2/w3`, and
//! the formulas on the boundary `w = it, |t| ≥ √3`.
//!
//! The closed form `σ1 = (1/3)(w + 3 − s)/(w + 1)` holds with `s = S/w3`,
//! where `S` is the principal root of `3w3² + w2²`. Since `S² = w3²(3 + w²)`,
//! `s` is one of `±√(3 + w²)`: the `+` sign (the extension `f`) whenever
//! `Re(w3·√(3 + w²)) > 0`, and the `−` sign otherwise. Both cases occur for
//! admissible pairs, so [`ratios_via_w`] selects the sheet from `w3` and records
//! which one it used.

use crate::cubic::{AdmissibilityReport, NormalizedCubic, OrderedCubic};
use crate::numeric::{in_gamma, principal_sqrt, ComplexValue, ToleranceConfig};

pub const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Below this distance from `w = ∓1` the extensions return their limit `1/2`.
pub const REMOVABLE_SINGULARITY_RADIUS: f64 = 1e-7;

/// Slack on `|t| ≥ √3` for boundary parameters.
pub const BOUNDARY_PARAM_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RatioError {
    #[error("w lies on the excluded set Re w = 0, |Im w| ≥ √3")]
    OutsideDomain,
    #[error("boundary parameter must satisfy |t| ≥ √3")]
    BadParameter,
    #[error("configuration is not admissible")]
    NotAdmissible,
}

/// Which formula produced a ratio vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RatioPath {
    /// Definition with critical points from the radical formula.
    Direct,
    /// Double critical point; both ratios use it.
    Coincident,
    /// `f`, `g` on `D` with `s = +√(3 + w²)`.
    Interior,
    /// `D` with `s = −√(3 + w²)`.
    InteriorOppositeSheet,
    /// Boundary formula with `+i√(t² − 3)` (`Im w3 > 0`).
    Boundary,
    /// Boundary formula with `−i√(t² − 3)` (`Im w3 < 0`).
    BoundaryOppositeSheet,
}

impl RatioPath {
    pub fn as_str(self) -> &'static str {
        match self {
            RatioPath::Direct => "direct",
            RatioPath::Coincident => "coincident",
            RatioPath::Interior => "interior",
            RatioPath::InteriorOppositeSheet => "interior-opposite-sheet",
            RatioPath::Boundary => "boundary",
            RatioPath::BoundaryOppositeSheet => "boundary-opposite-sheet",
        }
    }

    /// True for the paths on which the ratios equal `f(w)`, `g(w)` or their
    /// limits on `∂D` approached from within `D` along `Im w3 > 0`.
    pub fn is_principal_sheet(self) -> bool {
        !matches!(
            self,
            RatioPath::InteriorOppositeSheet | RatioPath::BoundaryOppositeSheet
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioVector {
    pub sigma1: ComplexValue,
    pub sigma2: ComplexValue,
    pub path: RatioPath,
}

/// A parameter `t` with `|t| ≥ √3`, standing for `w = it ∈ ∂D`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint {
    t: f64,
}

impl BoundaryPoint {
    pub fn new(t: f64) -> Result<Self, RatioError> {
        if t.is_finite() && t.abs() >= SQRT_3 - BOUNDARY_PARAM_SLACK {
            Ok(Self { t })
        } else {
            Err(RatioError::BadParameter)
        }
    }

    pub fn t(self) -> f64 {
        self.t
    }

    pub fn w(self) -> ComplexValue {
        ComplexValue::imag(self.t)
    }

    /// `√(t² − 3)`, clamped at the endpoints.
    pub fn radical(self) -> f64 {
        libm::sqrt((self.t * self.t - 3.0).max(0.0))
    }
}

pub fn ratios_direct(c: &OrderedCubic) -> RatioVector {
    RatioVector {
        sigma1: (c.z1 - c.w1) / (c.w2 - c.w1),
        sigma2: (c.z2 - c.w2) / (c.w3 - c.w2),
        path: if c.coincident {
            RatioPath::Coincident
        } else {
            RatioPath::Direct
        },
    }
}

/// `(1/3)(w + 3 − s)/(w + 1)` for a chosen root `s` of `3 + w²`.
#[inline]
pub fn sigma1_closed_form(w: ComplexValue, s: ComplexValue) -> ComplexValue {
    (w + 3.0 - s) / ((w + 1.0) * 3.0)
}

/// `(1/3)(−2w + s)/(1 − w)` for a chosen root `s` of `3 + w²`.
#[inline]
pub fn sigma2_closed_form(w: ComplexValue, s: ComplexValue) -> ComplexValue {
    (s - w * 2.0) / ((ComplexValue::ONE - w) * 3.0)
}

/// `√(3 + w²)` on `D`, with the tip `w = ±i√3` snapped to zero.
fn domain_root(w: ComplexValue, tol: &ToleranceConfig) -> Result<ComplexValue, RatioError> {
    let radicand = w.square() + 3.0;
    if radicand.abs() <= tol.boundary_tol {
        return Ok(ComplexValue::ZERO);
    }
    if in_gamma(radicand, tol) {
        return Err(RatioError::OutsideDomain);
    }
    Ok(principal_sqrt(radicand))
}

/// The extension `f` of `σ1` to `D`, equal to `1/2` at `w = −1`.
pub fn f_extension(w: ComplexValue, tol: &ToleranceConfig) -> Result<ComplexValue, RatioError> {
    let s = domain_root(w, tol)?;
    if (w + 1.0).abs() < REMOVABLE_SINGULARITY_RADIUS {
        return Ok(ComplexValue::real(0.5));
    }
    Ok(sigma1_closed_form(w, s))
}

/// The extension `g` of `σ2` to `D`, equal to `1/2` at `w = 1`.
pub fn g_extension(w: ComplexValue, tol: &ToleranceConfig) -> Result<ComplexValue, RatioError> {
    let s = domain_root(w, tol)?;
    if (w - 1.0).abs() < REMOVABLE_SINGULARITY_RADIUS {
        return Ok(ComplexValue::real(0.5));
    }
    Ok(sigma2_closed_form(w, s))
}

/// `σ1` on `∂D` for `Im w3 > 0`: `(1/3)(it + i√(t² − 3) + 3)/(it + 1)`.
pub fn boundary_sigma1(b: BoundaryPoint) -> ComplexValue {
    let w = b.w();
    sigma1_closed_form(w, ComplexValue::imag(-b.radical()))
}

/// `σ1` on `∂D` for `Im w3 < 0`: `(1/3)(it − i√(t² − 3) + 3)/(it + 1)`.
pub fn boundary_sigma1_opposite(b: BoundaryPoint) -> ComplexValue {
    let w = b.w();
    sigma1_closed_form(w, ComplexValue::imag(b.radical()))
}

/// Real and imaginary parts of the two boundary branches:
/// `u1 + i·v1` and `u2 + i·v2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryUv {
    pub u1: f64,
    pub u2: f64,
    pub v1: f64,
    pub v2: f64,
}

pub fn boundary_uv(t: f64) -> Result<BoundaryUv, RatioError> {
    let b = BoundaryPoint::new(t)?;
    let r = b.radical();
    let t2 = t * t;
    let den = 3.0 * (t2 + 1.0);
    Ok(BoundaryUv {
        u1: (t2 + 3.0 + t * r) / den,
        u2: (t2 + 3.0 - t * r) / den,
        v1: (-2.0 * t + r) / den,
        v2: (-2.0 * t - r) / den,
    })
}

/// `a(t) = 9(u1² + v1²)` and `b(t) = 9(u2² + v2²)` in closed form.
pub fn boundary_modulus_sq(t: f64) -> Result<(f64, f64), RatioError> {
    let b = BoundaryPoint::new(t)?;
    let r = b.radical();
    let t2 = t * t;
    let den = t2 + 1.0;
    Ok((
        2.0 * (t2 + 3.0 + t * r) / den,
        2.0 * (t2 + 3.0 - t * r) / den,
    ))
}

/// `σ2 − σ1 = (1/3)(−t² + 3 + 2i√(t² − 3))/(−t² − 1)` on `∂D` (`Im w3 > 0`).
pub fn boundary_sigma_diff(t: f64) -> Result<ComplexValue, RatioError> {
    let b = BoundaryPoint::new(t)?;
    let t2 = t * t;
    let num = ComplexValue::new(3.0 - t2, 2.0 * b.radical());
    Ok(num / (3.0 * (-t2 - 1.0)))
}

/// `σ2` from `σ1` through `(1 − σ1)σ2 = 1/3`.
#[inline]
pub fn sigma2_from_identity(sigma1: ComplexValue) -> ComplexValue {
    ((ComplexValue::ONE - sigma1) * 3.0).recip()
}

/// `|(1 − σ1)σ2 − 1/3|`.
pub fn identity_residual(r: &RatioVector) -> f64 {
    ((ComplexValue::ONE - r.sigma1) * r.sigma2 - 1.0 / 3.0).abs()
}

/// Ratios from the closed forms in `w`.
///
/// A double critical point uses `s = 0`, a boundary point uses the boundary
/// formula matching the sign of `Im w3`, and interior points use `f`, `g` or
/// their opposite-sheet counterparts.
pub fn ratios_via_w(
    n: &NormalizedCubic,
    report: &AdmissibilityReport,
) -> Result<RatioVector, RatioError> {
    if !report.admissible {
        return Err(RatioError::NotAdmissible);
    }
    let w = n.w;
    if report.coincident {
        return Ok(RatioVector {
            sigma1: sigma1_closed_form(w, ComplexValue::ZERO),
            sigma2: sigma2_closed_form(w, ComplexValue::ZERO),
            path: RatioPath::Coincident,
        });
    }
    if report.on_boundary {
        let b = BoundaryPoint::new(w.im).map_err(|_| RatioError::NotAdmissible)?;
        let (sigma1, path) = if n.w3n.im > 0.0 {
            (boundary_sigma1(b), RatioPath::Boundary)
        } else if n.w3n.im < 0.0 {
            (boundary_sigma1_opposite(b), RatioPath::BoundaryOppositeSheet)
        } else {
            return Err(RatioError::NotAdmissible);
        };
        return Ok(RatioVector {
            sigma1,
            sigma2: sigma2_from_identity(sigma1),
            path,
        });
    }

    let root = principal_sqrt(w.square() + 3.0);
    let (s, path) = if (n.w3n * root).re >= 0.0 {
        (root, RatioPath::Interior)
    } else {
        (-root, RatioPath::InteriorOppositeSheet)
    };
    Ok(RatioVector {
        sigma1: sigma1_closed_form(w, s),
        sigma2: sigma2_closed_form(w, s),
        path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::{assess_admissibility, normalize, order_roots};
    use crate::numeric::approx_eq;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }
    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn equilateral_sigma() -> ComplexValue {
        c(0.5, -SQRT_3 / 6.0)
    }

    #[test]
    fn direct_ratios_of_golden_cubics() {
        let t = tol();
        let r = ratios_direct(&order_roots(c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), &t).unwrap());
        assert!(approx_eq(r.sigma1, c(1.0 - SQRT_3 / 3.0, 0.0), 1e-15));
        assert!(approx_eq(r.sigma2, c(SQRT_3 / 3.0, 0.0), 1e-15));
        assert_eq!(r.path, RatioPath::Direct);

        let r =
            ratios_direct(&order_roots(c(-1.0, 0.0), c(0.0, SQRT_3), c(1.0, 0.0), &t).unwrap());
        assert_eq!(r.path, RatioPath::Coincident);
        assert!(approx_eq(r.sigma1, equilateral_sigma(), 1e-15));
        assert!(approx_eq(r.sigma2, equilateral_sigma(), 1e-15));

        let r =
            ratios_direct(&order_roots(c(-4.0, -1.0), c(-2.0, 8.0), c(4.0, 1.0), &t).unwrap());
        assert!(approx_eq(r.sigma1, c(0.6, -0.2), 1e-15));
    }

    #[test]
    fn extensions_at_named_points() {
        let t = tol();
        assert!(approx_eq(
            f_extension(ComplexValue::ZERO, &t).unwrap(),
            c(1.0 - SQRT_3 / 3.0, 0.0),
            1e-15
        ));
        assert_eq!(f_extension(c(-1.0, 0.0), &t).unwrap(), c(0.5, 0.0));
        assert!(approx_eq(
            f_extension(c(0.0, SQRT_3), &t).unwrap(),
            equilateral_sigma(),
            1e-15
        ));

        assert!(approx_eq(
            g_extension(ComplexValue::ZERO, &t).unwrap(),
            c(SQRT_3 / 3.0, 0.0),
            1e-15
        ));
        assert_eq!(g_extension(c(1.0, 0.0), &t).unwrap(), c(0.5, 0.0));
        assert!(approx_eq(
            g_extension(c(0.0, SQRT_3), &t).unwrap(),
            equilateral_sigma(),
            1e-15
        ));
    }

    #[test]
    fn extensions_reject_the_excluded_set() {
        let t = tol();
        assert_eq!(f_extension(c(0.0, 2.0), &t), Err(RatioError::OutsideDomain));
        assert_eq!(g_extension(c(0.0, -5.0), &t), Err(RatioError::OutsideDomain));
        assert_eq!(f_extension(c(1e-12, 2.0), &t), Err(RatioError::OutsideDomain));
        assert!(f_extension(c(1e-3, 2.0), &t).is_ok());
    }

    #[test]
    fn removable_singularities() {
        let t = tol();
        for k in 0..16 {
            let a = k as f64 * core::f64::consts::PI / 8.0;
            let d = c(libm::cos(a), libm::sin(a)) * 9e-8;
            let f = f_extension(c(-1.0, 0.0) + d, &t).unwrap();
            let g = g_extension(c(1.0, 0.0) + d, &t).unwrap();
            assert!((f - c(0.5, 0.0)).abs() <= 1e-6);
            assert!((g - c(0.5, 0.0)).abs() <= 1e-6);
            // just outside the snapping radius the formula is still accurate
            let f = f_extension(c(-1.0, 0.0) + d * 2.0, &t).unwrap();
            assert!((f - c(0.5, 0.0)).abs() <= 1e-6);
        }
    }

    #[test]
    fn boundary_sigma1_values() {
        let b = |t| BoundaryPoint::new(t).unwrap();
        assert!(approx_eq(boundary_sigma1(b(2.0)), c(0.6, -0.2), 1e-15));
        assert!(approx_eq(boundary_sigma1(b(SQRT_3)), equilateral_sigma(), 1e-15));
        let uv = boundary_uv(-2.0).unwrap();
        assert!(approx_eq(boundary_sigma1(b(-2.0)), c(uv.u1, 1.0 / 3.0), 1e-15));
        assert_eq!(BoundaryPoint::new(1.0), Err(RatioError::BadParameter));
        assert_eq!(BoundaryPoint::new(f64::NAN), Err(RatioError::BadParameter));
    }

    #[test]
    fn boundary_uv_values() {
        for t in [SQRT_3, -SQRT_3] {
            let uv = boundary_uv(t).unwrap();
            assert!((uv.u1 - 0.5).abs() < 1e-15 && (uv.u2 - 0.5).abs() < 1e-15);
        }
        assert!((boundary_uv(-2.0).unwrap().v1 - 1.0 / 3.0).abs() < 1e-15);
        assert!((boundary_uv(2.0).unwrap().v2 + 1.0 / 3.0).abs() < 1e-15);
        assert!((boundary_uv(SQRT_3).unwrap().v1 + SQRT_3 / 6.0).abs() < 1e-15);
        assert!((boundary_uv(-SQRT_3).unwrap().v1 - SQRT_3 / 6.0).abs() < 1e-15);
        assert_eq!(boundary_uv(0.5), Err(RatioError::BadParameter));
    }

    #[test]
    fn boundary_modulus_values() {
        let (a, b) = boundary_modulus_sq(SQRT_3).unwrap();
        assert!((a - 3.0).abs() < 1e-14 && (b - 3.0).abs() < 1e-14);
        assert!(boundary_modulus_sq(100.0).unwrap().0 < 4.0);
        assert!(boundary_modulus_sq(-100.0).unwrap().1 < 4.0);
        for t in [2.0, -2.0, 7.5, -31.0] {
            let uv = boundary_uv(t).unwrap();
            let (a, b) = boundary_modulus_sq(t).unwrap();
            assert!((a - 9.0 * (uv.u1 * uv.u1 + uv.v1 * uv.v1)).abs() < 1e-12);
            assert!((b - 9.0 * (uv.u2 * uv.u2 + uv.v2 * uv.v2)).abs() < 1e-12);
        }
    }

    #[test]
    fn boundary_difference_values() {
        assert!(boundary_sigma_diff(SQRT_3).unwrap().abs() < 1e-15);
        assert!(boundary_sigma_diff(-SQRT_3).unwrap().abs() < 1e-15);
        let d = boundary_sigma_diff(2.0).unwrap();
        assert!(approx_eq(d, c(1.0 / 15.0, -2.0 / 15.0), 1e-15));
        let s1 = boundary_sigma1(BoundaryPoint::new(2.0).unwrap());
        let s2 = sigma2_from_identity(s1);
        assert!(approx_eq(s2 - s1, d, 1e-12));
    }

    #[test]
    fn identity_residual_examples() {
        let t = tol();
        for roots in [
            [c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            [c(-1.0, 0.0), c(0.0, SQRT_3), c(1.0, 0.0)],
        ] {
            let r = ratios_direct(&order_roots(roots[0], roots[1], roots[2], &t).unwrap());
            assert!(identity_residual(&r) < 1e-15);
        }
        let zero = RatioVector {
            sigma1: ComplexValue::ZERO,
            sigma2: ComplexValue::ZERO,
            path: RatioPath::Direct,
        };
        assert!((identity_residual(&zero) - 1.0 / 3.0).abs() < 1e-16);
    }

    fn via_w(roots: [ComplexValue; 3]) -> RatioVector {
        let t = tol();
        let cub = order_roots(roots[0], roots[1], roots[2], &t).unwrap();
        let n = normalize(&cub);
        let rep = assess_admissibility(n.w2n, n.w3n, &t);
        ratios_via_w(&n, &rep).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let r = via_w([c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(r.path, RatioPath::Interior);
        assert!(approx_eq(r.sigma1, c(1.0 - SQRT_3 / 3.0, 0.0), 1e-15));
        assert!(approx_eq(r.sigma2, c(SQRT_3 / 3.0, 0.0), 1e-15));

        let r = via_w([c(-4.0, -1.0), c(-2.0, 8.0), c(4.0, 1.0)]);
        assert_eq!(r.path, RatioPath::Boundary);
        assert!(approx_eq(r.sigma1, c(0.6, -0.2), 1e-15));

        // the Im σ1 = 1/3 family, w = −2i with Re w2 > 0
        let r = via_w([c(-4.0, -1.0), c(2.0, -8.0), c(4.0, 1.0)]);
        assert_eq!(r.path, RatioPath::Boundary);
        assert!(approx_eq(r.sigma1, c(1.0 / 3.0, 1.0 / 3.0), 1e-15));

        // same w with Im w3 < 0
        let r = via_w([c(-4.0, 1.0), c(-2.0, -8.0), c(4.0, -1.0)]);
        assert_eq!(r.path, RatioPath::BoundaryOppositeSheet);
        assert!(approx_eq(r.sigma1, c(0.6, 0.2), 1e-15));

        let r = via_w([c(-1.0, 0.0), c(0.0, SQRT_3), c(1.0, 0.0)]);
        assert_eq!(r.path, RatioPath::Coincident);
        assert!(approx_eq(r.sigma1, equilateral_sigma(), 1e-15));
    }

    #[test]
    fn opposite_sheet_interior_matches_direct() {
        // an admissible pair where σ1 ≠ f(w)
        let t = tol();
        let w2 = c(0.437_727_468_651_081_25, -8.038_248_004_291_217);
        let w3 = c(0.460_068_826_462_272_1, 2.140_907_570_186_719_5);
        let cub = order_roots(-w3, w2, w3, &t).unwrap();
        let n = normalize(&cub);
        let rep = assess_admissibility(n.w2n, n.w3n, &t);
        let closed = ratios_via_w(&n, &rep).unwrap();
        let direct = ratios_direct(&cub);
        assert_eq!(closed.path, RatioPath::InteriorOppositeSheet);
        assert!(approx_eq(closed.sigma1, direct.sigma1, 1e-12));
        assert!(approx_eq(closed.sigma2, direct.sigma2, 1e-12));
        let f = f_extension(n.w, &t).unwrap();
        assert!((f - direct.sigma1).abs() > 0.1);
        assert!(direct.sigma1.re < 0.0);
    }

    #[test]
    fn not_admissible_is_an_error() {
        let t = tol();
        let n = NormalizedCubic {
            w2n: c(0.0, 2.0),
            w3n: c(1.0, 0.0),
            offset: ComplexValue::ZERO,
            w: c(0.0, 2.0),
        };
        let rep = assess_admissibility(n.w2n, n.w3n, &t);
        assert_eq!(ratios_via_w(&n, &rep), Err(RatioError::NotAdmissible));
    }
}
