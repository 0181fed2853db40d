//! The midpoint (Steiner) inellipse of the root triangle, fitted as a conic
//! from incidence and tangency at the side midpoints, without reference to
//! the critical points. Its foci serve as an independent oracle for them.
//!
//! Note that this ellipse is unrelated to the excluded set of `w` values; the
//! two only share a letter.

use crate::cubic::{diameter, OrderedCubic};
use crate::linalg::least_squares;
use crate::numeric::{ComplexValue, ToleranceConfig};

/// Below this `1 − minor/major` the ellipse is treated as a circle.
pub const CIRCLE_THRESHOLD: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("root triangle is degenerate (collinear vertices)")]
    DegenerateTriangle,
    #[error("conic fit did not produce an ellipse")]
    FitFailed,
}

/// Conic `A x² + B xy + C y² + D x + E y + F = 0` in the local frame
/// `x + i y = ((p − origin)·conj(axis)).re/sx + i (…).im/sy`.
///
/// The frame is aligned with the longest side and stretched by the triangle
/// height, so thin triangles fit as well as fat ones.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Conic {
    pub coeffs: [f64; 6],
    pub origin: ComplexValue,
    /// Unit direction of the local x axis.
    pub axis: ComplexValue,
    pub sx: f64,
    pub sy: f64,
}

impl Conic {
    fn rotated(&self, p: ComplexValue) -> ComplexValue {
        (p - self.origin) * self.axis.conj()
    }

    fn local(&self, p: ComplexValue) -> (f64, f64) {
        let q = self.rotated(p);
        (q.re / self.sx, q.im / self.sy)
    }

    /// Value at `p`, divided by the coefficient norm.
    pub fn normalized_value(&self, p: ComplexValue) -> f64 {
        let [a, b, c, d, e, f] = self.coeffs;
        let (x, y) = self.local(p);
        let norm = self.coeffs.iter().map(|v| v * v).sum::<f64>();
        (a * x * x + b * x * y + c * y * y + d * x + e * y + f) / libm::sqrt(norm)
    }

    /// Gradient at `p` with respect to the plane coordinates, up to a
    /// positive factor.
    pub fn gradient(&self, p: ComplexValue) -> ComplexValue {
        let [a, b, c, d, e, _] = self.coeffs;
        let (x, y) = self.local(p);
        let gx = (2.0 * a * x + b * y + d) / self.sx;
        let gy = (b * x + 2.0 * c * y + e) / self.sy;
        ComplexValue::new(gx, gy) * self.axis
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InEllipse {
    pub center: ComplexValue,
    /// Foci sorted by real part.
    pub focus1: ComplexValue,
    pub focus2: ComplexValue,
    pub semi_major: f64,
    pub semi_minor: f64,
    /// Midpoints of `w1w2`, `w2w3`, `w3w1`.
    pub tangency_points: [ComplexValue; 3],
    pub conic: Conic,
    sides: [ComplexValue; 3],
}

impl InEllipse {
    /// `|Q(m)|/‖coeffs‖` at each side midpoint.
    pub fn incidence_residuals(&self) -> [f64; 3] {
        self.tangency_points
            .map(|m| self.conic.normalized_value(m).abs())
    }

    /// `|sin|` of the angle between the conic gradient at each midpoint and
    /// the normal of the corresponding side; zero for exact tangency.
    pub fn tangency_misalignment(&self) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (k, (m, d)) in self.tangency_points.iter().zip(self.sides).enumerate() {
            let g = self.conic.gradient(*m);
            out[k] = (g.re * d.re + g.im * d.im).abs() / (g.abs() * d.abs());
        }
        out
    }
}

/// Fits the midpoint ellipse of a noncollinear root triangle.
pub fn steiner_inellipse(c: &OrderedCubic, tol: &ToleranceConfig) -> Result<InEllipse, GeometryError> {
    steiner_inellipse_of(c.roots(), tol)
}

pub fn steiner_inellipse_of(
    roots: [ComplexValue; 3],
    tol: &ToleranceConfig,
) -> Result<InEllipse, GeometryError> {
    let [w1, w2, w3] = roots;
    let scale = diameter(w1, w2, w3);
    let area = 0.5 * ((w2 - w1) * (w3 - w1).conj()).im.abs();
    if !(scale > 0.0) || area <= tol.eq_tol * scale * scale {
        return Err(GeometryError::DegenerateTriangle);
    }

    let origin = (w1 + w2 + w3) / 3.0;
    let sides = [w2 - w1, w3 - w2, w1 - w3];
    let longest = sides
        .into_iter()
        .max_by(|p, q| p.abs().total_cmp(&q.abs()))
        .expect("three sides");
    let axis = longest / longest.abs();
    let sx = longest.abs();
    let sy = 2.0 * area / sx;
    let frame = |q: ComplexValue| {
        let r = q * axis.conj();
        (r.re / sx, r.im / sy)
    };

    let midpoints = [(w1 + w2) * 0.5, (w2 + w3) * 0.5, (w3 + w1) * 0.5];

    let mut rows = [[0.0; 6]; 7];
    let mut rhs = [0.0; 7];
    for k in 0..3 {
        let (x, y) = frame(midpoints[k] - origin);
        let (dx, dy) = frame(sides[k]);
        rows[2 * k] = [x * x, x * y, y * y, x, y, 1.0];
        rows[2 * k + 1] = [2.0 * x * dx, y * dx + x * dy, 2.0 * y * dy, dx, dy, 0.0];
    }
    // A + C = 1 fixes the projective scale; A + C ≠ 0 for any ellipse
    rows[6] = [1.0, 0.0, 1.0, 0.0, 0.0, 0.0];
    rhs[6] = 1.0;

    let coeffs = least_squares(rows, rhs).ok_or(GeometryError::FitFailed)?;
    let [a, b, cc, d, e, f] = coeffs;

    // center and its conic value in the stretched frame, where the
    // ellipse is well proportioned
    let det_s = 4.0 * a * cc - b * b;
    if !(det_s > 0.0) {
        return Err(GeometryError::FitFailed);
    }
    let xs = (b * e - 2.0 * cc * d) / det_s;
    let ys = (b * d - 2.0 * a * e) / det_s;
    let f_center = f + 0.5 * (d * xs + e * ys);
    if !(f_center < 0.0) {
        return Err(GeometryError::FitFailed);
    }

    // quadratic part in the rotated, unstretched frame
    let (qa, qb, qc) = (a / (sx * sx), b / (sx * sy), cc / (sy * sy));
    let det = det_s / (sx * sx * sy * sy);
    let rad = libm::hypot(0.5 * (qa - qc), 0.5 * qb);
    let lambda_max = 0.5 * (qa + qc) + rad;
    // product of the eigenvalues is det/4; avoids mean − rad
    let lambda_min = 0.25 * det / lambda_max;
    let semi_major = libm::sqrt(-f_center / lambda_min);
    let semi_minor = libm::sqrt(-f_center / lambda_max);

    // a² − b² without cancellation
    let focal = if 1.0 - semi_minor / semi_major < CIRCLE_THRESHOLD {
        0.0
    } else {
        libm::sqrt(-f_center * 2.0 * rad / (lambda_min * lambda_max))
    };
    // the λ_max eigenvector lies at φ; the major axis is perpendicular to it
    let phi = 0.5 * libm::atan2(qb, qa - qc) + 0.5 * core::f64::consts::PI;
    let major = ComplexValue::new(libm::cos(phi), libm::sin(phi));

    let center_rot = ComplexValue::new(xs * sx, ys * sy);
    let to_global = |p: ComplexValue| p * axis + origin;
    let center = to_global(center_rot);
    let fa = to_global(center_rot + major * focal);
    let fb = to_global(center_rot - major * focal);
    let (focus1, focus2) = if fa.re <= fb.re { (fa, fb) } else { (fb, fa) };

    Ok(InEllipse {
        center,
        focus1,
        focus2,
        semi_major,
        semi_minor,
        tangency_points: midpoints,
        conic: Conic {
            coeffs,
            origin,
            axis,
            sx,
            sy,
        },
        sides,
    })
}

/// Signed angle from `from` to `to`, in `(−π, π]`.
fn signed_angle(from: ComplexValue, to: ComplexValue) -> f64 {
    let cross = from.re * to.im - from.im * to.re;
    let dot = from.re * to.re + from.im * to.im;
    libm::atan2(cross, dot)
}

/// `θ1` from `w2 − w1` to `z1 − w1` and `θ2` from `w3 − w2` to `z2 − w2`.
pub fn ratio_angles(c: &OrderedCubic) -> (f64, f64) {
    (
        signed_angle(c.w2 - c.w1, c.z1 - c.w1),
        signed_angle(c.w3 - c.w2, c.z2 - c.w2),
    )
}

/// `|a − b|` reduced to `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let two_pi = 2.0 * core::f64::consts::PI;
    let d = libm::fmod(libm::fabs(a - b), two_pi);
    d.min(two_pi - d)
}
