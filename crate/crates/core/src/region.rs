//! Datasets over the `w`-plane and along the boundary `w = it, |t| ≥ √3`.
//!
//! Sweep values come from the extensions `f`, `g` of the ratios to the domain
//! `D = ℂ − {Re w = 0, |Im w| ≥ √3}`. Points of that excluded set are kept in
//! the output with no values.

use alloc::vec::Vec;

use crate::cubic::{classify_roots, Configuration};
use crate::numeric::{ComplexValue, ToleranceConfig};
use crate::ratio::{
    boundary_sigma1, f_extension, g_extension, sigma2_from_identity, BoundaryPoint, RatioPath,
    BOUNDARY_PARAM_SLACK, REMOVABLE_SINGULARITY_RADIUS, SQRT_3,
};
use crate::theorem::bounds_hold;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RegionError {
    #[error("range must be finite with t_min ≥ √3 and t_min < t_max")]
    BadRange,
    #[error("resolution and step counts must be at least 2")]
    BadResolution,
}

/// Where the values of a record came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RecordPath {
    Ratio(RatioPath),
    /// `f` or `g` at a removable singularity `w = ∓1`; not a ratio of any
    /// admissible configuration.
    Extension,
    /// `w` on the excluded set; no values.
    Excluded,
}

impl RecordPath {
    pub fn as_str(self) -> &'static str {
        match self {
            RecordPath::Ratio(p) => p.as_str(),
            RecordPath::Extension => "extension",
            RecordPath::Excluded => "excluded",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleRecord {
    pub w: ComplexValue,
    pub sigma1: Option<ComplexValue>,
    pub sigma2: Option<ComplexValue>,
    pub path: RecordPath,
    pub classification: Configuration,
    pub reachable: bool,
    pub bounds_ok: Option<bool>,
}

/// Whether some admissible pair `(w·w3, w3)` has ratio `w`.
///
/// With `w1 = −w3` the ordering needs `|Re(w·w3)| < Re w3`. For `Im w ≠ 0` a
/// suitable `Im w3` cancels `Re(w·w3)`; for real `w` it reduces to `|w| < 1`.
pub fn reachable(w: ComplexValue) -> bool {
    w.is_finite() && (w.im != 0.0 || w.re.abs() < 1.0)
}

/// `w` in the excluded set, within `boundary_tol`.
pub fn is_excluded(w: ComplexValue, tol: &ToleranceConfig) -> bool {
    w.re.abs() <= tol.boundary_tol && w.im.abs() >= SQRT_3 - tol.boundary_tol
}

fn classification_of(w: ComplexValue, tol: &ToleranceConfig) -> Configuration {
    classify_roots(ComplexValue::real(-1.0), w, ComplexValue::ONE, tol)
}

/// Record for a single `w`.
pub fn record_at(w: ComplexValue, tol: &ToleranceConfig) -> SampleRecord {
    let classification = classification_of(w, tol);
    let reachable = reachable(w);
    if is_excluded(w, tol) {
        return SampleRecord {
            w,
            sigma1: None,
            sigma2: None,
            path: RecordPath::Excluded,
            classification,
            reachable,
            bounds_ok: None,
        };
    }
    let (Ok(s1), Ok(s2)) = (f_extension(w, tol), g_extension(w, tol)) else {
        return SampleRecord {
            w,
            sigma1: None,
            sigma2: None,
            path: RecordPath::Excluded,
            classification,
            reachable,
            bounds_ok: None,
        };
    };
    let at_singularity = (w + 1.0).abs() < REMOVABLE_SINGULARITY_RADIUS
        || (w - 1.0).abs() < REMOVABLE_SINGULARITY_RADIUS;
    SampleRecord {
        w,
        sigma1: Some(s1),
        sigma2: Some(s2),
        path: if at_singularity {
            RecordPath::Extension
        } else {
            RecordPath::Ratio(RatioPath::Interior)
        },
        classification,
        reachable,
        bounds_ok: Some(bounds_hold(s1, s2, tol)),
    }
}

fn grid(lo: f64, hi: f64, n: usize, k: usize) -> f64 {
    if k + 1 == n {
        hi
    } else {
        lo + (hi - lo) * (k as f64) / ((n - 1) as f64)
    }
}

/// `resolution × resolution` grid, rows of constant `Im w` from the bottom,
/// `Re w` increasing within a row.
pub fn sweep_w_grid(
    re_range: (f64, f64),
    im_range: (f64, f64),
    resolution: usize,
    tol: &ToleranceConfig,
) -> Result<Vec<SampleRecord>, RegionError> {
    let ok = |(a, b): (f64, f64)| a.is_finite() && b.is_finite() && a <= b;
    if !ok(re_range) || !ok(im_range) {
        return Err(RegionError::BadRange);
    }
    if resolution < 2 {
        return Err(RegionError::BadResolution);
    }
    let mut out = Vec::with_capacity(resolution * resolution);
    for j in 0..resolution {
        let im = grid(im_range.0, im_range.1, resolution, j);
        for k in 0..resolution {
            let re = grid(re_range.0, re_range.1, resolution, k);
            out.push(record_at(ComplexValue::new(re, im), tol));
        }
    }
    Ok(out)
}

/// Boundary record at `w = it`: `σ1` from the boundary formula, `σ2` from
/// `(1 − σ1)σ2 = 1/3`.
pub fn boundary_record(b: BoundaryPoint, tol: &ToleranceConfig) -> SampleRecord {
    let w = b.w();
    let sigma1 = boundary_sigma1(b);
    let sigma2 = sigma2_from_identity(sigma1);
    SampleRecord {
        w,
        sigma1: Some(sigma1),
        sigma2: Some(sigma2),
        path: RecordPath::Ratio(RatioPath::Boundary),
        classification: classification_of(w, tol),
        reachable: true,
        bounds_ok: Some(bounds_hold(sigma1, sigma2, tol)),
    }
}

/// `steps` points on each of `[−t_max, −t_min]` and `[t_min, t_max]`, in
/// increasing `t`.
pub fn trace_boundary(
    t_min: f64,
    t_max: f64,
    steps: usize,
    tol: &ToleranceConfig,
) -> Result<Vec<SampleRecord>, RegionError> {
    if !(t_min.is_finite() && t_max.is_finite())
        || t_min < SQRT_3 - BOUNDARY_PARAM_SLACK
        || t_min >= t_max
    {
        return Err(RegionError::BadRange);
    }
    if steps < 2 {
        return Err(RegionError::BadResolution);
    }
    let mut out = Vec::with_capacity(2 * steps);
    let ts = (0..steps)
        .map(|k| -grid(t_min, t_max, steps, steps - 1 - k))
        .chain((0..steps).map(|k| grid(t_min, t_max, steps, k)));
    for t in ts {
        let b = BoundaryPoint::new(t).map_err(|_| RegionError::BadRange)?;
        out.push(boundary_record(b, tol));
    }
    Ok(out)
}
