//! Numerical checks of the bounds, extremal families and equivalences for
//! ratio vectors of cubics.
//!
//! Every check yields a [`TheoremReport`]. A failed report always carries a
//! witness. Monte Carlo checks run over index-addressed samples through an
//! [`IndexMap`], so the caller decides whether the batch runs sequentially or
//! in parallel; the result is the same either way.

use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

use crate::cubic::{
    assess_admissibility, classify_configuration, normalize, order_roots, Configuration,
    CubicError, OrderedCubic,
};
use crate::inellipse::{angle_distance, ratio_angles, steiner_inellipse};
use crate::numeric::{ComplexValue, ToleranceConfig};
use crate::ratio::{
    boundary_modulus_sq, boundary_sigma1, boundary_sigma1_opposite, boundary_sigma_diff,
    boundary_uv, f_extension, identity_residual, ratios_direct, ratios_via_w, BoundaryPoint,
    RatioPath, RatioVector, SQRT_3,
};
use crate::sampling::{
    admissible_sample, collinear_sample, equilateral_sample, real_root_sample, Sample, SampleKind,
};

/// Slack on `Re σ2 − Re σ1 ≥ 0`.
pub const T3_SLACK: f64 = 1e-12;
/// Tolerance on the attained value `|Im σ| = 1/3` of the extremal families.
pub const EXTREMAL_TOL: f64 = 1e-12;
/// Relative tolerance of the squared-form identities behind the lemmas.
pub const IDENTITY_REL_TOL: f64 = 1e-6;
/// Tolerance on the located roots of the second lemma.
pub const ROOT_TOL: f64 = 1e-9;
/// Minimum number of grid points in a lemma scan.
pub const MIN_SCAN_STEPS: usize = 1000;
/// Upper end of the logarithmic tail scans.
pub const TAIL_MAX: f64 = 1e9;
/// Default linear scan range `[√3, DEFAULT_T_MAX]`.
pub const DEFAULT_T_MAX: f64 = 1e3;
pub const DEFAULT_SCAN_STEPS: usize = 1_000_000;
pub const DEFAULT_TAIL_STEPS: usize = 1_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TheoremError {
    #[error("scan range must satisfy √3 ≤ t_min < t_max with at least 1000 steps")]
    BadRange,
    #[error("family parameter must satisfy |t| > √3")]
    BadParameter,
    #[error("parameter lies outside the region of the extremal family")]
    ConstraintViolated,
    #[error("roots are not all real")]
    NotHyperbolic,
    #[error("ratios are undefined: {0}")]
    Undefined(#[from] CubicError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    L1A,
    L1B,
    L2A,
    L2B,
    T1A,
    T1B,
    T1C,
    T1D,
    T1E,
    T2A,
    T2B,
    T2C,
    T2D,
    T2E,
    T3,
    T4,
    T5,
    HYP,
}

impl ClaimId {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::L1A => "L1A",
            ClaimId::L1B => "L1B",
            ClaimId::L2A => "L2A",
            ClaimId::L2B => "L2B",
            ClaimId::T1A => "T1A",
            ClaimId::T1B => "T1B",
            ClaimId::T1C => "T1C",
            ClaimId::T1D => "T1D",
            ClaimId::T1E => "T1E",
            ClaimId::T2A => "T2A",
            ClaimId::T2B => "T2B",
            ClaimId::T2C => "T2C",
            ClaimId::T2D => "T2D",
            ClaimId::T2E => "T2E",
            ClaimId::T3 => "T3",
            ClaimId::T4 => "T4",
            ClaimId::T5 => "T5",
            ClaimId::HYP => "HYP",
        }
    }
}

/// Group of claims run together.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    L1,
    L2,
    T1,
    T2,
    T3,
    T4,
    T5,
    Hyp,
}

impl Suite {
    pub const NAMES: [&'static str; 9] = ["all", "L1", "L2", "T1", "T2", "T3", "T4", "T5", "HYP"];

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }

    fn needs_monte_carlo(self) -> bool {
        matches!(self, Suite::All | Suite::T1 | Suite::T2 | Suite::T3)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite (expected one of all, L1, L2, T1, T2, T3, T4, T5, HYP)")]
pub struct UnknownSuite;

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "ALL" => Suite::All,
            "L1" => Suite::L1,
            "L2" => Suite::L2,
            "T1" => Suite::T1,
            "T2" => Suite::T2,
            "T3" => Suite::T3,
            "T4" => Suite::T4,
            "T5" => Suite::T5,
            "HYP" => Suite::Hyp,
            _ => return Err(UnknownSuite),
        })
    }
}

/// Evidence attached to a report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Witness {
    Configuration {
        index: Option<u64>,
        roots: [ComplexValue; 3],
        sigma1: ComplexValue,
        sigma2: ComplexValue,
        path: RatioPath,
    },
    Ratios {
        sigma1: ComplexValue,
        sigma2: ComplexValue,
    },
    Parameter {
        t: f64,
        value: f64,
    },
}

impl Witness {
    fn configuration(index: Option<u64>, c: &OrderedCubic, r: &RatioVector) -> Self {
        Witness::Configuration {
            index,
            roots: c.roots(),
            sigma1: r.sigma1,
            sigma2: r.sigma2,
            path: r.path,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Metric {
    pub name: &'static str,
    pub value: f64,
}

fn metric(name: &'static str, value: f64) -> Metric {
    Metric { name, value }
}

/// Outcome of one check of one claim.
///
/// `margin` is the signed distance to the bound being checked; negative
/// values indicate a violation.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub claim: ClaimId,
    pub check: &'static str,
    pub passed: bool,
    pub margin: f64,
    pub witness: Option<Witness>,
    pub metrics: Vec<Metric>,
}

impl TheoremReport {
    fn new(
        claim: ClaimId,
        check: &'static str,
        passed: bool,
        margin: f64,
        witness: Option<Witness>,
        metrics: Vec<Metric>,
    ) -> Self {
        assert!(passed || witness.is_some(), "failed report without witness");
        Self {
            claim,
            check,
            passed,
            margin,
            witness,
            metrics,
        }
    }

    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics.iter().find(|m| m.name == name).map(|m| m.value)
    }
}

// ---------------------------------------------------------------- bounds

/// Claims covered by [`check_bounds`], in report order.
pub const BOUND_CLAIMS: [ClaimId; 7] = [
    ClaimId::T1A,
    ClaimId::T1B,
    ClaimId::T1E,
    ClaimId::T2A,
    ClaimId::T2B,
    ClaimId::T2E,
    ClaimId::T3,
];

/// Signed margins for [`BOUND_CLAIMS`].
pub fn bound_margins(s1: ComplexValue, s2: ComplexValue) -> [f64; 7] {
    [
        s1.re.min(2.0 / 3.0 - s1.re),
        1.0 / 3.0 - s1.im.abs(),
        2.0 / 3.0 - s1.abs(),
        (s2.re - 1.0 / 3.0).min(1.0 - s2.re),
        1.0 / 3.0 - s2.im.abs(),
        1.0 - s2.abs(),
        s2.re - s1.re,
    ]
}

/// Strict bounds need a positive margin; closed bounds accept `−eq_tol`,
/// and the ordering of real parts accepts `−T3_SLACK`.
pub fn bound_passes(m: &[f64; 7], tol: &ToleranceConfig) -> [bool; 7] {
    [
        m[0] > 0.0,
        m[1] >= -tol.eq_tol,
        m[2] >= -tol.eq_tol,
        m[3] > 0.0,
        m[4] >= -tol.eq_tol,
        m[5] >= -tol.eq_tol,
        m[6] >= -T3_SLACK,
    ]
}

pub fn bounds_hold(s1: ComplexValue, s2: ComplexValue, tol: &ToleranceConfig) -> bool {
    bound_passes(&bound_margins(s1, s2), tol).iter().all(|p| *p)
}

/// One report per bound claim for a single ratio vector.
pub fn check_bounds(r: &RatioVector, tol: &ToleranceConfig) -> Vec<TheoremReport> {
    let m = bound_margins(r.sigma1, r.sigma2);
    let p = bound_passes(&m, tol);
    let witness = Witness::Ratios {
        sigma1: r.sigma1,
        sigma2: r.sigma2,
    };
    (0..7)
        .map(|k| {
            TheoremReport::new(
                BOUND_CLAIMS[k],
                "bounds",
                p[k],
                m[k],
                (!p[k]).then_some(witness),
                Vec::new(),
            )
        })
        .collect()
}

// ---------------------------------------------------------------- lemmas

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

fn validate_scan(t_min: f64, t_max: f64, steps: usize) -> Result<(), TheoremError> {
    if !(t_min.is_finite() && t_max.is_finite())
        || t_min < SQRT_3 - crate::ratio::BOUNDARY_PARAM_SLACK
        || t_min >= t_max
        || steps < MIN_SCAN_STEPS
    {
        return Err(TheoremError::BadRange);
    }
    Ok(())
}

fn scan_point(t_min: f64, t_max: f64, steps: usize, spacing: Spacing, k: usize) -> f64 {
    if k == 0 {
        return t_min;
    }
    if k + 1 == steps {
        return t_max;
    }
    let x = k as f64 / (steps - 1) as f64;
    match spacing {
        Spacing::Linear => t_min + (t_max - t_min) * x,
        Spacing::Log => t_min * libm::exp(x * libm::log(t_max / t_min)),
    }
}

/// Grid on `[−t_max, −t_min] ∪ [t_min, t_max]`, negative branch first, each in
/// increasing `t`.
fn signed_branches(t_min: f64, t_max: f64, steps: usize, spacing: Spacing) -> [Vec<f64>; 2] {
    let pos = |k| scan_point(t_min, t_max, steps, spacing, k);
    [
        (0..steps).map(|k| -pos(steps - 1 - k)).collect(),
        (0..steps).map(pos).collect(),
    ]
}

fn radical(t: f64) -> f64 {
    libm::sqrt((t * t - 3.0).max(0.0))
}

/// `4t√(t² − 3) ∓ (5t² − 3)`; `sign = −1` gives the first expression.
pub fn lemma1_expr(t: f64, sign: f64) -> f64 {
    4.0 * t * radical(t) + sign * (5.0 * t * t - 3.0)
}

/// `t³ − 7t + sign·2(t² − 1)√(t² − 3)`; `sign = −1` gives the first
/// expression.
pub fn lemma2_expr(t: f64, sign: f64) -> f64 {
    t * t * t - 7.0 * t + sign * 2.0 * (t * t - 1.0) * radical(t)
}

/// Relative error of `16t²(t² − 3) − (5t² − 3)² = −9(t² + 1)²`.
pub fn lemma1_identity_error(t: f64) -> f64 {
    let t2 = t * t;
    let lhs = 16.0 * t2 * (t2 - 3.0) - (5.0 * t2 - 3.0) * (5.0 * t2 - 3.0);
    let rhs = -9.0 * (t2 + 1.0) * (t2 + 1.0);
    (lhs - rhs).abs() / rhs.abs()
}

/// Error of `(t³ − 7t)² − 4(t² − 1)²(t² − 3) = −3(t − 2)(t + 2)(t² + 1)²`
/// relative to the largest term, since the right side vanishes at `t = ±2`.
pub fn lemma2_identity_error(t: f64) -> f64 {
    let t2 = t * t;
    let a = (t2 * t - 7.0 * t) * (t2 * t - 7.0 * t);
    let b = 4.0 * (t2 - 1.0) * (t2 - 1.0) * (t2 - 3.0);
    let rhs = -3.0 * (t - 2.0) * (t + 2.0) * (t2 + 1.0) * (t2 + 1.0);
    ((a - b) - rhs).abs() / a.abs().max(b.abs()).max(rhs.abs())
}

/// Scans both expressions of the first lemma for zeros and sign changes.
pub fn scan_lemma1(
    t_min: f64,
    t_max: f64,
    steps: usize,
    spacing: Spacing,
) -> Result<Vec<TheoremReport>, TheoremError> {
    validate_scan(t_min, t_max, steps)?;
    let check = match spacing {
        Spacing::Linear => "scan",
        Spacing::Log => "scan-log",
    };
    let branches = signed_branches(t_min, t_max, steps, spacing);
    let mut worst_identity = (0.0f64, t_min);
    for t in branches.iter().flatten().copied() {
        let e = lemma1_identity_error(t);
        if e > worst_identity.0 {
            worst_identity = (e, t);
        }
    }
    let identity_ok = worst_identity.0 <= IDENTITY_REL_TOL;

    let mut out = Vec::new();
    for (claim, sign) in [(ClaimId::L1A, -1.0), (ClaimId::L1B, 1.0)] {
        let mut min_abs = (f64::INFINITY, t_min);
        let mut sign_changes = 0usize;
        let mut first_change = None;
        for branch in branches.iter().cloned() {
            let mut prev: Option<f64> = None;
            for t in branch {
                let v = lemma1_expr(t, sign);
                if v.abs() < min_abs.0 {
                    min_abs = (v.abs(), t);
                }
                if let Some(p) = prev {
                    if v == 0.0 || p * v < 0.0 {
                        sign_changes += 1;
                        first_change.get_or_insert((t, v));
                    }
                }
                prev = Some(v);
            }
        }
        let passed = sign_changes == 0 && min_abs.0 > 0.0 && identity_ok;
        let witness = if passed {
            None
        } else if let Some((t, v)) = first_change {
            Some(Witness::Parameter { t, value: v })
        } else if !identity_ok {
            Some(Witness::Parameter {
                t: worst_identity.1,
                value: worst_identity.0,
            })
        } else {
            Some(Witness::Parameter {
                t: min_abs.1,
                value: min_abs.0,
            })
        };
        out.push(TheoremReport::new(
            claim,
            check,
            passed,
            min_abs.0,
            witness,
            vec![
                metric("min_abs_value", min_abs.0),
                metric("t_at_min", min_abs.1),
                metric("sign_changes", sign_changes as f64),
                metric("identity_max_rel_error", worst_identity.0),
                metric("grid_points", (2 * steps) as f64),
            ],
        ));
    }
    Ok(out)
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Locates the real roots of both expressions of the second lemma; each
/// should have exactly one, at `t = −2` and `t = 2` respectively.
pub fn scan_lemma2(
    t_min: f64,
    t_max: f64,
    steps: usize,
    spacing: Spacing,
) -> Result<Vec<TheoremReport>, TheoremError> {
    validate_scan(t_min, t_max, steps)?;
    let check = match spacing {
        Spacing::Linear => "scan",
        Spacing::Log => "scan-log",
    };
    let branches = signed_branches(t_min, t_max, steps, spacing);
    let mut worst_identity = (0.0f64, t_min);
    for t in branches.iter().flatten().copied() {
        let e = lemma2_identity_error(t);
        if e > worst_identity.0 {
            worst_identity = (e, t);
        }
    }
    let identity_ok = worst_identity.0 <= IDENTITY_REL_TOL;

    let mut out = Vec::new();
    for (claim, sign, expected) in [(ClaimId::L2A, -1.0, -2.0), (ClaimId::L2B, 1.0, 2.0)] {
        let f = |t: f64| lemma2_expr(t, sign);
        let mut roots = Vec::new();
        for branch in branches.iter().cloned() {
            let mut prev: Option<(f64, f64)> = None;
            for t in branch {
                let v = f(t);
                if v == 0.0 {
                    roots.push(t);
                } else if let Some((pt, pv)) = prev {
                    if pv != 0.0 && pv * v < 0.0 {
                        roots.push(bisect(pt, t, f));
                    }
                }
                prev = Some((t, v));
            }
        }
        let in_range = expected * expected >= t_min * t_min && expected * expected <= t_max * t_max;
        let located = roots.first().copied().unwrap_or(f64::NAN);
        let error = (located - expected).abs();
        let root_ok = if in_range {
            roots.len() == 1 && error <= ROOT_TOL
        } else {
            roots.is_empty()
        };
        let passed = root_ok && identity_ok;
        let witness = if passed {
            None
        } else if !root_ok {
            Some(Witness::Parameter {
                t: if roots.is_empty() { expected } else { located },
                value: roots.len() as f64,
            })
        } else {
            Some(Witness::Parameter {
                t: worst_identity.1,
                value: worst_identity.0,
            })
        };
        let margin = if in_range && !roots.is_empty() {
            ROOT_TOL - error
        } else if roots.is_empty() {
            0.0
        } else {
            -1.0
        };
        let mut metrics = vec![
            metric("root_count", roots.len() as f64),
            metric("expected_root", expected),
            metric("identity_max_rel_error", worst_identity.0),
            metric("grid_points", (2 * steps) as f64),
        ];
        if !roots.is_empty() {
            metrics.push(metric("root", located));
            metrics.push(metric("root_error", error));
        }
        out.push(TheoremReport::new(claim, check, passed, margin, witness, metrics));
    }
    Ok(out)
}

// ----------------------------------------------------- extremal families

fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

/// Roots `(−2t − i, −t + 2t²i, 2t + i)` for `t > √3` and
/// `(2t − i, −t − 2t²i, −2t + i)` for `t < −√3`. Both normalize to `w = it`
/// with `Im w3 > 0`, so `σ1 = u1(t) + i·v1(t)`.
pub fn re_sharpness_roots(t: f64) -> Result<[ComplexValue; 3], TheoremError> {
    if !(t.is_finite() && t.abs() > SQRT_3) {
        return Err(TheoremError::BadParameter);
    }
    let q = 2.0 * t * t;
    Ok(if t > 0.0 {
        [c(-2.0 * t, -1.0), c(-t, q), c(2.0 * t, 1.0)]
    } else {
        [c(2.0 * t, -1.0), c(-t, -q), c(-2.0 * t, 1.0)]
    })
}

/// The family approaching `Re σ1 → 2/3` as `t → ∞` and `Re σ1 → 0` as
/// `t → −∞`; ratios are computed from the definition.
pub fn sharpness_probe_re(
    t: f64,
    tol: &ToleranceConfig,
) -> Result<(OrderedCubic, RatioVector), TheoremError> {
    let [a, b, d] = re_sharpness_roots(t)?;
    let cubic = order_roots(a, b, d, tol)?;
    Ok((cubic, ratios_direct(&cubic)))
}

/// `C + i·z0`, `C − i·z0`, `C + 2·z0` without any constraint on `z0`.
pub fn im_family_roots(z0: ComplexValue, offset: ComplexValue) -> [ComplexValue; 3] {
    let iz = ComplexValue::I * z0;
    [offset + iz, offset - iz, offset + z0 * 2.0]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImSign {
    Plus,
    Minus,
}

/// Half-strip of `z0` for which the family attains `Im σ1 = +1/3` (`Plus`)
/// or `−1/3` (`Minus`).
pub fn in_im_family_region(z0: ComplexValue, sign: ImSign) -> bool {
    match sign {
        ImSign::Plus => z0.im < 0.0 && 0.0 < z0.re && z0.re < -0.5 * z0.im,
        ImSign::Minus => z0.im > 0.0 && 0.0 < z0.re && z0.re < 0.5 * z0.im,
    }
}

pub fn extremal_family_im(
    z0: ComplexValue,
    offset: ComplexValue,
    sign: ImSign,
    tol: &ToleranceConfig,
) -> Result<(OrderedCubic, RatioVector), TheoremError> {
    if !z0.is_finite() || !offset.is_finite() || !in_im_family_region(z0, sign) {
        return Err(TheoremError::ConstraintViolated);
    }
    let [a, b, d] = im_family_roots(z0, offset);
    let cubic = order_roots(a, b, d, tol)?;
    Ok((cubic, ratios_direct(&cubic)))
}

/// Sharpness of the real-part bounds on the family of
/// [`sharpness_probe_re`], for `σ1` (`T1A`) and `σ2` (`T2A`).
pub fn sharpness_reports(tol: &ToleranceConfig) -> Vec<TheoremReport> {
    let ts = [10.0, 1e2, 1e3, 1e4];
    let mut up = [(0.0, c(0.0, 0.0)); 4];
    let mut down = [(0.0, c(0.0, 0.0)); 4];
    let mut witness_up = None;
    let mut witness_down = None;
    let mut max_u1_error = 0.0f64;
    for (k, &t) in ts.iter().enumerate() {
        for (slot, tt, w) in [
            (&mut up[k], t, &mut witness_up),
            (&mut down[k], -t, &mut witness_down),
        ] {
            match sharpness_probe_re(tt, tol) {
                Ok((cub, r)) => {
                    *slot = (r.sigma1.re, r.sigma2);
                    if tt.abs() == 1e3 {
                        *w = Some(Witness::configuration(None, &cub, &r));
                    }
                    let u1 = boundary_uv(tt).map(|b| b.u1).unwrap_or(f64::NAN);
                    max_u1_error = max_u1_error.max((r.sigma1.re - u1).abs());
                }
                Err(_) => *slot = (f64::NAN, c(f64::NAN, f64::NAN)),
            }
        }
    }
    let increasing = up.windows(2).all(|p| p[0].0 < p[1].0);
    let decreasing = down.windows(2).all(|p| p[0].0 > p[1].0);
    let hi = up[2].0;
    let lo = down[2].0;

    let t1_margin = (hi - 0.666).min(1e-4 - lo);
    let t1_pass = increasing && decreasing && t1_margin > 0.0 && max_u1_error <= 1e-12;
    let t1 = TheoremReport::new(
        ClaimId::T1A,
        "sharpness",
        t1_pass,
        t1_margin,
        if hi - 0.666 <= 0.0 { witness_up } else { witness_down },
        vec![
            metric("re_sigma1_t10", up[0].0),
            metric("re_sigma1_t100", up[1].0),
            metric("re_sigma1_t1000", up[2].0),
            metric("re_sigma1_t10000", up[3].0),
            metric("re_sigma1_t-10", down[0].0),
            metric("re_sigma1_t-100", down[1].0),
            metric("re_sigma1_t-1000", down[2].0),
            metric("re_sigma1_t-10000", down[3].0),
            metric("max_u1_error", max_u1_error),
        ],
    );

    let s2_hi = up[2].1.re;
    let s2_lo = down[2].1.re;
    let t2_increasing = up.windows(2).all(|p| p[0].1.re < p[1].1.re);
    let t2_decreasing = down.windows(2).all(|p| p[0].1.re > p[1].1.re);
    let t2_margin = (s2_hi - 0.999).min(1.0 / 3.0 + 1e-3 - s2_lo);
    let t2 = TheoremReport::new(
        ClaimId::T2A,
        "sharpness",
        t2_increasing && t2_decreasing && t2_margin > 0.0,
        t2_margin,
        if s2_hi - 0.999 <= 0.0 { witness_up } else { witness_down },
        vec![
            metric("re_sigma2_t1000", s2_hi),
            metric("re_sigma2_t-1000", s2_lo),
        ],
    );
    vec![t1, t2]
}

/// Parameters of the extremal families used by [`extremal_reports`].
pub const IM_FAMILY_Z0: [ComplexValue; 4] = [
    ComplexValue::new(1.0, -4.0),
    ComplexValue::new(0.5, -2.0),
    ComplexValue::new(3.0, -7.0),
    ComplexValue::new(1e-3, -1.0),
];
pub const IM_FAMILY_OFFSETS: [ComplexValue; 3] = [
    ComplexValue::new(0.0, 0.0),
    ComplexValue::new(5.0, 2.0),
    ComplexValue::new(-1e3, 1e3),
];

/// `|Im σ| = 1/3` on the stated families (`T1C`, `T1D`, `T2C`, `T2D`),
/// together with the negative checks outside the parameter region.
pub fn extremal_reports(tol: &ToleranceConfig) -> Vec<TheoremReport> {
    let mut out = Vec::new();
    for (sign, c1, c2, target) in [
        (ImSign::Plus, ClaimId::T1C, ClaimId::T2C, 1.0 / 3.0),
        (ImSign::Minus, ClaimId::T1D, ClaimId::T2D, -1.0 / 3.0),
    ] {
        let mut worst1 = (f64::INFINITY, None);
        let mut worst2 = (f64::INFINITY, None);
        let mut ok = true;
        for z in IM_FAMILY_Z0 {
            let z0 = if sign == ImSign::Plus { z } else { z.conj() };
            for offset in IM_FAMILY_OFFSETS {
                let Ok((cub, r)) = extremal_family_im(z0, offset, sign, tol) else {
                    ok = false;
                    continue;
                };
                // the offset is relative to the family size, so the error
                // scales with |offset|/|z0| times machine precision
                let m1 = EXTREMAL_TOL * (1.0 + offset.abs() / z0.abs()) - (r.sigma1.im - target).abs();
                let m2 = EXTREMAL_TOL * (1.0 + offset.abs() / z0.abs()) - (r.sigma2.im - target).abs();
                if m1 < worst1.0 {
                    worst1 = (m1, Some(Witness::configuration(None, &cub, &r)));
                }
                if m2 < worst2.0 {
                    worst2 = (m2, Some(Witness::configuration(None, &cub, &r)));
                }
            }
        }

        // outside the region the extremal value must not be attained
        let outside = [c(-1.0, -4.0), c(3.0, -4.0), c(1.0, 4.0), c(-0.5, -0.5)];
        let mut outside_ok = true;
        let mut outside_witness = None;
        for z in outside {
            let z0 = if sign == ImSign::Plus { z } else { z.conj() };
            if extremal_family_im(z0, ComplexValue::ZERO, sign, tol) != Err(TheoremError::ConstraintViolated) {
                outside_ok = false;
            }
            let [a, b, d] = im_family_roots(z0, ComplexValue::ZERO);
            if let Ok(cub) = order_roots(a, b, d, tol) {
                let r = ratios_direct(&cub);
                if (r.sigma1.im - target).abs() <= EXTREMAL_TOL {
                    outside_ok = false;
                    outside_witness = Some(Witness::configuration(None, &cub, &r));
                }
            }
        }
        let pass1 = ok && worst1.0 >= 0.0 && outside_ok;
        out.push(TheoremReport::new(
            c1,
            "extremal-family",
            pass1,
            worst1.0,
            if pass1 { None } else { worst1.1.or(outside_witness) },
            vec![metric("families_checked", (IM_FAMILY_Z0.len() * IM_FAMILY_OFFSETS.len()) as f64)],
        ));

        // the mirrored half-strip, Re z0 < 0, is where σ2 attains the value
        let z_alt = if sign == ImSign::Plus { c(-1.0, -4.0) } else { c(-1.0, 4.0) };
        let [a, b, d] = im_family_roots(z_alt, ComplexValue::ZERO);
        let alt = order_roots(a, b, d, tol).map(|cub| ratios_direct(&cub).sigma2.im);
        let pass2 = ok && worst2.0 >= 0.0;
        let mut metrics = vec![metric("families_checked", (IM_FAMILY_Z0.len() * IM_FAMILY_OFFSETS.len()) as f64)];
        if let Some((_, Some(Witness::Configuration { sigma2, .. }))) = Some(&worst2) {
            metrics.push(metric("im_sigma2_on_family", sigma2.im));
        }
        if let Ok(v) = alt {
            metrics.push(metric("im_sigma2_on_mirrored_family", v));
        }
        out.push(TheoremReport::new(
            c2,
            "extremal-family",
            pass2,
            worst2.0,
            if pass2 { None } else { worst2.1 },
            metrics,
        ));
    }
    out
}

/// `a(t) < 4`, `b(t) < 4` along the boundary and agreement of
/// `9|σ1|²` with `a(t)` (and of the other branch with `b(t)`).
pub fn boundary_modulus_scan(t_min: f64, t_max: f64, steps: usize) -> Result<TheoremReport, TheoremError> {
    validate_scan(t_min, t_max, steps)?;
    let mut max_ab = f64::NEG_INFINITY;
    let mut max_ab_t = t_min;
    let mut max_mismatch = 0.0f64;
    let mut mismatch_t = t_min;
    for t in signed_branches(t_min, t_max, steps, Spacing::Linear).into_iter().flatten() {
        let b = BoundaryPoint::new(t).map_err(|_| TheoremError::BadRange)?;
        let (a_t, b_t) = boundary_modulus_sq(t).map_err(|_| TheoremError::BadRange)?;
        if a_t.max(b_t) > max_ab {
            max_ab = a_t.max(b_t);
            max_ab_t = t;
        }
        let e = (9.0 * boundary_sigma1(b).norm_sqr() - a_t)
            .abs()
            .max((9.0 * boundary_sigma1_opposite(b).norm_sqr() - b_t).abs());
        if e > max_mismatch {
            max_mismatch = e;
            mismatch_t = t;
        }
    }
    let margin = 4.0 - max_ab;
    let passed = margin > 0.0 && max_mismatch <= 1e-12;
    let witness = if margin <= 0.0 {
        Some(Witness::Parameter { t: max_ab_t, value: max_ab })
    } else {
        Some(Witness::Parameter {
            t: mismatch_t,
            value: max_mismatch,
        })
    };
    Ok(TheoremReport::new(
        ClaimId::T1E,
        "boundary-modulus",
        passed,
        margin,
        if passed { None } else { witness },
        vec![metric("max_ab", max_ab), metric("max_modulus_mismatch", max_mismatch)],
    ))
}

/// `Re(σ2 − σ1) = (t² − 3)/(3(t² + 1)) ≥ 0` along the boundary.
pub fn boundary_order_scan(t_min: f64, t_max: f64, steps: usize) -> Result<TheoremReport, TheoremError> {
    validate_scan(t_min, t_max, steps)?;
    let mut worst = (f64::INFINITY, t_min);
    for t in signed_branches(t_min, t_max, steps, Spacing::Linear).into_iter().flatten() {
        let d = boundary_sigma_diff(t).map_err(|_| TheoremError::BadRange)?;
        if d.re < worst.0 {
            worst = (d.re, t);
        }
    }
    let passed = worst.0 >= -T3_SLACK;
    Ok(TheoremReport::new(
        ClaimId::T3,
        "boundary-scan",
        passed,
        worst.0,
        (!passed).then_some(Witness::Parameter {
            t: worst.1,
            value: worst.0,
        }),
        vec![metric("t_at_min", worst.1)],
    ))
}

// ------------------------------------------------------------ equivalences

/// `σ1 = σ2` exactly for equilateral root triangles.
pub fn check_equivalence_t4(c: &OrderedCubic, tol: &ToleranceConfig) -> TheoremReport {
    let r = ratios_direct(c);
    let diff = (r.sigma1 - r.sigma2).abs();
    let equal = diff <= tol.identity_tol;
    let equilateral = classify_configuration(c, tol) == Configuration::Equilateral;
    let margin = if equilateral {
        tol.identity_tol - diff
    } else {
        diff - tol.identity_tol
    };
    let passed = equal == equilateral;
    TheoremReport::new(
        ClaimId::T4,
        "equivalence",
        passed,
        margin,
        (!passed).then(|| Witness::configuration(None, c, &r)),
        vec![metric("sigma_difference", diff)],
    )
}

/// A ratio is real exactly for collinear roots.
pub fn check_equivalence_t5(c: &OrderedCubic, tol: &ToleranceConfig) -> TheoremReport {
    let r = ratios_direct(c);
    let im = r.sigma1.im.abs().min(r.sigma2.im.abs());
    let real = im <= tol.eq_tol;
    let collinear = classify_configuration(c, tol) == Configuration::Collinear;
    let margin = if collinear { tol.eq_tol - im } else { im - tol.eq_tol };
    let passed = real == collinear;
    TheoremReport::new(
        ClaimId::T5,
        "equivalence",
        passed,
        margin,
        (!passed).then(|| Witness::configuration(None, c, &r)),
        vec![metric("min_abs_im", im)],
    )
}

/// `|−2t + √(t² − 3)|` stays away from zero on the boundary, so boundary
/// ratios are never real.
pub fn boundary_reality_scan(t_min: f64, t_max: f64, steps: usize) -> Result<TheoremReport, TheoremError> {
    validate_scan(t_min, t_max, steps)?;
    let mut worst = (f64::INFINITY, t_min);
    let mut changes = 0usize;
    for branch in signed_branches(t_min, t_max, steps, Spacing::Linear) {
        let mut prev: Option<f64> = None;
        for t in branch {
            let v = -2.0 * t + radical(t);
            if v.abs() < worst.0 {
                worst = (v.abs(), t);
            }
            if let Some(p) = prev {
                if v == 0.0 || p * v < 0.0 {
                    changes += 1;
                }
            }
            prev = Some(v);
        }
    }
    let passed = changes == 0 && worst.0 > 0.0;
    Ok(TheoremReport::new(
        ClaimId::T5,
        "boundary-scan",
        passed,
        worst.0,
        (!passed).then_some(Witness::Parameter {
            t: worst.1,
            value: worst.0,
        }),
        vec![metric("min_abs_value", worst.0), metric("sign_changes", changes as f64)],
    ))
}

/// `1/3 < σ1 < 1/2 < σ2 < 2/3` for three distinct real roots.
pub fn check_hyperbolic(c: &OrderedCubic, tol: &ToleranceConfig) -> Result<TheoremReport, TheoremError> {
    let d = c.diameter();
    if c.roots().iter().any(|w| w.im.abs() > tol.eq_tol * d) {
        return Err(TheoremError::NotHyperbolic);
    }
    let r = ratios_direct(c);
    let (s1, s2) = (r.sigma1, r.sigma2);
    let margin = (s1.re - 1.0 / 3.0)
        .min(0.5 - s1.re)
        .min(s2.re - 0.5)
        .min(2.0 / 3.0 - s2.re);
    let real = s1.im.abs() <= tol.eq_tol && s2.im.abs() <= tol.eq_tol;
    let passed = margin > 0.0 && real;
    Ok(TheoremReport::new(
        ClaimId::HYP,
        "hyperbolic",
        passed,
        margin,
        (!passed).then(|| Witness::configuration(None, c, &r)),
        Vec::new(),
    ))
}

/// Reduces per-configuration reports of one claim to a single report: the
/// worst margin, with the witness of the first failure or of the worst case.
pub fn aggregate(claim: ClaimId, check: &'static str, reports: &[TheoremReport]) -> TheoremReport {
    let mut worst: Option<&TheoremReport> = None;
    let mut first_failure: Option<&TheoremReport> = None;
    let mut failures = 0usize;
    for r in reports {
        if !r.passed {
            failures += 1;
            first_failure.get_or_insert(r);
        }
        if worst.is_none_or(|w| r.margin < w.margin) {
            worst = Some(r);
        }
    }
    let passed = failures == 0 && !reports.is_empty();
    let witness = first_failure
        .or(worst)
        .and_then(|r| r.witness)
        .or_else(|| (!passed).then_some(Witness::Parameter { t: f64::NAN, value: 0.0 }));
    TheoremReport::new(
        claim,
        check,
        passed,
        worst.map_or(f64::NAN, |w| w.margin),
        if passed { None } else { witness },
        vec![
            metric("checked", reports.len() as f64),
            metric("failures", failures as f64),
        ],
    )
}

// ------------------------------------------------------------ Monte Carlo

/// Everything checked on one admissible sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleOutcome {
    pub index: u64,
    pub kind: SampleKind,
    pub cubic: OrderedCubic,
    pub direct: RatioVector,
    /// Closed forms, or `None` if they were not applicable.
    pub closed: Option<RatioVector>,
    pub identity_residual: f64,
    /// `max(|Δσ1|, |Δσ2|)` between the direct and closed-form ratios.
    pub oracle_difference: f64,
    /// `σ1` differs from the principal-sheet value (`f` or the boundary
    /// formula) by more than `1e-9`.
    pub principal_mismatch: bool,
    pub margins: [f64; 7],
    pub passes: [bool; 7],
    /// `|Im σ1|` within `eq_tol` of `1/3`, and whether `w` is then `∓2i`.
    pub im_extremal: Option<bool>,
}

pub fn evaluate_sample(s: &Sample, tol: &ToleranceConfig) -> SampleOutcome {
    let cubic = s.cubic;
    let direct = ratios_direct(&cubic);
    let n = normalize(&cubic);
    let report = assess_admissibility(n.w2n, n.w3n, tol);
    let closed = ratios_via_w(&n, &report).ok();
    let oracle_difference = closed.map_or(f64::INFINITY, |r| {
        (r.sigma1 - direct.sigma1).abs().max((r.sigma2 - direct.sigma2).abs())
    });

    let principal = if report.on_boundary {
        BoundaryPoint::new(n.w.im).ok().map(boundary_sigma1)
    } else if report.coincident {
        closed.map(|r| r.sigma1)
    } else {
        f_extension(n.w, tol).ok()
    };
    let principal_mismatch = principal.is_none_or(|p| (p - direct.sigma1).abs() > 1e-9);

    let margins = bound_margins(direct.sigma1, direct.sigma2);
    let passes = bound_passes(&margins, tol);
    let im_extremal = ((direct.sigma1.im.abs() - 1.0 / 3.0).abs() <= tol.eq_tol).then(|| {
        let target = c(0.0, -2.0 * direct.sigma1.im.signum());
        (n.w - target).abs() <= tol.eq_tol
    });

    SampleOutcome {
        index: s.index,
        kind: s.kind,
        cubic,
        direct,
        closed,
        identity_residual: identity_residual(&direct),
        oracle_difference,
        principal_mismatch,
        margins,
        passes,
        im_extremal,
    }
}

/// Aggregate numbers of a Monte Carlo run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloStats {
    pub samples: usize,
    pub boundary_samples: usize,
    pub opposite_sheet_samples: usize,
    pub principal_mismatches: usize,
    pub max_identity_residual: f64,
    pub max_oracle_difference: f64,
    pub im_extremal_samples: usize,
    pub im_extremal_off_family: usize,
    /// Samples failing at least one bound.
    pub bound_failures: usize,
}

impl MonteCarloStats {
    pub fn metrics(&self) -> Vec<Metric> {
        vec![
            metric("samples", self.samples as f64),
            metric("boundary_samples", self.boundary_samples as f64),
            metric("opposite_sheet_samples", self.opposite_sheet_samples as f64),
            metric("principal_mismatches", self.principal_mismatches as f64),
            metric("max_identity_residual", self.max_identity_residual),
            metric("max_oracle_difference", self.max_oracle_difference),
            metric("im_extremal_samples", self.im_extremal_samples as f64),
            metric("im_extremal_off_family", self.im_extremal_off_family as f64),
            metric("bound_failures", self.bound_failures as f64),
        ]
    }
}

/// Bound reports over a batch, one per claim in [`BOUND_CLAIMS`], plus the
/// batch statistics.
pub fn summarize_monte_carlo(outcomes: &[SampleOutcome]) -> (MonteCarloStats, Vec<TheoremReport>) {
    let mut stats = MonteCarloStats {
        samples: outcomes.len(),
        boundary_samples: 0,
        opposite_sheet_samples: 0,
        principal_mismatches: 0,
        max_identity_residual: 0.0,
        max_oracle_difference: 0.0,
        im_extremal_samples: 0,
        im_extremal_off_family: 0,
        bound_failures: 0,
    };
    let mut worst: [Option<&SampleOutcome>; 7] = [None; 7];
    let mut failures = [0usize; 7];
    for o in outcomes {
        if o.kind == SampleKind::Boundary {
            stats.boundary_samples += 1;
        }
        if o.closed.is_some_and(|r| !r.path.is_principal_sheet()) {
            stats.opposite_sheet_samples += 1;
        }
        if o.principal_mismatch {
            stats.principal_mismatches += 1;
        }
        stats.max_identity_residual = stats.max_identity_residual.max(o.identity_residual);
        stats.max_oracle_difference = stats.max_oracle_difference.max(o.oracle_difference);
        if let Some(on_family) = o.im_extremal {
            stats.im_extremal_samples += 1;
            if !on_family {
                stats.im_extremal_off_family += 1;
            }
        }
        if o.passes.iter().any(|p| !p) {
            stats.bound_failures += 1;
        }
        for k in 0..7 {
            if !o.passes[k] {
                failures[k] += 1;
            }
            if worst[k].is_none_or(|w| o.margins[k] < w.margins[k]) {
                worst[k] = Some(o);
            }
        }
    }
    let reports = (0..7)
        .map(|k| {
            let passed = failures[k] == 0 && !outcomes.is_empty();
            let witness = worst[k].map(|o| Witness::configuration(Some(o.index), &o.cubic, &o.direct));
            TheoremReport::new(
                BOUND_CLAIMS[k],
                "monte-carlo",
                passed,
                worst[k].map_or(f64::NAN, |o| o.margins[k]),
                witness.or_else(|| (!passed).then_some(Witness::Parameter { t: f64::NAN, value: 0.0 })),
                vec![
                    metric("samples", outcomes.len() as f64),
                    metric("failures", failures[k] as f64),
                ],
            )
        })
        .collect();
    (stats, reports)
}

// ------------------------------------------------------------ orchestration

/// Maps an index range to values, in index order.
pub trait IndexMap {
    fn map<T, F>(&self, n: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send;
}

pub struct Sequential;

impl IndexMap for Sequential {
    fn map<T, F>(&self, n: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        (0..n).map(f).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub samples: u64,
    pub seed: u64,
    pub tol: ToleranceConfig,
    pub scan_steps: usize,
    pub tail_steps: usize,
}

impl VerifyConfig {
    pub fn new(samples: u64, seed: u64, tol: ToleranceConfig) -> Self {
        Self {
            samples,
            seed,
            tol,
            scan_steps: DEFAULT_SCAN_STEPS,
            tail_steps: DEFAULT_TAIL_STEPS,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOutcome {
    pub reports: Vec<TheoremReport>,
    pub monte_carlo: Option<MonteCarloStats>,
}

impl VerifyOutcome {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }
}

/// Independent seeds for the auxiliary samplers.
pub fn derived_seed(seed: u64, tag: u64) -> u64 {
    seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

const TAG_EQUILATERAL: u64 = 1;
const TAG_NEAR_EQUILATERAL: u64 = 2;
const TAG_COLLINEAR: u64 = 3;
const TAG_REAL: u64 = 4;

pub fn monte_carlo<M: IndexMap>(cfg: &VerifyConfig, mapper: &M) -> Vec<SampleOutcome> {
    let (seed, tol) = (cfg.seed, cfg.tol);
    mapper.map(cfg.samples, move |i| evaluate_sample(&admissible_sample(seed, i, &tol), &tol))
}

/// Runs the selected group of checks.
pub fn run_suite<M: IndexMap>(suite: Suite, cfg: &VerifyConfig, mapper: &M) -> VerifyOutcome {
    let tol = cfg.tol;
    let seed = cfg.seed;
    let n = cfg.samples;
    let mut reports = Vec::new();
    let scan = |f: fn(f64, f64, usize, Spacing) -> Result<Vec<TheoremReport>, TheoremError>,
                out: &mut Vec<TheoremReport>| {
        out.extend(f(SQRT_3, DEFAULT_T_MAX, cfg.scan_steps, Spacing::Linear).unwrap_or_default());
        out.extend(f(DEFAULT_T_MAX, TAIL_MAX, cfg.tail_steps.max(MIN_SCAN_STEPS), Spacing::Log).unwrap_or_default());
    };
    if suite.includes(Suite::L1) {
        scan(scan_lemma1, &mut reports);
    }
    if suite.includes(Suite::L2) {
        scan(scan_lemma2, &mut reports);
    }

    let mut stats = None;
    let mut mc_reports = Vec::new();
    if suite.needs_monte_carlo() {
        let outcomes = monte_carlo(cfg, mapper);
        let (s, r) = summarize_monte_carlo(&outcomes);
        stats = Some(s);
        mc_reports = r;
    }
    let mc = |claim: ClaimId, out: &mut Vec<TheoremReport>| {
        out.extend(mc_reports.iter().filter(|r| r.claim == claim).cloned());
    };
    let modulus_steps = cfg.scan_steps.clamp(MIN_SCAN_STEPS, 100_000);

    if suite.includes(Suite::T1) {
        for claim in [ClaimId::T1A, ClaimId::T1B, ClaimId::T1E] {
            mc(claim, &mut reports);
        }
        let sharp = sharpness_reports(&tol);
        let ext = extremal_reports(&tol);
        reports.extend(sharp.iter().filter(|r| r.claim == ClaimId::T1A).cloned());
        reports.extend(ext.iter().filter(|r| matches!(r.claim, ClaimId::T1C | ClaimId::T1D)).cloned());
        reports.extend(boundary_modulus_scan(SQRT_3, DEFAULT_T_MAX, modulus_steps).ok());
    }
    if suite.includes(Suite::T2) {
        for claim in [ClaimId::T2A, ClaimId::T2B, ClaimId::T2E] {
            mc(claim, &mut reports);
        }
        let sharp = sharpness_reports(&tol);
        let ext = extremal_reports(&tol);
        reports.extend(sharp.iter().filter(|r| r.claim == ClaimId::T2A).cloned());
        reports.extend(ext.iter().filter(|r| matches!(r.claim, ClaimId::T2C | ClaimId::T2D)).cloned());
    }
    if suite.includes(Suite::T3) {
        mc(ClaimId::T3, &mut reports);
        reports.extend(boundary_order_scan(SQRT_3, DEFAULT_T_MAX, modulus_steps).ok());
    }
    if suite.includes(Suite::T4) {
        let random = mapper.map(n, |i| check_equivalence_t4(&admissible_sample(seed, i, &tol).cubic, &tol));
        reports.push(aggregate(ClaimId::T4, "samples", &random));
        let s_eq = derived_seed(seed, TAG_EQUILATERAL);
        let s_near = derived_seed(seed, TAG_NEAR_EQUILATERAL);
        let k = n.clamp(1, 10_000);
        let mut constructed = mapper.map(k, |i| check_equivalence_t4(&equilateral_sample(s_eq, i, 0.0, &tol), &tol));
        constructed.extend(mapper.map(k, |i| {
            let defect = [1e-6, 1e-4, 1e-2][(i % 3) as usize];
            check_equivalence_t4(&equilateral_sample(s_near, i, defect, &tol), &tol)
        }));
        for sign in [1.0, -1.0] {
            if let Ok(cub) = order_roots(c(-1.0, 0.0), c(0.0, sign * SQRT_3), c(1.0, 0.0), &tol) {
                constructed.push(check_equivalence_t4(&cub, &tol));
            }
        }
        reports.push(aggregate(ClaimId::T4, "constructed", &constructed));
    }
    if suite.includes(Suite::T5) {
        let random = mapper.map(n, |i| check_equivalence_t5(&admissible_sample(seed, i, &tol).cubic, &tol));
        reports.push(aggregate(ClaimId::T5, "samples", &random));
        let s_col = derived_seed(seed, TAG_COLLINEAR);
        let k = n.clamp(1, 10_000);
        let mut constructed = mapper.map(k, |i| check_equivalence_t5(&collinear_sample(s_col, i, &tol), &tol));
        for roots in [
            [c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            [c(-1.0, 0.0), c(0.0, SQRT_3), c(1.0, 0.0)],
            [c(-1.0, -1.1), c(0.0, 0.0), c(1.0, 1.1)],
        ] {
            if let Ok(cub) = order_roots(roots[0], roots[1], roots[2], &tol) {
                constructed.push(check_equivalence_t5(&cub, &tol));
            }
        }
        reports.push(aggregate(ClaimId::T5, "constructed", &constructed));
        reports.extend(boundary_reality_scan(SQRT_3, DEFAULT_T_MAX, modulus_steps).ok());
    }
    if suite.includes(Suite::Hyp) {
        let s_real = derived_seed(seed, TAG_REAL);
        let mut hyp = mapper.map(n, |i| {
            check_hyperbolic(&real_root_sample(s_real, i, &tol), &tol).expect("real roots")
        });
        for roots in [[-1.0, 0.0, 1.0], [0.0, 1.0, 100.0], [0.0, 1.0, 1.0 + 1e-6]] {
            if let Ok(cub) = order_roots(c(roots[0], 0.0), c(roots[1], 0.0), c(roots[2], 0.0), &tol) {
                if let Ok(r) = check_hyperbolic(&cub, &tol) {
                    hyp.push(r);
                }
            }
        }
        reports.push(aggregate(ClaimId::HYP, "samples", &hyp));
    }
    VerifyOutcome {
        reports,
        monte_carlo: stats,
    }
}

/// Checks the inellipse oracle on one configuration: focal error relative to
/// the diameter and the angle identity error.
pub fn inellipse_agreement(c: &OrderedCubic, tol: &ToleranceConfig) -> Option<(f64, f64)> {
    let e = steiner_inellipse(c, tol).ok()?;
    let d = c.diameter();
    let focal = (e.focus1 - c.z1).abs().max((e.focus2 - c.z2).abs()) / d;
    let r = ratios_direct(c);
    let (t1, t2) = ratio_angles(c);
    let angle = angle_distance(t1, r.sigma1.arg()).max(angle_distance(t2, r.sigma2.arg()));
    Some((focal, angle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::approx_eq;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn bounds_on_named_configurations() {
        let t = tol();
        let cub = order_roots(c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), &t).unwrap();
        let reps = check_bounds(&ratios_direct(&cub), &t);
        assert_eq!(reps.len(), 7);
        assert!(reps.iter().all(|r| r.passed));
        let t3 = reps.iter().find(|r| r.claim == ClaimId::T3).unwrap();
        assert!((t3.margin - (2.0 * SQRT_3 / 3.0 - 1.0)).abs() < 1e-15);

        let eq = order_roots(c(-1.0, 0.0), c(0.0, SQRT_3), c(1.0, 0.0), &t).unwrap();
        let reps = check_bounds(&ratios_direct(&eq), &t);
        let t3 = reps.iter().find(|r| r.claim == ClaimId::T3).unwrap();
        assert!(t3.passed && t3.margin.abs() < 1e-15);

        let (_, r) = extremal_family_im(c(1.0, -4.0), ComplexValue::ZERO, ImSign::Plus, &t).unwrap();
        let t1b = check_bounds(&r, &t).into_iter().find(|r| r.claim == ClaimId::T1B).unwrap();
        assert!(t1b.passed && t1b.margin.abs() < 1e-15);
    }

    #[test]
    fn failed_bound_carries_witness() {
        let r = RatioVector {
            sigma1: c(-0.1, 0.0),
            sigma2: c(0.5, 0.0),
            path: RatioPath::Direct,
        };
        let reps = check_bounds(&r, &tol());
        let t1a = &reps[0];
        assert!(!t1a.passed && t1a.margin < 0.0 && t1a.witness.is_some());
    }

    #[test]
    fn lemma_expressions_at_named_points() {
        assert_eq!(lemma1_expr(2.0, -1.0), -9.0);
        assert!((lemma1_expr(SQRT_3, -1.0) + 12.0).abs() < 1e-13);
        assert_eq!(lemma1_identity_error(2.0), 0.0);
        assert_eq!(lemma2_expr(-2.0, -1.0), 0.0);
        assert_eq!(lemma2_expr(2.0, -1.0), -12.0);
        assert_eq!(lemma2_expr(2.0, 1.0), 0.0);
        assert!(lemma2_identity_error(3.0) < 1e-15);
    }

    #[test]
    fn lemma_scans_pass() {
        let r1 = scan_lemma1(SQRT_3, 1e3, 100_000, Spacing::Linear).unwrap();
        assert!(r1.iter().all(|r| r.passed), "{r1:?}");
        assert!(r1[0].margin > 3.0);
        let r2 = scan_lemma2(SQRT_3, 1e3, 100_000, Spacing::Linear).unwrap();
        assert!(r2.iter().all(|r| r.passed), "{r2:?}");
        assert!((r2[0].metric("root").unwrap() + 2.0).abs() <= ROOT_TOL);
        assert!((r2[1].metric("root").unwrap() - 2.0).abs() <= ROOT_TOL);
        let tail = scan_lemma2(1e3, TAIL_MAX, 1000, Spacing::Log).unwrap();
        assert!(tail.iter().all(|r| r.passed && r.metric("root_count") == Some(0.0)));
    }

    #[test]
    fn lemma_scans_reject_bad_ranges() {
        assert_eq!(scan_lemma1(1.0, 10.0, 1000, Spacing::Linear), Err(TheoremError::BadRange));
        assert_eq!(scan_lemma1(2.0, 10.0, 999, Spacing::Linear), Err(TheoremError::BadRange));
        assert_eq!(scan_lemma2(5.0, 5.0, 1000, Spacing::Linear), Err(TheoremError::BadRange));
    }

    #[test]
    fn sharpness_family_values() {
        let t = tol();
        let (_, r) = sharpness_probe_re(2.0, &t).unwrap();
        assert!(approx_eq(r.sigma1, c(0.6, -0.2), 1e-14));
        let (_, r) = sharpness_probe_re(100.0, &t).unwrap();
        assert!((r.sigma1.re - 0.666_649_997_916_312_4).abs() < 1e-12);
        let (_, r) = sharpness_probe_re(-100.0, &t).unwrap();
        assert!((r.sigma1.re - 0.000_149_988_751_687).abs() < 1e-12);
        let (_, r) = sharpness_probe_re(-1000.0, &t).unwrap();
        assert!(r.sigma1.re < 1e-4);
        assert_eq!(sharpness_probe_re(1.5, &t), Err(TheoremError::BadParameter));
        let reps = sharpness_reports(&t);
        assert!(reps.iter().all(|r| r.passed), "{reps:?}");
    }

    #[test]
    fn im_family_values() {
        let t = tol();
        let (cub, r) = extremal_family_im(c(1.0, -4.0), ComplexValue::ZERO, ImSign::Plus, &t).unwrap();
        assert_eq!(cub.roots(), [c(-4.0, -1.0), c(2.0, -8.0), c(4.0, 1.0)]);
        assert!(approx_eq(r.sigma1, c(1.0 / 3.0, 1.0 / 3.0), 1e-15));
        // σ2 on the same family is (2 + i)/5
        assert!(approx_eq(r.sigma2, c(0.4, 0.2), 1e-15));

        let (_, r) = extremal_family_im(c(1.0, 4.0), ComplexValue::ZERO, ImSign::Minus, &t).unwrap();
        assert!((r.sigma1.im + 1.0 / 3.0).abs() < 1e-15);

        assert_eq!(
            extremal_family_im(c(-1.0, -4.0), ComplexValue::ZERO, ImSign::Plus, &t),
            Err(TheoremError::ConstraintViolated)
        );
        let [a, b, d] = im_family_roots(c(-1.0, -4.0), ComplexValue::ZERO);
        let r = ratios_direct(&order_roots(a, b, d, &t).unwrap());
        assert!(approx_eq(r.sigma1, c(0.6, 0.2), 1e-15));
        assert!(approx_eq(r.sigma2, c(2.0 / 3.0, 1.0 / 3.0), 1e-15));
    }

    #[test]
    fn extremal_reports_split_by_theorem() {
        let reps = extremal_reports(&tol());
        let get = |id| reps.iter().find(|r| r.claim == id).unwrap();
        assert!(get(ClaimId::T1C).passed);
        assert!(get(ClaimId::T1D).passed);
        let t2c = get(ClaimId::T2C);
        assert!(!t2c.passed && t2c.witness.is_some());
        assert!((t2c.metric("im_sigma2_on_mirrored_family").unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(!get(ClaimId::T2D).passed);
    }

    #[test]
    fn boundary_scans_pass() {
        let m = boundary_modulus_scan(SQRT_3, 1e3, 10_000).unwrap();
        assert!(m.passed, "{m:?}");
        assert!(boundary_order_scan(SQRT_3, 1e3, 10_000).unwrap().passed);
        assert!(boundary_reality_scan(SQRT_3, 1e3, 10_000).unwrap().passed);
    }

    #[test]
    fn equivalences_on_named_configurations() {
        let t = tol();
        let eq = order_roots(c(-1.0, 0.0), c(0.0, SQRT_3), c(1.0, 0.0), &t).unwrap();
        let line = order_roots(c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), &t).unwrap();
        assert!(check_equivalence_t4(&eq, &t).passed);
        assert!(check_equivalence_t4(&line, &t).passed);
        assert!(check_equivalence_t5(&eq, &t).passed);
        assert!(check_equivalence_t5(&line, &t).passed);
        let tilted = order_roots(c(-1.0, -1.1), c(0.0, 0.0), c(1.0, 1.1), &t).unwrap();
        assert!(check_equivalence_t5(&tilted, &t).passed);
    }

    #[test]
    fn hyperbolic_examples() {
        let t = tol();
        for roots in [[-1.0, 0.0, 1.0], [0.0, 1.0, 100.0], [0.0, 1.0, 1.0 + 1e-6]] {
            let cub = order_roots(c(roots[0], 0.0), c(roots[1], 0.0), c(roots[2], 0.0), &t).unwrap();
            assert!(check_hyperbolic(&cub, &t).unwrap().passed);
        }
        let cub = order_roots(c(-1.0, 0.0), c(0.0, 1.0), c(1.0, 0.0), &t).unwrap();
        assert_eq!(check_hyperbolic(&cub, &t), Err(TheoremError::NotHyperbolic));
    }

    #[test]
    fn suite_names_parse() {
        for name in Suite::NAMES {
            assert!(name.parse::<Suite>().is_ok());
        }
        assert_eq!("hyp".parse::<Suite>(), Ok(Suite::Hyp));
        assert!("T9".parse::<Suite>().is_err());
    }

    #[test]
    fn small_monte_carlo_is_consistent() {
        let mut cfg = VerifyConfig::new(2000, 11, tol());
        cfg.scan_steps = 1000;
        let outcomes = monte_carlo(&cfg, &Sequential);
        let (stats, reps) = summarize_monte_carlo(&outcomes);
        assert_eq!(stats.samples, 2000);
        assert!(stats.max_identity_residual < 1e-10);
        assert!(stats.max_oracle_difference < 1e-9);
        assert_eq!(reps.len(), 7);
        assert!(reps.iter().all(|r| r.witness.is_some()));
    }
}
