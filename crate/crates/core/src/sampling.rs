//! Deterministic random configurations.
//!
//! Every sample is drawn from its own ChaCha8 stream, selected by the sample
//! index, so a batch can be generated in any order or in parallel and still
//! reproduce bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cubic::{assess_admissibility, normalize, order_roots, OrderedCubic};
use crate::numeric::{ComplexValue, ToleranceConfig};
use crate::ratio::SQRT_3;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Fraction of admissible samples drawn on the boundary `w = it`.
pub const BOUNDARY_FRACTION: f64 = 0.1;

const BOX: f64 = 10.0;
const MIN_SCALE: f64 = 1e-3;
const MAX_SCALE: f64 = 1e3;
const MAX_BOUNDARY_T: f64 = 1e3;
const MAX_ATTEMPTS: usize = 10_000;

/// The random stream for sample `index`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SampleKind {
    Interior,
    Boundary,
}

impl SampleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SampleKind::Interior => "interior",
            SampleKind::Boundary => "boundary",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub index: u64,
    pub kind: SampleKind,
    pub cubic: OrderedCubic,
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    libm::exp(uniform(rng, libm::log(lo), libm::log(hi)))
}

fn positive(rng: &mut ChaCha8Rng, hi: f64) -> f64 {
    // (0, hi]
    hi * (1.0 - rng.random::<f64>())
}

/// Scales by a log-uniform factor, translates, and shuffles the roots before
/// handing them to [`order_roots`].
fn place(
    rng: &mut ChaCha8Rng,
    roots: [ComplexValue; 3],
    tol: &ToleranceConfig,
) -> Option<OrderedCubic> {
    let scale = log_uniform(rng, MIN_SCALE, MAX_SCALE);
    let shift = ComplexValue::new(uniform(rng, -BOX, BOX), uniform(rng, -BOX, BOX)) * scale;
    let mut r = roots.map(|w| w * scale + shift);
    for i in (1..3).rev() {
        let j = rng.random_range(0..=i);
        r.swap(i, j);
    }
    order_roots(r[0], r[1], r[2], tol).ok()
}

/// Admissible normalized pair, interior or boundary, before placement.
fn admissible_pair(
    rng: &mut ChaCha8Rng,
    kind: SampleKind,
    tol: &ToleranceConfig,
) -> Option<(ComplexValue, ComplexValue)> {
    let (w2, w3) = match kind {
        SampleKind::Interior => {
            let w3 = ComplexValue::new(positive(rng, BOX), uniform(rng, -BOX, BOX));
            let w2 = ComplexValue::new(uniform(rng, -w3.re, w3.re), uniform(rng, -BOX, BOX));
            (w2, w3)
        }
        SampleKind::Boundary => {
            let t = log_uniform(rng, SQRT_3, MAX_BOUNDARY_T);
            let t = if rng.random::<bool>() { t } else { -t };
            let re = positive(rng, BOX);
            // |Re(it·w3)| = |t·Im w3| < Re w3
            let bound = re / t.abs();
            let w3 = ComplexValue::new(re, uniform(rng, -bound, bound));
            (ComplexValue::imag(t) * w3, w3)
        }
    };
    let report = assess_admissibility(w2, w3, tol);
    (report.admissible && report.on_boundary == (kind == SampleKind::Boundary)).then_some((w2, w3))
}

/// Sample `index` of the admissible-configuration stream.
///
/// About [`BOUNDARY_FRACTION`] of the samples lie on the boundary family.
/// Candidates are rejected until the admissibility check, applied both before
/// and after placement, accepts one.
pub fn admissible_sample(seed: u64, index: u64, tol: &ToleranceConfig) -> Sample {
    let mut rng = stream(seed, index);
    let kind = if rng.random::<f64>() < BOUNDARY_FRACTION {
        SampleKind::Boundary
    } else {
        SampleKind::Interior
    };
    for _ in 0..MAX_ATTEMPTS {
        let Some((w2, w3)) = admissible_pair(&mut rng, kind, tol) else {
            continue;
        };
        let Some(cubic) = place(&mut rng, [-w3, w2, w3], tol) else {
            continue;
        };
        let n = normalize(&cubic);
        let report = assess_admissibility(n.w2n, n.w3n, tol);
        if report.admissible && report.on_boundary == (kind == SampleKind::Boundary) {
            return Sample { index, kind, cubic };
        }
    }
    unreachable!("admissible sampler exhausted its attempts")
}

/// Three distinct real roots with well separated values.
pub fn real_root_sample(seed: u64, index: u64, tol: &ToleranceConfig) -> OrderedCubic {
    let mut rng = stream(seed, index);
    loop {
        let r = [0, 1, 2].map(|_| ComplexValue::real(uniform(&mut rng, -BOX, BOX)));
        if let Some(c) = place_real(&mut rng, r, tol) {
            return c;
        }
    }
}

fn place_real(
    rng: &mut ChaCha8Rng,
    roots: [ComplexValue; 3],
    tol: &ToleranceConfig,
) -> Option<OrderedCubic> {
    let scale = log_uniform(rng, MIN_SCALE, MAX_SCALE);
    let shift = uniform(rng, -BOX, BOX) * scale;
    let r = roots.map(|w| ComplexValue::real(w.re * scale + shift));
    let d = crate::cubic::diameter(r[0], r[1], r[2]);
    let gap = (r[0].re - r[1].re)
        .abs()
        .min((r[1].re - r[2].re).abs())
        .min((r[0].re - r[2].re).abs());
    if gap < 1e-6 * d {
        return None;
    }
    order_roots(r[0], r[1], r[2], tol).ok()
}

/// Three points on a random non-vertical line.
pub fn collinear_sample(seed: u64, index: u64, tol: &ToleranceConfig) -> OrderedCubic {
    let mut rng = stream(seed, index);
    loop {
        let phi = uniform(&mut rng, -1.5, 1.5);
        let dir = ComplexValue::new(libm::cos(phi), libm::sin(phi));
        let anchor = ComplexValue::new(uniform(&mut rng, -BOX, BOX), uniform(&mut rng, -BOX, BOX));
        let r = [0, 1, 2].map(|_| anchor + dir * uniform(&mut rng, -BOX, BOX));
        let min_gap = (r[0] - r[1]).abs().min((r[1] - r[2]).abs()).min((r[0] - r[2]).abs());
        if min_gap < 1e-3 || !((r[0].re - r[1].re).abs() > 1e-6) {
            continue;
        }
        if let Some(c) = place(&mut rng, r, tol) {
            return c;
        }
    }
}

/// An equilateral triangle with no vertical side, optionally with one vertex
/// pushed off by a relative amount `defect`.
pub fn equilateral_sample(
    seed: u64,
    index: u64,
    defect: f64,
    tol: &ToleranceConfig,
) -> OrderedCubic {
    let mut rng = stream(seed, index);
    let third = 2.0 * core::f64::consts::PI / 3.0;
    loop {
        let phase = uniform(&mut rng, 0.0, third);
        let mut r = [0.0, 1.0, 2.0].map(|k| {
            let a = phase + k * third;
            ComplexValue::new(libm::cos(a), libm::sin(a))
        });
        let side_ok = (0..3).all(|i| (r[i].re - r[(i + 1) % 3].re).abs() > 1e-3);
        if !side_ok {
            continue;
        }
        let push = uniform(&mut rng, 0.0, 2.0 * core::f64::consts::PI);
        r[0] = r[0] + ComplexValue::new(libm::cos(push), libm::sin(push)) * defect;
        if let Some(c) = place(&mut rng, r, tol) {
            return c;
        }
    }
}
