//! Complex ratio vectors of cubic polynomials.
//!
//! For `p(z) = (z − w1)(z − w2)(z − w3)` with `Re w1 < Re w2 < Re w3` and
//! critical points `z1`, `z2` labeled so that `z1 = z2` or `Re z1 < Re z2`, the
//! ratio vector is
//!
//! ```text
//! σ1 = (z1 − w1)/(w2 − w1),   σ2 = (z2 − w2)/(w3 − w2).
//! ```
//!
//! The crate computes it directly and through closed forms in `w = w2/w3`,
//! checks the known bounds and equivalences numerically, and provides an
//! independent Steiner-inellipse oracle for the critical points.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]
// `!(x > 0.0)` rejects NaN along with the non-positive values, on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cubic;
pub mod inellipse;
mod linalg;
pub mod numeric;
pub mod ratio;
pub mod region;
pub mod sampling;
pub mod theorem;

pub use cubic::{
    assess_admissibility, classify_configuration, critical_points_direct, normalize, order_roots,
    AdmissibilityReport, Configuration, CubicError, NormalizedCubic, OrderedCubic,
};
pub use numeric::{approx_eq, in_gamma, principal_sqrt, ComplexValue, ToleranceConfig};
pub use ratio::{
    boundary_modulus_sq, boundary_sigma1, boundary_sigma_diff, boundary_uv, f_extension,
    g_extension, identity_residual, ratios_direct, ratios_via_w, BoundaryPoint, RatioError,
    RatioPath, RatioVector,
};
