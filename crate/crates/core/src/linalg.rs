//! Dense least squares for the small systems of the conic fit.

/// Solves `min ‖a·x − b‖` by Householder QR. Returns `None` when `a` is
/// numerically rank deficient.
pub(crate) fn least_squares<const M: usize, const N: usize>(
    mut a: [[f64; N]; M],
    mut b: [f64; M],
) -> Option<[f64; N]> {
    debug_assert!(M >= N);
    let mut col_scale = 0.0f64;
    for row in &a {
        for v in row {
            col_scale = col_scale.max(v.abs());
        }
    }
    if col_scale == 0.0 {
        return None;
    }

    for k in 0..N {
        let mut norm = 0.0;
        for row in a.iter().skip(k) {
            norm = libm::hypot(norm, row[k]);
        }
        if norm <= 1e-14 * col_scale {
            return None;
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        // v = x − alpha·e1, stored in column k below the diagonal
        a[k][k] -= alpha;
        let vnorm_sq: f64 = a.iter().skip(k).map(|row| row[k] * row[k]).sum();
        for j in (k + 1)..N {
            let dot: f64 = a.iter().skip(k).map(|row| row[k] * row[j]).sum();
            let f = 2.0 * dot / vnorm_sq;
            for row in a.iter_mut().skip(k) {
                row[j] -= f * row[k];
            }
        }
        let dot: f64 = a.iter().zip(b.iter()).skip(k).map(|(row, bi)| row[k] * bi).sum();
        let f = 2.0 * dot / vnorm_sq;
        for (row, bi) in a.iter().zip(b.iter_mut()).skip(k) {
            *bi -= f * row[k];
        }
        a[k][k] = alpha;
    }

    let mut x = [0.0; N];
    for i in (0..N).rev() {
        let mut s = b[i];
        for j in (i + 1)..N {
            s -= a[i][j] * x[j];
        }
        x[i] = s / a[i][i];
    }
    Some(x)
}
