use nalgebra::DMatrix;

use super::seifert::SeifertMatrix;
use crate::domain::RationalAngle;
use crate::error::{Error, Result};

/// Default relative eigenvalue threshold.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Signature of `(1 - w)A + (1 - conj w)A^T` for a row-major `n x n` matrix,
/// via the real symmetric embedding `[[Re H, -Im H], [Im H, Re H]]`.
///
/// With `w = cos + i sin`, `Re H = (1 - cos)(A + A^T)` and
/// `Im H = sin (A^T - A)`. Each eigenvalue of `H` appears twice in the
/// embedding, so the embedded inertia is halved.
pub(crate) fn embedded_signature(
    entries: &[i64],
    n: usize,
    t: &RationalAngle,
    tol: f64,
) -> Result<i64> {
    if n == 0 {
        return Ok(0);
    }
    let theta = std::f64::consts::TAU * t.to_f64();
    let (s, c) = theta.sin_cos();
    let a = |i: usize, j: usize| entries[i * n + j] as f64;
    let big = DMatrix::from_fn(2 * n, 2 * n, |r, col| {
        let (i, j) = (r % n, col % n);
        let re = (1.0 - c) * (a(i, j) + a(j, i));
        let im = s * (a(j, i) - a(i, j));
        match (r < n, col < n) {
            (true, true) | (false, false) => re,
            (true, false) => -im,
            (false, true) => im,
        }
    });
    let eig = big.symmetric_eigenvalues();
    let largest = eig.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let threshold = tol * largest;
    let mut positive = 0i64;
    let mut negative = 0i64;
    for &v in eig.iter() {
        if v.abs() < threshold || largest == 0.0 {
            return Err(Error::NearSingular {
                t: t.to_string(),
                magnitude: v.abs(),
                threshold,
            });
        }
        if v > 0.0 {
            positive += 1;
        } else {
            negative += 1;
        }
    }
    if positive % 2 != 0 || negative % 2 != 0 {
        return Err(Error::Invariant(format!(
            "embedded inertia ({positive}, {negative}) at t = {t} is not doubled"
        )));
    }
    Ok((positive - negative) / 2)
}

/// Levine-Tristram signature from a Seifert matrix, evaluated numerically.
///
/// Fails with [`Error::NearSingular`] rather than guessing when some
/// eigenvalue is within `tol` (relative to the largest) of zero; pick an
/// angle away from the jumps, such as a midpoint `(2k+1)/(2pq)`.
pub fn hermitian_signature(a: &SeifertMatrix, t: &RationalAngle, tol: f64) -> Result<i64> {
    embedded_signature(a.entries(), a.size(), t, tol)
}
