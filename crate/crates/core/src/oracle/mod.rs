//! Independent checks on the lattice engine.
//!
//! Two routes that share no code with [`crate::lattice`] or
//! [`crate::maxsig`]: the signature of the Hermitian form
//! `(1 - w)A + (1 - conj w)A^T` built from an explicit Seifert matrix `A`
//! of the torus braid closure, and a full sweep of the signature function
//! for its maximum.

mod hermitian;
mod modular;
mod poly;
mod seifert;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use hermitian::{hermitian_signature, DEFAULT_TOLERANCE};
pub use modular::determinant;
pub use poly::IntPoly;
pub use seifert::{
    orientation_sign, seifert_matrix, torus_alexander, torus_braid, BraidWord, SeifertMatrix,
};

use crate::domain::{RationalAngle, TorusKnot};
use crate::error::Result;
use crate::lattice::{self, Locus};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Maximum of the signature function over every interval and breakpoint,
/// with all loci attaining it.
pub fn brute_force_max(knot: &TorusKnot) -> (i64, Vec<Locus>) {
    let sf = lattice::signature_step_function(knot);
    (sf.max(), sf.argmax())
}

/// The half-open window `(1/2 - 1/q, 1/2]` in which the maximum is attained.
pub fn maximizer_window(knot: &TorusKnot) -> (BigRational, BigRational) {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let lo = &half - BigRational::new(BigInt::from(1), BigInt::from(knot.q()));
    (lo, half)
}

/// Whether some maximizing locus meets [`maximizer_window`].
pub fn maximizer_in_window(knot: &TorusKnot, argmax: &[Locus]) -> bool {
    let (lo, hi) = maximizer_window(knot);
    argmax.iter().any(|l| l.meets_window(&lo, &hi))
}

/// `count` midpoints `(2k+1)/(2pq)` drawn with a generator seeded from
/// `(p, q)`, so the same knot always gets the same angles.
pub fn sample_midpoints(knot: &TorusKnot, count: usize) -> Vec<RationalAngle> {
    let n = knot.p() as u64 * knot.q() as u64;
    let seed = (knot.p() as u64) << 32 | knot.q() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.random_range(0..n);
            RationalAngle::new(2 * k + 1, 2 * n).expect("midpoint lies in (0, 1)")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AngleComparison {
    pub t: RationalAngle,
    pub hermitian: i64,
    pub lattice: i64,
}

/// Hermitian-form signatures against lattice counts for one knot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleComparison {
    pub knot: TorusKnot,
    pub matrix_size: usize,
    /// The Seifert matrix passed Alexander-polynomial validation.
    pub alexander_ok: bool,
    pub angles: Vec<AngleComparison>,
    pub pass: bool,
}

/// Builds and validates the Seifert matrix of `knot`, then compares the
/// Hermitian signature with [`lattice::lt_signature`] at `samples` seeded
/// midpoints.
pub fn compare_with_lattice(
    knot: &TorusKnot,
    samples: usize,
    tol: f64,
) -> Result<OracleComparison> {
    let matrix = seifert_matrix(&torus_braid(knot))?;
    let mut angles = Vec::with_capacity(samples);
    for t in sample_midpoints(knot, samples) {
        let hermitian = hermitian_signature(&matrix, &t, tol)?;
        let lattice = lattice::lt_signature(knot, &t);
        angles.push(AngleComparison {
            t,
            hermitian,
            lattice,
        });
    }
    let pass = angles.iter().all(|a| a.hermitian == a.lattice);
    Ok(OracleComparison {
        knot: *knot,
        matrix_size: matrix.size(),
        alexander_ok: true,
        angles,
        pass,
    })
}
