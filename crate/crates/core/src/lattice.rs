//! Levine-Tristram signatures of torus knots from lattice-point counts.
//!
//! The lattice is `{(i/p, j/q) : 0 < i < p, 0 < j < q}`. A point `a` counts
//! toward `sigma_t` when its Manhattan norm `|a| = i/p + j/q` lies in the open
//! annulus `t < |a| < t + 1`, and then
//!
//! ```text
//! sigma_t(T(p,q)) = 2 * #{a : t < |a| < t + 1} - (p - 1)(q - 1).
//! ```
//!
//! Litherland's original statement attaches the `+` count to the window
//! `(t - 1, t) mod 2`, which is the complement of the annulus. We count the
//! annulus because that is the reading under which sigma_{1/4}(T(4,7)) = 10
//! and sigma(T(5,12)) = 28 come out with positive torus knots positive.
//!
//! All inequalities are strict: a point sitting exactly on the boundary of
//! the annulus counts for neither side. That choice is what fixes the value
//! of the signature function at its jumps.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{format_rational, RationalAngle, TorusKnot};

/// Lattice points split by position relative to the annulus `t < |a| < t + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AnnulusCount {
    /// Strictly inside the annulus.
    pub inside: u64,
    /// Strictly below the inner or above the outer boundary.
    pub outside: u64,
    /// Exactly on a boundary. Zero unless `t` is a jump abscissa candidate.
    pub boundary: u64,
}

impl AnnulusCount {
    pub fn total(&self) -> u64 {
        self.inside + self.outside + self.boundary
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct RawCount {
    inside: u64,
    boundary: u64,
}

/// Whether every intermediate of the per-column count for angle `n/d` fits in
/// an i128. The largest magnitude formed is `(n + d) p q <= 2 d p q`.
fn fits_i128(p: u32, q: u32, denom: &BigInt) -> bool {
    let width = |v: u32| (u32::BITS - v.leading_zeros()) as u64;
    denom.bits() + width(p) + width(q) + 2 <= 126
}

/// Per-column count. For column `i`, the admissible rows are the integers `j`
/// with `n p q < d (i q + j p) < (n + d) p q`, i.e. an open interval in `j`
/// after dividing by `d p`. Works for any exact integer type; `n/d` need not
/// be reduced.
fn count_columns<T>(p: u32, q: u32, n: &T, d: &T) -> RawCount
where
    T: Integer + Clone + From<u64> + ToPrimitive,
{
    let pt = T::from(p as u64);
    let qt = T::from(q as u64);
    let pq = pt.clone() * qt.clone();
    let step = d.clone() * pt.clone();
    let lower_base = n.clone() * pq.clone();
    let upper_base = (n.clone() + d.clone()) * pq;
    let one = T::one();
    let row_max = qt.clone() - one.clone();

    let mut out = RawCount::default();
    for i in 1..p as u64 {
        let shift = d.clone() * T::from(i) * qt.clone();
        let lower = lower_base.clone() - shift.clone();
        let upper = upper_base.clone() - shift;
        let (lo_div, lo_rem) = lower.div_mod_floor(&step);
        let (hi_div, hi_rem) = upper.div_mod_floor(&step);

        let j_lo = lo_div.clone() + one.clone();
        let j_hi = if hi_rem.is_zero() {
            hi_div.clone() - one.clone()
        } else {
            hi_div.clone()
        };
        let lo = if j_lo < one { one.clone() } else { j_lo };
        let hi = if j_hi > row_max {
            row_max.clone()
        } else {
            j_hi
        };
        if hi >= lo {
            let span = hi - lo + one.clone();
            out.inside += span.to_u64().expect("column span fits in u64");
        }
        let on_row = |v: &T| *v >= one && *v <= row_max;
        if lo_rem.is_zero() && on_row(&lo_div) {
            out.boundary += 1;
        }
        if hi_rem.is_zero() && on_row(&hi_div) {
            out.boundary += 1;
        }
    }
    out
}

fn finish(knot: &TorusKnot, raw: RawCount) -> AnnulusCount {
    let total = knot.seifert_rank();
    AnnulusCount {
        inside: raw.inside,
        outside: total - raw.inside - raw.boundary,
        boundary: raw.boundary,
    }
}

fn count_fraction(knot: &TorusKnot, n: &BigInt, d: &BigInt) -> RawCount {
    if fits_i128(knot.p(), knot.q(), d) {
        let n = n.to_i128().expect("numerator below denominator");
        let d = d.to_i128().expect("checked by fits_i128");
        count_columns::<i128>(knot.p(), knot.q(), &n, &d)
    } else {
        count_columns::<BigInt>(knot.p(), knot.q(), n, d)
    }
}

/// Counts lattice points in the annulus `t < |a| < t + 1` column by column,
/// in O(p) exact integer operations.
pub fn annulus_count(knot: &TorusKnot, t: &RationalAngle) -> AnnulusCount {
    finish(knot, count_fraction(knot, t.numer(), t.denom()))
}

/// Reference count that visits all (p-1)(q-1) lattice points.
pub fn annulus_count_brute(knot: &TorusKnot, t: &RationalAngle) -> AnnulusCount {
    let (p, q) = (knot.p() as u64, knot.q() as u64);
    let pq = BigInt::from(p * q);
    let lower = t.numer() * &pq;
    let upper = (t.numer() + t.denom()) * &pq;
    let mut raw = RawCount::default();
    for i in 1..p {
        for j in 1..q {
            let norm = i * q + j * p;
            debug_assert_ne!(norm, p * q, "lattice point with norm 1 in {knot}");
            let scaled = t.denom() * BigInt::from(norm);
            match (scaled.cmp(&lower), scaled.cmp(&upper)) {
                (Ordering::Greater, Ordering::Less) => raw.inside += 1,
                (Ordering::Equal, _) | (_, Ordering::Equal) => raw.boundary += 1,
                _ => {}
            }
        }
    }
    finish(knot, raw)
}

/// The Levine-Tristram signature at `w = exp(2 pi i t)`.
pub fn lt_signature(knot: &TorusKnot, t: &RationalAngle) -> i64 {
    signature_from_count(knot, annulus_count(knot, t).inside)
}

fn signature_from_count(knot: &TorusKnot, inside: u64) -> i64 {
    2 * inside as i64 - knot.seifert_rank() as i64
}

/// Classical signature (t = 1/2) via the floor sum
/// `(p-1)(q-1) - 4 * sum_{0<j<p, j = p mod 2} floor(j q / 2p)`.
pub fn classical_signature(knot: &TorusKnot) -> i64 {
    let (p, q) = (knot.p() as u64, knot.q() as u64);
    let start = if p % 2 == 0 { 2 } else { 1 };
    let sum: u64 = (start..p).step_by(2).map(|j| (j * q) / (2 * p)).sum();
    knot.seifert_rank() as i64 - 4 * sum as i64
}

/// A region of the circle on which the signature takes a single value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Locus {
    /// Open interval `(lo, hi)` with `0 <= lo < hi <= 1`.
    Interval {
        lo: BigRational,
        hi: BigRational,
    },
    Point(RationalAngle),
}

impl Locus {
    /// Whether the locus meets the half-open window `(lo, hi]`.
    pub fn meets_window(&self, lo: &BigRational, hi: &BigRational) -> bool {
        match self {
            Locus::Interval { lo: a, hi: b } => a < hi && b > lo,
            Locus::Point(t) => t.as_rational() > lo && t.as_rational() <= hi,
        }
    }

    pub fn contains(&self, t: &RationalAngle) -> bool {
        match self {
            Locus::Interval { lo, hi } => t.as_rational() > lo && t.as_rational() < hi,
            Locus::Point(s) => s == t,
        }
    }
}

impl std::fmt::Display for Locus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Locus::Interval { lo, hi } => {
                write!(f, "({}, {})", format_rational(lo), format_rational(hi))
            }
            Locus::Point(t) => write!(f, "{{{t}}}"),
        }
    }
}

/// The full signature function `t -> sigma_t` on (0, 1).
///
/// `interval_values[k]` is the value on the open interval between
/// `breakpoints[k-1]` and `breakpoints[k]` (with 0 and 1 at the ends), and
/// `breakpoint_values[k]` the value exactly at `breakpoints[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    pub knot: TorusKnot,
    pub breakpoints: Vec<RationalAngle>,
    pub interval_values: Vec<i64>,
    pub breakpoint_values: Vec<i64>,
}

impl StepFunction {
    fn interval_bounds(&self, k: usize) -> (BigRational, BigRational) {
        let lo = if k == 0 {
            BigRational::zero()
        } else {
            self.breakpoints[k - 1].as_rational().clone()
        };
        let hi = self
            .breakpoints
            .get(k)
            .map(|b| b.as_rational().clone())
            .unwrap_or_else(BigRational::one);
        (lo, hi)
    }

    /// `(lo, hi, value)` for each open interval, in increasing order.
    pub fn intervals(&self) -> impl Iterator<Item = (BigRational, BigRational, i64)> + '_ {
        self.interval_values.iter().enumerate().map(|(k, &v)| {
            let (lo, hi) = self.interval_bounds(k);
            (lo, hi, v)
        })
    }

    pub fn value_at(&self, t: &RationalAngle) -> i64 {
        match self.breakpoints.binary_search(t) {
            Ok(k) => self.breakpoint_values[k],
            Err(k) => self.interval_values[k],
        }
    }

    /// Maximum over all interval and breakpoint values.
    pub fn max(&self) -> i64 {
        self.interval_values
            .iter()
            .chain(&self.breakpoint_values)
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn min(&self) -> i64 {
        self.interval_values
            .iter()
            .chain(&self.breakpoint_values)
            .copied()
            .min()
            .unwrap_or(0)
    }

    /// Every interval and breakpoint attaining the maximum, ordered by position.
    pub fn argmax(&self) -> Vec<Locus> {
        let max = self.max();
        let mut out = Vec::new();
        for (k, &v) in self.interval_values.iter().enumerate() {
            if v == max {
                let (lo, hi) = self.interval_bounds(k);
                out.push(Locus::Interval { lo, hi });
            }
            if let (Some(b), Some(&bv)) = (self.breakpoints.get(k), self.breakpoint_values.get(k)) {
                if bv == max {
                    out.push(Locus::Point(b.clone()));
                }
            }
        }
        out
    }
}

/// Samples sigma at `m / (2pq)` for `0 < m < 2pq`. Even `m` are the candidate
/// jumps `k/(pq)`, odd `m` the midpoints between them.
fn sample_half_grid(knot: &TorusKnot) -> Vec<i64> {
    let n = knot.p() as u64 * knot.q() as u64;
    let den = 2 * n;
    if fits_i128(knot.p(), knot.q(), &BigInt::from(den)) {
        (1..den)
            .into_par_iter()
            .map(|m| {
                let raw = count_columns::<i128>(knot.p(), knot.q(), &(m as i128), &(den as i128));
                signature_from_count(knot, raw.inside)
            })
            .collect()
    } else {
        let d = BigInt::from(den);
        (1..den)
            .into_par_iter()
            .map(|m| {
                let raw = count_columns::<BigInt>(knot.p(), knot.q(), &BigInt::from(m), &d);
                signature_from_count(knot, raw.inside)
            })
            .collect()
    }
}

/// Builds the merged step function of `t -> sigma_t`.
///
/// Every jump of sigma sits at some `k/(pq)`, because the Manhattan norms
/// `(iq + jp)/(pq)` and their shifts by one all land there. The candidates
/// that turn out not to be jumps are merged away.
pub fn signature_step_function(knot: &TorusKnot) -> StepFunction {
    let n = knot.p() as u64 * knot.q() as u64;
    let samples = sample_half_grid(knot);
    // samples[m - 1] is sigma at m/(2n)
    let mid = |k: u64| samples[(2 * k) as usize]; // interval (k/n, (k+1)/n)
    let at = |k: u64| samples[(2 * k - 1) as usize]; // point k/n

    let mut breakpoints = Vec::new();
    let mut breakpoint_values = Vec::new();
    let mut interval_values = vec![mid(0)];
    for k in 1..n {
        let left = *interval_values.last().expect("non-empty");
        let right = mid(k);
        let here = at(k);
        if left != right || here != left {
            breakpoints.push(RationalAngle::new(k, n).expect("0 < k < n"));
            breakpoint_values.push(here);
            interval_values.push(right);
        }
    }
    StepFunction {
        knot: *knot,
        breakpoints,
        interval_values,
        breakpoint_values,
    }
}
