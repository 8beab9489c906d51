//! Instance checkers for the recursions, periodicities and closed forms
//! satisfied by torus-knot signatures.
//!
//! Each checker evaluates both sides independently, one through the floor
//! sum or distance profile of the smaller knot and the other through the
//! larger knot, so a bug in one formula cannot certify itself.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::domain::TorusKnot;
use crate::error::{Error, Result};
use crate::lattice::classical_signature;
use crate::maxsig::{self, DistanceKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity_name: String,
    pub knot_params: Vec<(u32, u32)>,
    pub expected: i64,
    pub computed: i64,
    pub pass: bool,
    /// Intermediate quantities, for diagnosing failures.
    pub details: BTreeMap<String, String>,
}

impl IdentityReport {
    fn new(name: &str, knots: &[TorusKnot], expected: i64, computed: i64) -> Self {
        IdentityReport {
            identity_name: name.to_string(),
            knot_params: knots.iter().map(|k| (k.p(), k.q())).collect(),
            expected,
            computed,
            pass: expected == computed,
            details: BTreeMap::new(),
        }
    }

    fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.insert(key.to_string(), value.to_string());
        self
    }
}

fn positive(p: i64, q: i64) -> Result<()> {
    if p < 1 || q < 1 {
        return Err(Error::InvalidParameter(format!(
            "p and q must be positive, got ({p}, {q})"
        )));
    }
    Ok(())
}

fn ordered(p: i64, q: i64) -> Result<()> {
    positive(p, q)?;
    if p >= q {
        return Err(Error::InvalidParameter(format!(
            "need p < q, got ({p}, {q})"
        )));
    }
    Ok(())
}

/// sigma(T(p, q+2p)) = sigma(T(p,q)) + p^2 (p even) or p^2 - 1 (p odd).
pub fn check_glm(p: i64, q: i64) -> Result<IdentityReport> {
    positive(p, q)?;
    let base = TorusKnot::new(p, q)?;
    let next = TorusKnot::new(p, q + 2 * p)?;
    let increment = if p % 2 == 0 { p * p } else { p * p - 1 };
    let sigma = classical_signature(&base);
    let report = IdentityReport::new(
        "glm",
        &[base, next],
        sigma + increment,
        classical_signature(&next),
    );
    Ok(report.detail("sigma", sigma).detail("increment", increment))
}

/// sigma(T(p, p+q)) = sigma(T(p,q)) + p^2/2, for even p only.
pub fn check_even_periodicity(p: i64, q: i64) -> Result<IdentityReport> {
    positive(p, q)?;
    if p % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "even periodicity requires even p, got {p}; it fails for odd p"
        )));
    }
    let base = TorusKnot::new(p, q)?;
    let next = TorusKnot::new(p, q + p)?;
    let sigma = classical_signature(&base);
    let report = IdentityReport::new(
        "even-periodicity",
        &[base, next],
        sigma + p * p / 2,
        classical_signature(&next),
    );
    Ok(report.detail("sigma", sigma))
}

/// The analogue of the even periodicity for odd p, with increment
/// (p^2 - 1)/2. It is false in general; this exists to exhibit failures.
pub fn check_naive_odd_periodicity(p: i64, q: i64) -> Result<IdentityReport> {
    positive(p, q)?;
    if p % 2 == 0 {
        return Err(Error::InvalidParameter(format!("expected odd p, got {p}")));
    }
    let base = TorusKnot::new(p, q)?;
    let next = TorusKnot::new(p, q + p)?;
    let sigma = classical_signature(&base);
    Ok(IdentityReport::new(
        "naive-odd-periodicity",
        &[base, next],
        sigma + (p * p - 1) / 2,
        classical_signature(&next),
    ))
}

/// sigma_hat(T(p, q+p)) = sigma_hat(T(p,q)) + p^2/2 (p even) or (p^2 - 1)/2 (p odd).
pub fn check_main_recursion(p: i64, q: i64) -> Result<IdentityReport> {
    ordered(p, q)?;
    let base = TorusKnot::new(p, q)?;
    let next = TorusKnot::new(p, q + p)?;
    let increment = if p % 2 == 0 {
        p * p / 2
    } else {
        (p * p - 1) / 2
    };
    let a = maxsig::analyze(&base)?;
    let b = maxsig::analyze(&next)?;
    let report = IdentityReport::new("main", &[base, next], a.sigma_hat + increment, b.sigma_hat);
    Ok(report
        .detail("sigma", a.sigma)
        .detail("m", a.m)
        .detail("sequence", &a.sequence)
        .detail("next_sigma", b.sigma)
        .detail("next_m", b.m)
        .detail("next_sequence", &b.sequence))
}

/// For odd p:
/// sigma(T(p, p+q)) = sigma(T(p,q)) - 4 #{D_j > p} + (p-1)(p+3)/2,
/// together with the count identity #{D_j < p} + #{D_j > p} = (p-1)/2.
pub fn check_odd_shift_identity(p: i64, q: i64) -> Result<Vec<IdentityReport>> {
    ordered(p, q)?;
    if p % 2 == 0 || p < 3 {
        return Err(Error::InvalidParameter(format!(
            "odd shift identity requires odd p >= 3, got {p}"
        )));
    }
    let base = TorusKnot::new(p, q)?;
    let next = TorusKnot::new(p, q + p)?;
    let profile = maxsig::distance_profile(&base)?;
    let above = profile.lower_above_p() as i64;
    let below = profile.lower_below_p() as i64;
    let sigma = classical_signature(&base);
    let shift = IdentityReport::new(
        "odd-shift",
        &[base, next],
        sigma - 4 * above + (p - 1) * (p + 3) / 2,
        classical_signature(&next),
    )
    .detail("sigma", sigma)
    .detail("lower_above_p", above)
    .detail("profile", &profile);
    let count = IdentityReport::new("odd-shift-count", &[base], (p - 1) / 2, below + above)
        .detail("lower_above_p", above)
        .detail("lower_below_p", below);
    Ok(vec![shift, count])
}

/// Closed forms for the families T(p, p+1) and T(p, 2p+1), the ordering of
/// the distances for T(p, p+1), and sharpness of the bound 2M <= p - 1.
pub fn check_closed_forms(p: i64) -> Result<Vec<IdentityReport>> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!(
            "closed forms need p >= 2, got {p}"
        )));
    }
    let even = p % 2 == 0;
    let mut out = Vec::with_capacity(4);

    let adjacent = TorusKnot::new(p, p + 1)?;
    let a = maxsig::analyze(&adjacent)?;
    let gap = if even { p - 2 } else { 0 };
    out.push(
        IdentityReport::new("closed-form-p-p+1", &[adjacent], a.sigma + gap, a.sigma_hat)
            .detail("sigma", a.sigma)
            .detail("m", a.m),
    );

    // Even p: every D precedes every d, and the D appear as D_-2 < D_-4 < ...
    // Odd p: every d precedes every D.
    let m = a.sequence.len() / 2;
    let (first, second) = if even {
        (DistanceKind::Lower, DistanceKind::Upper)
    } else {
        (DistanceKind::Upper, DistanceKind::Lower)
    };
    let mut agreeing = a
        .sequence
        .labels
        .iter()
        .enumerate()
        .filter(|(i, l)| l.kind == if *i < m { first } else { second })
        .count() as i64;
    if even {
        let lower_indices: Vec<i64> = a.sequence.labels[..m].iter().map(|l| l.index).collect();
        let descending = lower_indices.windows(2).all(|w| w[0] > w[1]);
        if !descending {
            agreeing -= 1;
        }
    }
    let order: Vec<String> = a.sequence.labels.iter().map(|l| l.to_string()).collect();
    out.push(
        IdentityReport::new("ordering-p-p+1", &[adjacent], 2 * m as i64, agreeing)
            .detail("order", order.join(" < ")),
    );

    let double = TorusKnot::new(p, 2 * p + 1)?;
    let b = maxsig::analyze(&double)?;
    out.push(
        IdentityReport::new("closed-form-p-2p+1", &[double], p * p + p - 2, b.sigma_hat)
            .detail("sigma", b.sigma)
            .detail("m", b.m),
    );
    let sharp = if even { p - 2 } else { p - 1 };
    out.push(
        IdentityReport::new("sharpness-p-2p+1", &[double], sharp, 2 * b.m)
            .detail("profile", &b.profile),
    );
    Ok(out)
}

/// Smallest T(p, 2p+1), p >= 2, whose gap sigma_hat - sigma is at least `n`,
/// together with that gap.
pub fn gap_witness(n: u64) -> (TorusKnot, i64) {
    let mut p: i64 = 2;
    loop {
        let knot = TorusKnot::new(p, 2 * p + 1).expect("p and 2p+1 are coprime");
        let a = maxsig::analyze(&knot).expect("valid knot");
        let gap = a.sigma_hat - a.sigma;
        if gap >= n as i64 {
            return (knot, gap);
        }
        p += 1;
    }
}
