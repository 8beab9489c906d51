//! Maximum signature of torus knots through the distance profile.
//!
//! Group the lattice points into columns `T_j`, `-p < j < p`, `j = p mod 2`,
//! using coordinates centred at `(1/2, 0)`. At `t = 1/2` the annulus boundary
//! consists of the lines `L: y = -x` and `U: y = -x + 1`. For a left column
//! (`j < 0`), `D_j` is `2pq` times the vertical gap between `L` and the
//! highest outside point below it. For a right column (`k > 0`), `d_k` is
//! `2pq` times the gap between `U` and the highest inside point below it.
//! Both reduce to residues:
//!
//! ```text
//! D_j = (-j q) mod 2p,    d_k = 2p - D_{-k}.
//! ```
//!
//! Lowering `t` slightly below 1/2 gains a point each time the shift passes
//! some `D_j` and loses one at each `d_k`. Sorting all distances and writing
//! `+1` for `D` and `-1` for `d` gives a balanced sequence. Its maximal cyclic
//! partial sum `M` is exactly how far the signature climbs above the
//! classical one, so the maximum signature is `sigma + 2M`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::domain::TorusKnot;
use crate::error::{Error, Result};
use crate::lattice::classical_signature;

/// The integers `D_j` (keyed by negative `j`) and `d_k` (keyed by positive `k`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceProfile {
    pub knot: TorusKnot,
    pub lower: BTreeMap<i64, i64>,
    pub upper: BTreeMap<i64, i64>,
}

impl DistanceProfile {
    pub fn len(&self) -> usize {
        self.lower.len() + self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of `D_j` strictly greater than `p`.
    pub fn lower_above_p(&self) -> usize {
        let p = self.knot.p() as i64;
        self.lower.values().filter(|&&v| v > p).count()
    }

    pub fn lower_below_p(&self) -> usize {
        let p = self.knot.p() as i64;
        self.lower.values().filter(|&&v| v < p).count()
    }
}

impl fmt::Display for DistanceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .lower
            .iter()
            .map(|(j, v)| format!("D_{j}={v}"))
            .chain(self.upper.iter().map(|(k, v)| format!("d_{k}={v}")))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Admissible column indices `0 < k < p` with `k = p mod 2`.
fn right_columns(p: i64) -> impl Iterator<Item = i64> {
    let start = if p % 2 == 0 { 2 } else { 1 };
    (start..p).step_by(2)
}

/// Computes `D_j` and `d_k` by modular reduction and checks they are
/// pairwise distinct and never equal to `p`. Empty for `p <= 2`.
pub fn distance_profile(knot: &TorusKnot) -> Result<DistanceProfile> {
    let p = knot.p() as i64;
    let q = knot.q() as i64;
    let modulus = 2 * p;
    let mut lower = BTreeMap::new();
    let mut upper = BTreeMap::new();
    for k in right_columns(p) {
        let j = -k;
        let big_d = (-j * q).rem_euclid(modulus);
        lower.insert(j, big_d);
        upper.insert(k, modulus - big_d);
    }

    let mut seen: Vec<i64> = lower.values().chain(upper.values()).copied().collect();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) || seen.contains(&p) || seen.contains(&0) {
        return Err(Error::Invariant(format!(
            "distance profile of {knot} has repeated values or a value equal to p: {seen:?}"
        )));
    }
    Ok(DistanceProfile {
        knot: *knot,
        lower,
        upper,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceKind {
    /// `D_j`, contributes `+1`.
    Lower,
    /// `d_k`, contributes `-1`.
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SequenceLabel {
    pub kind: DistanceKind,
    pub index: i64,
    pub distance: i64,
}

impl fmt::Display for SequenceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            DistanceKind::Lower => "D",
            DistanceKind::Upper => "d",
        };
        write!(f, "{name}_{}={}", self.index, self.distance)
    }
}

/// A `+1/-1` sequence with as many of each sign, plus where each entry came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalancedSequence {
    pub entries: Vec<i8>,
    pub labels: Vec<SequenceLabel>,
}

impl BalancedSequence {
    /// Builds a sequence from bare entries. Labels are synthetic.
    pub fn from_entries(entries: Vec<i8>) -> Self {
        let labels = entries
            .iter()
            .enumerate()
            .map(|(i, &e)| SequenceLabel {
                kind: if e > 0 {
                    DistanceKind::Lower
                } else {
                    DistanceKind::Upper
                },
                index: i as i64,
                distance: i as i64,
            })
            .collect();
        BalancedSequence { entries, labels }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The sequence read from index `shift` onward, i.e. entry `i` of the
    /// result is entry `(i + shift) mod len` of `self`.
    pub fn rotated_left(&self, shift: usize) -> BalancedSequence {
        let mut entries = self.entries.clone();
        let mut labels = self.labels.clone();
        if !entries.is_empty() {
            let s = shift % entries.len();
            entries.rotate_left(s);
            labels.rotate_left(s);
        }
        BalancedSequence { entries, labels }
    }

    /// Largest nonempty cyclic partial sum starting at `start`, with lengths
    /// up to one period. `None` for the empty sequence.
    pub fn max_partial_sum_from(&self, start: usize) -> Option<i64> {
        let n = self.entries.len();
        if n == 0 {
            return None;
        }
        let mut sum = 0i64;
        let mut best = i64::MIN;
        for l in 0..n {
            sum += self.entries[(start + l) % n] as i64;
            best = best.max(sum);
        }
        Some(best)
    }
}

impl fmt::Display for BalancedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .entries
            .iter()
            .map(|&e| if e > 0 { "+1" } else { "-1" })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Sorts all distances ascending and labels `D` as `+1`, `d` as `-1`.
pub fn balanced_sequence(profile: &DistanceProfile) -> BalancedSequence {
    let mut labels: Vec<SequenceLabel> = profile
        .lower
        .iter()
        .map(|(&index, &distance)| SequenceLabel {
            kind: DistanceKind::Lower,
            index,
            distance,
        })
        .chain(
            profile
                .upper
                .iter()
                .map(|(&index, &distance)| SequenceLabel {
                    kind: DistanceKind::Upper,
                    index,
                    distance,
                }),
        )
        .collect();
    labels.sort_by_key(|l| l.distance);
    let entries = labels
        .iter()
        .map(|l| match l.kind {
            DistanceKind::Lower => 1,
            DistanceKind::Upper => -1,
        })
        .collect();
    BalancedSequence { entries, labels }
}

/// `M = max(0, max_l sum_{i<l} a_i)`. One period suffices because a balanced
/// sequence sums to zero over a full period; the empty sum supplies the 0.
pub fn max_cyclic_sum(seq: &BalancedSequence) -> i64 {
    seq.max_partial_sum_from(0).unwrap_or(0).max(0)
}

/// Everything that goes into the maximum signature of one knot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxSignature {
    pub knot: TorusKnot,
    pub sigma: i64,
    pub profile: DistanceProfile,
    pub sequence: BalancedSequence,
    pub m: i64,
    pub sigma_hat: i64,
    pub g4_lower_bound: i64,
}

pub fn analyze(knot: &TorusKnot) -> Result<MaxSignature> {
    let sigma = classical_signature(knot);
    let profile = distance_profile(knot)?;
    let sequence = balanced_sequence(&profile);
    let m = max_cyclic_sum(&sequence);
    let sigma_hat = sigma + 2 * m;
    Ok(MaxSignature {
        knot: *knot,
        sigma,
        profile,
        sequence,
        m,
        sigma_hat,
        g4_lower_bound: ceil_half(sigma_hat),
    })
}

fn ceil_half(v: i64) -> i64 {
    v.div_euclid(2) + v.rem_euclid(2)
}

/// `sigma_hat = sigma + 2M`.
pub fn max_signature(knot: &TorusKnot) -> i64 {
    if knot.is_unknot() {
        return 0;
    }
    // distance_profile only fails on a broken coprimality invariant, which
    // TorusKnot rules out.
    analyze(knot)
        .expect("distance profile of a valid torus knot")
        .sigma_hat
}

/// Lower bound `ceil(sigma_hat / 2)` for the topological 4-genus.
pub fn g4_lower_bound(knot: &TorusKnot) -> i64 {
    ceil_half(max_signature(knot))
}

/// Comparison of the balanced sequences of T(p,q) and T(p,q+p).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RotationReport {
    pub knot: TorusKnot,
    pub shifted: TorusKnot,
    /// Rotation applied to the T(p,q) sequence: 0 for even p, (p-1)/2 for odd p.
    pub rotation: usize,
    pub original: BalancedSequence,
    pub successor: BalancedSequence,
    pub pass: bool,
}

/// Checks that the sequence of T(p,q+p) equals that of T(p,q) for even `p`,
/// and equals it rotated left by `(p-1)/2` for odd `p`.
pub fn rotation_relation(knot: &TorusKnot) -> Result<RotationReport> {
    let p = knot.p();
    if p < 2 {
        return Err(Error::InvalidParameter(format!(
            "rotation relation needs p >= 2, got {knot}"
        )));
    }
    let shifted = TorusKnot::new(p as i64, knot.q() as i64 + p as i64)?;
    let original = balanced_sequence(&distance_profile(knot)?);
    let successor = balanced_sequence(&distance_profile(&shifted)?);
    let rotation = if p.is_multiple_of(2) {
        0
    } else {
        (p as usize - 1) / 2
    };
    let pass = original.rotated_left(rotation).entries == successor.entries;
    Ok(RotationReport {
        knot: *knot,
        shifted,
        rotation,
        original,
        successor,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn knot(p: i64, q: i64) -> TorusKnot {
        TorusKnot::new(p, q).unwrap()
    }

    #[test]
    fn five_twelve_profile() {
        let prof = distance_profile(&knot(5, 12)).unwrap();
        assert_eq!(prof.lower.get(&-1), Some(&2));
        assert_eq!(prof.lower.get(&-3), Some(&6));
        assert_eq!(prof.upper.get(&1), Some(&8));
        assert_eq!(prof.upper.get(&3), Some(&4));
        let seq = balanced_sequence(&prof);
        assert_eq!(seq.entries, vec![1, -1, 1, -1]);
        assert_eq!(max_cyclic_sum(&seq), 1);
        assert_eq!(max_signature(&knot(5, 12)), 30);
        assert_eq!(g4_lower_bound(&knot(5, 12)), 15);
    }

    #[test]
    fn four_seven_profile() {
        let prof = distance_profile(&knot(4, 7)).unwrap();
        assert_eq!(prof.lower.get(&-2), Some(&6));
        assert_eq!(prof.upper.get(&2), Some(&2));
        let seq = balanced_sequence(&prof);
        assert_eq!(seq.entries, vec![-1, 1]);
        assert_eq!(seq.to_string(), "(-1,+1)");
        assert_eq!(max_cyclic_sum(&seq), 0);
        assert_eq!(max_signature(&knot(4, 7)), 14);
    }

    #[test]
    fn small_p_profiles_are_empty() {
        for q in [3, 5, 9, 21] {
            let prof = distance_profile(&knot(2, q)).unwrap();
            assert!(prof.is_empty());
            assert!(balanced_sequence(&prof).is_empty());
            assert_eq!(max_signature(&knot(2, q)), q - 1);
        }
        assert!(distance_profile(&knot(1, 4)).unwrap().is_empty());
        assert_eq!(max_signature(&knot(1, 4)), 0);
        assert_eq!(g4_lower_bound(&knot(1, 4)), 0);
    }

    #[test]
    fn max_cyclic_sum_examples() {
        let m = |v: Vec<i8>| max_cyclic_sum(&BalancedSequence::from_entries(v));
        assert_eq!(m(vec![1, -1, 1, -1]), 1);
        assert_eq!(m(vec![-1, 1]), 0);
        assert_eq!(m(vec![]), 0);
        assert_eq!(m(vec![1, 1, -1, -1]), 2);
        assert_eq!(m(vec![-1, -1, 1, 1]), 0);
    }

    #[test]
    fn closed_form_family() {
        assert_eq!(max_signature(&knot(3, 7)), 10);
        assert_eq!(g4_lower_bound(&knot(3, 7)), 5);
    }

    #[test]
    fn rotation_examples() {
        let even = rotation_relation(&knot(4, 7)).unwrap();
        assert!(even.pass);
        assert_eq!(even.rotation, 0);
        let r = rotation_relation(&knot(5, 12)).unwrap();
        assert!(r.pass);
        assert_eq!(r.rotation, 2);
        let r = rotation_relation(&knot(3, 4)).unwrap();
        assert!(r.pass);
        assert_eq!(r.rotation, 1);
        assert!(rotation_relation(&knot(1, 3)).is_err());
    }

    #[test]
    fn odd_rotation_is_half_a_period() {
        // With 2m = p - 1 entries a shift by (p-1)/2 is its own inverse, so
        // the direction of the rotation cannot matter.
        for p in (3..25).step_by(2) {
            for q in p + 1..p + 40 {
                let Ok(k) = TorusKnot::new(p, q) else {
                    continue;
                };
                let r = rotation_relation(&k).unwrap();
                assert!(r.pass, "{k}");
                assert_eq!(2 * r.rotation, r.original.len());
            }
        }
    }
}
