//! Seifert matrices of positive braid closures.
//!
//! The closure of a positive braid word on `n` strands bounds the surface
//! made of `n` stacked disks joined by one half-twisted band per letter.
//! Its first homology has a basis of "bricks": one cycle for every pair of
//! consecutive occurrences of the same generator, running down one band
//! and back up the other. There are `len - n + 1` of them for a connected
//! closure.
//!
//! Writing a brick as `(level, start, end)` for generator `level` occurring
//! at word positions `start < end`, the linking numbers of a brick `x` with
//! the push-off of a brick `y` are, in the raw convention used here:
//!
//! * `-1` on the diagonal;
//! * `+1` when `y` is the next brick on the same level (`x.end == y.start`);
//! * for `y` one level above `x`, `+1` if `x.start < y.start < x.end < y.end`
//!   and `-1` if `y.start < x.start < y.end < x.end`;
//! * `0` otherwise, including nested bricks.
//!
//! Under this convention positive knots come out with negative signature.
//! [`orientation_sign`] detects that once on the trefoil and flips the
//! whole matrix, so the matrices handed out match the positive convention
//! of the rest of the crate. Transposing instead would not help: the
//! Hermitian form of `A^T` is the complex conjugate of that of `A` and has
//! the same spectrum.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::hermitian::embedded_signature;
use super::modular;
use super::poly::IntPoly;
use crate::domain::{RationalAngle, TorusKnot};
use crate::error::{Error, Result};

/// A positive braid word whose closure is a knot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<usize>,
    /// Set when the word is the standard torus braid of this knot.
    torus: Option<TorusKnot>,
}

impl BraidWord {
    /// Validates generator indices and that the closure has one component.
    pub fn new(strands: usize, letters: Vec<usize>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidParameter(
                "a braid needs at least one strand".into(),
            ));
        }
        if let Some(&bad) = letters.iter().find(|&&g| g == 0 || g >= strands) {
            return Err(Error::InvalidParameter(format!(
                "generator s_{bad} does not exist on {strands} strands"
            )));
        }
        let word = BraidWord {
            strands,
            letters,
            torus: None,
        };
        if word.components() != 1 {
            return Err(Error::InvalidParameter(format!(
                "closure of the braid has {} components, expected a knot",
                word.components()
            )));
        }
        Ok(word)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn torus_knot(&self) -> Option<TorusKnot> {
        self.torus
    }

    /// Number of cycles of the underlying permutation.
    pub fn components(&self) -> usize {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &g in &self.letters {
            perm.swap(g - 1, g);
        }
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for s in 0..self.strands {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
            }
        }
        cycles
    }
}

/// The word `(s_{p-1} s_{p-2} ... s_1)^q` on `p` strands.
pub fn torus_braid(knot: &TorusKnot) -> BraidWord {
    let p = knot.p() as usize;
    let block: Vec<usize> = (1..p).rev().collect();
    let letters = block.repeat(knot.q() as usize);
    BraidWord {
        strands: p,
        letters,
        torus: Some(*knot),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Brick {
    level: usize,
    start: usize,
    end: usize,
}

fn bricks(braid: &BraidWord) -> Vec<Brick> {
    let mut out = Vec::new();
    for level in 1..braid.strands {
        let positions: Vec<usize> = braid
            .letters
            .iter()
            .enumerate()
            .filter(|(_, &g)| g == level)
            .map(|(i, _)| i)
            .collect();
        out.extend(positions.windows(2).map(|w| Brick {
            level,
            start: w[0],
            end: w[1],
        }));
    }
    out
}

fn raw_entry(x: &Brick, y: &Brick) -> i64 {
    if x == y {
        -1
    } else if x.level == y.level {
        i64::from(x.end == y.start)
    } else if y.level == x.level + 1 {
        if x.start < y.start && y.start < x.end && x.end < y.end {
            1
        } else if y.start < x.start && x.start < y.end && y.end < x.end {
            -1
        } else {
            0
        }
    } else {
        0
    }
}

fn raw_matrix(braid: &BraidWord) -> Vec<i64> {
    let b = bricks(braid);
    b.iter()
        .flat_map(|x| b.iter().map(move |y| raw_entry(x, y)))
        .collect()
}

/// +1 if the raw brick convention already gives the trefoil signature +2
/// at t = 1/2, -1 if it gives -2.
pub fn orientation_sign() -> i64 {
    static SIGN: OnceLock<i64> = OnceLock::new();
    *SIGN.get_or_init(|| {
        let trefoil = torus_braid(&TorusKnot::new(2, 3).expect("coprime"));
        let raw = raw_matrix(&trefoil);
        let sig = embedded_signature(&raw, 2, &RationalAngle::half(), 1e-8)
            .expect("trefoil form is nondegenerate at w = -1");
        match sig {
            2 => 1,
            -2 => -1,
            other => panic!("brick convention gives trefoil signature {other}"),
        }
    })
}

/// An integer Seifert matrix, calibrated to the positive sign convention,
/// together with its Alexander polynomial `det(A - tA^T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    size: usize,
    entries: Vec<i64>,
    alexander: IntPoly,
}

impl SeifertMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.size.max(1))
            .map(<[i64]>::to_vec)
            .collect()
    }

    /// `det(A - tA^T)`, computed exactly.
    pub fn alexander(&self) -> &IntPoly {
        &self.alexander
    }

    /// Exact `det(A + A^T)`.
    pub fn symmetrized_determinant(&self) -> BigInt {
        let n = self.size;
        let sym: Vec<i64> = (0..n * n)
            .map(|k| self.entries[k] + self.entries[(k % n) * n + k / n])
            .collect();
        modular::determinant(&sym, n)
    }
}

/// Builds the brick Seifert matrix of a positive braid closure and checks it.
///
/// The checks: `det(A - tA^T)` must be palindromic up to sign with value
/// `+-1` at `t = 1`, must equal the closed-form torus Alexander polynomial
/// up to units when the word is a torus braid, and `|det(A + A^T)|` must
/// equal `|Delta(-1)|` of that reference polynomial.
pub fn seifert_matrix(braid: &BraidWord) -> Result<SeifertMatrix> {
    let sign = orientation_sign();
    let entries: Vec<i64> = raw_matrix(braid).into_iter().map(|v| sign * v).collect();
    let size = braid.letters.len() + 1 - braid.strands;
    debug_assert_eq!(entries.len(), size * size);

    let alexander = IntPoly::new(modular::seifert_determinant_poly(&entries, size)?);
    if !alexander.is_palindromic_up_to_sign() {
        return Err(Error::ValidationFailure(format!(
            "det(A - tA^T) = {alexander} is not symmetric"
        )));
    }
    if !alexander.eval(&BigInt::one()).abs().is_one() {
        return Err(Error::ValidationFailure(format!(
            "det(A - tA^T) = {alexander} does not take the value +-1 at t = 1"
        )));
    }
    let reference = match braid.torus {
        Some(knot) => {
            let expected = torus_alexander(&knot);
            if !alexander.equal_up_to_units(&expected) {
                return Err(Error::ValidationFailure(format!(
                    "det(A - tA^T) = {alexander} differs from the Alexander polynomial {expected} of {knot}"
                )));
            }
            expected
        }
        None => alexander.clone(),
    };
    let matrix = SeifertMatrix {
        size,
        entries,
        alexander,
    };
    let det_sym = matrix.symmetrized_determinant().abs();
    let knot_det = reference.eval(&BigInt::from(-1)).abs();
    if det_sym != knot_det {
        return Err(Error::ValidationFailure(format!(
            "|det(A + A^T)| = {det_sym} but |Delta(-1)| = {knot_det}"
        )));
    }
    Ok(matrix)
}

/// `(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))`, by exact division.
pub fn torus_alexander(knot: &TorusKnot) -> IntPoly {
    let (p, q) = (knot.p() as usize, knot.q() as usize);
    let num = IntPoly::power_minus_one(p * q).mul(&IntPoly::power_minus_one(1));
    let den = IntPoly::power_minus_one(p).mul(&IntPoly::power_minus_one(q));
    num.div_exact(&den)
        .expect("the torus knot Alexander quotient is exact")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn knot(p: i64, q: i64) -> TorusKnot {
        TorusKnot::new(p, q).unwrap()
    }

    #[test]
    fn torus_braid_words() {
        let b = torus_braid(&knot(2, 3));
        assert_eq!((b.strands(), b.letters()), (2, &[1, 1, 1][..]));
        let b = torus_braid(&knot(3, 4));
        assert_eq!(b.letters(), &[2, 1, 2, 1, 2, 1, 2, 1]);
        let b = torus_braid(&knot(1, 5));
        assert_eq!((b.strands(), b.letters().len()), (1, 0));
    }

    #[test]
    fn braid_validation() {
        assert!(BraidWord::new(3, vec![1, 2, 1, 2]).is_ok());
        assert!(BraidWord::new(3, vec![1, 1, 2, 2]).is_err()); // two components
        assert!(BraidWord::new(2, vec![1, 1]).is_err());
        assert!(BraidWord::new(3, vec![0, 1]).is_err());
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(0, vec![]).is_err());
    }

    #[test]
    fn torus_alexander_values() {
        assert_eq!(torus_alexander(&knot(2, 3)), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(
            torus_alexander(&knot(2, 5)),
            IntPoly::from_i64(&[1, -1, 1, -1, 1])
        );
        assert_eq!(torus_alexander(&knot(1, 7)), IntPoly::one());
        assert_eq!(torus_alexander(&knot(3, 4)).degree(), Some(6));
    }

    #[test]
    fn trefoil_matrix() {
        let a = seifert_matrix(&torus_braid(&knot(2, 3))).unwrap();
        assert_eq!(a.size(), 2);
        assert!(a
            .alexander()
            .equal_up_to_units(&IntPoly::from_i64(&[1, -1, 1])));
        assert_eq!(a.symmetrized_determinant().abs(), BigInt::from(3));
        assert_eq!(orientation_sign(), -1);
    }

    #[test]
    fn sizes_and_validation() {
        let a = seifert_matrix(&torus_braid(&knot(3, 4))).unwrap();
        assert_eq!(a.size(), 6);
        let a = seifert_matrix(&torus_braid(&knot(1, 4))).unwrap();
        assert_eq!(a.size(), 0);
        assert!(a.alexander().equal_up_to_units(&IntPoly::one()));
    }

    #[test]
    fn non_torus_positive_braids() {
        // s1^3 s2^3 closes to the connected sum of two trefoils.
        let b = BraidWord::new(3, vec![1, 1, 1, 2, 2, 2]).unwrap();
        let a = seifert_matrix(&b).unwrap();
        assert_eq!(a.size(), 4);
        let square = IntPoly::from_i64(&[1, -1, 1]).mul(&IntPoly::from_i64(&[1, -1, 1]));
        assert!(a.alexander().equal_up_to_units(&square));
        // A conjugate word describes the same knot.
        let c = BraidWord::new(3, vec![1, 1, 2, 2, 2, 1]).unwrap();
        assert!(seifert_matrix(&c)
            .unwrap()
            .alexander()
            .equal_up_to_units(&square));
        assert!(BraidWord::new(3, vec![1, 1, 1, 2, 1, 2, 2]).is_err());
    }
}
