//! Shared domain types: torus knots and exact angles on the unit circle.
//!
//! Signs follow the convention in which positive torus knots have positive
//! signature, e.g. the classical signature of T(4,7) is 14. Much of the knot
//! theory literature uses the mirrored convention, where the same knot has
//! signature -14; translate by negation when comparing with such tables.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The torus knot T(p,q), the closure of the braid (s_{p-1} ... s_1)^q on p strands.
///
/// Always normalized so that `p < q`, except for the unknot T(1,1). `p = 1`
/// is the unknot for every `q`; all its signatures vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusKnot {
    p: u32,
    q: u32,
}

impl TorusKnot {
    /// Validates and normalizes a pair; the order of the arguments does not matter.
    ///
    /// Parameters are limited to `u32` so every product the library forms
    /// (such as `2pq` or `j*q`) fits comfortably in 64 bits; angles remain
    /// arbitrary precision.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 || q < 1 {
            return Err(Error::InvalidParameter(format!(
                "p and q must be positive, got ({p}, {q})"
            )));
        }
        if p > u32::MAX as i64 || q > u32::MAX as i64 {
            return Err(Error::InvalidParameter(format!(
                "p and q must not exceed {}, got ({p}, {q})",
                u32::MAX
            )));
        }
        let gcd = p.gcd(&q);
        if gcd != 1 {
            return Err(Error::NotCoprime { p, q, gcd });
        }
        let (p, q) = if p <= q { (p, q) } else { (q, p) };
        Ok(TorusKnot {
            p: p as u32,
            q: q as u32,
        })
    }

    /// Strand count, the smaller parameter.
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_unknot(&self) -> bool {
        self.p == 1
    }

    /// Rank of the first homology of the fiber surface, (p-1)(q-1).
    pub fn seifert_rank(&self) -> u64 {
        (self.p as u64 - 1) * (self.q as u64 - 1)
    }
}

impl fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.p, self.q)
    }
}

impl Serialize for TorusKnot {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (self.p, self.q).serialize(serializer)
    }
}

pub fn new_torus_knot(p: i64, q: i64) -> Result<TorusKnot> {
    TorusKnot::new(p, q)
}

pub fn seifert_rank(knot: &TorusKnot) -> u64 {
    knot.seifert_rank()
}

/// An exact rational `t` in the open interval (0, 1), standing for the point
/// `w = exp(2 pi i t)` of the unit circle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalAngle(BigRational);

impl RationalAngle {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let n = numerator.into();
        let d = denominator.into();
        if !d.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "denominator must be positive, got {d}"
            )));
        }
        Self::from_rational(BigRational::new(n, d))
    }

    pub fn from_rational(value: BigRational) -> Result<Self> {
        if value.is_positive() && value < BigRational::one() {
            Ok(RationalAngle(value))
        } else {
            Err(Error::OutOfRange(format_rational(&value)))
        }
    }

    /// t = 1/2, i.e. w = -1.
    pub fn half() -> Self {
        RationalAngle(BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// The reflected angle 1 - t.
    pub fn reflect(&self) -> Self {
        RationalAngle(BigRational::one() - &self.0)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for RationalAngle {
    type Err = Error;

    /// Accepts only `n/d` with integer parts; decimals are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(s.to_string()))?;
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        RationalAngle::new(n, d)
    }
}

impl Serialize for RationalAngle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn new_rational_angle(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<RationalAngle> {
    RationalAngle::new(n, d)
}

/// Formats any rational as `n/d`, or `n` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.is_zero() {
        "0".to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// One evaluation of the signature function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureDatum {
    pub knot: TorusKnot,
    pub t: RationalAngle,
    pub sigma: i64,
}
