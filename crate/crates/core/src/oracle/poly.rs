use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    /// `t^n - 1`.
    pub fn power_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        Self::new(c)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Quotient of an exact division by a divisor with leading coefficient
    /// +-1. Returns `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        let lead = divisor.coeffs[dd].clone();
        if !lead.abs().is_one() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() {
                Some(self.clone())
            } else {
                None
            };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Canonical representative up to the units `+-t^k` of `Z[t, 1/t]`:
    /// no factor of `t` and a positive leading coefficient.
    pub fn normalized(&self) -> IntPoly {
        let shift = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let mut coeffs: Vec<BigInt> = self.coeffs[shift..].to_vec();
        if coeffs.last().is_some_and(|c| c.is_negative()) {
            for c in &mut coeffs {
                *c = -&*c;
            }
        }
        IntPoly::new(coeffs)
    }

    pub fn equal_up_to_units(&self, other: &IntPoly) -> bool {
        self.normalized() == other.normalized()
    }

    /// Symmetric or antisymmetric under `t -> 1/t` after removing powers of t.
    pub fn is_palindromic_up_to_sign(&self) -> bool {
        let n = self.normalized();
        let c = &n.coeffs;
        let sym = c.iter().zip(c.iter().rev()).all(|(a, b)| a == b);
        let anti = c.iter().zip(c.iter().rev()).all(|(a, b)| *a == -b);
        sym || anti
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = !mag.is_one() || k == 0;
            match (show_mag, k) {
                (true, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}t")?,
                (true, _) => write!(f, "{mag}t^{k}")?,
                (false, 1) => write!(f, "t")?,
                (false, _) => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}
