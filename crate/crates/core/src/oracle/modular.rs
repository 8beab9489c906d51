//! Exact integer linear algebra by reduction modulo word-sized primes and
//! Chinese remaindering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, m: u64) -> u64 {
    pow_mod(a, m - 2, m)
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes descending from 2^62.
fn primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62)).rev().filter(|&n| is_prime(n))
}

fn reduce(v: i64, m: u64) -> u64 {
    v.rem_euclid(m as i64) as u64
}

/// Square matrix over Z/m, row-major.
#[derive(Clone)]
struct ModMatrix {
    n: usize,
    m: u64,
    a: Vec<u64>,
}

impl ModMatrix {
    fn from_ints(n: usize, entries: &[i64], m: u64) -> Self {
        ModMatrix {
            n,
            m,
            a: entries.iter().map(|&v| reduce(v, m)).collect(),
        }
    }

    fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.n + j] = v;
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        for j in 0..self.n {
            self.a.swap(i * self.n + j, k * self.n + j);
        }
    }

    fn swap_cols(&mut self, i: usize, k: usize) {
        for r in 0..self.n {
            self.a.swap(r * self.n + i, r * self.n + k);
        }
    }

    fn det(mut self) -> u64 {
        let (n, m) = (self.n, self.m);
        let mut det = 1u64;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| self.at(r, c) != 0) else {
                return 0;
            };
            if piv != c {
                self.swap_rows(piv, c);
                det = (m - det) % m;
            }
            let pv = self.at(c, c);
            det = mul_mod(det, pv, m);
            let inv = inv_mod(pv, m);
            for r in c + 1..n {
                let f = mul_mod(self.at(r, c), inv, m);
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    let v = (self.at(r, j) + m - mul_mod(f, self.at(c, j), m)) % m;
                    self.set(r, j, v);
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan, or `None` if singular mod m.
    fn inverse(&self) -> Option<ModMatrix> {
        let (n, m) = (self.n, self.m);
        let mut a = self.clone();
        let mut inv = ModMatrix {
            n,
            m,
            a: vec![0; n * n],
        };
        for i in 0..n {
            inv.set(i, i, 1);
        }
        for c in 0..n {
            let piv = (c..n).find(|&r| a.at(r, c) != 0)?;
            a.swap_rows(piv, c);
            inv.swap_rows(piv, c);
            let s = inv_mod(a.at(c, c), m);
            for j in 0..n {
                a.set(c, j, mul_mod(a.at(c, j), s, m));
                inv.set(c, j, mul_mod(inv.at(c, j), s, m));
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.at(r, c);
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = (a.at(r, j) + m - mul_mod(f, a.at(c, j), m)) % m;
                    a.set(r, j, v);
                    let w = (inv.at(r, j) + m - mul_mod(f, inv.at(c, j), m)) % m;
                    inv.set(r, j, w);
                }
            }
        }
        Some(inv)
    }

    fn mul(&self, other: &ModMatrix) -> ModMatrix {
        let (n, m) = (self.n, self.m);
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out[idx] = (out[idx] + mul_mod(a, other.at(k, j), m)) % m;
                }
            }
        }
        ModMatrix { n, m, a: out }
    }

    /// Characteristic polynomial `det(xI - A)`, lowest degree first, through
    /// reduction to upper Hessenberg form.
    fn charpoly(mut self) -> Vec<u64> {
        let (n, m) = (self.n, self.m);
        for c in 1..n.saturating_sub(1) {
            let Some(piv) = (c..n).find(|&r| self.at(r, c - 1) != 0) else {
                continue;
            };
            if piv != c {
                self.swap_rows(piv, c);
                self.swap_cols(piv, c);
            }
            let inv = inv_mod(self.at(c, c - 1), m);
            for r in c + 1..n {
                let u = mul_mod(self.at(r, c - 1), inv, m);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = (self.at(r, j) + m - mul_mod(u, self.at(c, j), m)) % m;
                    self.set(r, j, v);
                }
                for i in 0..n {
                    let v = (self.at(i, c) + mul_mod(u, self.at(i, r), m)) % m;
                    self.set(i, c, v);
                }
            }
        }

        // polys[k] is the characteristic polynomial of the leading k x k block.
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 1..=n {
            let h = |i: usize, j: usize| self.at(i - 1, j - 1);
            let prev = &polys[k - 1];
            let mut next = vec![0u64; k + 1];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = (next[d + 1] + c) % m;
                next[d] = (next[d] + m - mul_mod(h(k, k), c, m)) % m;
            }
            let mut t = 1u64;
            for i in 1..k {
                t = mul_mod(t, h(k - i + 1, k - i), m);
                let coef = mul_mod(t, h(k - i, k), m);
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[k - i - 1].iter().enumerate() {
                    next[d] = (next[d] + m - mul_mod(coef, c, m)) % m;
                }
            }
            polys.push(next);
        }
        polys.pop().expect("at least the constant polynomial")
    }
}

/// Incremental Chinese remaindering of a vector of residues.
struct Crt {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Crt {
    fn new(len: usize) -> Self {
        Crt {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    fn absorb(&mut self, residues: &[u64], prime: u64) {
        let p = BigInt::from(prime);
        let m_inv = BigInt::from(inv_mod((&self.modulus % &p).try_into().unwrap(), prime));
        for (x, &r) in self.values.iter_mut().zip(residues) {
            let diff = (BigInt::from(r) - &*x).mod_floor(&p);
            let k = (diff * &m_inv).mod_floor(&p);
            *x += &self.modulus * k;
        }
        self.modulus *= p;
    }

    fn bits(&self) -> u64 {
        self.modulus.bits()
    }

    /// Representatives in `(-M/2, M/2]`.
    fn finish(self) -> Vec<BigInt> {
        let half = &self.modulus >> 1;
        self.values
            .into_iter()
            .map(|v| if v > half { v - &self.modulus } else { v })
            .collect()
    }
}

const MAX_UNLUCKY_PRIMES: usize = 16;

fn row_norm(entries: &[i64], n: usize, i: usize) -> f64 {
    (0..n)
        .map(|j| (entries[i * n + j] as f64).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn col_norm(entries: &[i64], n: usize, j: usize) -> f64 {
    (0..n)
        .map(|i| (entries[i * n + j] as f64).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Bits needed to hold any value of absolute size `prod factors`, plus a
/// sign bit and slack for floating-point rounding in the estimate.
fn hadamard_bits(factors: impl Iterator<Item = f64>) -> u64 {
    let log: f64 = factors.map(|f| f.max(1.0).log2()).sum();
    log.ceil() as u64 + 3
}

/// Exact determinant of an `n x n` integer matrix (row-major).
pub fn determinant(entries: &[i64], n: usize) -> BigInt {
    let need = hadamard_bits((0..n).map(|i| row_norm(entries, n, i)));
    let mut crt = Crt::new(1);
    for prime in primes() {
        let d = ModMatrix::from_ints(n, entries, prime).det();
        crt.absorb(&[d], prime);
        if crt.bits() > need {
            break;
        }
    }
    crt.finish().pop().expect("one value")
}

/// Exact coefficients of `det(A - t A^T)`, lowest degree first.
///
/// Modulo each prime, `A - tA^T = A (I - tM)` with `M = A^{-1} A^T`, so the
/// polynomial is `det(A)` times the reversed characteristic polynomial of
/// `M`. Requires `A` to be nonsingular, which holds for Seifert matrices of
/// fibered knots such as positive braid closures.
pub fn seifert_determinant_poly(entries: &[i64], n: usize) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Ok(vec![BigInt::one()]);
    }
    let need = hadamard_bits((0..n).map(|i| row_norm(entries, n, i) + col_norm(entries, n, i)));
    let transposed: Vec<i64> = (0..n * n).map(|k| entries[(k % n) * n + k / n]).collect();
    let mut crt = Crt::new(n + 1);
    let mut unlucky = 0;
    for prime in primes() {
        let a = ModMatrix::from_ints(n, entries, prime);
        let det = a.clone().det();
        let Some(inv) = (det != 0).then(|| a.inverse()).flatten() else {
            unlucky += 1;
            if unlucky > MAX_UNLUCKY_PRIMES {
                return Err(Error::ValidationFailure(
                    "Seifert matrix is singular; det(A - tA^T) needs a nonsingular A".into(),
                ));
            }
            continue;
        };
        let at = ModMatrix::from_ints(n, &transposed, prime);
        let chi = inv.mul(&at).charpoly();
        // coefficient of t^k is det(A) * chi_{n-k}
        let residues: Vec<u64> = (0..=n).map(|k| mul_mod(det, chi[n - k], prime)).collect();
        crt.absorb(&residues, prime);
        if crt.bits() > need {
            break;
        }
    }
    Ok(crt.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_generation() {
        assert!(is_prime(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime(2_305_843_009_213_693_953));
        assert!(!is_prime(561));
        let ps: Vec<u64> = primes().take(3).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| p < 1 << 62 && is_prime(p)));
    }

    #[test]
    fn small_determinants() {
        assert_eq!(determinant(&[2, 1, 1, 3], 2), BigInt::from(5));
        assert_eq!(determinant(&[0, 1, 1, 0], 2), BigInt::from(-1));
        assert_eq!(determinant(&[1, 2, 3, 4, 5, 6, 7, 8, 9], 3), BigInt::zero());
        // 40 x 40 matrix with entries 7: det of 7*J is zero; of 7*I is 7^40.
        let n = 40;
        let mut diag = vec![0i64; n * n];
        for i in 0..n {
            diag[i * n + i] = 7;
        }
        assert_eq!(determinant(&diag, n), BigInt::from(7).pow(40));
        diag[1] = -3;
        diag[n] = 5;
        assert_eq!(
            determinant(&diag, n),
            (BigInt::from(49) + 15) * BigInt::from(7).pow(38)
        );
    }

    #[test]
    fn charpoly_matches_determinants() {
        let m = 1_000_000_007u64;
        let a: Vec<i64> = vec![2, -1, 0, 3, 1, 4, -2, 5, 0, 1, 1, 1, 7, -3, 2, 0];
        let n = 4;
        let chi = ModMatrix::from_ints(n, &a, m).charpoly();
        assert_eq!(chi[n], 1);
        for x in [0i64, 1, 5, -7, 123] {
            let shifted: Vec<i64> = (0..n * n)
                .map(|k| if k / n == k % n { x - a[k] } else { -a[k] })
                .collect();
            let direct = ModMatrix::from_ints(n, &shifted, m).det();
            let via = chi
                .iter()
                .rev()
                .fold(0u64, |acc, &c| (mul_mod(acc, reduce(x, m), m) + c) % m);
            assert_eq!(direct, via, "x = {x}");
        }
    }

    #[test]
    fn seifert_poly_of_trefoil_form() {
        let a = [-1, 1, 0, -1];
        let poly = seifert_determinant_poly(&a, 2).unwrap();
        // det([[-1+t, 1], [-t, -1+t]]) = t^2 - t + 1
        assert_eq!(
            poly,
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]
        );
        assert!(seifert_determinant_poly(&[0, 0, 0, 0], 2).is_err());
    }
}
