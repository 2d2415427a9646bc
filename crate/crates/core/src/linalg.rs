//! Small dense exact linear algebra over `Rational64`.

use num_rational::Rational64;
use num_traits::{One, Zero};

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RatMatrix {
    pub n: usize,
    pub entries: Vec<Rational64>,
}

impl RatMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational64) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        RatMatrix { n, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational64 {
        self.entries[i * self.n + j]
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn det(&self) -> Rational64 {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = Rational64::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Rational64::zero();
            };
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in col + 1..n {
                let factor = a[r * n + col] / p;
                if factor.is_zero() {
                    continue;
                }
                for k in col..n {
                    let v = a[col * n + k];
                    a[r * n + k] -= factor * v;
                }
            }
        }
        det
    }

    /// Leading principal minor of size `k`.
    pub fn leading_minor(&self, k: usize) -> Rational64 {
        RatMatrix::from_fn(k, |i, j| self.get(i, j)).det()
    }

    /// Inverse by Gauss-Jordan; `None` if singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = RatMatrix::from_fn(n, |i, j| {
            if i == j {
                Rational64::one()
            } else {
                Rational64::zero()
            }
        })
        .entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                    inv.swap(pivot * n + k, col * n + k);
                }
            }
            let p = a[col * n + col];
            for k in 0..n {
                a[col * n + k] /= p;
                inv[col * n + k] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let (va, vi) = (a[col * n + k], inv[col * n + k]);
                    a[r * n + k] -= factor * va;
                    inv[r * n + k] -= factor * vi;
                }
            }
        }
        Some(RatMatrix { n, entries: inv })
    }

    pub fn mul_vec(&self, v: &[Rational64]) -> Vec<Rational64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

/// Product of two row-major integer matrices of size `n`.
pub(crate) fn int_matmul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

pub(crate) fn int_identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

pub(crate) fn int_det(a: &[i64], n: usize) -> i64 {
    let d = RatMatrix::from_fn(n, |i, j| Rational64::from_integer(a[i * n + j])).det();
    debug_assert!(d.is_integer());
    d.to_integer()
}
