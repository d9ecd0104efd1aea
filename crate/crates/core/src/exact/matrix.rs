//! Small dense exact matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Determinant of a square integer matrix by Bareiss fraction-free elimination.
pub fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Square rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: Vec<Vec<BigRational>>,
}

impl RatMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Self {
        RatMatrix { rows }
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix {
            rows: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows.iter().all(|r| r.len() == self.rows.len())
    }

    /// Determinant by Gaussian elimination over Q.
    pub fn det(&self) -> BigRational {
        let n = self.dim();
        let mut a = self.rows.clone();
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return BigRational::zero();
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let pivot = a[k][k].clone();
            det *= &pivot;
            for i in k + 1..n {
                let f = &a[i][k] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = &f * &a[k][j];
                    a[i][j] -= v;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.dim();
        let mut a = self.rows.clone();
        let mut inv = RatMatrix::identity(n).rows;
        for k in 0..n {
            let p = (k..n).find(|&r| !a[r][k].is_zero())?;
            a.swap(p, k);
            inv.swap(p, k);
            let pivot = a[k][k].recip();
            for j in 0..n {
                a[k][j] *= &pivot;
                inv[k][j] *= &pivot;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    let v = &f * &a[k][j];
                    a[i][j] -= v;
                    let w = &f * &inv[k][j];
                    inv[i][j] -= w;
                }
            }
        }
        Some(RatMatrix { rows: inv })
    }

    /// Row vector times matrix: `v * self`.
    pub fn left_mul(&self, v: &[BigRational]) -> Vec<BigRational> {
        let n = self.dim();
        (0..n)
            .map(|j| {
                v.iter()
                    .zip(&self.rows)
                    .fold(BigRational::zero(), |acc, (vi, row)| acc + vi * &row[j])
            })
            .collect()
    }
}
