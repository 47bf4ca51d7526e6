//! Small dense linear algebra: LU factorization with partial pivoting.
//!
//! Matrices in scope are at most 16x16, so there is no blocking or scaling.
//! A pivot whose magnitude falls below `1e-12` times the largest initial
//! entry is treated as singular.

use crate::error::{Error, Result};

/// Relative pivot threshold for declaring a matrix singular.
pub const RELATIVE_PIVOT_TOLERANCE: f64 = 1e-12;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || rows * cols != data.len() {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                actual: bad.len(),
            });
        }
        Self::from_row_major(n, m, rows.concat())
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        let mut data = vec![0.0; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                for j in 0..other.cols {
                    data[i * other.cols + j] += aik * other.get(k, j);
                }
            }
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// `PA = LU` with unit-diagonal `L` stored below the diagonal of `lu`.
#[derive(Clone, Debug)]
pub struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    pub fn factor(a: &DenseMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows,
                cols: a.cols,
            });
        }
        let scale = a.max_abs();
        let lu = eliminate(a, |step, pivot| {
            let relative = if scale > 0.0 { pivot / scale } else { 0.0 };
            if relative < RELATIVE_PIVOT_TOLERANCE {
                Err(Error::SingularChannel {
                    step,
                    pivot: relative,
                })
            } else {
                Ok(())
            }
        })?;
        Ok(lu)
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.n;
        if rhs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: rhs.len(),
            });
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for k in 0..i {
                s -= self.lu[i * n + k] * x[k];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in i + 1..n {
                s -= self.lu[i * n + k] * x[k];
            }
            x[i] = s / self.lu[i * n + i];
        }
        Ok(x)
    }

    pub fn determinant(&self) -> f64 {
        let sign = if self.swaps % 2 == 0 { 1.0 } else { -1.0 };
        (0..self.n)
            .map(|i| self.lu[i * self.n + i])
            .product::<f64>()
            * sign
    }

    pub fn inverse(&self) -> DenseMatrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|x| *x = 0.0);
            e[j] = 1.0;
            let col = self.solve(&e).expect("length matches");
            for i in 0..n {
                data[i * n + j] = col[i];
            }
        }
        DenseMatrix {
            rows: n,
            cols: n,
            data,
        }
    }
}

/// Gaussian elimination with partial pivoting; `check` sees each pivot's
/// magnitude and may abort.
fn eliminate(a: &DenseMatrix, mut check: impl FnMut(usize, f64) -> Result<()>) -> Result<Lu> {
    let n = a.rows;
    let mut lu = a.data.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut swaps = 0;
    for k in 0..n {
        let (p, pivot) = (k..n)
            .map(|i| (i, lu[i * n + k].abs()))
            .fold(
                (k, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        check(k, pivot)?;
        if p != k {
            for j in 0..n {
                lu.swap(k * n + j, p * n + j);
            }
            perm.swap(k, p);
            swaps += 1;
        }
        let d = lu[k * n + k];
        if d == 0.0 {
            continue;
        }
        for i in k + 1..n {
            let f = lu[i * n + k] / d;
            lu[i * n + k] = f;
            for j in k + 1..n {
                lu[i * n + j] -= f * lu[k * n + j];
            }
        }
    }
    Ok(Lu { n, lu, perm, swaps })
}

/// Solves `a x = rhs`.
pub fn solve(a: &DenseMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    Lu::factor(a)?.solve(rhs)
}

pub fn inverse(a: &DenseMatrix) -> Result<DenseMatrix> {
    Ok(Lu::factor(a)?.inverse())
}

/// Signed product of the pivots. Never fails on a square matrix; a singular
/// matrix yields (close to) zero.
pub fn determinant(a: &DenseMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let lu = eliminate(a, |_, _| Ok(()))?;
    Ok(lu.determinant())
}
