//! Explicit capacity of a channel with a square, invertible transition matrix.
//!
//! Solving `Q X = h` with `h_i = Σ_j q_ij log* q_ij` gives the capacity
//! `C = log_b Σ_j b^{X_j}`, the capacity-achieving output `r_j = b^{X_j - C}`
//! and the stationary input `p = Fᵀ r` where `F = Q⁻¹`. The output is always
//! on the simplex; the input may not be, in which case the stationary value
//! is only an upper bound on the true capacity.

use crate::channel::ChannelMatrix;
use crate::entropy::{xlogx, LogConfig, ProbVector};
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Lu};

/// Input entries at or above `-FEASIBILITY_TOLERANCE` count as nonnegative.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct MurogaSolution {
    /// Auxiliary vector `X` solving `Q X = h`.
    pub aux: Vec<f64>,
    /// `log_b Σ_j b^{X_j}`; the capacity when `feasible`, otherwise the
    /// unconstrained stationary value.
    pub capacity: f64,
    pub opt_output: ProbVector,
    /// `Fᵀ r`; sums to 1 but may have negative entries.
    pub opt_input_raw: Vec<f64>,
    pub feasible: bool,
    pub inverse: DenseMatrix,
    /// `‖Q X - h‖∞`.
    pub residual: f64,
    pub determinant: f64,
}

impl MurogaSolution {
    /// The raw input with negatives clamped to zero and renormalized.
    pub fn reported_input(&self) -> ProbVector {
        let clamped: Vec<f64> = self.opt_input_raw.iter().map(|&x| x.max(0.0)).collect();
        ProbVector::normalize(&clamped).unwrap_or_else(|_| {
            ProbVector::uniform(clamped.len()).expect("channel has at least one input")
        })
    }
}

fn require_square(q: &ChannelMatrix) -> Result<()> {
    if q.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            rows: q.rows(),
            cols: q.cols(),
        })
    }
}

fn row_xlogx(q: &ChannelMatrix, cfg: &LogConfig) -> Vec<f64> {
    (0..q.rows())
        .map(|i| q.row(i).iter().map(|&x| xlogx(x, cfg)).sum())
        .collect()
}

/// Solves `Q X = h`, `h_i = Σ_j q_ij log*_b q_ij`.
pub fn solve_auxiliary(q: &ChannelMatrix, cfg: &LogConfig) -> Result<Vec<f64>> {
    require_square(q)?;
    Lu::factor(&q.to_dense())?.solve(&row_xlogx(q, cfg))
}

/// `log_b Σ_j b^{X_j}`, shifted by the maximum for stability.
pub fn capacity_from_aux(aux: &[f64], cfg: &LogConfig) -> f64 {
    let top = aux.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !top.is_finite() {
        return top;
    }
    let tail: f64 = aux.iter().map(|&x| cfg.exp(x - top)).sum();
    top + cfg.log(tail)
}

/// `r_j = b^{X_j - C}`.
pub fn optimal_output(aux: &[f64], capacity: f64, cfg: &LogConfig) -> ProbVector {
    ProbVector::from_computed(aux.iter().map(|&x| cfg.exp(x - capacity)).collect())
}

/// `p = Fᵀ r`, possibly with negative entries.
pub fn optimal_input(q: &ChannelMatrix, r: &ProbVector) -> Result<Vec<f64>> {
    require_square(q)?;
    if r.len() != q.cols() {
        return Err(Error::DimensionMismatch {
            expected: q.cols(),
            actual: r.len(),
        });
    }
    let f = Lu::factor(&q.to_dense())?.inverse();
    Ok(transpose_apply(&f, r.as_slice()))
}

/// `(Fᵀ r)_i = Σ_k f_ki r_k`.
fn transpose_apply(f: &DenseMatrix, r: &[f64]) -> Vec<f64> {
    (0..f.cols())
        .map(|i| (0..f.rows()).map(|k| f.get(k, i) * r[k]).sum())
        .collect()
}

/// Full explicit solution for a square channel.
///
/// A rank-deficient `Q` is an error; callers fall back to an iterative solver.
/// An infeasible stationary input is not an error: it comes back with
/// `feasible == false`.
pub fn muroga_capacity(q: &ChannelMatrix, cfg: &LogConfig) -> Result<MurogaSolution> {
    require_square(q)?;
    let dense = q.to_dense();
    let lu = Lu::factor(&dense)?;
    let h = row_xlogx(q, cfg);
    let aux = lu.solve(&h)?;
    let residual = dense
        .mul_vec(&aux)?
        .iter()
        .zip(&h)
        .fold(0.0f64, |m, (lhs, rhs)| m.max((lhs - rhs).abs()));

    let mut capacity = capacity_from_aux(&aux, cfg);
    if capacity < 0.0 && capacity > -FEASIBILITY_TOLERANCE {
        capacity = 0.0;
    }
    let opt_output = optimal_output(&aux, capacity, cfg);
    let inverse = lu.inverse();
    let opt_input_raw = transpose_apply(&inverse, opt_output.as_slice());
    let feasible = opt_input_raw.iter().all(|&p| p >= -FEASIBILITY_TOLERANCE);

    Ok(MurogaSolution {
        aux,
        capacity,
        opt_output,
        opt_input_raw,
        feasible,
        inverse,
        residual,
        determinant: lu.determinant(),
    })
}
