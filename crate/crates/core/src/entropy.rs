//! Entropy, joint and conditional entropy, and mutual information of finite
//! discrete distributions.
//!
//! Logarithms are taken in a configurable base `b > 1` ([`LogConfig`]); bits
//! when `b = 2`. The logarithm is extended to zero by an arbitrary constant
//! `w` (`log*(0) = w`), so `x log* x` is continuous on `[0, 1]` with value 0
//! at the origin. Every formula here multiplies `log*(0)` by a zero weight, so
//! no result depends on `w`.
//!
//! Entropy terms are sorted and then summed pairwise, so the result depends
//! only on the multiset of probabilities (permuting outcomes or appending
//! zero-probability outcomes gives a bit-identical value) and rounding grows
//! like `log n` rather than `n`.

use crate::channel::ChannelMatrix;
use crate::error::{Error, Result};

/// Tolerance on `|sum - 1|` accepted for probability vectors and joints.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Entries in `[-NEGATIVE_CLAMP, 0)` are treated as rounding noise and set to 0.
pub const NEGATIVE_CLAMP: f64 = 1e-15;

/// Logarithm base and the value assigned to `log*(0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogConfig {
    base: f64,
    star_value: f64,
}

impl Default for LogConfig {
    fn default() -> Self {
        Self::bits()
    }
}

impl LogConfig {
    pub fn new(base: f64, star_value: f64) -> Result<Self> {
        if !(base.is_finite() && base > 1.0) {
            return Err(Error::InvalidConfig(format!(
                "logarithm base must be finite and > 1, got {base}"
            )));
        }
        if !star_value.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "log*(0) constant must be finite, got {star_value}"
            )));
        }
        Ok(Self { base, star_value })
    }

    /// Base 2, `w = 0`.
    pub fn bits() -> Self {
        Self {
            base: 2.0,
            star_value: 0.0,
        }
    }

    pub fn with_base(base: f64) -> Result<Self> {
        Self::new(base, 0.0)
    }

    /// Same base, different `log*(0)` constant.
    pub fn with_star_value(self, star_value: f64) -> Result<Self> {
        Self::new(self.base, star_value)
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn star_value(&self) -> f64 {
        self.star_value
    }

    /// `log_b(x)` for `x > 0`. Bases 2, 10 and e use the dedicated routines.
    #[inline]
    pub fn log(&self, x: f64) -> f64 {
        if self.base == 2.0 {
            x.log2()
        } else if self.base == 10.0 {
            x.log10()
        } else if self.base == std::f64::consts::E {
            x.ln()
        } else {
            x.ln() / self.base.ln()
        }
    }

    /// `b^x`.
    #[inline]
    pub fn exp(&self, x: f64) -> f64 {
        if self.base == 2.0 {
            x.exp2()
        } else if self.base == std::f64::consts::E {
            x.exp()
        } else {
            (x * self.base.ln()).exp()
        }
    }

    /// `1 / ln b`, the constant term of the mutual information gradient.
    #[inline]
    pub fn inv_ln_base(&self) -> f64 {
        1.0 / self.base.ln()
    }
}

/// `log*(x)`: `log_b(x)` for `x > 0` and `w` at `x = 0`.
pub fn log_star(x: f64, cfg: &LogConfig) -> Result<f64> {
    check_nonnegative(x)?;
    Ok(if x > 0.0 { cfg.log(x) } else { cfg.star_value })
}

/// `x log*(x)`, equal to 0 at `x = 0` whatever `w` is.
pub fn xlogx_star(x: f64, cfg: &LogConfig) -> Result<f64> {
    check_nonnegative(x)?;
    Ok(xlogx(x, cfg))
}

/// Unchecked `x log_b x` with the continuous extension at 0. Callers guarantee
/// `x >= 0`.
#[inline]
pub(crate) fn xlogx(x: f64, cfg: &LogConfig) -> f64 {
    if x > 0.0 {
        x * cfg.log(x)
    } else {
        0.0
    }
}

fn check_nonnegative(x: f64) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("expected x >= 0, got {x}")))
    }
}

/// Validates and clamps one probability-like entry.
fn clean_entry(x: f64, what: &str) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::InvalidDistribution(format!("{what} is NaN")));
    }
    if x < -NEGATIVE_CLAMP {
        return Err(Error::InvalidDistribution(format!(
            "{what} = {x} is negative"
        )));
    }
    if x > 1.0 + SUM_TOLERANCE {
        return Err(Error::InvalidDistribution(format!(
            "{what} = {x} exceeds 1"
        )));
    }
    Ok(x.max(0.0))
}

/// A point of the standard simplex: nonnegative entries summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbVector {
    probs: Vec<f64>,
}

impl ProbVector {
    /// Validates `probs`. Inputs within tolerance are kept as given, not
    /// renormalized; use [`ProbVector::normalize`] for that.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty vector".into()));
        }
        let probs = probs
            .into_iter()
            .enumerate()
            .map(|(i, x)| clean_entry(x, &format!("entry {i}")))
            .collect::<Result<Vec<_>>>()?;
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {sum}, not 1"
            )));
        }
        Ok(Self { probs })
    }

    /// Scales nonnegative weights to sum to 1.
    pub fn normalize(weights: &[f64]) -> Result<Self> {
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidDistribution(
                "weights must be finite and nonnegative".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) {
            return Err(Error::InvalidDistribution(
                "weights have zero total mass".into(),
            ));
        }
        Self::new(weights.iter().map(|w| w / total).collect())
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDistribution("empty vector".into()));
        }
        Ok(Self {
            probs: vec![1.0 / n as f64; n],
        })
    }

    /// Wraps a vector known to lie on the simplex up to accumulated rounding
    /// (e.g. a matrix-vector product of valid inputs).
    pub(crate) fn from_computed(probs: Vec<f64>) -> Self {
        Self {
            probs: probs.into_iter().map(|x| x.max(0.0)).collect(),
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// True when some entry is exactly zero.
    pub fn on_boundary(&self) -> bool {
        self.probs.iter().any(|&x| x == 0.0)
    }

    pub fn is_interior(&self) -> bool {
        !self.on_boundary()
    }
}

impl std::ops::Index<usize> for ProbVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.probs[i]
    }
}

/// Joint distribution `p_ij = P(X = x_i, Y = y_j)`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDist {
    rows: usize,
    cols: usize,
    cells: Vec<f64>,
}

impl JointDist {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if n == 0 || m == 0 {
            return Err(Error::InvalidDistribution(
                "empty joint distribution".into(),
            ));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                actual: bad.len(),
            });
        }
        let cells = rows
            .into_iter()
            .flatten()
            .enumerate()
            .map(|(k, x)| clean_entry(x, &format!("cell ({}, {})", k / m, k % m)))
            .collect::<Result<Vec<_>>>()?;
        let sum: f64 = cells.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "cells sum to {sum}, not 1"
            )));
        }
        Ok(Self {
            rows: n,
            cols: m,
            cells,
        })
    }

    /// The product joint `p_i r_j` of two marginals.
    pub fn outer(p: &ProbVector, r: &ProbVector) -> Self {
        let cells = p
            .as_slice()
            .iter()
            .flat_map(|&pi| r.as_slice().iter().map(move |&rj| pi * rj))
            .collect();
        Self {
            rows: p.len(),
            cols: r.len(),
            cells,
        }
    }

    pub(crate) fn from_computed(rows: usize, cols: usize, cells: Vec<f64>) -> Self {
        debug_assert_eq!(rows * cols, cells.len());
        Self { rows, cols, cells }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.cols + j]
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.cells[i * self.cols..(i + 1) * self.cols]
    }

    /// Distribution of `X` (row sums).
    pub fn input_marginal(&self) -> ProbVector {
        ProbVector::from_computed((0..self.rows).map(|i| self.row(i).iter().sum()).collect())
    }

    /// Distribution of `Y` (column sums).
    pub fn output_marginal(&self) -> ProbVector {
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            for (o, &x) in out.iter_mut().zip(self.row(i)) {
                *o += x;
            }
        }
        ProbVector::from_computed(out)
    }
}

fn entropy_of(probs: &[f64], cfg: &LogConfig) -> f64 {
    let mut terms: Vec<f64> = probs
        .iter()
        .map(|&x| xlogx(x, cfg))
        .filter(|&t| t != 0.0)
        .collect();
    terms.sort_unstable_by(f64::total_cmp);
    let h = -pairwise_sum(&terms);
    // -0.0 from an all-zero-term sum
    h.max(0.0)
}

fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        xs.iter().sum()
    } else {
        let (lo, hi) = xs.split_at(xs.len() / 2);
        pairwise_sum(lo) + pairwise_sum(hi)
    }
}

/// Shannon entropy `H(p) = -Σ p_i log_b p_i`.
pub fn entropy(p: &ProbVector, cfg: &LogConfig) -> f64 {
    entropy_of(p.as_slice(), cfg)
}

/// `H(X, Y)`: the entropy of the flattened joint.
pub fn joint_entropy(j: &JointDist, cfg: &LogConfig) -> f64 {
    entropy_of(j.cells(), cfg)
}

/// `H(Y | X) = Σ_i p_i H(Y | X = x_i)` for input distribution `p` through `q`.
pub fn conditional_entropy_y_given_x(
    p: &ProbVector,
    q: &ChannelMatrix,
    cfg: &LogConfig,
) -> Result<f64> {
    q.check_input(p)?;
    Ok(p.as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &pi)| pi > 0.0)
        .map(|(i, &pi)| pi * entropy_of(q.row(i), cfg))
        .sum())
}

/// `H(Y | X) = -Σ_ij p_ij log(p_ij / p_i)` evaluated directly on a joint.
pub fn joint_conditional_y_given_x(j: &JointDist, cfg: &LogConfig) -> f64 {
    let px = j.input_marginal();
    let mut h = 0.0;
    for i in 0..j.rows() {
        for &pij in j.row(i) {
            if pij > 0.0 {
                h -= pij * cfg.log(pij / px[i]);
            }
        }
    }
    h.max(0.0)
}

/// `H(X | Y) = -Σ_ij p_ij log(p_ij / r_j)` evaluated directly on a joint.
pub fn joint_conditional_x_given_y(j: &JointDist, cfg: &LogConfig) -> f64 {
    let py = j.output_marginal();
    let mut h = 0.0;
    for i in 0..j.rows() {
        for (col, &pij) in j.row(i).iter().enumerate() {
            if pij > 0.0 {
                h -= pij * cfg.log(pij / py[col]);
            }
        }
    }
    h.max(0.0)
}

/// `I(X, Y) = H(X) + H(Y) - H(X, Y)`.
pub fn mutual_information(j: &JointDist, cfg: &LogConfig) -> f64 {
    entropy(&j.input_marginal(), cfg) + entropy(&j.output_marginal(), cfg) - joint_entropy(j, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits() -> LogConfig {
        LogConfig::bits()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn h2(x: f64) -> f64 {
        -(x * x.log2()) - (1.0 - x) * (1.0 - x).log2()
    }

    #[test]
    fn xlogx_star_values() {
        assert_eq!(xlogx_star(0.0, &bits()).unwrap(), 0.0);
        assert_eq!(xlogx_star(1.0, &bits()).unwrap(), 0.0);
        assert_eq!(xlogx_star(0.5, &bits()).unwrap(), -0.5);
        assert!(matches!(xlogx_star(-0.1, &bits()), Err(Error::Domain(_))));
    }

    #[test]
    fn xlogx_star_ignores_star_value() {
        let cfg = bits().with_star_value(-50.0).unwrap();
        assert_eq!(xlogx_star(0.0, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn log_star_values() {
        assert_eq!(log_star(0.0, &bits()).unwrap(), 0.0);
        assert_eq!(
            log_star(0.0, &bits().with_star_value(7.0).unwrap()).unwrap(),
            7.0
        );
        assert_eq!(log_star(8.0, &bits()).unwrap(), 3.0);
        assert_eq!(
            log_star(1.0, &LogConfig::with_base(10.0).unwrap()).unwrap(),
            0.0
        );
        assert!(log_star(-1.0, &bits()).is_err());
    }

    #[test]
    fn log_config_rejects_bad_base() {
        assert!(LogConfig::with_base(1.0).is_err());
        assert!(LogConfig::with_base(0.5).is_err());
        assert!(LogConfig::with_base(f64::NAN).is_err());
        assert!(LogConfig::new(2.0, f64::INFINITY).is_err());
    }

    #[test]
    fn prob_vector_validation() {
        assert!(ProbVector::new(vec![]).is_err());
        assert!(ProbVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbVector::new(vec![1.1, -0.1]).is_err());
        assert!(ProbVector::new(vec![f64::NAN, 1.0]).is_err());
        let p = ProbVector::new(vec![1.0 + 5e-16, -5e-16]).unwrap();
        assert_eq!(p[1], 0.0);
        assert!(p.on_boundary());
        // within tolerance: accepted as-is
        let p = ProbVector::new(vec![0.5, 0.5 + 1e-13]).unwrap();
        assert_eq!(p[1], 0.5 + 1e-13);
    }

    #[test]
    fn normalize_scales_weights() {
        let p = ProbVector::normalize(&[1.0, 3.0]).unwrap();
        assert_eq!(p.as_slice(), &[0.25, 0.75]);
        assert!(ProbVector::normalize(&[0.0, 0.0]).is_err());
        assert!(ProbVector::normalize(&[-1.0, 2.0]).is_err());
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(
            entropy(&ProbVector::new(vec![1.0, 0.0]).unwrap(), &bits()),
            0.0
        );
        for n in 0..8 {
            let u = ProbVector::uniform(1 << n).unwrap();
            close(entropy(&u, &bits()), n as f64, 1e-12);
        }
        let p = ProbVector::new(vec![0.5, 1.0 / 3.0, 1.0 / 6.0]).unwrap();
        let lhs = entropy(&p, &bits());
        let rhs = entropy(&ProbVector::new(vec![0.5, 0.5]).unwrap(), &bits())
            + 0.5
                * entropy(
                    &ProbVector::new(vec![2.0 / 3.0, 1.0 / 3.0]).unwrap(),
                    &bits(),
                );
        close(lhs, rhs, 1e-12);
    }

    #[test]
    fn joint_entropy_examples() {
        let u = ProbVector::uniform(2).unwrap();
        close(
            joint_entropy(&JointDist::outer(&u, &u), &bits()),
            2.0,
            1e-12,
        );
        let diag = JointDist::new(vec![vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        close(joint_entropy(&diag, &bits()), 1.0, 1e-12);
        let j = JointDist::new(vec![vec![0.3, 0.2], vec![0.1, 0.4]]).unwrap();
        let direct: f64 = -[0.3f64, 0.2, 0.1, 0.4]
            .iter()
            .map(|x| x * x.log2())
            .sum::<f64>();
        close(joint_entropy(&j, &bits()), direct, 1e-14);
    }

    #[test]
    fn joint_validation() {
        assert!(JointDist::new(vec![]).is_err());
        assert!(JointDist::new(vec![vec![0.5], vec![0.25, 0.25]]).is_err());
        assert!(JointDist::new(vec![vec![0.5, 0.6]]).is_err());
    }

    #[test]
    fn conditional_entropy_examples() {
        let p = ProbVector::new(vec![0.5, 0.5]).unwrap();
        let ident = ChannelMatrix::identity(2);
        assert_eq!(
            conditional_entropy_y_given_x(&p, &ident, &bits()).unwrap(),
            0.0
        );
        let noisy = ChannelMatrix::new(vec![vec![0.25; 4]; 2]).unwrap();
        close(
            conditional_entropy_y_given_x(&p, &noisy, &bits()).unwrap(),
            2.0,
            1e-12,
        );
        let q = ChannelMatrix::new(vec![vec![0.9, 0.1], vec![0.5, 0.5]]).unwrap();
        let h = conditional_entropy_y_given_x(&p, &q, &bits()).unwrap();
        close(h, 0.5 * h2(0.1) + 0.5, 1e-12);
        close(h, 0.734498, 1e-6);
        let wrong = ProbVector::uniform(3).unwrap();
        assert!(conditional_entropy_y_given_x(&wrong, &q, &bits()).is_err());
    }

    #[test]
    fn mutual_information_examples() {
        let p = ProbVector::new(vec![0.3, 0.7]).unwrap();
        let r = ProbVector::new(vec![0.2, 0.5, 0.3]).unwrap();
        close(
            mutual_information(&JointDist::outer(&p, &r), &bits()),
            0.0,
            1e-12,
        );
        let diag = JointDist::new(vec![vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        close(mutual_information(&diag, &bits()), 1.0, 1e-12);

        let j = JointDist::new(vec![vec![0.3, 0.2], vec![0.1, 0.4]]).unwrap();
        let hx = entropy(&j.input_marginal(), &bits());
        let hy = entropy(&j.output_marginal(), &bits());
        let a = mutual_information(&j, &bits());
        let b = hy - joint_conditional_y_given_x(&j, &bits());
        let c = hx - joint_conditional_x_given_y(&j, &bits());
        close(a, b, 1e-12);
        close(a, c, 1e-12);
        // hand value: cells (0.3,0.2;0.1,0.4), marginals (0.5,0.5) and (0.4,0.6)
        let hand = 0.3 * (0.3f64 / 0.2).log2()
            + 0.2 * (0.2f64 / 0.3).log2()
            + 0.1 * (0.1f64 / 0.2).log2()
            + 0.4 * (0.4f64 / 0.3).log2();
        close(a, hand, 1e-12);
    }
}
