//! Discrete memoryless channels as row-stochastic transition matrices, and
//! the mutual information `I(p, Q)` they induce.

use crate::entropy::{JointDist, LogConfig, ProbVector, NEGATIVE_CLAMP, SUM_TOLERANCE};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Outputs whose probability falls below this are left out of gradient sums.
const NEGLIGIBLE_OUTPUT: f64 = 1e-300;

/// Transition matrix `q_ij = P(Y = y_j | X = x_i)`; every row sums to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl ChannelMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if n == 0 || m == 0 {
            return Err(Error::InvalidChannel(
                "matrix has no rows or columns".into(),
            ));
        }
        let mut entries = Vec::with_capacity(n * m);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidChannel(format!(
                    "row {i} has {} entries, expected {m}",
                    row.len()
                )));
            }
            let mut sum = 0.0;
            for (j, x) in row.into_iter().enumerate() {
                if !(x >= -NEGATIVE_CLAMP && x <= 1.0 + SUM_TOLERANCE) {
                    return Err(Error::InvalidChannel(format!(
                        "entry ({i}, {j}) = {x} outside [0, 1]"
                    )));
                }
                let x = x.max(0.0);
                sum += x;
                entries.push(x);
            }
            if (sum - 1.0).abs() > SUM_TOLERANCE {
                return Err(Error::InvalidChannel(format!(
                    "row {i} sums to {sum}, not 1"
                )));
            }
        }
        Ok(Self {
            rows: n,
            cols: m,
            entries,
        })
    }

    /// The noiseless channel on `n` symbols.
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    /// `((1 - a, a), (1 - c, c))`.
    pub fn binary(a: f64, c: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("c", c)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidChannel(format!(
                    "{name} = {v} outside [0, 1]"
                )));
            }
        }
        Ok(Self {
            rows: 2,
            cols: 2,
            entries: vec![1.0 - a, a, 1.0 - c, c],
        })
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

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_row_major(self.rows, self.cols, self.entries.clone())
            .expect("channel dimensions are consistent")
    }

    pub(crate) fn check_input(&self, p: &ProbVector) -> Result<()> {
        if p.len() == self.rows {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rows,
                actual: p.len(),
            })
        }
    }
}

/// `r_j = Σ_i q_ij p_i`.
pub fn output_distribution(p: &ProbVector, q: &ChannelMatrix) -> Result<ProbVector> {
    q.check_input(p)?;
    Ok(ProbVector::from_computed(output_weights(p.as_slice(), q)))
}

/// `Qᵀ p` for any weight vector of matching length.
pub(crate) fn output_weights(p: &[f64], q: &ChannelMatrix) -> Vec<f64> {
    let mut r = vec![0.0; q.cols];
    for (i, &pi) in p.iter().enumerate() {
        if pi != 0.0 {
            for (rj, &qij) in r.iter_mut().zip(q.row(i)) {
                *rj += pi * qij;
            }
        }
    }
    r
}

/// `p_ij = p_i q_ij`.
pub fn joint_distribution(p: &ProbVector, q: &ChannelMatrix) -> Result<JointDist> {
    q.check_input(p)?;
    let cells = p
        .as_slice()
        .iter()
        .enumerate()
        .flat_map(|(i, &pi)| q.row(i).iter().map(move |&qij| pi * qij))
        .collect();
    Ok(JointDist::from_computed(q.rows, q.cols, cells))
}

/// `I(p, Q) = Σ_ij p_i q_ij (log* q_ij - log* r_j)`.
///
/// Terms with `p_i q_ij = 0` vanish; whenever `p_i q_ij > 0`, `r_j > 0` too.
pub fn channel_mutual_information(
    p: &ProbVector,
    q: &ChannelMatrix,
    cfg: &LogConfig,
) -> Result<f64> {
    q.check_input(p)?;
    Ok(mi_unchecked(p.as_slice(), q, cfg))
}

pub(crate) fn mi_unchecked(p: &[f64], q: &ChannelMatrix, cfg: &LogConfig) -> f64 {
    let r = output_weights(p, q);
    let mut total = 0.0;
    for (i, &pi) in p.iter().enumerate() {
        if pi <= 0.0 {
            continue;
        }
        let mut row_sum = 0.0;
        for (&qij, &rj) in q.row(i).iter().zip(&r) {
            if qij > 0.0 {
                row_sum += qij * cfg.log(qij / rj);
            }
        }
        total += pi * row_sum;
    }
    total
}

/// Gradient of `I(p, Q)` with respect to `p` at an interior point:
/// component `k` is `Σ_j q_kj (log q_kj - log r_j) - 1/ln b`.
///
/// Only defined on the open simplex; a boundary point is an error.
pub fn mi_gradient(p: &ProbVector, q: &ChannelMatrix, cfg: &LogConfig) -> Result<Vec<f64>> {
    q.check_input(p)?;
    if let Some((index, &value)) = p.as_slice().iter().enumerate().find(|(_, &x)| x <= 0.0) {
        return Err(Error::BoundaryPoint { index, value });
    }
    let r = output_weights(p.as_slice(), q);
    let offset = cfg.inv_ln_base();
    Ok((0..q.rows)
        .map(|k| {
            q.row(k)
                .iter()
                .zip(&r)
                .filter(|(&qkj, &rj)| qkj > 0.0 && rj >= NEGLIGIBLE_OUTPUT)
                .map(|(&qkj, &rj)| qkj * (cfg.log(qkj) - cfg.log(rj)))
                .sum::<f64>()
                - offset
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{entropy, mutual_information};

    fn bits() -> LogConfig {
        LogConfig::bits()
    }

    fn pv(v: &[f64]) -> ProbVector {
        ProbVector::new(v.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn h2(x: f64) -> f64 {
        -(x * x.log2()) - (1.0 - x) * (1.0 - x).log2()
    }

    #[test]
    fn channel_validation() {
        assert!(ChannelMatrix::new(vec![]).is_err());
        assert!(ChannelMatrix::new(vec![vec![0.5, 0.5], vec![1.0]]).is_err());
        assert!(ChannelMatrix::new(vec![vec![0.5, 0.6]]).is_err());
        assert!(ChannelMatrix::new(vec![vec![1.5, -0.5]]).is_err());
        assert!(ChannelMatrix::binary(1.2, 0.0).is_err());
        let q = ChannelMatrix::binary(0.2, 0.7).unwrap();
        assert_eq!(q.to_rows(), vec![vec![0.8, 0.2], vec![1.0 - 0.7, 0.7]]);
    }

    #[test]
    fn output_distribution_examples() {
        let q = ChannelMatrix::binary(0.3, 0.8).unwrap();
        assert_eq!(
            output_distribution(&pv(&[1.0, 0.0]), &q)
                .unwrap()
                .as_slice(),
            &[0.7, 0.3]
        );
        let bsc = ChannelMatrix::binary(0.1, 0.9).unwrap();
        let r = output_distribution(&pv(&[0.5, 0.5]), &bsc).unwrap();
        close(r[0], 0.5, 1e-15);
        close(r[1], 0.5, 1e-15);
        let z = ChannelMatrix::binary(0.0, 0.5).unwrap();
        let r = output_distribution(&pv(&[0.6, 0.4]), &z).unwrap();
        close(r[0], 0.8, 1e-15);
        close(r[1], 0.2, 1e-15);
        assert!(matches!(
            output_distribution(&pv(&[1.0]), &z),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn joint_distribution_examples() {
        let q = ChannelMatrix::new(vec![vec![0.2, 0.3, 0.5], vec![0.1, 0.1, 0.8]]).unwrap();
        let j = joint_distribution(&pv(&[1.0, 0.0]), &q).unwrap();
        assert_eq!(j.row(0), q.row(0));
        assert_eq!(j.row(1), &[0.0, 0.0, 0.0]);

        let j = joint_distribution(
            &ProbVector::uniform(2).unwrap(),
            &ChannelMatrix::identity(2),
        )
        .unwrap();
        assert_eq!(j.cells(), &[0.5, 0.0, 0.0, 0.5]);

        let z = ChannelMatrix::binary(0.0, 0.5).unwrap();
        let j = joint_distribution(&pv(&[0.6, 0.4]), &z).unwrap();
        assert_eq!(j.cells(), &[0.6, 0.0, 0.2, 0.2]);
        close(j.output_marginal()[0], 0.8, 1e-15);
    }

    #[test]
    fn channel_mi_examples() {
        let q = ChannelMatrix::binary(0.3, 0.6).unwrap();
        assert_eq!(
            channel_mutual_information(&pv(&[1.0, 0.0]), &q, &bits()).unwrap(),
            0.0
        );
        assert_eq!(
            channel_mutual_information(&pv(&[0.0, 1.0]), &q, &bits()).unwrap(),
            0.0
        );
        let same = ChannelMatrix::binary(0.4, 0.4).unwrap();
        close(
            channel_mutual_information(&pv(&[0.3, 0.7]), &same, &bits()).unwrap(),
            0.0,
            1e-15,
        );
        let bsc = ChannelMatrix::binary(0.1, 0.9).unwrap();
        let i = channel_mutual_information(&pv(&[0.5, 0.5]), &bsc, &bits()).unwrap();
        close(i, 1.0 - h2(0.1), 1e-12);
        close(i, 0.531004, 1e-6);
    }

    #[test]
    fn channel_mi_matches_joint_form() {
        let q = ChannelMatrix::new(vec![
            vec![0.7, 0.2, 0.1],
            vec![0.0, 0.5, 0.5],
            vec![0.3, 0.3, 0.4],
        ])
        .unwrap();
        let p = pv(&[0.2, 0.5, 0.3]);
        let direct = channel_mutual_information(&p, &q, &bits()).unwrap();
        let via_joint = mutual_information(&joint_distribution(&p, &q).unwrap(), &bits());
        close(direct, via_joint, 1e-12);
        let r = output_distribution(&p, &q).unwrap();
        let hyx = crate::entropy::conditional_entropy_y_given_x(&p, &q, &bits()).unwrap();
        close(direct, entropy(&r, &bits()) - hyx, 1e-12);
    }

    #[test]
    fn gradient_identical_rows() {
        let q = ChannelMatrix::binary(0.35, 0.35).unwrap();
        let g = mi_gradient(&pv(&[0.3, 0.7]), &q, &bits()).unwrap();
        for gk in g {
            close(gk, -1.0 / std::f64::consts::LN_2, 1e-12);
        }
    }

    #[test]
    fn gradient_at_z_channel_optimum() {
        let z = ChannelMatrix::binary(0.0, 0.5).unwrap();
        let g = mi_gradient(&pv(&[0.6, 0.4]), &z, &bits()).unwrap();
        let expect = 1.25f64.log2() - 1.0 / std::f64::consts::LN_2;
        close(g[0], expect, 1e-12);
        close(g[1], expect, 1e-12);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let q = ChannelMatrix::binary(0.2, 0.7).unwrap();
        let h = 1e-5;
        for &p1 in &[0.1, 0.37, 0.5, 0.81] {
            let g = mi_gradient(&pv(&[p1, 1.0 - p1]), &q, &bits()).unwrap();
            let f = |x: f64| channel_mutual_information(&pv(&[x, 1.0 - x]), &q, &bits()).unwrap();
            let fd = (f(p1 + h) - f(p1 - h)) / (2.0 * h);
            close(g[0] - g[1], fd, 1e-6);
        }
    }

    #[test]
    fn gradient_rejects_boundary() {
        let q = ChannelMatrix::binary(0.2, 0.7).unwrap();
        assert!(matches!(
            mi_gradient(&pv(&[1.0, 0.0]), &q, &bits()),
            Err(Error::BoundaryPoint { index: 1, .. })
        ));
    }
}
