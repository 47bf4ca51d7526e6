//! Iterative and brute-force capacity computations.
//!
//! These work for any channel (rectangular, singular, or with an optimal
//! input on the simplex boundary) and serve both as the fallback solver and
//! as an independent check on the explicit formulas.

use crate::channel::{mi_unchecked, output_weights, ChannelMatrix};
use crate::entropy::{LogConfig, ProbVector};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    /// Stop once `upper - lower` capacity bounds drop below this (in the
    /// units of the active [`LogConfig`]).
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Number of grid points over `p1 ∈ [0, 1]` for [`grid_search_binary`].
    pub grid_resolution: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            max_iterations: 100_000,
            grid_resolution: 1_000_000,
        }
    }
}

impl OracleConfig {
    pub fn new(tolerance: f64, max_iterations: usize, grid_resolution: usize) -> Result<Self> {
        let cfg = Self {
            tolerance,
            max_iterations,
            grid_resolution,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be > 0, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations < 1 {
            return Err(Error::InvalidConfig("max_iterations must be >= 1".into()));
        }
        if self.grid_resolution < 2 {
            return Err(Error::InvalidConfig("grid_resolution must be >= 2".into()));
        }
        Ok(())
    }
}

/// Outcome of a Blahut–Arimoto run.
#[derive(Clone, Debug, PartialEq)]
pub struct BlahutArimoto {
    /// `I(p, Q)` at the returned input; a certified lower bound on capacity.
    pub capacity: f64,
    pub input: ProbVector,
    /// `max_i D(q_i ‖ r)`, a certified upper bound on capacity.
    pub upper_bound: f64,
    /// `upper_bound - capacity`.
    pub gap: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Blahut–Arimoto iteration from the uniform input.
///
/// With `D_i = Σ_j q_ij log(q_ij / r_j)`, every iterate satisfies
/// `Σ_i p_i D_i = I(p) ≤ C ≤ max_i D_i`; the run stops when the two bounds
/// are within `ocfg.tolerance`. Hitting the iteration limit returns
/// [`Error::IterationLimit`] carrying the last iterate.
pub fn blahut_arimoto(
    q: &ChannelMatrix,
    cfg: &LogConfig,
    ocfg: &OracleConfig,
) -> Result<BlahutArimoto> {
    blahut_arimoto_observed(q, cfg, ocfg, |_, _, _| {})
}

/// [`blahut_arimoto`] reporting `(iteration, lower, upper)` before each update.
pub fn blahut_arimoto_observed(
    q: &ChannelMatrix,
    cfg: &LogConfig,
    ocfg: &OracleConfig,
    mut observe: impl FnMut(usize, f64, f64),
) -> Result<BlahutArimoto> {
    ocfg.validate()?;
    let n = q.rows();
    let to_units = cfg.inv_ln_base();
    let mut p = vec![1.0 / n as f64; n];
    let mut divergence = vec![0.0; n];
    let mut iteration = 0;
    loop {
        let r = output_weights(&p, q);
        for (i, d) in divergence.iter_mut().enumerate() {
            *d = q
                .row(i)
                .iter()
                .zip(&r)
                .filter(|(&qij, _)| qij > 0.0)
                .map(|(&qij, &rj)| qij * (qij / rj).ln())
                .sum();
        }
        let lower = p.iter().zip(&divergence).map(|(pi, d)| pi * d).sum::<f64>() * to_units;
        let top = divergence.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let upper = top * to_units;
        observe(iteration, lower, upper);

        let gap = upper - lower;
        let converged = gap < ocfg.tolerance;
        if converged || iteration >= ocfg.max_iterations {
            let result = BlahutArimoto {
                capacity: lower.max(0.0),
                input: ProbVector::from_computed(p),
                upper_bound: upper,
                gap,
                iterations: iteration,
                converged,
            };
            return if converged {
                Ok(result)
            } else {
                Err(Error::IterationLimit(Box::new(result)))
            };
        }

        let mut total = 0.0;
        for (pi, d) in p.iter_mut().zip(&divergence) {
            *pi *= (d - top).exp();
            total += *pi;
        }
        p.iter_mut().for_each(|pi| *pi /= total);
        iteration += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSearch {
    pub capacity: f64,
    pub p1: f64,
}

/// Exhaustive search over `p1 ∈ {k / (R - 1)}` for a two-input channel.
pub fn grid_search_binary(
    q: &ChannelMatrix,
    cfg: &LogConfig,
    ocfg: &OracleConfig,
) -> Result<GridSearch> {
    ocfg.validate()?;
    if q.rows() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: q.rows(),
        });
    }
    let steps = (ocfg.grid_resolution - 1) as f64;
    let mut best = GridSearch {
        capacity: f64::NEG_INFINITY,
        p1: 0.0,
    };
    for k in 0..ocfg.grid_resolution {
        let p1 = k as f64 / steps;
        let value = mi_unchecked(&[p1, 1.0 - p1], q, cfg);
        if value > best.capacity {
            best = GridSearch {
                capacity: value,
                p1,
            };
        }
    }
    best.capacity = best.capacity.max(0.0);
    Ok(best)
}
