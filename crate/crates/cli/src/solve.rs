//! Solver selection and assembly of [`CapacityResult`]s.

use std::collections::BTreeMap;
use std::str::FromStr;

use capacity_core::binary::{binary_solution, BinaryChannel};
use capacity_core::channel::output_distribution;
use capacity_core::muroga::muroga_capacity;
use capacity_core::oracle::{blahut_arimoto, grid_search_binary, BlahutArimoto};
use capacity_core::{ChannelMatrix, Error, LogConfig, OracleConfig, ProbVector};
use thiserror::Error;

use crate::report::{units_for_base, CapacityResult, SolverMethod};

/// Requested solver.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Method {
    #[default]
    Auto,
    Binary,
    Muroga,
    BlahutArimoto,
    Grid,
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Self::Auto),
            "binary" => Ok(Self::Binary),
            "muroga" => Ok(Self::Muroga),
            "blahut-arimoto" => Ok(Self::BlahutArimoto),
            "grid" => Ok(Self::Grid),
            other => Err(format!(
                "unknown method {other:?} (expected auto, binary, muroga, blahut-arimoto or grid)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    pub method: Method,
    pub log: LogConfig,
    pub oracle: OracleConfig,
}

#[derive(Debug, Error)]
pub enum SolveError {
    /// The channel does not suit the requested method.
    #[error("{0}")]
    Unsupported(String),
    /// The iterative solver hit its limit; the best iterate is still reported.
    #[error("solver did not converge after {} iterations", .0.diagnostics.get("iterations").copied().unwrap_or(0.0))]
    NotConverged(Box<CapacityResult>),
}

/// A successful solve plus warnings for standard error.
#[derive(Clone, Debug)]
pub struct Solved {
    pub result: CapacityResult,
    pub warnings: Vec<String>,
}

pub fn solve(q: &ChannelMatrix, opts: &SolveOptions) -> Result<Solved, SolveError> {
    let mut warnings = Vec::new();
    let result = match opts.method {
        Method::Binary => solve_binary(q, opts)?,
        Method::Grid => solve_grid(q, opts)?,
        Method::BlahutArimoto => solve_oracle(q, opts, BTreeMap::new(), true, false)?,
        Method::Muroga => {
            let r = solve_muroga(q, opts)?;
            if !r.feasible {
                warnings.push(
                    "stationary input leaves the simplex; reported capacity is the unconstrained \
                     stationary value, an upper bound"
                        .to_string(),
                );
            }
            r
        }
        Method::Auto => solve_auto(q, opts, &mut warnings)?,
    };
    Ok(Solved { result, warnings })
}

fn solve_auto(
    q: &ChannelMatrix,
    opts: &SolveOptions,
    warnings: &mut Vec<String>,
) -> Result<CapacityResult, SolveError> {
    if q.rows() == 2 && q.cols() == 2 {
        return solve_binary(q, opts);
    }
    if !q.is_square() {
        return solve_oracle(q, opts, BTreeMap::new(), true, false);
    }
    match muroga_capacity(q, &opts.log) {
        Ok(sol) if sol.feasible => Ok(muroga_result(&sol, opts)),
        Ok(sol) => {
            warnings.push("explicit solution infeasible; falling back to Blahut-Arimoto".into());
            let diagnostics = BTreeMap::from([
                ("determinant".to_string(), sol.determinant),
                ("muroga_capacity".to_string(), sol.capacity),
                ("residual".to_string(), sol.residual),
            ]);
            solve_oracle(q, opts, diagnostics, false, true)
        }
        Err(Error::SingularChannel { .. }) => {
            let diagnostics = BTreeMap::from([(
                "determinant".to_string(),
                capacity_core::linalg::determinant(&q.to_dense()).unwrap_or(0.0),
            )]);
            solve_oracle(q, opts, diagnostics, true, false)
        }
        Err(e) => Err(SolveError::Unsupported(e.to_string())),
    }
}

fn solve_binary(q: &ChannelMatrix, opts: &SolveOptions) -> Result<CapacityResult, SolveError> {
    let ch = BinaryChannel::from_matrix(q).map_err(|_| {
        SolveError::Unsupported(format!(
            "binary closed form needs a 2x2 matrix, got {}x{}",
            q.rows(),
            q.cols()
        ))
    })?;
    let sol = binary_solution(&ch, &opts.log);
    let mut diagnostics = BTreeMap::from([("determinant".to_string(), ch.determinant())]);
    if let Some((x1, x2)) = sol.aux {
        diagnostics.insert("x1".into(), x1);
        diagnostics.insert("x2".into(), x2);
    }
    Ok(CapacityResult {
        capacity: sol.capacity,
        units: units_for_base(opts.log.base()),
        method: SolverMethod::BinaryClosedForm,
        optimal_input: simplex_point(&[sol.input.0, sol.input.1]),
        optimal_output: simplex_point(&[sol.output.0, sol.output.1]),
        feasible: true,
        fallback_used: false,
        diagnostics,
    })
}

fn solve_muroga(q: &ChannelMatrix, opts: &SolveOptions) -> Result<CapacityResult, SolveError> {
    let sol = muroga_capacity(q, &opts.log).map_err(|e| SolveError::Unsupported(e.to_string()))?;
    Ok(muroga_result(&sol, opts))
}

fn muroga_result(sol: &capacity_core::MurogaSolution, opts: &SolveOptions) -> CapacityResult {
    let min_input = sol
        .opt_input_raw
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    CapacityResult {
        capacity: sol.capacity,
        units: units_for_base(opts.log.base()),
        method: SolverMethod::Muroga,
        optimal_input: sol.reported_input(),
        optimal_output: sol.opt_output.clone(),
        feasible: sol.feasible,
        fallback_used: false,
        diagnostics: BTreeMap::from([
            ("determinant".to_string(), sol.determinant),
            ("min_raw_input".to_string(), min_input),
            ("residual".to_string(), sol.residual),
        ]),
    }
}

fn solve_oracle(
    q: &ChannelMatrix,
    opts: &SolveOptions,
    mut diagnostics: BTreeMap<String, f64>,
    feasible: bool,
    fallback_used: bool,
) -> Result<CapacityResult, SolveError> {
    let (run, converged) = match blahut_arimoto(q, &opts.log, &opts.oracle) {
        Ok(run) => (run, true),
        Err(Error::IterationLimit(best)) => (*best, false),
        Err(e) => return Err(SolveError::Unsupported(e.to_string())),
    };
    let BlahutArimoto {
        capacity,
        input,
        gap,
        iterations,
        ..
    } = run;
    diagnostics.insert("bound_gap".into(), gap);
    diagnostics.insert("converged".into(), if converged { 1.0 } else { 0.0 });
    diagnostics.insert("iterations".into(), iterations as f64);
    if fallback_used {
        diagnostics.insert("oracle_capacity".into(), capacity);
    }
    let output = output_distribution(&input, q).expect("dimensions match");
    let result = CapacityResult {
        capacity,
        units: units_for_base(opts.log.base()),
        method: SolverMethod::BlahutArimoto,
        optimal_input: input,
        optimal_output: output,
        feasible,
        fallback_used,
        diagnostics,
    };
    if converged {
        Ok(result)
    } else {
        Err(SolveError::NotConverged(Box::new(result)))
    }
}

fn solve_grid(q: &ChannelMatrix, opts: &SolveOptions) -> Result<CapacityResult, SolveError> {
    let grid = grid_search_binary(q, &opts.log, &opts.oracle).map_err(|_| {
        SolveError::Unsupported(format!("grid search needs 2 inputs, got {}", q.rows()))
    })?;
    let input = simplex_point(&[grid.p1, 1.0 - grid.p1]);
    let output = output_distribution(&input, q).expect("dimensions match");
    Ok(CapacityResult {
        capacity: grid.capacity,
        units: units_for_base(opts.log.base()),
        method: SolverMethod::Grid,
        optimal_input: input,
        optimal_output: output,
        feasible: true,
        fallback_used: false,
        diagnostics: BTreeMap::from([(
            "grid_points".to_string(),
            opts.oracle.grid_resolution as f64,
        )]),
    })
}

fn simplex_point(v: &[f64]) -> ProbVector {
    let clamped: Vec<f64> = v.iter().map(|x| x.max(0.0)).collect();
    ProbVector::normalize(&clamped).expect("closed-form distributions have positive mass")
}
