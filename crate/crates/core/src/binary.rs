//! Closed-form capacity of the binary channel `Q = ((1 - a, a), (1 - c, c))`.
//!
//! Everything is evaluated in the log domain through the auxiliary values
//! `X1`, `X2` with `0 log 0 = 0`, which keeps the formulas total on the closed
//! square `[0, 1]²`. With `H` the binary entropy and
//! `s = (H(a) - H(c)) / (c - a)`, the auxiliary system `Q X = h` has the
//! solution `X1 = -H(a) - a s`, `X2 = -H(a) + (1 - a) s`, which is the usual
//! expansion with coefficients `ca'/(c-a)`, `ac/(c-a)`, ... regrouped. The
//! difference quotient `s` is computed with `ln_1p` so that nearly degenerate
//! channels (`c ≈ a`) do not lose every significant digit.
//!
//! The power-quotient form
//! `C = log2[(a'^{a'c} a^{ac} / (c'^{ac'} c^{ac}))^{1/(c-a)} + ...]`
//! is the same function on the open square but produces `0^0` and `0/0` on
//! the boundary, so it is not used for evaluation.

use crate::channel::ChannelMatrix;
use crate::entropy::{xlogx, LogConfig};
use crate::error::{Error, Result};
use crate::muroga::capacity_from_aux;

/// `|c - a|` at or below this is a degenerate (rank-one) channel.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

/// Binary channel: input 1 is received as 1 with probability `1 - a`, input
/// 2 is received as 2 with probability `c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BinaryChannel {
    a: f64,
    c: f64,
}

impl BinaryChannel {
    pub fn new(a: f64, c: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("c", c)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidChannel(format!(
                    "{name} = {v} outside [0, 1]"
                )));
            }
        }
        Ok(Self { a, c })
    }

    /// Reads `a = q_12`, `c = q_22` off a 2x2 transition matrix.
    pub fn from_matrix(q: &ChannelMatrix) -> Result<Self> {
        if q.rows() != 2 || q.cols() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: if q.rows() != 2 { q.rows() } else { q.cols() },
            });
        }
        Self::new(q.get(0, 1), q.get(1, 1))
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn a_prime(&self) -> f64 {
        1.0 - self.a
    }

    pub fn c_prime(&self) -> f64 {
        1.0 - self.c
    }

    /// `|Q| = c - a`.
    pub fn determinant(&self) -> f64 {
        self.c - self.a
    }

    pub fn is_degenerate(&self) -> bool {
        self.determinant().abs() <= DEGENERACY_TOLERANCE
    }

    pub fn matrix(&self) -> ChannelMatrix {
        ChannelMatrix::binary(self.a, self.c).expect("parameters validated")
    }

    fn require_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateChannel)
        } else {
            Ok(())
        }
    }
}

fn binary_entropy(x: f64, cfg: &LogConfig) -> f64 {
    -(xlogx(x, cfg) + xlogx(1.0 - x, cfg))
}

/// `(H(a) - H(c)) / (c - a)`, accurate for `c` close to `a`.
fn entropy_slope(ch: &BinaryChannel, cfg: &LogConfig) -> f64 {
    let (a, c) = (ch.a, ch.c);
    let d = c - a;
    let interior = |x: f64| x > 0.0 && x < 1.0;
    if interior(a) && interior(c) {
        let (ap, cp) = (1.0 - a, 1.0 - c);
        let curvature = a * (d / a).ln_1p() + ap * (-d / ap).ln_1p();
        cfg.log(c) - cfg.log(cp) + curvature * cfg.inv_ln_base() / d
    } else {
        // one endpoint has zero entropy, so there is no cancellation
        (binary_entropy(a, cfg) - binary_entropy(c, cfg)) / d
    }
}

/// Auxiliary values `(X1, X2)` solving `Q X = h`.
pub fn binary_aux(ch: &BinaryChannel, cfg: &LogConfig) -> Result<(f64, f64)> {
    ch.require_nondegenerate()?;
    let s = entropy_slope(ch, cfg);
    let h_a = binary_entropy(ch.a, cfg);
    Ok((-h_a - ch.a * s, -h_a + ch.a_prime() * s))
}

/// Capacity in units of `cfg`; exactly 0 for a degenerate channel.
pub fn binary_capacity(ch: &BinaryChannel, cfg: &LogConfig) -> f64 {
    match binary_aux(ch, cfg) {
        Ok((x1, x2)) => capacity_from_aux(&[x1, x2], cfg).max(0.0),
        Err(_) => 0.0,
    }
}

/// Capacity-achieving output `r_j = b^{X_j - C}`, written as the logistic
/// pair `1 / (1 + b^{±(X2 - X1)})`.
pub fn binary_optimal_output(ch: &BinaryChannel, cfg: &LogConfig) -> Result<(f64, f64)> {
    ch.require_nondegenerate()?;
    let s = entropy_slope(ch, cfg);
    Ok((1.0 / (1.0 + cfg.exp(s)), 1.0 / (1.0 + cfg.exp(-s))))
}

/// Capacity-achieving input `(p1, p2) = Fᵀ r`.
///
/// `p1 = (c - r2) / (c - a)` and `p2 = (r2 - a) / (c - a)` sum to 1 exactly;
/// dividing by their computed sum removes the rounding left by the division.
pub fn binary_optimal_input(ch: &BinaryChannel, cfg: &LogConfig) -> Result<(f64, f64)> {
    let (_r1, r2) = binary_optimal_output(ch, cfg)?;
    let d = ch.determinant();
    let p1 = (ch.c - r2) / d;
    let p2 = (r2 - ch.a) / d;
    let total = p1 + p2;
    Ok((p1 / total, p2 / total))
}

/// All closed-form quantities for one channel.
#[derive(Clone, Debug, PartialEq)]
pub struct BinarySolution {
    pub aux: Option<(f64, f64)>,
    pub capacity: f64,
    pub input: (f64, f64),
    pub output: (f64, f64),
    pub degenerate: bool,
}

/// Solves a binary channel. A degenerate channel reports capacity 0 with the
/// uniform input, which (like every input) achieves it.
pub fn binary_solution(ch: &BinaryChannel, cfg: &LogConfig) -> BinarySolution {
    if ch.is_degenerate() {
        return BinarySolution {
            aux: None,
            capacity: 0.0,
            input: (0.5, 0.5),
            output: (1.0 - 0.5 * (ch.a + ch.c), 0.5 * (ch.a + ch.c)),
            degenerate: true,
        };
    }
    let aux = binary_aux(ch, cfg).expect("checked non-degenerate");
    BinarySolution {
        aux: Some(aux),
        capacity: binary_capacity(ch, cfg),
        input: binary_optimal_input(ch, cfg).expect("checked non-degenerate"),
        output: binary_optimal_output(ch, cfg).expect("checked non-degenerate"),
        degenerate: false,
    }
}
