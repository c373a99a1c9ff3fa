//! Leading-order infidelity extraction along one error axis.
//!
//! The infidelity is sampled on a geometric ladder `x_k = x₀·r^k`. The order
//! is the rounded least-squares slope of `log I` against `log x`; the
//! coefficient is the `x → 0` intercept of a low-degree polynomial fitted to
//! `I/x^order`, which removes the next-order contamination that a plain
//! average of `I/x^order` would keep.

use std::fmt;

use crate::error::{Error, Result};
use crate::error_model::{sequence_propagator, ErrorPoint};
use crate::sequence::PulseSequence;
use crate::su2::{infidelity, pulse_gate, Gate};

/// Orders at or above this are reported as a lower bound only.
pub const MAX_RESOLVED_ORDER: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Epsilon,
    F,
}

impl Axis {
    pub fn point(self, x: f64) -> ErrorPoint {
        match self {
            Axis::Epsilon => ErrorPoint::strength(x),
            Axis::F => ErrorPoint::offset(x),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Epsilon => "epsilon",
            Axis::F => "f",
        })
    }
}

impl std::str::FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "epsilon" | "eps" | "e" => Ok(Axis::Epsilon),
            "f" | "offset" => Ok(Axis::F),
            other => Err(Error::InvalidArgument(format!("unknown axis `{other}`"))),
        }
    }
}

/// Sampling ladder and fit settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ladder {
    pub start: f64,
    pub ratio: f64,
    pub points: usize,
    /// Samples with infidelity below this are dropped before fitting.
    pub discard_below: f64,
    /// Largest accepted distance between the fitted slope and an integer.
    pub slope_tolerance: f64,
    pub min_points: usize,
}

impl Default for Ladder {
    /// `5e-4 · √2^k`, nine points (largest sample 8e-3).
    fn default() -> Self {
        Ladder {
            start: 5e-4,
            ratio: std::f64::consts::SQRT_2,
            points: 9,
            discard_below: 1e-24,
            slope_tolerance: 0.15,
            min_points: 4,
        }
    }
}

impl Ladder {
    pub fn with_start(mut self, start: f64) -> Self {
        self.start = start;
        self
    }

    pub fn samples(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(move |k| self.start * self.ratio.powi(k as i32))
    }
}

/// Leading infidelity behaviour `I ≈ coefficient · x^leading_order`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesReport {
    pub axis: Axis,
    pub leading_order: u32,
    /// True when the order is only known to be at least `leading_order`.
    pub saturated: bool,
    pub coefficient: f64,
    pub slope: f64,
    /// RMS residual of the log-log line fit.
    pub fit_residual: f64,
    pub points_used: usize,
}

impl SeriesReport {
    /// Highest error order `k` whose removal is implied by the leading
    /// infidelity order, i.e. the largest `k` with `order ≥ 2(k+1)`.
    pub fn suppressed_error_order(&self) -> u32 {
        (self.leading_order / 2).saturating_sub(1)
    }

    fn saturated(axis: Axis) -> Self {
        SeriesReport {
            axis,
            leading_order: MAX_RESOLVED_ORDER,
            saturated: true,
            coefficient: 0.0,
            slope: f64::NAN,
            fit_residual: 0.0,
            points_used: 0,
        }
    }
}

impl fmt::Display for SeriesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.saturated {
            return write!(f, "axis {}: order >= {}", self.axis, self.leading_order);
        }
        write!(
            f,
            "axis {}: order {} coefficient {:.9e} (slope {:.4}, fit residual {:.2e}, {} points)",
            self.axis, self.leading_order, self.coefficient, self.slope, self.fit_residual, self.points_used
        )
    }
}

/// Target of every composite pulse here: the NOT gate `π_0`.
pub fn not_gate() -> Gate {
    pulse_gate(std::f64::consts::PI, 0.0).expect("finite")
}

/// Infidelity against the NOT gate at one error point.
pub fn sequence_infidelity(seq: &PulseSequence, e: ErrorPoint) -> f64 {
    infidelity(&not_gate(), &sequence_propagator(seq, e))
}

/// Noise floor of the accurate infidelity is ~1e-30; retried ladders may
/// use samples down to this level.
const RETRY_DISCARD_BELOW: f64 = 1e-27;

/// Default ladder. A slope caught between two orders means the ladder
/// straddles a crossover; it is then moved toward zero (up to twice, by a
/// factor 16) where the lower power dominates.
pub fn infidelity_series(seq: &PulseSequence, axis: Axis) -> Result<SeriesReport> {
    let mut ladder = Ladder::default();
    let first = infidelity_series_with(seq, axis, &ladder, None);
    if !matches!(first, Err(Error::IndeterminateOrder { .. })) {
        return first;
    }
    ladder.discard_below = RETRY_DISCARD_BELOW;
    for _ in 0..2 {
        ladder = ladder.with_start(ladder.start / 16.0);
        match infidelity_series_with(seq, axis, &ladder, None) {
            Err(Error::IndeterminateOrder { .. }) => continue,
            Err(_) => break,
            ok => return ok,
        }
    }
    first
}

/// Ladder fit with explicit settings. With `fixed_order` the slope check is
/// skipped and the coefficient of that power is extracted (it may then be
/// slightly negative when the true coefficient vanishes).
pub fn infidelity_series_with(
    seq: &PulseSequence,
    axis: Axis,
    ladder: &Ladder,
    fixed_order: Option<u32>,
) -> Result<SeriesReport> {
    let at_zero = sequence_infidelity(seq, ErrorPoint::ZERO);
    if at_zero > 1e-12 {
        return Err(Error::UnsupportedSequence(format!(
            "`{}` misses the NOT gate at zero error (infidelity {at_zero:.3e})",
            seq.name
        )));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = ladder
        .samples()
        .map(|x| (x, sequence_infidelity(seq, axis.point(x))))
        .filter(|&(_, i)| i >= ladder.discard_below)
        .unzip();

    if xs.len() < ladder.min_points {
        return Err(Error::InsufficientSignal { retained: xs.len() });
    }

    let log_x: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let log_i: Vec<f64> = ys.iter().map(|i| i.ln()).collect();
    let (intercept, slope) = fit_line(&log_x, &log_i);
    let fit_residual = (log_x
        .iter()
        .zip(&log_i)
        .map(|(lx, li)| (li - intercept - slope * lx).powi(2))
        .sum::<f64>()
        / xs.len() as f64)
        .sqrt();

    let order = match fixed_order {
        Some(p) => p,
        None => {
            let rounded = slope.round();
            // the infidelity is a square, so a genuine leading power is even
            let odd = rounded as i64 % 2 != 0;
            if (slope - rounded).abs() > ladder.slope_tolerance || rounded < 1.0 || odd {
                return Err(Error::IndeterminateOrder {
                    slope,
                    tolerance: ladder.slope_tolerance,
                });
            }
            rounded as u32
        }
    };

    if fixed_order.is_none() && order >= MAX_RESOLVED_ORDER {
        return Ok(SeriesReport {
            slope,
            fit_residual,
            points_used: xs.len(),
            ..SeriesReport::saturated(axis)
        });
    }

    let scaled: Vec<f64> = xs.iter().zip(&ys).map(|(x, i)| i / x.powi(order as i32)).collect();
    let degree = 3.min(xs.len() - 2);
    let coefficient = polynomial_intercept(&xs, &scaled, degree);
    let coefficient = if fixed_order.is_some() {
        coefficient
    } else {
        coefficient.max(0.0)
    };

    Ok(SeriesReport {
        axis,
        leading_order: order,
        saturated: false,
        coefficient,
        slope,
        fit_residual,
        points_used: xs.len(),
    })
}

/// Least-squares line `y = a + b x`; returns `(a, b)`.
fn fit_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let b = sxy / sxx;
    (my - b * mx, b)
}

/// Value at `x = 0` of the least-squares polynomial of the given degree.
///
/// Abscissae are rescaled to `[0, 1]` and the system is solved by modified
/// Gram-Schmidt QR.
pub(crate) fn polynomial_intercept(x: &[f64], y: &[f64], degree: usize) -> f64 {
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let cols = degree + 1;
    let mut q: Vec<Vec<f64>> = (0..cols)
        .map(|p| x.iter().map(|v| (v / scale).powi(p as i32)).collect())
        .collect();
    let mut r = vec![vec![0.0; cols]; cols];
    for j in 0..cols {
        for i in 0..j {
            let d: f64 = q[i].iter().zip(&q[j]).map(|(a, b)| a * b).sum();
            r[i][j] = d;
            let qi = q[i].clone();
            q[j].iter_mut().zip(&qi).for_each(|(a, b)| *a -= d * b);
        }
        let norm = q[j].iter().map(|a| a * a).sum::<f64>().sqrt();
        r[j][j] = norm;
        q[j].iter_mut().for_each(|a| *a /= norm);
    }
    let qty: Vec<f64> = q.iter().map(|col| col.iter().zip(y).map(|(a, b)| a * b).sum()).collect();
    let mut coef = vec![0.0; cols];
    for i in (0..cols).rev() {
        let tail: f64 = (i + 1..cols).map(|k| r[i][k] * coef[k]).sum();
        coef[i] = (qty[i] - tail) / r[i][i];
    }
    coef[0]
}
