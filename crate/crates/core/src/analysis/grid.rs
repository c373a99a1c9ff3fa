use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::error_model::{sequence_propagator, ErrorPoint};
use crate::sequence::PulseSequence;
use crate::su2::fidelity;

use super::series::not_gate;

pub const MAX_AXIS_COUNT: usize = 4001;

/// Evenly spaced closed interval `[min, max]` with `count` nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisRange {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() || min > max {
            return Err(Error::InvalidArgument(format!("bad axis bounds [{min}, {max}]")));
        }
        if !(2..=MAX_AXIS_COUNT).contains(&count) {
            return Err(Error::InvalidArgument(format!(
                "axis count {count} outside [2, {MAX_AXIS_COUNT}]"
            )));
        }
        Ok(AxisRange { min, max, count })
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.max
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.count - 1) as f64
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.value(i))
    }
}

/// Fidelity against the NOT gate over an `(ε, f)` rectangle.
///
/// Rows run over `f`; within a row `ε` varies fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityGrid {
    pub epsilon: AxisRange,
    pub f: AxisRange,
    values: Vec<f64>,
}

impl FidelityGrid {
    pub fn get(&self, eps_index: usize, f_index: usize) -> f64 {
        self.values[f_index * self.epsilon.count + eps_index]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Fraction of nodes whose infidelity is strictly below `threshold`.
    pub fn area_fraction_below(&self, threshold: f64) -> f64 {
        let inside = self.values.iter().filter(|&&v| 1.0 - v < threshold).count();
        inside as f64 / self.values.len() as f64
    }

    /// `epsilon,f,fidelity` table, nine significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.values.len() * 40);
        out.push_str("epsilon,f,fidelity\n");
        for fi in 0..self.f.count {
            let f = self.f.value(fi);
            for ei in 0..self.epsilon.count {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    significant(self.epsilon.value(ei), 9),
                    significant(f, 9),
                    significant(self.get(ei, fi), 9)
                );
            }
        }
        out
    }
}

pub fn fidelity_grid(seq: &PulseSequence, epsilon: AxisRange, f: AxisRange) -> FidelityGrid {
    let target = not_gate();
    let values = (0..f.count)
        .into_par_iter()
        .flat_map_iter(|fi| {
            let fv = f.value(fi);
            let target = &target;
            (0..epsilon.count).map(move |ei| {
                let e = ErrorPoint {
                    epsilon: epsilon.value(ei),
                    f: fv,
                };
                fidelity(target, &sequence_propagator(seq, e))
            })
        })
        .collect();
    FidelityGrid { epsilon, f, values }
}

/// Plain decimal rendering with `digits` significant digits.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // "-0.000…" for values that round away entirely
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single() -> PulseSequence {
        PulseSequence::from_pi_phases("single-pi", &[0.0]).unwrap()
    }

    #[test]
    fn origin_and_corner_values() {
        let g = fidelity_grid(
            &single(),
            AxisRange::new(-1.0, 1.0, 3).unwrap(),
            AxisRange::new(0.0, 1.0, 2).unwrap(),
        );
        assert!((g.get(1, 0) - 1.0).abs() < 1e-15);
        assert!(g.get(2, 0) < 1e-15);
        assert!(g.get(0, 0) < 1e-15);
        assert!(g.values().iter().all(|v| (0.0..=1.0).contains(v)));
    }

    #[test]
    fn bad_ranges() {
        assert!(AxisRange::new(0.0, 1.0, 1).is_err());
        assert!(AxisRange::new(0.0, 1.0, 4002).is_err());
        assert!(AxisRange::new(1.0, 0.0, 5).is_err());
        assert!(AxisRange::new(f64::NAN, 0.0, 5).is_err());
    }

    #[test]
    fn csv_layout() {
        let g = fidelity_grid(
            &single(),
            AxisRange::new(-0.5, 0.5, 3).unwrap(),
            AxisRange::new(-0.2, 0.2, 2).unwrap(),
        );
        let csv = g.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0], "epsilon,f,fidelity");
        assert!(lines[1].starts_with("-0.500000000,-0.200000000,"));
        assert!(lines[2].starts_with("0,-0.200000000,"));
        assert!(lines[4].starts_with("-0.500000000,0.200000000,"));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(significant(0.987688341, 9), "0.987688341");
        assert_eq!(significant(1.0, 9), "1.00000000");
        assert_eq!(significant(-0.5, 9), "-0.500000000");
        assert_eq!(significant(123.456, 4), "123.5");
        assert_eq!(significant(0.0, 9), "0");
    }
}
