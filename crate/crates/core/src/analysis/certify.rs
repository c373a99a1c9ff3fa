use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::sequence::{PulseSequence, SymmetryClass};

use super::bch::{bch_summary, norm2, BchSummary};
use super::series::{infidelity_series, Axis, SeriesReport};

/// Bundled error analysis of one sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub name: String,
    pub pulse_count: usize,
    pub phases_deg: Vec<f64>,
    pub symmetry: SymmetryClass,
    /// Net phase in radians; only for odd π-pulse sequences.
    pub net_phase: Option<f64>,
    /// Toggling-frame sums; only for π-pulse sequences.
    pub bch: Option<BchSummary>,
    pub epsilon: SeriesReport,
    pub f: SeriesReport,
}

impl Certificate {
    pub fn report(&self, axis: Axis) -> &SeriesReport {
        match axis {
            Axis::Epsilon => &self.epsilon,
            Axis::F => &self.f,
        }
    }

    pub fn order(&self, axis: Axis) -> u32 {
        self.report(axis).leading_order
    }

    /// The `k`-th order error on `axis` is removed: leading infidelity order
    /// is at least `2(k+1)`.
    pub fn suppresses(&self, axis: Axis, k: u32) -> bool {
        self.order(axis) >= 2 * (k + 1)
    }

    /// Fails unless both axes reach the given leading orders.
    pub fn require_orders(&self, epsilon: u32, f: u32) -> Result<()> {
        if self.order(Axis::Epsilon) >= epsilon && self.order(Axis::F) >= f {
            Ok(())
        } else {
            Err(Error::Certification(format!(
                "`{}` reaches orders ({}, {}), needs ({epsilon}, {f})",
                self.name,
                self.order(Axis::Epsilon),
                self.order(Axis::F)
            )))
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name: {}", self.name);
        let _ = writeln!(out, "pulses: {}", self.pulse_count);
        let phases: Vec<String> = self.phases_deg.iter().map(|p| format!("{p:.6}")).collect();
        let _ = writeln!(out, "phases_deg: {}", phases.join(" "));
        let _ = writeln!(out, "symmetry: {}", self.symmetry.kind());
        match self.net_phase {
            Some(p) => {
                let _ = writeln!(out, "net_phase_deg: {:.6}", p.to_degrees());
            }
            None => out.push_str("net_phase_deg: undefined\n"),
        }
        if let Some(b) = &self.bch {
            let _ = writeln!(out, "delta1_pse: {:.3e}", norm2(b.delta1_pse));
            let _ = writeln!(out, "delta2_pse: {:.3e}", b.delta2_pse);
            let _ = writeln!(out, "delta1_ore: {:.3e}", norm2(b.delta1_ore));
            let _ = writeln!(out, "delta2_ore_z: {:.3e}", b.delta2_ore_z);
            let _ = writeln!(out, "delta2_ore_residual: {:.3e}", norm2(b.delta2_ore_residual));
        }
        for axis in [Axis::Epsilon, Axis::F] {
            let r = self.report(axis);
            let order = if r.saturated {
                format!(">={}", r.leading_order)
            } else {
                r.leading_order.to_string()
            };
            let _ = writeln!(out, "{axis}_order: {order}");
            if !r.saturated {
                let _ = writeln!(out, "{axis}_coefficient: {:.9e}", r.coefficient);
            }
            let k = r.suppressed_error_order();
            if k == 0 {
                let _ = writeln!(out, "{axis}_suppresses: none");
            } else {
                let _ = writeln!(out, "{axis}_suppresses: errors up to order {k}");
            }
        }
        out
    }
}

fn axis_report(seq: &PulseSequence, axis: Axis) -> Result<SeriesReport> {
    match infidelity_series(seq, axis) {
        // nothing left above the noise floor on the ladder: beyond what
        // double precision resolves
        Err(Error::InsufficientSignal { retained }) => Ok(SeriesReport {
            axis,
            leading_order: super::series::MAX_RESOLVED_ORDER,
            saturated: true,
            coefficient: 0.0,
            slope: f64::NAN,
            fit_residual: 0.0,
            points_used: retained,
        }),
        other => other,
    }
}

pub fn certify(seq: &PulseSequence) -> Result<Certificate> {
    let bch = if seq.all_pi() { Some(bch_summary(seq)?) } else { None };
    Ok(Certificate {
        name: seq.name.clone(),
        pulse_count: seq.len(),
        phases_deg: seq.phases_deg(),
        symmetry: seq.classify_symmetry(),
        net_phase: seq.net_phase().ok(),
        bch,
        epsilon: axis_report(seq, Axis::Epsilon)?,
        f: axis_report(seq, Axis::F)?,
    })
}
