//! Low-order error generators of π-pulse sequences in the toggling frame.
//!
//! With `δ = επ` the pulse-strength error generator is
//! `Δ₁ + Δ₂ = −i(δ/2)·Σσ_{φ'_j} + i(δ²/4)·S'·σz`, and the off-resonance one is
//! `−i f·Σσ_{φ''_j} + i f²·(S''·σz − (π/4)·Σσ_{φ'_j})`, where
//! `S = Σ_j Σ_{k<j} sin(φ_j − φ_k)` over the respective toggling phases.

use std::f64::consts::PI;

use crate::error::Result;
use crate::sequence::PulseSequence;

/// Raw toggling-frame sums of one π-pulse sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BchSummary {
    /// `Σ_j (cos φ'_j, sin φ'_j)`.
    pub delta1_pse: [f64; 2],
    /// `Σ_j Σ_{k<j} sin(φ'_j − φ'_k)`.
    pub delta2_pse: f64,
    /// `Σ_j (cos φ''_j, sin φ''_j)`.
    pub delta1_ore: [f64; 2],
    /// `Σ_j Σ_{k<j} sin(φ''_j − φ''_k)`.
    pub delta2_ore_z: f64,
    /// `(π/4)·Σ_j (cos φ'_j, sin φ'_j)`: the in-plane part of the second-order
    /// off-resonance generator, coming from each pulse's own `μ = πf²/2` term.
    pub delta2_ore_residual: [f64; 2],
    /// Separate sums over odd-numbered (1st, 3rd, …) and even-numbered pulses.
    pub delta1_pse_odd: [f64; 2],
    pub delta1_pse_even: [f64; 2],
}

fn unit_sum<'a>(phases: impl Iterator<Item = &'a f64>) -> [f64; 2] {
    phases.fold([0.0, 0.0], |[x, y], p| [x + p.cos(), y + p.sin()])
}

fn ordered_sine_sum(phases: &[f64]) -> f64 {
    let mut total = 0.0;
    for j in 1..phases.len() {
        for k in 0..j {
            total += (phases[j] - phases[k]).sin();
        }
    }
    total
}

pub fn norm2(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

pub fn bch_summary(seq: &PulseSequence) -> Result<BchSummary> {
    let pse = seq.toggling_phases_pse()?;
    let ore = seq.toggling_phases_ore()?;
    let delta1_pse = unit_sum(pse.iter());
    Ok(BchSummary {
        delta1_pse,
        delta2_pse: ordered_sine_sum(&pse),
        delta1_ore: unit_sum(ore.iter()),
        delta2_ore_z: ordered_sine_sum(&ore),
        delta2_ore_residual: delta1_pse.map(|c| c * PI / 4.0),
        delta1_pse_odd: unit_sum(pse.iter().step_by(2)),
        delta1_pse_even: unit_sum(pse.iter().skip(1).step_by(2)),
    })
}

impl BchSummary {
    /// Predicted `ε²` infidelity coefficient, `π²|Σ unit(φ')|²/8`.
    pub fn pse_second_order_coefficient(&self) -> f64 {
        PI * PI * norm2(self.delta1_pse).powi(2) / 8.0
    }

    /// Predicted `ε⁴` coefficient when the first-order term vanishes:
    /// `π⁴ S'² / 32`.
    pub fn pse_fourth_order_coefficient(&self) -> f64 {
        PI.powi(4) * self.delta2_pse.powi(2) / 32.0
    }

    /// Predicted `f²` infidelity coefficient, `|Σ unit(φ'')|²/2`.
    pub fn ore_second_order_coefficient(&self) -> f64 {
        norm2(self.delta1_ore).powi(2) / 2.0
    }

    /// Predicted `f⁴` coefficient when the first-order term vanishes:
    /// `(S''² + |residual|²) / 2`.
    pub fn ore_fourth_order_coefficient(&self) -> f64 {
        (self.delta2_ore_z.powi(2) + norm2(self.delta2_ore_residual).powi(2)) / 2.0
    }

    /// Odd- and even-indexed toggling vectors both close.
    pub fn separately_closed(&self, tol: f64) -> bool {
        norm2(self.delta1_pse_odd) < tol && norm2(self.delta1_pse_even) < tol
    }
}
