//! Composite pulse sequences in execution order.
//!
//! Pulses are stored first-executed first. The only place the order is
//! flipped into the right-to-left propagator product is
//! [`PulseSequence::ideal_propagator`] (and its errored counterpart in
//! [`crate::error_model`]).

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::su2::{pulse_gate, Gate};

/// Tolerance for comparing phases modulo 2π.
pub const PHASE_TOL: f64 = 1e-9;

/// Tolerance for deciding that a rotation angle is exactly π.
const PI_TOL: f64 = 1e-12;

/// Reduce an angle into `[0, 2π)`.
pub fn wrap_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    d.min(TAU - d)
}

pub fn angles_equal(a: f64, b: f64, tol: f64) -> bool {
    angle_distance(a, b) <= tol
}

/// One ideal rotation of nominal angle `theta` about the in-plane axis at `phi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    theta: f64,
    phi: f64,
}

impl Pulse {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "pulse angles must be finite (theta={theta}, phi={phi})"
            )));
        }
        if theta <= 0.0 || theta > 4.0 * PI + PI_TOL {
            return Err(Error::InvalidArgument(format!(
                "rotation angle {theta} outside (0, 4π]"
            )));
        }
        Ok(Pulse {
            theta,
            phi: wrap_angle(phi),
        })
    }

    pub fn pi(phi: f64) -> Self {
        Pulse {
            theta: PI,
            phi: wrap_angle(phi),
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn is_pi(&self) -> bool {
        (self.theta - PI).abs() <= PI_TOL
    }

    pub fn ideal_gate(&self) -> Gate {
        pulse_gate(self.theta, self.phi).expect("pulse angles are validated finite")
    }
}

/// Named, ordered list of pulses with free-form annotations.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSequence {
    pub name: String,
    pulses: Vec<Pulse>,
    pub meta: BTreeMap<String, String>,
}

/// Symmetry of a phase list under time reversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    Neither,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Symmetric => "symmetric",
            Symmetry::Antisymmetric => "antisymmetric",
            Symmetry::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryClass {
    pub symmetric: bool,
    pub antisymmetric: bool,
    /// `Some(true)` when the net phase vanishes; `None` when the net phase is
    /// undefined (non-π pulses or even length).
    pub phi_sum_zero: Option<bool>,
}

impl SymmetryClass {
    /// Time symmetry wins when both hold (e.g. all phases 0 or π).
    pub fn kind(&self) -> Symmetry {
        if self.symmetric {
            Symmetry::Symmetric
        } else if self.antisymmetric {
            Symmetry::Antisymmetric
        } else {
            Symmetry::Neither
        }
    }
}

/// Structural rewrites of a sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    ReverseOrder,
    NegatePhases,
    /// Move the first `k` pulses to the end, negating their phases. This keeps
    /// the pulse-strength fidelity against `π_0` unchanged.
    CyclicShift(usize),
    PhaseOffset(f64),
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::ReverseOrder => f.write_str("reverse-order"),
            Transform::NegatePhases => f.write_str("negate-phases"),
            Transform::CyclicShift(k) => write!(f, "cyclic-shift {k}"),
            Transform::PhaseOffset(c) => write!(f, "phase-offset {:.6}deg", c.to_degrees()),
        }
    }
}

impl PulseSequence {
    pub fn new(name: impl Into<String>, pulses: Vec<Pulse>) -> Result<Self> {
        if pulses.is_empty() {
            return Err(Error::InvalidArgument("a sequence needs at least one pulse".into()));
        }
        Ok(PulseSequence {
            name: name.into(),
            pulses,
            meta: BTreeMap::new(),
        })
    }

    /// Sequence of π pulses with the given phases (radians).
    pub fn from_pi_phases(name: impl Into<String>, phases: &[f64]) -> Result<Self> {
        if let Some(bad) = phases.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite phase {bad}")));
        }
        Self::new(name, phases.iter().map(|&p| Pulse::pi(p)).collect())
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<String>) -> Self {
        self.meta.insert(key.to_string(), value.into());
        self
    }

    pub fn pulses(&self) -> &[Pulse] {
        &self.pulses
    }

    pub fn len(&self) -> usize {
        self.pulses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulses.is_empty()
    }

    pub fn phases(&self) -> Vec<f64> {
        self.pulses.iter().map(Pulse::phi).collect()
    }

    pub fn phases_deg(&self) -> Vec<f64> {
        self.pulses.iter().map(|p| p.phi().to_degrees()).collect()
    }

    pub fn all_pi(&self) -> bool {
        self.pulses.iter().all(Pulse::is_pi)
    }

    fn require_pi(&self, what: &str) -> Result<()> {
        if self.all_pi() {
            Ok(())
        } else {
            Err(Error::UnsupportedSequence(format!(
                "{what} needs every pulse to be a π rotation (`{}` is not)",
                self.name
            )))
        }
    }

    /// Alternating phase sum `Φ = Σ (−1)^(j+1) φ_j`, in `[0, 2π)`.
    ///
    /// An odd sequence of π pulses is a single π rotation about `Φ`.
    pub fn net_phase(&self) -> Result<f64> {
        self.require_pi("net phase")?;
        if self.len().is_multiple_of(2) {
            return Err(Error::UnsupportedSequence(format!(
                "net phase needs an odd number of pulses (`{}` has {})",
                self.name,
                self.len()
            )));
        }
        Ok(wrap_angle(alternating_sum(&self.phases())))
    }

    /// Toggling-frame phases for pulse-strength errors.
    ///
    /// `φ'_j = (−1)^(j+1) φ_j + Σ_{k<j} (−1)^(k+1) 2φ_k` with 1-based `j`.
    pub fn toggling_phases_pse(&self) -> Result<Vec<f64>> {
        self.require_pi("toggling-frame phases")?;
        let mut out = Vec::with_capacity(self.len());
        let mut prefix = 0.0;
        for (idx, phi) in self.phases().into_iter().enumerate() {
            let sign = if idx % 2 == 0 { 1.0 } else { -1.0 };
            out.push(wrap_angle(sign * phi + prefix));
            prefix += sign * 2.0 * phi;
        }
        Ok(out)
    }

    /// Toggling-frame phases for off-resonance errors: `φ''_j = φ'_j ± π/2`,
    /// plus for odd `j`, minus for even `j`.
    pub fn toggling_phases_ore(&self) -> Result<Vec<f64>> {
        Ok(self
            .toggling_phases_pse()?
            .into_iter()
            .enumerate()
            .map(|(idx, p)| wrap_angle(if idx % 2 == 0 { p + FRAC_PI_2 } else { p - FRAC_PI_2 }))
            .collect())
    }

    pub fn classify_symmetry(&self) -> SymmetryClass {
        let n = self.len();
        let mirrored = |j: usize| &self.pulses[n - 1 - j];
        let thetas_mirror = (0..n).all(|j| (self.pulses[j].theta - mirrored(j).theta).abs() <= PI_TOL);
        let symmetric = thetas_mirror
            && (0..n).all(|j| angles_equal(self.pulses[j].phi, mirrored(j).phi, PHASE_TOL));
        let antisymmetric = thetas_mirror
            && (0..n).all(|j| angles_equal(self.pulses[j].phi, -mirrored(j).phi, PHASE_TOL));
        let phi_sum_zero = self.net_phase().ok().map(|p| angles_equal(p, 0.0, PHASE_TOL));
        SymmetryClass {
            symmetric,
            antisymmetric,
            phi_sum_zero,
        }
    }

    /// Error-free propagator; the last-executed pulse ends up leftmost.
    pub fn ideal_propagator(&self) -> Gate {
        self.pulses
            .iter()
            .fold(Gate::IDENTITY, |acc, p| p.ideal_gate() * acc)
    }

    pub fn transform(&self, which: Transform) -> Result<PulseSequence> {
        let pulses: Vec<Pulse> = match which {
            Transform::ReverseOrder => self.pulses.iter().rev().copied().collect(),
            Transform::NegatePhases => self
                .pulses
                .iter()
                .map(|p| Pulse { theta: p.theta, phi: wrap_angle(-p.phi) })
                .collect(),
            Transform::PhaseOffset(c) => {
                if !c.is_finite() {
                    return Err(Error::InvalidArgument(format!("non-finite phase offset {c}")));
                }
                self.pulses
                    .iter()
                    .map(|p| Pulse { theta: p.theta, phi: wrap_angle(p.phi + c) })
                    .collect()
            }
            Transform::CyclicShift(k) => {
                self.require_pi("cyclic shift")?;
                let k = k % self.len();
                self.pulses[k..]
                    .iter()
                    .copied()
                    .chain(self.pulses[..k].iter().map(|p| Pulse::pi(-p.phi)))
                    .collect()
            }
        };
        let mut meta = self.meta.clone();
        let history = match meta.get("transform") {
            Some(prev) => format!("{prev}; {which}"),
            None => which.to_string(),
        };
        meta.insert("transform".into(), history);
        Ok(PulseSequence {
            name: self.name.clone(),
            pulses,
            meta,
        })
    }

    pub fn to_file_format(&self) -> SequenceFile {
        SequenceFile {
            name: self.name.clone(),
            pulses: self
                .pulses
                .iter()
                .map(|p| PulseRecord {
                    theta_deg: p.theta.to_degrees(),
                    phi_deg: p.phi.to_degrees(),
                })
                .collect(),
            meta: self.meta.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file_format()).expect("sequence serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SequenceFile = serde_json::from_str(text)?;
        file.into_sequence()
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json();
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

fn alternating_sum(phases: &[f64]) -> f64 {
    phases
        .iter()
        .enumerate()
        .map(|(idx, p)| if idx % 2 == 0 { *p } else { -*p })
        .sum()
}

/// On-disk representation; angles in degrees, pulses in execution order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceFile {
    pub name: String,
    pub pulses: Vec<PulseRecord>,
    #[serde(default)]
    pub meta: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseRecord {
    pub theta_deg: f64,
    pub phi_deg: f64,
}

impl SequenceFile {
    pub fn into_sequence(self) -> Result<PulseSequence> {
        let pulses = self
            .pulses
            .iter()
            .map(|r| {
                // snap exact π so that files written in degrees stay π sequences
                let theta = r.theta_deg.to_radians();
                let theta = if (r.theta_deg - 180.0).abs() < 1e-9 { PI } else { theta };
                Pulse::new(theta, r.phi_deg.to_radians())
            })
            .collect::<Result<Vec<_>>>()?;
        let mut seq = PulseSequence::new(self.name, pulses)?;
        seq.meta = self.meta;
        Ok(seq)
    }
}
