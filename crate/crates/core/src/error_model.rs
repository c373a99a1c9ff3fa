//! Errored propagators for pulse-strength and off-resonance errors.
//!
//! The joint model is `exp[−i(1+ε)θ(σ_φ + f σz)/2]`: the strength error scales
//! the whole generator, offset term included. On either axis it reduces to
//! the single-error model.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::sequence::{Pulse, PulseSequence};
use crate::su2::{pulse_gate, Gate};

/// Name of the joint-error convention, recorded in exported metadata.
pub const JOINT_MODEL: &str = "strength-scales-full-generator";

/// Fractional pulse-strength error `epsilon` and off-resonance fraction `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorPoint {
    pub epsilon: f64,
    pub f: f64,
}

impl ErrorPoint {
    pub const ZERO: ErrorPoint = ErrorPoint { epsilon: 0.0, f: 0.0 };

    pub fn new(epsilon: f64, f: f64) -> Result<Self> {
        if !epsilon.is_finite() || !f.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "error point must be finite (epsilon={epsilon}, f={f})"
            )));
        }
        Ok(ErrorPoint { epsilon, f })
    }

    pub fn strength(epsilon: f64) -> Self {
        ErrorPoint { epsilon, f: 0.0 }
    }

    pub fn offset(f: f64) -> Self {
        ErrorPoint { epsilon: 0.0, f }
    }
}

/// Closed-form errored rotation: angle `(1+ε)θ√(1+f²)` about the unit axis
/// `(cosφ, sinφ, f)/√(1+f²)`.
pub fn errored_gate(p: &Pulse, e: ErrorPoint) -> Gate {
    let r = 1.0f64.hypot(e.f);
    let (s, c) = p.phi().sin_cos();
    Gate::rotation((1.0 + e.epsilon) * p.theta() * r, [c / r, s / r, e.f / r])
}

/// Errored propagator of a whole sequence; later pulses multiply on the left.
pub fn sequence_propagator(seq: &PulseSequence, e: ErrorPoint) -> Gate {
    seq.pulses()
        .iter()
        .fold(Gate::IDENTITY, |acc, p| errored_gate(p, e) * acc)
}

fn require_pi(p: &Pulse) -> Result<()> {
    if p.is_pi() {
        Ok(())
    } else {
        Err(Error::UnsupportedSequence(format!(
            "off-resonance factorisation needs a π pulse, got θ={}",
            p.theta()
        )))
    }
}

/// First-order split of an off-resonance π pulse: `(π_φ, λ_{φ+π/2})` with
/// `λ = 2f`, whose product matches the exact pulse up to `O(f²)`.
pub fn first_order_ore_factor(p: &Pulse, f: f64) -> Result<(Gate, Gate)> {
    require_pi(p)?;
    let ideal = pulse_gate(PI, p.phi())?;
    let lambda = pulse_gate(2.0 * f, p.phi() + FRAC_PI_2)?;
    Ok((ideal, lambda))
}

/// Second-order refinement `(π_φ, λ_{φ+π/2}, μ_φ)` with `μ = πf²/2`; the
/// product leaves an `O(f³)` residual.
pub fn second_order_ore_factor(p: &Pulse, f: f64) -> Result<(Gate, Gate, Gate)> {
    let (ideal, lambda) = first_order_ore_factor(p, f)?;
    let mu = pulse_gate(PI * f * f / 2.0, p.phi())?;
    Ok((ideal, lambda, mu))
}
