//! Exact arithmetic on 2×2 unitary propagators.
//!
//! Every gate produced here is a plain value; products follow the propagator
//! convention where the later operation stands on the left.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2×2 complex unitary, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate {
    m: [[Complex64; 2]; 2],
}

impl Gate {
    pub const IDENTITY: Gate = Gate {
        m: [[ONE, ZERO], [ZERO, ONE]],
    };

    pub fn from_entries(m: [[Complex64; 2]; 2]) -> Self {
        Gate { m }
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    /// Rotation `exp(-i·angle·(n·σ)/2)` about a unit axis `n`.
    ///
    /// The axis is used as given; callers normalise it.
    pub fn rotation(angle: f64, axis: [f64; 3]) -> Self {
        let (s, c) = (angle / 2.0).sin_cos();
        let [nx, ny, nz] = axis;
        Gate {
            m: [
                [Complex64::new(c, -s * nz), Complex64::new(-s * ny, -s * nx)],
                [Complex64::new(s * ny, -s * nx), Complex64::new(c, s * nz)],
            ],
        }
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Gate {
            m: [
                [m[0][0].conj(), m[1][0].conj()],
                [m[0][1].conj(), m[1][1].conj()],
            ],
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.m;
        for row in out.iter_mut() {
            for z in row.iter_mut() {
                *z *= c;
            }
        }
        Gate { m: out }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_norm_diff(&self, other: &Gate) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.m[r][c] - other.m[r][c]).norm());
            }
        }
        worst
    }

    /// Max-norm distance of `G†G` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_norm_diff(&Gate::IDENTITY)
    }

    /// The same operator rescaled by a global phase so the determinant is 1.
    fn special(&self) -> Gate {
        let phase = self.det().arg() / 2.0;
        self.scale(Complex64::from_polar(1.0, -phase))
    }
}

impl Mul for Gate {
    type Output = Gate;

    fn mul(self, rhs: Gate) -> Gate {
        let (a, b) = (&self.m, &rhs.m);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, z) in row.iter_mut().enumerate() {
                *z = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Gate { m: out }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.m;
        write!(
            f,
            "[[{:.6}, {:.6}], [{:.6}, {:.6}]]",
            m[0][0], m[0][1], m[1][0], m[1][1]
        )
    }
}

/// Canonical rotation angle and axis of a gate, modulo global phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle {
    /// Rotation angle in `[0, π]`, a subset of `[0, 2π)`.
    pub theta: f64,
    pub axis: [f64; 3],
}

impl AxisAngle {
    pub fn to_gate(&self) -> Gate {
        Gate::rotation(self.theta, self.axis)
    }

    /// Azimuth of the axis in the xy-plane.
    pub fn azimuth(&self) -> f64 {
        self.axis[1].atan2(self.axis[0])
    }
}

fn check_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be finite, got {value}")))
    }
}

/// In-plane rotation `cos(θ/2)·I − i·sin(θ/2)·(cosφ·σx + sinφ·σy)`.
pub fn pulse_gate(theta: f64, phi: f64) -> Result<Gate> {
    check_finite("theta", theta)?;
    check_finite("phi", phi)?;
    let (sp, cp) = phi.sin_cos();
    Ok(Gate::rotation(theta, [cp, sp, 0.0]))
}

/// Rotation by `alpha` about the z axis: `diag(e^{-iα/2}, e^{iα/2})`.
pub fn z_gate(alpha: f64) -> Result<Gate> {
    check_finite("alpha", alpha)?;
    Ok(Gate::rotation(alpha, [0.0, 0.0, 1.0]))
}

/// Product `later · earlier`.
pub fn compose(later: Gate, earlier: Gate) -> Gate {
    later * earlier
}

/// Propagator fidelity `|tr(U†V)| / 2`, clamped to `[0, 1]`.
pub fn fidelity(target: &Gate, actual: &Gate) -> f64 {
    let overlap = (target.adjoint() * *actual).trace().norm() / 2.0;
    overlap.clamp(0.0, 1.0)
}

/// `1 − fidelity`, evaluated without cancellation.
///
/// With `W = U†V` rescaled into SU(2) as `c·I − i·s·(n·σ)`, the infidelity is
/// `1 − |c| = s² / (1 + |c|)`. The vector part `s` is read off the small
/// off-diagonal and imaginary entries, so tiny infidelities keep their
/// relative precision instead of drowning in `1 − 0.999…`.
pub fn infidelity(target: &Gate, actual: &Gate) -> f64 {
    let w = (target.adjoint() * *actual).special();
    let m = &w.m;
    let c = ((m[0][0] + m[1][1]).re / 2.0).abs().min(1.0);
    let sz = (m[1][1].im - m[0][0].im) / 2.0;
    let s2 = (m[0][1].norm_sqr() + m[1][0].norm_sqr()) / 2.0 + sz * sz;
    (s2 / (1.0 + c)).clamp(0.0, 1.0)
}

/// Rotation angle and axis with `θ ∈ [0, π]`.
///
/// A gate and its negative are the same rotation up to global phase, and
/// `(θ, n)` equals `(2π − θ, −n)` up to sign, so the angle is folded into
/// `[0, π]`. At `θ = π` the axis sign is fixed so that its first nonzero
/// component is positive. The identity maps to `θ = 0` about `(0, 0, 1)`.
pub fn axis_angle(g: &Gate) -> AxisAngle {
    let u = g.special();
    let m = &u.m;
    let mut c = (m[0][0] + m[1][1]).re / 2.0;
    let mut v = [
        -(m[0][1].im + m[1][0].im) / 2.0,
        (m[1][0].re - m[0][1].re) / 2.0,
        (m[1][1].im - m[0][0].im) / 2.0,
    ];
    if c < 0.0 {
        c = -c;
        v.iter_mut().for_each(|x| *x = -*x);
    }
    let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if s < 1e-15 {
        return AxisAngle {
            theta: 0.0,
            axis: [0.0, 0.0, 1.0],
        };
    }
    let mut axis = v.map(|x| x / s);
    if c < 1e-12 {
        if let Some(first) = axis.iter().copied().find(|x| x.abs() > 1e-12) {
            if first < 0.0 {
                axis.iter_mut().for_each(|x| *x = -*x);
            }
        }
    }
    AxisAngle {
        theta: 2.0 * s.atan2(c),
        axis,
    }
}

/// True iff some unit-modulus `c` brings `c·b` within `tol` of `a` in max-norm.
///
/// The phase is taken from the largest-magnitude entry of `a`.
pub fn equal_up_to_global_phase(a: &Gate, b: &Gate, tol: f64) -> bool {
    let mut best = (0, 0);
    let mut best_norm = -1.0;
    for r in 0..2 {
        for c in 0..2 {
            let n = a.m[r][c].norm();
            if n > best_norm {
                best_norm = n;
                best = (r, c);
            }
        }
    }
    let (r, c) = best;
    let denom = b.m[r][c];
    if denom.norm() < 1e-300 {
        return false;
    }
    let ratio = a.m[r][c] / denom;
    let phase = ratio / ratio.norm();
    a.max_norm_diff(&b.scale(phase)) <= tol
}
