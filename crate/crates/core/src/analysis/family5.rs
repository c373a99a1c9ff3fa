//! Closed-form fourth-order coefficients of the five-pulse family with
//! simultaneous first-order tolerance.
//!
//! Conventions: `I_ε ≈ (1/8)(πε/2)⁴·F_ε` and `I_f ≈ (1/8)f⁴·F_f`.

use std::f64::consts::PI;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Scale turning `F_ε` into the `ε⁴` infidelity coefficient.
pub fn epsilon_prefactor() -> f64 {
    (PI / 2.0).powi(4) / 8.0
}

/// Scale turning `F_f` into the `f⁴` infidelity coefficient.
pub const F_PREFACTOR: f64 = 1.0 / 8.0;

/// `F = 11 ∓ 12cosα + 4cos2α + 4√3(sin2α ∓ sinα)`: returns `(F_ε, F_f)` with the
/// upper (minus) signs for `F_ε`.
pub fn fourth_order_coefficients_family5(alpha: f64) -> (f64, f64) {
    let (s1, c1) = alpha.sin_cos();
    let (s2, c2) = (2.0 * alpha).sin_cos();
    let common = 11.0 + 4.0 * c2 + 4.0 * SQRT3 * s2;
    let odd = 12.0 * c1 + 4.0 * SQRT3 * s1;
    (common - odd, common + odd)
}

/// Derivatives `(dF_ε/dα, dF_f/dα)`.
pub fn fourth_order_coefficients_family5_derivative(alpha: f64) -> (f64, f64) {
    let (s1, c1) = alpha.sin_cos();
    let (s2, c2) = (2.0 * alpha).sin_cos();
    let common = -8.0 * s2 + 8.0 * SQRT3 * c2;
    let odd = -12.0 * s1 + 4.0 * SQRT3 * c1;
    (common - odd, common + odd)
}
