//! Named composite NOT pulses and the parameterised families they come from.
//!
//! Phase generators return radians in execution order. Each family ships one
//! sign branch; the mirror branch is `Transform::NegatePhases` of it.

use std::f64::consts::{FRAC_PI_3, PI};
use std::sync::OnceLock;

use crate::design::{optimize_asbo9, Asbo9Target};
use crate::error::{Error, Result};
use crate::sequence::{wrap_angle, Pulse, PulseSequence, SequenceFile};

/// `arccos(−1/4)`, the Wimperis angle.
pub fn psi() -> f64 {
    (-0.25f64).acos()
}

/// Minimum leading infidelity orders a catalog entry must certify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClaimedOrders {
    pub epsilon: u32,
    pub f: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub sequence: PulseSequence,
    pub provenance: &'static str,
    pub claimed: ClaimedOrders,
}

/// Names accepted by [`make`] without parameters, in catalog order.
pub const FIXED_NAMES: &[&str] = &[
    "single-pi",
    "scrofulous3-pse",
    "scrofulous3-pse-pi",
    "ore3",
    "f1",
    "bb1-pi-core",
    "bb1-symmetric",
    "sym5-pse",
    "ore5-antisym",
    "s1",
    "knill",
    "tycko5-pse-opt",
    "tycko5-ore-opt",
    "tycko5-balanced",
    "rhombus7-opt",
    "sym7-pse-opt",
    "sym7-ore-opt",
    "asbo9-7a",
    "asbo9-7b",
    "asbo9-b1",
    "asbo9-omega",
    "sym9",
    "alway-jones9",
    "corpse",
];

/// Names that require parameters (radians), with their arity.
pub const PARAMETRIC_NAMES: &[(&str, usize)] = &[
    ("scrofulous3", 2),
    ("tycko5", 1),
    ("sym5", 1),
    ("rhombus7", 2),
    ("sym7-plus", 1),
    ("sym7-minus", 1),
    ("asbo9", 1),
    ("sym9-family", 1),
];

// ---- phase generators -------------------------------------------------

/// Three-pulse pulse-strength corrector: `(Φ−s, Φ−2s, Φ−s)` with `s = ±2π/3`.
pub fn scrofulous3_phases(sign: f64, net_phase: f64) -> [f64; 3] {
    let s = sign * 2.0 * PI / 3.0;
    [net_phase - s, net_phase - 2.0 * s, net_phase - s]
}

/// Five-pulse family with simultaneous first-order tolerance.
pub fn tycko5_phases(alpha: f64) -> [f64; 5] {
    [
        PI + 2.0 * alpha,
        alpha,
        -FRAC_PI_3,
        -5.0 * FRAC_PI_3 - alpha,
        -7.0 * FRAC_PI_3 - 2.0 * alpha,
    ]
}

/// `arccos[−(1+2cosα)/2]`, defined for `cos α ≤ 1/2`.
fn closure_angle(alpha: f64) -> Result<f64> {
    let arg = -(1.0 + 2.0 * alpha.cos()) / 2.0;
    if arg < -1.0 - 1e-12 {
        return Err(Error::ParameterDomain(format!(
            "alpha = {:.4}° outside [60°, 300°] (mod 360°)",
            alpha.to_degrees()
        )));
    }
    Ok(arg.clamp(-1.0, 1.0).acos())
}

/// Symmetric five-pulse sequence `(α, β, 2β−2α, β, α)` with first-order
/// pulse-strength closure; `branch` picks `β = 2α ± arccos[…]`.
pub fn sym5_phases(alpha: f64, branch: f64) -> Result<[f64; 5]> {
    let beta = 2.0 * alpha + branch.signum() * closure_angle(alpha)?;
    Ok([alpha, beta, 2.0 * beta - 2.0 * alpha, beta, alpha])
}

/// Seven-pulse family whose odd toggling vectors form a rhombus.
pub fn rhombus7_phases(alpha: f64, beta: f64) -> [f64; 7] {
    [
        alpha,
        2.0 * beta,
        beta,
        -2.0 * FRAC_PI_3,
        -FRAC_PI_3 - alpha + 2.0 * beta,
        -2.0 * FRAC_PI_3 - 2.0 * alpha + 4.0 * beta,
        -PI - 2.0 * alpha + 3.0 * beta,
    ]
}

/// Symmetric seven-pulse family, `φ'_3 = φ'_1 + π` branch.
pub fn sym7_plus_phases(alpha: f64) -> [f64; 7] {
    let a = alpha;
    [
        a,
        2.0 * FRAC_PI_3 + 2.0 * a,
        7.0 * FRAC_PI_3 + 3.0 * a,
        10.0 * FRAC_PI_3 + 4.0 * a,
        7.0 * FRAC_PI_3 + 3.0 * a,
        2.0 * FRAC_PI_3 + 2.0 * a,
        a,
    ]
}

/// Symmetric seven-pulse family, `φ'_3 = φ'_1 − π` branch.
pub fn sym7_minus_phases(alpha: f64) -> [f64; 7] {
    let a = alpha;
    [
        a,
        2.0 * FRAC_PI_3 + 2.0 * a,
        FRAC_PI_3 + a,
        -2.0 * FRAC_PI_3,
        FRAC_PI_3 + a,
        2.0 * FRAC_PI_3 + 2.0 * a,
        a,
    ]
}

/// Antisymmetric nine-pulse family (ASBO-9).
pub fn asbo9_phases(alpha: f64) -> [f64; 9] {
    let p = psi();
    let half = [4.0 * alpha + p, 3.0 * alpha + 2.0 * p, 2.0 * alpha + p, alpha + PI];
    [
        half[0], half[1], half[2], half[3], 0.0, -half[3], -half[2], -half[1], -half[0],
    ]
}

/// Symmetric nine-pulse family `(α, β, β, β−π, 2β−2α, β−π, β, β, α)` with
/// `β = 2α + arccos[−(1+2cosα)/2]`.
pub fn sym9_phases(alpha: f64) -> Result<[f64; 9]> {
    let beta = 2.0 * alpha + closure_angle(alpha)?;
    Ok([
        alpha,
        beta,
        beta,
        beta - PI,
        2.0 * beta - 2.0 * alpha,
        beta - PI,
        beta,
        beta,
        alpha,
    ])
}

// ---- closed-form parameters ---------------------------------------------

pub fn sym5_pse_alpha() -> f64 {
    2.0 * (5.0f64 / 32.0).powf(0.25).asin()
}

pub fn tycko5_pse_alpha() -> f64 {
    ((3.0 - 13f64.sqrt()) / 8.0).acos()
}

pub fn tycko5_ore_alpha() -> f64 {
    ((-3.0 - 13f64.sqrt()) / 8.0).acos()
}

pub fn rhombus7_alpha() -> f64 {
    -(-0.5 * ((4.0 + 13f64.sqrt()) / 2.0).sqrt()).acos()
}

pub fn sym7_pse_alpha() -> f64 {
    -((3.0 - 61f64.sqrt()) / 16.0).acos()
}

pub fn sym7_ore_alpha() -> f64 {
    ((61f64.sqrt() - 3.0) / 16.0).acos()
}

pub fn sym9_alpha() -> f64 {
    -((4.0 - 10f64.sqrt()) / 4.0).acos()
}

// ---- construction -----------------------------------------------------

fn alpha_meta(seq: PulseSequence, alpha: f64) -> PulseSequence {
    seq.with_meta("alpha_deg", format!("{:.6}", wrap_angle(alpha).to_degrees()))
}

fn pi_entry(
    name: &str,
    family: &str,
    phases: &[f64],
    provenance: &'static str,
    claimed: (u32, u32),
) -> Result<CatalogEntry> {
    let sequence = PulseSequence::from_pi_phases(name, phases)?.with_meta("family", family);
    Ok(CatalogEntry {
        sequence,
        provenance,
        claimed: ClaimedOrders {
            epsilon: claimed.0,
            f: claimed.1,
        },
    })
}

fn expect_params(name: &str, params: &[f64], arity: usize) -> Result<()> {
    if params.len() != arity {
        return Err(Error::ParameterDomain(format!(
            "`{name}` takes {arity} parameter(s), got {}",
            params.len()
        )));
    }
    if let Some(bad) = params.iter().find(|p| !p.is_finite()) {
        return Err(Error::ParameterDomain(format!("`{name}` parameter {bad} is not finite")));
    }
    Ok(())
}

fn asbo9_entry(name: &str, alpha: f64, variant: &str) -> Result<CatalogEntry> {
    let mut e = pi_entry(
        name,
        "asbo9",
        &asbo9_phases(alpha),
        "ASBO-9 antisymmetric nine-pulse family (Odedra et al.)",
        (6, 6),
    )?;
    e.sequence = alpha_meta(e.sequence, alpha).with_meta("variant", variant);
    Ok(e)
}

fn asbo9_refined(target: Asbo9Target) -> Result<f64> {
    static PSE: OnceLock<std::result::Result<f64, String>> = OnceLock::new();
    static ORE: OnceLock<std::result::Result<f64, String>> = OnceLock::new();
    let cell = match target {
        Asbo9Target::Pse => &PSE,
        Asbo9Target::Ore => &ORE,
        Asbo9Target::BalancedA => return Ok(psi()),
        Asbo9Target::BalancedB => return Ok(-psi()),
    };
    cell.get_or_init(|| {
        optimize_asbo9(target)
            .map(|s| s.parameters[0])
            .map_err(|e| e.to_string())
    })
    .clone()
    .map_err(Error::RootNotFound)
}

/// Build a named sequence. Parameters are radians; fixed names take none.
pub fn make(name: &str, params: &[f64]) -> Result<CatalogEntry> {
    let p = psi();
    let fixed = || expect_params(name, params, 0);
    match name {
        "single-pi" => {
            fixed()?;
            pi_entry(name, "single", &[0.0], "uncorrected π pulse", (2, 2))
        }
        "scrofulous3-pse" => {
            fixed()?;
            pi_entry(
                name,
                "scrofulous3",
                &scrofulous3_phases(1.0, 0.0),
                "three-pulse pulse-strength corrector (SCROFULOUS type)",
                (4, 2),
            )
        }
        "scrofulous3-pse-pi" => {
            fixed()?;
            pi_entry(
                name,
                "scrofulous3",
                &scrofulous3_phases(1.0, PI),
                "three-pulse pulse-strength corrector with net phase π",
                (4, 2),
            )
        }
        "scrofulous3" => {
            expect_params(name, params, 2)?;
            let (sign, net) = (params[0], params[1]);
            if (sign.abs() - 1.0).abs() > 1e-12 {
                return Err(Error::ParameterDomain(format!("sign must be ±1, got {sign}")));
            }
            if !(crate::sequence::angles_equal(net, 0.0, 1e-12) || crate::sequence::angles_equal(net, PI, 1e-12)) {
                return Err(Error::ParameterDomain(format!("net phase must be 0 or π, got {net}")));
            }
            pi_entry(
                name,
                "scrofulous3",
                &scrofulous3_phases(sign, net),
                "three-pulse pulse-strength corrector (SCROFULOUS type)",
                (4, 2),
            )
        }
        "ore3" => {
            fixed()?;
            pi_entry(
                name,
                "ore3",
                &[FRAC_PI_3, 2.0 * FRAC_PI_3, FRAC_PI_3],
                "three-pulse off-resonance corrector",
                (2, 4),
            )
        }
        "f1" => {
            fixed()?;
            pi_entry(
                name,
                "f1",
                &[3.0 * p, p, 0.0, -p, -3.0 * p],
                "Wimperis F1, antisymmetric five-pulse pulse-strength corrector",
                (6, 2),
            )
        }
        "bb1-pi-core" => {
            fixed()?;
            pi_entry(
                name,
                "bb1",
                &[0.0, p, 3.0 * p, 3.0 * p, p],
                "BB1 reordering of F1 as five π pulses",
                (6, 2),
            )
        }
        "bb1-symmetric" => {
            fixed()?;
            let pulses = vec![
                Pulse::new(PI / 2.0, 0.0)?,
                Pulse::pi(p),
                Pulse::new(2.0 * PI, 3.0 * p)?,
                Pulse::pi(p),
                Pulse::new(PI / 2.0, 0.0)?,
            ];
            Ok(CatalogEntry {
                sequence: PulseSequence::new(name, pulses)?.with_meta("family", "bb1"),
                provenance: "time-symmetric BB1 with the π_0 pulse split in half",
                claimed: ClaimedOrders { epsilon: 6, f: 2 },
            })
        }
        "sym5-pse" => {
            fixed()?;
            let alpha = sym5_pse_alpha();
            let mut e = pi_entry(
                name,
                "sym5",
                &sym5_phases(alpha, -1.0)?,
                "symmetric five-pulse pulse-strength corrector",
                (6, 2),
            )?;
            e.sequence = alpha_meta(e.sequence, alpha);
            Ok(e)
        }
        "sym5" => {
            expect_params(name, params, 1)?;
            let mut e = pi_entry(
                name,
                "sym5",
                &sym5_phases(params[0], -1.0)?,
                "symmetric five-pulse family with first-order closure",
                (4, 2),
            )?;
            e.sequence = alpha_meta(e.sequence, params[0]);
            Ok(e)
        }
        "ore5-antisym" => {
            fixed()?;
            let (a, b) = ((11.0f64 / 16.0).acos(), 0.25f64.acos());
            pi_entry(
                name,
                "ore5",
                &[a, b, 0.0, -b, -a],
                "antisymmetric five-pulse off-resonance corrector",
                (2, 4),
            )
        }
        "tycko5" => {
            expect_params(name, params, 1)?;
            tycko5_entry(name, params[0], (4, 4))
        }
        "s1" => {
            fixed()?;
            let phases = tycko5_phases(-PI).map(|x| x + PI);
            let mut e = pi_entry(name, "tycko5", &phases, "S1 inversion pulse (Tycko family)", (4, 4))?;
            e.sequence = alpha_meta(e.sequence, -PI).with_meta("phase_offset_deg", "180");
            Ok(e)
        }
        "knill" => {
            fixed()?;
            tycko5_entry(name, -5.0 * PI / 6.0, (4, 4))
        }
        "tycko5-pse-opt" => {
            fixed()?;
            tycko5_entry(name, tycko5_pse_alpha(), (6, 4))
        }
        "tycko5-ore-opt" => {
            fixed()?;
            tycko5_entry(name, tycko5_ore_alpha(), (4, 6))
        }
        "tycko5-balanced" => {
            fixed()?;
            tycko5_entry(name, 2.0 * PI / 3.0, (4, 4))
        }
        "rhombus7" => {
            expect_params(name, params, 2)?;
            let mut e = pi_entry(
                name,
                "rhombus7",
                &rhombus7_phases(params[0], params[1]),
                "seven-pulse simultaneous corrector, rhombus family",
                (4, 4),
            )?;
            e.sequence = alpha_meta(e.sequence, params[0])
                .with_meta("beta_deg", format!("{:.6}", wrap_angle(params[1]).to_degrees()));
            Ok(e)
        }
        "rhombus7-opt" => {
            fixed()?;
            let alpha = rhombus7_alpha();
            let mut e = pi_entry(
                name,
                "rhombus7",
                &rhombus7_phases(alpha, alpha - 2.0 * PI / 3.0),
                "seven-pulse corrector with second-order suppression of both errors",
                (6, 6),
            )?;
            e.sequence = alpha_meta(e.sequence, alpha)
                .with_meta("mirror", "negate-phases gives the decreasing-triangle variant");
            Ok(e)
        }
        "sym7-plus" | "sym7-minus" => {
            expect_params(name, params, 1)?;
            let phases = if name == "sym7-plus" {
                sym7_plus_phases(params[0])
            } else {
                sym7_minus_phases(params[0])
            };
            let mut e = pi_entry(name, name, &phases, "symmetric seven-pulse simultaneous corrector", (4, 4))?;
            e.sequence = alpha_meta(e.sequence, params[0]);
            Ok(e)
        }
        "sym7-pse-opt" => {
            fixed()?;
            let alpha = sym7_pse_alpha();
            let mut e = pi_entry(
                name,
                "sym7-plus",
                &sym7_plus_phases(alpha),
                "symmetric seven-pulse pulse, second-order pulse-strength suppression",
                (6, 4),
            )?;
            e.sequence = alpha_meta(e.sequence, alpha);
            Ok(e)
        }
        "sym7-ore-opt" => {
            fixed()?;
            let alpha = sym7_ore_alpha();
            let mut e = pi_entry(
                name,
                "sym7-plus",
                &sym7_plus_phases(alpha),
                "symmetric seven-pulse pulse, second-order off-resonance suppression",
                (4, 6),
            )?;
            e.sequence = alpha_meta(e.sequence, alpha);
            Ok(e)
        }
        "asbo9" => {
            expect_params(name, params, 1)?;
            asbo9_entry(name, params[0], "custom")
        }
        "asbo9-7a" => {
            fixed()?;
            asbo9_entry(name, p, "7A")
        }
        "asbo9-7b" => {
            fixed()?;
            asbo9_entry(name, -p, "7B")
        }
        "asbo9-b1" => {
            fixed()?;
            asbo9_entry(name, asbo9_refined(Asbo9Target::Pse)?, "B1")
        }
        "asbo9-omega" => {
            fixed()?;
            asbo9_entry(name, asbo9_refined(Asbo9Target::Ore)?, "Omega")
        }
        "sym9" | "sym9-family" => {
            let alpha = if name == "sym9" {
                fixed()?;
                sym9_alpha()
            } else {
                expect_params(name, params, 1)?;
                params[0]
            };
            let claimed = if name == "sym9" { (6, 6) } else { (4, 4) };
            let mut e = pi_entry(
                name,
                "sym9",
                &sym9_phases(alpha)?,
                "symmetric nine-pulse simultaneous corrector",
                claimed,
            )?;
            e.sequence = alpha_meta(e.sequence, alpha);
            Ok(e)
        }
        "alway-jones9" => {
            fixed()?;
            pi_entry(
                name,
                "alway-jones9",
                &[0.0, p, 3.0 * p, 3.0 * p, p, PI - p, -p, PI + p, p],
                "Alway-Jones nine-pulse sequence",
                (6, 4),
            )
        }
        "corpse" => {
            fixed()?;
            let pulses = vec![
                Pulse::new(FRAC_PI_3, 0.0)?,
                Pulse::new(5.0 * FRAC_PI_3, PI)?,
                Pulse::new(7.0 * FRAC_PI_3, 0.0)?,
            ];
            Ok(CatalogEntry {
                sequence: PulseSequence::new(name, pulses)?.with_meta("family", "corpse"),
                provenance: "CORPSE off-resonance corrector for a π rotation (Cummins & Jones)",
                claimed: ClaimedOrders { epsilon: 2, f: 4 },
            })
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

fn tycko5_entry(name: &str, alpha: f64, claimed: (u32, u32)) -> Result<CatalogEntry> {
    let mut e = pi_entry(
        name,
        "tycko5",
        &tycko5_phases(alpha),
        "five-pulse simultaneous corrector (Tycko family)",
        claimed,
    )?;
    e.sequence = alpha_meta(e.sequence, alpha);
    Ok(e)
}

/// Every parameter-free entry.
pub fn catalog() -> Vec<CatalogEntry> {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG
        .get_or_init(|| {
            FIXED_NAMES
                .iter()
                .map(|n| make(n, &[]).unwrap_or_else(|e| panic!("catalog entry {n}: {e}")))
                .collect()
        })
        .clone()
}

/// Catalog as a JSON array of sequence files, each carrying its claimed
/// orders in `meta`.
pub fn export_catalog() -> String {
    let files: Vec<SequenceFile> = catalog()
        .into_iter()
        .map(|e| {
            e.sequence
                .with_meta("claimed_epsilon_order", e.claimed.epsilon.to_string())
                .with_meta("claimed_f_order", e.claimed.f.to_string())
                .with_meta("provenance", e.provenance)
                .to_file_format()
        })
        .collect();
    serde_json::to_string_pretty(&files).expect("catalog serialises")
}

pub fn import_catalog(text: &str) -> Result<Vec<PulseSequence>> {
    let files: Vec<SequenceFile> = serde_json::from_str(text)?;
    files.into_iter().map(SequenceFile::into_sequence).collect()
}
