//! `cpulse` command-line front end. Degrees at the surface, radians inside.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{certify, fidelity_grid, infidelity_series, AxisRange, Axis};
use crate::design::{
    optimize_asbo9, optimize_family5, optimize_rhombus7, optimize_sym7, optimize_sym9, solve_generic,
    solve_simultaneous5, solve_sym5, solve_triangle3, Asbo9Target, DesignProblem, Family5Target,
    Solution, Sym7Target, SymmetryConstraint, Target,
};
use crate::error::{Error, Result};
use crate::families::{catalog, make};
use crate::sequence::PulseSequence;

#[derive(Debug, Parser)]
#[command(name = "cpulse", about = "Composite NOT pulses: scans, certification and design", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanFormat {
    Csv,
    Gnuplot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    Epsilon,
    F,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Catalog names, pulse counts and claimed orders.
    List,
    /// Phases, symmetry, net phase and toggling phases of one sequence.
    Show {
        sequence: String,
        /// Phases in degrees (the default).
        #[arg(long, conflicts_with = "rad")]
        deg: bool,
        /// Phases in radians.
        #[arg(long)]
        rad: bool,
    },
    /// Fidelity grid over (ε, f).
    Scan {
        sequence: String,
        #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
        emin: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        emax: f64,
        #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
        fmin: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        fmax: f64,
        #[arg(long, default_value_t = 201)]
        ne: usize,
        #[arg(long, default_value_t = 201)]
        nf: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = ScanFormat::Csv)]
        format: ScanFormat,
        /// Extra contours at infidelity 10^-k for k = 1..=contours.
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u32).range(0..=6))]
        contours: u32,
    },
    /// Certification report.
    Certify { sequence: String },
    /// Leading infidelity order and coefficient on one axis.
    Coeffs {
        sequence: String,
        #[arg(long, value_enum)]
        axis: AxisArg,
    },
    /// Run a phase solver and write the resulting sequence.
    Design {
        /// triangle3, sym5, simultaneous5, family5, rhombus7, sym7, sym9, asbo9, generic
        problem: String,
        /// Solver target: pse, ore, balanced, balanced-a, balanced-b; for
        /// generic a comma list of pse-1, pse-2, ore-1, ore-2.
        #[arg(long)]
        target: Option<String>,
        /// Family parameter α in degrees (simultaneous5).
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        /// Toggling step sign for triangle3.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        sign: i32,
        /// Net phase in degrees for triangle3 (0 or 180).
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        /// Pulse count for generic.
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Symmetry for generic: none, symmetric, antisymmetric.
        #[arg(long, default_value = "none")]
        symmetry: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failures split by exit code.
enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::UnknownName(_) | Error::ParameterDomain(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Run(other),
        }
    }
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn std::io::Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Run(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

/// Catalog name or path to a sequence file.
fn resolve(selector: &str) -> std::result::Result<PulseSequence, Failure> {
    match make(selector, &[]) {
        Ok(entry) => Ok(entry.sequence),
        Err(Error::UnknownName(_)) => {
            let path = Path::new(selector);
            if path.exists() {
                PulseSequence::read(path).map_err(Failure::Run)
            } else {
                Err(Failure::Usage(format!("`{selector}` is neither a catalog name nor a file")))
            }
        }
        Err(e) => Err(e.into()),
    }
}

fn join(values: &[f64], digits: usize) -> String {
    values.iter().map(|v| format!("{v:.digits$}")).collect::<Vec<_>>().join(" ")
}

fn deg_list(values: &[f64]) -> Vec<f64> {
    values.iter().map(|v| crate::sequence::wrap_angle(*v).to_degrees()).collect()
}

fn execute(command: Command) -> std::result::Result<String, Failure> {
    let mut out = String::new();
    match command {
        Command::List => {
            let _ = writeln!(out, "{:<20} {:>6}  {:>9}  {:>5}", "name", "pulses", "eps_order", "f_order");
            for e in catalog() {
                let _ = writeln!(
                    out,
                    "{:<20} {:>6}  {:>9}  {:>5}",
                    e.sequence.name,
                    e.sequence.len(),
                    e.claimed.epsilon,
                    e.claimed.f
                );
            }
        }
        Command::Show { sequence, rad, .. } => {
            let seq = resolve(&sequence)?;
            let show = |v: &[f64]| {
                if rad {
                    join(&v.iter().map(|p| crate::sequence::wrap_angle(*p)).collect::<Vec<_>>(), 6)
                } else {
                    join(&deg_list(v), 1)
                }
            };
            let _ = writeln!(out, "name: {}", seq.name);
            let _ = writeln!(out, "phases: {}", show(&seq.phases()));
            let thetas: Vec<f64> = seq.pulses().iter().map(|p| p.theta()).collect();
            if !seq.all_pi() {
                let _ = writeln!(out, "angles: {}", show(&thetas));
            }
            let _ = writeln!(out, "symmetry: {}", seq.classify_symmetry().kind());
            match seq.net_phase() {
                Ok(p) => {
                    let _ = writeln!(out, "net_phase: {}", show(&[p]));
                }
                Err(_) => out.push_str("net_phase: undefined\n"),
            }
            if let (Ok(pse), Ok(ore)) = (seq.toggling_phases_pse(), seq.toggling_phases_ore()) {
                let _ = writeln!(out, "toggling_pse: {}", show(&pse));
                let _ = writeln!(out, "toggling_ore: {}", show(&ore));
            }
        }
        Command::Scan {
            sequence,
            emin,
            emax,
            fmin,
            fmax,
            ne,
            nf,
            out: path,
            format,
            contours,
        } => {
            let seq = resolve(&sequence)?;
            let grid = fidelity_grid(&seq, AxisRange::new(emin, emax, ne)?, AxisRange::new(fmin, fmax, nf)?);
            let csv_path = match format {
                ScanFormat::Csv => path.clone(),
                ScanFormat::Gnuplot => path.with_extension("csv"),
            };
            write_file(&csv_path, &grid.to_csv())?;
            if format == ScanFormat::Gnuplot {
                let script = gnuplot_script(&seq.name, &csv_path, ne, contours);
                write_file(&path, &script)?;
            }
            let _ = writeln!(out, "wrote {} ({} x {} points)", csv_path.display(), ne, nf);
            if format == ScanFormat::Gnuplot {
                let _ = writeln!(out, "wrote {}", path.display());
            }
        }
        Command::Certify { sequence } => {
            let seq = resolve(&sequence)?;
            out.push_str(&certify(&seq).map_err(Failure::Run)?.render());
        }
        Command::Coeffs { sequence, axis } => {
            let seq = resolve(&sequence)?;
            let axis = match axis {
                AxisArg::Epsilon => Axis::Epsilon,
                AxisArg::F => Axis::F,
            };
            let r = infidelity_series(&seq, axis).map_err(Failure::Run)?;
            let _ = writeln!(out, "{r}");
        }
        Command::Design {
            problem,
            target,
            alpha,
            sign,
            phi,
            n,
            symmetry,
            out: path,
        } => {
            let s = design(&problem, target.as_deref(), alpha, sign, phi, n, &symmetry)?;
            let _ = writeln!(out, "name: {}", s.name);
            let _ = writeln!(out, "phases_deg: {}", join(&deg_list(&s.phases), 4));
            if !s.parameters.is_empty() {
                let _ = writeln!(out, "parameters_deg: {}", join(&deg_list(&s.parameters), 6));
            }
            for (t, r) in &s.residuals {
                let _ = writeln!(out, "residual {t}: {r:.3e}");
            }
            if let Some(v) = s.objective {
                let _ = writeln!(out, "objective: {v:.6e}");
            }
            if let Some(p) = path {
                s.to_sequence().and_then(|seq| seq.write(&p)).map_err(Failure::Run)?;
                let _ = writeln!(out, "wrote {}", p.display());
            }
        }
    }
    Ok(out)
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    let mut f = std::fs::File::create(path).map_err(|e| Failure::Run(e.into()))?;
    f.write_all(text.as_bytes()).map_err(|e| Failure::Run(e.into()))
}

fn design(
    problem: &str,
    target: Option<&str>,
    alpha: Option<f64>,
    sign: i32,
    phi: f64,
    n: usize,
    symmetry: &str,
) -> Result<Solution> {
    let bad_target = |t: &str| Error::InvalidArgument(format!("target `{t}` not valid for `{problem}`"));
    match problem {
        "triangle3" => {
            if sign != 1 && sign != -1 {
                return Err(Error::InvalidArgument(format!("--sign must be 1 or -1, got {sign}")));
            }
            if phi != 0.0 && phi != 180.0 {
                return Err(Error::InvalidArgument(format!("--phi must be 0 or 180, got {phi}")));
            }
            solve_triangle3(sign as f64, phi.to_radians())
        }
        "sym5" => solve_sym5(),
        "simultaneous5" => {
            let a = alpha.ok_or_else(|| Error::InvalidArgument("simultaneous5 needs --alpha".into()))?;
            if !a.is_finite() {
                return Err(Error::InvalidArgument("--alpha must be finite".into()));
            }
            solve_simultaneous5(a.to_radians())
        }
        "family5" => optimize_family5(match target.unwrap_or("pse") {
            "pse" => Family5Target::Pse,
            "ore" => Family5Target::Ore,
            "balanced" => Family5Target::Balanced,
            t => return Err(bad_target(t)),
        }),
        "rhombus7" => optimize_rhombus7(),
        "sym7" => optimize_sym7(match target.unwrap_or("pse") {
            "pse" => Sym7Target::Pse,
            "ore" => Sym7Target::Ore,
            t => return Err(bad_target(t)),
        }),
        "sym9" => optimize_sym9(),
        "asbo9" => optimize_asbo9(match target.unwrap_or("pse") {
            "pse" => Asbo9Target::Pse,
            "ore" => Asbo9Target::Ore,
            "balanced-a" => Asbo9Target::BalancedA,
            "balanced-b" => Asbo9Target::BalancedB,
            t => return Err(bad_target(t)),
        }),
        "generic" => {
            let symmetry = match symmetry {
                "none" => SymmetryConstraint::None,
                "symmetric" => SymmetryConstraint::Symmetric,
                "antisymmetric" => SymmetryConstraint::Antisymmetric,
                s => return Err(Error::InvalidArgument(format!("unknown symmetry `{s}`"))),
            };
            let targets = target
                .unwrap_or("pse-1")
                .split(',')
                .map(|t| t.trim().parse::<Target>())
                .collect::<Result<Vec<_>>>()?;
            solve_generic(&DesignProblem::new(n, symmetry, targets)?, 64)
        }
        other => Err(Error::InvalidArgument(format!("unknown design problem `{other}`"))),
    }
}

/// Contour plot script reading the CSV by its file name.
pub fn gnuplot_script(title: &str, csv: &Path, ne: usize, contours: u32) -> String {
    let csv_name = csv.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let mut levels = vec!["0.9".to_string(), "0.99".to_string(), "0.999".to_string()];
    for k in 1..=contours {
        let level = format!("{:.*}", k as usize, 1.0 - 10f64.powi(-(k as i32)));
        if !levels.contains(&level) {
            levels.push(level);
        }
    }
    let mut s = String::new();
    let _ = writeln!(s, "# fidelity contours for {title}");
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set xlabel 'epsilon'");
    let _ = writeln!(s, "set ylabel 'f'");
    let _ = writeln!(s, "set title '{title}'");
    let _ = writeln!(s, "set view map");
    let _ = writeln!(s, "unset surface");
    let _ = writeln!(s, "set contour base");
    let _ = writeln!(s, "set cntrparam levels discrete {}", levels.join(", "));
    let _ = writeln!(s, "set dgrid3d {ne},{ne} splines");
    let _ = writeln!(s, "unset key");
    let _ = writeln!(s, "splot '{csv_name}' every ::1 using 1:2:3 with lines");
    s
}
