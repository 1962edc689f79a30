//! Command-line driver for the sampling/interpolation family computations:
//! parameter sweeps, CSV/JSON report emission, and numeric self-checks.
//!
//! Exit codes: 0 when every requested check passes, 1 when a numeric check
//! fails (the report is still written), 2 for usage or configuration errors.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use fockmz::fock::{tail_energy_bound, tail_energy_exact};
use fockmz::gabor::gabor_fock_crosscheck;
use fockmz::pointsets::{lattice_points_in_disk, truncation_radius, Mode};
use fockmz::specfun::{regularized_gamma, truncated_exp_ratio};
use fockmz::spectral::{interp_report, mz_report, square_case_scan};
use fockmz::{
    CoefficientVector, CrosscheckReport, Error, FamilySpec, FrameReport, InterpReport, LatticeSpec,
    TFPoint,
};

#[derive(Parser)]
#[command(
    name = "fockmz",
    version,
    about = "Sampling and interpolation families for weighted polynomials: reports and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the regularized incomplete gamma pair at (a, x) and, for
    /// integer a, cross-check against the truncated-exponential route.
    GammaCheck {
        /// Shape parameter; must be positive.
        #[arg(long)]
        a: f64,
        /// Evaluation point; must be nonnegative.
        #[arg(long)]
        x: f64,
        /// Relative tolerance for the dual-route agreement.
        #[arg(long, default_value_t = 1e-11)]
        tol: f64,
    },
    /// Construct and validate a family description; write its JSON.
    FamilyBuild {
        /// Family mode.
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Lattice spacing; defaults to 0.95 (sampling) or 1.1 (interpolation).
        #[arg(long)]
        alpha: Option<f64>,
        /// Truncation margin; defaults to 6 (sampling) or 2 (interpolation).
        #[arg(long)]
        tau: Option<f64>,
        /// Comma-separated polynomial degrees.
        #[arg(long, value_delimiter = ',', default_value = "25,50,100,200")]
        degrees: Vec<usize>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sharp frame bounds per degree for a sampling family file.
    MzReport {
        /// Path to a family JSON written by family-build.
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Permit writing a report with no rows.
        #[arg(long)]
        allow_empty: bool,
    },
    /// Gram-matrix extremes per degree for an interpolation family file.
    InterpReport {
        /// Path to a family JSON written by family-build.
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Permit writing a report with no rows.
        #[arg(long)]
        allow_empty: bool,
    },
    /// Compare quadrature and closed-form time-frequency frame matrices on a
    /// sampling layer.
    GaborCrosscheck {
        /// Hermite subspace degree.
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Lattice spacing of the sampling layer.
        #[arg(long, default_value_t = 0.95)]
        alpha: f64,
        /// Truncation margin of the sampling layer.
        #[arg(long, default_value_t = 6.0)]
        tau: f64,
        /// Largest acceptable entrywise / eigenvalue gap.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the exact tail-energy inequality on random coefficient vectors.
    TailEnergy {
        /// Polynomial degree.
        #[arg(long, default_value_t = 30)]
        n: usize,
        /// Truncation disk radius.
        #[arg(long, default_value_t = 3.8)]
        rho: f64,
        /// Number of random coefficient vectors.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Additive slack applied to the bound before comparison.
        #[arg(long, default_value_t = 1e-12)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Permit writing a report with no rows.
        #[arg(long)]
        allow_empty: bool,
    },
    /// Frame-bound decay of critical (n+1)-point truncations of a lattice.
    DegenerateScan {
        /// Lattice spacing.
        #[arg(long, default_value_t = 0.95)]
        alpha: f64,
        /// Comma-separated polynomial degrees.
        #[arg(long, value_delimiter = ',', default_value = "25,50,100,200")]
        degrees: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Permit writing a report with no rows.
        #[arg(long)]
        allow_empty: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Sampling,
    Interpolation,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Sampling => Mode::Sampling,
            ModeArg::Interpolation => Mode::Interpolation,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => err.exit(), // usage errors exit 2, --help/--version exit 0
    };
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::GammaCheck { a, x, tol } => gamma_check(a, x, tol),
        Command::FamilyBuild {
            mode,
            alpha,
            tau,
            degrees,
            out,
        } => family_build(mode, alpha, tau, degrees, out.as_deref()),
        Command::MzReport {
            family,
            format,
            out,
            allow_empty,
        } => frame_report_cmd(&family, format, out.as_deref(), allow_empty),
        Command::InterpReport {
            family,
            format,
            out,
            allow_empty,
        } => interp_report_cmd(&family, format, out.as_deref(), allow_empty),
        Command::GaborCrosscheck {
            n,
            alpha,
            tau,
            tol,
            format,
            out,
        } => gabor_crosscheck_cmd(n, alpha, tau, tol, format, out.as_deref()),
        Command::TailEnergy {
            n,
            rho,
            count,
            epsilon,
            format,
            out,
            allow_empty,
        } => tail_energy_cmd(n, rho, count, epsilon, format, out.as_deref(), allow_empty),
        Command::DegenerateScan {
            alpha,
            degrees,
            format,
            out,
            allow_empty,
        } => degenerate_scan_cmd(alpha, &degrees, format, out.as_deref(), allow_empty),
    }
}

fn fail_config(msg: impl Display) -> i32 {
    eprintln!("error: {msg}");
    2
}

fn fail_numeric(msg: impl Display) -> i32 {
    eprintln!("check failed: {msg}");
    1
}

/// Maps library errors onto exit codes: domain problems are configuration
/// errors (2), convergence problems are numeric failures (1).
fn fail_lib(err: Error) -> i32 {
    match err {
        Error::Domain(_) => fail_config(err),
        Error::Convergence(_) => fail_numeric(err),
    }
}

// ---------------------------------------------------------------------------
// Report rendering

/// A report row that knows its CSV shape; JSON comes from `Serialize`.
trait Row: Serialize {
    const HEADER: &'static str;
    fn line(&self) -> String;
}

impl Row for FrameReport {
    const HEADER: &'static str = "n,count,A,B,cond";
    fn line(&self) -> String {
        format!("{},{},{},{},{}", self.n, self.count, self.a, self.b, self.cond)
    }
}

impl Row for InterpReport {
    const HEADER: &'static str = "n,count,lmin,lmax";
    fn line(&self) -> String {
        format!(
            "{},{},{},{}",
            self.n, self.count, self.lambda_min, self.lambda_max
        )
    }
}

impl Row for CrosscheckReport {
    const HEADER: &'static str = "n,count,max_entry_gap,eig_gap,lambda_min,lambda_max";
    fn line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n, self.count, self.max_entry_gap, self.eig_gap, self.lambda_min, self.lambda_max
        )
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
struct TailRow {
    index: usize,
    exact: f64,
    cap: f64,
}

impl Row for TailRow {
    const HEADER: &'static str = "index,exact,cap";
    fn line(&self) -> String {
        format!("{},{},{}", self.index, self.exact, self.cap)
    }
}

/// Renders rows with the library version and the resolved configuration
/// attached, then writes to `out` or stdout. Numbers use shortest
/// round-trip decimal rendering in both formats.
fn emit<R: Row>(
    rows: &[R],
    format: Format,
    out: Option<&Path>,
    config: &serde_json::Value,
    allow_empty: bool,
) -> Result<(), i32> {
    if rows.is_empty() && !allow_empty {
        return Err(fail_config(
            "report has no rows; pass --allow-empty to write one anyway",
        ));
    }
    let text = match format {
        Format::Csv => {
            let mut s = format!(
                "# fockmz {}\n# config: {}\n{}\n",
                fockmz::VERSION,
                config,
                R::HEADER
            );
            for row in rows {
                s.push_str(&row.line());
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let doc = json!({
                "library_version": fockmz::VERSION,
                "config": config,
                "rows": rows,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    write_text(out, &text)
}

fn write_text(out: Option<&Path>, text: &str) -> Result<(), i32> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| fail_config(format_args!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommands

fn gamma_check(a: f64, x: f64, tol: f64) -> i32 {
    let g = match regularized_gamma(a, x) {
        Ok(g) => g,
        Err(e) => return fail_config(e),
    };
    println!("q = {}", g.q);
    if a.fract() == 0.0 && (1.0..=1e6).contains(&a) {
        let n = a as usize - 1;
        let other = truncated_exp_ratio(n, Complex::new(x, 0.0)).modulus();
        let gap = (other - g.q).abs();
        if gap > tol * g.q.max(1e-300) {
            return fail_numeric(format_args!(
                "gamma routes disagree at a = {a}, x = {x}: {} ({}) vs {other} (truncated-exp)",
                g.q, g.method
            ));
        }
    }
    0
}

fn resolve_family(
    mode: ModeArg,
    alpha: Option<f64>,
    tau: Option<f64>,
    degrees: Vec<usize>,
) -> FamilySpec {
    let (alpha_default, tau_default) = match mode {
        ModeArg::Sampling => (0.95, 6.0),
        ModeArg::Interpolation => (1.1, 2.0),
    };
    FamilySpec::new(
        LatticeSpec::square(alpha.unwrap_or(alpha_default)),
        mode.into(),
        tau.unwrap_or(tau_default),
        degrees,
    )
}

fn family_build(
    mode: ModeArg,
    alpha: Option<f64>,
    tau: Option<f64>,
    degrees: Vec<usize>,
    out: Option<&Path>,
) -> i32 {
    let spec = resolve_family(mode, alpha, tau, degrees);
    if let Err(e) = spec.validate() {
        return fail_config(e);
    }
    let mut text = serde_json::to_string_pretty(&spec).expect("family specs serialize");
    text.push('\n');
    match write_text(out, &text) {
        Ok(()) => 0,
        Err(code) => code,
    }
}

fn load_family(path: &Path) -> Result<FamilySpec, i32> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail_config(format_args!("cannot read {}: {e}", path.display())))?;
    let spec: FamilySpec = serde_json::from_str(&text)
        .map_err(|e| fail_config(format_args!("{} is not a family spec: {e}", path.display())))?;
    spec.validate().map_err(fail_config)?;
    Ok(spec)
}

fn family_config(spec: &FamilySpec, path: &Path) -> serde_json::Value {
    json!({
        "family": path.display().to_string(),
        "alpha": spec.lattice.alpha,
        "mode": spec.mode,
        "tau": spec.tau,
        "degrees": spec.degrees,
    })
}

fn frame_report_cmd(family: &Path, format: Format, out: Option<&Path>, allow_empty: bool) -> i32 {
    let spec = match load_family(family) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let rows = match mz_report(&spec) {
        Ok(r) => r,
        Err(e) => return fail_lib(e),
    };
    if let Err(code) = emit(&rows, format, out, &family_config(&spec, family), allow_empty) {
        return code;
    }
    for row in &rows {
        if !(row.a > 0.0 && row.b.is_finite()) {
            return fail_numeric(format_args!(
                "frame lower bound is not positive at degree {}: A = {}",
                row.n, row.a
            ));
        }
    }
    0
}

fn interp_report_cmd(family: &Path, format: Format, out: Option<&Path>, allow_empty: bool) -> i32 {
    let spec = match load_family(family) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let rows = match interp_report(&spec) {
        Ok(r) => r,
        Err(e) => return fail_lib(e),
    };
    if let Err(code) = emit(&rows, format, out, &family_config(&spec, family), allow_empty) {
        return code;
    }
    for row in &rows {
        if !(row.lambda_min > 0.0) {
            return fail_numeric(format_args!(
                "Gram matrix is not uniformly invertible at degree {}: lambda_min = {}",
                row.n, row.lambda_min
            ));
        }
    }
    0
}

fn gabor_crosscheck_cmd(
    n: usize,
    alpha: f64,
    tau: f64,
    tol: f64,
    format: Format,
    out: Option<&Path>,
) -> i32 {
    let rho = match truncation_radius(n, tau, Mode::Sampling) {
        Ok(r) => r,
        Err(e) => return fail_config(e),
    };
    let layer = match lattice_points_in_disk(&LatticeSpec::square(alpha), rho) {
        Ok(l) => l,
        Err(e) => return fail_config(e),
    };
    let tf: Vec<TFPoint> = layer
        .points()
        .iter()
        .map(|p| TFPoint::new(p.re, p.im))
        .collect();
    let report = match gabor_fock_crosscheck(n, &tf) {
        Ok(r) => r,
        Err(e) => return fail_lib(e),
    };
    let config = json!({"n": n, "alpha": alpha, "tau": tau, "tol": tol});
    if let Err(code) = emit(&[report], format, out, &config, false) {
        return code;
    }
    if report.max_entry_gap > tol || report.eig_gap > tol {
        return fail_numeric(format_args!(
            "quadrature and closed-form matrices disagree: entry gap {}, eigenvalue gap {}",
            report.max_entry_gap, report.eig_gap
        ));
    }
    0
}

fn tail_energy_cmd(
    n: usize,
    rho: f64,
    count: usize,
    epsilon: f64,
    format: Format,
    out: Option<&Path>,
    allow_empty: bool,
) -> i32 {
    if !(rho.is_finite() && rho > 0.0) {
        return fail_config(format_args!("--rho must be positive and finite, got {rho}"));
    }
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return fail_config(format_args!(
            "--epsilon must be nonnegative and finite, got {epsilon}"
        ));
    }
    let bound = tail_energy_bound(n, rho);
    let mut rng = ChaCha8Rng::seed_from_u64(0xF0C5);
    let rows: Vec<TailRow> = (0..count)
        .map(|index| {
            let coeffs: Vec<Complex<f64>> = (0..=n)
                .map(|_| Complex::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
                .collect();
            let v = CoefficientVector::new(coeffs);
            TailRow {
                index,
                exact: tail_energy_exact(&v, rho),
                cap: bound * v.norm_sq() + epsilon,
            }
        })
        .collect();
    let config = json!({"n": n, "rho": rho, "count": count, "epsilon": epsilon});
    if let Err(code) = emit(&rows, format, out, &config, allow_empty) {
        return code;
    }
    for row in &rows {
        if row.exact > row.cap {
            return fail_numeric(format_args!(
                "tail energy {} exceeds its cap {} on vector {}",
                row.exact, row.cap, row.index
            ));
        }
    }
    0
}

fn degenerate_scan_cmd(
    alpha: f64,
    degrees: &[usize],
    format: Format,
    out: Option<&Path>,
    allow_empty: bool,
) -> i32 {
    let rows = match square_case_scan(&LatticeSpec::square(alpha), degrees) {
        Ok(r) => r,
        Err(e) => return fail_lib(e),
    };
    let config = json!({"alpha": alpha, "degrees": degrees});
    match emit(&rows, format, out, &config, allow_empty) {
        Ok(()) => 0,
        Err(code) => code,
    }
}
