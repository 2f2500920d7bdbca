//! Command-line front end. `run` is the whole program; the binary only
//! forwards process arguments and the exit code.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{build_composites, build_h, build_h_tilde, build_ladder, eigen_residual, fermi_of_t, Hamiltonian, TruncatedOperator};
use crate::report::{fmt_f64, RunManifest};
use crate::spectrum::{find_zeros, ZeroRecord, MAX_SCAN_HEIGHT};
use crate::states::{gram_with, norm_integral, norm_series_oracle, paper_norm_closed_form, psi_tilde, psi_with_tol, StateParams, GRAM_TOL};
use crate::verify::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "zeta-lab", version, about = "Numerical laboratory for the Mellin-type eigenfunctions and their zero spectrum")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorName {
    H,
    Htilde,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixName {
    /// Number operator N
    N,
    /// Raising ladder N+
    NPlus,
    /// Lowering ladder N-
    NMinus,
    /// Position x
    X,
    /// Derivative D
    D,
    /// T = N - x/4
    T,
    /// f(T) by spectral calculus
    FermiT,
    H,
    Htilde,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an invariant suite; JSON lines, then a manifest line.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        /// Multiplies every tolerance.
        #[arg(long, default_value_t = 1.0, value_parser = parse_positive)]
        tol_scale: f64,
    },
    /// Zeros on the critical line up to --tau-max.
    ///
    /// CSV columns: index,tau,rho_re,rho_im,residual,bracket_lo,bracket_hi
    Zeros {
        #[arg(long, default_value_t = 30.0)]
        tau_max: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Ψ(s, x) (or Ψ̃ with --tilde) on a grid.
    ///
    /// CSV columns: x,re,im,abs,abs_err
    Eigenfunction {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        /// start:stop:count
        #[arg(long, default_value = "0:10:101", value_parser = parse_grid)]
        x_grid: Grid,
        #[arg(long)]
        tilde: bool,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Pairing matrix ⟨Φ_ρj|Ψ_ρk⟩ over the first zeros.
    ///
    /// CSV columns: row,col,re,im,abs_err
    Gram {
        #[arg(long, default_value_t = 2)]
        num_zeros: usize,
        /// Relative tolerance per entry.
        #[arg(long, default_value_t = GRAM_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Norm integral against both closed forms.
    NormCheck {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        c: Complex64,
    },
    /// Coefficient-space eigen-residual of a truncated Hamiltonian.
    ///
    /// CSV columns: n,residual
    Residual {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long = "K", default_value_t = 64)]
        k: usize,
        #[arg(long, value_enum, default_value_t = OperatorName::Htilde)]
        operator: OperatorName,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Entries of a truncated operator.
    ///
    /// CSV columns: row,col,re,im
    OperatorDump {
        #[arg(long, value_enum)]
        name: MatrixName,
        #[arg(long = "K", default_value_t = 8)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Human-readable PASS/FAIL listing of one module suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(value_parser = parse_suite)]
    pub module: Suite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        match self.count {
            1 => vec![self.start],
            n => (0..n)
                .map(|j| self.start + (self.stop - self.start) * j as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_positive(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("expected a positive number, got '{s}'")),
    }
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`; `i` alone means unit imaginary.
pub fn parse_complex(text: &str) -> std::result::Result<Complex64, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse '{text}' as a complex number");
    let real = |p: &str| p.parse::<f64>().map_err(|_| bad());
    let imag = |p: &str| match p {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        p => p.parse::<f64>().map_err(|_| bad()),
    };
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(real(&t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(real(&body[..k])?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

fn parse_grid(text: &str) -> std::result::Result<Grid, String> {
    let bad = || format!("expected start:stop:count, got '{text}'");
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, n] = parts.as_slice() else { return Err(bad()) };
    let start = a.parse::<f64>().map_err(|_| bad())?;
    let stop = b.parse::<f64>().map_err(|_| bad())?;
    let count = n.parse::<usize>().map_err(|_| bad())?;
    if count == 0 || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    Ok(Grid { start, stop, count })
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

fn write_error(out: &mut dyn Write, e: &Error) -> std::io::Result<()> {
    let body = serde_json::json!({ "error": ErrorBody { kind: e.kind(), message: e.to_string() } });
    writeln!(out, "{body}")
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let command_line: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(cli.command, command_line, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = write_error(out, &e);
            EXIT_FAILURE
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Numerical(format!("write failed: {e}"))
}

fn execute(command: Command, command_line: Vec<String>, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Verify { suite, tol_scale } => cmd_verify(suite, tol_scale, command_line, out),
        Command::Zeros { tau_max, tol, format } => cmd_zeros(tau_max, tol, format, out),
        Command::Eigenfunction { s, x_grid, tilde, tol, format } => cmd_eigenfunction(s, x_grid, tilde, tol, format, out),
        Command::Gram { num_zeros, tol, format } => cmd_gram(num_zeros, tol, format, out),
        Command::NormCheck { c } => cmd_norm_check(c, out),
        Command::Residual { s, k, operator, format } => cmd_residual(s, k, operator, format, out),
        Command::OperatorDump { name, k, format } => cmd_operator_dump(name, k, format, out),
        Command::Selftest(args) => cmd_selftest(args.module, out),
    }
}

pub fn cmd_verify(suite: Suite, tol_scale: f64, command_line: Vec<String>, out: &mut dyn Write) -> Result<i32> {
    let mut manifest = RunManifest::new(command_line, tol_scale);
    for module in suite.expand() {
        let start = Instant::now();
        let reports = module.run(tol_scale);
        for r in &reports {
            writeln!(out, "{}", r.to_json_line()).map_err(io)?;
        }
        manifest.record(module.name(), start.elapsed().as_secs_f64(), &reports);
    }
    writeln!(out, "{}", manifest.to_json_line()).map_err(io)?;
    Ok(if manifest.total_fail == 0 { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_selftest(module: Suite, out: &mut dyn Write) -> Result<i32> {
    let mut failed = 0;
    for suite in module.expand() {
        for r in suite.run(1.0) {
            failed += usize::from(!r.pass);
            let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(
                out,
                "{} [{}] {} {} abs_err={} tol={}",
                if r.pass { "PASS" } else { "FAIL" },
                suite.name(),
                r.name,
                inputs.join(" "),
                fmt_f64(r.abs_err),
                fmt_f64(r.tol)
            )
            .map_err(io)?;
        }
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_zeros(tau_max: f64, tol: f64, format: Format, out: &mut dyn Write) -> Result<i32> {
    let zeros = find_zeros(tau_max, tol)?;
    match format {
        Format::Json => {
            for z in &zeros {
                writeln!(out, "{}", serde_json::to_string(z).expect("zero records serialize")).map_err(io)?;
            }
        }
        Format::Csv => {
            writeln!(out, "index,tau,rho_re,rho_im,residual,bracket_lo,bracket_hi").map_err(io)?;
            for z in &zeros {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    z.index,
                    fmt_f64(z.tau),
                    fmt_f64(z.rho.re),
                    fmt_f64(z.rho.im),
                    fmt_f64(z.residual),
                    fmt_f64(z.bracket.0),
                    fmt_f64(z.bracket.1)
                )
                .map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SamplePoint {
    x: f64,
    #[serde(with = "crate::serde_complex")]
    value: Complex64,
    abs_err: f64,
}

fn cmd_eigenfunction(s: Complex64, grid: Grid, tilde: bool, tol: f64, format: Format, out: &mut dyn Write) -> Result<i32> {
    let p = StateParams::new(s)?;
    let mut samples = Vec::with_capacity(grid.count);
    for x in grid.points() {
        let r = if tilde { psi_tilde(&p, x)? } else { psi_with_tol(&p, x, tol)? };
        samples.push(SamplePoint { x, value: r.value, abs_err: r.abs_err });
    }
    match format {
        Format::Json => {
            for sp in &samples {
                writeln!(out, "{}", serde_json::to_string(sp).expect("samples serialize")).map_err(io)?;
            }
        }
        Format::Csv => {
            writeln!(out, "x,re,im,abs,abs_err").map_err(io)?;
            for sp in &samples {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    fmt_f64(sp.x),
                    fmt_f64(sp.value.re),
                    fmt_f64(sp.value.im),
                    fmt_f64(sp.value.norm()),
                    fmt_f64(sp.abs_err)
                )
                .map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// The first `n` zeros, scanning up to the supported height.
pub fn first_zeros(n: usize) -> Result<Vec<ZeroRecord>> {
    let zeros = find_zeros(MAX_SCAN_HEIGHT, 1e-12)?;
    if zeros.len() < n {
        return Err(Error::Invalid(format!(
            "{n} zeros requested but only {} lie below height {MAX_SCAN_HEIGHT}",
            zeros.len()
        )));
    }
    Ok(zeros.into_iter().take(n).collect())
}

fn cmd_gram(n: usize, tol: f64, format: Format, out: &mut dyn Write) -> Result<i32> {
    if n == 0 {
        return Err(Error::Invalid("--num-zeros must be at least 1".into()));
    }
    let params: Vec<StateParams> = first_zeros(n)?.iter().map(|z| StateParams::new(z.rho)).collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(n);
    for row in &params {
        let entries: Vec<_> = params.iter().map(|col| gram_with(row, col, tol)).collect::<Result<_>>()?;
        rows.push(entries);
    }
    match format {
        Format::Json => {
            writeln!(out, "{}", serde_json::json!({ "gram": rows })).map_err(io)?;
        }
        Format::Csv => {
            writeln!(out, "row,col,re,im,abs_err").map_err(io)?;
            for (i, row) in rows.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    writeln!(out, "{},{},{},{},{}", i + 1, j + 1, fmt_f64(e.value.re), fmt_f64(e.value.im), fmt_f64(e.abs_err)).map_err(io)?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_norm_check(c: Complex64, out: &mut dyn Write) -> Result<i32> {
    let integral = norm_integral(c)?;
    let line = serde_json::json!({
        "c": crate::serde_complex::to_value(c),
        "norm_integral": crate::serde_complex::to_value(integral.value),
        "abs_err": integral.abs_err,
        "series_at_c_minus_1": crate::serde_complex::to_value(norm_series_oracle(c - 1.0)?),
        "closed_form": crate::serde_complex::to_value(paper_norm_closed_form(c)?),
        "series_at_c_plus_1": crate::serde_complex::to_value(norm_series_oracle(c + 1.0)?),
    });
    writeln!(out, "{line}").map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_residual(s: Complex64, k: usize, operator: OperatorName, format: Format, out: &mut dyn Write) -> Result<i32> {
    let which = match operator {
        OperatorName::H => Hamiltonian::H,
        OperatorName::Htilde => Hamiltonian::HTilde,
    };
    let profile = eigen_residual(&StateParams::new(s)?, k, which)?;
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&profile).expect("profiles serialize")).map_err(io)?,
        Format::Csv => {
            writeln!(out, "n,residual").map_err(io)?;
            for (n, r) in profile.per_component.iter().enumerate() {
                writeln!(out, "{n},{}", fmt_f64(*r)).map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn named_operator(name: MatrixName, k: usize) -> Result<TruncatedOperator> {
    Ok(match name {
        MatrixName::N => build_ladder(k)?.0,
        MatrixName::NPlus => build_ladder(k)?.1,
        MatrixName::NMinus => build_ladder(k)?.2,
        MatrixName::X => build_composites(k)?.0,
        MatrixName::D => build_composites(k)?.1,
        MatrixName::T => build_composites(k)?.2,
        MatrixName::FermiT => fermi_of_t(&build_composites(k)?.2)?,
        MatrixName::H => build_h(k)?,
        MatrixName::Htilde => build_h_tilde(k)?,
    })
}

fn cmd_operator_dump(name: MatrixName, k: usize, format: Format, out: &mut dyn Write) -> Result<i32> {
    let op = named_operator(name, k)?;
    let dim = op.dim();
    match format {
        Format::Json => {
            let rows: Vec<Vec<serde_json::Value>> = (0..dim)
                .map(|i| (0..dim).map(|j| crate::serde_complex::to_value(op.entries[(i, j)])).collect())
                .collect();
            let body = serde_json::json!({
                "K": dim,
                "band": format!("{:?}", op.band),
                "basis": op.basis_convention(),
                "entries": rows,
            });
            writeln!(out, "{body}").map_err(io)?;
        }
        Format::Csv => {
            writeln!(out, "row,col,re,im").map_err(io)?;
            for i in 0..dim {
                for j in 0..dim {
                    let z = op.entries[(i, j)];
                    writeln!(out, "{i},{j},{},{}", fmt_f64(z.re), fmt_f64(z.im)).map_err(io)?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}
