//! `anharmonic` — energies of the quartic anharmonic oscillator from the
//! exact-arithmetic perturbation scheme, convergence scans, reproduction of
//! the published reference tables, and wavefunction grids.
//!
//! Exit codes: 0 success, 1 usage, 2 no positive root, 3 wavefunction tail
//! not decayed, 4 verification failure, 5 internal numerical failure.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anharmonic::decimal::{format_fixed, format_sci, format_sig};
use anharmonic::reference::{reproduce_table_with, ReferenceDataset, TABLE_IDS};
use anharmonic::rootfind::RefinedRoot;
use anharmonic::spectrum::{scan, SelectedRoot, DEFAULT_DIGITS};
use anharmonic::wavefn::{WavefunctionModel, DEFAULT_POINTS};
use anharmonic::{energy, ConvergenceScan, EnergyEstimate, Error, OscillatorProblem};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "anharmonic",
    version,
    about = "Quartic anharmonic oscillator energies by exact perturbation theory"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy E_n(g, N) of one level at one perturbation order.
    Energy {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Perturbation order N (>= 1).
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Energies over a window of orders, with oscillation amplitudes.
    Scan {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Recompute the embedded reference tables and compare cell by cell.
    Verify {
        /// Table number 1-6, or `all`.
        #[arg(long, default_value = "all")]
        table: TableChoice,
        /// Also compare the exact columns against matrix diagonalisation.
        #[arg(long, value_enum, default_value_t = Switch::Off)]
        oracle: Switch,
    },
    /// Normalised wavefunction on a grid, as CSV `x,chi,phi,psi`.
    Wavefunction {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        order: usize,
        /// Grid half-width; defaults to 10/sqrt(a*).
        #[arg(long)]
        xmax: Option<f64>,
        /// Number of grid points (odd).
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, clap::Args)]
struct ProblemArgs {
    /// Quantum number n (>= 0).
    #[arg(long)]
    n: u32,
    /// Coupling g (>= 0) as an exact decimal, e.g. 0.001.
    #[arg(long)]
    g: String,
}

#[derive(Debug, clap::Args)]
struct OutputArgs {
    /// Significant digits shown for energies.
    #[arg(long, default_value_t = 6)]
    digits: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

impl OutputArgs {
    /// Refinement precision: comfortably beyond the displayed digits.
    fn refine_digits(&self) -> u32 {
        DEFAULT_DIGITS.max(self.digits as u32 + 6)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TableChoice {
    One(u8),
    All,
}

impl std::str::FromStr for TableChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Self::All),
            _ => match s.parse::<u8>() {
                Ok(id) if TABLE_IDS.contains(&id) => Ok(Self::One(id)),
                _ => Err(format!("expected 1-6 or `all`, got {s:?}")),
            },
        }
    }
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoPositiveRoot { .. } => 2,
            Error::TailNotDecayed { .. } => 3,
            Error::InvalidProblem(_) | Error::Decimal(_) | Error::UnknownTable(_) => 1,
            _ => 5,
        };
        let mut message = e.to_string();
        if let Error::TailNotDecayed { .. } = e {
            message.push_str(
                "; try a larger --xmax, or an odd --order (even orders leave a growing exponent)",
            );
        }
        Self { code, message }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self {
            code: 5,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Energy {
            problem,
            order,
            output,
        } => {
            let p = OscillatorProblem::parse(problem.n, &problem.g, order)?;
            let est = energy(&p, output.refine_digits())?;
            let text = match output.format {
                Format::Human => render_energy_human(&est, output.digits),
                Format::Json => json_line(&EnergyRecord::new(&est, &problem.g, output.digits)),
                Format::Csv => {
                    let mut s = String::from(EnergyRecord::CSV_HEADER);
                    s.push('\n');
                    s.push_str(&EnergyRecord::new(&est, &problem.g, output.digits).csv_row());
                    s
                }
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Scan {
            problem,
            from,
            to,
            output,
        } => {
            let p = OscillatorProblem::parse(problem.n, &problem.g, from.max(1))?;
            let s = scan(p.n, p.g, from, to, output.refine_digits())?;
            let text = match output.format {
                Format::Human => render_scan_human(&s, output.digits),
                Format::Json => {
                    let records: Vec<_> = s
                        .energies
                        .iter()
                        .flatten()
                        .map(|e| EnergyRecord::new(e, &problem.g, output.digits))
                        .collect();
                    json_line(&records)
                }
                Format::Csv => render_scan_csv(&s, &problem.g, output.digits),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Verify { table, oracle } => {
            let ids: Vec<u8> = match table {
                TableChoice::One(id) => vec![id],
                TableChoice::All => TABLE_IDS.to_vec(),
            };
            let data = ReferenceDataset::embedded();
            let mut all_pass = true;
            for id in ids {
                let report = reproduce_table_with(data, id, DEFAULT_DIGITS, oracle == Switch::On)?;
                all_pass &= report.all_pass();
                out.write_all(report.render().as_bytes())?;
            }
            writeln!(out, "overall: {}", if all_pass { "PASS" } else { "FAIL" })?;
            return Ok(if all_pass { 0 } else { 4 });
        }
        Command::Wavefunction {
            problem,
            order,
            xmax,
            points,
            out: path,
        } => {
            let p = OscillatorProblem::parse(problem.n, &problem.g, order)?;
            let (model, _) = WavefunctionModel::from_problem(&p, DEFAULT_DIGITS)?;
            let half_width = xmax.unwrap_or_else(|| model.default_half_width());
            if !(half_width.is_finite() && half_width > 0.0) {
                return Err(Error::InvalidProblem(format!(
                    "--xmax must be positive, got {half_width}"
                ))
                .into());
            }
            let model = model.normalize(half_width, points)?;
            let csv = render_grid_csv(&model, half_width, points);
            match path {
                Some(path) => {
                    let mut w = BufWriter::new(File::create(path)?);
                    w.write_all(csv.as_bytes())?;
                    w.flush()?;
                }
                None => out.write_all(csv.as_bytes())?,
            }
        }
    }
    Ok(0)
}

/// Machine-readable energy record; numbers are strings so digit counts are
/// preserved exactly.
#[derive(Debug, Serialize)]
struct EnergyRecord {
    n: u32,
    g: String,
    order: usize,
    a_star: String,
    energy: String,
    half_width: String,
    roots: Vec<String>,
}

impl EnergyRecord {
    const CSV_HEADER: &'static str = "n,g,order,a_star,energy,half_width,roots";

    fn new(est: &EnergyEstimate, g: &str, digits: usize) -> Self {
        Self {
            n: est.problem.n,
            g: g.trim().to_string(),
            order: est.order(),
            a_star: render_root(&est.a_star, digits),
            energy: est.render(digits),
            half_width: format_sci(&est.energy.half_width, 2),
            roots: est
                .all_positive_roots
                .iter()
                .map(|r| render_root(r, digits))
                .collect(),
        }
    }

    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}\n",
            self.n,
            self.g,
            self.order,
            self.a_star,
            self.energy,
            self.half_width,
            self.roots.join(";")
        )
    }
}

fn render_root(r: &RefinedRoot, digits: usize) -> String {
    if r.is_exact() {
        format_fixed(&r.value, digits)
    } else {
        format_sig(&r.value, digits)
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("records serialise");
    s.push('\n');
    s
}

fn render_energy_human(est: &EnergyEstimate, digits: usize) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "E={}", est.render(digits));
    let kind = match &est.selected {
        SelectedRoot::Real => String::new(),
        SelectedRoot::ComplexPair { imag } => format!(
            " (real part of complex pair, imaginary part ±{})",
            format_sci(imag, 3)
        ),
    };
    let _ = writeln!(s, "a*={}{}", render_root(&est.a_star, digits), kind);
    let _ = writeln!(s, "error bound={}", format_sci(&est.energy.half_width, 2));
    let roots: Vec<String> = est
        .all_positive_roots
        .iter()
        .map(|r| render_root(r, digits))
        .collect();
    let _ = writeln!(s, "positive roots: {}", roots.join(", "));
    s
}

fn render_scan_human(scan: &ConvergenceScan, digits: usize) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:>4}  {:>14}  {:>14}", "N", "E", "|dE|");
    for ((order, e), amp) in scan.orders.iter().zip(&scan.energies).zip(&scan.amplitudes) {
        let energy = e
            .as_ref()
            .map_or_else(|| "none".to_string(), |e| e.render(digits));
        let amp = amp
            .as_ref()
            .map_or_else(|| "-".to_string(), |a| format_sci(a, 3));
        let _ = writeln!(s, "{order:>4}  {energy:>14}  {amp:>14}");
    }
    match scan.best_order {
        Some(best) => {
            let _ = writeln!(s, "best_order={best}");
        }
        None => {
            let _ = writeln!(s, "best_order=none");
        }
    }
    s
}

fn render_scan_csv(scan: &ConvergenceScan, g: &str, digits: usize) -> String {
    let mut s = String::from("n,g,order,energy,amplitude\n");
    for ((order, e), amp) in scan.orders.iter().zip(&scan.energies).zip(&scan.amplitudes) {
        let energy = e.as_ref().map_or_else(String::new, |e| e.render(digits));
        let amp = amp.as_ref().map_or_else(String::new, |a| format_sci(a, 3));
        let _ = writeln!(s, "{},{},{order},{energy},{amp}", scan.n, g.trim());
    }
    s
}

fn render_grid_csv(model: &WavefunctionModel, half_width: f64, points: usize) -> String {
    let mut s = String::from("x,chi,phi,psi\n");
    for p in model.grid(half_width, points) {
        // Adding 0.0 folds underflowed -0.0 into 0.0.
        let _ = writeln!(
            s,
            "{:.12},{:.12e},{:.12e},{:.12e}",
            p.x + 0.0,
            p.chi + 0.0,
            p.phi + 0.0,
            p.psi + 0.0
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_exit_codes() {
        let code = |e: Error| Failure::from(e).code;
        assert_eq!(code(Error::NoPositiveRoot { n: 0, order: 3 }), 2);
        assert_eq!(
            code(Error::TailNotDecayed {
                half_width: 8.0,
                ratio: 1.0
            }),
            3
        );
        assert_eq!(code(Error::Decimal("x".into())), 1);
        assert_eq!(code(Error::InvalidProblem("x".into())), 1);
        assert_eq!(code(Error::Certification("x".into())), 5);
    }

    #[test]
    fn table_choice_parsing() {
        assert_eq!("all".parse::<TableChoice>(), Ok(TableChoice::All));
        assert_eq!("4".parse::<TableChoice>(), Ok(TableChoice::One(4)));
        assert!("0".parse::<TableChoice>().is_err());
        assert!("x".parse::<TableChoice>().is_err());
    }
}
