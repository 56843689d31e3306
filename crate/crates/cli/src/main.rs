use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lpsum::cremona::DEFAULT_MAX_MOVES;
use lpsum::symplectic_lp::bp_param;
use lpsum::verify::{run_suite, Suite};
use lpsum::PParam;
use lpsum_cli::{
    curve_csv, curve_data, pack_b1_ellipsoid, pack_exact, pack_float, parse_rational, radii_row, rounded_report,
    rows_csv, Domain, PackReport,
};

#[derive(Parser)]
#[command(name = "lpsum", version, about = "Symplectic radii, toric curves and packing verdicts for l_p-sums of discs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    B1Ellipsoid,
}

#[derive(Subcommand)]
enum Command {
    /// Inner and outer radii, first two capacities and rigidity regimes.
    Radii {
        /// Exponents p >= 1; `inf` and fractions like `9/2` are accepted.
        #[arg(required = true, value_parser = parse_p)]
        p: Vec<PParam>,
        #[arg(long, value_enum, default_value = "lagrangian")]
        domain: Domain,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Samples of the toric boundary curve.
    Curve {
        #[arg(value_parser = parse_p)]
        p: PParam,
        #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u64).range(3..))]
        samples: u64,
        #[arg(long, value_enum, default_value = "lagrangian")]
        domain: Domain,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Decide whether balls B(a_i) embed disjointly into B(c).
    Pack {
        #[arg(long, required_unless_present = "preset", conflicts_with = "preset")]
        c: Option<String>,
        #[arg(long, value_delimiter = ',', requires = "c")]
        balls: Vec<String>,
        /// `b1-ellipsoid A B`: does the symplectic l_1-sum embed into E(A, B)?
        #[arg(long, value_enum, requires = "axes")]
        preset: Option<Preset>,
        #[arg(num_args = 2, value_names = ["A", "B"])]
        axes: Vec<f64>,
        /// Use exact rational arithmetic; inputs may be fractions such as 7/60.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_MOVES)]
        max_moves: usize,
        /// Include every Cremona step in the output.
        #[arg(long)]
        trace: bool,
    },
    /// Run the built-in verification suites; all of them when none is given.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Option<Suite>,
    },
}

fn parse_p(s: &str) -> Result<PParam, String> {
    let p: PParam = s.parse().map_err(|e: lpsum::Error| e.to_string())?;
    if let PParam::Finite(v) = p {
        bp_param(v).map_err(|e| e.to_string())?;
    }
    Ok(p)
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: lpsum::Error| e.to_string())
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("lpsum: {msg}");
    ExitCode::from(2)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.write_all(b"\n")).map_err(|e| e.to_string())
        }
    }
}

fn pack(c: Option<String>, balls: Vec<String>, preset: Option<Preset>, axes: Vec<f64>, exact: bool, max_moves: usize, trace: bool) -> Result<PackReport, String> {
    if let Some(Preset::B1Ellipsoid) = preset {
        return pack_b1_ellipsoid(axes[0], axes[1]).map_err(|e| e.to_string());
    }
    let c = c.ok_or("--c is required")?;
    if balls.is_empty() {
        return Err("--balls needs at least one radius".into());
    }
    if exact {
        let c = parse_rational(&c)?;
        let balls = balls.iter().map(|b| parse_rational(b)).collect::<Result<Vec<_>, _>>()?;
        let zero = lpsum::Rational::from_integer(0.into());
        if c <= zero || balls.iter().any(|b| *b <= zero) {
            return Err("capacities must be positive".into());
        }
        return Ok(pack_exact(c, balls, max_moves, trace));
    }
    let num = |s: &str| -> Result<f64, String> {
        if s.contains('/') {
            let r = parse_rational(s)?;
            return num_traits::ToPrimitive::to_f64(&r).ok_or_else(|| format!("{s:?} is out of range"));
        }
        s.trim().parse().map_err(|_| format!("invalid number {s:?}"))
    };
    let c = num(&c)?;
    let balls = balls.iter().map(|b| num(b)).collect::<Result<Vec<_>, _>>()?;
    if !(c > 0.0) || balls.iter().any(|b| !(*b > 0.0)) {
        return Err("capacities must be positive".into());
    }
    Ok(pack_float(c, balls, max_moves, trace))
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Radii { p, domain, format } => {
            let rows = match p.iter().map(|&p| radii_row(p, domain)).collect::<Result<Vec<_>, _>>() {
                Ok(rows) => rows,
                Err(e) => return fail(e),
            };
            let text = match format {
                Format::Json => json(&rows),
                Format::Csv => rows_csv(&rows).trim_end().to_string(),
            };
            emit(&text, None).map_or_else(fail, |_| ExitCode::SUCCESS)
        }
        Command::Curve { p, samples, domain, format, output } => {
            let data = match curve_data(p, domain, samples as usize) {
                Ok(d) => d,
                Err(e) => return fail(e),
            };
            let text = match format {
                Format::Json => json(&data),
                Format::Csv => curve_csv(&data).trim_end().to_string(),
            };
            emit(&text, output.as_ref()).map_or_else(fail, |_| ExitCode::SUCCESS)
        }
        Command::Pack { c, balls, preset, axes, exact, max_moves, trace } => {
            match pack(c, balls, preset, axes, exact, max_moves, trace) {
                Ok(report) => match emit(&json(&report), None) {
                    Ok(()) => ExitCode::from(report.outcome.exit_code() as u8),
                    Err(e) => fail(e),
                },
                Err(e) => fail(e),
            }
        }
        Command::Verify { suite } => {
            let suites = suite.map_or_else(|| Suite::ALL.to_vec(), |s| vec![s]);
            let reports: Vec<_> = suites.into_iter().map(|s| rounded_report(run_suite(s))).collect();
            let passed = reports.iter().all(|r| r.passed);
            if let Err(e) = emit(&json(&reports), None) {
                return fail(e);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
