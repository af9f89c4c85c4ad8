use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kahler_fiber::calculus::{exterior_derivative_omega, kahler_defect};
use kahler_fiber::geometry::{Coord, HermitianMatrix3, TotalSpacePoint};
use kahler_fiber::metric::{blocks, metric, normalized_metric, volume, NaturalMetric};
use kahler_fiber::verify::{emit_report, run_all, run_suite_named, Format, SamplerConfig};

#[derive(Parser)]
#[command(name = "kahler-fiber", version, about = "Natural hermitian metric on the universal elliptic curve with its Kähler cone")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run one property suite, or `all` of them, over seeded sample points.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Override the per-suite default tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Print the metric, normalized metric, blocks and volume at a point.
    Eval {
        /// z_re,z_im,a_re,a_im,s_re,s_im
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Print the coefficients of dω at a point.
    Dform {
        /// z_re,z_im,a_re,a_im,s_re,s_im
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

fn parse_point(s: &str) -> Result<TotalSpacePoint, String> {
    let vals: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad coordinate `{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    let coords: [f64; 6] = vals
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected 6 comma-separated numbers, got {}", v.len()))?;
    TotalSpacePoint::from_real(coords).map_err(|e| e.to_string())
}

fn print_matrix(out: &mut impl Write, name: &str, h: &HermitianMatrix3) -> std::io::Result<()> {
    writeln!(out, "{name}:")?;
    for j in 0..3 {
        let row: Vec<String> = (0..3)
            .map(|k| {
                let e = h.get(j, k);
                format!("{:+.12e}{:+.12e}i", e.re, e.im)
            })
            .collect();
        writeln!(out, "  [{}]", row.join(", "))?;
    }
    Ok(())
}

fn eval(p: &TotalSpacePoint) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    let b = blocks(p);
    print_matrix(&mut out, "metric", &metric(p))?;
    print_matrix(&mut out, "normalized_metric", &normalized_metric(p))?;
    writeln!(out, "blocks:")?;
    for (name, v) in [("g_fiber", b.g_fiber), ("g_l2", b.g_l2), ("g_wp", b.g_wp), ("a", b.a)] {
        writeln!(out, "  {name:<8} {:+.17e}{:+.17e}i", v.re, v.im)?;
    }
    writeln!(out, "volume: {:.17e}", volume(p))
}

fn dform(p: &TotalSpacePoint) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    write!(out, "{}", exterior_derivative_omega(&NaturalMetric, p))?;
    writeln!(out, "kahler_defect: {:.17e}", kahler_defect(&NaturalMetric, p, &Coord::ALL))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { suite, seed, samples, tol, format } => {
            let cfg = SamplerConfig::new(seed, samples);
            let reports = if suite == "all" {
                run_all(&cfg, tol)
            } else {
                run_suite_named(&suite, &cfg, tol).map(|r| vec![r])
            };
            let reports = match reports {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let fmt = match format {
                OutputFormat::Text => Format::Text,
                OutputFormat::Json => Format::Json,
            };
            let mut out = std::io::stdout().lock();
            for r in &reports {
                if out.write_all(emit_report(r, fmt).as_bytes()).is_err() {
                    return ExitCode::from(2);
                }
            }
            if reports.iter().all(|r| r.pass) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::Eval { point } => run_point(&point, eval),
        Command::Dform { point } => run_point(&point, dform),
    }
}

fn run_point(point: &str, f: fn(&TotalSpacePoint) -> std::io::Result<()>) -> ExitCode {
    match parse_point(point) {
        Ok(p) => match f(&p) {
            Ok(()) => ExitCode::SUCCESS,
            Err(_) => ExitCode::from(2),
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
