use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ColorChoice, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde_json::json;

use kicfb_core::det::{simulate, theorem1_rate, DetParams};
use kicfb_core::gauss::{
    bounds_report, gdof_lower, optimize_mu, rate_default, rate_for, FeedbackCapacity, GaussParams, MuAlloc, MuSearch,
    SchemeKind,
};
use kicfb_core::sweep::{
    default_alphas, fmt_num, parse_list, AuditGrid, Axis, AxisScale, BetaLevel, DetAlphaGrid, SweepOutput, SweepSpec,
};
use kicfb_core::{Error, Execution, Result};

#[derive(Parser, Debug)]
#[command(
    name = "kicfb",
    version,
    about = "Symmetric rates of K-user interference channels with rate-limited feedback"
)]
struct Cli {
    /// Write data here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON records instead of CSV / plain text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Symmetric rate of the deterministic channel.
    DetRate {
        #[command(flatten)]
        det: DetArgs,
    },
    /// Bit-exact simulation of the deterministic scheme.
    DetSim {
        #[command(flatten)]
        det: DetArgs,
        #[arg(long, default_value_t = 100)]
        blocks: usize,
    },
    /// Lattice-scheme rate of one Gaussian instance.
    GaussRate {
        #[arg(long, allow_hyphen_values = true)]
        snr_db: f64,
        #[arg(long, allow_hyphen_values = true)]
        inr_db: f64,
        #[arg(long, value_parser = parse_cfb)]
        cfb: FeedbackCapacity,
        #[arg(long)]
        k: usize,
        /// Power weights, comma separated.
        #[arg(long, conflicts_with = "optimize")]
        mu: Option<String>,
        /// Search the weights instead of using the defaults.
        #[arg(long)]
        optimize: bool,
        /// Use log(1 + x) where the decoder allows it.
        #[arg(long)]
        refined: bool,
    },
    /// Rate and bound against SNR at fixed alpha.
    GaussSweep {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_cfb)]
        cfb_list: Vec<FeedbackCapacity>,
        #[arg(long, value_parser = parse_db_axis)]
        snr_db_range: Axis,
    },
    /// Normalized deterministic rate against alpha.
    DetSweep {
        #[arg(long, value_delimiter = ',', required = true)]
        beta_list: Vec<BetaLevel>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DetAlphaGrid::default().n_base)]
        n_base: usize,
        #[arg(long, default_value_t = DetAlphaGrid::default().alpha_den)]
        alpha_den: usize,
        #[arg(long, default_value_t = DetAlphaGrid::default().alpha_max)]
        alpha_max: usize,
    },
    /// GDoF lower bound.
    Gdof {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
    },
    /// Gap between the schemes and the conjectured bound over a grid.
    GapAudit {
        #[arg(long, value_delimiter = ',', required = true)]
        k_list: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_cfb)]
        cfb_list: Vec<FeedbackCapacity>,
        #[arg(long, value_parser = parse_db_axis)]
        snr_db_range: Axis,
        #[arg(long, value_delimiter = ',')]
        alpha_list: Option<Vec<f64>>,
    },
}

#[derive(clap::Args, Debug)]
struct DetArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    p2: usize,
    #[arg(long)]
    k: usize,
}

impl DetArgs {
    fn params(&self) -> Result<DetParams> {
        DetParams::new(self.n, self.m, self.p2, self.k)
    }
}

type Parsed<T> = std::result::Result<T, String>;

fn parse_cfb(s: &str) -> Parsed<FeedbackCapacity> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_db_axis(s: &str) -> Parsed<Axis> {
    Axis::parse(s, AxisScale::Db).map_err(|e| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidAllocation(_) | Error::InfeasibleParameters(_) => 1,
        Error::InvalidArgument(_) | Error::Dimension { .. } | Error::Degenerate(_) | Error::RequiresBlockPairing(_) => {
            2
        }
        Error::UnsupportedRegime(_) | Error::NotWellDefined(_) => 3,
        _ => 4,
    }
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| fmt_num(*x)).collect::<Vec<_>>().join(",")
}

fn run(cli: Cli) -> Result<()> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.cmd {
        Cmd::DetRate { det } => {
            let params = det.params()?;
            let rate = theorem1_rate(&params)?;
            let mut out = sink(&cli.out)?;
            if cli.json {
                emit_json(
                    &mut out,
                    &json!({ "params": params, "rate": rate, "value": rate.to_f64() }),
                )?;
            } else {
                writeln!(out, "{rate} = {}", fmt_num(rate.to_f64()))?;
            }
            out.flush()?;
        }
        Cmd::DetSim { det, blocks } => {
            let report = simulate(&det.params()?, blocks, cli.seed, exec)?;
            let mut out = sink(&cli.out)?;
            if cli.json {
                emit_json(&mut out, &serde_json::to_value(&report)?)?;
            } else {
                writeln!(
                    out,
                    "{}/{} blocks decoded, rate {}",
                    report.decoded_blocks, report.blocks, report.rate
                )?;
            }
            out.flush()?;
            if !report.all_decoded() {
                return Err(Error::SchemeBug(format!(
                    "{} of {} blocks failed to decode",
                    report.blocks - report.decoded_blocks,
                    report.blocks
                )));
            }
        }
        Cmd::GaussRate {
            snr_db,
            inr_db,
            cfb,
            k,
            mu,
            optimize,
            refined,
        } => {
            let params = GaussParams::from_db(snr_db, inr_db, cfb, k)?;
            let kind = SchemeKind::of(params.regime()).ok_or_else(|| {
                Error::UnsupportedRegime(format!(
                    "alpha = {:.6} ({}) has no lattice scheme",
                    params.alpha(),
                    params.regime().label()
                ))
            })?;
            let (alloc, breakdown) = match (mu, optimize) {
                (Some(text), _) => {
                    let weights: Vec<f64> = parse_list(&text)?;
                    let alloc = MuAlloc::new(kind, weights)?;
                    let b = rate_for(&params, &alloc, refined)?;
                    (alloc, b)
                }
                (None, true) => optimize_mu(
                    &params,
                    kind,
                    &MuSearch {
                        refined,
                        ..MuSearch::default()
                    },
                    exec,
                )?,
                (None, false) => rate_default(&params, refined)?,
            };
            let report = bounds_report(&params, refined)?;
            let ub = report.ub_conjectured;
            let mut out = sink(&cli.out)?;
            if cli.json {
                emit_json(
                    &mut out,
                    &json!({
                        "params": params,
                        "alpha": params.alpha(),
                        "regime": params.regime().label(),
                        "mu": alloc,
                        "breakdown": breakdown,
                        "r_sym": breakdown.r_sym,
                        "ub": ub,
                        "gap": ub - breakdown.r_sym,
                        "regime_gap_const": report.regime_gap_const,
                        "L": report.global_gap_l,
                    }),
                )?;
            } else {
                writeln!(out, "regime {}", params.regime().label())?;
                writeln!(out, "alpha {}", fmt_num(params.alpha()))?;
                writeln!(out, "mu {}", join(&alloc.mu))?;
                writeln!(out, "per_message {}", join(&breakdown.per_message))?;
                writeln!(out, "r_sym {}", fmt_num(breakdown.r_sym))?;
                writeln!(out, "ub {}", fmt_num(ub))?;
                writeln!(out, "gap {}", fmt_num(ub - breakdown.r_sym))?;
            }
            out.flush()?;
        }
        Cmd::GaussSweep {
            alpha,
            k,
            cfb_list,
            snr_db_range,
        } => {
            let spec = SweepSpec::GaussRateVsSnr {
                alpha,
                k_users: k,
                cfbs: cfb_list,
                snr_db: snr_db_range,
            };
            write_rows(&spec.run(exec)?, &cli.out, cli.json)?;
        }
        Cmd::DetSweep {
            beta_list,
            k,
            n_base,
            alpha_den,
            alpha_max,
        } => {
            let grid = DetAlphaGrid {
                n_base,
                alpha_den,
                alpha_max,
            };
            let spec = SweepSpec::DetRateVsAlpha {
                betas: beta_list,
                grid,
                k_users: k,
            };
            write_rows(&spec.run(exec)?, &cli.out, cli.json)?;
        }
        Cmd::Gdof { alpha, beta } => {
            let g = gdof_lower(alpha, beta)?;
            let mut out = sink(&cli.out)?;
            if cli.json {
                emit_json(&mut out, &json!({ "alpha": alpha, "beta": beta, "gdof": g }))?;
            } else {
                writeln!(out, "{}", fmt_num(g))?;
            }
            out.flush()?;
        }
        Cmd::GapAudit {
            k_list,
            cfb_list,
            snr_db_range,
            alpha_list,
        } => {
            if cli.out.is_none() {
                return Err(Error::InvalidArgument("gap-audit writes its rows to --out PATH".into()));
            }
            let grid = AuditGrid {
                snr_db: snr_db_range.values(),
                alphas: alpha_list.unwrap_or_else(default_alphas),
                cfbs: cfb_list,
                k_users: k_list,
            };
            let output = SweepSpec::GapAudit(grid).run(exec)?;
            write_rows(&output, &cli.out, cli.json)?;
            if let SweepOutput::Audit(_, summary) = &output {
                let mut stdout = io::stdout().lock();
                emit_json(&mut stdout, &serde_json::to_value(summary)?)?;
            }
        }
    }
    Ok(())
}

fn write_rows(output: &SweepOutput, path: &Option<PathBuf>, as_json: bool) -> Result<()> {
    let mut out = sink(path)?;
    if as_json {
        output.write_json(&mut out)?;
    } else {
        output.write_csv(&mut out)?;
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let color = if std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty()) {
        ColorChoice::Never
    } else {
        ColorChoice::Auto
    };
    let matches = Cli::command().color(color).get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
