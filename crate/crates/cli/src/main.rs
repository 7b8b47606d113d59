use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use qsd_core::analytics::{coherent_two_cycle, hardware_curve, pauli_two_cycle, sigma_of_p, table1_weights};
use qsd_core::harness::{
    break_even_map_d3, pq_plane, run_sweep, sweep_csv, table_csv, threshold_bracket, tvd_curve, write_json_sidecar,
    write_text, Backend, BreakEvenSpec, CodeFamily, DecoderChoice, SweepSpec,
};
use qsd_core::Error;

#[derive(Parser)]
#[command(name = "qsd", version, about = "Stabilizer codes under quasistatic phase damping")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Logical error rate on a grid of distances and noise strengths.
    Sweep(GridArgs),
    /// Threshold bracket in p from a sweep over several distances.
    Threshold(GridArgs),
    /// Threshold brackets in p for each readout error rate q.
    PqPlane(GridArgs),
    /// Distance-3 break-even map with the spin-qubit hardware curve.
    BreakEven(BreakEvenArgs),
    /// Best Pauli approximation of the two-cycle coherent channel versus sigma.
    TvdCurve(TvdArgs),
    /// Signed scenario weights of the two-qubit code over two cycles.
    RepcodeTable(RepcodeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeArg {
    Repetition,
    Surface,
}

#[derive(Clone, Copy, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum BackendArg {
    Coherent,
    Pauli,
    Refresh,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecoderArg {
    Auto,
    Mwpm,
    Lookup,
}

fn backend(b: BackendArg) -> Backend {
    match b {
        BackendArg::Coherent => Backend::Coherent,
        BackendArg::Pauli => Backend::Pauli,
        BackendArg::Refresh => Backend::Refresh,
    }
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, value_enum, default_value = "surface")]
    code: CodeArg,
    /// Distances, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "3")]
    d: Vec<usize>,
    /// Cycles per shot; defaults to d.
    #[arg(long)]
    cycles: Option<usize>,
    #[arg(long, value_delimiter = ',', conflicts_with = "p")]
    sigma: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    q: Vec<f64>,
    /// Use q = p at every point.
    #[arg(long)]
    q_equals_p: bool,
    #[arg(long, value_enum, default_value = "pauli")]
    backend: BackendArg,
    #[arg(long, value_enum, default_value = "auto")]
    decoder: DecoderArg,
    /// Shots (pauli) or angle samples (coherent).
    #[arg(long)]
    samples: Option<usize>,
    /// Readout resamples per angle sample.
    #[arg(long)]
    readout_samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output; a JSON sidecar is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML file whose keys override the flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl GridArgs {
    fn spec(&self) -> Result<SweepSpec, Error> {
        let spec = SweepSpec {
            code: match self.code {
                CodeArg::Repetition => CodeFamily::Repetition,
                CodeArg::Surface => CodeFamily::Surface,
            },
            d: self.d.clone(),
            t: self.cycles,
            backend: backend(self.backend),
            sigma: self.sigma.clone(),
            p: self.p.clone(),
            q: self.q.clone(),
            q_equals_p: self.q_equals_p,
            samples: self.samples,
            readout_samples: self.readout_samples,
            seed: self.seed,
            decoder: match self.decoder {
                DecoderArg::Auto => DecoderChoice::Auto,
                DecoderArg::Mwpm => DecoderChoice::Mwpm,
                DecoderArg::Lookup => DecoderChoice::Lookup,
            },
            output: self.out.clone(),
        };
        match &self.config {
            Some(path) => spec.merge_toml(&read_config(path)?),
            None => Ok(spec),
        }
    }
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BreakEvenArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.0025,0.005,0.0075,0.01,0.0125,0.015")]
    p: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.0,0.02,0.04,0.06,0.08,0.1")]
    q: Vec<f64>,
    #[arg(long, value_enum, default_value = "coherent")]
    backend: BackendArg,
    #[arg(long, default_value_t = 6000)]
    samples: usize,
    #[arg(long, default_value_t = 20)]
    readout_samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Measurement times of the hardware curve, microseconds.
    #[arg(long, default_value_t = 0.5)]
    t_min: f64,
    #[arg(long, default_value_t = 0.7)]
    t_max: f64,
    #[arg(long, default_value_t = 5)]
    points: usize,
    #[arg(long, default_value_t = 10.0)]
    t2_star: f64,
    #[arg(long, default_value_t = 0.21)]
    tau: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TvdArgs {
    #[arg(long, default_value_t = 0.01)]
    sigma_min: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma_max: f64,
    #[arg(long, default_value_t = 100)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepcodeArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.01,0.05,0.1,0.3")]
    p: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

fn read_config(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

/// Overlays the keys of a TOML file on arguments parsed from flags.
fn merge_config<T: Serialize + DeserializeOwned>(args: T, config: &Option<PathBuf>) -> Result<T, Error> {
    let Some(path) = config else { return Ok(args) };
    let overrides: toml::Table = read_config(path)?.parse().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
    let mut base = toml::Table::try_from(&args).map_err(|e| Error::Config(e.to_string()))?;
    base.extend(overrides);
    base.try_into().map_err(|e: toml::de::Error| Error::Config(e.to_string()))
}

fn emit(out: &Option<PathBuf>, csv: &str) -> Result<(), Error> {
    match out {
        Some(path) => write_text(path, csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}_{suffix}.csv"))
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Sweep(args) => {
            let spec = args.spec()?;
            let result = run_sweep(&spec.expand()?)?;
            emit(&spec.output, &sweep_csv(&result.rows))?;
            if let Some(path) = &spec.output {
                write_json_sidecar(path, &spec, &result, result.rows.iter().map(|r| r.wall_time).collect())?;
            }
        }
        Command::Threshold(args) => {
            let spec = args.spec()?;
            let result = run_sweep(&spec.expand()?)?;
            let bracket = threshold_bracket(&result.rows);
            emit(&spec.output, &sweep_csv(&result.rows))?;
            if let Some(path) = &spec.output {
                let doc = serde_json::json!({ "rows": &result.rows, "bracket": &bracket });
                write_json_sidecar(path, &spec, &doc, result.rows.iter().map(|r| r.wall_time).collect())?;
            }
            eprintln!("threshold bracket: [{}, {}]{}", opt(bracket.lower), opt(bracket.upper), if bracket.flagged { " (flagged)" } else { "" });
        }
        Command::PqPlane(args) => {
            let spec = args.spec()?;
            let (rows, thresholds) = pq_plane(&spec)?;
            emit(&spec.output, &sweep_csv(&rows))?;
            let table: Vec<Vec<String>> = thresholds
                .iter()
                .map(|t| vec![t.q.to_string(), opt(t.bracket.lower), opt(t.bracket.upper), t.bracket.flagged.to_string()])
                .collect();
            let csv = table_csv(&["q", "p_lower", "p_upper", "flagged"], &table);
            match &spec.output {
                Some(path) => {
                    write_text(&with_suffix(path, "thresholds"), &csv)?;
                    write_json_sidecar(path, &spec, &thresholds, rows.iter().map(|r| r.wall_time).collect())?;
                }
                None => print!("{csv}"),
            }
        }
        Command::BreakEven(args) => {
            let config = args.config.clone();
            let args = merge_config(args, &config)?;
            if let Some(&bad) = args.p.iter().chain(&args.q).find(|x| !(0.0..0.5).contains(*x)) {
                return Err(Error::Config(format!("rate {bad} outside [0, 1/2)")));
            }
            let hardware = hardware_curve(args.t_min, args.t_max, args.points, args.t2_star, args.tau);
            let spec = BreakEvenSpec {
                p: args.p.clone(),
                q: args.q.clone(),
                backend: backend(args.backend),
                samples: args.samples,
                readout_samples: args.readout_samples,
                seed: args.seed,
                hardware,
            };
            let map = break_even_map_d3(&spec)?;
            let cells: Vec<Vec<String>> = map
                .cells
                .iter()
                .map(|c| vec![c.p.to_string(), c.q.to_string(), c.pl.to_string(), c.stderr.to_string(), c.green.to_string()])
                .collect();
            emit(&args.out, &table_csv(&["p", "q", "pl", "stderr", "green"], &cells))?;
            let curve: Vec<Vec<String>> = map
                .hardware
                .iter()
                .map(|(h, c)| {
                    vec![h.t_meas.to_string(), h.sigma.to_string(), h.p.to_string(), h.q.to_string(), c.pl.to_string(), c.stderr.to_string(), c.green.to_string()]
                })
                .collect();
            let csv = table_csv(&["t_meas", "sigma", "p", "q", "pl", "stderr", "green"], &curve);
            match &args.out {
                Some(path) => {
                    write_text(&with_suffix(path, "hardware"), &csv)?;
                    write_json_sidecar(path, &args, &map, Vec::new())?;
                }
                None => print!("{csv}"),
            }
        }
        Command::TvdCurve(args) => {
            let config = args.config.clone();
            let args = merge_config(args, &config)?;
            if args.points < 2 || !(args.sigma_min > 0.0 && args.sigma_max > args.sigma_min) {
                return Err(Error::Config("need sigma_max > sigma_min > 0 and at least 2 points".into()));
            }
            let step = (args.sigma_max - args.sigma_min) / (args.points - 1) as f64;
            let sigmas: Vec<f64> = (0..args.points).map(|i| args.sigma_min + step * i as f64).collect();
            let rows = tvd_curve(&sigmas);
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.sigma.to_string(), r.p_sigma.to_string(), r.p_best.to_string(), r.delta_min.to_string(), r.delta_at_p_sigma.to_string()])
                .collect();
            emit(&args.out, &table_csv(&["sigma", "p_sigma", "p_best", "delta_min", "delta_at_p_sigma"], &table))?;
            if let Some(path) = &args.out {
                write_json_sidecar(path, &args, &rows, Vec::new())?;
            }
        }
        Command::RepcodeTable(args) => {
            let config = args.config.clone();
            let args = merge_config(args, &config)?;
            if let Some(&bad) = args.p.iter().find(|p| !(0.0..0.5).contains(*p)) {
                return Err(Error::Config(format!("p = {bad} outside [0, 1/2)")));
            }
            let mut table = Vec::new();
            for &p in &args.p {
                for row in table1_weights(p) {
                    let qubits = |z: &qsd_core::code_model::ZString| {
                        let names: String = z.qubits().map(|j| if j == 0 { 'A' } else { 'B' }).collect();
                        if names.is_empty() { "I".to_string() } else { names }
                    };
                    table.push(vec![
                        p.to_string(),
                        row.number.to_string(),
                        qubits(&row.errors[0]),
                        qubits(&row.errors[1]),
                        qubits(&row.merged),
                        u8::from(row.syndromes[0]).to_string(),
                        u8::from(row.syndromes[1]).to_string(),
                        row.pauli.to_string(),
                        row.signed.to_string(),
                    ]);
                }
            }
            let header = ["p", "row", "e1", "e2", "merged", "s1", "s2", "pauli", "signed"];
            emit(&args.out, &table_csv(&header, &table))?;
            let channels: Vec<serde_json::Value> = args
                .p
                .iter()
                .map(|&p| {
                    let sigma = sigma_of_p(p).unwrap_or(f64::NAN);
                    let (a, b) = (pauli_two_cycle(p), coherent_two_cycle(sigma));
                    serde_json::json!({ "p": p, "sigma": sigma, "pauli": { "c": a.c, "d": a.d }, "coherent": { "c": b.c, "d": b.d } })
                })
                .collect();
            if let Some(path) = &args.out {
                write_json_sidecar(path, &args, &channels, Vec::new())?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Config(_)) => {
            eprintln!("qsd: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("qsd: {e}");
            ExitCode::FAILURE
        }
    }
}
