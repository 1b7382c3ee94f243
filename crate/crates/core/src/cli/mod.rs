//! Command-line front end. Sweeps run in parallel; records are emitted in
//! input-grid order so identical inputs give identical bytes.

pub mod input;
pub mod record;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::coding::{
    partitioned_bound, renyi_bound, shulman_feder_bound, union_bhattacharyya_bound, ChannelModel,
    DistanceSpectrum,
};
use crate::error::Error;
use crate::gmin::{g_alpha, g_alpha_oracle, GMinQuery};
use crate::locus::{boundary_polyline, chernoff_min, witness_for_point};
pub use record::{Document, SweepRecord};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Input(_) => 2,
            Self::Numerical(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Self::Input(e.to_string())
        } else {
            Self::Numerical(e.to_string())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "renyi-tv", version, about = "Rényi divergence under total-variation constraints and Rényi-based error bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output file (standard output when omitted).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum Rényi divergence g_α(ε) under a total-variation constraint.
    Gmin(GminArgs),
    /// Boundary of the (D(Q‖P1), D(Q‖P2)) region.
    Locus(LocusArgs),
    /// Minimum Chernoff information under a total-variation constraint.
    ChernoffMin(ChernoffArgs),
    /// Error-probability bounds for a code over a channel.
    Bound(BoundArgs),
    /// Weight distribution of a binary linear code from its generator.
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Args)]
pub struct GminArgs {
    /// Comma-separated orders α > 0.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub alpha: Vec<f64>,
    /// Comma-separated total-variation levels in [0, 2).
    #[arg(long, value_delimiter = ',', conflicts_with = "eps_grid", allow_negative_numbers = true)]
    pub eps: Vec<f64>,
    /// Grid `start:stop:step` of total-variation levels.
    #[arg(long)]
    pub eps_grid: Option<String>,
    /// Replace the solver by a brute-force grid search of this size.
    #[arg(long)]
    pub oracle: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LocusArgs {
    /// Comma-separated total-variation levels in (0, 2).
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub eps: Vec<f64>,
    /// Boundary points per level.
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    /// Instead of the boundary, emit a witness triple for the point `x,y`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub at: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct ChernoffArgs {
    /// Comma-separated total-variation levels in (0, 2).
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub eps: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Renyi,
    Sf,
    Union,
    Partitioned,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Spectrum CSV with header `l,count`.
    #[arg(long, conflicts_with = "generator", required_unless_present = "generator")]
    pub spectrum: Option<PathBuf>,
    /// Generator matrix as lines of 0/1 characters.
    #[arg(long)]
    pub generator: Option<PathBuf>,
    /// `auto` for log(M)/N, or a rate in nats per channel use.
    #[arg(long, default_value = "auto")]
    pub rate: String,
    /// Comma-separated channels: `bsc:<delta>` or `biawgn:<EsN0_dB>`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub channel: Vec<String>,
    /// Comma-separated bound methods.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "renyi")]
    pub method: Vec<BoundKind>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Generator matrix as lines of 0/1 characters.
    #[arg(long)]
    pub generator: PathBuf,
}

/// Parses arguments, runs the command and writes its output. Returns the
/// process exit status.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Executes `cli` and writes the rendered output to its destination.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let doc = execute(&cli.command)?;
    for r in &doc.records {
        if let Some(w) = &r.warnings {
            eprintln!("warning: {w}");
        }
    }
    let text = match cli.format {
        Format::Csv => record::render_csv(&doc).map_err(|e| CliError::Input(e.to_string()))?,
        Format::Json => record::render_json(&doc).map_err(|e| CliError::Numerical(e.to_string()))?,
    };
    match &cli.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write `{}`: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(format!("cannot write output: {e}"))),
    }
}

/// Computes the records for a command without writing anything.
pub fn execute(command: &Command) -> Result<Document, CliError> {
    let (name, records) = match command {
        Command::Gmin(a) => ("gmin", gmin(a)?),
        Command::Locus(a) => ("locus", locus(a)?),
        Command::ChernoffMin(a) => ("chernoff-min", chernoff(a)?),
        Command::Bound(a) => ("bound", bound(a)?),
        Command::Spectrum(a) => ("spectrum", spectrum(a)?),
    };
    Ok(Document {
        command: name.to_string(),
        records,
    })
}

fn gmin(a: &GminArgs) -> Result<Vec<SweepRecord>, CliError> {
    let eps = match &a.eps_grid {
        Some(g) => input::parse_grid(g)?,
        None if a.eps.is_empty() => {
            return Err(CliError::Input("gmin needs --eps or --eps-grid".into()))
        }
        None => a.eps.clone(),
    };
    let queries = a
        .alpha
        .iter()
        .flat_map(|&al| eps.iter().map(move |&e| GMinQuery::new(al, e)))
        .collect::<Result<Vec<_>, _>>()?;
    queries
        .par_iter()
        .map(|&q| {
            let g = match a.oracle {
                Some(n) => g_alpha_oracle(q, n)?,
                None => g_alpha(q),
            };
            Ok(SweepRecord::from_gmin(&g))
        })
        .collect()
}

fn locus(a: &LocusArgs) -> Result<Vec<SweepRecord>, CliError> {
    if !a.at.is_empty() {
        let [x, y] = a.at[..] else {
            return Err(CliError::Input(format!(
                "--at expects `x,y`, got {} value(s)",
                a.at.len()
            )));
        };
        return a
            .eps
            .iter()
            .map(|&e| Ok(SweepRecord::from_witness(&witness_for_point(e, x, y)?)))
            .collect();
    }
    let mut out = Vec::new();
    for &e in &a.eps {
        out.extend(
            boundary_polyline(e, a.points)?
                .iter()
                .map(SweepRecord::from_witness),
        );
    }
    Ok(out)
}

fn chernoff(a: &ChernoffArgs) -> Result<Vec<SweepRecord>, CliError> {
    a.eps
        .iter()
        .map(|&e| Ok(SweepRecord::from_chernoff(&chernoff_min(e)?)))
        .collect()
}

fn bound(a: &BoundArgs) -> Result<Vec<SweepRecord>, CliError> {
    let spec = match (&a.spectrum, &a.generator) {
        (Some(p), _) => input::read_spectrum_csv(p)?,
        (None, Some(p)) => input::read_generator(p)?,
        (None, None) => {
            return Err(CliError::Input("bound needs --spectrum or --generator".into()))
        }
    };
    let rate = if a.rate == "auto" {
        spec.rate()
    } else {
        a.rate
            .parse::<f64>()
            .map_err(|_| CliError::Input(format!("--rate `{}`: expected `auto` or a number", a.rate)))?
    };
    let channels = a
        .channel
        .iter()
        .map(|c| c.parse::<ChannelModel>().map(|ch| (c.clone(), ch)))
        .collect::<Result<Vec<_>, _>>()?;
    let jobs: Vec<(&String, ChannelModel, BoundKind)> = channels
        .iter()
        .flat_map(|(name, ch)| a.method.iter().map(move |&m| (name, *ch, m)))
        .collect();
    jobs.par_iter()
        .map(|(name, ch, m)| {
            let report = evaluate_bound(&spec, rate, *ch, *m)?;
            Ok(SweepRecord::from_bound((*name).clone(), &report))
        })
        .collect()
}

fn evaluate_bound(
    spec: &DistanceSpectrum,
    rate: f64,
    ch: ChannelModel,
    kind: BoundKind,
) -> Result<crate::coding::BoundReport, Error> {
    match kind {
        BoundKind::Renyi => renyi_bound(spec, rate, ch),
        BoundKind::Sf => shulman_feder_bound(spec, rate, ch),
        BoundKind::Union => union_bhattacharyya_bound(spec, ch),
        BoundKind::Partitioned => partitioned_bound(spec, rate, ch),
    }
}

fn spectrum(a: &SpectrumArgs) -> Result<Vec<SweepRecord>, CliError> {
    let spec = input::read_generator(&a.generator)?;
    Ok(spec
        .counts()
        .iter()
        .enumerate()
        .map(|(l, &c)| SweepRecord {
            l: Some(l),
            count: Some(c),
            ..SweepRecord::default()
        })
        .collect())
}
