//! `scorepot`: evaluate and compare response targeting models from the
//! command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use score_potential::economics::{economics_report, CampaignEconomics, EconomicsReport, SpreadingLoss};
use score_potential::figure::{render_pop_vs_beni_figure, FigureError, FigurePoint};
use score_potential::io::{parse_sample_csv, write_sample_csv, IoError};
use score_potential::report::{render_combined_chart, render_comparison, render_economics, OutputFormat};
use score_potential::scalar::parse_decimal_ratio;
use score_potential::{
    beni_at_cutoff, beni_max, compare_models, evaluate_batch, evaluate_model, generate_sample, rank_sample,
    CutOff, EvaluationContext, Exact, MetricError, Real, Scalar, TiePolicy,
};

#[derive(Parser)]
#[command(name = "scorepot", version, about = "Score Potential and benefit-index model evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scored sample.
    Evaluate {
        sample: PathBuf,
        #[command(flatten)]
        opts: EvalOpts,
    },
    /// Evaluate several scored samples and rank them by Score Potential.
    Compare {
        #[arg(required = true, num_args = 1..)]
        samples: Vec<PathBuf>,
        #[command(flatten)]
        opts: EvalOpts,
        /// Write an SVG of PoP against BenI attainment, one point per sample in
        /// command-line order.
        #[arg(long)]
        figure: Option<PathBuf>,
        /// Cut-off at which BenI attainment is plotted.
        #[arg(long, default_value = "40%")]
        figure_cutoff: CutOff,
    },
    /// Generate a synthetic scored sample.
    Gen {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        rate: f64,
        /// 0 = random ordering, 1 = perfect separation.
        #[arg(long)]
        quality: f64,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Campaign cost arithmetic.
    Econ {
        #[arg(long)]
        total_cost: String,
        #[arg(long)]
        addresses: u64,
        #[arg(long)]
        responders: u64,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
    },
}

#[derive(Args)]
struct EvalOpts {
    /// Number of equal-size buckets in the gains chart.
    #[arg(long, default_value_t = 10)]
    buckets: usize,
    /// Comma-separated cut-offs, e.g. `10%,20%` or `0.1,0.2`. Defaults to deciles.
    #[arg(long, value_delimiter = ',')]
    cutoffs: Option<Vec<CutOff>>,
    /// Stretch target for the Score Potential, in percent.
    #[arg(long)]
    target: Option<f64>,
    #[arg(long, default_value = "midrank")]
    ties: TiePolicy,
    #[arg(long, default_value = "text")]
    format: OutputFormat,
    /// Size of the promotable universe, for rollout pass-name counts.
    #[arg(long)]
    total_potential: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum CliError {
    Io(IoError),
    Metric(MetricError),
    Figure(FigureError),
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Io(e)
    }
}

impl From<MetricError> for CliError {
    fn from(e: MetricError) -> Self {
        CliError::Metric(e)
    }
}

impl From<FigureError> for CliError {
    fn from(e: FigureError) -> Self {
        CliError::Figure(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(IoError::File { .. }) => 3,
            CliError::Io(_) => 4,
            CliError::Figure(_) => 5,
            CliError::Metric(e) => match e.root() {
                MetricError::NoResponders => 10,
                MetricError::IndivisibleBuckets { .. } => 11,
                _ => 12,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(e) => e.to_string(),
            CliError::Metric(e) => e.to_string(),
            CliError::Figure(e) => e.to_string(),
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    let io_err = |path: &Path, source| CliError::Io(IoError::File {
        path: path.to_owned(),
        source,
    });
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| io_err(Path::new("<stdout>"), e)),
    }
}

fn context(path: &Path, opts: &EvalOpts) -> Result<EvaluationContext<Real>, CliError> {
    let records = parse_sample_csv(path)?;
    let sample = rank_sample(records, opts.ties)?;
    let mut ctx = EvaluationContext::new(sample)
        .with_buckets(opts.buckets)
        .with_total_potential(opts.total_potential)
        .with_stretch_target(opts.target)?;
    if let Some(cutoffs) = &opts.cutoffs {
        ctx = ctx.with_cutoffs(cutoffs.clone());
    }
    Ok(ctx)
}

/// File stems, or full paths when stems collide.
fn model_ids(paths: &[PathBuf]) -> Vec<String> {
    let stems: Vec<String> = paths
        .iter()
        .map(|p| p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned()))
        .collect();
    stems
        .iter()
        .zip(paths)
        .map(|(stem, path)| {
            if stems.iter().filter(|s| *s == stem).count() > 1 {
                path.display().to_string()
            } else {
                stem.clone()
            }
        })
        .collect()
}

fn to_real(report: &EconomicsReport<Exact>) -> EconomicsReport<Real> {
    let f = |v: Exact| v.to_f64_lossy();
    EconomicsReport {
        economics: CampaignEconomics {
            total_cost: f(report.economics.total_cost),
            addresses: report.economics.addresses,
            responders: report.economics.responders,
        },
        cost_per_thousand: f(report.cost_per_thousand),
        cost_per_responder: f(report.cost_per_responder),
        spreading_loss: SpreadingLoss {
            cost_per_action: f(report.spreading_loss.cost_per_action),
            cost_per_responder: f(report.spreading_loss.cost_per_responder),
            loss: f(report.spreading_loss.loss),
        },
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Evaluate { sample, opts } => {
            let ctx = context(&sample, &opts)?;
            let id = model_ids(std::slice::from_ref(&sample)).remove(0);
            let eval = evaluate_model(&ctx, &id)?;
            write_output(opts.output.as_deref(), &render_combined_chart(&eval, opts.format)?)
        }
        Command::Compare {
            samples,
            opts,
            figure,
            figure_cutoff,
        } => {
            let ids = model_ids(&samples);
            let models = ids
                .into_iter()
                .zip(&samples)
                .map(|(id, path)| Ok((id, context(path, &opts)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let evals = evaluate_batch(&models)?;
            if let Some(fig_path) = &figure {
                let points = models
                    .iter()
                    .zip(&evals)
                    .map(|((id, ctx), eval)| {
                        let beni: Real = beni_at_cutoff(&ctx.sample, figure_cutoff)?;
                        let ceiling: Real = beni_max(figure_cutoff, eval.base_rate)?;
                        Ok(FigurePoint::new(id.clone(), eval.pop_exact, beni * 100.0 / ceiling))
                    })
                    .collect::<Result<Vec<_>, MetricError>>()?;
                let svg = render_pop_vs_beni_figure(&points)?;
                write_output(Some(fig_path), &svg)?;
            }
            let report = compare_models(evals)?;
            write_output(opts.output.as_deref(), &render_comparison(&report, opts.format)?)
        }
        Command::Gen {
            size,
            rate,
            quality,
            seed,
            output,
        } => {
            let records = generate_sample(size, rate, quality, seed)?;
            let mut buf = Vec::new();
            write_sample_csv(&records, &mut buf)?;
            write_output(Some(&output), &String::from_utf8_lossy(&buf))
        }
        Command::Econ {
            total_cost,
            addresses,
            responders,
            format,
        } => {
            let cost = parse_decimal_ratio(&total_cost).ok_or_else(|| {
                MetricError::InvalidParameter(format!("total cost `{total_cost}` is not a decimal amount"))
            })?;
            let econ = CampaignEconomics::<Exact>::new(cost, addresses, responders)?;
            let report = economics_report(&econ)?;
            write_output(None, &render_economics(&to_real(&report), format)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("scorepot: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
