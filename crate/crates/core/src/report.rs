//! Report rendering.
//!
//! Text output rounds percentages and indices half up to integers; CSV and
//! JSON carry the stored values unchanged.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::economics::EconomicsReport;
use crate::engine::{ComparisonReport, ModelEvaluation};
use crate::gains::GainsChart;
use crate::io::IoError;
use crate::scalar::{round_half_up, Scalar};
use crate::sample::CutOff;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected text, csv or json)")),
        }
    }
}

/// Fixed-point with at most `places` decimals and no trailing zeros.
pub fn trim_decimal(value: f64, places: usize) -> String {
    let s = format!("{value:.places$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    };
    if s == "-0" {
        "0".to_owned()
    } else {
        s
    }
}

/// `57.49` → `57%`.
pub fn fmt_percent(value: f64) -> String {
    format!("{}%", round_half_up(value))
}

/// `187.5` → `188`.
pub fn fmt_index(value: f64) -> String {
    format!("{}", round_half_up(value))
}

fn f<S: Scalar>(v: S) -> f64 {
    v.to_f64_lossy()
}

fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let _ = writeln!(out, "{}", line(header.to_vec()));
    for row in rows {
        let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
    }
}

/// The eleven-column bucket table: bucket number, responders, the three
/// numerator bounds, marginal and cumulative PoP, marginal and cumulative
/// BenI, the BenI ceiling and the attainment ratio.
pub fn render_gains_table<S: Scalar>(chart: &GainsChart<S>) -> String {
    let header = [
        "Bucket", "#Resp", "P'up max", "P'up min", "P'up avg", "PoP' marg", "PoP' cum", "BenI' marg",
        "BenI' cum", "BenI' cum max", "Col 9/Col 10",
    ];
    let rows: Vec<Vec<String>> = chart
        .buckets
        .iter()
        .zip(&chart.rows)
        .map(|(b, r)| {
            vec![
                b.bucket_no.to_string(),
                b.responders.to_string(),
                trim_decimal(f(b.p_up_max), 4),
                trim_decimal(f(b.p_up_min), 4),
                trim_decimal(f(b.p_up_avg), 4),
                fmt_percent(f(b.pop_marginal)),
                fmt_percent(f(r.pop_cumulative)),
                fmt_index(f(b.beni_marginal)),
                fmt_index(f(r.beni_cumulative)),
                fmt_index(f(r.beni_max_cumulative)),
                fmt_percent(f(r.attainment)),
            ]
        })
        .collect();
    let mut out = String::new();
    table(&mut out, &header, &rows);
    out
}

/// The BenI table by cut-off: cut-off, responders, marginal BenI, cumulative
/// BenI, its ceiling and the attainment ratio.
pub fn render_beni_table<S: Scalar>(chart: &GainsChart<S>) -> String {
    let header = ["Cut-Off", "#Resp", "BenI marg", "BenI cum", "BenI max cum", "BenI/BenI max"];
    let rows: Vec<Vec<String>> = chart
        .buckets
        .iter()
        .zip(&chart.rows)
        .map(|(b, r)| {
            vec![
                r.cutoff.to_string(),
                b.responders.to_string(),
                fmt_index(f(b.beni_marginal)),
                fmt_index(f(r.beni_cumulative)),
                fmt_index(f(r.beni_max_cumulative)),
                fmt_percent(f(r.attainment)),
            ]
        })
        .collect();
    let mut out = String::new();
    table(&mut out, &header, &rows);
    out
}

/// `P↓` as the explicit sum of the top responder positions in bucket units
/// when there are few responders, e.g. `10 + 9.9 + 9.8 + 9.7 = 39.4`.
fn p_down_expansion<S: Scalar>(chart: &GainsChart<S>) -> String {
    let total = trim_decimal(f(chart.p_down_chart), 4);
    if chart.responders > 6 {
        return total;
    }
    let terms: Vec<String> = (0..chart.responders)
        .map(|i| {
            let v = S::from_count(chart.bucket_count as u64) - chart.spacing * S::from_count(i as u64);
            trim_decimal(f(v), 4)
        })
        .collect();
    format!("{} = {total}", terms.join(" + "))
}

fn render_text<S: Scalar>(eval: &ModelEvaluation<S>) -> String {
    let chart = &eval.gains;
    let mut out = String::new();
    let _ = writeln!(out, "Model: {}", eval.model_id);
    let _ = writeln!(out, "  No. of buckets       #B    {}", chart.bucket_count);
    let _ = writeln!(out, "  Size of sample       #X    {}", eval.sample_size);
    let _ = writeln!(out, "  Response rate        R(X)  {}", fmt_rate(f(eval.base_rate)));
    let _ = writeln!(out, "  Responders           k     {}", eval.responders);
    let _ = writeln!(out, "  Tie policy                 {}", eval.tie_policy);
    if let Some(t) = eval.total_potential {
        let _ = writeln!(out, "  Total potential      T     {t}");
    }
    out.push('\n');
    out.push_str(&render_gains_table(chart));
    out.push('\n');
    let _ = writeln!(out, "P↑ = {}", trim_decimal(f(chart.p_up_approx), 4));
    let _ = writeln!(out, "P↓ = {}", p_down_expansion(chart));
    let _ = writeln!(out, "PoP = P↑/P↓ = {}", fmt_percent(f(chart.pop_approx)));
    let _ = writeln!(
        out,
        "PoP approx range: {} (min) .. {} (max)",
        fmt_percent(f(eval.pop_approx.min)),
        fmt_percent(f(eval.pop_approx.max))
    );
    out.push('\n');
    let _ = writeln!(
        out,
        "Exact from individual ranks: P↑ = {}, P↓ = {}, PoP = {} ({})",
        trim_decimal(f(eval.p_up_exact), 4),
        trim_decimal(f(eval.p_down_exact), 4),
        fmt_percent(f(eval.pop_exact)),
        trim_decimal(f(eval.pop_exact), 4)
    );
    out.push('\n');
    out.push_str("BenI by cut-off\n");
    out.push_str(&render_beni_table(chart));
    if !eval.beni_profile.is_empty() {
        out.push('\n');
        out.push_str("BenI at requested cut-offs\n");
        let mut header = vec!["Cut-Off", "Selected", "BenI", "BenI max", "BenI/BenI max"];
        if eval.total_potential.is_some() {
            header.push("Rollout names");
        }
        let rows: Vec<Vec<String>> = eval
            .beni_profile
            .iter()
            .map(|p| {
                let mut row = vec![
                    p.cutoff.to_string(),
                    p.selected.to_string(),
                    fmt_index(f(p.beni)),
                    fmt_index(f(p.beni_max)),
                    fmt_percent(f(p.attainment)),
                ];
                if let Some(n) = p.rollout_pass_names {
                    row.push(n.to_string());
                }
                row
            })
            .collect();
        table(&mut out, &header, &rows);
    }
    if let (Some(target), Some(meets)) = (eval.stretch_target, eval.meets_stretch_target) {
        let _ = writeln!(
            out,
            "\nStretch target {}: {}",
            trim_decimal(f(target), 4) + "%",
            if meets { "met" } else { "below target" }
        );
    }
    if !eval.degeneracy.is_empty() {
        let flags: Vec<String> = eval
            .degeneracy
            .iter()
            .map(|d| serde_json::to_value(d).map(|v| v.as_str().unwrap_or_default().to_owned()).unwrap_or_default())
            .collect();
        let _ = writeln!(out, "Flags: {}", flags.join(", "));
    }
    out.push_str("\nPercentages and indices are rounded half up to integers.\n");
    out
}

fn fmt_rate(rate: f64) -> String {
    format!("{}%", trim_decimal(rate * 100.0, 4))
}

/// One machine-format chart row: a bucket's marginal columns with the
/// cumulative columns of its row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartCsvRow {
    pub model_id: String,
    pub bucket_no: usize,
    pub cutoff: CutOff,
    pub names: usize,
    pub responders: usize,
    pub p_up_max: f64,
    pub p_up_min: f64,
    pub p_up_avg: f64,
    pub pop_marginal: f64,
    pub pop_cumulative: f64,
    pub beni_marginal: f64,
    pub beni_cumulative: f64,
    pub beni_max_cumulative: f64,
    pub attainment: f64,
}

pub fn chart_csv_rows<S: Scalar>(eval: &ModelEvaluation<S>) -> Vec<ChartCsvRow> {
    eval.gains
        .buckets
        .iter()
        .zip(&eval.gains.rows)
        .map(|(b, r)| ChartCsvRow {
            model_id: eval.model_id.clone(),
            bucket_no: b.bucket_no,
            cutoff: r.cutoff,
            names: b.names,
            responders: b.responders,
            p_up_max: f(b.p_up_max),
            p_up_min: f(b.p_up_min),
            p_up_avg: f(b.p_up_avg),
            pop_marginal: f(b.pop_marginal),
            pop_cumulative: f(r.pop_cumulative),
            beni_marginal: f(b.beni_marginal),
            beni_cumulative: f(r.beni_cumulative),
            beni_max_cumulative: f(r.beni_max_cumulative),
            attainment: f(r.attainment),
        })
        .collect()
}

pub fn write_csv_rows<T: Serialize>(rows: &[T]) -> Result<String, IoError> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    for row in rows {
        wtr.serialize(row)?;
    }
    let bytes = wtr.into_inner().map_err(|e| IoError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn parse_csv_rows<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>, IoError> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    rdr.deserialize().map(|r| r.map_err(IoError::from)).collect()
}

/// Renders one evaluation.
pub fn render_combined_chart<S: Scalar + Serialize>(
    eval: &ModelEvaluation<S>,
    format: OutputFormat,
) -> Result<String, IoError> {
    match format {
        OutputFormat::Text => Ok(render_text(eval)),
        OutputFormat::Csv => write_csv_rows(&chart_csv_rows(eval)),
        OutputFormat::Json => Ok(serde_json::to_string_pretty(eval)? + "\n"),
    }
}

pub fn parse_evaluation_json<S: Scalar + for<'de> Deserialize<'de>>(
    text: &str,
) -> Result<ModelEvaluation<S>, IoError> {
    Ok(serde_json::from_str(text)?)
}

/// One machine-format ranking row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingCsvRow {
    pub rank: usize,
    pub model_id: String,
    pub sample_size: usize,
    pub responders: usize,
    pub pop_exact: f64,
    pub pop_approx: f64,
    pub pop_approx_min: f64,
    pub pop_approx_max: f64,
    pub meets_stretch_target: Option<bool>,
}

pub fn ranking_csv_rows<S: Scalar>(report: &ComparisonReport<S>) -> Vec<RankingCsvRow> {
    report
        .evaluations
        .iter()
        .enumerate()
        .map(|(i, e)| RankingCsvRow {
            rank: i + 1,
            model_id: e.model_id.clone(),
            sample_size: e.sample_size,
            responders: e.responders,
            pop_exact: f(e.pop_exact),
            pop_approx: f(e.pop_approx.avg),
            pop_approx_min: f(e.pop_approx.min),
            pop_approx_max: f(e.pop_approx.max),
            meets_stretch_target: e.meets_stretch_target,
        })
        .collect()
}

pub fn render_comparison<S: Scalar + Serialize>(
    report: &ComparisonReport<S>,
    format: OutputFormat,
) -> Result<String, IoError> {
    match format {
        OutputFormat::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        OutputFormat::Csv => write_csv_rows(&ranking_csv_rows(report)),
        OutputFormat::Text => {
            let header = ["Rank", "Model", "#X", "R(X)", "PoP", "PoP approx", "min", "max", "Target"];
            let rows: Vec<Vec<String>> = report
                .evaluations
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    vec![
                        (i + 1).to_string(),
                        e.model_id.clone(),
                        e.sample_size.to_string(),
                        fmt_rate(f(e.base_rate)),
                        fmt_percent(f(e.pop_exact)),
                        fmt_percent(f(e.pop_approx.avg)),
                        fmt_percent(f(e.pop_approx.min)),
                        fmt_percent(f(e.pop_approx.max)),
                        match e.meets_stretch_target {
                            Some(true) => "met".into(),
                            Some(false) => "below".into(),
                            None => "-".into(),
                        },
                    ]
                })
                .collect();
            let mut out = String::new();
            table(&mut out, &header, &rows);
            if !report.below_target.is_empty() {
                let _ = writeln!(out, "\nBelow target: {}", report.below_target.join(", "));
            }
            out.push_str("\nPercentages are rounded half up to integers.\n");
            Ok(out)
        }
    }
}

pub fn parse_comparison_json<S: Scalar + for<'de> Deserialize<'de>>(
    text: &str,
) -> Result<ComparisonReport<S>, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn render_economics<S: Scalar + Serialize>(
    report: &EconomicsReport<S>,
    format: OutputFormat,
) -> Result<String, IoError> {
    let e = &report.economics;
    match format {
        OutputFormat::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        OutputFormat::Csv => {
            #[derive(Serialize)]
            struct Row {
                total_cost: f64,
                addresses: u64,
                responders: u64,
                cost_per_thousand: f64,
                cost_per_responder: f64,
                spreading_loss: f64,
            }
            write_csv_rows(&[Row {
                total_cost: f(e.total_cost),
                addresses: e.addresses,
                responders: e.responders,
                cost_per_thousand: f(report.cost_per_thousand),
                cost_per_responder: f(report.cost_per_responder),
                spreading_loss: f(report.spreading_loss.loss),
            }])
        }
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "Total cost          {}", trim_decimal(f(e.total_cost), 4));
            let _ = writeln!(out, "Addresses           {}", e.addresses);
            let _ = writeln!(out, "Responders          {}", e.responders);
            let _ = writeln!(out, "Cost per thousand   {}", trim_decimal(f(report.cost_per_thousand), 4));
            let _ = writeln!(out, "Cost per responder  {}", trim_decimal(f(report.cost_per_responder), 4));
            let _ = writeln!(
                out,
                "Spreading loss      {} - {} = {}",
                trim_decimal(f(report.spreading_loss.cost_per_action), 4),
                trim_decimal(f(report.spreading_loss.cost_per_responder), 4),
                trim_decimal(f(report.spreading_loss.loss), 4)
            );
            out.push_str("(cost per action, taken as cost per thousand, minus cost per responder)\n");
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_trimming() {
        assert_eq!(trim_decimal(23.700000000000003, 4), "23.7");
        assert_eq!(trim_decimal(22.65, 4), "22.65");
        assert_eq!(trim_decimal(7.0, 4), "7");
        assert_eq!(trim_decimal(0.0, 4), "0");
        assert_eq!(trim_decimal(-0.00001, 4), "0");
        assert_eq!(trim_decimal(33.333333, 4), "33.3333");
    }

    #[test]
    fn display_rounding() {
        assert_eq!(fmt_percent(74.1116), "74%");
        assert_eq!(fmt_percent(96.954), "97%");
        assert_eq!(fmt_index(187.5), "188");
        assert_eq!(fmt_index(1000.0), "1000");
    }

    #[test]
    fn formats_parse() {
        assert_eq!("JSON".parse::<OutputFormat>(), Ok(OutputFormat::Json));
        assert!("xml".parse::<OutputFormat>().is_err());
    }
}
