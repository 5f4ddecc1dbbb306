//! Rendered reports and the figure.

use score_potential::figure::{improvement_area, improvement_polygons, render_pop_vs_beni_figure, FigurePoint};
use score_potential::report::{
    chart_csv_rows, parse_comparison_json, parse_csv_rows, parse_evaluation_json, render_beni_table,
    render_combined_chart, render_comparison, write_csv_rows, ChartCsvRow, OutputFormat,
};
use score_potential::*;

fn sample_with_bucket_counts(per_bucket: usize, top_down: &[usize]) -> RankedSample {
    let buckets = top_down.len();
    let mut records = Vec::new();
    for (i, &r) in top_down.iter().rev().enumerate() {
        for j in 0..per_bucket {
            let pos = i * per_bucket + j;
            // Responders sit in the middle of their bucket.
            let offset = (per_bucket - r) / 2;
            let responder = j >= offset && j < offset + r;
            records.push(ScoredRecord::new(format!("n{pos:03}"), pos as f64, responder));
        }
    }
    assert_eq!(records.len(), per_bucket * buckets);
    rank_sample(records, TiePolicy::Midrank).unwrap()
}

fn four_responder_eval() -> ModelEvaluation<f64> {
    let sample = sample_with_bucket_counts(10, &[0, 0, 3, 1, 0, 0, 0, 0, 0, 0]);
    evaluate_model(&EvaluationContext::new(sample), "sparse").unwrap()
}

fn row_cells<'a>(text: &'a str, first: &str) -> Vec<&'a str> {
    text.lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .find(|cells| cells.first() == Some(&first) && cells.len() == 11)
        .expect("row present")
}

#[test]
fn four_responder_text_rows() {
    let text = render_combined_chart(&four_responder_eval(), OutputFormat::Text).unwrap();
    assert_eq!(
        row_cells(&text, "8")[1..],
        ["3", "23.7", "21.6", "22.65", "57%", "57%", "750", "250", "333", "75%"]
    );
    assert_eq!(
        row_cells(&text, "7")[1..],
        ["1", "7", "6.1", "6.55", "17%", "74%", "250", "250", "250", "100%"]
    );
    assert_eq!(row_cells(&text, "10")[1..], ["0", "0", "0", "0", "0%", "0%", "0", "0", "1000", "0%"]);
    assert!(text.contains("P↑ = 29.2"));
    assert!(text.contains("P↓ = 10 + 9.9 + 9.8 + 9.7 = 39.4"));
    assert!(text.contains("PoP = P↑/P↓ = 74%"));
}

#[test]
fn eight_responder_beni_columns() {
    let chart: GainsChart<f64> = GainsChart::from_bucket_counts(10, &[3, 1, 1, 1, 0, 0, 1, 1, 0, 0]).unwrap();
    let text = render_beni_table(&chart);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
    let col = |i: usize| rows.iter().map(|r| r[i]).collect::<Vec<_>>();
    assert_eq!(col(0), ["10%", "20%", "30%", "40%", "50%", "60%", "70%", "80%", "90%", "100%"]);
    assert_eq!(col(2), ["375", "125", "125", "125", "0", "0", "125", "125", "0", "0"]);
    assert_eq!(col(3), ["375", "250", "208", "188", "150", "125", "125", "125", "111", "100"]);
    assert_eq!(col(4), ["1000", "500", "333", "250", "200", "167", "143", "125", "111", "100"]);
    assert_eq!(col(5), ["38%", "50%", "63%", "75%", "75%", "75%", "88%", "100%", "100%", "100%"]);
}

#[test]
fn json_round_trip_is_idempotent() {
    let eval = four_responder_eval();
    let json = render_combined_chart(&eval, OutputFormat::Json).unwrap();
    let back: ModelEvaluation<f64> = parse_evaluation_json(&json).unwrap();
    assert_eq!(back, eval);
    assert_eq!(render_combined_chart(&back, OutputFormat::Json).unwrap(), json);

    let report = compare_models(vec![eval.clone()]).unwrap();
    let json = render_comparison(&report, OutputFormat::Json).unwrap();
    let back: ComparisonReport<f64> = parse_comparison_json(&json).unwrap();
    assert_eq!(back, report);
}

#[test]
fn exact_evaluations_serialize_too() {
    let sample = sample_with_bucket_counts(10, &[0, 0, 3, 1, 0, 0, 0, 0, 0, 0]);
    let eval: ExactEvaluation = evaluate_model(&EvaluationContext::new(sample), "exact").unwrap();
    let json = render_combined_chart(&eval, OutputFormat::Json).unwrap();
    let back: ExactEvaluation = parse_evaluation_json(&json).unwrap();
    assert_eq!(back, eval);
    assert_eq!(back.gains.p_down_chart, Exact::new(394, 10));
}

#[test]
fn csv_round_trip_keeps_precision() {
    let eval = four_responder_eval();
    let csv = render_combined_chart(&eval, OutputFormat::Csv).unwrap();
    let rows: Vec<ChartCsvRow> = parse_csv_rows(&csv).unwrap();
    assert_eq!(rows, chart_csv_rows(&eval));
    assert_eq!(write_csv_rows(&rows).unwrap(), csv);
}

#[test]
fn rendering_does_not_touch_values() {
    let eval = four_responder_eval();
    let before = eval.clone();
    for format in [OutputFormat::Text, OutputFormat::Csv, OutputFormat::Json] {
        render_combined_chart(&eval, format).unwrap();
    }
    assert_eq!(eval, before);
}

/// Midpoint-rule quadrature of max(pop − beni, 0) over the piecewise-linear
/// interpolation of the points.
fn quadrature(points: &[FigurePoint], steps_per_unit: usize) -> f64 {
    let mut total = 0.0;
    let h = 1.0 / steps_per_unit as f64;
    for w in points.windows(2) {
        for s in 0..steps_per_unit {
            let t = (s as f64 + 0.5) * h;
            let pop = w[0].pop + t * (w[1].pop - w[0].pop);
            let beni = w[0].beni + t * (w[1].beni - w[0].beni);
            total += (pop - beni).max(0.0) * h;
        }
    }
    total
}

#[test]
fn shaded_area_matches_quadrature() {
    let monotone = vec![
        FigurePoint::new("a", 76.0, 75.0),
        FigurePoint::new("b", 85.0, 75.0),
        FigurePoint::new("c", 97.0, 75.0),
        FigurePoint::new("d", 100.0, 75.0),
    ];
    let trapezoid: f64 = monotone
        .windows(2)
        .map(|w| ((w[0].pop - w[0].beni) + (w[1].pop - w[1].beni)) / 2.0)
        .sum();
    assert!((improvement_area(&monotone) - trapezoid).abs() < 1e-9);
    assert!((improvement_area(&monotone) - quadrature(&monotone, 100_000)).abs() < 1e-6);

    let scenarios = vec![
        FigurePoint::new("74%", 74.0, 75.0),
        FigurePoint::new("97%", 97.0, 75.0),
        FigurePoint::new("100%", 100.0, 75.0),
    ];
    assert!((improvement_area(&scenarios) - quadrature(&scenarios, 100_000)).abs() < 1e-6);
}

#[test]
fn svg_path_encloses_the_computed_area() {
    let points = vec![
        FigurePoint::new("74%", 74.0, 75.0),
        FigurePoint::new("97%", 97.0, 75.0),
        FigurePoint::new("100%", 100.0, 75.0),
    ];
    let svg = render_pop_vs_beni_figure(&points).unwrap();
    let d = svg
        .lines()
        .find(|l| l.contains(r#"class="improvement""#))
        .and_then(|l| l.split(r#"d=""#).nth(1))
        .and_then(|rest| rest.split('"').next())
        .unwrap();
    let coords: Vec<(f64, f64)> = d
        .split_whitespace()
        .filter(|tok| *tok != "Z")
        .map(|tok| {
            let (x, y) = tok.trim_start_matches(['M', 'L']).split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect();
    let n = coords.len();
    let pixel_area = (0..n)
        .map(|i| coords[i].0 * coords[(i + 1) % n].1 - coords[(i + 1) % n].0 * coords[i].1)
        .sum::<f64>()
        .abs()
        / 2.0;
    // 270 px per scenario step, 3 px per percent.
    let data_area = pixel_area / (270.0 * 3.0);
    assert!((data_area - improvement_area(&points)).abs() < 1e-3);
    assert_eq!(improvement_polygons(&points).len(), 1);
}
