//! SVG figure of Score Potential against a BenI reference line.
//!
//! Scenarios are placed at unit spacing along the x axis. The area where the
//! PoP curve lies above the BenI line is hatched: it is the room for
//! improvement that the benefit index does not show.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FigureError {
    #[error("a figure needs at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("point `{0}` has a non-finite value")]
    NonFinite(String),
}

/// One scenario: PoP and BenI attainment, both in percent.
#[derive(Debug, Clone, PartialEq)]
pub struct FigurePoint {
    pub label: String,
    pub pop: f64,
    pub beni: f64,
}

impl FigurePoint {
    pub fn new(label: impl Into<String>, pop: f64, beni: f64) -> Self {
        FigurePoint {
            label: label.into(),
            pop,
            beni,
        }
    }
}

/// Vertices, in data coordinates, of the hatched region: the part of each
/// segment where PoP exceeds BenI, one polygon per maximal run.
pub fn improvement_polygons(points: &[FigurePoint]) -> Vec<Vec<(f64, f64)>> {
    let mut polygons = Vec::new();
    let mut upper: Vec<(f64, f64)> = Vec::new();
    let mut lower: Vec<(f64, f64)> = Vec::new();
    let close = |upper: &mut Vec<(f64, f64)>, lower: &mut Vec<(f64, f64)>, out: &mut Vec<Vec<(f64, f64)>>| {
        if upper.len() >= 2 {
            let mut poly = std::mem::take(upper);
            poly.extend(lower.drain(..).rev());
            out.push(poly);
        }
        upper.clear();
        lower.clear();
    };
    for (i, w) in points.windows(2).enumerate() {
        let (x0, x1) = (i as f64, i as f64 + 1.0);
        let (d0, d1) = (w[0].pop - w[0].beni, w[1].pop - w[1].beni);
        let at = |t: f64| {
            let x = x0 + t * (x1 - x0);
            let pop = w[0].pop + t * (w[1].pop - w[0].pop);
            let beni = w[0].beni + t * (w[1].beni - w[0].beni);
            ((x, pop), (x, beni))
        };
        let (t_start, t_end) = match (d0 > 0.0, d1 > 0.0) {
            (true, true) => (0.0, 1.0),
            (false, true) => (d0 / (d0 - d1), 1.0),
            (true, false) => (0.0, d0 / (d0 - d1)),
            (false, false) => {
                close(&mut upper, &mut lower, &mut polygons);
                continue;
            }
        };
        let (u0, l0) = at(t_start);
        let (u1, l1) = at(t_end);
        if upper.is_empty() {
            upper.push(u0);
            lower.push(l0);
        }
        upper.push(u1);
        lower.push(l1);
        if t_end < 1.0 {
            close(&mut upper, &mut lower, &mut polygons);
        }
    }
    close(&mut upper, &mut lower, &mut polygons);
    polygons
}

/// Hatched area in data units (percent times scenario spacing).
pub fn improvement_area(points: &[FigurePoint]) -> f64 {
    improvement_polygons(points).iter().map(|p| shoelace(p)).sum()
}

/// Lowest and highest percent covered by the hatched region.
pub fn improvement_band(points: &[FigurePoint]) -> Option<(f64, f64)> {
    let polys = improvement_polygons(points);
    let ys = polys.iter().flatten().map(|&(_, y)| y);
    let (lo, hi) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), y| (lo.min(y), hi.max(y)));
    (lo <= hi).then_some((lo, hi))
}

pub(crate) fn shoelace(poly: &[(f64, f64)]) -> f64 {
    let n = poly.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (x0, y0) = poly[i];
            let (x1, y1) = poly[(i + 1) % n];
            x0 * y1 - x1 * y0
        })
        .sum();
    twice.abs() / 2.0
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

struct Frame {
    n: usize,
}

impl Frame {
    fn x(&self, data_x: f64) -> f64 {
        let span = (self.n - 1) as f64;
        LEFT + data_x / span * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, pct: f64) -> f64 {
        HEIGHT - BOTTOM - pct / 100.0 * (HEIGHT - TOP - BOTTOM)
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders the PoP curve, the BenI line and the hatched region between them.
/// Both axes run in percent; the y axis spans 0–100%.
pub fn render_pop_vs_beni_figure(points: &[FigurePoint]) -> Result<String, FigureError> {
    if points.len() < 2 {
        return Err(FigureError::TooFewPoints(points.len()));
    }
    if let Some(p) = points.iter().find(|p| !p.pop.is_finite() || !p.beni.is_finite()) {
        return Err(FigureError::NonFinite(p.label.clone()));
    }
    let frame = Frame { n: points.len() };
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    svg.push_str(
        r##"  <defs>
    <pattern id="hatch" patternUnits="userSpaceOnUse" width="8" height="8" patternTransform="rotate(45)">
      <line x1="0" y1="0" x2="0" y2="8" stroke="#7a7a7a" stroke-width="2"/>
    </pattern>
  </defs>
"##,
    );
    let _ = writeln!(svg, r#"  <rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    // Grid and y axis.
    for pct in (0..=100).step_by(10) {
        let y = frame.y(f64::from(pct));
        let _ = writeln!(
            svg,
            r##"  <line class="grid" x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#e0e0e0"/>"##,
            WIDTH - RIGHT
        );
        let _ = writeln!(
            svg,
            r#"  <text class="tick" x="{:.2}" y="{:.2}" text-anchor="end">{pct}%</text>"#,
            LEFT - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"  <line class="axis" x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{:.2}" stroke="black"/>"#,
        HEIGHT - BOTTOM
    );
    let _ = writeln!(
        svg,
        r#"  <line class="axis" x1="{LEFT}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
        HEIGHT - BOTTOM,
        WIDTH - RIGHT,
        HEIGHT - BOTTOM
    );
    for (i, p) in points.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"  <text class="label" x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            frame.x(i as f64),
            HEIGHT - BOTTOM + 20.0,
            escape(&p.label)
        );
    }
    let _ = writeln!(
        svg,
        r#"  <text x="20" y="{:.2}" transform="rotate(-90 20 {:.2})" text-anchor="middle">Percent</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );

    for poly in improvement_polygons(points) {
        let mut d = String::new();
        for (i, &(x, y)) in poly.iter().enumerate() {
            let _ = write!(d, "{}{:.4},{:.4} ", if i == 0 { "M" } else { "L" }, frame.x(x), frame.y(y));
        }
        d.push('Z');
        let _ = writeln!(
            svg,
            r##"  <path class="improvement" d="{d}" fill="url(#hatch)" stroke="none"/>"##
        );
    }

    let polyline = |values: &mut dyn Iterator<Item = f64>| {
        values
            .enumerate()
            .map(|(i, v)| format!("{:.4},{:.4}", frame.x(i as f64), frame.y(v)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(
        svg,
        r##"  <polyline class="beni" points="{}" fill="none" stroke="#1f4e9c" stroke-width="2" stroke-dasharray="6 4"/>"##,
        polyline(&mut points.iter().map(|p| p.beni))
    );
    let _ = writeln!(
        svg,
        r##"  <polyline class="pop" points="{}" fill="none" stroke="#c0392b" stroke-width="2.5"/>"##,
        polyline(&mut points.iter().map(|p| p.pop))
    );
    for (i, p) in points.iter().enumerate() {
        let _ = writeln!(
            svg,
            r##"  <circle class="pop-point" cx="{:.4}" cy="{:.4}" r="3.5" fill="#c0392b"><title>{}: PoP {}%</title></circle>"##,
            frame.x(i as f64),
            frame.y(p.pop),
            escape(&p.label),
            crate::report::trim_decimal(p.pop, 2)
        );
    }

    let lx = WIDTH - RIGHT - 190.0;
    let _ = writeln!(
        svg,
        r##"  <line x1="{lx}" y1="20" x2="{}" y2="20" stroke="#c0392b" stroke-width="2.5"/><text x="{}" y="24">Score Potential</text>"##,
        lx + 24.0,
        lx + 30.0
    );
    let _ = writeln!(
        svg,
        r##"  <line x1="{lx}" y1="36" x2="{}" y2="36" stroke="#1f4e9c" stroke-width="2" stroke-dasharray="6 4"/><text x="{}" y="40">BenI attainment</text>"##,
        lx + 24.0,
        lx + 30.0
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}
