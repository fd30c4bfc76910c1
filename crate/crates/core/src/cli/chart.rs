//! Minimal static SVG line charts.

use std::fmt::Write;

use super::report::fmt_num;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;
const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(name: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self {
            name: name.into(),
            points,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LineChart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

/// Coordinates rounded to two decimals keep the output byte-stable.
fn c(v: f64) -> String {
    format!("{v:.2}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn bounds(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    values
        .filter(|v| v.is_finite())
        .fold(None, |acc, v| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })
}

impl LineChart {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            series: Vec::new(),
        }
    }

    pub fn with_series(mut self, series: Series) -> Self {
        self.series.push(series);
        self
    }

    pub fn render(&self) -> String {
        let all = || self.series.iter().flat_map(|s| s.points.iter());
        let (x_lo, mut x_hi) = bounds(all().map(|p| p.0)).unwrap_or((0.0, 1.0));
        if x_hi <= x_lo {
            x_hi = x_lo + 1.0;
        }
        let (y_min, y_max) = bounds(all().map(|p| p.1)).unwrap_or((0.0, 1.0));
        let y_lo = y_min.min(0.0);
        let mut y_hi = y_max.max(0.0) * 1.1;
        if y_hi <= y_lo {
            y_hi = y_lo + 1.0;
        }

        let plot_w = WIDTH - LEFT - RIGHT;
        let plot_h = HEIGHT - TOP - BOTTOM;
        let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
        let sy = |y: f64| TOP + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h;

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
            w = WIDTH,
            h = HEIGHT
        );
        let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            c(LEFT + plot_w / 2.0),
            escape(&self.title)
        );

        // Axes.
        let (x0, y0, x1, y1) = (LEFT, TOP + plot_h, LEFT + plot_w, TOP);
        let _ = writeln!(
            svg,
            r#"<path d="M{} {} L{} {} M{} {} L{} {}" stroke="black" fill="none"/>"#,
            c(x0), c(y1), c(x0), c(y0), c(x0), c(y0), c(x1), c(y0)
        );
        for i in 0..=TICKS {
            let f = i as f64 / TICKS as f64;
            let xv = x_lo + f * (x_hi - x_lo);
            let yv = y_lo + f * (y_hi - y_lo);
            let (px, py) = (sx(xv), sy(yv));
            let _ = writeln!(
                svg,
                r#"<line x1="{px}" y1="{a}" x2="{px}" y2="{b}" stroke="black"/><text x="{px}" y="{t}" text-anchor="middle">{label}</text>"#,
                px = c(px),
                a = c(y0),
                b = c(y0 + 5.0),
                t = c(y0 + 18.0),
                label = fmt_num(xv)
            );
            let _ = writeln!(
                svg,
                r#"<line x1="{a}" y1="{py}" x2="{b}" y2="{py}" stroke="black"/><text x="{t}" y="{ty}" text-anchor="end">{label}</text>"#,
                py = c(py),
                a = c(x0 - 5.0),
                b = c(x0),
                t = c(x0 - 8.0),
                ty = c(py + 4.0),
                label = fmt_num(yv)
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            c(LEFT + plot_w / 2.0),
            c(HEIGHT - 15.0),
            escape(&self.x_label)
        );
        let _ = writeln!(
            svg,
            r#"<text x="18" y="{y}" text-anchor="middle" transform="rotate(-90 18 {y})">{}</text>"#,
            escape(&self.y_label),
            y = c(TOP + plot_h / 2.0)
        );

        for (i, series) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let coords: Vec<String> = series
                .points
                .iter()
                .filter(|p| p.0.is_finite() && p.1.is_finite())
                .map(|&(x, y)| format!("{},{}", c(sx(x)), c(sy(y))))
                .collect();
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" stroke="{color}" stroke-width="2" fill="none"/>"#,
                coords.join(" ")
            );
            let ly = TOP + 10.0 + 20.0 * i as f64;
            let lx = LEFT + plot_w + 15.0;
            let _ = writeln!(
                svg,
                r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
                c(lx),
                c(lx + 20.0),
                c(lx + 26.0),
                c(ly + 4.0),
                escape(&series.name),
                ly = c(ly)
            );
        }
        svg.push_str("</svg>\n");
        svg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_labels_and_one_polyline_per_series() {
        let svg = LineChart::new("Latency", "nodes", "latency <ms>")
            .with_series(Series::new("traditional", vec![(20.0, 30.0), (50.0, 60.0)]))
            .with_series(Series::new("sdn", vec![(20.0, 10.0), (50.0, 20.0)]))
            .render();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(">nodes<"));
        assert!(svg.contains("latency &lt;ms&gt;"));
        assert!(svg.contains(">traditional<") && svg.contains(">sdn<"));
    }

    #[test]
    fn flat_or_empty_data_does_not_divide_by_zero() {
        let svg = LineChart::new("t", "x", "y")
            .with_series(Series::new("flat", vec![(1.0, 0.0)]))
            .render();
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
        let empty = LineChart::new("t", "x", "y").render();
        assert!(!empty.contains("NaN"));
    }
}
