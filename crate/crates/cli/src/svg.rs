//! Static SVG renderings of histograms and convergence curves.

use std::fmt::Write;

use genobound_core::stats::ConvergencePoint;
use genobound_core::HistogramBin;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 360.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 16.0;
const TOP: f64 = 32.0;
const BOTTOM: f64 = 48.0;
const PALETTE: [&str; 4] = ["#d95f02", "#1b9e77", "#7570b3", "#e7298a"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn open(title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    s
}

fn axes(s: &mut String, x_labels: &[(f64, String)], y_labels: &[(f64, String)]) {
    let (x0, y0) = (LEFT, HEIGHT - BOTTOM);
    let _ = writeln!(
        s,
        r#"<path d="M{x0:.2} {TOP:.2} V{y0:.2} H{:.2}" fill="none" stroke="black"/>"#,
        WIDTH - RIGHT
    );
    for (x, label) in x_labels {
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            y0 + 16.0,
            escape(label)
        );
    }
    for (y, label) in y_labels {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 6.0,
            y + 4.0,
            escape(label)
        );
    }
}

fn short(x: f64) -> String {
    if x != 0.0 && (x.abs() >= 1e5 || x.abs() < 1e-2) {
        format!("{x:.2e}")
    } else {
        format!("{x:.2}")
    }
}

pub fn histogram_svg(bins: &[HistogramBin], title: &str) -> String {
    let mut s = open(title);
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let max = bins.iter().map(|b| b.count).max().unwrap_or(0).max(1) as f64;
    let bar_w = plot_w / bins.len().max(1) as f64;
    for (i, b) in bins.iter().enumerate() {
        let h = b.count as f64 / max * plot_h;
        let _ = writeln!(
            s,
            r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{h:.2}" fill="#4e79a7" stroke="white" stroke-width="0.5"/>"##,
            LEFT + i as f64 * bar_w,
            HEIGHT - BOTTOM - h,
            bar_w
        );
    }
    let x_labels = [0.0, 0.5, 1.0].map(|v| (LEFT + v * plot_w, short(v)));
    let y_labels = [
        (HEIGHT - BOTTOM, "0".to_string()),
        (TOP, format!("{}", max as usize)),
    ];
    axes(&mut s, &x_labels, &y_labels);
    s.push_str("</svg>\n");
    s
}

/// Mean curves with shaded 95% bands, plus a tick under every significant
/// generation.
pub fn convergence_svg(
    series: &[(&str, &[ConvergencePoint])],
    significant: &[usize],
    title: &str,
) -> String {
    let mut s = open(title);
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM - 12.0;
    let generations = series
        .iter()
        .map(|(_, p)| p.len())
        .max()
        .unwrap_or(1)
        .max(2);
    let lo = series
        .iter()
        .flat_map(|(_, p)| p.iter().map(|c| c.ci_low))
        .fold(f64::INFINITY, f64::min);
    let hi = series
        .iter()
        .flat_map(|(_, p)| p.iter().map(|c| c.ci_high))
        .fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if lo.is_finite() && hi > lo {
        (lo, hi)
    } else {
        (lo.min(0.0), lo.min(0.0) + 1.0)
    };
    let x = |g: usize| LEFT + g as f64 / (generations - 1) as f64 * plot_w;
    let y = |v: f64| TOP + (hi - v) / (hi - lo) * plot_h;

    for (k, (label, points)) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let mut band = String::new();
        for p in points.iter() {
            let _ = write!(band, "{:.2},{:.2} ", x(p.generation), y(p.ci_high));
        }
        for p in points.iter().rev() {
            let _ = write!(band, "{:.2},{:.2} ", x(p.generation), y(p.ci_low));
        }
        let _ = writeln!(
            s,
            r#"<polygon points="{}" fill="{color}" fill-opacity="0.2" stroke="none"/>"#,
            band.trim_end()
        );
        let mut line = String::new();
        for p in points.iter() {
            let _ = write!(line, "{:.2},{:.2} ", x(p.generation), y(p.mean));
        }
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            line.trim_end()
        );
        let ly = TOP + 14.0 * k as f64 + 4.0;
        let _ = writeln!(
            s,
            r#"<rect x="{:.2}" y="{:.2}" width="10" height="10" fill="{color}"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            WIDTH - RIGHT - 150.0,
            ly,
            WIDTH - RIGHT - 135.0,
            ly + 9.0,
            escape(label)
        );
    }

    let tick_y = HEIGHT - BOTTOM - 8.0;
    for &g in significant {
        let _ = writeln!(
            s,
            r#"<rect x="{:.2}" y="{tick_y:.2}" width="2" height="6" fill="black"/>"#,
            x(g) - 1.0
        );
    }

    let x_labels = [0, generations / 2, generations - 1].map(|g| (x(g), g.to_string()));
    let y_labels = [(y(lo), short(lo)), (y(hi), short(hi))];
    axes(&mut s, &x_labels, &y_labels);
    s.push_str("</svg>\n");
    s
}
