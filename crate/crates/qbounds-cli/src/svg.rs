//! Minimal deterministic SVG line plot for sweep results. One polyline per
//! value column, fixed palette, fixed layout; no styling knobs.

use crate::fmt;
use crate::sweep::SweepData;
use std::fmt::Write;

const WIDTH: f64 = 840.0;
const HEIGHT: f64 = 560.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

pub fn render(title: &str, data: &SweepData) -> String {
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;

    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for (param, cells) in &data.rows {
        x_min = x_min.min(*param);
        x_max = x_max.max(*param);
        for v in cells {
            y_min = y_min.min(*v);
            y_max = y_max.max(*v);
        }
    }
    if x_max <= x_min {
        x_max = x_min + 1.0;
    }
    if y_max <= y_min {
        y_min -= 0.5;
        y_max += 0.5;
    }
    let pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;

    let to_x = |v: f64| LEFT + plot_w * (v - x_min) / (x_max - x_min);
    let to_y = |v: f64| TOP + plot_h * (1.0 - (v - y_min) / (y_max - y_min));

    let mut out = String::new();
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"monospace\" font-size=\"12\">\n"
    );
    let _ = write!(out, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n");
    let _ = write!(
        out,
        "<text x=\"{LEFT}\" y=\"24\" font-size=\"14\">{}</text>\n",
        escape(title)
    );
    let _ = write!(
        out,
        "<rect x=\"{LEFT}\" y=\"{TOP}\" width=\"{plot_w}\" height=\"{plot_h}\" \
         fill=\"none\" stroke=\"#333333\"/>\n"
    );

    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let xv = x_min + f * (x_max - x_min);
        let yv = y_min + f * (y_max - y_min);
        let xp = to_x(xv);
        let yp = to_y(yv);
        let _ = write!(
            out,
            "<line x1=\"{:.2}\" y1=\"{}\" x2=\"{:.2}\" y2=\"{}\" stroke=\"#cccccc\"/>\n",
            xp,
            TOP,
            xp,
            TOP + plot_h
        );
        let _ = write!(
            out,
            "<line x1=\"{}\" y1=\"{:.2}\" x2=\"{}\" y2=\"{:.2}\" stroke=\"#cccccc\"/>\n",
            LEFT,
            yp,
            LEFT + plot_w,
            yp
        );
        let _ = write!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
            xp,
            HEIGHT - BOTTOM + 18.0,
            fmt::sig12(trim(xv))
        );
        let _ = write!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
            LEFT - 6.0,
            yp + 4.0,
            fmt::sig12(trim(yv))
        );
    }

    for (idx, name) in data.columns.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let mut points = String::new();
        for (param, cells) in &data.rows {
            let _ = write!(points, "{:.2},{:.2} ", to_x(*param), to_y(cells[idx]));
        }
        let _ = write!(
            out,
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.trim_end()
        );
        let ly = TOP + 16.0 * (idx as f64 + 1.0);
        let lx = WIDTH - RIGHT + 12.0;
        let _ = write!(
            out,
            "<line x1=\"{lx}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" \
             stroke-width=\"3\"/>\n",
            ly - 4.0,
            lx + 18.0,
            ly - 4.0
        );
        let _ = write!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>\n",
            lx + 24.0,
            ly,
            escape(name)
        );
    }

    out.push_str("</svg>\n");
    out
}

/// Tick labels do not need 12 digits; three significant digits keep the
/// axis readable while staying deterministic.
fn trim(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    format!("{x:.2e}").parse().expect("formatted float parses back")
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
