// Copyright 2026 chiral-chain contributors
// SPDX-License-Identifier: Apache-2.0

//! Dependency-free SVG polyline plots for eyeball checks. CSV remains the
//! authoritative output; these are deliberately plain.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 34.0;
const MARGIN_BOTTOM: f64 = 48.0;

const COLORS: [&str; 6] = ["#c0392b", "#2565ae", "#1e8449", "#8e44ad", "#b7950b", "#111111"];

#[derive(Debug, Clone)]
pub struct SvgPlot {
    title: String,
    x_label: String,
    y_label: String,
    log_y: bool,
    curves: Vec<(String, Vec<(f64, f64)>)>,
}

impl SvgPlot {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        Self {
            title: title.to_string(),
            x_label: x_label.to_string(),
            y_label: y_label.to_string(),
            log_y: false,
            curves: Vec::new(),
        }
    }

    /// Plot y on a log axis; non-positive samples are dropped.
    pub fn log_y(mut self) -> Self {
        self.log_y = true;
        self
    }

    pub fn curve(mut self, label: &str, points: Vec<(f64, f64)>) -> Self {
        self.curves.push((label.to_string(), points));
        self
    }

    pub fn render(&self) -> Result<String> {
        let mapped: Vec<(String, Vec<(f64, f64)>)> = self
            .curves
            .iter()
            .map(|(label, pts)| {
                let keep: Vec<(f64, f64)> = pts
                    .iter()
                    .filter(|(x, y)| {
                        x.is_finite() && y.is_finite() && (!self.log_y || *y > 0.0)
                    })
                    .map(|&(x, y)| (x, if self.log_y { y.log10() } else { y }))
                    .collect();
                (label.clone(), keep)
            })
            .collect();
        let all: Vec<(f64, f64)> = mapped.iter().flat_map(|(_, p)| p.iter().copied()).collect();
        if all.is_empty() {
            return Err(Error::EmptyInput("svg plot has no drawable points"));
        }
        let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
        for (x, y) in &all {
            x_min = x_min.min(*x);
            x_max = x_max.max(*x);
            y_min = y_min.min(*y);
            y_max = y_max.max(*y);
        }
        if x_max == x_min {
            x_max = x_min + 1.0;
        }
        if y_max == y_min {
            y_max = y_min + 1.0;
        }

        let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let sx = move |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w;
        let sy = move |y: f64| MARGIN_TOP + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h;

        let mut svg = String::new();
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
             viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">\n"
        ));
        svg.push_str(&format!(
            "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
            WIDTH / 2.0,
            escape(&self.title)
        ));

        // Axes box and ticks.
        svg.push_str(&format!(
            "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{plot_w}\" height=\"{plot_h}\" \
             fill=\"none\" stroke=\"#333\"/>\n"
        ));
        let n_ticks = 5usize;
        for i in 0..=n_ticks {
            let fx = x_min + (x_max - x_min) * i as f64 / n_ticks as f64;
            let px = sx(fx);
            svg.push_str(&format!(
                "<line x1=\"{px}\" y1=\"{}\" x2=\"{px}\" y2=\"{}\" stroke=\"#333\"/>\n",
                MARGIN_TOP + plot_h,
                MARGIN_TOP + plot_h + 5.0
            ));
            svg.push_str(&format!(
                "<text x=\"{px}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                MARGIN_TOP + plot_h + 18.0,
                tick_label(fx)
            ));

            let fy = y_min + (y_max - y_min) * i as f64 / n_ticks as f64;
            let py = sy(fy);
            svg.push_str(&format!(
                "<line x1=\"{}\" y1=\"{py}\" x2=\"{MARGIN_LEFT}\" y2=\"{py}\" stroke=\"#333\"/>\n",
                MARGIN_LEFT - 5.0
            ));
            let label = if self.log_y {
                format!("1e{}", tick_label(fy))
            } else {
                tick_label(fy)
            };
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{label}</text>\n",
                MARGIN_LEFT - 8.0,
                py + 4.0
            ));
        }
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
            MARGIN_LEFT + plot_w / 2.0,
            HEIGHT - 10.0,
            escape(&self.x_label)
        ));
        svg.push_str(&format!(
            "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
            MARGIN_TOP + plot_h / 2.0,
            MARGIN_TOP + plot_h / 2.0,
            escape(&self.y_label)
        ));

        for (idx, (label, pts)) in mapped.iter().enumerate() {
            if pts.is_empty() {
                continue;
            }
            let color = COLORS[idx % COLORS.len()];
            let path: Vec<String> = pts
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.3\"/>\n",
                path.join(" ")
            ));
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" fill=\"{color}\">{}</text>\n",
                MARGIN_LEFT + plot_w - 150.0,
                MARGIN_TOP + 16.0 + 16.0 * idx as f64,
                escape(label)
            ));
        }
        svg.push_str("</svg>\n");
        Ok(svg)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let svg = self.render()?;
        fs::write(path, svg).map_err(|e| Error::io(path, e))
    }
}

fn tick_label(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if x.abs() >= 1e4 || x.abs() < 1e-2 {
        format!("{x:.1e}")
    } else {
        format!("{x:.3}")
            .trim_end_matches('0')
            .trim_end_matches('.')
            .to_string()
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
