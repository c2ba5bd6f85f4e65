//! CSV rows, JSON rows and SVG scatter plots.
//!
//! Floats are written with 17 significant digits. Extended-precision
//! parameters also get a `hi:lo` pair of hexadecimal floats.

use std::fmt::Write as _;

use serde::Serialize;

use crate::dd::{hex_f64, Dd};
use crate::dynamics::CenterRecord;
use crate::spectrum::{r_constant, SpectrumResult};
use crate::C64;

/// 17 significant digits in scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `hi:lo` as two hexadecimal floats.
pub fn hex_dd(x: Dd) -> String {
    format!("{}:{}", hex_f64(x.hi), hex_f64(x.lo))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CenterRow {
    pub degree: u32,
    pub period: usize,
    pub re: String,
    pub im: String,
    pub residual: String,
    pub re_hex: String,
    pub im_hex: String,
}

impl CenterRow {
    pub fn new(r: &CenterRecord) -> Self {
        CenterRow {
            degree: r.degree,
            period: r.period,
            re: fmt_f64(r.c.re.to_f64()),
            im: fmt_f64(r.c.im.to_f64()),
            residual: fmt_f64(r.newton_residual),
            re_hex: hex_dd(r.c.re),
            im_hex: hex_dd(r.c.im),
        }
    }
}

pub const CENTER_HEADER: &str = "D,m,re_c,im_c,residual,re_c_hex,im_c_hex";

pub fn centers_csv(records: &[CenterRecord]) -> String {
    let mut s = String::from(CENTER_HEADER);
    s.push('\n');
    for r in records.iter().map(CenterRow::new) {
        let _ = writeln!(s, "{},{},{},{},{},{},{}", r.degree, r.period, r.re, r.im, r.residual, r.re_hex, r.im_hex);
    }
    s
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub degree: u32,
    pub period: usize,
    pub re_c: String,
    pub im_c: String,
    pub re_lambda: String,
    pub im_lambda: String,
    pub residual: String,
    pub abs_lambda: String,
}

pub const SPECTRUM_HEADER: &str = "D,m,re_c,im_c,re_lambda,im_lambda,residual,abs_lambda";

/// One row per eigenvalue, in survey order.
pub fn spectrum_rows(results: &[SpectrumResult]) -> Vec<SpectrumRow> {
    let mut rows = Vec::new();
    for res in results {
        let c = res.center.c64();
        for e in &res.eigenvalues {
            rows.push(SpectrumRow {
                degree: res.center.degree,
                period: res.center.period,
                re_c: fmt_f64(c.re),
                im_c: fmt_f64(c.im),
                re_lambda: fmt_f64(e.value.re),
                im_lambda: fmt_f64(e.value.im),
                residual: fmt_f64(e.residual),
                abs_lambda: fmt_f64(e.value.norm()),
            });
        }
    }
    rows
}

pub fn spectrum_csv(results: &[SpectrumResult]) -> String {
    let mut s = String::from(SPECTRUM_HEADER);
    s.push('\n');
    for r in spectrum_rows(results) {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.degree, r.period, r.re_c, r.im_c, r.re_lambda, r.im_lambda, r.residual, r.abs_lambda
        );
    }
    s
}

/// A named point series for [`scatter_svg`].
pub struct Series<'a> {
    pub label: String,
    pub points: &'a [C64],
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Square scatter plot of `[-extent, extent]²` with reference circles
/// centered at the origin.
pub fn scatter_svg(title: &str, series: &[Series], circles: &[(f64, &str)], extent: f64) -> String {
    let size = 600.0;
    let scale = size / (2.0 * extent);
    let px = |z: C64| ((z.re + extent) * scale, (extent - z.im) * scale);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{h}" viewBox="0 0 {size} {h}">"#,
        h = size + 40.0
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="10" y="{}" font-family="sans-serif" font-size="14">{}</text>"#, size + 25.0, escape(title));
    let (ox, oy) = px(C64::new(0.0, 0.0));
    let _ = writeln!(s, r##"<line x1="0" y1="{oy:.2}" x2="{size}" y2="{oy:.2}" stroke="#ccc"/>"##);
    let _ = writeln!(s, r##"<line x1="{ox:.2}" y1="0" x2="{ox:.2}" y2="{size}" stroke="#ccc"/>"##);
    for (r, label) in circles {
        let _ = writeln!(
            s,
            r##"<circle cx="{ox:.2}" cy="{oy:.2}" r="{:.2}" fill="none" stroke="#555" stroke-dasharray="4 3"><title>{}</title></circle>"##,
            r * scale,
            escape(label)
        );
    }
    for (i, ser) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(s, r#"<g fill="{color}"><title>{}</title>"#, escape(&ser.label));
        for &z in ser.points {
            let (x, y) = px(z);
            let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="1.5"/>"#);
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}

/// Eigenvalue cloud with the circles `1/(4D)`, `r_D` and `1`.
pub fn annulus_svg(degree: u32, results: &[SpectrumResult]) -> String {
    let pts: Vec<C64> = results.iter().flat_map(|r| r.values()).collect();
    let inner = 1.0 / (4.0 * degree as f64);
    let l_inner = format!("|λ| = 1/{}", 4 * degree);
    let l_r = format!("|λ| = r_{degree}");
    let title = format!("D = {degree}: {} eigenvalues", pts.len());
    scatter_svg(
        &title,
        &[Series { label: "eigenvalues".into(), points: &pts }],
        &[(inner, &l_inner), (r_constant(degree), &l_r), (1.0, "|λ| = 1")],
        1.1,
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
