//! SVG drawings of a window of the cubic threefold lattice.
//!
//! In hexagonal mode the point `nα + mβ` is drawn at `x = 2n + m` and row
//! `m`, so that α, β, γ sit at angles 0, π/3, 2π/3 up to the row height.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cubic::{moduli_dim, small_class_label, KuClass};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoordinateMode {
    Euclidean,
    Hexagonal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub mode: CoordinateMode,
    pub n_range: (i64, i64),
    pub m_range: (i64, i64),
    /// Label points with their notation, dimension and known identifications.
    pub annotate: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { mode: CoordinateMode::Hexagonal, n_range: (-3, 3), m_range: (-3, 3), annotate: true }
    }
}

const MARGIN: i64 = 40;
const UNIT: i64 = 24;
/// Integer stand-in for `UNIT·√3`.
const ROW: i64 = 42;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

impl RenderSpec {
    /// Integer plane coordinates before scaling.
    fn plane(&self, n: i64, m: i64) -> (i64, i64) {
        match self.mode {
            CoordinateMode::Hexagonal => (2 * n + m, m),
            CoordinateMode::Euclidean => (n, m),
        }
    }

    fn scale(&self) -> (i64, i64) {
        match self.mode {
            CoordinateMode::Hexagonal => (UNIT, ROW),
            CoordinateMode::Euclidean => (2 * UNIT, 2 * UNIT),
        }
    }

    pub fn points(&self) -> Vec<KuClass> {
        let (n0, n1) = self.n_range;
        let (m0, m1) = self.m_range;
        (m0..=m1).rev().flat_map(|m| (n0..=n1).map(move |n| KuClass::new(n, m))).collect()
    }
}

pub fn render_svg(spec: &RenderSpec) -> Result<String> {
    let (n0, n1) = spec.n_range;
    let (m0, m1) = spec.m_range;
    if n0 > n1 || m0 > m1 {
        return Err(Error::PreconditionFailed("empty window".into()));
    }
    if (n1 - n0 + 1).saturating_mul(m1 - m0 + 1) > 40_000 {
        return Err(Error::PreconditionFailed("window has more than 40000 points".into()));
    }
    let corners = [(n0, m0), (n0, m1), (n1, m0), (n1, m1)].map(|(n, m)| spec.plane(n, m));
    let xmin = corners.iter().map(|c| c.0).min().unwrap_or(0);
    let xmax = corners.iter().map(|c| c.0).max().unwrap_or(0);
    let (ymin, ymax) = (m0, m1);
    let (sx, sy) = spec.scale();
    let px = |x: i64| MARGIN + (x - xmin) * sx;
    let py = |y: i64| MARGIN + (ymax - y) * sy;
    let width = 2 * MARGIN + (xmax - xmin) * sx;
    let height = 2 * MARGIN + (ymax - ymin) * sy;

    let mut s = String::new();
    let _ = writeln!(s, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(s, "<rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>");

    // Rays through ±α, ±β, ±γ, clipped to the window by drawing to the
    // farthest multiple that stays inside.
    if (n0..=n1).contains(&0) && (m0..=m1).contains(&0) {
        let (ox, oy) = spec.plane(0, 0);
        for (dn, dm) in [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)] {
            let mut k = 0;
            while (n0..=n1).contains(&(dn * (k + 1))) && (m0..=m1).contains(&(dm * (k + 1))) {
                k += 1;
            }
            if k == 0 {
                continue;
            }
            let (ex, ey) = spec.plane(dn * k, dm * k);
            let _ = writeln!(
                s,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>",
                px(ox),
                py(oy),
                px(ex),
                py(ey)
            );
        }
    }

    for v in spec.points() {
        let (x, y) = spec.plane(v.n, v.m);
        let (cx, cy) = (px(x), py(y));
        let fill = if v.is_zero() { "black" } else { "#1f4e9c" };
        let _ = writeln!(
            s,
            "<circle class=\"point\" data-n=\"{}\" data-m=\"{}\" cx=\"{cx}\" cy=\"{cy}\" r=\"3\" fill=\"{fill}\"/>",
            v.n, v.m
        );
        if spec.annotate && !v.is_zero() {
            let dim = moduli_dim(v)?;
            let mut text = format!("{v} [{dim}]");
            if let Some((label, _)) = small_class_label(v) {
                text.push(' ');
                text.push_str(label);
            }
            let _ = writeln!(
                s,
                "<text x=\"{}\" y=\"{}\" font-size=\"8\" font-family=\"sans-serif\">{}</text>",
                cx + 4,
                cy - 4,
                escape(&text)
            );
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
