use std::fmt::Write;

use super::BoxStats;
use crate::graph::Graph;
use crate::layout::Layout;

#[derive(Debug, Clone)]
pub struct SvgStyle {
    /// Node radius in layout units; `None` scales it to the drawing.
    pub node_radius: Option<f64>,
    /// Edge width relative to the node radius.
    pub edge_width_ratio: f64,
    pub node_fill: String,
    pub edge_stroke: String,
    pub width_px: u32,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self {
            node_radius: None,
            edge_width_ratio: 0.35,
            node_fill: "#1f77b4".into(),
            edge_stroke: "#7f7f7f".into(),
            width_px: 800,
        }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Node-link drawing: edges as lines under nodes as circles. The viewBox is
/// the bounding box grown by 5% of its larger side on each edge.
pub fn render_layout_svg(layout: &Layout, graph: &Graph, style: &SvgStyle) -> String {
    let n = layout.node_count();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for i in 0..n {
        let p = layout.xy(i);
        for c in 0..2 {
            lo[c] = lo[c].min(p[c]);
            hi[c] = hi[c].max(p[c]);
        }
    }
    let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let margin = if extent > 0.0 { 0.05 * extent } else { 1.0 };
    let (w, h) = (hi[0] - lo[0] + 2.0 * margin, hi[1] - lo[1] + 2.0 * margin);
    let radius = style.node_radius.unwrap_or_else(|| {
        let base = if extent > 0.0 { extent } else { 1.0 };
        (base / (n as f64).sqrt().max(1.0) * 0.08).min(0.25 * base)
    });
    let height_px = (f64::from(style.width_px) * h / w).round() as u32;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        num(lo[0] - margin),
        num(lo[1] - margin),
        num(w),
        num(h),
        style.width_px,
        height_px.max(1)
    )
    .unwrap();
    writeln!(
        s,
        r#"<g class="edges" stroke="{}" stroke-width="{}" stroke-linecap="round">"#,
        escape(&style.edge_stroke),
        num(radius * style.edge_width_ratio)
    )
    .unwrap();
    for &(i, j) in graph.edges() {
        let (a, b) = (layout.xy(i), layout.xy(j));
        writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(a[0]), num(a[1]), num(b[0]), num(b[1])).unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, r#"<g class="nodes" fill="{}">"#, escape(&style.node_fill)).unwrap();
    for i in 0..n {
        let p = layout.xy(i);
        writeln!(s, r#"<circle cx="{}" cy="{}" r="{}"/>"#, num(p[0]), num(p[1]), num(radius)).unwrap();
    }
    writeln!(s, "</g>\n</svg>").unwrap();
    s
}

/// Box-and-whisker plot, one glyph per condition in the given order on a
/// shared vertical axis. Whiskers span min to max.
pub fn render_boxplot_svg(conditions: &[(String, BoxStats)], metric: &str) -> String {
    const LEFT: f64 = 70.0;
    const SLOT: f64 = 50.0;
    const TOP: f64 = 30.0;
    const BOTTOM: f64 = 270.0;
    let width = LEFT + SLOT * conditions.len().max(1) as f64 + 20.0;
    let height = BOTTOM + 40.0;

    let lo = conditions.iter().map(|(_, b)| b.min).fold(f64::INFINITY, f64::min);
    let hi = conditions.iter().map(|(_, b)| b.max).fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    };
    let y = |v: f64| BOTTOM - (v - lo) / (hi - lo) * (BOTTOM - TOP);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}" font-family="sans-serif" font-size="11">"#,
        w = num(width),
        h = num(height)
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="18" text-anchor="middle" font-size="13">{}</text>"#,
        num(width / 2.0),
        escape(metric)
    )
    .unwrap();
    writeln!(
        s,
        r##"<g class="axis" stroke="#000"><line x1="{l}" y1="{t}" x2="{l}" y2="{b}"/><line x1="{l}" y1="{b}" x2="{r}" y2="{b}"/></g>"##,
        l = num(LEFT - 10.0),
        t = num(TOP),
        b = num(BOTTOM),
        r = num(width - 10.0)
    )
    .unwrap();
    for v in [lo, hi] {
        writeln!(
            s,
            r#"<text class="tick" x="{}" y="{}" text-anchor="end">{}</text>"#,
            num(LEFT - 14.0),
            num(y(v) + 4.0),
            escape(&format!("{:.4}", v))
        )
        .unwrap();
    }
    for (k, (label, b)) in conditions.iter().enumerate() {
        let cx = LEFT + SLOT * (k as f64 + 0.5);
        let half = SLOT * 0.3;
        writeln!(s, r#"<g class="box" data-label="{}">"#, escape(label)).unwrap();
        writeln!(
            s,
            r##"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="#000"/>"##,
            num(y(b.min)),
            num(y(b.max)),
            x = num(cx)
        )
        .unwrap();
        for v in [b.min, b.max] {
            writeln!(
                s,
                r##"<line x1="{}" y1="{yy}" x2="{}" y2="{yy}" stroke="#000"/>"##,
                num(cx - half / 2.0),
                num(cx + half / 2.0),
                yy = num(y(v))
            )
            .unwrap();
        }
        writeln!(
            s,
            r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#9ecae1" stroke="#000"/>"##,
            num(cx - half),
            num(y(b.q3)),
            num(2.0 * half),
            num((y(b.q1) - y(b.q3)).max(0.0))
        )
        .unwrap();
        writeln!(
            s,
            r##"<line class="median" x1="{}" y1="{yy}" x2="{}" y2="{yy}" stroke="#d62728" stroke-width="2"/>"##,
            num(cx - half),
            num(cx + half),
            yy = num(y(b.median))
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            num(cx),
            num(BOTTOM + 16.0),
            escape(label)
        )
        .unwrap();
        writeln!(s, "</g>").unwrap();
    }
    writeln!(s, "</svg>").unwrap();
    s
}
