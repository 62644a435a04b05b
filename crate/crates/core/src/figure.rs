//! SVG drawing of a vector triple and its oriented angles.
//!
//! The three vectors are drawn from the canvas center, scaled together so the
//! longest reaches [`RenderOptions::reach`] of the half-canvas. Each oriented
//! angle `oa(a,b)`, `oa(b,c)`, `oa(c,a)` is drawn as a counterclockwise arc
//! starting at the first vector of its pair, on its own radius so arcs that
//! cover the same directions stay distinguishable.
//!
//! Output is plain text built in a fixed element order with every coordinate
//! printed to six decimals, so identical inputs give identical bytes.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use thiserror::Error;

use crate::angle::{oriented_angle, AngleError, FloatVec2};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error(transparent)]
    Angle(#[from] AngleError),
    #[error("invalid render options: {0}")]
    InvalidOptions(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelMode {
    /// Label arcs unless two of them overlap by more than the threshold.
    Auto,
    Always,
    Never,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Width and height of the square canvas, in pixels.
    pub size: u32,
    /// Arc radii in pixels for `(a,b)`, `(b,c)`, `(c,a)`; strictly increasing.
    pub radii: [f64; 3],
    pub colors: [String; 3],
    pub vector_stroke: f64,
    pub arc_stroke: f64,
    pub labels: LabelMode,
    /// Angular overlap, in radians, above which `Auto` drops the arc labels.
    pub overlap_threshold: f64,
    /// Fraction of the half-canvas covered by the longest vector.
    pub reach: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            size: 400,
            radii: [40.0, 56.0, 72.0],
            colors: ["red".into(), "green".into(), "blue".into()],
            vector_stroke: 2.0,
            arc_stroke: 2.0,
            labels: LabelMode::Auto,
            overlap_threshold: 1e-3,
            reach: 0.85,
        }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<(), RenderError> {
        let bad = |m: &str| Err(RenderError::InvalidOptions(m.to_string()));
        if self.size == 0 {
            return bad("canvas size must be positive");
        }
        if !(self.radii[0] > 0.0 && self.radii[0] < self.radii[1] && self.radii[1] < self.radii[2])
        {
            return bad("arc radii must be positive and strictly increasing");
        }
        if !(self.reach > 0.0 && self.reach <= 1.0) {
            return bad("reach must be in (0, 1]");
        }
        if !(self.vector_stroke > 0.0 && self.arc_stroke > 0.0) {
            return bad("stroke widths must be positive");
        }
        Ok(())
    }
}

/// Fixed six-decimal rendering; negative zero prints as zero.
fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn unit(v: &FloatVec2) -> (f64, f64) {
    let len = v.length();
    (v.x / len, v.y / len)
}

/// Length of the intersection of two counterclockwise arcs `(start, sweep)`.
fn arc_overlap(a: (f64, f64), b: (f64, f64)) -> f64 {
    let shift = (b.0 - a.0).rem_euclid(TAU);
    let inside = |lo: f64, hi: f64| (hi.min(a.1) - lo.max(0.0)).max(0.0);
    let end = shift + b.1;
    inside(shift, end.min(TAU)) + inside(0.0, end - TAU)
}

struct Arc {
    start: (f64, f64),
    end: (f64, f64),
    start_angle: f64,
    sweep: f64,
}

pub fn render_triple_svg(
    a: &FloatVec2,
    b: &FloatVec2,
    c: &FloatVec2,
    opts: &RenderOptions,
) -> Result<String, RenderError> {
    opts.validate()?;
    let vectors = [a, b, c];
    let pairs = [(0usize, 1usize), (1, 2), (2, 0)];
    let names = ["a", "b", "c"];

    let mut arcs = Vec::with_capacity(3);
    for &(i, j) in &pairs {
        let sweep = oriented_angle(vectors[i], vectors[j])?.0;
        let start = unit(vectors[i]);
        arcs.push(Arc {
            start,
            end: unit(vectors[j]),
            start_angle: start.1.atan2(start.0),
            sweep,
        });
    }

    let max_overlap = [(0, 1), (1, 2), (2, 0)]
        .iter()
        .map(|&(i, j)| {
            arc_overlap(
                (arcs[i].start_angle, arcs[i].sweep),
                (arcs[j].start_angle, arcs[j].sweep),
            )
        })
        .fold(0.0f64, f64::max);
    let show_arc_labels = match opts.labels {
        LabelMode::Always => true,
        LabelMode::Never => false,
        LabelMode::Auto => max_overlap <= opts.overlap_threshold,
    };

    let size = f64::from(opts.size);
    let center = size / 2.0;
    let longest = vectors.iter().map(|v| v.length()).fold(0.0f64, f64::max);
    let scale = opts.reach * center / longest;
    // math y points up, SVG y points down
    let to_canvas = |x: f64, y: f64| (center + x, center - y);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        opts.size
    );

    let _ = writeln!(
        svg,
        r#"<g id="vectors" stroke="black" stroke-width="{}" stroke-linecap="round">"#,
        num(opts.vector_stroke)
    );
    for v in vectors {
        let (x, y) = to_canvas(v.x * scale, v.y * scale);
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(center),
            num(center),
            num(x),
            num(y)
        );
    }
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(
        svg,
        r#"<g id="arcs" fill="none" stroke-width="{}">"#,
        num(opts.arc_stroke)
    );
    for (k, arc) in arcs.iter().enumerate() {
        let r = opts.radii[k];
        let (sx, sy) = to_canvas(arc.start.0 * r, arc.start.1 * r);
        let (ex, ey) = to_canvas(arc.end.0 * r, arc.end.1 * r);
        let large = u8::from(arc.sweep > PI);
        // sweep-flag 0 is counterclockwise on screen once y is flipped
        let _ = writeln!(
            svg,
            r#"<path d="M {} {} A {} {} 0 {} 0 {} {}" stroke="{}"/>"#,
            num(sx),
            num(sy),
            num(r),
            num(r),
            large,
            num(ex),
            num(ey),
            opts.colors[k]
        );
    }
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(
        svg,
        r#"<g id="labels" font-family="sans-serif" font-size="14" text-anchor="middle">"#
    );
    for (v, name) in vectors.iter().zip(names) {
        let (ux, uy) = unit(v);
        let len = v.length() * scale + 12.0;
        let (x, y) = to_canvas(ux * len, uy * len);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}">{}</text>"#,
            num(x),
            num(y),
            name
        );
    }
    if show_arc_labels {
        for (k, (arc, &(i, j))) in arcs.iter().zip(&pairs).enumerate() {
            let mid = arc.start_angle + arc.sweep / 2.0;
            let r = opts.radii[k] + 10.0;
            let (x, y) = to_canvas(mid.cos() * r, mid.sin() * r);
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{}" fill="{}" font-size="11">θ({},{})</text>"#,
                num(x),
                num(y),
                opts.colors[k],
                names[i],
                names[j]
            );
        }
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}
