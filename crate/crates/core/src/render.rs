//! Deterministic SVG output.
//!
//! Geometry is computed in quarter units, where every strand endpoint and
//! every arc endpoint is a lattice point. Each strand leaves its midpoint on
//! a 45° segment that touches a circle of radius `h / sqrt(2)` about the dot
//! (`h` is the half-side of the tile), follows that circle clockwise and
//! leaves it on a 45° segment to the next midpoint. A 90° strand degenerates
//! to a straight segment, so a Diamond tile is drawn as a literal diamond.

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumeration::{Kolam, SymmetricGenerator};
use crate::error::{Error, Result};
use crate::format::serialize_kolam;
use crate::strands::{trace, Loop, Step};
use crate::symmetry::PointGroup;
use crate::template::{QPoint, Template, Variant};
use crate::tiles::EdgeDir;

/// Default largest catalog rendered without an explicit override.
pub const DEFAULT_CATALOG_CAP: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RenderStyle {
    pub tile_size: f64,
    pub stroke_width: f64,
    pub dot_radius: f64,
    pub stroke_color: String,
    pub dot_color: String,
    pub grid_color: String,
    pub crossing_color: String,
    pub show_grid: bool,
    pub show_dots: bool,
    pub show_crossing_marks: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            tile_size: 100.0,
            stroke_width: 3.0,
            dot_radius: 4.0,
            stroke_color: "#1d3557".into(),
            dot_color: "#111111".into(),
            grid_color: "#b0b0b0".into(),
            crossing_color: "#e63946".into(),
            show_grid: true,
            show_dots: true,
            show_crossing_marks: false,
        }
    }
}

impl RenderStyle {
    pub fn validate(&self) -> Result<()> {
        let finite_positive = |x: f64| x.is_finite() && x > 0.0;
        if !finite_positive(self.tile_size) || self.tile_size > 1.0e6 {
            return Err(Error::InvalidStyle("tile size must be positive and at most 1e6"));
        }
        if !finite_positive(self.stroke_width) {
            return Err(Error::InvalidStyle("stroke width must be positive"));
        }
        // The smallest strand radius is a quarter tile (2R templates).
        if !finite_positive(self.dot_radius) || self.dot_radius >= self.tile_size / 4.0 {
            return Err(Error::InvalidStyle("dot radius must be positive and below a quarter of the tile size"));
        }
        for c in [&self.stroke_color, &self.dot_color, &self.grid_color, &self.crossing_color] {
            if c.is_empty() || c.len() > 64 || !c.chars().all(|ch| ch.is_ascii_alphanumeric() || "#(),.% ".contains(ch))
            {
                return Err(Error::InvalidStyle("colors may only use letters, digits, spaces and #(),.%"));
            }
        }
        Ok(())
    }

    /// Quarter units to user units.
    fn unit(&self) -> f64 {
        self.tile_size / 4.0
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Unit lattice vector at a multiple of 45°. Diagonal vectors have length
/// `sqrt(2)`, matching the strand radius of 1R tiles.
fn lattice_dir(degrees: i32) -> QPoint {
    match degrees.rem_euclid(360) {
        0 => QPoint::new(1, 0),
        45 => QPoint::new(1, 1),
        90 => QPoint::new(0, 1),
        135 => QPoint::new(-1, 1),
        180 => QPoint::new(-1, 0),
        225 => QPoint::new(-1, -1),
        270 => QPoint::new(0, -1),
        315 => QPoint::new(1, -1),
        a => unreachable!("angle {a} is not a multiple of 45"),
    }
}

fn local_angle(d: EdgeDir) -> i32 {
    match d {
        EdgeDir::N => 90,
        EdgeDir::E => 0,
        EdgeDir::S => 270,
        EdgeDir::W => 180,
    }
}

/// Angle of a local direction in template coordinates.
fn template_angle(variant: Variant, local: i32) -> i32 {
    match variant {
        Variant::OneRect => local,
        Variant::TwoRect => local - 45,
    }
}

/// Strand radius in quarter units.
fn strand_radius(variant: Variant) -> f64 {
    match variant {
        Variant::OneRect => std::f64::consts::SQRT_2,
        Variant::TwoRect => 1.0,
    }
}

/// Maps quarter-unit template points to SVG user space.
struct Frame {
    min: QPoint,
    max: QPoint,
    unit: f64,
    margin: f64,
}

impl Frame {
    fn new(t: &Template, style: &RenderStyle) -> Frame {
        let (mut min, mut max) = (QPoint::new(i64::MAX, i64::MAX), QPoint::new(i64::MIN, i64::MIN));
        for c in 0..t.cell_count() {
            let p = t.cell_center(c);
            min = QPoint::new(min.x.min(p.x - 2), min.y.min(p.y - 2));
            max = QPoint::new(max.x.max(p.x + 2), max.y.max(p.y + 2));
        }
        Frame { min, max, unit: style.unit(), margin: style.tile_size / 4.0 }
    }

    fn width(&self) -> f64 {
        (self.max.x - self.min.x) as f64 * self.unit + 2.0 * self.margin
    }

    fn height(&self) -> f64 {
        (self.max.y - self.min.y) as f64 * self.unit + 2.0 * self.margin
    }

    fn xy(&self, p: QPoint) -> (f64, f64) {
        self.xy_f(p.x as f64, p.y as f64)
    }

    fn xy_f(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.min.x as f64) * self.unit + self.margin, (self.max.y as f64 - y) * self.unit + self.margin)
    }

    fn pt(&self, p: QPoint) -> String {
        let (x, y) = self.xy(p);
        format!("{} {}", num(x), num(y))
    }
}

struct StepGeometry {
    start: QPoint,
    tangent_in: QPoint,
    tangent_out: QPoint,
    end: QPoint,
    arc: i32,
}

fn step_geometry(t: &Template, step: &Step) -> StepGeometry {
    let v = t.variant();
    let center = t.cell_center(step.cell);
    let s = step.strand;
    let p_from = center + v.dir_vector(s.from);
    let p_to = center + v.dir_vector(s.to);
    let t_from = center + lattice_dir(template_angle(v, local_angle(s.from) - 45));
    let t_to = center + lattice_dir(template_angle(v, local_angle(s.to) + 45));
    let arc = s.span as i32 - 90;
    if step.forward {
        StepGeometry { start: p_from, tangent_in: t_from, tangent_out: t_to, end: p_to, arc }
    } else {
        StepGeometry { start: p_to, tangent_in: t_to, tangent_out: t_from, end: p_from, arc: -arc }
    }
}

fn loop_path(t: &Template, lp: &Loop, frame: &Frame) -> String {
    let v = t.variant();
    let r = num(strand_radius(v) * frame.unit);
    let mut d = String::new();
    match lp {
        Loop::Ring(c) => {
            let center = t.cell_center(*c);
            let rq = strand_radius(v);
            let (cx, cy) = (center.x as f64, center.y as f64);
            let east = frame.xy_f(cx + rq, cy);
            let west = frame.xy_f(cx - rq, cy);
            let _ = write!(
                d,
                "M {} {} A {r} {r} 0 1 1 {} {} A {r} {r} 0 1 1 {} {} Z",
                num(east.0),
                num(east.1),
                num(west.0),
                num(west.1),
                num(east.0),
                num(east.1)
            );
        }
        Loop::Strands(steps) => {
            for (i, step) in steps.iter().enumerate() {
                let g = step_geometry(t, step);
                if i == 0 {
                    let _ = write!(d, "M {}", frame.pt(g.start));
                }
                let _ = write!(d, " L {}", frame.pt(g.tangent_in));
                if g.arc != 0 {
                    let large = (g.arc.abs() > 180) as u8;
                    let sweep = (g.arc > 0) as u8;
                    let _ = write!(d, " A {r} {r} 0 {large} {sweep} {}", frame.pt(g.tangent_out));
                }
                if i + 1 == steps.len() {
                    d.push_str(" Z");
                } else {
                    let _ = write!(d, " L {}", frame.pt(g.end));
                }
            }
        }
    }
    d
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// SVG elements of one kolam, without the document wrapper.
fn kolam_body(kolam: &Kolam, style: &RenderStyle, frame: &Frame) -> String {
    let t = kolam.template();
    let mut out = String::new();
    if style.show_grid {
        let _ = writeln!(out, r#"<g class="grid" fill="none" stroke="{}" stroke-width="1">"#, style.grid_color);
        for c in 0..t.cell_count() {
            let p = t.cell_center(c);
            match t.variant() {
                Variant::OneRect => {
                    let (x, y) = frame.xy(QPoint::new(p.x - 2, p.y + 2));
                    let side = num(4.0 * frame.unit);
                    let _ = writeln!(out, r#"<rect x="{}" y="{}" width="{side}" height="{side}"/>"#, num(x), num(y));
                }
                Variant::TwoRect => {
                    let pts: Vec<String> = [(2, 0), (0, -2), (-2, 0), (0, 2)]
                        .iter()
                        .map(|&(dx, dy)| frame.pt(QPoint::new(p.x + dx, p.y + dy)).replace(' ', ","))
                        .collect();
                    let _ = writeln!(out, r#"<polygon points="{}"/>"#, pts.join(" "));
                }
            }
        }
        out.push_str("</g>\n");
    }

    let _ = writeln!(
        out,
        r#"<g class="strands" fill="none" stroke="{}" stroke-width="{}" stroke-linejoin="round">"#,
        style.stroke_color,
        num(style.stroke_width)
    );
    for lp in &trace(kolam).loops {
        let _ = writeln!(out, r#"<path d="{}"/>"#, loop_path(t, lp, frame));
    }
    out.push_str("</g>\n");

    if style.show_dots {
        let _ = writeln!(out, r#"<g class="dots" fill="{}">"#, style.dot_color);
        for c in 0..t.cell_count() {
            let (x, y) = frame.xy(t.cell_center(c));
            let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{}"/>"#, num(x), num(y), num(style.dot_radius));
        }
        out.push_str("</g>\n");
    }

    if style.show_crossing_marks {
        let _ = writeln!(out, r#"<g class="crossings" fill="{}">"#, style.crossing_color);
        for (e, edge) in t.edges().iter().enumerate() {
            if kolam.crossings()[e] {
                let (x, y) = frame.xy(edge.midpoint);
                let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{}"/>"#, num(x), num(y), num(style.stroke_width));
            }
        }
        out.push_str("</g>\n");
    }
    out
}

fn document(width: f64, height: f64, metadata: &str, body: &str) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <metadata>{}</metadata>\n{body}</svg>\n",
        escape(metadata),
        w = num(width),
        h = num(height),
    )
}

pub fn render_svg(kolam: &Kolam, style: &RenderStyle) -> Result<String> {
    style.validate()?;
    let frame = Frame::new(kolam.template(), style);
    let body = kolam_body(kolam, style, &frame);
    Ok(document(frame.width(), frame.height(), &serialize_kolam(kolam), &body))
}

/// The kolam stored in the metadata block of a rendered SVG.
pub fn embedded_kolam(svg: &str) -> Option<String> {
    let start = svg.find("<metadata>")? + "<metadata>".len();
    let end = svg[start..].find("</metadata>")? + start;
    Some(svg[start..end].replace("&lt;", "<").replace("&gt;", ">").replace("&amp;", "&"))
}

pub fn path_count(svg: &str) -> usize {
    svg.matches("<path ").count()
}

/// A sheet of every kolam with symmetry at least `g`, in generator order.
pub fn render_catalog(t: &Arc<Template>, g: PointGroup, style: &RenderStyle, cap: u64) -> Result<String> {
    style.validate()?;
    let generator = SymmetricGenerator::new(Arc::clone(t), g)?;
    let len = generator.len();
    let count = u64::try_from(&len)
        .ok()
        .filter(|&n| n <= cap)
        .ok_or_else(|| Error::TooManyKolams { count: len.to_string(), cap })?;
    let frame = Frame::new(t, style);
    let caption = style.tile_size / 3.0;
    let (pane_w, pane_h) = (frame.width(), frame.height() + caption);
    let columns = (count as f64).sqrt().ceil().max(1.0) as u64;
    let rows = count.div_ceil(columns).max(1);

    let panes: Vec<String> = (0..count)
        .into_par_iter()
        .map(|i| {
            let kolam = generator.get(i).expect("index below generator length");
            let (x, y) = ((i % columns) as f64 * pane_w, (i / columns) as f64 * pane_h);
            format!(
                "<g class=\"pane\" data-crossings=\"{}\" transform=\"translate({} {})\">\n\
                 <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\">#{i} {}</text>\n\
                 <g transform=\"translate(0 {})\">\n{}</g>\n</g>\n",
                kolam.crossing_string(),
                num(x),
                num(y),
                num(frame.margin),
                num(caption * 0.8),
                num(caption * 0.6),
                kolam.stabilizer().label().name(),
                num(caption),
                kolam_body(&kolam, style, &frame),
            )
        })
        .collect();

    let metadata = serde_json::json!({
        "template": t.shape(),
        "group": g.to_string(),
        "count": count,
    })
    .to_string();
    Ok(document(columns as f64 * pane_w, rows as f64 * pane_h, &metadata, &panes.concat()))
}
