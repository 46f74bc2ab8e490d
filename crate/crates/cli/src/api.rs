//! Operations shared by the command line and the HTTP service. Every
//! function takes parsed inputs and returns the JSON document both front
//! ends emit, so the two cannot drift apart.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use kolam::enumeration::{count_exact_symmetry, count_up_to_symmetry, exact_symmetry_counts};
use kolam::feasibility::{self, compose_with_limit, mirror_violations, Composition, PartialPlacement, TileMultiset};
use kolam::format::KolamFile;
use kolam::render::{render_catalog, render_svg, RenderStyle};
use kolam::strands::TraceReport;
use kolam::symmetry::{template_group, GroupLabel, PointGroup};
use kolam::{
    closed_form_es, count_with_symmetry, min_tiles_to_specify, Kolam, SymmetricGenerator, Template, TemplateShape,
    Variant,
};
use serde::Deserialize;
use serde_json::{json, Value};

/// Largest page served by one enumeration request.
pub const PAGE_CAP: usize = 256;
/// Enumeration requests may not reach past this index.
pub const TOTAL_CAP: u64 = 1 << 20;
/// Search nodes allowed per compose request.
pub const COMPOSE_NODE_LIMIT: u64 = 20_000_000;
/// Largest template whose full geometry is listed.
pub const TEMPLATE_LISTING_CAP: usize = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    BadRequest,
    CapExceeded,
    Unprocessable,
    NotFound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiError {
    pub kind: ErrorKind,
    pub code: &'static str,
    pub message: String,
}

impl ApiError {
    pub fn bad_request(message: impl Into<String>) -> ApiError {
        ApiError { kind: ErrorKind::BadRequest, code: "bad-request", message: message.into() }
    }

    pub fn cap(message: impl Into<String>) -> ApiError {
        ApiError { kind: ErrorKind::CapExceeded, code: "cap-exceeded", message: message.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "code": self.code, "message": self.message } })
    }
}

impl fmt::Display for ApiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl std::error::Error for ApiError {}

impl From<kolam::Error> for ApiError {
    fn from(e: kolam::Error) -> Self {
        let kind = match e {
            kolam::Error::CapExceeded { .. } | kolam::Error::TooManyKolams { .. } => ErrorKind::CapExceeded,
            kolam::Error::InapplicableSymmetry { .. } => ErrorKind::Unprocessable,
            _ => ErrorKind::BadRequest,
        };
        ApiError { kind, code: e.code(), message: e.to_string() }
    }
}

impl From<serde_json::Error> for ApiError {
    fn from(e: serde_json::Error) -> Self {
        ApiError { kind: ErrorKind::BadRequest, code: "parse", message: e.to_string() }
    }
}

pub type ApiResult<T> = Result<T, ApiError>;

/// Query parameters as a string map.
pub type Params = HashMap<String, String>;

fn param<'a>(p: &'a Params, key: &str) -> ApiResult<&'a str> {
    p.get(key).map(String::as_str).ok_or_else(|| ApiError::bad_request(format!("missing parameter {key:?}")))
}

fn number<T: std::str::FromStr>(p: &Params, key: &str, default: Option<T>) -> ApiResult<T> {
    match (p.get(key), default) {
        (None, Some(d)) => Ok(d),
        (None, None) => Err(ApiError::bad_request(format!("missing parameter {key:?}"))),
        (Some(s), _) => {
            s.parse().map_err(|_| ApiError::bad_request(format!("parameter {key:?} must be a non-negative integer")))
        }
    }
}

pub fn shape_from_params(p: &Params) -> ApiResult<TemplateShape> {
    let variant: Variant = param(p, "variant")?.parse()?;
    Ok(TemplateShape::new(variant, number(p, "k", None)?, number(p, "l", None)?))
}

pub fn group_from_params(p: &Params) -> ApiResult<PointGroup> {
    Ok(param(p, "group")?.parse()?)
}

pub fn build(shape: TemplateShape) -> ApiResult<Arc<Template>> {
    Ok(Arc::new(shape.build()?))
}

fn require_applicable(t: &Template, g: PointGroup) -> ApiResult<()> {
    if g.is_applicable(t) {
        Ok(())
    } else {
        Err(kolam::Error::InapplicableSymmetry { op: g.to_string(), k: t.k(), l: t.l() }.into())
    }
}

pub fn template_info(t: &Template) -> ApiResult<Value> {
    if t.edge_count() + t.cell_count() > TEMPLATE_LISTING_CAP {
        return Err(ApiError::cap(format!(
            "template has {} cells and {} edges; listings are capped at {TEMPLATE_LISTING_CAP} items",
            t.cell_count(),
            t.edge_count()
        )));
    }
    let cells: Vec<Value> = (0..t.cell_count())
        .map(|c| {
            let (x, y) = t.cell_center(c).to_f64();
            json!({ "id": t.cells()[c], "x": x, "y": y })
        })
        .collect();
    let edges: Vec<Value> = t
        .edges()
        .iter()
        .map(|e| {
            let (x, y) = e.midpoint.to_f64();
            json!({ "id": e.id, "x": x, "y": y, "cells": [e.id.lo, e.id.hi], "dirs": [e.dirs.0, e.dirs.1] })
        })
        .collect();
    Ok(json!({
        "template": t.shape(),
        "cell_count": t.cell_count(),
        "edge_count": t.edge_count(),
        "group": template_group(t).to_string(),
        "cells": cells,
        "edges": edges,
    }))
}

pub fn count(t: &Template, g: PointGroup) -> ApiResult<Value> {
    require_applicable(t, g)?;
    let r = count_with_symmetry(t, g);
    Ok(json!({
        "group": g.to_string(),
        "es": r.es,
        "count": r.count.to_string(),
        "closed_form_es": r.closed_form_es,
    }))
}

/// Rows of the count table: k×k and k×(k+1) for every side up to `max`.
pub fn table_sizes(max: u32) -> Vec<(u32, u32)> {
    let mut sizes = Vec::new();
    for k in 1..=max {
        sizes.push((k, k));
        if k < max {
            sizes.push((k, k + 1));
        }
    }
    sizes
}

/// One row of the exponent table; `None` marks "no kolam".
pub type TableRow = (Variant, (u32, u32), Vec<Option<u64>>);

/// Exponent table for both variants.
pub fn table(max: u32) -> ApiResult<Vec<TableRow>> {
    if max == 0 || max > 64 {
        return Err(ApiError::bad_request("table size must be between 1 and 64"));
    }
    let mut rows = Vec::new();
    for v in [Variant::OneRect, Variant::TwoRect] {
        for (k, l) in table_sizes(max) {
            let t = Template::build(v, k, l)?;
            let row = GroupLabel::TABLE_ORDER.iter().map(|label| count_with_symmetry(&t, label.group()).es).collect();
            rows.push((v, (k, l), row));
        }
    }
    Ok(rows)
}

pub fn table_json(max: u32) -> ApiResult<Value> {
    let rows: Vec<Value> =
        table(max)?.into_iter().map(|(v, (k, l), row)| json!({ "variant": v, "k": k, "l": l, "es": row })).collect();
    let columns: Vec<&str> = GroupLabel::TABLE_ORDER.iter().map(|g| g.name()).collect();
    Ok(json!({ "columns": columns, "rows": rows }))
}

pub fn table_text(max: u32) -> ApiResult<String> {
    let mut out = String::new();
    let header: Vec<String> = GroupLabel::TABLE_ORDER.iter().map(|g| format!("{:>6}", g.name())).collect();
    let mut current = None;
    for (v, (k, l), row) in table(max)? {
        if current != Some(v) {
            out.push_str(&format!("{}\n{:<7}{}\n", v.name().to_uppercase(), "kxl", header.concat()));
            current = Some(v);
        }
        let cells: Vec<String> =
            row.iter().map(|e| format!("{:>6}", e.map_or("-".to_string(), |x| x.to_string()))).collect();
        out.push_str(&format!("{:<7}{}\n", format!("{k}x{l}"), cells.concat()));
    }
    Ok(out)
}

pub fn enumerate(t: &Arc<Template>, g: PointGroup, offset: u64, limit: usize) -> ApiResult<Value> {
    require_applicable(t, g)?;
    if limit > PAGE_CAP {
        return Err(ApiError::cap(format!("page size {limit} exceeds the cap of {PAGE_CAP}")));
    }
    if offset.saturating_add(limit as u64) > TOTAL_CAP {
        return Err(ApiError::cap(format!("requests may not reach past index {TOTAL_CAP}")));
    }
    let generator = SymmetricGenerator::new(Arc::clone(t), g)?;
    let kolams: Vec<KolamFile> = generator.page(offset, limit).iter().map(KolamFile::from_kolam).collect();
    Ok(json!({
        "group": g.to_string(),
        "total": generator.len().to_string(),
        "offset": offset,
        "kolams": kolams,
    }))
}

pub fn classify(k: &Kolam) -> Value {
    let s = k.stabilizer();
    let elements: Vec<&str> = s.elements().map(|op| op.name()).collect();
    json!({ "group": s.to_string(), "order": s.order(), "elements": elements, "tiles": k.tile_multiset() })
}

pub fn trace(k: &Kolam) -> Value {
    serde_json::to_value(TraceReport::new(k)).expect("trace reports serialize")
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderRequest {
    pub kolam: KolamFile,
    #[serde(default)]
    pub style: RenderStyle,
}

/// Accepts either a bare kolam file or `{"kolam": ..., "style": ...}`.
pub fn parse_render_request(body: &[u8]) -> ApiResult<(Kolam, RenderStyle)> {
    let value: Value = serde_json::from_slice(body)?;
    if value.get("kolam").is_some() {
        let req: RenderRequest = serde_json::from_value(value)?;
        Ok((req.kolam.to_kolam()?, req.style))
    } else {
        let file: KolamFile = serde_json::from_value(value)?;
        Ok((file.to_kolam()?, RenderStyle::default()))
    }
}

pub fn render(k: &Kolam, style: &RenderStyle) -> ApiResult<String> {
    Ok(render_svg(k, style)?)
}

pub fn catalog(t: &Arc<Template>, g: PointGroup, style: &RenderStyle, cap: u64) -> ApiResult<String> {
    require_applicable(t, g)?;
    Ok(render_catalog(t, g, style, cap)?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeasibilityRequest {
    pub multiset: TileMultiset,
    #[serde(default)]
    pub template: Option<TemplateShape>,
}

pub fn feasibility(m: &TileMultiset, shape: Option<TemplateShape>) -> ApiResult<Value> {
    let t = shape.map(build).transpose()?;
    let report = feasibility::check(m, t.as_deref())?;
    Ok(serde_json::to_value(report).expect("reports serialize"))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeRequest {
    pub template: TemplateShape,
    pub multiset: TileMultiset,
}

/// The composition result and whether a kolam was found.
pub fn compose(shape: TemplateShape, m: &TileMultiset, node_limit: Option<u64>) -> ApiResult<(Value, bool)> {
    let t = build(shape)?;
    Ok(match compose_with_limit(&t, m, node_limit) {
        Composition::Found(k) => (json!({ "status": "found", "kolam": KolamFile::from_kolam(&k) }), true),
        Composition::Infeasible(reason) => {
            (json!({ "status": "infeasible", "reason": reason.id(), "proven": reason.is_proof() }), false)
        }
    })
}

/// Body: a partial placement, optionally with a `"group"` whose mirrors
/// constrain the tiles placed on them.
pub fn validate_placement(body: &[u8]) -> ApiResult<Value> {
    let mut value: Value = serde_json::from_slice(body)?;
    let group = match value.as_object_mut().and_then(|o| o.remove("group")) {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.parse::<PointGroup>()?),
        Some(_) => return Err(ApiError::bad_request("group must be a string")),
    };
    let p: PartialPlacement = serde_json::from_value(value)?;
    let report = feasibility::validate_partial(&p);
    let mut out = serde_json::to_value(&report).expect("reports serialize");
    if let Some(g) = group {
        require_applicable(p.template(), g)?;
        out["mirror_violations"] = serde_json::to_value(mirror_violations(&p, g)?).expect("serializes");
    }
    if let Some(k) = p.to_kolam() {
        out["kolam"] = serde_json::to_value(KolamFile::from_kolam(&k)).expect("serializes");
        out["group"] = Value::String(k.stabilizer().to_string());
        out["loop_count"] = json!(kolam::loop_count(&k));
    }
    Ok(out)
}

pub fn min_tiles(t: &Template, g: PointGroup) -> ApiResult<Value> {
    require_applicable(t, g)?;
    Ok(serde_json::to_value(min_tiles_to_specify(t, g)?).expect("reports serialize"))
}

/// Exact-stabilizer counts for every subgroup and the count up to symmetry.
pub fn census(t: &Template) -> Value {
    let exact: Vec<Value> = exact_symmetry_counts(t)
        .into_iter()
        .map(|(g, c)| {
            json!({
                "group": g.to_string(),
                "exact": c.to_string(),
                "at_least": count_with_symmetry(t, g).count.to_string(),
                "closed_form_es": closed_form_es(&t.shape(), g.label()),
            })
        })
        .collect();
    json!({
        "template": t.shape(),
        "subgroups": exact,
        "up_to_symmetry": count_up_to_symmetry(t).to_string(),
    })
}

pub fn exact_count(t: &Template, g: PointGroup) -> ApiResult<String> {
    Ok(count_exact_symmetry(t, g)?.to_string())
}
