use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kolam::enumeration::{brute_force_histogram, DEFAULT_BRUTE_FORCE_CAP};
use kolam::feasibility::TileMultiset;
use kolam::format::KolamFile;
use kolam::render::{RenderStyle, DEFAULT_CATALOG_CAP};
use kolam::symmetry::{subgroup_lattice, PointGroup};
use kolam::{
    count_with_symmetry, exact_symmetry_counts, parse_kolam, render_svg, serialize_kolam, Kolam, SymmetricGenerator,
    Template, TemplateShape, Variant,
};
use serde_json::Value;

use crate::api::{self, ApiError, ErrorKind};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INFEASIBLE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

/// Environment variable overriding the brute-force edge cap.
pub const MAX_EDGES_ENV: &str = "KOLAM_MAX_EDGES";

/// Largest class `enumerate` writes without an explicit `--limit`.
pub const ENUMERATE_CAP: u64 = 1 << 20;

#[derive(Debug, Parser)]
#[command(
    name = "kolam",
    version,
    about = "Square-tile sikku kolams: symmetry, enumeration, feasibility, tracing and rendering"
)]
pub struct Cli {
    /// Print JSON documents instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct TemplateArgs {
    /// Template variant.
    #[arg(long = "template", value_parser = parse_variant)]
    pub variant: Variant,
    #[arg(short, value_name = "K")]
    pub k: u32,
    #[arg(short, value_name = "L")]
    pub l: u32,
}

impl TemplateArgs {
    fn shape(self) -> TemplateShape {
        TemplateShape::new(self.variant, self.k, self.l)
    }
}

#[derive(Debug, Args, Clone, Copy)]
pub struct OptionalTemplateArgs {
    #[arg(long = "template", value_parser = parse_variant, requires_all = ["k", "l"])]
    pub variant: Option<Variant>,
    #[arg(short, value_name = "K", requires = "variant")]
    pub k: Option<u32>,
    #[arg(short, value_name = "L", requires = "variant")]
    pub l: Option<u32>,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: kolam::Error| e.to_string())
}

fn parse_group(s: &str) -> Result<PointGroup, String> {
    s.parse().map_err(|e: kolam::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumerateFormat {
    Jsonl,
    SvgDir,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of kolams invariant under a group.
    Count {
        #[command(flatten)]
        template: TemplateArgs,
        #[arg(long, value_parser = parse_group)]
        group: PointGroup,
        /// Also report how many kolams have exactly this symmetry.
        #[arg(long)]
        exact: bool,
    },
    /// Exponent table for square and near-square templates.
    Table {
        #[arg(long, default_value_t = 5)]
        max: u32,
    },
    /// Lists the kolams invariant under a group.
    Enumerate {
        #[command(flatten)]
        template: TemplateArgs,
        #[arg(long, value_parser = parse_group)]
        group: PointGroup,
        #[arg(long, default_value_t = 0)]
        offset: u64,
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, value_enum, default_value_t = EnumerateFormat::Jsonl)]
        format: EnumerateFormat,
        /// Output file (jsonl) or directory (svg-dir).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Largest class written without --limit.
        #[arg(long, default_value_t = ENUMERATE_CAP)]
        cap: u64,
    },
    /// Stabilizer of a kolam file.
    Classify {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Loops of a kolam file.
    Trace {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Renders a kolam file to SVG.
    Render {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// JSON render style.
        #[arg(long)]
        style: Option<PathBuf>,
    },
    /// Renders every kolam of a symmetry class on one sheet.
    Catalog {
        #[command(flatten)]
        template: TemplateArgs,
        #[arg(long, value_parser = parse_group)]
        group: PointGroup,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CATALOG_CAP)]
        cap: u64,
        #[arg(long)]
        style: Option<PathBuf>,
    },
    /// Necessary conditions on a tile inventory.
    Check {
        #[arg(long, default_value_t = 0)]
        circle: u64,
        #[arg(long, default_value_t = 0)]
        drop: u64,
        #[arg(long, default_value_t = 0)]
        eye: u64,
        #[arg(long, default_value_t = 0)]
        door: u64,
        #[arg(long, default_value_t = 0)]
        fan: u64,
        #[arg(long, default_value_t = 0)]
        diamond: u64,
        #[command(flatten)]
        template: OptionalTemplateArgs,
    },
    /// Searches for a kolam using exactly the given tiles.
    Compose {
        #[command(flatten)]
        template: TemplateArgs,
        /// Tile counts as JSON, e.g. {"drop":2}.
        #[arg(long)]
        multiset: String,
        /// Give up after this many search nodes.
        #[arg(long)]
        node_limit: Option<u64>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Minimum number of tiles determining a kolam of the given symmetry.
    MinTiles {
        #[command(flatten)]
        template: TemplateArgs,
        #[arg(long, value_parser = parse_group)]
        group: PointGroup,
    },
    /// Exhaustive consistency check of counts against stabilizers.
    Verify {
        /// Largest template (in shared edges) to scan; defaults to $KOLAM_MAX_EDGES or 24.
        #[arg(long)]
        max_edges: Option<usize>,
    },
    /// Starts the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Directory of static files served under /.
        #[arg(long)]
        ui: Option<PathBuf>,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<ApiError> for Failure {
    fn from(e: ApiError) -> Self {
        let code = match e.kind {
            ErrorKind::CapExceeded => EXIT_CAP,
            ErrorKind::Unprocessable => EXIT_INFEASIBLE,
            ErrorKind::BadRequest | ErrorKind::NotFound => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<kolam::Error> for Failure {
    fn from(e: kolam::Error) -> Self {
        ApiError::from(e).into()
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_failure(path, e))
}

fn read_kolam(path: &Path) -> Result<Kolam, Failure> {
    Ok(parse_kolam(&read(path)?)?)
}

fn read_style(path: Option<&Path>) -> Result<RenderStyle, Failure> {
    match path {
        None => Ok(RenderStyle::default()),
        Some(p) => serde_json::from_str(&read(p)?)
            .map_err(|e| Failure { code: EXIT_USAGE, message: format!("{}: {e}", p.display()) }),
    }
}

fn brute_force_cap() -> Result<usize, Failure> {
    match std::env::var(MAX_EDGES_ENV) {
        Err(_) => Ok(DEFAULT_BRUTE_FORCE_CAP),
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure { code: EXIT_USAGE, message: format!("{MAX_EDGES_ENV} must be an integer") }),
    }
}

struct Output<'a> {
    out: &'a mut dyn Write,
    json: bool,
}

impl Output<'_> {
    fn emit(&mut self, value: &Value, text: impl FnOnce() -> String) -> Result<(), Failure> {
        let s = if self.json { serde_json::to_string(value).expect("values serialize") } else { text() };
        writeln!(self.out, "{s}").map_err(|e| Failure { code: EXIT_USAGE, message: e.to_string() })
    }

    fn line(&mut self, s: &str) -> Result<(), Failure> {
        writeln!(self.out, "{s}").map_err(|e| Failure { code: EXIT_USAGE, message: e.to_string() })
    }
}

/// Parses arguments and runs; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    let mut out = Output { out: stdout, json: cli.json };
    match execute(cli.command, &mut out) {
        Ok(code) => code,
        Err(f) => {
            if out.json {
                let e = serde_json::json!({ "error": { "code": f.code, "message": f.message } });
                let _ = writeln!(stderr, "{e}");
            } else {
                let _ = writeln!(stderr, "error: {}", f.message);
            }
            f.code
        }
    }
}

fn execute(command: Command, out: &mut Output<'_>) -> Result<u8, Failure> {
    match command {
        Command::Count { template, group, exact } => {
            let t = api::build(template.shape())?;
            if !group.is_applicable(&t) {
                out.emit(&serde_json::json!({ "group": group.to_string(), "es": null, "count": "0" }), || {
                    format!("no kolam: {group} does not fit a {}x{} template", t.k(), t.l())
                })?;
                return Ok(EXIT_INFEASIBLE);
            }
            let mut value = api::count(&t, group)?;
            if exact {
                value["exact"] = Value::String(api::exact_count(&t, group)?);
            }
            out.emit(&value, || {
                let mut s = format!("E_s={} count={}", value["es"], value["count"].as_str().unwrap_or_default());
                if let Some(e) = value.get("exact").and_then(Value::as_str) {
                    s.push_str(&format!(" exact={e}"));
                }
                s
            })?;
            Ok(EXIT_OK)
        }
        Command::Table { max } => {
            let value = api::table_json(max)?;
            let text = api::table_text(max)?;
            out.emit(&value, || text.trim_end().to_string())?;
            Ok(EXIT_OK)
        }
        Command::Enumerate { template, group, offset, limit, format, out: path, cap } => {
            enumerate(template, group, offset, limit, format, path.as_deref(), cap, out)
        }
        Command::Classify { input } => {
            let k = read_kolam(&input)?;
            let value = api::classify(&k);
            out.emit(&value, || value["group"].as_str().unwrap_or_default().to_string())?;
            Ok(EXIT_OK)
        }
        Command::Trace { input } => {
            let k = read_kolam(&input)?;
            let value = api::trace(&k);
            out.emit(&value, || {
                let mut s = format!("loops={}", value["loop_count"]);
                for (i, lp) in value["loops"].as_array().into_iter().flatten().enumerate() {
                    let ports: Vec<&str> = lp.as_array().into_iter().flatten().filter_map(Value::as_str).collect();
                    s.push_str(&format!("\n{i}: {}", ports.join(" ")));
                }
                s
            })?;
            Ok(EXIT_OK)
        }
        Command::Render { input, out: path, style } => {
            let k = read_kolam(&input)?;
            let svg = api::render(&k, &read_style(style.as_deref())?)?;
            write(&path, &svg)?;
            out.emit(&serde_json::json!({ "written": path, "paths": kolam::loop_count(&k) }), || {
                format!("wrote {}", path.display())
            })?;
            Ok(EXIT_OK)
        }
        Command::Catalog { template, group, out: path, cap, style } => {
            let t = api::build(template.shape())?;
            let svg = api::catalog(&t, group, &read_style(style.as_deref())?, cap)?;
            write(&path, &svg)?;
            let n = count_with_symmetry(&t, group).count;
            out.emit(&serde_json::json!({ "written": path, "panes": n.to_string() }), || {
                format!("wrote {} ({n} kolams)", path.display())
            })?;
            Ok(EXIT_OK)
        }
        Command::Check { circle, drop, eye, door, fan, diamond, template } => {
            let m = TileMultiset::new(circle, drop, eye, door, fan, diamond);
            let shape = match (template.variant, template.k, template.l) {
                (Some(v), Some(k), Some(l)) => Some(TemplateShape::new(v, k, l)),
                _ => None,
            };
            let value = api::feasibility(&m, shape)?;
            let passed = value["verdict"] == "pass";
            out.emit(&value, || {
                let mut s = format!(
                    "verdict={} tiles={} loose_ends={}",
                    value["verdict"].as_str().unwrap_or_default(),
                    value["tiles"],
                    value["loose_ends"]
                );
                for f in value["failed"].as_array().into_iter().flatten() {
                    s.push_str(&format!(
                        "\n{}: {}",
                        f["id"].as_str().unwrap_or_default(),
                        f["message"].as_str().unwrap_or_default()
                    ));
                }
                s
            })?;
            Ok(if passed { EXIT_OK } else { EXIT_INFEASIBLE })
        }
        Command::Compose { template, multiset, node_limit, out: path } => {
            let m: TileMultiset = serde_json::from_str(&multiset)
                .map_err(|e| Failure { code: EXIT_USAGE, message: format!("--multiset: {e}") })?;
            let (value, found) = api::compose(template.shape(), &m, node_limit)?;
            if found {
                let file: KolamFile =
                    serde_json::from_value(value["kolam"].clone()).expect("composer emits kolam files");
                let text = serde_json::to_string(&file).expect("kolam files serialize");
                match path {
                    Some(p) => {
                        write(&p, &text)?;
                        out.emit(&value, || format!("wrote {}", p.display()))?;
                    }
                    None => out.emit(&value, || text.clone())?,
                }
                Ok(EXIT_OK)
            } else {
                out.emit(&value, || format!("infeasible: {}", value["reason"].as_str().unwrap_or_default()))?;
                Ok(EXIT_INFEASIBLE)
            }
        }
        Command::MinTiles { template, group } => {
            let t = api::build(template.shape())?;
            let value = api::min_tiles(&t, group)?;
            out.emit(&value, || {
                format!("oracle={} closed_form={} agrees={}", value["oracle"], value["closed_form"], value["agrees"])
            })?;
            Ok(EXIT_OK)
        }
        Command::Verify { max_edges } => verify(max_edges, out),
        Command::Serve { port, host, ui } => {
            let rt = tokio::runtime::Builder::new_multi_thread()
                .enable_all()
                .build()
                .map_err(|e| Failure { code: EXIT_USAGE, message: e.to_string() })?;
            rt.block_on(crate::service::serve((host, port).into(), ui))
                .map_err(|e| Failure { code: EXIT_USAGE, message: e.to_string() })?;
            Ok(EXIT_OK)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    template: TemplateArgs,
    group: PointGroup,
    offset: u64,
    limit: Option<u64>,
    format: EnumerateFormat,
    path: Option<&Path>,
    cap: u64,
    out: &mut Output<'_>,
) -> Result<u8, Failure> {
    let t: Arc<Template> = api::build(template.shape())?;
    if !group.is_applicable(&t) {
        return Err(kolam::Error::InapplicableSymmetry { op: group.to_string(), k: t.k(), l: t.l() }.into());
    }
    let generator = SymmetricGenerator::new(Arc::clone(&t), group)?;
    let total = generator.len();
    let limit = match limit {
        Some(n) => n,
        None => match u64::try_from(&total).ok().filter(|&n| n <= cap) {
            Some(n) => n.saturating_sub(offset),
            None => {
                return Err(
                    ApiError::cap(format!("{total} kolams exceed the cap of {cap}; pass --limit or --cap")).into()
                )
            }
        },
    };
    let indices = (0..limit).map_while(|i| offset.checked_add(i)).map_while(|i| generator.get(i).map(|k| (i, k)));
    match format {
        EnumerateFormat::Jsonl => {
            let mut sink: Box<dyn Write> = match path {
                Some(p) => Box::new(std::io::BufWriter::new(fs::File::create(p).map_err(|e| io_failure(p, e))?)),
                None => Box::new(std::io::sink()),
            };
            for (_, k) in indices {
                let line = serialize_kolam(&k);
                if path.is_some() {
                    writeln!(sink, "{line}").map_err(|e| io_failure(path.unwrap(), e))?;
                } else {
                    out.line(&line)?;
                }
            }
        }
        EnumerateFormat::SvgDir => {
            let dir = path.ok_or_else(|| Failure { code: EXIT_USAGE, message: "svg-dir needs --out DIR".into() })?;
            fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
            let style = RenderStyle::default();
            let mut written = 0u64;
            for (i, k) in indices {
                write(&dir.join(format!("kolam-{i:06}.svg")), &render_svg(&k, &style)?)?;
                written += 1;
            }
            out.emit(&serde_json::json!({ "written": written, "dir": dir }), || {
                format!("wrote {written} files to {}", dir.display())
            })?;
        }
    }
    Ok(EXIT_OK)
}

/// Checks, on every small template, that the stabilizer census from an
/// exhaustive scan matches both the orbit counts and the Möbius counts.
fn verify(max_edges: Option<usize>, out: &mut Output<'_>) -> Result<u8, Failure> {
    let cap = brute_force_cap()?;
    let max_edges = max_edges.unwrap_or(cap);
    if max_edges > cap {
        return Err(ApiError::cap(format!(
            "{max_edges} edges exceeds the brute-force cap of {cap} (set {MAX_EDGES_ENV})"
        ))
        .into());
    }
    let mut lines = Vec::new();
    let mut failures = 0;
    for v in [Variant::OneRect, Variant::TwoRect] {
        for k in 1..=max_edges as u32 + 1 {
            for l in k..=max_edges as u32 + 1 {
                let t = Template::build(v, k, l)?;
                if t.edge_count() > max_edges || (t.edge_count() == 0 && (k, l) != (1, 1)) {
                    continue;
                }
                let hist = brute_force_histogram(&t, cap)?;
                let mut ok = hist.total() == 1u64 << t.edge_count();
                for &g in subgroup_lattice(&t).groups() {
                    ok &= count_with_symmetry(&t, g).count == hist.fixed_by(g).into();
                }
                for (g, c) in exact_symmetry_counts(&t) {
                    ok &= c == hist.exact(g).into();
                }
                failures += usize::from(!ok);
                lines.push((t.shape(), t.edge_count(), ok));
            }
        }
    }
    let value = serde_json::json!({
        "templates": lines.iter().map(|(s, e, ok)| serde_json::json!({ "template": s, "edges": e, "ok": ok })).collect::<Vec<_>>(),
        "failures": failures,
    });
    out.emit(&value, || {
        let mut s: String = lines
            .iter()
            .map(|(shape, e, ok)| format!("{} {shape} edges={e}\n", if *ok { "ok  " } else { "FAIL" }))
            .collect();
        s.push_str(&format!("{} templates checked, {failures} failures", lines.len()));
        s
    })?;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_INFEASIBLE })
}
