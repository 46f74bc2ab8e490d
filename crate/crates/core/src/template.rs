//! The single-rectangle (1R) and two-rectangle (2R) templates.
//!
//! Geometry is kept in integer *quarter units* so that every cell center and
//! every edge midpoint of both variants lands on an integer lattice point:
//!
//! * 1R: cell `(i, j)` has its center at `(i + ½, j + ½)`, tiles axis-aligned
//!   with unit sides.
//! * 2R: grid A centers sit at `(i, j)` and grid B centers at `(i + ½, j + ½)`;
//!   tiles are rotated 45° with a unit diagonal, and a tile's local N points
//!   toward template NE.
//!
//! k counts tiles along x, l along y.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tiles::EdgeDir;

/// Largest accepted side length.
pub const MAX_SIDE: u32 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "1r")]
    OneRect,
    #[serde(rename = "2r")]
    TwoRect,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::OneRect => "1r",
            Variant::TwoRect => "2r",
        }
    }

    /// Quarter-unit offset from a cell center to the midpoint of its edge `d`.
    pub fn dir_vector(self, d: EdgeDir) -> QPoint {
        match (self, d) {
            (Variant::OneRect, EdgeDir::N) => QPoint::new(0, 2),
            (Variant::OneRect, EdgeDir::E) => QPoint::new(2, 0),
            (Variant::OneRect, EdgeDir::S) => QPoint::new(0, -2),
            (Variant::OneRect, EdgeDir::W) => QPoint::new(-2, 0),
            (Variant::TwoRect, EdgeDir::N) => QPoint::new(1, 1),
            (Variant::TwoRect, EdgeDir::E) => QPoint::new(1, -1),
            (Variant::TwoRect, EdgeDir::S) => QPoint::new(-1, -1),
            (Variant::TwoRect, EdgeDir::W) => QPoint::new(-1, 1),
        }
    }

    /// Inverse of [`Variant::dir_vector`].
    pub fn dir_of_vector(self, v: QPoint) -> Option<EdgeDir> {
        EdgeDir::ALL.into_iter().find(|&d| self.dir_vector(d) == v)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1r" | "1R" => Ok(Variant::OneRect),
            "2r" | "2R" => Ok(Variant::TwoRect),
            _ => Err(Error::Parse(format!("unknown template variant {s:?}"))),
        }
    }
}

/// A point in quarter units of the template frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QPoint {
    pub x: i64,
    pub y: i64,
}

impl QPoint {
    pub const fn new(x: i64, y: i64) -> QPoint {
        QPoint { x, y }
    }

    /// Template-frame coordinates in units of the A-grid pitch.
    pub fn to_f64(self) -> (f64, f64) {
        (self.x as f64 / 4.0, self.y as f64 / 4.0)
    }
}

impl std::ops::Add for QPoint {
    type Output = QPoint;
    fn add(self, o: QPoint) -> QPoint {
        QPoint::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for QPoint {
    type Output = QPoint;
    fn sub(self, o: QPoint) -> QPoint {
        QPoint::new(self.x - o.x, self.y - o.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Grid {
    A,
    B,
}

/// Position-derived cell identifier; ordering is lexicographic on (grid, i, j).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId {
    pub grid: Grid,
    pub i: u32,
    pub j: u32,
}

impl CellId {
    pub const fn a(i: u32, j: u32) -> CellId {
        CellId { grid: Grid::A, i, j }
    }

    pub const fn b(i: u32, j: u32) -> CellId {
        CellId { grid: Grid::B, i, j }
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.grid {
            Grid::A => 'A',
            Grid::B => 'B',
        };
        write!(f, "{g},{},{}", self.i, self.j)
    }
}

impl FromStr for CellId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid cell id {s:?}, expected \"A,i,j\""));
        let mut parts = s.split(',');
        let grid = match parts.next().map(str::trim) {
            Some("A" | "a") => Grid::A,
            Some("B" | "b") => Grid::B,
            _ => return Err(bad()),
        };
        let i = parts.next().and_then(|p| p.trim().parse().ok()).ok_or_else(bad)?;
        let j = parts.next().and_then(|p| p.trim().parse().ok()).ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(CellId { grid, i, j })
    }
}

impl Serialize for CellId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CellId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A shared edge, named by its two cells in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId {
    pub lo: CellId,
    pub hi: CellId,
}

impl EdgeId {
    pub fn new(a: CellId, b: CellId) -> EdgeId {
        if a <= b {
            EdgeId { lo: a, hi: b }
        } else {
            EdgeId { lo: b, hi: a }
        }
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.lo, self.hi)
    }
}

impl FromStr for EdgeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("invalid edge id {s:?}, expected \"A,i,j|B,i,j\"")))?;
        Ok(EdgeId::new(a.parse()?, b.parse()?))
    }
}

impl Serialize for EdgeId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EdgeId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A shared edge with its geometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub midpoint: QPoint,
    /// Cell indices of `id.lo` and `id.hi`.
    pub cells: (usize, usize),
    /// Local direction of the edge as seen from `id.lo` and from `id.hi`.
    pub dirs: (EdgeDir, EdgeDir),
}

/// The serialized form of a template: variant and side lengths only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TemplateShape {
    pub variant: Variant,
    pub k: u32,
    pub l: u32,
}

impl TemplateShape {
    pub fn new(variant: Variant, k: u32, l: u32) -> TemplateShape {
        TemplateShape { variant, k, l }
    }

    pub fn is_square(&self) -> bool {
        self.k == self.l
    }

    pub fn cell_count(&self) -> u64 {
        let (k, l) = (self.k as u64, self.l as u64);
        match self.variant {
            Variant::OneRect => k * l,
            Variant::TwoRect => k * l + k.saturating_sub(1) * l.saturating_sub(1),
        }
    }

    pub fn shared_edge_count(&self) -> u64 {
        let (k, l) = (self.k as u64, self.l as u64);
        match self.variant {
            Variant::OneRect => (2 * k * l).saturating_sub(k + l),
            Variant::TwoRect => 4 * k.saturating_sub(1) * l.saturating_sub(1),
        }
    }

    pub fn build(&self) -> Result<Template> {
        Template::build(self.variant, self.k, self.l)
    }
}

impl fmt::Display for TemplateShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}x{}", self.variant, self.k, self.l)
    }
}

/// An immutable template: cells, shared edges and their adjacency.
#[derive(Debug, Clone)]
pub struct Template {
    shape: TemplateShape,
    cells: Vec<CellId>,
    centers: Vec<QPoint>,
    edges: Vec<Edge>,
    cell_edges: Vec<[Option<usize>; 4]>,
    cell_index: HashMap<CellId, usize>,
    cell_at: HashMap<QPoint, usize>,
    edge_at: HashMap<QPoint, usize>,
}

impl PartialEq for Template {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape
    }
}

impl Eq for Template {}

impl Template {
    pub fn build(variant: Variant, k: u32, l: u32) -> Result<Template> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidSize { k, l });
        }
        if k > MAX_SIDE || l > MAX_SIDE {
            return Err(Error::TooLarge { k, l, max: MAX_SIDE });
        }
        let shape = TemplateShape { variant, k, l };

        let mut cells = Vec::new();
        let mut centers = Vec::new();
        match variant {
            Variant::OneRect => {
                for i in 0..k {
                    for j in 0..l {
                        cells.push(CellId::a(i, j));
                        centers.push(QPoint::new(4 * i as i64 + 2, 4 * j as i64 + 2));
                    }
                }
            }
            Variant::TwoRect => {
                for i in 0..k {
                    for j in 0..l {
                        cells.push(CellId::a(i, j));
                        centers.push(QPoint::new(4 * i as i64, 4 * j as i64));
                    }
                }
                for i in 0..k.saturating_sub(1) {
                    for j in 0..l.saturating_sub(1) {
                        cells.push(CellId::b(i, j));
                        centers.push(QPoint::new(4 * i as i64 + 2, 4 * j as i64 + 2));
                    }
                }
            }
        }
        debug_assert!(cells.windows(2).all(|w| w[0] < w[1]));

        // Midpoints touched by exactly two cells are shared edges.
        let mut touching: HashMap<QPoint, Vec<(usize, EdgeDir)>> = HashMap::new();
        for (c, &center) in centers.iter().enumerate() {
            for d in EdgeDir::ALL {
                touching.entry(center + variant.dir_vector(d)).or_default().push((c, d));
            }
        }
        let mut edges: Vec<Edge> = touching
            .into_iter()
            .filter_map(|(midpoint, sides)| match sides.as_slice() {
                [(a, da), (b, db)] => {
                    let (lo, hi) = if cells[*a] < cells[*b] { ((*a, *da), (*b, *db)) } else { ((*b, *db), (*a, *da)) };
                    Some(Edge {
                        id: EdgeId { lo: cells[lo.0], hi: cells[hi.0] },
                        midpoint,
                        cells: (lo.0, hi.0),
                        dirs: (lo.1, hi.1),
                    })
                }
                [_] => None,
                _ => unreachable!("a midpoint is shared by at most two tiles"),
            })
            .collect();
        edges.sort_by_key(|a| a.id);

        let mut cell_edges = vec![[None; 4]; cells.len()];
        for (e, edge) in edges.iter().enumerate() {
            cell_edges[edge.cells.0][edge.dirs.0.index()] = Some(e);
            cell_edges[edge.cells.1][edge.dirs.1.index()] = Some(e);
        }
        let cell_index = cells.iter().enumerate().map(|(n, &c)| (c, n)).collect();
        let cell_at = centers.iter().enumerate().map(|(n, &p)| (p, n)).collect();
        let edge_at = edges.iter().enumerate().map(|(n, e)| (e.midpoint, n)).collect();

        Ok(Template { shape, cells, centers, edges, cell_edges, cell_index, cell_at, edge_at })
    }

    pub fn shape(&self) -> TemplateShape {
        self.shape
    }

    pub fn variant(&self) -> Variant {
        self.shape.variant
    }

    pub fn k(&self) -> u32 {
        self.shape.k
    }

    pub fn l(&self) -> u32 {
        self.shape.l
    }

    pub fn is_square(&self) -> bool {
        self.shape.is_square()
    }

    pub fn cells(&self) -> &[CellId] {
        &self.cells
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Center of the template, about which every symmetry acts.
    pub fn center(&self) -> QPoint {
        let (k, l) = (self.shape.k as i64, self.shape.l as i64);
        match self.shape.variant {
            Variant::OneRect => QPoint::new(2 * k, 2 * l),
            Variant::TwoRect => QPoint::new(2 * (k - 1), 2 * (l - 1)),
        }
    }

    pub fn cell_center(&self, cell: usize) -> QPoint {
        self.centers[cell]
    }

    pub fn cell_index(&self, c: CellId) -> Result<usize> {
        self.cell_index.get(&c).copied().ok_or(Error::UnknownCell(c))
    }

    pub fn edge_index(&self, e: EdgeId) -> Option<usize> {
        self.edges.binary_search_by(|x| x.id.cmp(&e)).ok()
    }

    pub fn cell_at(&self, p: QPoint) -> Option<usize> {
        self.cell_at.get(&p).copied()
    }

    pub fn edge_at(&self, p: QPoint) -> Option<usize> {
        self.edge_at.get(&p).copied()
    }

    /// Shared edge on side `d` of `cell`, if that side is not on the boundary.
    pub fn edge_of(&self, cell: usize, d: EdgeDir) -> Option<usize> {
        self.cell_edges[cell][d.index()]
    }

    /// Shared edges of a cell with the local direction they occupy, in N, E, S, W order.
    pub fn edges_of_cell(&self, c: CellId) -> Result<Vec<(EdgeId, EdgeDir)>> {
        let n = self.cell_index(c)?;
        Ok(EdgeDir::ALL
            .into_iter()
            .filter_map(|d| self.cell_edges[n][d.index()].map(|e| (self.edges[e].id, d)))
            .collect())
    }

    /// The cell across edge `d` of `cell`, if the edge is shared.
    pub fn neighbor(&self, cell: usize, d: EdgeDir) -> Option<(usize, EdgeDir)> {
        let e = &self.edges[self.edge_of(cell, d)?];
        if e.cells.0 == cell {
            Some((e.cells.1, e.dirs.1))
        } else {
            Some((e.cells.0, e.dirs.0))
        }
    }
}

impl Serialize for Template {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.shape.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Template {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        TemplateShape::deserialize(d)?.build().map_err(serde::de::Error::custom)
    }
}

pub fn build(variant: Variant, k: u32, l: u32) -> Result<Template> {
    Template::build(variant, k, l)
}
