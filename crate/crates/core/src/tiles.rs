//! The six basic tiles and their loose-end configurations.
//!
//! A tile is fully described by the subset of its four edge midpoints that
//! carry a loose end. There are 16 such subsets and exactly 16 distinct
//! (kind, rotation) placements, so the two descriptions are interchangeable.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Tile-local edge direction. Quarter-turn rotation is clockwise N→E→S→W.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeDir {
    N,
    E,
    S,
    W,
}

impl EdgeDir {
    /// All four directions in clockwise order starting at N.
    pub const ALL: [EdgeDir; 4] = [EdgeDir::N, EdgeDir::E, EdgeDir::S, EdgeDir::W];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> EdgeDir {
        Self::ALL[i % 4]
    }

    /// Rotates clockwise by `quarter_turns`.
    pub fn rotate(self, quarter_turns: u8) -> EdgeDir {
        Self::from_index(self.index() + quarter_turns as usize)
    }

    pub fn opposite(self) -> EdgeDir {
        self.rotate(2)
    }

    /// Clockwise angle in degrees from `self` to `other`, in `0..360`.
    pub fn clockwise_to(self, other: EdgeDir) -> u16 {
        (((other.index() + 4 - self.index()) % 4) * 90) as u16
    }

    pub fn as_char(self) -> char {
        match self {
            EdgeDir::N => 'N',
            EdgeDir::E => 'E',
            EdgeDir::S => 'S',
            EdgeDir::W => 'W',
        }
    }
}

impl fmt::Display for EdgeDir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for EdgeDir {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "N" | "n" => Ok(EdgeDir::N),
            "E" | "e" => Ok(EdgeDir::E),
            "S" | "s" => Ok(EdgeDir::S),
            "W" | "w" => Ok(EdgeDir::W),
            _ => Err(Error::Parse(format!("unknown edge direction {s:?}"))),
        }
    }
}

/// A subset of the four edge directions, stored as a 4-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EndSet(u8);

impl EndSet {
    pub const EMPTY: EndSet = EndSet(0);
    pub const FULL: EndSet = EndSet(0b1111);

    pub fn from_bits(bits: u8) -> EndSet {
        EndSet(bits & 0b1111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, d: EdgeDir) -> bool {
        self.0 & (1 << d.index()) != 0
    }

    pub fn insert(&mut self, d: EdgeDir) {
        self.0 |= 1 << d.index();
    }

    pub fn with(mut self, d: EdgeDir) -> EndSet {
        self.insert(d);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members in clockwise order starting at N.
    pub fn iter(self) -> impl Iterator<Item = EdgeDir> {
        EdgeDir::ALL.into_iter().filter(move |d| self.contains(*d))
    }

    /// Image under a clockwise rotation by `quarter_turns`.
    pub fn rotate(self, quarter_turns: u8) -> EndSet {
        self.map(|d| d.rotate(quarter_turns))
    }

    /// Image under an arbitrary direction map.
    pub fn map(self, f: impl Fn(EdgeDir) -> EdgeDir) -> EndSet {
        self.iter().fold(EndSet::EMPTY, |acc, d| acc.with(f(d)))
    }

    /// All 16 subsets, in mask order.
    pub fn all() -> impl Iterator<Item = EndSet> {
        (0u8..16).map(EndSet)
    }
}

impl FromIterator<EdgeDir> for EndSet {
    fn from_iter<I: IntoIterator<Item = EdgeDir>>(iter: I) -> Self {
        iter.into_iter().fold(EndSet::EMPTY, EndSet::with)
    }
}

impl fmt::Display for EndSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, d) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

/// The six basic tile kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TileKind {
    /// No loose ends.
    Circle,
    /// One loose end.
    Drop,
    /// Two loose ends on opposite edges.
    Eye,
    /// Two loose ends on adjacent edges.
    Door,
    /// Three loose ends.
    Fan,
    /// Four loose ends.
    Diamond,
}

impl TileKind {
    pub const ALL: [TileKind; 6] =
        [TileKind::Circle, TileKind::Drop, TileKind::Eye, TileKind::Door, TileKind::Fan, TileKind::Diamond];

    pub fn loose_ends(self) -> usize {
        match self {
            TileKind::Circle => 0,
            TileKind::Drop => 1,
            TileKind::Eye | TileKind::Door => 2,
            TileKind::Fan => 3,
            TileKind::Diamond => 4,
        }
    }

    /// Number of distinct quarter-turn orientations.
    pub fn distinct_rotations(self) -> u8 {
        match self {
            TileKind::Circle | TileKind::Diamond => 1,
            TileKind::Eye => 2,
            TileKind::Drop | TileKind::Door | TileKind::Fan => 4,
        }
    }

    /// Loose ends at rotation 0.
    pub fn canonical_endset(self) -> EndSet {
        use EdgeDir::*;
        match self {
            TileKind::Circle => EndSet::EMPTY,
            TileKind::Drop => [N].into_iter().collect(),
            TileKind::Eye => [N, S].into_iter().collect(),
            TileKind::Door => [N, E].into_iter().collect(),
            TileKind::Fan => [N, E, S].into_iter().collect(),
            TileKind::Diamond => EndSet::FULL,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TileKind::Circle => "circle",
            TileKind::Drop => "drop",
            TileKind::Eye => "eye",
            TileKind::Door => "door",
            TileKind::Fan => "fan",
            TileKind::Diamond => "diamond",
        }
    }
}

impl fmt::Display for TileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TileKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TileKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown tile kind {s:?}")))
    }
}

/// A tile kind together with a canonical clockwise rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPlacement")]
pub struct TilePlacement {
    pub kind: TileKind,
    pub rotation: u8,
}

#[derive(Deserialize)]
struct RawPlacement {
    kind: TileKind,
    #[serde(default)]
    rotation: u8,
}

impl TryFrom<RawPlacement> for TilePlacement {
    type Error = Error;

    fn try_from(raw: RawPlacement) -> Result<Self, Self::Error> {
        if raw.rotation > 3 {
            return Err(Error::Parse(format!("rotation {} out of range 0..3", raw.rotation)));
        }
        Ok(TilePlacement::new(raw.kind, raw.rotation))
    }
}

impl TilePlacement {
    /// Builds a placement, collapsing rotations that produce the same endset.
    pub fn new(kind: TileKind, rotation: u8) -> TilePlacement {
        TilePlacement { kind, rotation: rotation % kind.distinct_rotations() }
    }

    /// The unique placement whose loose ends are exactly `ends`.
    pub fn from_endset(ends: EndSet) -> TilePlacement {
        let kind = match ends.len() {
            0 => TileKind::Circle,
            1 => TileKind::Drop,
            2 => {
                let mut it = ends.iter();
                let (a, b) = (it.next().unwrap(), it.next().unwrap());
                if a.opposite() == b {
                    TileKind::Eye
                } else {
                    TileKind::Door
                }
            }
            3 => TileKind::Fan,
            _ => TileKind::Diamond,
        };
        let canonical = kind.canonical_endset();
        let rotation = (0..kind.distinct_rotations())
            .find(|&q| canonical.rotate(q) == ends)
            .expect("every endset is a rotation of its kind's canonical endset");
        TilePlacement { kind, rotation }
    }

    pub fn endset(self) -> EndSet {
        self.kind.canonical_endset().rotate(self.rotation)
    }

    pub fn rotated(self, quarter_turns: u8) -> TilePlacement {
        TilePlacement::new(self.kind, (self.rotation + quarter_turns) % 4)
    }

    /// All 16 placements, grouped by kind.
    pub fn all() -> impl Iterator<Item = TilePlacement> {
        TileKind::ALL
            .into_iter()
            .flat_map(|k| (0..k.distinct_rotations()).map(move |r| TilePlacement { kind: k, rotation: r }))
    }

    pub fn is_self_mirror(self, axis: MirrorAxis) -> bool {
        let ends = self.endset();
        ends.map(|d| axis.reflect(d)) == ends
    }
}

impl fmt::Display for TilePlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind, self.rotation)
    }
}

/// `kind_of_endset` under its operational name.
pub fn kind_of_endset(ends: EndSet) -> TilePlacement {
    TilePlacement::from_endset(ends)
}

/// `endset_of` under its operational name.
pub fn endset_of(p: TilePlacement) -> EndSet {
    p.endset()
}

/// Reflection axes through the tile center, in the tile's own frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MirrorAxis {
    /// Horizontal line: swaps N and S.
    Horizontal,
    /// Vertical line: swaps E and W.
    Vertical,
    /// Line through the NE and SW corners: swaps N↔E and S↔W.
    DiagNe,
    /// Line through the NW and SE corners: swaps N↔W and E↔S.
    DiagNw,
}

impl MirrorAxis {
    pub const ALL: [MirrorAxis; 4] =
        [MirrorAxis::Horizontal, MirrorAxis::Vertical, MirrorAxis::DiagNe, MirrorAxis::DiagNw];

    pub fn reflect(self, d: EdgeDir) -> EdgeDir {
        use EdgeDir::*;
        match (self, d) {
            (MirrorAxis::Horizontal, N) => S,
            (MirrorAxis::Horizontal, S) => N,
            (MirrorAxis::Horizontal, other) => other,
            (MirrorAxis::Vertical, E) => W,
            (MirrorAxis::Vertical, W) => E,
            (MirrorAxis::Vertical, other) => other,
            (MirrorAxis::DiagNe, N) => E,
            (MirrorAxis::DiagNe, E) => N,
            (MirrorAxis::DiagNe, S) => W,
            (MirrorAxis::DiagNe, W) => S,
            (MirrorAxis::DiagNw, N) => W,
            (MirrorAxis::DiagNw, W) => N,
            (MirrorAxis::DiagNw, E) => S,
            (MirrorAxis::DiagNw, S) => E,
        }
    }

    /// Recovers the axis from a direction permutation, if it is one of the four reflections.
    pub fn from_permutation(perm: [EdgeDir; 4]) -> Option<MirrorAxis> {
        MirrorAxis::ALL.into_iter().find(|a| EdgeDir::ALL.iter().all(|&d| a.reflect(d) == perm[d.index()]))
    }
}

pub fn is_self_mirror(p: TilePlacement, axis: MirrorAxis) -> bool {
    p.is_self_mirror(axis)
}
