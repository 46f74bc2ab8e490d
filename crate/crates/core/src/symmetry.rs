//! Point-group symmetry of templates and kolams.
//!
//! Every symmetry is one of the eight isometries of the square fixing the
//! template center. A [`PointGroup`] is a subgroup of those eight, stored as a
//! bitmask, and carries the label used for classification.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::template::{CellId, EdgeId, QPoint, Template, Variant};
use crate::tiles::{EdgeDir, MirrorAxis};

/// An isometry of the square about the template center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymOp {
    Identity,
    /// Quarter turn counterclockwise.
    Rot90,
    Rot180,
    Rot270,
    /// Mirror whose line is perpendicular to the k (x) direction: x ↦ −x.
    MirrorK,
    /// Mirror whose line is perpendicular to the l (y) direction: y ↦ −y.
    MirrorL,
    /// Mirror on the diagonal y = x.
    DiagMain,
    /// Mirror on the diagonal y = −x.
    DiagAnti,
}

impl SymOp {
    pub const ALL: [SymOp; 8] = [
        SymOp::Identity,
        SymOp::Rot90,
        SymOp::Rot180,
        SymOp::Rot270,
        SymOp::MirrorK,
        SymOp::MirrorL,
        SymOp::DiagMain,
        SymOp::DiagAnti,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Linear part as a row-major integer matrix.
    pub fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            SymOp::Identity => [[1, 0], [0, 1]],
            SymOp::Rot90 => [[0, -1], [1, 0]],
            SymOp::Rot180 => [[-1, 0], [0, -1]],
            SymOp::Rot270 => [[0, 1], [-1, 0]],
            SymOp::MirrorK => [[-1, 0], [0, 1]],
            SymOp::MirrorL => [[1, 0], [0, -1]],
            SymOp::DiagMain => [[0, 1], [1, 0]],
            SymOp::DiagAnti => [[0, -1], [-1, 0]],
        }
    }

    pub fn apply(self, v: QPoint) -> QPoint {
        let m = self.matrix();
        QPoint::new(m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y)
    }

    fn from_matrix(m: [[i64; 2]; 2]) -> SymOp {
        SymOp::ALL.into_iter().find(|op| op.matrix() == m).expect("closed under composition")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: SymOp) -> SymOp {
        let (a, b) = (self.matrix(), other.matrix());
        let mut m = [[0; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        SymOp::from_matrix(m)
    }

    pub fn inverse(self) -> SymOp {
        SymOp::ALL.into_iter().find(|&g| self.compose(g) == SymOp::Identity).unwrap()
    }

    pub fn is_reflection(self) -> bool {
        let m = self.matrix();
        m[0][0] * m[1][1] - m[0][1] * m[1][0] < 0
    }

    /// Quarter turns and diagonal mirrors only exist on square templates.
    pub fn requires_square(self) -> bool {
        matches!(self, SymOp::Rot90 | SymOp::Rot270 | SymOp::DiagMain | SymOp::DiagAnti)
    }

    pub fn is_applicable(self, t: &Template) -> bool {
        t.is_square() || !self.requires_square()
    }

    /// The induced map on tile-local directions of a cell the op carries onto another cell.
    pub fn map_dir(self, variant: Variant, d: EdgeDir) -> EdgeDir {
        variant.dir_of_vector(self.apply(variant.dir_vector(d))).expect("square isometries permute tile directions")
    }

    /// For a reflection, the tile-local mirror axis it induces on cells it fixes.
    pub fn local_axis(self, variant: Variant) -> Option<MirrorAxis> {
        if !self.is_reflection() {
            return None;
        }
        MirrorAxis::from_permutation(EdgeDir::ALL.map(|d| self.map_dir(variant, d)))
    }

    pub fn name(self) -> &'static str {
        match self {
            SymOp::Identity => "identity",
            SymOp::Rot90 => "rot90",
            SymOp::Rot180 => "rot180",
            SymOp::Rot270 => "rot270",
            SymOp::MirrorK => "mirror-k",
            SymOp::MirrorL => "mirror-l",
            SymOp::DiagMain => "diag-main",
            SymOp::DiagAnti => "diag-anti",
        }
    }
}

impl fmt::Display for SymOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Classification labels. `MirrorDiag` covers either diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupLabel {
    Trivial,
    Rot2,
    Rot4,
    MirrorK,
    MirrorL,
    MirrorDiag,
    Rect,
    DiagRect,
    Full,
}

impl GroupLabel {
    /// Column order of the count tables.
    pub const TABLE_ORDER: [GroupLabel; 9] = [
        GroupLabel::Trivial,
        GroupLabel::MirrorK,
        GroupLabel::MirrorL,
        GroupLabel::MirrorDiag,
        GroupLabel::Rot2,
        GroupLabel::Rect,
        GroupLabel::DiagRect,
        GroupLabel::Rot4,
        GroupLabel::Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GroupLabel::Trivial => "1",
            GroupLabel::Rot2 => "2",
            GroupLabel::Rot4 => "4",
            GroupLabel::MirrorK => "m-k",
            GroupLabel::MirrorL => "m-l",
            GroupLabel::MirrorDiag => "md",
            GroupLabel::Rect => "2mm",
            GroupLabel::DiagRect => "2mdmd",
            GroupLabel::Full => "4mmd",
        }
    }

    /// The canonical group for this label (main diagonal for `md`).
    pub fn group(self) -> PointGroup {
        use SymOp::*;
        let ops: &[SymOp] = match self {
            GroupLabel::Trivial => &[Identity],
            GroupLabel::Rot2 => &[Identity, Rot180],
            GroupLabel::Rot4 => &[Identity, Rot90, Rot180, Rot270],
            GroupLabel::MirrorK => &[Identity, MirrorK],
            GroupLabel::MirrorL => &[Identity, MirrorL],
            GroupLabel::MirrorDiag => &[Identity, DiagMain],
            GroupLabel::Rect => &[Identity, Rot180, MirrorK, MirrorL],
            GroupLabel::DiagRect => &[Identity, Rot180, DiagMain, DiagAnti],
            GroupLabel::Full => &SymOp::ALL,
        };
        PointGroup::from_ops(ops.iter().copied())
    }

    pub fn requires_square(self) -> bool {
        matches!(self, GroupLabel::Rot4 | GroupLabel::MirrorDiag | GroupLabel::DiagRect | GroupLabel::Full)
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupLabel::TABLE_ORDER
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown point group {s:?}")))
    }
}

impl Serialize for GroupLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for GroupLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Diagonal {
    Main,
    Anti,
}

/// A subgroup of the eight square isometries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointGroup {
    mask: u8,
}

impl PointGroup {
    pub fn trivial() -> PointGroup {
        PointGroup { mask: 1 }
    }

    /// Closure of the given ops under composition.
    pub fn from_ops(ops: impl IntoIterator<Item = SymOp>) -> PointGroup {
        let mut mask = 1u8;
        for op in ops {
            mask |= 1 << op.index();
        }
        loop {
            let mut next = mask;
            for a in SymOp::ALL.into_iter().filter(|a| mask & (1 << a.index()) != 0) {
                for b in SymOp::ALL.into_iter().filter(|b| mask & (1 << b.index()) != 0) {
                    next |= 1 << a.compose(b).index();
                }
            }
            if next == mask {
                return PointGroup { mask };
            }
            mask = next;
        }
    }

    pub fn mirror_diag(d: Diagonal) -> PointGroup {
        match d {
            Diagonal::Main => PointGroup::from_ops([SymOp::DiagMain]),
            Diagonal::Anti => PointGroup::from_ops([SymOp::DiagAnti]),
        }
    }

    pub fn mask(self) -> u8 {
        self.mask
    }

    pub fn contains(self, op: SymOp) -> bool {
        self.mask & (1 << op.index()) != 0
    }

    pub fn elements(self) -> impl Iterator<Item = SymOp> {
        SymOp::ALL.into_iter().filter(move |&op| self.contains(op))
    }

    pub fn order(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_subgroup_of(self, other: PointGroup) -> bool {
        self.mask & other.mask == self.mask
    }

    pub fn intersect(self, other: PointGroup) -> PointGroup {
        PointGroup { mask: self.mask & other.mask }
    }

    pub fn label(self) -> GroupLabel {
        use SymOp::*;
        let has = |op| self.contains(op);
        match self.order() {
            1 => GroupLabel::Trivial,
            2 if has(Rot180) => GroupLabel::Rot2,
            2 if has(MirrorK) => GroupLabel::MirrorK,
            2 if has(MirrorL) => GroupLabel::MirrorL,
            2 => GroupLabel::MirrorDiag,
            4 if has(Rot90) => GroupLabel::Rot4,
            4 if has(MirrorK) => GroupLabel::Rect,
            4 => GroupLabel::DiagRect,
            _ => GroupLabel::Full,
        }
    }

    /// Which diagonal a single-diagonal-mirror group uses.
    pub fn diagonal(self) -> Option<Diagonal> {
        match self.label() {
            GroupLabel::MirrorDiag if self.contains(SymOp::DiagMain) => Some(Diagonal::Main),
            GroupLabel::MirrorDiag => Some(Diagonal::Anti),
            _ => None,
        }
    }

    pub fn is_applicable(self, t: &Template) -> bool {
        self.elements().all(|op| op.is_applicable(t))
    }

    pub fn mirrors(self) -> impl Iterator<Item = SymOp> {
        self.elements().filter(|op| op.is_reflection())
    }

    fn check_applicable(self, t: &Template) -> Result<()> {
        match self.elements().find(|op| !op.is_applicable(t)) {
            Some(op) => Err(Error::InapplicableSymmetry { op: format!("{} ({op})", self.label()), k: t.k(), l: t.l() }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for PointGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label().name())?;
        if self.diagonal() == Some(Diagonal::Anti) {
            f.write_str("-anti")?;
        }
        Ok(())
    }
}

impl FromStr for PointGroup {
    type Err = Error;

    /// Accepts every label, plus `md-anti` for the anti-diagonal mirror.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md-anti" => Ok(PointGroup::mirror_diag(Diagonal::Anti)),
            "md-main" => Ok(PointGroup::mirror_diag(Diagonal::Main)),
            _ => Ok(s.parse::<GroupLabel>()?.group()),
        }
    }
}

impl Serialize for PointGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PointGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Full symmetry group of the empty template: 4mm_d when square, 2mm otherwise.
pub fn template_group(t: &Template) -> PointGroup {
    if t.is_square() {
        GroupLabel::Full.group()
    } else {
        GroupLabel::Rect.group()
    }
}

fn act_on_point(t: &Template, op: SymOp, p: QPoint) -> QPoint {
    let c = t.center();
    c + op.apply(p - c)
}

fn check_op(t: &Template, op: SymOp) -> Result<()> {
    if op.is_applicable(t) {
        Ok(())
    } else {
        Err(Error::InapplicableSymmetry { op: op.to_string(), k: t.k(), l: t.l() })
    }
}

pub fn act_on_edge(t: &Template, op: SymOp, e: EdgeId) -> Result<EdgeId> {
    check_op(t, op)?;
    let n = t.edge_index(e).ok_or_else(|| Error::Parse(format!("edge {e} is not in this template")))?;
    let image = act_on_point(t, op, t.edges()[n].midpoint);
    Ok(t.edges()[t.edge_at(image).expect("symmetry maps edges to edges")].id)
}

pub fn act_on_cell(t: &Template, op: SymOp, c: CellId) -> Result<CellId> {
    check_op(t, op)?;
    let n = t.cell_index(c)?;
    let image = act_on_point(t, op, t.cell_center(n));
    Ok(t.cells()[t.cell_at(image).expect("symmetry maps cells to cells")])
}

/// `perm[e]` is the index of the image of edge `e`.
pub fn edge_permutation(t: &Template, op: SymOp) -> Result<Vec<usize>> {
    check_op(t, op)?;
    Ok(t.edges()
        .iter()
        .map(|e| t.edge_at(act_on_point(t, op, e.midpoint)).expect("symmetry maps edges to edges"))
        .collect())
}

/// `perm[c]` is the index of the image of cell `c`.
pub fn cell_permutation(t: &Template, op: SymOp) -> Result<Vec<usize>> {
    check_op(t, op)?;
    Ok((0..t.cell_count())
        .map(|c| t.cell_at(act_on_point(t, op, t.cell_center(c))).expect("symmetry maps cells to cells"))
        .collect())
}

fn orbits_of(perms: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit: Vec<usize> = perms.iter().map(|p| p[start]).chain([start]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &x in &orbit {
            seen[x] = true;
        }
        orbits.push(orbit);
    }
    orbits
}

/// Edge orbits as sorted index lists, ordered by least member.
pub fn edge_orbit_indices(t: &Template, g: PointGroup) -> Result<Vec<Vec<usize>>> {
    g.check_applicable(t)?;
    let perms = g.elements().map(|op| edge_permutation(t, op)).collect::<Result<Vec<_>>>()?;
    Ok(orbits_of(&perms, t.edge_count()))
}

/// Cell orbits as sorted index lists, ordered by least member.
pub fn cell_orbit_indices(t: &Template, g: PointGroup) -> Result<Vec<Vec<usize>>> {
    g.check_applicable(t)?;
    let perms = g.elements().map(|op| cell_permutation(t, op)).collect::<Result<Vec<_>>>()?;
    Ok(orbits_of(&perms, t.cell_count()))
}

pub fn edge_orbits(t: &Template, g: PointGroup) -> Result<Vec<Vec<EdgeId>>> {
    Ok(edge_orbit_indices(t, g)?.into_iter().map(|o| o.into_iter().map(|e| t.edges()[e].id).collect()).collect())
}

pub fn cell_orbits(t: &Template, g: PointGroup) -> Result<Vec<Vec<CellId>>> {
    Ok(cell_orbit_indices(t, g)?.into_iter().map(|o| o.into_iter().map(|c| t.cells()[c]).collect()).collect())
}

/// Number of cycles of `op` acting on the shared edges.
pub fn edge_cycle_count(t: &Template, op: SymOp) -> Result<usize> {
    let perm = edge_permutation(t, op)?;
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
        }
    }
    Ok(cycles)
}

/// Largest subgroup of the template group leaving `crossings` unchanged.
pub fn stabilizer_of(t: &Template, crossings: &[bool]) -> PointGroup {
    let fixing = template_group(t).elements().filter(|&op| {
        let perm = edge_permutation(t, op).expect("template group is applicable");
        perm.iter().enumerate().all(|(e, &img)| crossings[e] == crossings[img])
    });
    PointGroup::from_ops(fixing)
}

/// Precomputed permutations of every template-group element, for repeated
/// stabilizer queries on bitmask assignments.
#[derive(Debug, Clone)]
pub struct MaskAction {
    ops: Vec<SymOp>,
    /// `tables[op][byte][value]`: image bits of `value` placed at byte `byte`.
    tables: Vec<Vec<[u64; 256]>>,
}

impl MaskAction {
    /// Requires at most 64 shared edges.
    pub fn new(t: &Template) -> MaskAction {
        assert!(t.edge_count() <= 64, "mask action needs at most 64 edges");
        let ops: Vec<SymOp> = template_group(t).elements().collect();
        let bytes = t.edge_count().div_ceil(8);
        let tables = ops
            .iter()
            .map(|&op| {
                let perm = edge_permutation(t, op).expect("template group is applicable");
                (0..bytes)
                    .map(|b| {
                        let mut table = [0u64; 256];
                        for (v, slot) in table.iter_mut().enumerate() {
                            for bit in 0..8 {
                                let e = b * 8 + bit;
                                if v & (1 << bit) != 0 && e < perm.len() {
                                    *slot |= 1 << perm[e];
                                }
                            }
                        }
                        table
                    })
                    .collect()
            })
            .collect();
        MaskAction { ops, tables }
    }

    pub fn image(&self, op_slot: usize, mask: u64) -> u64 {
        self.tables[op_slot]
            .iter()
            .enumerate()
            .fold(0, |acc, (b, table)| acc | table[((mask >> (8 * b)) & 0xff) as usize])
    }

    pub fn stabilizer(&self, mask: u64) -> PointGroup {
        let mut bits = 0u8;
        for (slot, op) in self.ops.iter().enumerate() {
            if self.image(slot, mask) == mask {
                bits |= 1 << op.index();
            }
        }
        PointGroup { mask: bits }
    }

    pub fn ops(&self) -> &[SymOp] {
        &self.ops
    }
}

/// All subgroups of a template's symmetry group with their containment relation.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    groups: Vec<PointGroup>,
}

impl SubgroupLattice {
    /// Subgroups ordered by increasing order, ties broken by mask.
    pub fn groups(&self) -> &[PointGroup] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Whether `groups[i] ⊆ groups[j]`.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.groups[i].is_subgroup_of(self.groups[j])
    }

    pub fn position(&self, g: PointGroup) -> Option<usize> {
        self.groups.iter().position(|&h| h == g)
    }

    /// Proper supergroups of `g` within the lattice.
    pub fn supergroups(&self, g: PointGroup) -> impl Iterator<Item = PointGroup> + '_ {
        self.groups.iter().copied().filter(move |&h| h != g && g.is_subgroup_of(h))
    }
}

pub fn subgroup_lattice(t: &Template) -> SubgroupLattice {
    let full = template_group(t);
    let mut groups: Vec<PointGroup> = (0u16..256)
        .map(|m| m as u8)
        .filter(|&m| m & 1 == 1 && m & full.mask == m)
        .map(|m| PointGroup { mask: m })
        .filter(|&g| PointGroup::from_ops(g.elements()) == g)
        .collect();
    groups.sort_by_key(|g| (g.order(), g.mask));
    SubgroupLattice { groups }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::template::build;

    fn t(variant: Variant, k: u32, l: u32) -> Template {
        build(variant, k, l).unwrap()
    }

    #[test]
    fn group_laws() {
        for a in SymOp::ALL {
            assert_eq!(a.compose(SymOp::Identity), a);
            assert_eq!(SymOp::Identity.compose(a), a);
            assert_eq!(a.compose(a.inverse()), SymOp::Identity);
            for b in SymOp::ALL {
                for c in SymOp::ALL {
                    assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
                }
            }
        }
        let orders: Vec<usize> = [
            GroupLabel::Trivial,
            GroupLabel::Rot2,
            GroupLabel::Rot4,
            GroupLabel::MirrorK,
            GroupLabel::MirrorL,
            GroupLabel::MirrorDiag,
            GroupLabel::Rect,
            GroupLabel::DiagRect,
            GroupLabel::Full,
        ]
        .iter()
        .map(|l| l.group().order())
        .collect();
        assert_eq!(orders, [1, 2, 4, 2, 2, 2, 4, 4, 8]);
    }

    #[test]
    fn labels_round_trip() {
        for label in GroupLabel::TABLE_ORDER {
            assert_eq!(label.group().label(), label);
            assert_eq!(label.name().parse::<GroupLabel>().unwrap(), label);
        }
        let anti: PointGroup = "md-anti".parse().unwrap();
        assert_eq!(anti.label(), GroupLabel::MirrorDiag);
        assert_eq!(anti.diagonal(), Some(Diagonal::Anti));
        assert_eq!(anti.to_string(), "md-anti");
        assert!("6mm".parse::<PointGroup>().is_err());
    }

    #[test]
    fn template_group_examples() {
        assert_eq!(template_group(&t(Variant::OneRect, 3, 3)).order(), 8);
        assert_eq!(template_group(&t(Variant::OneRect, 3, 4)).label(), GroupLabel::Rect);
        assert_eq!(template_group(&t(Variant::TwoRect, 2, 2)).label(), GroupLabel::Full);
    }

    #[test]
    fn act_on_edge_examples() {
        let tpl = t(Variant::OneRect, 1, 3);
        let e01 = EdgeId::new(CellId::a(0, 0), CellId::a(0, 1));
        let e12 = EdgeId::new(CellId::a(0, 1), CellId::a(0, 2));
        assert_eq!(act_on_edge(&tpl, SymOp::Identity, e01).unwrap(), e01);
        assert_eq!(act_on_edge(&tpl, SymOp::Rot180, e01).unwrap(), e12);
        assert!(matches!(act_on_edge(&tpl, SymOp::Rot90, e01), Err(Error::InapplicableSymmetry { .. })));

        let sq = t(Variant::OneRect, 2, 2);
        assert_eq!(edge_cycle_count(&sq, SymOp::Rot90).unwrap(), 1);
        let start = sq.edges()[0].id;
        let mut e = start;
        for _ in 0..3 {
            e = act_on_edge(&sq, SymOp::Rot90, e).unwrap();
            assert_ne!(e, start);
        }
        assert_eq!(act_on_edge(&sq, SymOp::Rot90, e).unwrap(), start);
    }

    #[test]
    fn action_laws() {
        for (variant, k, l) in [(Variant::OneRect, 4, 4), (Variant::TwoRect, 3, 3), (Variant::OneRect, 3, 5)] {
            let tpl = t(variant, k, l);
            let full = template_group(&tpl);
            for a in full.elements() {
                let pa = edge_permutation(&tpl, a).unwrap();
                let ca = cell_permutation(&tpl, a).unwrap();
                for b in full.elements() {
                    let pb = edge_permutation(&tpl, b).unwrap();
                    let pab = edge_permutation(&tpl, a.compose(b)).unwrap();
                    for e in 0..tpl.edge_count() {
                        assert_eq!(pab[e], pa[pb[e]]);
                    }
                }
                let mut sorted = pa.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (0..tpl.edge_count()).collect::<Vec<_>>());
                let mut sorted = ca.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (0..tpl.cell_count()).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn edge_orbit_examples() {
        let count = |v, k, l, g: GroupLabel| edge_orbits(&t(v, k, l), g.group()).unwrap().len();
        assert_eq!(count(Variant::OneRect, 5, 5, GroupLabel::Full), 6);
        assert_eq!(count(Variant::OneRect, 3, 3, GroupLabel::MirrorK), 7);
        assert_eq!(count(Variant::TwoRect, 3, 3, GroupLabel::DiagRect), 6);
        assert!(edge_orbits(&t(Variant::OneRect, 2, 3), GroupLabel::Rot4.group()).is_err());
    }

    #[test]
    fn orbits_partition_edges() {
        for variant in [Variant::OneRect, Variant::TwoRect] {
            for k in 1..=8 {
                for l in 1..=8 {
                    let tpl = t(variant, k, l);
                    for g in subgroup_lattice(&tpl).groups() {
                        let orbits = edge_orbit_indices(&tpl, *g).unwrap();
                        let mut all: Vec<usize> = orbits.iter().flatten().copied().collect();
                        all.sort_unstable();
                        assert_eq!(all, (0..tpl.edge_count()).collect::<Vec<_>>());
                    }
                    if k == l {
                        let n = |g: PointGroup| edge_orbit_indices(&tpl, g).unwrap().len();
                        assert_eq!(n(GroupLabel::MirrorK.group()), n(GroupLabel::MirrorL.group()));
                        assert_eq!(
                            n(PointGroup::mirror_diag(Diagonal::Main)),
                            n(PointGroup::mirror_diag(Diagonal::Anti))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lattice_sizes() {
        let sq = subgroup_lattice(&t(Variant::OneRect, 3, 3));
        assert_eq!(sq.len(), 10);
        let rect = subgroup_lattice(&t(Variant::OneRect, 2, 3));
        assert_eq!(rect.len(), 5);
        for lattice in [&sq, &rect] {
            let trivial = lattice.position(PointGroup::trivial()).unwrap();
            for j in 0..lattice.len() {
                assert!(lattice.contains(trivial, j));
            }
        }
        let labels: Vec<GroupLabel> = sq.groups().iter().map(|g| g.label()).collect();
        for label in GroupLabel::TABLE_ORDER {
            assert!(labels.contains(&label));
        }
    }

    #[test]
    fn stabilizer_examples() {
        let tpl = t(Variant::OneRect, 3, 3);
        assert_eq!(stabilizer_of(&tpl, &vec![false; tpl.edge_count()]).label(), GroupLabel::Full);

        // One crossed edge on 2x2: the stabilizer is the mirror through that edge.
        let sq = t(Variant::OneRect, 2, 2);
        for e in 0..4 {
            let mut x = vec![false; 4];
            x[e] = true;
            let g = stabilizer_of(&sq, &x);
            assert_eq!(g.order(), 2);
            let m = g.mirrors().next().unwrap();
            assert!(matches!(m, SymOp::MirrorK | SymOp::MirrorL));
            let perm = edge_permutation(&sq, m).unwrap();
            assert_eq!(perm[e], e);
        }
    }

    #[test]
    fn mask_action_matches_direct_stabilizer() {
        let tpl = t(Variant::OneRect, 2, 3);
        let action = MaskAction::new(&tpl);
        for mask in 0u64..(1 << tpl.edge_count()) {
            let x: Vec<bool> = (0..tpl.edge_count()).map(|e| mask >> e & 1 == 1).collect();
            assert_eq!(action.stabilizer(mask), stabilizer_of(&tpl, &x));
        }
    }

    #[test]
    fn local_axes() {
        assert_eq!(SymOp::MirrorK.local_axis(Variant::OneRect), Some(MirrorAxis::Vertical));
        assert_eq!(SymOp::MirrorL.local_axis(Variant::OneRect), Some(MirrorAxis::Horizontal));
        assert_eq!(SymOp::DiagMain.local_axis(Variant::OneRect), Some(MirrorAxis::DiagNe));
        assert_eq!(SymOp::DiagAnti.local_axis(Variant::OneRect), Some(MirrorAxis::DiagNw));
        assert_eq!(SymOp::MirrorK.local_axis(Variant::TwoRect), Some(MirrorAxis::DiagNw));
        assert_eq!(SymOp::MirrorL.local_axis(Variant::TwoRect), Some(MirrorAxis::DiagNe));
        assert_eq!(SymOp::DiagMain.local_axis(Variant::TwoRect), Some(MirrorAxis::Vertical));
        assert_eq!(SymOp::DiagAnti.local_axis(Variant::TwoRect), Some(MirrorAxis::Horizontal));
        assert_eq!(SymOp::Rot90.local_axis(Variant::OneRect), None);
    }
}
