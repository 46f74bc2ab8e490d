//! Necessary conditions on tile inventories, symmetry-imposed constraints,
//! partial-placement checks and a backtracking composer.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::enumeration::Kolam;
use crate::error::{Error, Result};
use crate::symmetry::{cell_orbit_indices, cell_permutation, Diagonal, GroupLabel, PointGroup};
use crate::template::{CellId, EdgeId, Template, TemplateShape, Variant};
use crate::tiles::{EdgeDir, TileKind, TilePlacement};

/// Condition ids carried by reports.
pub mod condition {
    pub const PARITY: &str = "eq2-parity";
    pub const ODD_ENDS: &str = "eq3-odd-ends";
    pub const BUDGET: &str = "eq4-budget";
    pub const SIZE: &str = "size-mismatch";
    pub const MIRROR_DOOR: &str = "s7-mirror-door";
    pub const MIRROR_TILE: &str = "s7-mirror-tile";
    pub const EXHAUSTED: &str = "search-exhausted";
    pub const LIMIT: &str = "search-limit";
}

/// Tile counts per kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TileMultiset {
    pub circle: u64,
    pub drop: u64,
    pub eye: u64,
    pub door: u64,
    pub fan: u64,
    pub diamond: u64,
}

impl TileMultiset {
    pub fn new(circle: u64, drop: u64, eye: u64, door: u64, fan: u64, diamond: u64) -> TileMultiset {
        TileMultiset { circle, drop, eye, door, fan, diamond }
    }

    pub fn get(&self, kind: TileKind) -> u64 {
        match kind {
            TileKind::Circle => self.circle,
            TileKind::Drop => self.drop,
            TileKind::Eye => self.eye,
            TileKind::Door => self.door,
            TileKind::Fan => self.fan,
            TileKind::Diamond => self.diamond,
        }
    }

    pub fn get_mut(&mut self, kind: TileKind) -> &mut u64 {
        match kind {
            TileKind::Circle => &mut self.circle,
            TileKind::Drop => &mut self.drop,
            TileKind::Eye => &mut self.eye,
            TileKind::Door => &mut self.door,
            TileKind::Fan => &mut self.fan,
            TileKind::Diamond => &mut self.diamond,
        }
    }

    /// Total tile count T.
    pub fn total(&self) -> u64 {
        TileKind::ALL.iter().map(|&k| self.get(k)).sum()
    }

    /// Total loose ends L.
    pub fn loose_ends(&self) -> u64 {
        TileKind::ALL.iter().map(|&k| self.get(k) * k.loose_ends() as u64).sum()
    }

    /// Number of loose-end pairs, when L is even.
    pub fn pairs(&self) -> Option<u64> {
        let l = self.loose_ends();
        l.is_multiple_of(2).then_some(l / 2)
    }

    fn as_array(&self) -> [u64; 6] {
        TileKind::ALL.map(|k| self.get(k))
    }
}

impl FromIterator<TileKind> for TileMultiset {
    fn from_iter<I: IntoIterator<Item = TileKind>>(iter: I) -> Self {
        let mut m = TileMultiset::default();
        for k in iter {
            *m.get_mut(k) += 1;
        }
        m
    }
}

impl fmt::Display for TileMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "C:{} Dr:{} E:{} Do:{} F:{} Di:{}",
            self.circle, self.drop, self.eye, self.door, self.fan, self.diamond
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailedCondition {
    pub id: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub verdict: Verdict,
    pub failed: Vec<FailedCondition>,
    pub tiles: u64,
    pub loose_ends: u64,
    pub pairs: Option<u64>,
    pub shared_edges: Option<u64>,
    /// `shared_edges < 2 * tiles`; holds for every template.
    pub edge_bound_holds: Option<bool>,
}

impl FeasibilityReport {
    fn new(m: &TileMultiset) -> FeasibilityReport {
        FeasibilityReport {
            verdict: Verdict::Pass,
            failed: Vec::new(),
            tiles: m.total(),
            loose_ends: m.loose_ends(),
            pairs: m.pairs(),
            shared_edges: None,
            edge_bound_holds: None,
        }
    }

    fn fail(&mut self, id: &'static str, message: String) {
        self.verdict = Verdict::Fail;
        self.failed.push(FailedCondition { id, message });
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn merge(mut self, other: FeasibilityReport) -> FeasibilityReport {
        for f in other.failed {
            if !self.failed.iter().any(|g| g.id == f.id) {
                self.fail(f.id, f.message);
            }
        }
        self.shared_edges = self.shared_edges.or(other.shared_edges);
        self.edge_bound_holds = self.edge_bound_holds.or(other.edge_bound_holds);
        self
    }
}

/// Drops plus Fans must be even for all loose ends to pair up.
pub fn parity_check(m: &TileMultiset) -> FeasibilityReport {
    let mut report = FeasibilityReport::new(m);
    let odd = m.drop + m.fan;
    if odd % 2 == 1 {
        report.fail(
            condition::PARITY,
            format!("{} Drops + {} Fans = {odd} is odd; some loose end stays unpaired", m.drop, m.fan),
        );
    }
    report
}

/// Loose-end pairs must fit in the template's shared edges.
pub fn edge_budget_check(m: &TileMultiset, t: &Template) -> Result<FeasibilityReport> {
    if m.total() != t.cell_count() as u64 {
        return Err(Error::SizeMismatch { tiles: m.total(), cells: t.cell_count() });
    }
    let mut report = FeasibilityReport::new(m);
    let edges = t.edge_count() as u64;
    report.shared_edges = Some(edges);
    report.edge_bound_holds = Some(edges < 2 * m.total());
    match m.pairs() {
        None => report.fail(condition::ODD_ENDS, format!("{} loose ends cannot be paired", m.loose_ends())),
        Some(n) if n > edges => {
            report.fail(condition::BUDGET, format!("{n} loose-end pairs exceed the {edges} shared edges"))
        }
        Some(_) => {}
    }
    Ok(report)
}

/// Parity, plus the edge budget when a template is given.
pub fn check(m: &TileMultiset, t: Option<&Template>) -> Result<FeasibilityReport> {
    let report = parity_check(m);
    match t {
        Some(t) => Ok(report.merge(edge_budget_check(m, t)?)),
        None => Ok(report),
    }
}

/// Value of a closed-form expression `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosedForm {
    Integral { value: u64 },
    NonIntegral { numerator: u64, denominator: u64 },
    Unavailable,
}

impl ClosedForm {
    fn ratio(num: u64, den: u64) -> ClosedForm {
        if num.is_multiple_of(den) {
            ClosedForm::Integral { value: num / den }
        } else {
            ClosedForm::NonIntegral { numerator: num, denominator: den }
        }
    }

    pub fn value(self) -> Option<u64> {
        match self {
            ClosedForm::Integral { value } => Some(value),
            _ => None,
        }
    }
}

/// Published closed forms for the minimum number of tiles that determine a
/// kolam of the given symmetry. Reproduced as stated, including the cases
/// that disagree with the cell-orbit count.
pub fn closed_form_min_tiles(shape: &TemplateShape, label: GroupLabel) -> ClosedForm {
    let (k, l) = (shape.k as u64, shape.l as u64);
    if label.requires_square() && k != l {
        return ClosedForm::Unavailable;
    }
    let t = shape.cell_count();
    let odd = |x: u64| x % 2 == 1;
    let r = ClosedForm::ratio;
    match (shape.variant, label) {
        (_, GroupLabel::Trivial) => r(t, 1),
        (_, GroupLabel::Rot4) if odd(t) => r(t - 1 + 4, 4),
        (_, GroupLabel::Rot4) => r(t, 4),
        (_, GroupLabel::Rot2) if odd(t) => r(t - 1 + 2, 2),
        (_, GroupLabel::Rot2) => r(t, 2),
        (Variant::OneRect, GroupLabel::MirrorK) => match (odd(k), odd(l)) {
            (false, _) => r(t, 2),
            (true, true) => r(t + l, 2),
            (true, false) => r(t + 1, 2),
        },
        (Variant::OneRect, GroupLabel::MirrorL) => match (odd(l), odd(k)) {
            (false, _) => r(t, 2),
            (true, true) => r(t + k, 2),
            (true, false) => r(t + 1, 2),
        },
        (Variant::TwoRect, GroupLabel::MirrorK | GroupLabel::MirrorL) => ClosedForm::Unavailable,
        (Variant::OneRect, GroupLabel::MirrorDiag) => r(t + k, 2),
        (Variant::TwoRect, GroupLabel::MirrorDiag) => r(t + 2 * k + 1, 2),
        (Variant::OneRect, GroupLabel::Rect) => match (odd(k), odd(l)) {
            (true, false) => r(t + l, 4),
            (false, true) => r(t + k, 4),
            (true, true) => r(t + l + k, 4),
            (false, false) => r(t, 4),
        },
        (Variant::TwoRect, GroupLabel::Rect) => match (odd(k), odd(l)) {
            (true, true) => r(t + k + l, 4),
            (false, false) => r(t + k + l - 2, 4),
            _ => r(t + k + l - 1, 4),
        },
        (Variant::OneRect, GroupLabel::DiagRect) if odd(k) => r(t + 2 * k + 1, 4),
        (Variant::OneRect, GroupLabel::DiagRect) => r(t + 2 * k, 4),
        (Variant::TwoRect, GroupLabel::DiagRect) => r(t + 4 * k - 1, 4),
        (Variant::OneRect, GroupLabel::Full) if odd(k) => r(t + 4 * k + 3, 8),
        (Variant::OneRect, GroupLabel::Full) => r(t + 2 * k, 8),
        (Variant::TwoRect, GroupLabel::Full) if odd(k) => r(t + 6 * k + 1, 8),
        (Variant::TwoRect, GroupLabel::Full) => r(t + 6 * k - 1, 8),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinTilesReport {
    pub group: PointGroup,
    /// Number of cell orbits: the tiles that must be chosen freely.
    pub oracle: u64,
    /// For a single diagonal mirror, the orbit count using the other diagonal.
    pub other_diagonal: Option<u64>,
    pub closed_form: ClosedForm,
    /// `None` when no closed form exists for this case.
    pub agrees: Option<bool>,
}

pub fn min_tiles_to_specify(t: &Template, g: PointGroup) -> Result<MinTilesReport> {
    let oracle = cell_orbit_indices(t, g)?.len() as u64;
    let other_diagonal = match g.diagonal() {
        Some(Diagonal::Main) => Some(cell_orbit_indices(t, PointGroup::mirror_diag(Diagonal::Anti))?.len() as u64),
        Some(Diagonal::Anti) => Some(cell_orbit_indices(t, PointGroup::mirror_diag(Diagonal::Main))?.len() as u64),
        None => None,
    };
    let closed_form = closed_form_min_tiles(&t.shape(), g.label());
    let agrees = match closed_form {
        ClosedForm::Unavailable => None,
        ClosedForm::NonIntegral { .. } => Some(false),
        ClosedForm::Integral { value } => Some(value == oracle),
    };
    Ok(MinTilesReport { group: g, oracle, other_diagonal, closed_form, agrees })
}

/// Tiles allowed on each cell lying on a mirror of `g`: those symmetric about
/// the mirror as seen in the tile's own frame. Cells on several mirrors must
/// satisfy all of them.
pub fn mirror_line_constraints(t: &Template, g: PointGroup) -> Result<BTreeMap<CellId, Vec<TilePlacement>>> {
    let mut allowed: BTreeMap<CellId, Vec<TilePlacement>> = BTreeMap::new();
    for mirror in g.mirrors() {
        let perm = cell_permutation(t, mirror)?;
        let axis = mirror.local_axis(t.variant()).expect("reflections induce a tile mirror");
        for (c, &img) in perm.iter().enumerate() {
            if img != c {
                continue;
            }
            let entry = allowed.entry(t.cells()[c]).or_insert_with(|| TilePlacement::all().collect());
            entry.retain(|p| p.is_self_mirror(axis));
        }
    }
    Ok(allowed)
}

/// A cell side, used for loose-end reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellSide {
    pub cell: CellId,
    pub dir: EdgeDir,
}

/// Tiles placed on some cells of a template.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPartial")]
pub struct PartialPlacement {
    #[serde(serialize_with = "serialize_arc_template")]
    template: Arc<Template>,
    placements: BTreeMap<CellId, TilePlacement>,
}

fn serialize_arc_template<S: serde::Serializer>(t: &Arc<Template>, s: S) -> std::result::Result<S::Ok, S::Error> {
    t.shape().serialize(s)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPartial {
    template: TemplateShape,
    #[serde(default)]
    placements: BTreeMap<CellId, TilePlacement>,
}

impl TryFrom<RawPartial> for PartialPlacement {
    type Error = Error;

    fn try_from(raw: RawPartial) -> Result<Self> {
        PartialPlacement::new(Arc::new(raw.template.build()?), raw.placements)
    }
}

impl PartialPlacement {
    pub fn new(template: Arc<Template>, placements: BTreeMap<CellId, TilePlacement>) -> Result<PartialPlacement> {
        for &c in placements.keys() {
            template.cell_index(c)?;
        }
        Ok(PartialPlacement { template, placements })
    }

    pub fn empty(template: Arc<Template>) -> PartialPlacement {
        PartialPlacement { template, placements: BTreeMap::new() }
    }

    /// The tiles a kolam induces, as a complete placement.
    pub fn from_kolam(kolam: &Kolam) -> PartialPlacement {
        PartialPlacement { template: Arc::clone(kolam.template_arc()), placements: kolam.tiles().into_iter().collect() }
    }

    pub fn template(&self) -> &Template {
        &self.template
    }

    pub fn placements(&self) -> &BTreeMap<CellId, TilePlacement> {
        &self.placements
    }

    pub fn place(&mut self, cell: CellId, p: TilePlacement) -> Result<Option<TilePlacement>> {
        self.template.cell_index(cell)?;
        Ok(self.placements.insert(cell, p))
    }

    pub fn remove(&mut self, cell: CellId) -> Option<TilePlacement> {
        self.placements.remove(&cell)
    }

    pub fn is_complete(&self) -> bool {
        self.placements.len() == self.template.cell_count()
    }

    /// The crossing vector of a complete and valid placement.
    pub fn to_kolam(&self) -> Option<Kolam> {
        if !validate_partial(self).complete_and_valid {
            return None;
        }
        let t = &self.template;
        let crossings = t.edges().iter().map(|e| self.placements[&e.id.lo].endset().contains(e.dirs.0)).collect();
        Kolam::new(Arc::clone(t), crossings).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlacementReport {
    /// Loose ends facing a shared edge whose neighbor is still empty.
    pub unmatched_ends: Vec<CellSide>,
    /// Shared edges where exactly one of two placed tiles has a loose end.
    pub conflicts: Vec<EdgeId>,
    /// Loose ends facing the template boundary.
    pub boundary_violations: Vec<CellSide>,
    pub complete: bool,
    pub complete_and_valid: bool,
}

pub fn validate_partial(p: &PartialPlacement) -> PlacementReport {
    let t = &p.template;
    let mut unmatched_ends = Vec::new();
    let mut boundary_violations = Vec::new();
    for (&cell, placement) in &p.placements {
        let c = t.cell_index(cell).expect("placements are validated on construction");
        for d in placement.endset().iter() {
            match t.neighbor(c, d) {
                None => boundary_violations.push(CellSide { cell, dir: d }),
                Some((other, _)) if !p.placements.contains_key(&t.cells()[other]) => {
                    unmatched_ends.push(CellSide { cell, dir: d })
                }
                Some(_) => {}
            }
        }
    }
    let conflicts: Vec<EdgeId> = t
        .edges()
        .iter()
        .filter(|e| match (p.placements.get(&e.id.lo), p.placements.get(&e.id.hi)) {
            (Some(a), Some(b)) => a.endset().contains(e.dirs.0) != b.endset().contains(e.dirs.1),
            _ => false,
        })
        .map(|e| e.id)
        .collect();
    let complete = p.is_complete();
    let complete_and_valid = complete && conflicts.is_empty() && boundary_violations.is_empty();
    PlacementReport { unmatched_ends, conflicts, boundary_violations, complete, complete_and_valid }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MirrorViolation {
    pub cell: CellId,
    pub placement: TilePlacement,
    pub condition: &'static str,
}

/// Placed tiles that break a mirror of `g` running through their cell.
pub fn mirror_violations(p: &PartialPlacement, g: PointGroup) -> Result<Vec<MirrorViolation>> {
    let allowed = mirror_line_constraints(&p.template, g)?;
    Ok(p.placements
        .iter()
        .filter(|(c, pl)| allowed.get(c).is_some_and(|ok| !ok.contains(pl)))
        .map(|(&cell, &placement)| MirrorViolation {
            cell,
            placement,
            condition: if placement.kind == TileKind::Door { condition::MIRROR_DOOR } else { condition::MIRROR_TILE },
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InfeasibleReason {
    Parity,
    SizeMismatch,
    OddLooseEnds,
    EdgeBudget,
    SearchExhausted,
    SearchLimit,
}

impl InfeasibleReason {
    pub fn id(self) -> &'static str {
        match self {
            InfeasibleReason::Parity => condition::PARITY,
            InfeasibleReason::SizeMismatch => condition::SIZE,
            InfeasibleReason::OddLooseEnds => condition::ODD_ENDS,
            InfeasibleReason::EdgeBudget => condition::BUDGET,
            InfeasibleReason::SearchExhausted => condition::EXHAUSTED,
            InfeasibleReason::SearchLimit => condition::LIMIT,
        }
    }

    /// Whether this reason proves that no kolam exists.
    pub fn is_proof(self) -> bool {
        self != InfeasibleReason::SearchLimit
    }
}

impl fmt::Display for InfeasibleReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Composition {
    Found(Kolam),
    Infeasible(InfeasibleReason),
}

/// Finds the lexicographically least crossing assignment realizing `m`.
pub fn compose_from_multiset(t: &Arc<Template>, m: &TileMultiset) -> Composition {
    compose_with_limit(t, m, None)
}

/// As [`compose_from_multiset`], giving up after `node_limit` search nodes.
pub fn compose_with_limit(t: &Arc<Template>, m: &TileMultiset, node_limit: Option<u64>) -> Composition {
    if !parity_check(m).passed() {
        return Composition::Infeasible(InfeasibleReason::Parity);
    }
    if m.total() != t.cell_count() as u64 {
        return Composition::Infeasible(InfeasibleReason::SizeMismatch);
    }
    let Some(pairs) = m.pairs() else {
        return Composition::Infeasible(InfeasibleReason::OddLooseEnds);
    };
    if pairs > t.edge_count() as u64 {
        return Composition::Infeasible(InfeasibleReason::EdgeBudget);
    }
    Composer::new(t, m, pairs as usize).run(node_limit)
}

struct Composer<'a> {
    template: &'a Arc<Template>,
    inventory: [i64; 6],
    target: usize,
    /// Cells whose last undecided edge is edge `e`.
    completes_at: Vec<Vec<usize>>,
    crossings: Vec<bool>,
    crossed: usize,
}

impl<'a> Composer<'a> {
    fn new(template: &'a Arc<Template>, m: &TileMultiset, target: usize) -> Composer<'a> {
        let mut completes_at = vec![Vec::new(); template.edge_count()];
        let mut inventory = m.as_array().map(|x| x as i64);
        for c in 0..template.cell_count() {
            let last = EdgeDir::ALL.into_iter().filter_map(|d| template.edge_of(c, d)).max();
            match last {
                Some(e) => completes_at[e].push(c),
                None => inventory[TileKind::Circle as usize] -= 1,
            }
        }
        Composer {
            template,
            inventory,
            target,
            completes_at,
            crossings: vec![false; template.edge_count()],
            crossed: 0,
        }
    }

    fn tile_kind(&self, c: usize) -> TileKind {
        let ends = EdgeDir::ALL
            .into_iter()
            .filter(|&d| self.template.edge_of(c, d).is_some_and(|e| self.crossings[e]))
            .collect();
        TilePlacement::from_endset(ends).kind
    }

    fn apply(&mut self, e: usize, value: bool) -> bool {
        self.crossings[e] = value;
        self.crossed += value as usize;
        let mut ok = true;
        for i in 0..self.completes_at[e].len() {
            let kind = self.tile_kind(self.completes_at[e][i]) as usize;
            self.inventory[kind] -= 1;
            ok &= self.inventory[kind] >= 0;
        }
        let remaining = self.crossings.len() - e - 1;
        ok && self.crossed <= self.target && self.crossed + remaining >= self.target
    }

    fn undo(&mut self, e: usize) {
        for i in 0..self.completes_at[e].len() {
            let kind = self.tile_kind(self.completes_at[e][i]) as usize;
            self.inventory[kind] += 1;
        }
        self.crossed -= self.crossings[e] as usize;
        self.crossings[e] = false;
    }

    fn run(mut self, node_limit: Option<u64>) -> Composition {
        if self.inventory.iter().any(|&x| x < 0) {
            return Composition::Infeasible(InfeasibleReason::SearchExhausted);
        }
        let n = self.crossings.len();
        if n == 0 {
            return Composition::Found(Kolam::uncrossed(Arc::clone(self.template)));
        }
        // tried[e]: 0 = nothing yet, 1 = uncrossed applied, 2 = crossed applied.
        let mut tried = vec![0u8; n];
        let mut e = 0usize;
        let mut nodes = 0u64;
        loop {
            if e == n {
                return Composition::Found(
                    Kolam::new(Arc::clone(self.template), self.crossings).expect("length matches template"),
                );
            }
            if tried[e] > 0 {
                self.undo(e);
            }
            if tried[e] == 2 {
                tried[e] = 0;
                if e == 0 {
                    return Composition::Infeasible(InfeasibleReason::SearchExhausted);
                }
                e -= 1;
                continue;
            }
            nodes += 1;
            if node_limit.is_some_and(|limit| nodes > limit) {
                return Composition::Infeasible(InfeasibleReason::SearchLimit);
            }
            let value = tried[e] == 1;
            tried[e] += 1;
            if self.apply(e, value) {
                e += 1;
            }
        }
    }
}
