//! Kolams as crossing assignments, and counting them by symmetry.
//!
//! A kolam is a template plus one boolean per shared edge. The tile at each
//! cell is whatever tile has loose ends exactly at that cell's crossed edges,
//! so every assignment is a valid kolam and boundary edges never carry ends.
//!
//! Counting "kolams with symmetry G" means counting assignments invariant
//! under every element of G. That number is `2^E` where `E` is the number of
//! edge orbits of G. Exact-stabilizer counts follow by Möbius inversion over
//! the subgroup lattice, and counts up to symmetry by Burnside's lemma.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::feasibility::TileMultiset;
use crate::symmetry::{
    edge_cycle_count, edge_orbit_indices, edge_permutation, stabilizer_of, subgroup_lattice, template_group,
    GroupLabel, MaskAction, PointGroup, SymOp,
};
use crate::template::{CellId, Template, TemplateShape, Variant};
use crate::tiles::{EdgeDir, EndSet, TilePlacement};

/// Default largest edge count the brute-force oracle will scan.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 24;

/// Hard limit imposed by the 64-bit assignment masks.
const MASK_LIMIT: usize = 63;

/// A template together with a crossing state for each shared edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kolam {
    template: Arc<Template>,
    crossings: Vec<bool>,
}

impl Kolam {
    pub fn new(template: Arc<Template>, crossings: Vec<bool>) -> Result<Kolam> {
        if crossings.len() != template.edge_count() {
            return Err(Error::CrossingLength { expected: template.edge_count(), found: crossings.len() });
        }
        Ok(Kolam { template, crossings })
    }

    pub fn uncrossed(template: Arc<Template>) -> Kolam {
        let n = template.edge_count();
        Kolam { template, crossings: vec![false; n] }
    }

    pub fn all_crossed(template: Arc<Template>) -> Kolam {
        let n = template.edge_count();
        Kolam { template, crossings: vec![true; n] }
    }

    /// Bit `e` of `mask` is the state of edge `e`.
    pub fn from_mask(template: Arc<Template>, mask: u64) -> Kolam {
        let crossings = (0..template.edge_count()).map(|e| mask >> e & 1 == 1).collect();
        Kolam { template, crossings }
    }

    pub fn template(&self) -> &Template {
        &self.template
    }

    pub fn template_arc(&self) -> &Arc<Template> {
        &self.template
    }

    pub fn crossings(&self) -> &[bool] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.iter().filter(|&&c| c).count()
    }

    /// Crossing states as a `0`/`1` string in edge-id order.
    pub fn crossing_string(&self) -> String {
        self.crossings.iter().map(|&c| if c { '1' } else { '0' }).collect()
    }

    /// Loose ends of the tile at cell index `cell`.
    pub fn endset(&self, cell: usize) -> EndSet {
        EdgeDir::ALL
            .into_iter()
            .filter(|&d| self.template.edge_of(cell, d).is_some_and(|e| self.crossings[e]))
            .collect()
    }

    pub fn tile(&self, cell: usize) -> TilePlacement {
        TilePlacement::from_endset(self.endset(cell))
    }

    pub fn tiles(&self) -> Vec<(CellId, TilePlacement)> {
        (0..self.template.cell_count()).map(|c| (self.template.cells()[c], self.tile(c))).collect()
    }

    pub fn stabilizer(&self) -> PointGroup {
        stabilizer_of(&self.template, &self.crossings)
    }

    pub fn tile_multiset(&self) -> TileMultiset {
        (0..self.template.cell_count()).map(|c| self.tile(c).kind).collect()
    }

    /// Image of this kolam under `op`.
    pub fn transformed(&self, op: SymOp) -> Result<Kolam> {
        let perm = edge_permutation(&self.template, op)?;
        let mut crossings = vec![false; self.crossings.len()];
        for (e, &img) in perm.iter().enumerate() {
            crossings[img] = self.crossings[e];
        }
        Ok(Kolam { template: Arc::clone(&self.template), crossings })
    }
}

/// Convenience for `Kolam::tile_multiset`.
pub fn tile_multiset_of(kolam: &Kolam) -> TileMultiset {
    kolam.tile_multiset()
}

/// Closed-form number of independently specifiable edges per template and
/// group label; `None` where no kolam of that symmetry exists.
pub fn closed_form_es(shape: &TemplateShape, label: GroupLabel) -> Option<u64> {
    let (k, l) = (shape.k as u64, shape.l as u64);
    if label.requires_square() && k != l {
        return None;
    }
    let n = k;
    let even = |x: u64| x.is_multiple_of(2);
    let es = match shape.variant {
        Variant::OneRect => match label {
            GroupLabel::Trivial => 2 * k * l - k - l,
            GroupLabel::MirrorK if even(k) => k * l - k / 2,
            GroupLabel::MirrorK => k * l - k.div_ceil(2),
            GroupLabel::MirrorL if even(l) => k * l - l / 2,
            GroupLabel::MirrorL => k * l - l.div_ceil(2),
            GroupLabel::MirrorDiag => n * (n - 1),
            GroupLabel::Rot2 if even(k + l) => k * l - (k + l) / 2,
            GroupLabel::Rot2 => k * l - (k + l - 1) / 2,
            GroupLabel::Rect if even(k * l) => k * l / 2,
            GroupLabel::Rect => (k * l - 1) / 2,
            GroupLabel::DiagRect | GroupLabel::Rot4 => n * (n - 1) / 2,
            GroupLabel::Full if even(n) => n * n / 4,
            GroupLabel::Full => (n * n - 1) / 4,
        },
        Variant::TwoRect => {
            let (a, b, m) = (k - 1, l - 1, n - 1);
            match label {
                GroupLabel::Trivial => 4 * (k * l + 1 - k - l),
                GroupLabel::MirrorK | GroupLabel::MirrorL | GroupLabel::Rot2 => 2 * a * b,
                GroupLabel::MirrorDiag => 2 * m * m + m,
                GroupLabel::Rect => a * b,
                GroupLabel::DiagRect => m * m + m,
                GroupLabel::Rot4 => m * m,
                GroupLabel::Full => (m * m + m) / 2,
            }
        }
    };
    Some(es)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountSource {
    ClosedForm,
    OrbitOracle,
}

fn big_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Number of kolams invariant under a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub group: PointGroup,
    /// Number of edge orbits; `None` when the group does not fit the template.
    pub es: Option<u64>,
    #[serde(serialize_with = "big_decimal")]
    pub count: BigUint,
    pub closed_form_es: Option<u64>,
    pub source: CountSource,
}

impl CountReport {
    pub fn is_no_kolam(&self) -> bool {
        self.es.is_none()
    }

    /// Whether the orbit count and the closed form agree (both absent counts as agreement).
    pub fn agrees(&self) -> bool {
        self.es == self.closed_form_es
    }
}

pub fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

/// `2^{orbits}` for the given group, cross-checked against the closed form.
pub fn count_with_symmetry(t: &Template, g: PointGroup) -> CountReport {
    let closed_form_es = closed_form_es(&t.shape(), g.label());
    match edge_orbit_indices(t, g) {
        Ok(orbits) => {
            let es = orbits.len() as u64;
            CountReport { group: g, es: Some(es), count: pow2(es), closed_form_es, source: CountSource::OrbitOracle }
        }
        Err(_) => {
            CountReport { group: g, es: None, count: BigUint::zero(), closed_form_es, source: CountSource::OrbitOracle }
        }
    }
}

/// Deterministic enumeration of the kolams invariant under a group.
///
/// Kolam `i` writes `i` in binary across the orbit representatives (the least
/// edge of each orbit, orbits sorted by representative), most significant bit
/// on the least representative, and copies each bit across its orbit.
#[derive(Debug, Clone)]
pub struct SymmetricGenerator {
    template: Arc<Template>,
    group: PointGroup,
    orbits: Vec<Vec<usize>>,
}

impl SymmetricGenerator {
    pub fn new(template: Arc<Template>, group: PointGroup) -> Result<SymmetricGenerator> {
        let orbits = edge_orbit_indices(&template, group)?;
        Ok(SymmetricGenerator { template, group, orbits })
    }

    pub fn group(&self) -> PointGroup {
        self.group
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn len(&self) -> BigUint {
        pow2(self.orbits.len() as u64)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Kolam at `index`, or `None` past the end.
    pub fn get(&self, index: u64) -> Option<Kolam> {
        let n = self.orbits.len();
        if n < 64 && index >> n != 0 {
            return None;
        }
        let mut crossings = vec![false; self.template.edge_count()];
        for (r, orbit) in self.orbits.iter().enumerate() {
            let shift = n - 1 - r;
            let bit = shift < 64 && (index >> shift) & 1 == 1;
            if bit {
                for &e in orbit {
                    crossings[e] = true;
                }
            }
        }
        Some(Kolam { template: Arc::clone(&self.template), crossings })
    }

    pub fn page(&self, offset: u64, limit: usize) -> Vec<Kolam> {
        (0..limit as u64).map_while(|i| offset.checked_add(i).and_then(|idx| self.get(idx))).collect()
    }
}

pub fn generate_with_symmetry(t: &Arc<Template>, g: PointGroup, offset: u64, limit: usize) -> Result<Vec<Kolam>> {
    Ok(SymmetricGenerator::new(Arc::clone(t), g)?.page(offset, limit))
}

/// Number of kolams whose stabilizer is exactly each subgroup, by Möbius
/// inversion: `exact(H) = 2^{orbits(H)} − Σ_{H′ ⊋ H} exact(H′)`.
pub fn exact_symmetry_counts(t: &Template) -> Vec<(PointGroup, BigUint)> {
    let lattice = subgroup_lattice(t);
    let mut exact: BTreeMap<PointGroup, BigUint> = BTreeMap::new();
    for &h in lattice.groups().iter().rev() {
        let fixed = pow2(edge_orbit_indices(t, h).expect("lattice groups are applicable").len() as u64);
        let above: BigUint = lattice.supergroups(h).map(|sup| &exact[&sup]).sum();
        exact.insert(h, fixed - above);
    }
    lattice.groups().iter().map(|g| (*g, exact[g].clone())).collect()
}

pub fn count_exact_symmetry(t: &Template, g: PointGroup) -> Result<BigUint> {
    if !g.is_applicable(t) {
        return Err(Error::InapplicableSymmetry { op: g.to_string(), k: t.k(), l: t.l() });
    }
    Ok(exact_symmetry_counts(t).into_iter().find(|(h, _)| *h == g).map(|(_, c)| c).unwrap())
}

/// Number of kolams up to the template's symmetries (Burnside's lemma).
pub fn count_up_to_symmetry(t: &Template) -> BigUint {
    let group = template_group(t);
    let total: BigUint =
        group.elements().map(|op| pow2(edge_cycle_count(t, op).expect("template group is applicable") as u64)).sum();
    total / BigUint::from(group.order())
}

/// Exhaustive stabilizer census over all assignments of a template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub counts: BTreeMap<PointGroup, u64>,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Assignments invariant under every element of `g`.
    pub fn fixed_by(&self, g: PointGroup) -> u64 {
        self.counts.iter().filter(|(h, _)| g.is_subgroup_of(**h)).map(|(_, c)| c).sum()
    }

    pub fn exact(&self, g: PointGroup) -> u64 {
        self.counts.get(&g).copied().unwrap_or(0)
    }
}

/// Computes the stabilizer of every one of the `2^edges` assignments.
pub fn brute_force_histogram(t: &Template, cap: usize) -> Result<Histogram> {
    let edges = t.edge_count();
    if edges > cap.min(MASK_LIMIT) {
        return Err(Error::CapExceeded { edges, cap: cap.min(MASK_LIMIT) });
    }
    let action = MaskAction::new(t);
    let total = 1u64 << edges;
    let chunk = 1u64 << 12;
    let counts = (0..total.div_ceil(chunk))
        .into_par_iter()
        .fold(
            || [0u64; 256],
            |mut acc, c| {
                for mask in c * chunk..((c + 1) * chunk).min(total) {
                    acc[action.stabilizer(mask).mask() as usize] += 1;
                }
                acc
            },
        )
        .reduce(
            || [0u64; 256],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let lattice = subgroup_lattice(t);
    let counts = lattice
        .groups()
        .iter()
        .filter(|g| counts[g.mask() as usize] > 0)
        .map(|&g| (g, counts[g.mask() as usize]))
        .collect();
    Ok(Histogram { counts })
}
