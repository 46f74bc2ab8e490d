//! A second, deliberately plain model of the templates.
//!
//! Cells live on a doubled lattice: 1R cell (i, j) sits at (2i, 2j); 2R
//! A-cells at (2i, 2j) and B-cells at (2i+1, 2j+1). Symmetries are integer
//! matrices about the template center, applied to cells; an edge is the
//! unordered pair of the cells it separates.

use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    One,
    Two,
}

pub type Mat = [[i64; 2]; 2];

const I: Mat = [[1, 0], [0, 1]];
const NEG: Mat = [[-1, 0], [0, -1]];
const ROT: Mat = [[0, -1], [1, 0]];
const ROT3: Mat = [[0, 1], [-1, 0]];
const MK: Mat = [[-1, 0], [0, 1]];
const ML: Mat = [[1, 0], [0, -1]];
const SWAP: Mat = [[0, 1], [1, 0]];
const ANTI: Mat = [[0, -1], [-1, 0]];

/// Group elements by label; `None` when the label needs a square template.
pub fn group(label: &str, square: bool) -> Option<Vec<Mat>> {
    let g = match label {
        "1" => vec![I],
        "2" => vec![I, NEG],
        "m-k" => vec![I, MK],
        "m-l" => vec![I, ML],
        "2mm" => vec![I, NEG, MK, ML],
        "4" => vec![I, ROT, NEG, ROT3],
        "md" => vec![I, SWAP],
        "md-anti" => vec![I, ANTI],
        "2mdmd" => vec![I, NEG, SWAP, ANTI],
        "4mmd" => vec![I, ROT, NEG, ROT3, MK, ML, SWAP, ANTI],
        _ => panic!("unknown label {label}"),
    };
    let needs_square = g.iter().any(|m| m[0][0] == 0);
    (square || !needs_square).then_some(g)
}

/// (grid, i, j): grid 0 is A, 1 is B.
pub type Key = (u8, u32, u32);

pub struct Model {
    pub kind: Kind,
    pub k: u32,
    pub l: u32,
    pub cells: Vec<Key>,
    pub pos: Vec<(i64, i64)>,
    at: HashMap<(i64, i64), usize>,
    /// Sorted by (cells[a], cells[b]) with a < b in key order.
    pub edges: Vec<(usize, usize)>,
    edge_at: HashMap<(usize, usize), usize>,
}

impl Model {
    pub fn new(kind: Kind, k: u32, l: u32) -> Model {
        let mut cells = Vec::new();
        let mut pos = Vec::new();
        for i in 0..k {
            for j in 0..l {
                cells.push((0, i, j));
                pos.push((2 * i as i64, 2 * j as i64));
            }
        }
        if kind == Kind::Two {
            for i in 0..k.saturating_sub(1) {
                for j in 0..l.saturating_sub(1) {
                    cells.push((1, i, j));
                    pos.push((2 * i as i64 + 1, 2 * j as i64 + 1));
                }
            }
        }
        let at: HashMap<_, _> = pos.iter().enumerate().map(|(c, &p)| (p, c)).collect();
        let steps: &[(i64, i64)] = match kind {
            Kind::One => &[(2, 0), (0, 2)],
            Kind::Two => &[(1, 1), (1, -1), (-1, 1), (-1, -1)],
        };
        let mut edges = Vec::new();
        for (a, &(x, y)) in pos.iter().enumerate() {
            for &(dx, dy) in steps {
                if let Some(&b) = at.get(&(x + dx, y + dy)) {
                    if cells[a] < cells[b] {
                        edges.push((a, b));
                    }
                }
            }
        }
        edges.sort_by_key(|&(a, b)| (cells[a], cells[b]));
        edges.dedup();
        let edge_at = edges.iter().enumerate().map(|(e, &p)| (p, e)).collect();
        Model { kind, k, l, cells, pos, at, edges, edge_at }
    }

    pub fn is_square(&self) -> bool {
        self.k == self.l
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn map_cell(&self, m: &Mat, c: usize) -> usize {
        // Twice the center, so that all arithmetic stays integral.
        let (cx2, cy2) = (2 * (self.k as i64 - 1), 2 * (self.l as i64 - 1));
        let (x, y) = self.pos[c];
        let (dx, dy) = (2 * x - cx2, 2 * y - cy2);
        let (rx, ry) = (m[0][0] * dx + m[0][1] * dy, m[1][0] * dx + m[1][1] * dy);
        let p = ((rx + cx2) / 2, (ry + cy2) / 2);
        *self.at.get(&p).expect("symmetry maps cells to cells")
    }

    pub fn map_edge(&self, m: &Mat, e: usize) -> usize {
        let (a, b) = self.edges[e];
        let (fa, fb) = (self.map_cell(m, a), self.map_cell(m, b));
        let key = if self.cells[fa] < self.cells[fb] { (fa, fb) } else { (fb, fa) };
        self.edge_at[&key]
    }

    fn classes(n: usize, image: impl Fn(usize) -> Vec<usize>) -> usize {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for x in 0..n {
            for y in image(x) {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                parent[rx] = ry;
            }
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    pub fn edge_orbit_count(&self, g: &[Mat]) -> usize {
        Self::classes(self.edges.len(), |e| g.iter().map(|m| self.map_edge(m, e)).collect())
    }

    pub fn cell_orbit_count(&self, g: &[Mat]) -> usize {
        Self::classes(self.cells.len(), |c| g.iter().map(|m| self.map_cell(m, c)).collect())
    }

    pub fn is_fixed(&self, g: &[Mat], mask: u64) -> bool {
        g.iter().all(|m| (0..self.edges.len()).all(|e| (mask >> e & 1) == (mask >> self.map_edge(m, e) & 1)))
    }

    /// Number of assignments fixed by every element of `g`, by exhaustion.
    pub fn brute_force_fixed(&self, g: &[Mat]) -> u64 {
        assert!(self.edges.len() <= 26, "too many edges for exhaustion");
        (0..1u64 << self.edges.len()).filter(|&mask| self.is_fixed(g, mask)).count() as u64
    }

    /// Loose-end directions of each cell as (N, E, S, W) flags.
    pub fn endsets(&self, mask: u64) -> Vec<[bool; 4]> {
        let dirs: [(i64, i64); 4] = match self.kind {
            Kind::One => [(0, 2), (2, 0), (0, -2), (-2, 0)],
            Kind::Two => [(1, 1), (1, -1), (-1, -1), (-1, 1)],
        };
        (0..self.cells.len())
            .map(|c| {
                let (x, y) = self.pos[c];
                dirs.map(|(dx, dy)| {
                    self.at.get(&(x + dx, y + dy)).is_some_and(|&o| {
                        let key = if self.cells[c] < self.cells[o] { (c, o) } else { (o, c) };
                        mask >> self.edge_at[&key] & 1 == 1
                    })
                })
            })
            .collect()
    }

    /// Tile names per cell.
    pub fn tile_names(&self, mask: u64) -> Vec<&'static str> {
        self.endsets(mask)
            .into_iter()
            .map(|s| match s.iter().filter(|&&b| b).count() {
                0 => "circle",
                1 => "drop",
                2 if s[0] == s[2] => "eye",
                2 => "door",
                3 => "fan",
                _ => "diamond",
            })
            .collect()
    }

    pub fn cell_name(&self, c: usize) -> String {
        let (g, i, j) = self.cells[c];
        format!("{},{i},{j}", if g == 0 { 'A' } else { 'B' })
    }
}
