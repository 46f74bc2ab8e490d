//! Curve-level structure of a kolam.
//!
//! Every loose end of a tile is a shared-edge midpoint flanked by two ports.
//! Inside a tile, strands connect ports clockwise around the dot. Across a
//! crossed edge, each port joins the neighbor's port of the same sign: the
//! `+` port of a midpoint leaves it towards one side of the edge, and the
//! straight continuation at 45° enters the neighbor on that same side, which
//! the neighbor (walking clockwise around its own dot) also labels `+`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::enumeration::Kolam;
use crate::error::{Error, Result};
use crate::template::CellId;
use crate::tiles::{EdgeDir, EndSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

/// One of the two curve ends flanking a loose-end midpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub cell: CellId,
    pub dir: EdgeDir,
    pub sign: Sign,
}

impl Port {
    pub fn new(cell: CellId, dir: EdgeDir, sign: Sign) -> Port {
        Port { cell, dir, sign }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.cell, self.dir, self.sign.as_char())
    }
}

impl FromStr for Port {
    type Err = Error;

    fn from_str(s: &str) -> Result<Port> {
        let bad = || Error::Parse(format!("bad port {s:?}"));
        let (rest, sign) = s.rsplit_once(',').ok_or_else(bad)?;
        let (cell, dir) = rest.rsplit_once(',').ok_or_else(bad)?;
        let sign = match sign {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            _ => return Err(bad()),
        };
        Ok(Port { cell: cell.parse()?, dir: dir.parse()?, sign })
    }
}

impl Serialize for Port {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Port {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A strand inside a tile: from the `+` port of `from` to the `-` port of
/// `to`, sweeping `span` degrees clockwise around the dot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalStrand {
    pub from: EdgeDir,
    pub to: EdgeDir,
    pub span: u16,
}

/// Strands of a tile with the given loose ends. An empty endset is a closed
/// ring, reported as `None`.
pub fn tile_strands(ends: EndSet) -> Option<Vec<LocalStrand>> {
    if ends.is_empty() {
        return None;
    }
    let dirs: Vec<EdgeDir> = ends.iter().collect();
    let strands = (0..dirs.len())
        .map(|i| {
            let from = dirs[i];
            let to = dirs[(i + 1) % dirs.len()];
            let span = match from.clockwise_to(to) {
                0 => 360,
                a => a,
            };
            LocalStrand { from, to, span }
        })
        .collect();
    Some(strands)
}

/// Total angle swept around the dot by the strands of a tile.
pub fn arc_coverage(ends: EndSet) -> u16 {
    match tile_strands(ends) {
        None => 360,
        Some(s) => s.iter().map(|x| x.span).sum(),
    }
}

/// A strand of a kolam, traversed in either direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub cell: usize,
    pub strand: LocalStrand,
    /// `true` when walked from `from` to `to`.
    pub forward: bool,
}

impl Step {
    pub fn start(&self) -> (EdgeDir, Sign) {
        if self.forward {
            (self.strand.from, Sign::Plus)
        } else {
            (self.strand.to, Sign::Minus)
        }
    }

    pub fn end(&self) -> (EdgeDir, Sign) {
        if self.forward {
            (self.strand.to, Sign::Minus)
        } else {
            (self.strand.from, Sign::Plus)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Loop {
    /// The closed curve of a Circle tile.
    Ring(usize),
    Strands(Vec<Step>),
}

impl Loop {
    pub fn strand_count(&self) -> usize {
        match self {
            Loop::Ring(_) => 1,
            Loop::Strands(s) => s.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub loops: Vec<Loop>,
    pub dangling_ports: usize,
}

impl Trace {
    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    /// Loop lengths in strands, sorted.
    pub fn length_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.loops.iter().map(Loop::strand_count).collect();
        v.sort_unstable();
        v
    }
}

fn port_slot(cell: usize, dir: EdgeDir, sign: Sign) -> usize {
    (cell * 4 + dir.index()) * 2 + (sign == Sign::Plus) as usize
}

fn slot_port(slot: usize) -> (usize, EdgeDir, Sign) {
    let sign = if slot % 2 == 1 { Sign::Plus } else { Sign::Minus };
    (slot / 8, EdgeDir::from_index((slot / 2) % 4), sign)
}

/// Traces all closed loops of a kolam, starting each loop at its least
/// unvisited port.
pub fn trace(kolam: &Kolam) -> Trace {
    let t = kolam.template();
    let n = t.cell_count();
    // For each port: the strand that touches it.
    let mut strand_at: Vec<Option<(usize, LocalStrand)>> = vec![None; n * 8];
    let mut loops = Vec::new();
    let mut port_count = 0;
    for c in 0..n {
        match tile_strands(kolam.endset(c)) {
            None => loops.push(Loop::Ring(c)),
            Some(strands) => {
                for s in strands {
                    strand_at[port_slot(c, s.from, Sign::Plus)] = Some((c, s));
                    strand_at[port_slot(c, s.to, Sign::Minus)] = Some((c, s));
                    port_count += 2;
                }
            }
        }
    }

    let join = |cell: usize, dir: EdgeDir, sign: Sign| -> Option<usize> {
        let (other, odir) = t.neighbor(cell, dir)?;
        kolam.endset(other).contains(odir).then(|| port_slot(other, odir, sign))
    };
    let mut dangling_ports = 0;
    for c in 0..n {
        for d in kolam.endset(c).iter() {
            for sign in [Sign::Minus, Sign::Plus] {
                if join(c, d, sign).is_none() {
                    dangling_ports += 1;
                }
            }
        }
    }

    let mut visited = vec![false; n * 8];
    let mut order: Vec<(usize, EdgeDir, Sign)> = Vec::with_capacity(port_count);
    for c in 0..n {
        for d in EdgeDir::ALL {
            for sign in [Sign::Minus, Sign::Plus] {
                if strand_at[port_slot(c, d, sign)].is_some() {
                    order.push((c, d, sign));
                }
            }
        }
    }
    order.sort_by_key(|&(c, d, s)| Port::new(t.cells()[c], d, s));

    for (c0, d0, s0) in order {
        if visited[port_slot(c0, d0, s0)] {
            continue;
        }
        let mut steps = Vec::new();
        let (mut c, mut d, mut s) = (c0, d0, s0);
        loop {
            let slot = port_slot(c, d, s);
            if visited[slot] {
                break;
            }
            let (cell, strand) = strand_at[slot].expect("port has a strand");
            let forward = s == Sign::Plus && strand.from == d;
            let step = Step { cell, strand, forward };
            let (ed, es) = step.end();
            visited[slot] = true;
            visited[port_slot(cell, ed, es)] = true;
            steps.push(step);
            match join(cell, ed, es) {
                Some(next) => (c, d, s) = slot_port(next),
                None => break,
            }
        }
        loops.push(Loop::Strands(steps));
    }
    Trace { loops, dangling_ports }
}

pub fn loop_count(kolam: &Kolam) -> usize {
    trace(kolam).loop_count()
}

/// Whether the curve makes exactly one full turn around each dot.
pub fn encirclement_check(kolam: &Kolam) -> Vec<bool> {
    (0..kolam.template().cell_count()).map(|c| arc_coverage(kolam.endset(c)) == 360).collect()
}

/// Wire form of a trace: loops as lists of port strings. A ring is a
/// one-element list holding its cell id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub loop_count: usize,
    pub loops: Vec<Vec<String>>,
    pub dangling_ports: usize,
    pub encircled: bool,
}

impl TraceReport {
    pub fn new(kolam: &Kolam) -> TraceReport {
        let tr = trace(kolam);
        let cells = kolam.template().cells();
        let loops = tr
            .loops
            .iter()
            .map(|lp| match lp {
                Loop::Ring(c) => vec![cells[*c].to_string()],
                Loop::Strands(steps) => steps
                    .iter()
                    .flat_map(|st| {
                        let (a, sa) = st.start();
                        let (b, sb) = st.end();
                        [Port::new(cells[st.cell], a, sa).to_string(), Port::new(cells[st.cell], b, sb).to_string()]
                    })
                    .collect(),
            })
            .collect();
        TraceReport {
            loop_count: tr.loop_count(),
            loops,
            dangling_ports: tr.dangling_ports,
            encircled: encirclement_check(kolam).into_iter().all(|x| x),
        }
    }
}
