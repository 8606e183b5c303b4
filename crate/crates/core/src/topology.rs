//! Butterfly and wrapped butterfly networks.
//!
//! A vertex of WB(r) is a pair (level, row) where `row` is the r-bit word read
//! as an unsigned integer. Level `i` is joined to level `i + 1 (mod r)` by a
//! straight edge (same row) and a cross edge (row with bit `i` flipped, bit 0
//! being the least significant bit).

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("dimension r = {0} is not supported (need r >= 2)")]
    InvalidDimension(u32),
    #[error("edge {0} is not an edge of WB({1})")]
    UnknownEdge(String, u32),
    #[error("{what} index {got} out of range 1..={max}")]
    Index {
        what: &'static str,
        got: u64,
        max: u64,
    },
    #[error("block map {k1} -> {k2} does not preserve edge {edge}")]
    VerificationFailed { k1: u64, k2: u64, edge: String },
    #[error("malformed label: {0}")]
    Label(String),
}

/// Largest dimension the generators accept. Keeps `1 << r` inside a `u64`
/// with plenty of room for edge counts.
pub const MAX_DIMENSION: u32 = 24;

fn check_dimension(r: u32) -> Result<(), TopologyError> {
    if (2..=MAX_DIMENSION).contains(&r) {
        Ok(())
    } else {
        Err(TopologyError::InvalidDimension(r))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeRef {
    pub level: u32,
    pub row: u64,
}

impl NodeRef {
    pub const fn new(level: u32, row: u64) -> Self {
        NodeRef { level, row }
    }

    /// The `(i, j)` labeling: level and 1-indexed position from the left.
    pub fn to_pair(self) -> (u32, u64) {
        (self.level, self.row + 1)
    }

    pub fn from_pair(r: u32, i: u32, j: u64) -> Result<Self, TopologyError> {
        check_dimension(r)?;
        let cols = 1u64 << r;
        if i >= r {
            return Err(TopologyError::Index {
                what: "level",
                got: i as u64,
                max: r as u64 - 1,
            });
        }
        if j == 0 || j > cols {
            return Err(TopologyError::Index {
                what: "position",
                got: j,
                max: cols,
            });
        }
        Ok(NodeRef::new(i, j - 1))
    }

    /// The `[w, i]` labeling: the row as an r-bit binary string, most
    /// significant bit first.
    pub fn to_word(self, r: u32) -> (String, u32) {
        (
            format!("{:0width$b}", self.row, width = r as usize),
            self.level,
        )
    }

    pub fn from_word(r: u32, word: &str, level: u32) -> Result<Self, TopologyError> {
        check_dimension(r)?;
        if word.len() != r as usize || !word.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(TopologyError::Label(format!(
                "{word:?} is not an {r}-bit word"
            )));
        }
        if level >= r {
            return Err(TopologyError::Index {
                what: "level",
                got: level as u64,
                max: r as u64 - 1,
            });
        }
        let row = u64::from_str_radix(word, 2).map_err(|e| TopologyError::Label(e.to_string()))?;
        Ok(NodeRef::new(level, row))
    }

    /// 1-indexed column `j` within its block, in 1..=4.
    pub fn block_column(self) -> u8 {
        (self.row & 3) as u8 + 1
    }

    /// 1-indexed block (ring) number.
    pub fn block(self) -> u64 {
        (self.row >> 2) + 1
    }
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.level, self.row)
    }
}

/// Coarse grouping used by the crossing census.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassGroup {
    Re,
    Ie,
    Wie,
}

impl ClassGroup {
    pub fn label(self) -> &'static str {
        match self {
            ClassGroup::Re => "RE",
            ClassGroup::Ie => "IE",
            ClassGroup::Wie => "WIE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeClass {
    StraightRing,
    /// Cross edge between levels `i` and `i + 1`, `i` in {0, 1}, kept inside a block.
    CrossRing(u32),
    /// Cross edge between levels `i` and `i + 1` for `2 <= i <= r - 2`.
    Inner(u32),
    /// Cross edge between level `r - 1` and level 0.
    WrapInner,
}

impl EdgeClass {
    pub fn group(self) -> ClassGroup {
        match self {
            EdgeClass::StraightRing | EdgeClass::CrossRing(_) => ClassGroup::Re,
            EdgeClass::Inner(_) => ClassGroup::Ie,
            EdgeClass::WrapInner => ClassGroup::Wie,
        }
    }

    pub fn is_ring(self) -> bool {
        self.group() == ClassGroup::Re
    }

    /// Label used by the edge-list and drawing formats: `RE`, `I2`, ..., `Iwrap`.
    pub fn label(self) -> String {
        match self {
            EdgeClass::StraightRing | EdgeClass::CrossRing(_) => "RE".to_string(),
            EdgeClass::Inner(i) => format!("I{i}"),
            EdgeClass::WrapInner => "Iwrap".to_string(),
        }
    }

    /// Finer label distinguishing the ring sub-classes, used in DOT output.
    pub fn detail(self) -> String {
        match self {
            EdgeClass::StraightRing => "straight".to_string(),
            EdgeClass::CrossRing(i) => format!("cross{i}"),
            EdgeClass::Inner(i) => format!("I{i}"),
            EdgeClass::WrapInner => "Iwrap".to_string(),
        }
    }
}

/// Class of the edge leaving level `level` towards `level + 1 (mod r)`.
fn class_for(r: u32, level: u32, cross: bool) -> EdgeClass {
    if !cross {
        EdgeClass::StraightRing
    } else if level == r - 1 {
        EdgeClass::WrapInner
    } else if level <= 1 {
        EdgeClass::CrossRing(level)
    } else {
        EdgeClass::Inner(level)
    }
}

/// An undirected edge stored canonically: `u` is the endpoint at the lower
/// level of the pair `(i, i + 1 mod r)`, so wrap edges list level `r - 1` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: NodeRef,
    pub v: NodeRef,
    pub class: EdgeClass,
}

impl Edge {
    pub fn endpoints(&self) -> [NodeRef; 2] {
        [self.u, self.v]
    }

    pub fn is_cross(&self) -> bool {
        self.u.row != self.v.row
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.u, self.v, self.class.label())
    }
}

/// BF(r): levels 0..=r, no wraparound.
#[derive(Debug, Clone)]
pub struct Butterfly {
    pub r: u32,
    pub edges: Vec<(NodeRef, NodeRef)>,
}

impl Butterfly {
    pub fn vertex_count(&self) -> u64 {
        (self.r as u64 + 1) << self.r
    }

    pub fn degree(&self, v: NodeRef) -> usize {
        self.edges
            .iter()
            .filter(|(a, b)| *a == v || *b == v)
            .count()
    }
}

pub fn build_butterfly(r: u32) -> Result<Butterfly, TopologyError> {
    check_dimension(r)?;
    let mut edges = Vec::with_capacity((r as usize) << (r + 1));
    for level in 0..r {
        for row in 0..(1u64 << r) {
            let a = NodeRef::new(level, row);
            edges.push((a, NodeRef::new(level + 1, row)));
            edges.push((a, NodeRef::new(level + 1, row ^ (1 << level))));
        }
    }
    Ok(Butterfly { r, edges })
}

#[derive(Debug, Clone)]
pub struct WrappedButterfly {
    pub r: u32,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl WrappedButterfly {
    pub fn new(r: u32) -> Result<Self, TopologyError> {
        check_dimension(r)?;
        let n = (r as usize) << r;
        let mut edges = Vec::with_capacity(2 * n);
        for level in 0..r {
            let next = (level + 1) % r;
            for row in 0..(1u64 << r) {
                let u = NodeRef::new(level, row);
                edges.push(Edge {
                    u,
                    v: NodeRef::new(next, row),
                    class: class_for(r, level, false),
                });
                edges.push(Edge {
                    u,
                    v: NodeRef::new(next, row ^ (1 << level)),
                    class: class_for(r, level, true),
                });
            }
        }
        edges.sort();
        let mut g = WrappedButterfly {
            r,
            edges,
            adjacency: vec![Vec::new(); n],
        };
        for (k, e) in g.edges.iter().enumerate() {
            let (a, b) = (g.index_of(e.u), g.index_of(e.v));
            g.adjacency[a].push(k);
            g.adjacency[b].push(k);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        (self.r as usize) << self.r
    }

    pub fn rows(&self) -> u64 {
        1u64 << self.r
    }

    pub fn blocks(&self) -> u64 {
        (self.rows() / 4).max(1)
    }

    /// Edges in canonical sorted order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = NodeRef> + '_ {
        (0..self.r).flat_map(move |l| (0..self.rows()).map(move |w| NodeRef::new(l, w)))
    }

    pub fn index_of(&self, v: NodeRef) -> usize {
        v.level as usize * self.rows() as usize + v.row as usize
    }

    pub fn contains(&self, v: NodeRef) -> bool {
        v.level < self.r && v.row < self.rows()
    }

    /// Indices into `edges()` incident to `v`, with multiplicity.
    pub fn incident(&self, v: NodeRef) -> &[usize] {
        &self.adjacency[self.index_of(v)]
    }

    pub fn degree(&self, v: NodeRef) -> usize {
        self.incident(v).len()
    }

    pub fn neighbors(&self, v: NodeRef) -> impl Iterator<Item = NodeRef> + '_ {
        self.incident(v).iter().map(move |&k| {
            let e = &self.edges[k];
            if e.u == v {
                e.v
            } else {
                e.u
            }
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([NodeRef::new(0, 0)]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                let i = self.index_of(w);
                if !seen[i] {
                    seen[i] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// Find the stored copy of `e` (either orientation), returning its class.
    pub fn classify_edge(&self, a: NodeRef, b: NodeRef) -> Result<EdgeClass, TopologyError> {
        let unknown = || TopologyError::UnknownEdge(format!("{a}-{b}"), self.r);
        if !self.contains(a) || !self.contains(b) {
            return Err(unknown());
        }
        let (u, v) = if b.level == (a.level + 1) % self.r {
            (a, b)
        } else {
            (b, a)
        };
        if v.level != (u.level + 1) % self.r {
            return Err(unknown());
        }
        let diff = u.row ^ v.row;
        if diff == 0 {
            Ok(class_for(self.r, u.level, false))
        } else if diff == 1 << u.level {
            Ok(class_for(self.r, u.level, true))
        } else {
            Err(unknown())
        }
    }

    pub fn class_count(&self, class: EdgeClass) -> usize {
        self.edges.iter().filter(|e| e.class == class).count()
    }

    /// Vertices of `C_{k,j}` in level order 0..r; the cycle closes with the
    /// straight wraparound edge from level `r - 1` back to level 0.
    pub fn column_cycle(&self, k: u64, j: u8) -> Result<Vec<NodeRef>, TopologyError> {
        self.check_block(k)?;
        if !(1..=4).contains(&j) || (4 * (k - 1) + j as u64) > self.rows() {
            return Err(TopologyError::Index {
                what: "column",
                got: j as u64,
                max: 4,
            });
        }
        let row = 4 * (k - 1) + j as u64 - 1;
        Ok((0..self.r).map(|l| NodeRef::new(l, row)).collect())
    }

    fn check_block(&self, k: u64) -> Result<(), TopologyError> {
        if k == 0 || k > self.blocks() {
            Err(TopologyError::Index {
                what: "block",
                got: k,
                max: self.blocks(),
            })
        } else {
            Ok(())
        }
    }

    pub fn block_subgraph(&self, k: u64) -> Result<Block, TopologyError> {
        self.check_block(k)?;
        let lo = 4 * (k - 1);
        let hi = (lo + 4).min(self.rows());
        let inside = |v: NodeRef| (lo..hi).contains(&v.row);
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| inside(e.u) && inside(e.v))
            .copied()
            .collect();
        let cycles = (1..=(hi - lo) as u8)
            .map(|j| self.column_cycle(k, j))
            .collect::<Result<_, _>>()?;
        Ok(Block {
            k,
            r: self.r,
            cycles,
            edges,
        })
    }

    /// Checks that `(i, 4(k1-1)+j) -> (i, 4(k2-1)+j)` maps the edges of
    /// `B_k1` bijectively onto those of `B_k2`, class by class.
    pub fn verify_block_isomorphism(
        &self,
        k1: u64,
        k2: u64,
    ) -> Result<BlockIsomorphism, TopologyError> {
        let b1 = self.block_subgraph(k1)?;
        let b2 = self.block_subgraph(k2)?;
        let shift = |v: NodeRef| NodeRef::new(v.level, v.row - 4 * (k1 - 1) + 4 * (k2 - 1));
        let mut target = b2.edges.clone();
        target.sort();
        let mut image: Vec<Edge> = b1
            .edges
            .iter()
            .map(|e| Edge {
                u: shift(e.u),
                v: shift(e.v),
                class: e.class,
            })
            .collect();
        image.sort();
        if let Some((e, _)) = image.iter().zip(&target).find(|(a, b)| a != b) {
            return Err(TopologyError::VerificationFailed {
                k1,
                k2,
                edge: e.to_string(),
            });
        }
        if image.len() != target.len() {
            return Err(TopologyError::VerificationFailed {
                k1,
                k2,
                edge: "edge count".into(),
            });
        }
        let map = b1.vertices().map(|v| (v, shift(v))).collect();
        Ok(BlockIsomorphism { k1, k2, map })
    }

    /// `level,row level,row class`, one edge per line, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("graph WB{} {{\n", self.r);
        for e in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [class=\"{}\", kind=\"{}\"];\n",
                e.u,
                e.v,
                e.class.label(),
                e.class.detail()
            ));
        }
        out.push_str("}\n");
        out
    }
}

pub fn build_wrapped_butterfly(r: u32) -> Result<WrappedButterfly, TopologyError> {
    WrappedButterfly::new(r)
}

#[derive(Debug, Clone)]
pub struct Block {
    pub k: u64,
    pub r: u32,
    /// `cycles[j - 1]` is `C_{k,j}`.
    pub cycles: Vec<Vec<NodeRef>>,
    pub edges: Vec<Edge>,
}

impl Block {
    pub fn vertices(&self) -> impl Iterator<Item = NodeRef> + '_ {
        self.cycles.iter().flatten().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    /// Pairs of columns joined by induced cross edges, with the level of the
    /// lower endpoint.
    pub fn column_links(&self) -> Vec<(u32, u8, u8)> {
        let mut links: Vec<(u32, u8, u8)> = self
            .edges
            .iter()
            .filter(|e| e.is_cross())
            .map(|e| {
                let (a, b) = (e.u.block_column(), e.v.block_column());
                (e.u.level, a.min(b), a.max(b))
            })
            .collect();
        links.sort();
        links.dedup();
        links
    }
}

#[derive(Debug, Clone)]
pub struct BlockIsomorphism {
    pub k1: u64,
    pub k2: u64,
    pub map: Vec<(NodeRef, NodeRef)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn butterfly_counts() {
        let bf = build_butterfly(3).unwrap();
        assert_eq!(bf.vertex_count(), 32);
        assert_eq!(bf.edges.len(), 48);
        let bf = build_butterfly(2).unwrap();
        assert_eq!((bf.vertex_count(), bf.edges.len()), (12, 16));
        let bf = build_butterfly(4).unwrap();
        for row in 0..16 {
            assert_eq!(bf.degree(NodeRef::new(2, row)), 4);
            assert_eq!(bf.degree(NodeRef::new(0, row)), 2);
        }
    }

    #[test]
    fn rejects_small_dimension() {
        assert_eq!(
            build_wrapped_butterfly(1).unwrap_err(),
            TopologyError::InvalidDimension(1)
        );
        assert!(build_butterfly(0).is_err());
    }

    #[test]
    fn classification_examples() {
        let g = build_wrapped_butterfly(4).unwrap();
        let c = |a: (u32, u64), b: (u32, u64)| {
            g.classify_edge(NodeRef::new(a.0, a.1), NodeRef::new(b.0, b.1))
        };
        assert_eq!(c((0, 0), (1, 1)), Ok(EdgeClass::CrossRing(0)));
        assert_eq!(c((3, 0), (0, 8)), Ok(EdgeClass::WrapInner));
        assert_eq!(c((0, 8), (3, 0)), Ok(EdgeClass::WrapInner));
        assert_eq!(c((2, 0), (3, 0)), Ok(EdgeClass::StraightRing));
        assert_eq!(c((2, 0), (3, 4)), Ok(EdgeClass::Inner(2)));
        assert!(c((0, 0), (2, 0)).is_err());
        assert!(c((0, 0), (1, 2)).is_err());
    }

    #[test]
    fn labeling_round_trips() {
        let v = NodeRef::new(2, 5);
        assert_eq!(v.to_pair(), (2, 6));
        assert_eq!(NodeRef::from_pair(4, 2, 6).unwrap(), v);
        let (w, i) = v.to_word(4);
        assert_eq!(w, "0101");
        assert_eq!(NodeRef::from_word(4, &w, i).unwrap(), v);
        assert!(NodeRef::from_word(4, "012", 0).is_err());
        assert!(NodeRef::from_pair(4, 0, 17).is_err());
    }

    #[test]
    fn column_cycle_closes() {
        let g = build_wrapped_butterfly(5).unwrap();
        let c = g.column_cycle(2, 3).unwrap();
        assert_eq!(c.len(), 5);
        assert!(c.iter().all(|v| v.to_pair().1 == 7));
        for k in 0..c.len() {
            let class = g.classify_edge(c[k], c[(k + 1) % c.len()]).unwrap();
            assert_eq!(class, EdgeClass::StraightRing);
        }
        assert!(g.column_cycle(9, 1).is_err());
        assert!(g.column_cycle(1, 5).is_err());
    }

    #[test]
    fn block_shape() {
        let g = build_wrapped_butterfly(4).unwrap();
        let b = g.block_subgraph(1).unwrap();
        assert_eq!((b.vertex_count(), b.edges.len()), (16, 24));
        assert_eq!(
            b.column_links(),
            vec![(0, 1, 2), (0, 3, 4), (1, 1, 3), (1, 2, 4)]
        );
        let g = build_wrapped_butterfly(5).unwrap();
        let b = g.block_subgraph(8).unwrap();
        assert_eq!((b.vertex_count(), b.edges.len()), (20, 28));
    }

    #[test]
    fn dot_has_every_edge() {
        let g = build_wrapped_butterfly(4).unwrap();
        assert_eq!(g.to_dot().matches(" -- ").count(), 128);
        assert_eq!(g.to_edge_list().lines().count(), 128);
    }
}
