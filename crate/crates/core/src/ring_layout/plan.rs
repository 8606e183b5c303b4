//! Sector routing tables.
//!
//! A table fixes, for one sector of the ring drawing, how every routed edge
//! with both endpoints in that sector travels from its outer ring to its
//! inner ring. All four sectors reuse the same table.

use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PlanError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("routing table does not match the edge set: {0}")]
    EdgeSet(String),
    #[error("no routing table is bundled for r = {0}")]
    Missing(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// How an edge leaves its own vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// Up into the annulus, then down a lane into the side quad.
    Annulus,
    /// Into the loop and out through the side edge.
    Loop,
    /// Straight into the adjacent quad from a corner vertex.
    Shortcut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Start(Side, Origin),
    /// Pass a ring along a lane on the given side.
    Corridor(Side),
    /// Pass a ring through long-arc segment `seg` and out on the given side.
    Through(usize, Side),
    /// Reach the vertex from the annulus.
    Direct,
    /// Reach the vertex from inside the loop after crossing segment `seg`.
    ViaSegment(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub kind: StepKind,
    /// Order key along the long arc and the lanes.
    pub xb: i64,
    /// Height key on the edge between levels 0 and 1.
    pub q01: i64,
    /// Height key on the edge between levels 1 and 2.
    pub q12: i64,
}

/// Ring index and level of one endpoint in sector coordinates.
pub type SectorNode = (u64, u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutedPlan {
    pub up: SectorNode,
    pub lo: SectorNode,
    /// One step per ring from `up.0` to `lo.0` inclusive.
    pub steps: Vec<Step>,
}

impl RoutedPlan {
    pub fn step_at(&self, ring: u64) -> Option<&Step> {
        ring.checked_sub(self.up.0)
            .and_then(|k| self.steps.get(k as usize))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorPlan {
    pub r: u32,
    pub edges: Vec<RoutedPlan>,
}

const BUNDLED: [(u32, &str); 3] = [
    (4, include_str!("../../plans/r4.plan")),
    (5, include_str!("../../plans/r5.plan")),
    (6, include_str!("../../plans/r6.plan")),
];

/// Dimensions with a bundled routing table.
pub fn bundled_dimensions() -> Vec<u32> {
    BUNDLED
        .iter()
        .filter(|(_, t)| !t.trim().is_empty())
        .map(|(r, _)| *r)
        .collect()
}

impl SectorPlan {
    pub fn bundled(r: u32) -> Result<Self, PlanError> {
        let text = BUNDLED
            .iter()
            .find(|(d, t)| *d == r && !t.trim().is_empty())
            .map(|(_, t)| *t)
            .ok_or(PlanError::Missing(r))?;
        Self::parse(text)
    }

    pub fn rings(&self) -> u64 {
        1 << (self.r - 2)
    }

    /// Long-arc levels from left to right: 2, 3, ..., r-1, 0.
    pub fn arc_levels(&self) -> Vec<u32> {
        arc_levels(self.r)
    }

    pub fn parse(text: &str) -> Result<Self, PlanError> {
        let mut r = None;
        let mut edges = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let err = |msg: String| PlanError::Syntax { line, msg };
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks[0] == "r" {
                let v = toks
                    .get(1)
                    .and_then(|s| s.parse::<u32>().ok())
                    .filter(|v| (4..=16).contains(v));
                r = Some(
                    v.ok_or_else(|| err("expected `r <dimension>` with 4 <= r <= 16".into()))?,
                );
                continue;
            }
            let r = r.ok_or_else(|| err("edge line before the `r` line".into()))?;
            if toks.len() < 6 {
                return Err(err("expected 4 endpoint fields and at least 2 steps".into()));
            }
            let num = |s: &str| s.parse::<u64>().map_err(|e| err(format!("{s:?}: {e}")));
            let up = (num(toks[0])?, num(toks[1])? as u32);
            let lo = (num(toks[2])?, num(toks[3])? as u32);
            let steps = toks[4..]
                .iter()
                .enumerate()
                .map(|(k, s)| parse_step(s, k == 0, k == toks.len() - 5, r).map_err(&err))
                .collect::<Result<Vec<_>, _>>()?;
            if lo.0 < up.0 || steps.len() as u64 != lo.0 - up.0 + 1 {
                return Err(err(format!(
                    "{} steps for rings {}..={}",
                    steps.len(),
                    up.0,
                    lo.0
                )));
            }
            let plan = RoutedPlan { up, lo, steps };
            check_modes(&plan, r).map_err(err)?;
            edges.push(plan);
        }
        let r = r.ok_or(PlanError::Syntax {
            line: 0,
            msg: "missing `r` line".into(),
        })?;
        let plan = SectorPlan { r, edges };
        plan.check_edge_set()?;
        Ok(plan)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("r {}\n", self.r);
        for e in &self.edges {
            out += &format!("{} {} {} {}", e.up.0, e.up.1, e.lo.0, e.lo.1);
            for s in &e.steps {
                out += &format!(" {}:{}:{}:{}", kind_token(s.kind), s.xb, s.q01, s.q12);
            }
            out.push('\n');
        }
        out
    }

    fn check_edge_set(&self) -> Result<(), PlanError> {
        let want: BTreeSet<(SectorNode, SectorNode)> =
            sector_routed_edges(self.r).into_iter().collect();
        let mut got = BTreeSet::new();
        for e in &self.edges {
            if !got.insert((e.up, e.lo)) {
                return Err(PlanError::EdgeSet(format!(
                    "duplicate edge {:?}-{:?}",
                    e.up, e.lo
                )));
            }
        }
        if let Some(e) = want.difference(&got).next() {
            return Err(PlanError::EdgeSet(format!(
                "edge {:?}-{:?} has no route",
                e.0, e.1
            )));
        }
        if let Some(e) = got.difference(&want).next() {
            return Err(PlanError::EdgeSet(format!(
                "edge {:?}-{:?} is not routed in a sector",
                e.0, e.1
            )));
        }
        Ok(())
    }
}

pub fn arc_levels(r: u32) -> Vec<u32> {
    (2..r).chain([0]).collect()
}

/// Routed edges with both endpoints in one sector, as (upper, lower) pairs.
/// Edges of dimension `d` join ring `t` to ring `t + 2^d` for every `t`
/// with bit `d` clear.
pub fn sector_routed_edges(r: u32) -> Vec<(SectorNode, SectorNode)> {
    let k = 1u64 << (r - 2);
    let mut out = Vec::new();
    for d in 0..r - 2 {
        let i = d + 2;
        let next = (i + 1) % r;
        for t in (0..k).filter(|t| t >> d & 1 == 0) {
            let t2 = t + (1 << d);
            out.push(((t, i), (t2, next)));
            out.push(((t, next), (t2, i)));
        }
    }
    out
}

fn kind_token(k: StepKind) -> String {
    let s = |s: Side| if s == Side::Left { 'L' } else { 'R' };
    match k {
        StepKind::Start(sd, o) => {
            let o = match o {
                Origin::Annulus => 'A',
                Origin::Loop => 'T',
                Origin::Shortcut => 'S',
            };
            format!("{}{o}", s(sd))
        }
        StepKind::Corridor(sd) => format!("C{}", s(sd)),
        StepKind::Through(seg, sd) => format!("X{}{seg}", s(sd)),
        StepKind::Direct => "D".into(),
        StepKind::ViaSegment(seg) => format!("P{seg}"),
    }
}

fn parse_step(tok: &str, first: bool, last: bool, r: u32) -> Result<Step, String> {
    let parts: Vec<&str> = tok.split(':').collect();
    if parts.len() != 4 {
        return Err(format!("step {tok:?} must be mode:xb:q01:q12"));
    }
    let n = |s: &str| s.parse::<i64>().map_err(|e| format!("{tok:?}: {e}"));
    let (xb, q01, q12) = (n(parts[1])?, n(parts[2])?, n(parts[3])?);
    let mode = parts[0];
    let side = |c: Option<char>| match c {
        Some('L') => Ok(Side::Left),
        Some('R') => Ok(Side::Right),
        _ => Err(format!("bad side in {tok:?}")),
    };
    let segs = r as usize - 2;
    let seg = |s: &str| {
        s.parse::<usize>()
            .ok()
            .filter(|&k| k < segs)
            .ok_or_else(|| format!("bad segment in {tok:?}"))
    };
    let mut ch = mode.chars();
    let kind = if first {
        let sd = side(ch.next())?;
        let o = match ch.next() {
            Some('A') => Origin::Annulus,
            Some('T') => Origin::Loop,
            Some('S') => Origin::Shortcut,
            _ => return Err(format!("bad origin mode {mode:?}")),
        };
        StepKind::Start(sd, o)
    } else if last {
        match mode {
            "D" => StepKind::Direct,
            m if m.starts_with('P') => StepKind::ViaSegment(seg(&m[1..])?),
            _ => return Err(format!("bad final mode {mode:?}")),
        }
    } else {
        match ch.next() {
            Some('C') if mode.len() == 2 => StepKind::Corridor(side(ch.next())?),
            Some('X') => StepKind::Through(seg(&mode[2..])?, side(ch.next())?),
            _ => return Err(format!("bad pass mode {mode:?}")),
        }
    };
    Ok(Step { kind, xb, q01, q12 })
}

fn check_modes(p: &RoutedPlan, r: u32) -> Result<(), String> {
    let levels = arc_levels(r);
    let pos = |l: u32| levels.iter().position(|&x| x == l);
    if let StepKind::Start(sd, o) = p.steps[0].kind {
        let v = p.up.1;
        let ok = match (sd, o) {
            (Side::Left, Origin::Annulus) => v != 2,
            (Side::Right, Origin::Annulus) => v != 0,
            (Side::Left, Origin::Loop) => v != 1 && v != 2,
            (Side::Right, Origin::Loop) => v != 0 && v != 1,
            (Side::Left, Origin::Shortcut) => v == 2,
            (Side::Right, Origin::Shortcut) => v == 0,
        };
        if !ok || pos(v).is_none() {
            return Err(format!(
                "mode {:?} is not available at level {v}",
                p.steps[0].kind
            ));
        }
    }
    if let StepKind::ViaSegment(seg) = p.steps.last().map(|s| s.kind).unwrap_or(StepKind::Direct) {
        let j = pos(p.lo.1).ok_or_else(|| format!("level {} is not on the long arc", p.lo.1))?;
        if seg == j || seg + 1 == j {
            return Err(format!("segment {seg} is incident to level {}", p.lo.1));
        }
    }
    Ok(())
}
