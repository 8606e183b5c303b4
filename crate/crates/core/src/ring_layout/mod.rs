//! The nested ring drawing RB(r) with exact rational coordinates.
//!
//! Each block is drawn as a ring made of four loops, one per column, placed
//! clockwise in column order 1, 2, 4, 3 around the origin. Rings are nested
//! square annuli, ring 1 outermost. Routed (inner and wraparound) edges stay
//! inside their sector and follow a bundled routing table.
//!
//! Geometry is built in a per-sector model frame where the sector's loops
//! stack vertically, then rotated into place. Inside every face region the
//! routes are straight chords between points on a small strictly convex
//! "lens", so two routes cross there exactly when their endpoints
//! interleave along the lens boundary. Between regions a route crosses ring
//! edges only at interior points of axis-parallel ring segments.

pub mod plan;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::drawing::{Drawing, DrawnEdge, PlacedVertex};
use crate::geometry::{Point, Rational};
use crate::topology::{Block, EdgeClass, NodeRef, TopologyError, WrappedButterfly};

pub use plan::{Origin, PlanError, RoutedPlan, SectorPlan, Side, Step, StepKind};

#[derive(Debug, thiserror::Error)]
pub enum LayoutError {
    #[error("the ring drawing needs r >= 4, got r = {0}")]
    Unsupported(u32),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("geometry error: {0}")]
    Geometry(String),
}

/// Horizontal spacing between neighbouring items.
const STEP: i64 = 4;
/// Clearance between the loop and its side quads.
const SIDE_GAP: i64 = 8;
/// Clearance between the long arc and the ring's outer line, and between
/// the level-1 vertex and the inner line.
const ARC_GAP: i64 = 8;
/// Height of the annulus between consecutive rings.
const ANNULUS: i64 = 16;
/// Margin around everything a ring contains.
const MARGIN: i64 = 8;
/// Offset of the corner stubs into the loop.
const CORNER: i64 = 2;

/// Point in a sector's model frame, in units of `1 / 2^shift`.
type Pt = (i128, i128);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Frame {
    /// Columns 1 and 4: model ring t is real ring t.
    Outer,
    /// Columns 2 and 3: model ring u is real ring K-1-u.
    Turned,
}

fn frame_of(column: u8) -> Frame {
    if column == 1 || column == 4 {
        Frame::Outer
    } else {
        Frame::Turned
    }
}

/// Model frame `(s, h)` to global `(x, y)`.
fn place(column: u8, (s, h): Pt) -> Pt {
    match column {
        1 => (s, h),
        4 => (-s, -h),
        2 => (-h, s),
        _ => (h, -s),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ArcItem {
    Vertex(u32),
    Pass(usize),
}

/// Orders of everything crossing one model ring.
#[derive(Debug, Clone, Default)]
struct RingTracks {
    arc: Vec<ArcItem>,
    lanes_l: Vec<usize>,
    lanes_r: Vec<usize>,
    s01: Vec<usize>,
    s12: Vec<usize>,
    exits_l: Vec<usize>,
    exits_r: Vec<usize>,
}

impl RingTracks {
    fn build(plan: &SectorPlan, t: u64) -> Result<Self, LayoutError> {
        let levels = plan.arc_levels();
        let geo = |m: String| LayoutError::Geometry(format!("ring {t}: {m}"));
        let mut arc: Vec<(i64, ArcItem)> = levels
            .iter()
            .enumerate()
            .map(|(j, &l)| (1000 * (j as i64 + 1), ArcItem::Vertex(l)))
            .collect();
        let (mut ll, mut lr, mut s01, mut s12) = (vec![], vec![], vec![], vec![]);
        let (mut sl, mut sr) = (None, None);
        let mut segs = HashMap::new();
        for (id, e) in plan.edges.iter().enumerate() {
            let Some(st) = e.step_at(t) else { continue };
            match st.kind {
                StepKind::Start(Side::Left, Origin::Annulus) | StepKind::Corridor(Side::Left) => {
                    ll.push((st.xb, id))
                }
                StepKind::Start(Side::Right, Origin::Annulus) | StepKind::Corridor(Side::Right) => {
                    lr.push((st.xb, id))
                }
                StepKind::Start(Side::Left, Origin::Loop) => s12.push((st.q12, id)),
                StepKind::Start(Side::Right, Origin::Loop) => s01.push((st.q01, id)),
                StepKind::Start(Side::Left, Origin::Shortcut) => sl = Some(id),
                StepKind::Start(Side::Right, Origin::Shortcut) => sr = Some(id),
                StepKind::Through(seg, side) => {
                    arc.push((st.xb, ArcItem::Pass(id)));
                    segs.insert(id, seg);
                    match side {
                        Side::Left => s12.push((st.q12, id)),
                        Side::Right => s01.push((st.q01, id)),
                    }
                }
                StepKind::ViaSegment(seg) => {
                    arc.push((st.xb, ArcItem::Pass(id)));
                    segs.insert(id, seg);
                }
                StepKind::Direct => {}
            }
        }
        let sorted = |mut v: Vec<(i64, usize)>, what: &str| -> Result<Vec<usize>, LayoutError> {
            v.sort();
            if v.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(geo(format!("tied keys in {what}")));
            }
            Ok(v.into_iter().map(|(_, id)| id).collect())
        };
        arc.sort_by_key(|a| a.0);
        if arc.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(geo("tied keys on the long arc".into()));
        }
        let mut seen_vertices = 0usize;
        for (_, item) in &arc {
            match item {
                ArcItem::Vertex(_) => seen_vertices += 1,
                ArcItem::Pass(id) if segs[id] + 1 != seen_vertices => {
                    return Err(geo(format!("edge {id} is not on segment {}", segs[id])));
                }
                ArcItem::Pass(_) => {}
            }
        }
        let lanes_l = sorted(ll, "left lanes")?;
        let lanes_r = sorted(lr, "right lanes")?;
        let s01 = sorted(s01, "the 0-1 side")?;
        let s12 = sorted(s12, "the 1-2 side")?;
        let exits_l = lanes_l
            .iter()
            .copied()
            .chain(sl)
            .chain(s12.iter().rev().copied())
            .collect();
        let exits_r = s01
            .iter()
            .copied()
            .chain(sr)
            .chain(lanes_r.iter().copied())
            .collect();
        Ok(RingTracks {
            arc: arc.into_iter().map(|(_, a)| a).collect(),
            lanes_l,
            lanes_r,
            s01,
            s12,
            exits_l,
            exits_r,
        })
    }

    fn x_first(&self) -> i64 {
        -STEP * (self.arc.len() as i64 - 1)
    }

    fn x_last(&self) -> i64 {
        -self.x_first()
    }

    fn arc_x(&self, j: usize) -> i64 {
        STEP * (2 * j as i64 - (self.arc.len() as i64 - 1))
    }

    fn left_x(&self, k: usize, n: usize) -> i64 {
        self.x_first() - SIDE_GAP - STEP * (n - k) as i64
    }

    fn right_x(&self, k: usize) -> i64 {
        self.x_last() + SIDE_GAP + STEP * (k as i64 + 1)
    }

    fn rank(list: &[usize], id: usize) -> usize {
        list.iter()
            .position(|&x| x == id)
            .expect("edge in its track")
    }

    fn lane_x(&self, id: usize, side: Side) -> i64 {
        match side {
            Side::Left => self.left_x(Self::rank(&self.lanes_l, id), self.lanes_l.len()),
            Side::Right => self.right_x(Self::rank(&self.lanes_r, id)),
        }
    }

    /// Exit position of `id` below this ring and the side it leaves on.
    fn exit(&self, id: usize) -> (i64, Side) {
        if self.exits_l.contains(&id) {
            (
                self.left_x(Self::rank(&self.exits_l, id), self.exits_l.len()),
                Side::Left,
            )
        } else {
            (self.right_x(Self::rank(&self.exits_r, id)), Side::Right)
        }
    }

    /// Height of a side crossing above the level-1 vertex.
    fn side_rise(&self, id: usize, side: Side) -> i64 {
        let list = if side == Side::Left {
            &self.s12
        } else {
            &self.s01
        };
        STEP + STEP * Self::rank(list, id) as i64
    }

    fn pass_x(&self, id: usize) -> i64 {
        self.arc_x(
            self.arc
                .iter()
                .position(|a| *a == ArcItem::Pass(id))
                .expect("pass on the arc"),
        )
    }

    fn vertex_x(&self, level: u32) -> i64 {
        self.arc_x(
            self.arc
                .iter()
                .position(|a| *a == ArcItem::Vertex(level))
                .expect("level on the arc"),
        )
    }

    /// Half-width needed by the lanes and exits.
    fn reach(&self) -> i64 {
        let l = self.lanes_l.len().max(self.exits_l.len()) as i64;
        let r = self.lanes_r.len().max(self.exits_r.len()) as i64;
        (SIDE_GAP + STEP * l - self.x_first()).max(self.x_last() + SIDE_GAP + STEP * r)
    }
}

/// Strictly convex region inside an axis-parallel box: the intersection of
/// four parabolic caps, one per side, each 1 unit inside the box.
#[derive(Debug, Clone, Copy)]
struct Lens {
    x0: i64,
    x1: i64,
    y0: i64,
    y1: i64,
    xc: i64,
    yc: i64,
    d: i128,
}

impl Lens {
    fn new(x0: i64, x1: i64, y0: i64, y1: i64, d: i128) -> Result<Self, LayoutError> {
        if x1 - x0 < 4 || y1 - y0 < 4 || 8 * ((x1 - x0).max(y1 - y0) as i128).pow(2) > d {
            return Err(LayoutError::Geometry(format!(
                "region [{x0},{x1}]x[{y0},{y1}] is too small or too large"
            )));
        }
        Ok(Lens {
            x0,
            x1,
            y0,
            y1,
            xc: (x0 + x1).div_euclid(2),
            yc: (y0 + y1).div_euclid(2),
            d,
        })
    }

    fn check(&self, lo: i64, v: i64, hi: i64) {
        assert!(
            lo + 2 <= v && v <= hi - 2,
            "lens point {v} outside [{lo}, {hi}]"
        );
    }

    fn top(&self, x: i64) -> Pt {
        self.check(self.x0, x, self.x1);
        (
            x as i128 * self.d,
            (self.y1 - 1) as i128 * self.d - ((x - self.xc) as i128).pow(2),
        )
    }

    fn bottom(&self, x: i64) -> Pt {
        self.check(self.x0, x, self.x1);
        (
            x as i128 * self.d,
            (self.y0 + 1) as i128 * self.d + ((x - self.xc) as i128).pow(2),
        )
    }

    fn left(&self, y: i64) -> Pt {
        self.check(self.y0, y, self.y1);
        (
            (self.x0 + 1) as i128 * self.d + ((y - self.yc) as i128).pow(2),
            y as i128 * self.d,
        )
    }

    fn right(&self, y: i64) -> Pt {
        self.check(self.y0, y, self.y1);
        (
            (self.x1 - 1) as i128 * self.d - ((y - self.yc) as i128).pow(2),
            y as i128 * self.d,
        )
    }

    /// Whether a point (in `1/d` units) lies in the closed lens.
    #[cfg(test)]
    fn contains(&self, (x, y): Pt) -> bool {
        let d = self.d;
        let (cx, cy) = (self.xc as i128 * d, self.yc as i128 * d);
        let d3 = d * d * d;
        y * d * d <= (self.y1 - 1) as i128 * d3 - (x - cx).pow(2)
            && y * d * d >= (self.y0 + 1) as i128 * d3 + (x - cx).pow(2)
            && x * d * d <= (self.x1 - 1) as i128 * d3 - (y - cy).pow(2)
            && x * d * d >= (self.x0 + 1) as i128 * d3 + (y - cy).pow(2)
    }
}

/// Heights and regions of one model ring.
#[derive(Debug, Clone, Copy)]
struct RingFrame {
    co: i64,
    ci: i64,
    y: i64,
    yb: i64,
    x_first: i64,
    x_last: i64,
    annulus: Lens,
    lp: Lens,
    ql: Lens,
    qr: Lens,
}

/// Placement parameters of RB(r): ring bands, lanes, and routing tables.
#[derive(Debug, Clone)]
pub struct RingGeometry {
    pub r: u32,
    plan: SectorPlan,
    tracks: Vec<RingTracks>,
    /// Half-width of the part of a ring that carries vertices and routes.
    half_width: i64,
    band: i64,
    pitch: i64,
    inner_radius: i64,
    shift: u32,
    fans: HashMap<(usize, u64), i64>,
}

impl RingGeometry {
    /// Geometry from the routing table bundled for `r`.
    pub fn new(r: u32) -> Result<Self, LayoutError> {
        if r < 4 {
            return Err(LayoutError::Unsupported(r));
        }
        Self::from_plan(SectorPlan::bundled(r)?)
    }

    /// Geometry with no routed edges, for drawing the rings alone.
    pub fn bare(r: u32) -> Result<Self, LayoutError> {
        if r < 4 {
            return Err(LayoutError::Unsupported(r));
        }
        Self::from_plan(SectorPlan {
            r,
            edges: Vec::new(),
        })
    }

    pub fn from_plan(plan: SectorPlan) -> Result<Self, LayoutError> {
        let tracks = (0..plan.rings())
            .map(|t| RingTracks::build(&plan, t))
            .collect::<Result<Vec<_>, _>>()?;
        let half_width = tracks.iter().map(RingTracks::reach).max().unwrap_or(0) + MARGIN;
        let sides = tracks
            .iter()
            .map(|t| t.s01.len().max(t.s12.len()))
            .max()
            .unwrap_or(0) as i64;
        let loop_height = STEP * (sides + 2);
        let band = loop_height + 2 * ARC_GAP;
        let pitch = band + ANNULUS;
        let inner_radius = half_width + ANNULUS + MARGIN;
        let span = 8 * (2 * half_width as i128 + 2).pow(2);
        let shift = (128 - (span - 1).leading_zeros()).max(1);
        let fans = fan_offsets(&plan, &tracks);
        Ok(RingGeometry {
            r: plan.r,
            plan,
            tracks,
            half_width,
            band,
            pitch,
            inner_radius,
            shift,
            fans,
        })
    }

    pub fn plan(&self) -> &SectorPlan {
        &self.plan
    }

    pub fn rings(&self) -> u64 {
        self.plan.rings()
    }

    /// Every coordinate is a multiple of `1 / 2^shift`.
    pub fn denominator_shift(&self) -> u32 {
        self.shift
    }

    /// Inner and outer extent of ring `k` (1-indexed) as half side lengths
    /// of the square band it occupies.
    pub fn band(&self, k: u64) -> (Rational, Rational) {
        let inner = self.inner_radius + (self.rings() - k) as i64 * self.pitch;
        (
            Rational::from_integer(inner.into()),
            Rational::from_integer((inner + self.band).into()),
        )
    }

    /// Half side of the square that holds the whole drawing.
    pub fn extent(&self) -> Rational {
        self.band(1).1.clone() + Rational::from_integer(ANNULUS.into())
    }

    /// Which side every routed edge of the sector table leaves its ring on,
    /// with its position among the exits on that side.
    pub fn corridor_assignments(&self) -> Vec<Vec<(Side, usize)>> {
        let mut out = vec![Vec::new(); self.plan.edges.len()];
        for tr in &self.tracks {
            for (k, &id) in tr.exits_l.iter().enumerate() {
                out[id].push((Side::Left, k));
            }
            for (k, &id) in tr.exits_r.iter().enumerate() {
                out[id].push((Side::Right, k));
            }
        }
        out
    }

    fn d(&self) -> i128 {
        1i128 << self.shift
    }

    fn frame(&self, kind: Frame, t: u64) -> Result<RingFrame, LayoutError> {
        let k = self.rings();
        let co = match kind {
            Frame::Outer => self.inner_radius + (k - 1 - t) as i64 * self.pitch + self.band,
            Frame::Turned => -(self.inner_radius + t as i64 * self.pitch),
        };
        let ci = co - self.band;
        let (y, yb) = (co - ARC_GAP, ci + ARC_GAP);
        let tr = &self.tracks[t as usize];
        let (xf, xl) = (tr.x_first(), tr.x_last());
        let w = self.half_width;
        let d = self.d();
        Ok(RingFrame {
            co,
            ci,
            y,
            yb,
            x_first: xf,
            x_last: xl,
            annulus: Lens::new(-w - 1, w + 1, co, co + ANNULUS, d)?,
            lp: Lens::new(xf, xl, yb, y, d)?,
            ql: Lens::new(-w, xf - SIDE_GAP, ci, co, d)?,
            qr: Lens::new(xl + SIDE_GAP, w, ci, co, d)?,
        })
    }

    fn vertex_model(&self, f: &RingFrame, t: u64, level: u32) -> Pt {
        let d = self.d();
        if level == 1 {
            return (0, f.yb as i128 * d);
        }
        let tr = &self.tracks[t as usize];
        let j = tr
            .arc
            .iter()
            .position(|a| *a == ArcItem::Vertex(level))
            .expect("level on the long arc");
        (tr.arc_x(j) as i128 * d, f.y as i128 * d)
    }

    fn node(&self, column: u8, t: u64, level: u32) -> NodeRef {
        let ring = match frame_of(column) {
            Frame::Outer => t,
            Frame::Turned => self.rings() - 1 - t,
        };
        NodeRef::new(level, 4 * ring + column as u64 - 1)
    }

    fn to_point(&self, column: u8, p: Pt) -> Point {
        let (x, y) = place(column, p);
        let d = BigInt::from(self.d());
        Point::new(
            Rational::new(BigInt::from(x), d.clone()),
            Rational::new(BigInt::from(y), d),
        )
    }

    /// Model-frame route of sector edge `id`, from its upper to its lower endpoint.
    fn route_model(&self, kind: Frame, id: usize) -> Result<Vec<Pt>, LayoutError> {
        let e = &self.plan.edges[id];
        let corner_l = self.plan.arc_levels()[0];
        let upper = self.frame(kind, e.up.0)?;
        let mut pts = vec![self.vertex_model(&upper, e.up.0, e.up.1)];
        for (k, st) in e.steps.iter().enumerate() {
            let t = e.up.0 + k as u64;
            let f = self.frame(kind, t)?;
            let tr = &self.tracks[t as usize];
            let fan = self.fans.get(&(id, t)).copied().unwrap_or(0);
            let stub = |level: u32| {
                let x = tr.vertex_x(level);
                if level == corner_l {
                    x + CORNER
                } else if level == 0 {
                    x - CORNER
                } else {
                    x + fan
                }
            };
            let quad = |side: Side| if side == Side::Left { f.ql } else { f.qr };
            let loop_side = |side: Side, h: i64| {
                if side == Side::Left {
                    f.lp.left(h)
                } else {
                    f.lp.right(h)
                }
            };
            let quad_side = |side: Side, h: i64| {
                if side == Side::Left {
                    f.ql.right(h)
                } else {
                    f.qr.left(h)
                }
            };
            let leave = |pts: &mut Vec<Pt>| -> Result<(), LayoutError> {
                let (x, side) = tr.exit(id);
                pts.push(quad(side).bottom(x));
                pts.push(self.frame(kind, t + 1)?.annulus.top(x));
                Ok(())
            };
            match st.kind {
                StepKind::Start(side, Origin::Annulus) => {
                    let x = tr.lane_x(id, side);
                    pts.push(f.annulus.bottom(tr.vertex_x(e.up.1) + fan));
                    pts.push(f.annulus.bottom(x));
                    pts.push(quad(side).top(x));
                    leave(&mut pts)?;
                }
                StepKind::Start(side, Origin::Loop) => {
                    let h = f.yb + tr.side_rise(id, side);
                    pts.push(f.lp.top(stub(e.up.1)));
                    pts.push(loop_side(side, h));
                    pts.push(quad_side(side, h));
                    leave(&mut pts)?;
                }
                StepKind::Start(side, Origin::Shortcut) => {
                    pts.push(quad_side(side, f.y - STEP));
                    leave(&mut pts)?;
                }
                StepKind::Corridor(side) => {
                    let x = tr.lane_x(id, side);
                    pts.push(f.annulus.bottom(x));
                    pts.push(quad(side).top(x));
                    leave(&mut pts)?;
                }
                StepKind::Through(_, side) => {
                    let (x, h) = (tr.pass_x(id), f.yb + tr.side_rise(id, side));
                    pts.push(f.annulus.bottom(x));
                    pts.push(f.lp.top(x));
                    pts.push(loop_side(side, h));
                    pts.push(quad_side(side, h));
                    leave(&mut pts)?;
                }
                StepKind::Direct => {
                    pts.push(f.annulus.bottom(tr.vertex_x(e.lo.1) + fan));
                    pts.push(self.vertex_model(&f, t, e.lo.1));
                }
                StepKind::ViaSegment(_) => {
                    let x = tr.pass_x(id);
                    pts.push(f.annulus.bottom(x));
                    pts.push(f.lp.top(x));
                    pts.push(f.lp.top(stub(e.lo.1)));
                    pts.push(self.vertex_model(&f, t, e.lo.1));
                }
            }
        }
        Ok(pts)
    }
}

/// Cyclic position along a lens boundary, clockwise from its top-left.
fn top_pos(x: i64) -> i64 {
    x
}

fn bottom_pos(x: i64) -> i64 {
    3_000_000 - x
}

fn right_pos(h: i64) -> i64 {
    2_000_000 - h
}

fn left_pos(h: i64) -> i64 {
    4_000_000 + h
}

fn interleave(a: (i64, i64), b: (i64, i64)) -> bool {
    let (lo, hi) = (a.0.min(a.1), a.0.max(a.1));
    let inside = |p: i64| lo < p && p < hi;
    inside(b.0) != inside(b.1)
}

/// Stub offsets for vertices with two routed edges whose first chords lie
/// in the same region: the two chords leave from neighbouring points,
/// ordered so they do not cross.
fn fan_offsets(plan: &SectorPlan, tracks: &[RingTracks]) -> HashMap<(usize, u64), i64> {
    #[derive(PartialEq, Eq, Hash, PartialOrd, Ord, Clone, Copy)]
    enum Region {
        Annulus,
        Loop,
    }
    let mut at: BTreeMap<(u64, u32, Region), Vec<(usize, i64)>> = BTreeMap::new();
    for (id, e) in plan.edges.iter().enumerate() {
        let (tu, tl) = (e.up.0, e.lo.0);
        let tr = &tracks[tu as usize];
        match e.steps[0].kind {
            StepKind::Start(side, Origin::Annulus) => at
                .entry((tu, e.up.1, Region::Annulus))
                .or_default()
                .push((id, bottom_pos(tr.lane_x(id, side)))),
            StepKind::Start(side, Origin::Loop) => {
                let h = tr.side_rise(id, side);
                let p = if side == Side::Left {
                    left_pos(h)
                } else {
                    right_pos(h)
                };
                at.entry((tu, e.up.1, Region::Loop))
                    .or_default()
                    .push((id, p));
            }
            _ => {}
        }
        match e.steps.last().map(|s| s.kind) {
            Some(StepKind::Direct) => {
                let entry = tracks[tl as usize - 1].exit(id).0;
                at.entry((tl, e.lo.1, Region::Annulus))
                    .or_default()
                    .push((id, top_pos(entry)));
            }
            Some(StepKind::ViaSegment(_)) => {
                let x = tracks[tl as usize].pass_x(id);
                at.entry((tl, e.lo.1, Region::Loop))
                    .or_default()
                    .push((id, top_pos(x)));
            }
            _ => {}
        }
    }
    let mut out = HashMap::new();
    for ((t, level, region), ends) in at {
        if ends.len() != 2 {
            continue;
        }
        let vx = tracks[t as usize].vertex_x(level);
        let here = |dx: i64| {
            if region == Region::Annulus {
                bottom_pos(vx + dx)
            } else {
                top_pos(vx + dx)
            }
        };
        let [(a, pa), (b, pb)] = [ends[0], ends[1]];
        let (da, db) = if interleave((here(-1), pa), (here(1), pb)) {
            (1, -1)
        } else {
            (-1, 1)
        };
        out.insert((a, t), da);
        out.insert((b, t), db);
    }
    out
}

/// Which gap piece of a loop a point sequence belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Piece {
    OuterLeft,
    OuterRight,
    InnerLeft,
    InnerRight,
}

/// One loop drawn in its model frame: its own ring edges and the four
/// half-edges that meet neighbouring loops at the sector corners.
struct LoopDrawing {
    vertices: Vec<(u32, Pt)>,
    edges: Vec<(u32, u32, Vec<Pt>)>,
    pieces: BTreeMap<Piece, (u32, Vec<Pt>)>,
}

impl RingGeometry {
    fn loop_model(&self, kind: Frame, t: u64) -> Result<LoopDrawing, LayoutError> {
        let f = self.frame(kind, t)?;
        let d = self.d();
        let s = |x: i64, y: i64| (x as i128 * d, y as i128 * d);
        let levels = self.plan.arc_levels();
        let vertices: Vec<(u32, Pt)> = (0..self.r)
            .map(|l| (l, self.vertex_model(&f, t, l)))
            .collect();
        let at = |l: u32| vertices[l as usize].1;
        let mut edges: Vec<(u32, u32, Vec<Pt>)> = levels
            .windows(2)
            .map(|w| (w[0], w[1], vec![at(w[0]), at(w[1])]))
            .collect();
        edges.push((0, 1, vec![at(0), s(f.x_last, f.yb), at(1)]));
        edges.push((1, 2, vec![at(1), s(f.x_first, f.yb), at(2)]));
        let (co, ci) = (f.co.abs(), f.ci.abs());
        let mut pieces = BTreeMap::new();
        pieces.insert(
            Piece::OuterLeft,
            (2, vec![at(2), s(f.x_first - SIDE_GAP, f.co), s(-co, f.co)]),
        );
        pieces.insert(
            Piece::OuterRight,
            (0, vec![at(0), s(f.x_last + SIDE_GAP, f.co), s(co, f.co)]),
        );
        pieces.insert(
            Piece::InnerLeft,
            (1, vec![at(1), s(-STEP, f.ci), s(-ci, f.ci)]),
        );
        pieces.insert(
            Piece::InnerRight,
            (1, vec![at(1), s(STEP, f.ci), s(ci, f.ci)]),
        );
        Ok(LoopDrawing {
            vertices,
            edges,
            pieces,
        })
    }
}

/// Corners of a ring: the outer-frame column, the turned-frame column, and
/// the model side on which each meets the corner.
const CORNERS: [(u8, u8, Side, Side); 4] = [
    (1, 2, Side::Right, Side::Right),
    (4, 2, Side::Left, Side::Left),
    (4, 3, Side::Right, Side::Right),
    (1, 3, Side::Left, Side::Left),
];

fn canonical(a: NodeRef, b: NodeRef) -> (NodeRef, NodeRef) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Attaches classes from `edges` to polylines keyed by endpoint pair,
/// orienting every polyline from `u` to `v`.
fn attach(
    classes: impl Iterator<Item = (NodeRef, NodeRef, EdgeClass)>,
    mut routes: HashMap<(NodeRef, NodeRef), (NodeRef, Vec<Point>)>,
) -> Result<Vec<DrawnEdge>, LayoutError> {
    let mut out = Vec::new();
    for (u, v, class) in classes {
        let (start, mut polyline) = routes
            .remove(&canonical(u, v))
            .ok_or_else(|| LayoutError::Geometry(format!("edge {u}-{v} was not drawn")))?;
        if start != u {
            polyline.reverse();
        }
        out.push(DrawnEdge {
            u,
            v,
            class,
            polyline,
        });
    }
    if let Some(((a, b), _)) = routes.into_iter().next() {
        return Err(LayoutError::Geometry(format!(
            "drawn curve {a}-{b} is not an edge of the block"
        )));
    }
    Ok(out)
}

/// Draws block `b` as a crossing-free ring: four loops clockwise in column
/// order 1, 2, 4, 3, joined at the corners by the block's level-0 and
/// level-1 cross edges.
pub fn layout_ring(b: &Block, geom: &RingGeometry) -> Result<Drawing, LayoutError> {
    if b.r != geom.r {
        return Err(LayoutError::Geometry(format!(
            "block of WB({}) with geometry for r = {}",
            b.r, geom.r
        )));
    }
    let k = b.k - 1;
    let model_ring = |column: u8| match frame_of(column) {
        Frame::Outer => k,
        Frame::Turned => geom.rings() - 1 - k,
    };
    let mut loops = BTreeMap::new();
    for column in 1..=4u8 {
        loops.insert(
            column,
            geom.loop_model(frame_of(column), model_ring(column))?,
        );
    }
    let mut vertices = Vec::new();
    let mut routes = HashMap::new();
    for (&column, lp) in &loops {
        let t = model_ring(column);
        for (level, p) in &lp.vertices {
            let node = geom.node(column, t, *level);
            vertices.push(PlacedVertex {
                node,
                pos: geom.to_point(column, *p),
                ring: b.k,
                sector: column,
            });
        }
        for (a, c, pts) in &lp.edges {
            let (na, nc) = (geom.node(column, t, *a), geom.node(column, t, *c));
            let poly = pts.iter().map(|p| geom.to_point(column, *p)).collect();
            routes.insert(canonical(na, nc), (na, poly));
        }
    }
    for (ca, cb, sa, sb) in CORNERS {
        let pick = |side: Side, outer: bool| match (side, outer) {
            (Side::Left, true) => Piece::OuterLeft,
            (Side::Right, true) => Piece::OuterRight,
            (Side::Left, false) => Piece::InnerLeft,
            (Side::Right, false) => Piece::InnerRight,
        };
        for outer_a in [true, false] {
            let (la, pa) = &loops[&ca].pieces[&pick(sa, outer_a)];
            let (lb, pb) = &loops[&cb].pieces[&pick(sb, !outer_a)];
            let mut poly: Vec<Point> = pa.iter().map(|p| geom.to_point(ca, *p)).collect();
            let tail: Vec<Point> = pb.iter().rev().map(|p| geom.to_point(cb, *p)).collect();
            if poly.last() != tail.first() {
                return Err(LayoutError::Geometry(format!(
                    "loops {ca} and {cb} do not meet at a corner"
                )));
            }
            poly.extend(tail.into_iter().skip(1));
            let (na, nb) = (
                geom.node(ca, model_ring(ca), *la),
                geom.node(cb, model_ring(cb), *lb),
            );
            routes.insert(canonical(na, nb), (na, poly));
        }
    }
    vertices.sort_by_key(|v| v.node);
    let edges = attach(b.edges.iter().map(|e| (e.u, e.v, e.class)), routes)?;
    Ok(Drawing {
        r: b.r,
        vertices,
        edges,
    })
}

/// All nested rings of RB(r) without routed edges. Uses the routing table's
/// geometry when one is bundled, else the bare geometry.
pub fn layout_rings(r: u32) -> Result<Drawing, LayoutError> {
    let geom = match RingGeometry::new(r) {
        Err(LayoutError::Plan(PlanError::Missing(_))) => RingGeometry::bare(r)?,
        g => g?,
    };
    layout_rings_with(&geom)
}

fn layout_rings_with(geom: &RingGeometry) -> Result<Drawing, LayoutError> {
    let r = geom.r;
    let wb = WrappedButterfly::new(r)?;
    let mut d = Drawing {
        r,
        ..Drawing::default()
    };
    for k in 1..=wb.blocks() {
        let part = layout_ring(&wb.block_subgraph(k)?, geom)?;
        d.vertices.extend(part.vertices);
        d.edges.extend(part.edges);
    }
    d.vertices.sort_by_key(|v| v.node);
    Ok(d)
}

fn route_class(d: &mut Drawing, geom: &RingGeometry, wanted: EdgeClass) -> Result<(), LayoutError> {
    let wb = WrappedButterfly::new(d.r)?;
    let mut routes = HashMap::new();
    for column in 1..=4u8 {
        let kind = frame_of(column);
        for (id, e) in geom.plan.edges.iter().enumerate() {
            let a = geom.node(column, e.up.0, e.up.1);
            let b = geom.node(column, e.lo.0, e.lo.1);
            if wb.classify_edge(a, b)? != wanted {
                continue;
            }
            let poly = geom
                .route_model(kind, id)?
                .into_iter()
                .map(|p| geom.to_point(column, p))
                .collect();
            routes.insert(canonical(a, b), (a, poly));
        }
    }
    let classes = wb
        .edges()
        .iter()
        .filter(|e| e.class == wanted)
        .map(|e| (e.u, e.v, e.class));
    let edges = attach(classes, routes)?;
    d.edges.extend(edges);
    Ok(())
}

/// Adds the routes of all `Inner(i)` edges to a drawing of the rings.
pub fn route_inner_edges(d: &mut Drawing, i: u32) -> Result<(), LayoutError> {
    if d.r < 4 {
        return Err(LayoutError::Unsupported(d.r));
    }
    if !(2..=d.r - 2).contains(&i) {
        return Err(LayoutError::Geometry(format!(
            "inner edge level {i} outside 2..={}",
            d.r - 2
        )));
    }
    route_class(d, &RingGeometry::new(d.r)?, EdgeClass::Inner(i))
}

/// Adds the routes of all wraparound edges to a drawing of the rings.
pub fn route_wrap_edges(d: &mut Drawing) -> Result<(), LayoutError> {
    route_class(d, &RingGeometry::new(d.r)?, EdgeClass::WrapInner)
}

/// The complete drawing RB(r), edges in canonical order.
pub fn layout_rb(r: u32) -> Result<Drawing, LayoutError> {
    if r < 4 {
        return Err(LayoutError::Unsupported(r));
    }
    layout_rb_with(&RingGeometry::new(r)?)
}

/// RB(r) drawn with a given geometry, e.g. one built from a routing table
/// read from a file.
pub fn layout_rb_with(geom: &RingGeometry) -> Result<Drawing, LayoutError> {
    let mut d = layout_rings_with(geom)?;
    for i in 2..=geom.r - 2 {
        route_class(&mut d, geom, EdgeClass::Inner(i))?;
    }
    route_class(&mut d, geom, EdgeClass::WrapInner)?;
    d.edges.sort_by_key(|e| (e.u, e.v));
    Ok(d)
}

/// The part of a drawing owned by column 1: every ring edge with an endpoint
/// in column 1 and every routed edge with both endpoints there, together
/// with the vertices they touch.
pub fn quarter_diagram(d: &Drawing) -> Drawing {
    let in_first = |v: NodeRef| v.block_column() == 1;
    let edges: Vec<DrawnEdge> = d
        .edges
        .iter()
        .filter(|e| {
            if e.class.is_ring() {
                in_first(e.u) || in_first(e.v)
            } else {
                in_first(e.u) && in_first(e.v)
            }
        })
        .cloned()
        .collect();
    let touched: std::collections::BTreeSet<NodeRef> = edges
        .iter()
        .flat_map(|e| [e.u, e.v])
        .chain(d.vertices.iter().map(|v| v.node).filter(|&v| in_first(v)))
        .collect();
    let vertices = d
        .vertices
        .iter()
        .filter(|v| touched.contains(&v.node))
        .cloned()
        .collect();
    Drawing {
        r: d.r,
        vertices,
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lens_points_lie_on_the_lens() {
        let l = Lens::new(-30, 30, 100, 116, 1 << 16).unwrap();
        for p in [
            l.top(0),
            l.top(28),
            l.bottom(-28),
            l.left(108),
            l.right(102),
        ] {
            assert!(l.contains(p));
        }
        let (x, y) = l.top(5);
        assert!(!l.contains((x, y + 1)));
    }

    #[test]
    fn ring_extents_nest() {
        let g = RingGeometry::new(4).unwrap();
        for k in 1..g.rings() {
            assert!(g.band(k + 1).1 < g.band(k).0);
        }
    }

    #[test]
    fn small_dimensions_are_rejected() {
        assert!(matches!(layout_rb(3), Err(LayoutError::Unsupported(3))));
    }
}
