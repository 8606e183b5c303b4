//! Exact crossing census and good-drawing validation.
//!
//! Coordinates are scaled by the common denominator of the whole drawing so
//! every predicate runs on integers. When the scaled values fit comfortably in
//! 62 bits the scan uses `i128`, otherwise `BigInt`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::drawing::Drawing;
use crate::geometry::{
    classify, common_denominator, rational_to_string, scale, unscale, Coord, IContact, IPoint,
    Point,
};
use crate::topology::{ClassGroup, EdgeClass};

pub use crate::geometry::{segment_intersection, SegmentContact};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ViolationKind {
    SelfCrossing,
    AdjacentEdgesCross,
    PairCrossesTwice,
    TripleOrHigherPoint,
    DegenerateOverlap,
    VertexOnEdgeInterior,
}

impl ViolationKind {
    /// Kinds that leave the crossing count undefined.
    pub fn blocks_census(self) -> bool {
        matches!(
            self,
            ViolationKind::TripleOrHigherPoint
                | ViolationKind::DegenerateOverlap
                | ViolationKind::VertexOnEdgeInterior
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodDrawingViolation {
    pub kind: ViolationKind,
    /// Indices into `Drawing::edges`.
    pub edges: Vec<usize>,
    pub point: Option<Point>,
}

impl GoodDrawingViolation {
    fn to_json(&self, d: &Drawing) -> serde_json::Value {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|&k| {
                let e = &d.edges[k];
                format!("{}-{}", e.u, e.v)
            })
            .collect();
        json!({
            "kind": format!("{:?}", self.kind),
            "edges": edges,
            "point": self.point.as_ref().map(|p| [rational_to_string(&p.x), rational_to_string(&p.y)]),
        })
    }
}

/// A proper crossing between two distinct edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Crossing {
    pub a: usize,
    pub b: usize,
    pub point: Point,
}

pub const GROUP_KEYS: [&str; 6] = ["IExRE", "WIExRE", "IExWIE", "WIExWIE", "IExIE", "RExRE"];

pub fn group_key(a: ClassGroup, b: ClassGroup) -> &'static str {
    use ClassGroup::*;
    match (a.max(b), a.min(b)) {
        (Ie, Re) => "IExRE",
        (Wie, Re) => "WIExRE",
        (Wie, Ie) => "IExWIE",
        (Wie, Wie) => "WIExWIE",
        (Ie, Ie) => "IExIE",
        (Re, Re) => "RExRE",
        _ => unreachable!("pair is ordered"),
    }
}

fn label_key(a: EdgeClass, b: EdgeClass) -> String {
    let rank = |c: EdgeClass| match c {
        EdgeClass::StraightRing | EdgeClass::CrossRing(_) => 0,
        EdgeClass::Inner(i) => i as i64,
        EdgeClass::WrapInner => i64::MAX,
    };
    let (hi, lo) = if rank(a) >= rank(b) { (a, b) } else { (b, a) };
    format!("{}x{}", hi.label(), lo.label())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingCensus {
    pub r: u32,
    pub total: u64,
    /// Keyed by the names in [`GROUP_KEYS`]; every key present.
    pub by_class: BTreeMap<String, u64>,
    /// Same counts split by level label, e.g. `I3xRE` or `IwrapxI2`.
    pub by_label: BTreeMap<String, u64>,
    pub crossings: Vec<Crossing>,
    pub violations: Vec<GoodDrawingViolation>,
}

impl CrossingCensus {
    pub fn get(&self, key: &str) -> u64 {
        self.by_class.get(key).copied().unwrap_or(0)
    }

    pub fn to_json(&self, d: &Drawing) -> String {
        let by_class: serde_json::Map<String, serde_json::Value> = GROUP_KEYS
            .iter()
            .map(|k| (k.to_string(), json!(self.get(k))))
            .collect();
        let doc = json!({
            "r": self.r,
            "total": self.total,
            "by_class": by_class,
            "by_label": self.by_label,
            "violations": self.violations.iter().map(|v| v.to_json(d)).collect::<Vec<_>>(),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("census serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CensusError {
    #[error("drawing is degenerate ({} violations, first: {:?}); crossing count is undefined", .0.len(), .0.first().map(|v| v.kind))]
    Degenerate(Vec<GoodDrawingViolation>),
    #[error("censuses are for different dimensions ({0} vs {1})")]
    DimensionMismatch(u32, u32),
    #[error("could not build thread pool: {0}")]
    Threads(String),
}

#[derive(Clone)]
struct Seg<T> {
    edge: usize,
    idx: usize,
    a: IPoint<T>,
    b: IPoint<T>,
    lo: IPoint<T>,
    hi: IPoint<T>,
}

enum Event<T> {
    Proper {
        e: usize,
        f: usize,
        x: T,
        y: T,
        w: T,
    },
    Contact {
        kind: ViolationKind,
        edges: Vec<usize>,
        x: T,
        y: T,
        w: T,
    },
}

struct Scan {
    crossings: Vec<Crossing>,
    violations: Vec<GoodDrawingViolation>,
}

fn build_segments<T: Coord>(
    d: &Drawing,
    conv: impl Fn(&IPoint<BigInt>) -> IPoint<T>,
    l: &BigInt,
) -> Vec<Seg<T>> {
    let mut segs = Vec::with_capacity(d.segment_count());
    for (k, e) in d.edges.iter().enumerate() {
        for (idx, w) in e.polyline.windows(2).enumerate() {
            let a = conv(&scale(&w[0], l));
            let b = conv(&scale(&w[1], l));
            let lo = [
                a[0].clone().min(b[0].clone()),
                a[1].clone().min(b[1].clone()),
            ];
            let hi = [
                a[0].clone().max(b[0].clone()),
                a[1].clone().max(b[1].clone()),
            ];
            segs.push(Seg {
                edge: k,
                idx,
                a,
                b,
                lo,
                hi,
            });
        }
    }
    segs.sort_by(|s, t| {
        s.lo[0]
            .cmp(&t.lo[0])
            .then(s.edge.cmp(&t.edge))
            .then(s.idx.cmp(&t.idx))
    });
    segs
}

fn scan_pairs<T: Coord + Send + Sync>(d: &Drawing, segs: &[Seg<T>]) -> Vec<Event<T>> {
    let nsegs: Vec<usize> = d.edges.iter().map(|e| e.polyline.len() - 1).collect();
    let per_seg: Vec<Vec<Event<T>>> = (0..segs.len())
        .into_par_iter()
        .map(|i| {
            let s = &segs[i];
            let mut out = Vec::new();
            for t in &segs[i + 1..] {
                if t.lo[0] > s.hi[0] {
                    break;
                }
                if t.lo[1] > s.hi[1] || s.lo[1] > t.hi[1] {
                    continue;
                }
                let c = classify(&s.a, &s.b, &t.a, &t.b);
                if matches!(c, IContact::Disjoint) {
                    continue;
                }
                if s.edge == t.edge {
                    let consecutive = s.idx.abs_diff(t.idx) == 1;
                    if consecutive && matches!(c, IContact::Shared) {
                        continue;
                    }
                    let (x, y, w) = contact_point(&c, s, t);
                    out.push(Event::Contact {
                        kind: ViolationKind::SelfCrossing,
                        edges: vec![s.edge],
                        x,
                        y,
                        w,
                    });
                    continue;
                }
                let (e, f) = (s.edge.min(t.edge), s.edge.max(t.edge));
                match c {
                    IContact::Proper(x, y, w) => out.push(Event::Proper { e, f, x, y, w }),
                    IContact::Overlap => {
                        let (x, y, w) = contact_point(&c, s, t);
                        out.push(Event::Contact {
                            kind: ViolationKind::DegenerateOverlap,
                            edges: vec![e, f],
                            x,
                            y,
                            w,
                        })
                    }
                    IContact::Shared | IContact::Touch(..) => {
                        let (x, y, w) = contact_point(&c, s, t);
                        let p = [x.clone(), y.clone()];
                        let at_vertex = |g: &Seg<T>| {
                            (g.idx == 0 && g.a == p) || (g.idx + 1 == nsegs[g.edge] && g.b == p)
                        };
                        let (vs, vt) = (at_vertex(s), at_vertex(t));
                        if vs && vt && matches!(c, IContact::Shared) {
                            // Both edges end here; adjacency is checked against node ids below.
                            let same = shares_endpoint_at(d, s.edge, t.edge);
                            if same {
                                continue;
                            }
                        }
                        let kind = if vs || vt {
                            ViolationKind::VertexOnEdgeInterior
                        } else {
                            ViolationKind::DegenerateOverlap
                        };
                        out.push(Event::Contact {
                            kind,
                            edges: vec![e, f],
                            x,
                            y,
                            w,
                        });
                    }
                    IContact::Disjoint => {}
                }
            }
            out
        })
        .collect();
    per_seg.into_iter().flatten().collect()
}

fn shares_endpoint_at(d: &Drawing, e: usize, f: usize) -> bool {
    let (a, b) = (&d.edges[e], &d.edges[f]);
    a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v
}

/// A representative point for a non-proper contact.
fn contact_point<T: Coord>(c: &IContact<T>, s: &Seg<T>, t: &Seg<T>) -> (T, T, T) {
    match c {
        IContact::Proper(x, y, w) | IContact::Touch(x, y, w) => (x.clone(), y.clone(), w.clone()),
        IContact::Shared => {
            let p = if s.a == t.a || s.a == t.b { &s.a } else { &s.b };
            (p[0].clone(), p[1].clone(), T::one())
        }
        IContact::Overlap => {
            let p = if on_box(&t.lo, &t.hi, &s.a) {
                &s.a
            } else if on_box(&t.lo, &t.hi, &s.b) {
                &s.b
            } else {
                &t.a
            };
            (p[0].clone(), p[1].clone(), T::one())
        }
        IContact::Disjoint => (T::zero(), T::zero(), T::one()),
    }
}

fn on_box<T: Coord>(lo: &IPoint<T>, hi: &IPoint<T>, p: &IPoint<T>) -> bool {
    lo[0] <= p[0] && p[0] <= hi[0] && lo[1] <= p[1] && p[1] <= hi[1]
}

fn structural_violations(d: &Drawing) -> Vec<GoodDrawingViolation> {
    let mut out = Vec::new();
    let pos = d.position_map();
    let mut seen: HashMap<&Point, usize> = HashMap::new();
    for v in &d.vertices {
        *seen.entry(&v.pos).or_default() += 1;
    }
    let mut dup: Vec<&Point> = seen
        .into_iter()
        .filter(|(_, n)| *n > 1)
        .map(|(p, _)| p)
        .collect();
    dup.sort();
    for p in dup {
        out.push(GoodDrawingViolation {
            kind: ViolationKind::DegenerateOverlap,
            edges: Vec::new(),
            point: Some(p.clone()),
        });
    }
    for (k, e) in d.edges.iter().enumerate() {
        let ends_ok = e.polyline.len() >= 2
            && pos.get(&e.u).is_some_and(|p| **p == e.polyline[0])
            && pos
                .get(&e.v)
                .is_some_and(|p| **p == *e.polyline.last().unwrap());
        let zero_len = e.polyline.windows(2).find(|w| w[0] == w[1]);
        if !ends_ok || zero_len.is_some() {
            out.push(GoodDrawingViolation {
                kind: ViolationKind::DegenerateOverlap,
                edges: vec![k],
                point: zero_len.map(|w| w[0].clone()),
            });
        }
    }
    out
}

fn run_scan(d: &Drawing) -> Scan {
    let mut violations = structural_violations(d);
    if violations.iter().any(|v| v.edges.len() == 1) {
        // Zero-length or detached polylines break the segment predicates.
        return Scan {
            crossings: Vec::new(),
            violations,
        };
    }
    let l = common_denominator(
        d.vertices
            .iter()
            .map(|v| &v.pos)
            .chain(d.edges.iter().flat_map(|e| &e.polyline)),
    );
    let limit = BigInt::from(1u64 << 62);
    let fits = d
        .edges
        .iter()
        .flat_map(|e| &e.polyline)
        .all(|p| scale(p, &l).iter().all(|c| c.abs() < limit));
    let (crossings, contacts) = if fits {
        let segs = build_segments(
            d,
            |p| [p[0].to_i128().unwrap(), p[1].to_i128().unwrap()],
            &l,
        );
        split_events(scan_pairs(d, &segs), &l)
    } else {
        let segs = build_segments(d, |p| p.clone(), &l);
        split_events(scan_pairs(d, &segs), &l)
    };
    violations.extend(contacts);
    Scan {
        crossings,
        violations,
    }
}

fn split_events<T: Coord + Into<BigInt>>(
    events: Vec<Event<T>>,
    l: &BigInt,
) -> (Vec<Crossing>, Vec<GoodDrawingViolation>) {
    let mut crossings = Vec::new();
    let mut contacts = Vec::new();
    for ev in events {
        match ev {
            Event::Proper { e, f, x, y, w } => crossings.push(Crossing {
                a: e,
                b: f,
                point: unscale(x, y, w, l),
            }),
            Event::Contact {
                kind,
                edges,
                x,
                y,
                w,
            } => contacts.push(GoodDrawingViolation {
                kind,
                edges,
                point: Some(unscale(x, y, w, l)),
            }),
        }
    }
    crossings.sort();
    (crossings, contacts)
}

fn crossing_violations(d: &Drawing, crossings: &[Crossing]) -> Vec<GoodDrawingViolation> {
    let mut out = Vec::new();
    let mut by_pair: BTreeMap<(usize, usize), Vec<&Crossing>> = BTreeMap::new();
    let mut by_point: BTreeMap<&Point, Vec<&Crossing>> = BTreeMap::new();
    for c in crossings {
        by_pair.entry((c.a, c.b)).or_default().push(c);
        by_point.entry(&c.point).or_default().push(c);
        if shares_endpoint_at(d, c.a, c.b) {
            out.push(GoodDrawingViolation {
                kind: ViolationKind::AdjacentEdgesCross,
                edges: vec![c.a, c.b],
                point: Some(c.point.clone()),
            });
        }
    }
    for ((a, b), cs) in by_pair {
        if cs.len() > 1 {
            out.push(GoodDrawingViolation {
                kind: ViolationKind::PairCrossesTwice,
                edges: vec![a, b],
                point: Some(cs[1].point.clone()),
            });
        }
    }
    for (p, cs) in by_point {
        if cs.len() > 1 {
            let mut edges: Vec<usize> = cs.iter().flat_map(|c| [c.a, c.b]).collect();
            edges.sort();
            edges.dedup();
            out.push(GoodDrawingViolation {
                kind: ViolationKind::TripleOrHigherPoint,
                edges,
                point: Some(p.clone()),
            });
        }
    }
    out
}

fn sort_violations(v: &mut [GoodDrawingViolation]) {
    v.sort_by(|a, b| (a.kind, &a.edges, &a.point).cmp(&(b.kind, &b.edges, &b.point)));
}

/// All good-drawing violations; empty means the drawing is good.
pub fn validate_good_drawing(d: &Drawing) -> Vec<GoodDrawingViolation> {
    let scan = run_scan(d);
    let mut v = scan.violations;
    v.extend(crossing_violations(d, &scan.crossings));
    sort_violations(&mut v);
    v
}

/// Census using rayon's global pool.
pub fn count_crossings(d: &Drawing) -> Result<CrossingCensus, CensusError> {
    census(d)
}

/// Census on a dedicated pool of `threads` workers (0 means rayon's default).
/// The result does not depend on the thread count.
pub fn count_crossings_with(d: &Drawing, threads: usize) -> Result<CrossingCensus, CensusError> {
    if threads == 0 {
        return census(d);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CensusError::Threads(e.to_string()))?;
    pool.install(|| census(d))
}

fn census(d: &Drawing) -> Result<CrossingCensus, CensusError> {
    let scan = run_scan(d);
    let mut violations = scan.violations;
    violations.extend(crossing_violations(d, &scan.crossings));
    sort_violations(&mut violations);
    if violations.iter().any(|v| v.kind.blocks_census()) {
        return Err(CensusError::Degenerate(violations));
    }
    let mut by_class: BTreeMap<String, u64> =
        GROUP_KEYS.iter().map(|k| (k.to_string(), 0)).collect();
    let mut by_label = BTreeMap::new();
    let mut total = 0;
    for c in &scan.crossings {
        if shares_endpoint_at(d, c.a, c.b) {
            continue;
        }
        let (ca, cb) = (d.edges[c.a].class, d.edges[c.b].class);
        *by_class.get_mut(group_key(ca.group(), cb.group())).unwrap() += 1;
        *by_label.entry(label_key(ca, cb)).or_insert(0) += 1;
        total += 1;
    }
    Ok(CrossingCensus {
        r: d.r,
        total,
        by_class,
        by_label,
        crossings: scan.crossings,
        violations,
    })
}

/// Per-class differences between a measured census and predicted counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusDiff {
    pub r: u32,
    pub deltas: BTreeMap<String, i128>,
}

impl CensusDiff {
    pub fn is_zero(&self) -> bool {
        self.deltas.values().all(|&d| d == 0)
    }
}

/// A predicted census: group key to expected count. Missing keys mean zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PredictedCensus {
    pub r: u32,
    pub by_class: BTreeMap<String, u64>,
}

impl PredictedCensus {
    /// The counts the lemmas predict for the ring drawing, with IE x IE zero.
    pub fn from_lemmas(r: u32) -> Result<Self, crate::bounds::BoundsError> {
        use crate::bounds::{lemma4, lemma5, lemma6, lemma7};
        let mut by_class: BTreeMap<String, u64> =
            GROUP_KEYS.iter().map(|k| (k.to_string(), 0)).collect();
        by_class.insert("IExRE".into(), lemma4(r)? as u64);
        by_class.insert("WIExRE".into(), lemma5(r)? as u64);
        by_class.insert("IExWIE".into(), lemma6(r)? as u64);
        by_class.insert("WIExWIE".into(), lemma7(r)? as u64);
        Ok(PredictedCensus { r, by_class })
    }

    pub fn from_census(c: &CrossingCensus) -> Self {
        PredictedCensus {
            r: c.r,
            by_class: c.by_class.clone(),
        }
    }
}

pub fn census_diff(
    measured: &CrossingCensus,
    predicted: &PredictedCensus,
) -> Result<CensusDiff, CensusError> {
    if measured.r != predicted.r {
        return Err(CensusError::DimensionMismatch(measured.r, predicted.r));
    }
    let deltas = GROUP_KEYS
        .iter()
        .map(|k| {
            let m = measured.get(k) as i128;
            let p = predicted.by_class.get(*k).copied().unwrap_or(0) as i128;
            (k.to_string(), m - p)
        })
        .collect();
    Ok(CensusDiff {
        r: measured.r,
        deltas,
    })
}
