//! Shared helpers for integration tests: random polyline sets and a
//! brute-force crossing oracle written directly on rationals.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use ringwing::crossing_counter::group_key;
use ringwing::drawing::{Drawing, DrawnEdge, PlacedVertex};
use ringwing::geometry::Point;
use ringwing::topology::{EdgeClass, NodeRef};

pub const MAX_SEGMENTS: usize = 50;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A coordinate on a wide grid with small denominators, or on a tiny grid
/// where touching and collinear contacts are common.
fn coord(wide: bool) -> BoxedStrategy<BigRational> {
    if wide {
        (-1_000_000i64..=1_000_000, 1i64..=7)
            .prop_map(|(n, d)| q(n, d))
            .boxed()
    } else {
        (-4i64..=4).prop_map(|n| q(n, 1)).boxed()
    }
}

fn polyline(wide: bool) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(
        (coord(wide), coord(wide)).prop_map(|(x, y)| Point::new(x, y)),
        2..=5,
    )
    .prop_filter_map("needs two distinct points", |mut pts| {
        pts.dedup();
        (pts.len() >= 2).then_some(pts)
    })
}

/// Random drawings of up to `MAX_SEGMENTS` segments. Every edge has its own
/// two endpoints, so no two edges are adjacent.
pub fn polyline_set() -> impl Strategy<Value = Drawing> {
    prop_oneof![4 => Just(true), 1 => Just(false)]
        .prop_flat_map(|wide| prop::collection::vec(polyline(wide), 1..=14))
        .prop_map(|mut lines| {
            let mut total = 0;
            lines.retain(|l| {
                total += l.len() - 1;
                total <= MAX_SEGMENTS
            });
            build(lines)
        })
}

pub fn build(lines: Vec<Vec<Point>>) -> Drawing {
    let classes = [
        EdgeClass::StraightRing,
        EdgeClass::Inner(2),
        EdgeClass::WrapInner,
        EdgeClass::Inner(3),
    ];
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (k, pts) in lines.into_iter().enumerate() {
        let u = NodeRef::new(0, 2 * k as u64);
        let v = NodeRef::new(1, 2 * k as u64 + 1);
        vertices.push(PlacedVertex {
            node: u,
            pos: pts[0].clone(),
            ring: 1,
            sector: 1,
        });
        vertices.push(PlacedVertex {
            node: v,
            pos: pts.last().unwrap().clone(),
            ring: 1,
            sector: 1,
        });
        edges.push(DrawnEdge {
            u,
            v,
            class: classes[k % classes.len()],
            polyline: pts,
        });
    }
    Drawing {
        r: 8,
        vertices,
        edges,
    }
}

fn cross(o: &Point, a: &Point, b: &Point) -> BigRational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

fn sign(v: BigRational) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    sign(cross(a, b, p)) == 0
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

enum Meet {
    None,
    Proper(Point),
    Contact,
}

fn meet(a: &Point, b: &Point, c: &Point, d: &Point) -> Meet {
    let (d1, d2) = (sign(cross(a, b, c)), sign(cross(a, b, d)));
    let (d3, d4) = (sign(cross(c, d, a)), sign(cross(c, d, b)));
    if d1 * d2 < 0 && d3 * d4 < 0 {
        let t = cross(c, d, a) / (cross(c, d, a) - cross(c, d, b));
        let p = Point::new(&a.x + &t * (&b.x - &a.x), &a.y + &t * (&b.y - &a.y));
        return Meet::Proper(p);
    }
    if on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d) {
        return Meet::Contact;
    }
    Meet::None
}

/// What an exact counter must report for a drawing without adjacent edges.
#[derive(Debug, PartialEq, Eq)]
pub enum Expected {
    Degenerate,
    Census {
        total: u64,
        by_class: BTreeMap<String, u64>,
    },
}

/// Checks every segment pair of distinct edges.
pub fn oracle(d: &Drawing) -> Expected {
    let positions: BTreeSet<&Point> = d.vertices.iter().map(|v| &v.pos).collect();
    if positions.len() != d.vertices.len() {
        return Expected::Degenerate;
    }
    let mut points: BTreeMap<Point, u32> = BTreeMap::new();
    let mut by_class = BTreeMap::new();
    let mut total = 0;
    for (i, e) in d.edges.iter().enumerate() {
        for f in &d.edges[i + 1..] {
            for s in e.polyline.windows(2) {
                for t in f.polyline.windows(2) {
                    match meet(&s[0], &s[1], &t[0], &t[1]) {
                        Meet::None => {}
                        Meet::Contact => return Expected::Degenerate,
                        Meet::Proper(p) => {
                            *points.entry(p).or_default() += 1;
                            *by_class
                                .entry(group_key(e.class.group(), f.class.group()).to_string())
                                .or_insert(0) += 1;
                            total += 1;
                        }
                    }
                }
            }
        }
    }
    if points.values().any(|&n| n > 1) {
        return Expected::Degenerate;
    }
    Expected::Census { total, by_class }
}
