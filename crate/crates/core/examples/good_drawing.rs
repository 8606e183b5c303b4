//! Validates a drawing against the good-drawing rules, first on RB(4) and
//! then on a hand-made drawing where two edges cross three times.
//!
//! cargo run --example good_drawing

use ringwing::crossing_counter::validate_good_drawing;
use ringwing::drawing::{Drawing, DrawnEdge, PlacedVertex};
use ringwing::geometry::Point;
use ringwing::ring_layout::layout_rb;
use ringwing::topology::{EdgeClass, NodeRef};

fn main() {
    let d = layout_rb(4).expect("bundled");
    println!("RB(4): {} violations", validate_good_drawing(&d).len());

    let v = |level, row, x, y| PlacedVertex {
        node: NodeRef::new(level, row),
        pos: Point::int(x, y),
        ring: 1,
        sector: 1,
    };
    let vertices = vec![v(0, 0, 0, 0), v(1, 0, 4, 4), v(0, 1, 0, 4), v(1, 1, 4, 0)];
    let edge = |u: &PlacedVertex, w: &PlacedVertex, mid: &[(i64, i64)]| DrawnEdge {
        u: u.node,
        v: w.node,
        class: EdgeClass::StraightRing,
        polyline: std::iter::once(u.pos.clone())
            .chain(mid.iter().map(|&(x, y)| Point::int(x, y)))
            .chain(std::iter::once(w.pos.clone()))
            .collect(),
    };
    let edges = vec![
        edge(&vertices[0], &vertices[1], &[]),
        edge(&vertices[2], &vertices[3], &[(2, -2), (2, 6)]),
    ];
    let bad = Drawing {
        r: 4,
        vertices,
        edges,
    };
    for violation in validate_good_drawing(&bad) {
        println!("  {:?} on edges {:?}", violation.kind, violation.edges);
    }
}
