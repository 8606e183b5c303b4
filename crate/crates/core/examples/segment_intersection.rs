//! Classifies how pairs of segments meet, in exact rational arithmetic.
//!
//! cargo run --example segment_intersection

use ringwing::geometry::{ratio, segment_intersection, Point};

fn main() {
    let p = Point::int;
    let third = Point::new(ratio(1, 3), ratio(1, 3));
    let cases = [
        ("proper crossing", [p(0, 0), p(2, 2), p(0, 2), p(2, 0)]),
        ("shared endpoint", [p(0, 0), p(2, 2), p(2, 2), p(4, 0)]),
        ("touch", [p(0, 0), p(2, 2), third.clone(), p(3, -1)]),
        ("collinear overlap", [p(0, 0), p(2, 2), p(1, 1), p(3, 3)]),
        ("disjoint", [p(0, 0), p(1, 0), p(0, 1), p(1, 1)]),
    ];
    for (name, [a1, a2, b1, b2]) in cases {
        println!(
            "{name:<18} {:?}",
            segment_intersection(&a1, &a2, &b1, &b2).expect("non-degenerate")
        );
    }
}
