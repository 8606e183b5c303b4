//! Draws each block as a ring and confirms the rings are crossing-free.
//!
//! cargo run --release --example ring_planarity -- 7

use ringwing::crossing_counter::count_crossings;
use ringwing::ring_layout::layout_rings;

fn main() {
    let r: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let d = layout_rings(r).expect("4 <= r");
    let c = count_crossings(&d).expect("rings are in general position");
    println!(
        "{} rings, {} vertices, {} ring edges, {} crossings",
        1u64 << (r - 2),
        d.vertices.len(),
        d.edges.len(),
        c.total
    );
}
