//! Builds WB(r) and prints its size, class counts, and first edges.
//!
//! cargo run --example wrapped_butterfly -- 5

use ringwing::topology::{build_wrapped_butterfly, EdgeClass};

fn main() {
    let r: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let g = build_wrapped_butterfly(r).expect("r >= 2");
    println!(
        "WB({r}): {} vertices, {} edges, connected: {}",
        g.vertex_count(),
        g.edges().len(),
        g.is_connected()
    );
    let classes = [
        ("straight ring", EdgeClass::StraightRing),
        ("cross ring 0", EdgeClass::CrossRing(0)),
        ("cross ring 1", EdgeClass::CrossRing(1)),
    ];
    for (name, c) in classes {
        println!("  {name:<14} {}", g.class_count(c));
    }
    for i in 2..r.saturating_sub(1) {
        println!("  I{i:<13} {}", g.class_count(EdgeClass::Inner(i)));
    }
    if r >= 3 {
        println!("  Iwrap          {}", g.class_count(EdgeClass::WrapInner));
    }
    for line in g.to_edge_list().lines().take(6) {
        println!("  {line}");
    }
}
