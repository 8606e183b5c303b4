//! Checks that every block of WB(r) is isomorphic to block 1 and prints one
//! explicit vertex map.
//!
//! cargo run --example block_isomorphism -- 5

use ringwing::topology::build_wrapped_butterfly;

fn main() {
    let r: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let g = build_wrapped_butterfly(r).expect("r >= 4");
    for k in 2..=g.blocks() {
        g.verify_block_isomorphism(1, k)
            .expect("blocks are isomorphic");
    }
    println!(
        "all {} blocks of WB({r}) are isomorphic to block 1",
        g.blocks()
    );
    let iso = g
        .verify_block_isomorphism(1, g.blocks())
        .expect("isomorphic");
    for (a, b) in iso.map.iter().take(8) {
        println!("  {a:?} -> {b:?}");
    }
}
