//! Serializes RB(4) to JSON, reads it back, and recounts with several thread
//! counts.
//!
//! cargo run --release --example drawing_roundtrip

use ringwing::crossing_counter::count_crossings_with;
use ringwing::drawing::Drawing;
use ringwing::ring_layout::layout_rb;

fn main() {
    let d = layout_rb(4).expect("bundled");
    let text = d.to_json();
    let back = Drawing::from_json(&text).expect("round trip");
    assert_eq!(back, d);
    println!("{} bytes round-trip exactly", text.len());
    for threads in [1, 2, 4] {
        let c = count_crossings_with(&back, threads).expect("general position");
        println!("threads {threads}: total {}", c.total);
    }
}
