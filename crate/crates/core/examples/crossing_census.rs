//! Counts the crossings of RB(r) by class pair, compares them with the lemma
//! predictions, and counts the quarter diagram.
//!
//! cargo run --release --example crossing_census -- 5

use ringwing::bounds::{bound_new, lemma_sum};
use ringwing::crossing_counter::{census_diff, count_crossings, PredictedCensus};
use ringwing::ring_layout::{layout_rb, quarter_diagram};

fn main() {
    let r: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let d = layout_rb(r).expect("a routing table is bundled for r");
    let c = count_crossings(&d).expect("drawing is in general position");
    println!(
        "RB({r}) total {} (closed form {}, lemma sum {})",
        c.total,
        bound_new(r).unwrap(),
        lemma_sum(r).unwrap()
    );
    for (k, v) in &c.by_class {
        println!("  {k:<8} {v}");
    }
    for (k, v) in &c.by_label {
        println!("  {k:<12} {v}");
    }
    let diff = census_diff(&c, &PredictedCensus::from_lemmas(r).unwrap()).unwrap();
    println!(
        "measured minus lemmas: {:?} (zero: {})",
        diff.deltas,
        diff.is_zero()
    );
    let q = count_crossings(&quarter_diagram(&d)).expect("quarter is in general position");
    println!("quarter diagram {}", q.total);
}
