//! Prints the closed-form bounds and lemma terms as a markdown table.
//!
//! cargo run --example bounds_table -- 4 12

use ringwing::bounds::{comparison_table, to_markdown};

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<u32>().expect("integer"));
    let lo = args.next().unwrap_or(4);
    let hi = args.next().unwrap_or(10);
    let rows = comparison_table(lo, hi).expect("4 <= lo <= hi");
    print!("{}", to_markdown(&rows));
    println!(
        "ordered for every row: {}",
        rows.iter().all(|r| r.is_ordered())
    );
}
