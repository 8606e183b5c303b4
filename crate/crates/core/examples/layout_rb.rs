//! Lays out RB(r) and writes the drawing as JSON and SVG.
//!
//! cargo run --release --example layout_rb -- 4 /tmp/rb4

use std::path::PathBuf;

use ringwing::ring_layout::layout_rb;

fn main() {
    let mut args = std::env::args().skip(1);
    let r: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let stem = PathBuf::from(args.next().unwrap_or_else(|| format!("rb{r}")));
    let d = layout_rb(r).expect("a routing table is bundled for r");
    std::fs::write(stem.with_extension("json"), d.to_json()).expect("write JSON");
    std::fs::write(stem.with_extension("svg"), d.to_svg()).expect("write SVG");
    println!(
        "RB({r}): {} vertices, {} edges, {} segments",
        d.vertices.len(),
        d.edges.len(),
        d.segment_count()
    );
    println!(
        "wrote {} and {}",
        stem.with_extension("json").display(),
        stem.with_extension("svg").display()
    );
}
