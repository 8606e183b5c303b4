use ringwing::bounds::bound_new;
use ringwing::crossing_counter::{count_crossings, count_crossings_with, validate_good_drawing};
use ringwing::drawing::Drawing;
use ringwing::geometry::Rational;
use ringwing::ring_layout::plan::bundled_dimensions;
use ringwing::ring_layout::{
    layout_rb, layout_ring, layout_rings, quarter_diagram, route_inner_edges, route_wrap_edges,
    LayoutError, RingGeometry,
};
use ringwing::topology::{EdgeClass, WrappedButterfly};

fn census_of(d: &Drawing) -> Vec<u64> {
    let c = count_crossings(d).unwrap();
    ["IExRE", "WIExRE", "IExWIE", "WIExWIE", "IExIE", "RExRE"]
        .iter()
        .map(|k| c.get(k))
        .collect()
}

#[test]
fn rb4_census_matches_the_lemmas() {
    let d = layout_rb(4).unwrap();
    assert!(validate_good_drawing(&d).is_empty());
    assert_eq!(census_of(&d), vec![32, 64, 0, 0, 0, 0]);
    assert_eq!(count_crossings(&d).unwrap().total, 96);
}

#[test]
fn rb4_quarter_has_a_quarter_of_the_crossings() {
    let d = layout_rb(4).unwrap();
    let q = quarter_diagram(&d);
    assert_eq!(count_crossings(&q).unwrap().total, 24);
    let cycles = q.vertices.iter().filter(|v| v.sector == 1).count();
    assert_eq!(cycles, 4 * 4);
}

#[test]
fn rb5_census_matches_the_lemmas() {
    let d = layout_rb(5).unwrap();
    assert!(validate_good_drawing(&d).is_empty());
    assert_eq!(census_of(&d), vec![192, 256, 64, 32, 0, 0]);
    assert_eq!(count_crossings(&d).unwrap().total, 544);
    assert_eq!(count_crossings(&quarter_diagram(&d)).unwrap().total, 136);
}

#[test]
fn rb6_stays_within_the_closed_form() {
    let d = layout_rb(6).unwrap();
    assert!(validate_good_drawing(&d).is_empty());
    let total = count_crossings(&d).unwrap().total as i128;
    assert!(total <= bound_new(6).unwrap(), "total {total}");
}

#[test]
fn layout_is_deterministic_and_round_trips() {
    let a = layout_rb(4).unwrap();
    let b = layout_rb(4).unwrap();
    assert_eq!(a, b);
    let json = a.to_json();
    assert_eq!(json, b.to_json());
    assert_eq!(Drawing::from_json(&json).unwrap(), a);
}

#[test]
fn census_does_not_depend_on_threads() {
    let d = layout_rb(4).unwrap();
    let one = count_crossings_with(&d, 1).unwrap();
    let four = count_crossings_with(&d, 4).unwrap();
    assert_eq!(one.crossings, four.crossings);
    assert_eq!(one.by_label, four.by_label);
}

#[test]
fn rings_are_planar_and_ordered_clockwise() {
    let g = WrappedButterfly::new(4).unwrap();
    let geom = RingGeometry::new(4).unwrap();
    for k in 1..=g.blocks() {
        let frag = layout_ring(&g.block_subgraph(k).unwrap(), &geom).unwrap();
        assert_eq!(frag.vertices.len(), 16);
        assert_eq!(frag.edges.len(), 24);
        assert_eq!(count_crossings(&frag).unwrap().total, 0);
        // Column 1 above, 2 right, 4 below, 3 left: clockwise 1, 2, 4, 3.
        for v in &frag.vertices {
            let (x, y) = (&v.pos.x, &v.pos.y);
            let side = match v.sector {
                1 => y > x && *y > -x.clone(),
                2 => x > y && *x > -y.clone(),
                4 => y < x && *y < -x.clone(),
                _ => x < y && *x < -y.clone(),
            };
            assert!(
                side,
                "vertex {} of column {} is outside its sector",
                v.node, v.sector
            );
        }
    }
}

fn radius(d: &Drawing, ring: u64) -> (Rational, Rational) {
    let rs: Vec<Rational> = d
        .vertices
        .iter()
        .filter(|v| v.ring == ring)
        .map(|v| {
            let (x, y) = (v.pos.x.clone(), v.pos.y.clone());
            let (ax, ay) = (
                if x < Rational::from_integer(0.into()) {
                    -x
                } else {
                    x
                },
                if y < Rational::from_integer(0.into()) {
                    -y
                } else {
                    y
                },
            );
            ax.max(ay)
        })
        .collect();
    (
        rs.iter().min().unwrap().clone(),
        rs.iter().max().unwrap().clone(),
    )
}

#[test]
fn rings_nest_inside_each_other() {
    let d = layout_rings(4).unwrap();
    let geom = RingGeometry::new(4).unwrap();
    for k in 1..4u64 {
        assert!(radius(&d, k + 1).1 < radius(&d, k).0);
        let (lo, hi) = geom.band(k);
        let (a, b) = radius(&d, k);
        assert!(lo <= a && b <= hi);
    }
}

#[test]
fn routing_in_stages_matches_the_full_layout() {
    let mut d = layout_rings(4).unwrap();
    assert_eq!(d.edges.len(), 6 * 16);
    route_inner_edges(&mut d, 2).unwrap();
    assert_eq!(
        d.edges
            .iter()
            .filter(|e| e.class == EdgeClass::Inner(2))
            .count(),
        16
    );
    for e in d.edges.iter().filter(|e| e.class == EdgeClass::Inner(2)) {
        assert_eq!(e.u.block().abs_diff(e.v.block()), 1);
    }
    route_wrap_edges(&mut d).unwrap();
    d.edges.sort_by_key(|e| (e.u, e.v));
    assert_eq!(d, layout_rb(4).unwrap());
    assert!(route_inner_edges(&mut d, 3).is_err());
}

#[test]
fn ring_crossings_per_class_sum_to_the_lemmas() {
    let d = layout_rb(4).unwrap();
    let c = count_crossings(&d).unwrap();
    let inner: u64 = c
        .by_label
        .iter()
        .filter(|(k, _)| k.contains("I2") && k.contains("RE"))
        .map(|(_, v)| *v)
        .sum();
    let wrap: u64 = c
        .by_label
        .iter()
        .filter(|(k, _)| k.contains("Iwrap") && k.contains("RE"))
        .map(|(_, v)| *v)
        .sum();
    assert_eq!((inner, wrap), (32, 64));
}

#[test]
fn unsupported_dimensions_are_rejected() {
    assert!(matches!(layout_rb(3), Err(LayoutError::Unsupported(3))));
    assert!(matches!(layout_rb(9), Err(LayoutError::Plan(_))));
}

#[test]
fn every_bundled_table_gives_a_good_drawing() {
    for r in bundled_dimensions() {
        let d = layout_rb(r).unwrap();
        assert!(validate_good_drawing(&d).is_empty(), "r = {r}");
    }
}

#[test]
fn svg_has_one_polyline_per_edge() {
    let d = layout_rb(4).unwrap();
    let svg = d.to_svg();
    assert_eq!(svg.matches("<polyline").count(), d.edges.len());
    assert_eq!(svg.matches("<circle").count(), d.vertices.len());
}

#[test]
fn rings_without_a_routing_table_are_still_planar() {
    for r in [7u32, 8] {
        let d = layout_rings(r).unwrap();
        assert_eq!(d.vertices.len(), (r as usize) << r);
        let c = count_crossings(&d).unwrap();
        assert_eq!(c.total, 0, "r = {r}");
        assert!(c.violations.is_empty());
    }
}
