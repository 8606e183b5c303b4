use ringwing::topology::{build_wrapped_butterfly, ClassGroup, EdgeClass, NodeRef};

#[test]
fn sizes_regularity_and_connectivity() {
    for r in 2..=8u32 {
        let g = build_wrapped_butterfly(r).unwrap();
        assert_eq!(g.vertex_count(), (r as usize) << r, "r = {r}");
        assert_eq!(g.edges().len(), (r as usize) << (r + 1), "r = {r}");
        assert!(g.vertices().all(|v| g.degree(v) == 4), "r = {r}");
        assert!(g.is_connected(), "r = {r}");
    }
}

#[test]
fn class_counts() {
    for r in 4..=8u32 {
        let g = build_wrapped_butterfly(r).unwrap();
        let n = 1usize << r;
        let ring = g
            .edges()
            .iter()
            .filter(|e| e.class.group() == ClassGroup::Re)
            .count();
        assert_eq!(ring, (r as usize + 2) * n);
        for i in 2..=r - 2 {
            assert_eq!(g.class_count(EdgeClass::Inner(i)), n);
        }
        assert_eq!(g.class_count(EdgeClass::WrapInner), n);
    }
}

#[test]
fn inner_edges_join_rings_at_power_of_two_offsets() {
    let g = build_wrapped_butterfly(6).unwrap();
    for e in g.edges() {
        let offset = e.u.block().abs_diff(e.v.block());
        match e.class {
            EdgeClass::Inner(i) => assert_eq!(offset, 1 << (i - 2)),
            EdgeClass::WrapInner => assert_eq!(offset, 1 << (g.r - 3)),
            _ => assert_eq!(offset, 0),
        }
        if !e.class.is_ring() {
            assert_eq!(e.u.block_column(), e.v.block_column());
        }
    }
}

#[test]
fn blocks_are_isomorphic() {
    for r in 4..=6u32 {
        let g = build_wrapped_butterfly(r).unwrap();
        for k in 2..=g.blocks() {
            let iso = g.verify_block_isomorphism(1, k).unwrap();
            assert_eq!(iso.map.len(), 4 * r as usize);
        }
    }
}

#[test]
fn each_block_is_four_cycles_and_eight_joins() {
    let g = build_wrapped_butterfly(5).unwrap();
    let b = g.block_subgraph(3).unwrap();
    assert_eq!(b.cycles.len(), 4);
    assert_eq!(b.edges.len(), 4 * 5 + 8);
    assert!(b.cycles[0].contains(&NodeRef::new(0, 8)));
}
