mod common;

use coin::fca::{
    build_one_mode_context, enumerate_concepts, enumerate_concepts_with_limit,
    extract_identical_concepts, FormalContext,
};
use coin::{fast_identical_concepts, CoinError, Graph, NodeSet};
use common::*;
use proptest::prelude::*;

const TOY_CONTEXT: [&str; 15] = [
    "111100000000000",
    "111100000000000",
    "111100000000000",
    "111110000000000",
    "000111100000000",
    "000011100001000",
    "000011100000000",
    "000000011111000",
    "000000011110000",
    "000000011101000",
    "000000011010000",
    "000001010101000",
    "000000000000111",
    "000000000000111",
    "000000000000111",
];

#[test]
fn toy_context_is_closed_adjacency() {
    let g = toy();
    let ctx = build_one_mode_context(&g);
    assert_eq!(ctx.num_objects(), 15);
    assert_eq!(ctx.num_attributes(), 15);
    for (i, row) in TOY_CONTEXT.iter().enumerate() {
        for (j, cell) in row.chars().enumerate() {
            let gi = g.node(&(i + 1).to_string()).unwrap();
            let gj = g.node(&(j + 1).to_string()).unwrap();
            assert_eq!(
                ctx.incident(gi, gj),
                cell == '1',
                "cell ({}, {})",
                i + 1,
                j + 1
            );
        }
    }
    assert!(ctx.is_one_mode() && ctx.is_symmetric() && ctx.has_full_diagonal());
}

#[test]
fn small_contexts() {
    let edgeless = build_one_mode_context(&Graph::with_nodes(3, &[]));
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(edgeless.incident(i, j), i == j);
        }
    }
    let k3 = build_one_mode_context(&Graph::from_edges(&[(0, 1), (1, 2), (0, 2)]));
    assert!((0..3).all(|i| (0..3).all(|j| k3.incident(i, j))));
}

#[test]
fn toy_derivations() {
    let g = toy();
    let ctx = build_one_mode_context(&g);
    assert_eq!(
        ctx.derive_extent(&set(&g, &["5", "6", "7"])),
        set(&g, &["5", "6", "7"])
    );
    assert_eq!(
        ctx.derive_extent(&set(&g, &["4", "5"])),
        set(&g, &["4", "5"])
    );
    assert_eq!(ctx.derive_extent(&NodeSet::empty(15)), NodeSet::full(15));
    assert_eq!(
        ctx.derive_intent(&set(&g, &["8", "9"])),
        set(&g, &["8", "9", "10", "11"])
    );
    assert_eq!(ctx.derive_intent(&NodeSet::empty(15)), NodeSet::full(15));
    let v = g.node("6").unwrap();
    assert_eq!(
        ctx.derive_intent(&NodeSet::from_members(15, [v])),
        g.closed_neighborhood(v)
    );
    assert_eq!(ctx.closure(&set(&g, &["13"])), set(&g, &["13", "14", "15"]));
    assert_eq!(ctx.closure(&NodeSet::empty(15)), NodeSet::empty(15));
    let closed = set(&g, &["1", "2", "3", "4"]);
    assert_eq!(ctx.closure(&closed), closed);
}

#[test]
fn identity_context_has_four_concepts() {
    let ctx = FormalContext::from_table(
        vec!["a".into(), "b".into()],
        vec!["x".into(), "y".into()],
        &[vec![true, false], vec![false, true]],
    );
    assert_eq!(enumerate_concepts(&ctx).unwrap().len(), 4);
}

#[test]
fn toy_lattice_identical_concepts() {
    let g = toy();
    let lattice = enumerate_concepts(&build_one_mode_context(&g)).unwrap();
    assert!(lattice
        .iter()
        .all(|c| c.is_closed_in(&build_one_mode_context(&g))));
    let identical = extract_identical_concepts(&lattice).unwrap();
    assert_eq!(identical.len(), 8);
    assert_eq!(identical, fast_identical_concepts(&g));
    let found = label_sets(&g, identical.iter().map(|c| &c.members));
    for want in [&["1", "2", "3", "4"][..], &["4", "5"], &["13", "14", "15"]] {
        assert!(found.contains(&labels(&[want])[0]));
    }
}

#[test]
fn edgeless_graph_gives_singletons() {
    let g = Graph::with_nodes(4, &[]);
    let lattice = enumerate_concepts(&build_one_mode_context(&g)).unwrap();
    let identical = extract_identical_concepts(&lattice).unwrap();
    assert_eq!(identical.len(), 4);
    assert!(identical.iter().all(|c| c.size() == 1));
}

#[test]
fn two_mode_context_is_rejected() {
    let ctx = FormalContext::from_table(
        vec!["a".into()],
        vec!["x".into(), "y".into()],
        &[vec![true, false]],
    );
    let cs = enumerate_concepts(&ctx).unwrap();
    assert!(matches!(
        extract_identical_concepts(&cs),
        Err(CoinError::NotOneMode { .. })
    ));
}

#[test]
fn object_limit_is_enforced() {
    let ctx = build_one_mode_context(&Graph::with_nodes(10, &[]));
    assert!(matches!(
        enumerate_concepts_with_limit(&ctx, 5),
        Err(CoinError::ContextTooLarge { .. })
    ));
}

#[test]
fn burmeister_round_trip() {
    let ctx = build_one_mode_context(&toy());
    let text = ctx.to_burmeister();
    assert!(text.starts_with("B\n"));
    assert_eq!(FormalContext::parse_burmeister(&text).unwrap(), ctx);
}

fn random_context(objects: usize, attributes: usize, density: f64, seed: u64) -> FormalContext {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let table: Vec<Vec<bool>> = (0..objects)
        .map(|_| (0..attributes).map(|_| rng.gen_bool(density)).collect())
        .collect();
    FormalContext::from_table(
        (0..objects).map(|i| format!("o{i}")).collect(),
        (0..attributes).map(|j| format!("a{j}")).collect(),
        &table,
    )
}

fn subset(width: usize, mask: u64) -> NodeSet {
    mask_to_set(width, mask & full_mask(width))
}

proptest! {
    #[test]
    fn derivation_is_antitone(m in 1usize..=12, n in 1usize..=12, d in 0.1f64..0.9, seed in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let ctx = random_context(m, n, d, seed);
        let a1 = subset(m, a & b);
        let a2 = subset(m, a);
        prop_assert!(ctx.derive_extent(&a2).is_subset(&ctx.derive_extent(&a1)));
        let b1 = subset(n, a & b);
        let b2 = subset(n, a);
        prop_assert!(ctx.derive_intent(&b2).is_subset(&ctx.derive_intent(&b1)));
    }

    #[test]
    fn closure_is_a_closure_operator(m in 1usize..=12, n in 1usize..=12, d in 0.1f64..0.9, seed in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let ctx = random_context(m, n, d, seed);
        let small = subset(m, a & b);
        let big = subset(m, a);
        let c = ctx.closure(&big);
        prop_assert!(big.is_subset(&c));
        prop_assert_eq!(ctx.closure(&c), c.clone());
        prop_assert!(ctx.closure(&small).is_subset(&c));
    }

    #[test]
    fn lattice_is_every_closed_set(m in 1usize..=10, n in 1usize..=10, d in 0.1f64..0.9, seed in any::<u64>()) {
        let ctx = random_context(m, n, d, seed);
        let mut brute: Vec<NodeSet> = (0..1u64 << m)
            .map(|mask| subset(m, mask))
            .filter(|s| ctx.closure(s) == *s)
            .collect();
        brute.sort_by(|x, y| x.canonical_cmp(y));
        let lattice = enumerate_concepts(&ctx).unwrap();
        let extents: Vec<NodeSet> = lattice.iter().map(|c| c.extent.clone()).collect();
        prop_assert_eq!(extents, brute);
        for c in lattice.iter() {
            prop_assert!(c.is_closed_in(&ctx));
        }
    }

    #[test]
    fn concept_count_matches_brute_force_on_graphs(n in 1usize..=12, p in 0.0f64..0.8, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let rows = closed_masks(&g);
        let closed = (0..1u64 << n).filter(|&a| derive(&rows, derive(&rows, a)) == a).count();
        prop_assert_eq!(enumerate_concepts(&build_one_mode_context(&g)).unwrap().len(), closed);
    }

    #[test]
    fn identical_concepts_are_maximal_cliques(n in 1usize..=25, p in 0.0f64..0.7, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let lattice = enumerate_concepts(&build_one_mode_context(&g)).unwrap();
        let from_lattice = extract_identical_concepts(&lattice).unwrap();
        prop_assert_eq!(&from_lattice, &fast_identical_concepts(&g));
        let mut masks: Vec<u64> = from_lattice.iter().map(|c| set_to_mask(&c.members)).collect();
        masks.sort();
        if n <= 16 {
            prop_assert_eq!(masks, brute_maximal_cliques(&g));
        }
    }
}
