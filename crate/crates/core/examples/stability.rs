//! Exact and sampled stability of a planted 16-clique whose members are
//! partly shared with outside nodes.
//!
//! ```text
//! cargo run --release --example stability
//! ```

use coin::stability::SamplingConfig;
use coin::{
    build_one_mode_context, stability_exact, stability_sampled, Graph, IdenticalConcept, NodeSet,
};

fn main() -> anyhow::Result<()> {
    let k = 16;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            edges.push((a, b));
        }
    }
    // outside node k + j is adjacent to every member except j and j + 8
    for j in 0..4 {
        for a in (0..k).filter(|&a| a != j && a != j + 8) {
            edges.push((a, k + j));
        }
    }
    let g = Graph::with_nodes(k + 4, &edges);
    let ctx = build_one_mode_context(&g);
    let clique = IdenticalConcept::new(NodeSet::from_members(g.node_count(), 0..k));

    let exact = stability_exact(&ctx, &clique)?;
    println!(
        "exact:   {} = {:.6}",
        exact.ratio().expect("exact"),
        exact.value()
    );

    let bound = SamplingConfig::default().error_bound(4096);
    for seed in 0..5 {
        let s = stability_sampled(&ctx, &clique, 4096, seed)?;
        let err = (s.value() - exact.value()).abs();
        println!(
            "seed {seed}: {:.6} (|error| {err:.6}, bound {bound:.6})",
            s.value()
        );
    }
    Ok(())
}
