//! Builds the one-mode formal context of a small graph, enumerates its
//! concept lattice with Close-by-One and marks the identical concepts. The
//! context is printed in Burmeister format and read back.
//!
//! ```text
//! cargo run --example concept_lattice
//! ```

use coin::fca::{
    build_one_mode_context, enumerate_concepts, extract_identical_concepts, FormalContext,
};
use coin::{fast_identical_concepts, Graph, NodeSet};

fn main() -> anyhow::Result<()> {
    // two triangles sharing node 2, plus a pendant node 5
    let g = Graph::from_edges(&[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (4, 5)]);
    let ctx = build_one_mode_context(&g);

    let cxt = ctx.to_burmeister();
    print!("{cxt}");
    assert_eq!(FormalContext::parse_burmeister(&cxt)?, ctx);

    let a = NodeSet::from_members(6, [2, 3]);
    println!("{{2,3}}' = {:?}", ctx.derive_extent(&a));
    println!("{{2,3}}'' = {:?}", ctx.closure(&a));

    let lattice = enumerate_concepts(&ctx)?;
    println!("{} concepts:", lattice.len());
    for c in lattice.iter() {
        let mark = if c.is_identical() { "  identical" } else { "" };
        println!("  {:?} / {:?}{mark}", c.extent, c.intent);
    }

    let identical = extract_identical_concepts(&lattice)?;
    assert_eq!(identical, fast_identical_concepts(&g));
    println!(
        "{} identical concepts, equal to the maximal cliques",
        identical.len()
    );
    Ok(())
}
