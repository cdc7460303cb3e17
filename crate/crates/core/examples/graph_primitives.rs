//! Degrees, bridges, non-trivial bridges and maximal cliques of the bundled
//! 15-node network, plus its JSON and DOT renderings.
//!
//! ```text
//! cargo run --example graph_primitives
//! ```

use coin::graph::{parse_edge_list, to_dot, to_json_graph};

fn main() -> anyhow::Result<()> {
    let g = parse_edge_list(include_str!("../data/toy.edgelist"))?.graph;
    println!("{} nodes, {} edges", g.node_count(), g.edge_count());

    for label in ["4", "5"] {
        let v = g.require_node(label)?;
        println!("degree({label}) = {}", g.degree(v)?);
    }

    for (u, v) in g.find_bridges() {
        println!(
            "bridge ({}, {}) non-trivial: {}",
            g.label(u),
            g.label(v),
            g.is_nontrivial_bridge(u, v)?
        );
    }

    println!("maximal cliques:");
    for q in g.maximal_cliques().iter() {
        let m: Vec<&str> = q.iter().map(|v| g.label(v)).collect();
        println!("  {}", m.join(" "));
    }

    println!("components: {}", g.connected_components().num_blocks());
    println!("{}", serde_json::to_string(&to_json_graph(&g))?);
    print!("{}", to_dot(&g, None));
    Ok(())
}
