//! Adds a four-node star to the 15-node network. Each leaf edge is a
//! maximal 2-clique with stability 1/2, so none of them is cut as a bridge
//! and percolation merges the star into one community.
//!
//! ```text
//! cargo run --example star_graph
//! ```

use coin::graph::parse_edge_list;
use coin::{run_coin, CoinConfig};

fn main() -> anyhow::Result<()> {
    let g = parse_edge_list(include_str!("../data/toy_star.edgelist"))?.graph;
    let run = run_coin(&g, &CoinConfig::default())?;
    let names = |s: &coin::NodeSet| s.iter().map(|v| g.label(v)).collect::<Vec<_>>().join(" ");

    for s in run.scored.iter().filter(|s| s.concept.size() == 2) {
        println!(
            "{{{}}}: sigma = {} -> {:?}",
            names(&s.concept.members),
            s.stability.ratio().expect("exact"),
            s.classification
        );
    }
    println!("communities:");
    for c in run.communities.iter() {
        println!("  {{{}}}", names(&c.members));
    }
    Ok(())
}
