//! Runs the full pipeline on the bundled 15-node network and prints each
//! stage: identical concepts with their stability, the stage-one split and
//! the final communities.
//!
//! ```text
//! cargo run --example toy_network
//! ```

use coin::graph::parse_edge_list;
use coin::{run_coin, CoinConfig};

fn main() -> anyhow::Result<()> {
    let text = include_str!("../data/toy.edgelist");
    let g = parse_edge_list(text)?.graph;
    let names = |s: &coin::NodeSet| -> Vec<&str> { s.iter().map(|v| g.label(v)).collect() };

    let run = run_coin(&g, &CoinConfig::default())?;

    println!("identical concepts:");
    for s in &run.scored {
        println!(
            "  {:<16} sigma = {:<6} ({:?})",
            format!("{:?}", names(&s.concept.members)),
            s.stability
                .ratio()
                .map_or_else(|| format!("{:.4}", s.stability.value()), |r| r.to_string()),
            s.classification
        );
    }
    println!(
        "cut bridges: {:?}",
        run.stage1.cut_bridges.iter().map(names).collect::<Vec<_>>()
    );
    println!("communities:");
    for c in run.communities.iter() {
        println!("  {:?} {:?}", c.provenance, names(&c.members));
    }
    Ok(())
}
