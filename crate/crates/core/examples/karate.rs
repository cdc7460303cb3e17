//! Detects communities in Zachary's karate club and scores them against the
//! two factions recorded after the split.
//!
//! ```text
//! cargo run --example karate
//! ```

use coin::graph::parse_gml;
use coin::{detect_communities, nmi, CoinConfig};

fn main() -> anyhow::Result<()> {
    let parsed = parse_gml(include_str!("../data/karate.gml"))?;
    let g = &parsed.graph;
    let truth = parsed
        .labeling
        .ground_truth_partition()
        .expect("karate.gml carries faction values");

    let communities = detect_communities(g, &CoinConfig::default())?;
    for (i, c) in communities.iter().enumerate() {
        let members: Vec<&str> = c.members.iter().map(|v| g.label(v)).collect();
        println!("community {i} ({:?}): {}", c.provenance, members.join(" "));
    }
    let score = nmi(&truth, &communities.partition()?)?;
    println!("{} communities, NMI = {score:.3}", communities.len());
    Ok(())
}
