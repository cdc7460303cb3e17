//! Normalized mutual information between partitions, with the confusion
//! matrix it is computed from.
//!
//! ```text
//! cargo run --example evaluate
//! ```

use coin::{confusion_matrix, nmi, Partition};

fn main() -> anyhow::Result<()> {
    let truth = Partition::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]])?;
    let cases = [
        ("identical", vec![vec![3, 4, 5], vec![0, 1, 2]]),
        ("one node moved", vec![vec![0, 1], vec![2, 3, 4, 5]]),
        ("split finer", vec![vec![0, 1], vec![2], vec![3, 4, 5]]),
        ("crossed", vec![vec![0, 3], vec![1, 4], vec![2, 5]]),
        ("everything together", vec![vec![0, 1, 2, 3, 4, 5]]),
    ];
    for (name, blocks) in cases {
        let pred = Partition::new(6, blocks)?;
        println!("{name:<20} NMI = {:.4}", nmi(&truth, &pred)?);
    }

    let pred = Partition::new(6, vec![vec![0, 1], vec![2, 3, 4, 5]])?;
    let cm = confusion_matrix(&truth, &pred)?;
    println!("confusion (truth rows, predicted columns): {:?}", cm.counts);
    Ok(())
}
