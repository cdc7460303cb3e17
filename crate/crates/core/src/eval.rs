//! Partition comparison: confusion matrix and normalized mutual information.

use serde::Serialize;

use crate::error::{CoinError, Result};

/// Disjoint, non-empty blocks covering `0..universe`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    universe: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Validates `blocks` as a partition of `0..universe`. Members within a
    /// block are sorted; block order is kept.
    pub fn new(universe: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![None; universe];
        let mut sorted = Vec::with_capacity(blocks.len());
        for (b, mut block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(CoinError::Partition(format!("block {b} is empty")));
            }
            block.sort_unstable();
            for &v in &block {
                match owner.get_mut(v) {
                    None => {
                        return Err(CoinError::Partition(format!(
                            "node {v} is outside the universe of {universe} nodes"
                        )))
                    }
                    Some(Some(prev)) => {
                        return Err(CoinError::Partition(format!(
                            "node {v} appears in blocks {prev} and {b}"
                        )))
                    }
                    Some(slot) => *slot = Some(b),
                }
            }
            sorted.push(block);
        }
        if let Some(missing) = owner.iter().position(Option::is_none) {
            return Err(CoinError::Partition(format!(
                "node {missing} is not covered by any block"
            )));
        }
        Ok(Self {
            universe,
            blocks: sorted,
        })
    }

    /// Partition from a per-node block assignment; ids need not be contiguous.
    pub fn from_assignment(assignment: &[usize]) -> Self {
        let mut ids: Vec<usize> = assignment.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let mut blocks = vec![Vec::new(); ids.len()];
        for (v, a) in assignment.iter().enumerate() {
            let b = ids.binary_search(a).unwrap();
            blocks[b].push(v);
        }
        Self {
            universe: assignment.len(),
            blocks,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of each node.
    pub fn assignment(&self) -> Vec<usize> {
        let mut out = vec![0; self.universe];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in block {
                out[v] = b;
            }
        }
        out
    }

    /// Same partition with blocks ordered by their smallest member.
    pub fn canonical(&self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.sort_by_key(|b| b[0]);
        Self {
            universe: self.universe,
            blocks,
        }
    }
}

/// Validates raw blocks against a universe, reporting the first overlap,
/// out-of-range, empty or uncovered node.
pub fn validate_partition(blocks: Vec<Vec<usize>>, universe: usize) -> Result<Partition> {
    Partition::new(universe, blocks).map(|p| p.canonical())
}

/// Rows are ground-truth blocks, columns predicted blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfusionMatrix {
    pub counts: Vec<Vec<u64>>,
    pub row_sums: Vec<u64>,
    pub col_sums: Vec<u64>,
    pub total: u64,
}

pub fn confusion_matrix(truth: &Partition, pred: &Partition) -> Result<ConfusionMatrix> {
    if truth.universe != pred.universe {
        return Err(CoinError::UniverseMismatch(format!(
            "ground truth covers {} nodes, prediction {}",
            truth.universe, pred.universe
        )));
    }
    let column = pred.assignment();
    let mut counts = vec![vec![0u64; pred.num_blocks()]; truth.num_blocks()];
    for (i, block) in truth.blocks.iter().enumerate() {
        for &v in block {
            counts[i][column[v]] += 1;
        }
    }
    let row_sums: Vec<u64> = counts.iter().map(|r| r.iter().sum()).collect();
    let col_sums: Vec<u64> = (0..pred.num_blocks())
        .map(|j| counts.iter().map(|r| r[j]).sum())
        .collect();
    Ok(ConfusionMatrix {
        counts,
        row_sums,
        col_sums,
        total: truth.universe as u64,
    })
}

impl ConfusionMatrix {
    /// NMI from the counts (natural log, `0 log 0 = 0`).
    pub fn nmi(&self) -> Result<f64> {
        let n = self.total as f64;
        if self.total == 0 {
            return Err(CoinError::DegenerateNmi("empty universe".into()));
        }
        let mut numerator = 0.0;
        for (i, row) in self.counts.iter().enumerate() {
            for (j, &nij) in row.iter().enumerate() {
                if nij == 0 {
                    continue;
                }
                let nij = nij as f64;
                let ni = self.row_sums[i] as f64;
                let nj = self.col_sums[j] as f64;
                numerator += nij * (nij * n / (ni * nj)).ln();
            }
        }
        numerator *= -2.0;
        let entropy_term = |sums: &[u64]| -> f64 {
            sums.iter()
                .filter(|&&s| s > 0)
                .map(|&s| s as f64 * (s as f64 / n).ln())
                .sum()
        };
        let denominator = entropy_term(&self.row_sums) + entropy_term(&self.col_sums);
        if denominator == 0.0 {
            // both partitions are a single block over the same universe
            if self.counts.len() == 1 && self.col_sums.len() == 1 {
                return Ok(1.0);
            }
            return Err(CoinError::DegenerateNmi(
                "zero entropy with differing partitions".into(),
            ));
        }
        Ok((numerator / denominator).clamp(0.0, 1.0))
    }
}

/// Normalized mutual information between two partitions of the same nodes.
pub fn nmi(truth: &Partition, pred: &Partition) -> Result<f64> {
    confusion_matrix(truth, pred)?.nmi()
}
