//! The two-stage detection pipeline.
//!
//! Stage one scores every identical concept, keeps isolated maximal cliques
//! as communities and discards the noisy bridges. Stage two percolates the
//! remaining cliques: two sets merge when they share all but at most one
//! member of the smaller one.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CoinError, Result};
use crate::eval::Partition;
use crate::fca::{build_one_mode_context, fast_identical_concepts, IdenticalConcept};
use crate::graph::Graph;
use crate::set::{sort_canonical, NodeSet};
use crate::stability::{self, Classification, SamplingConfig, ScoredConcept};

/// Which sizes enter the merge test `|Ai ∩ Aj| ≥ min(|Ai|, |Aj|) − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeSizes {
    /// Sizes of the sets as they grow through merging.
    #[default]
    Current,
    /// Sizes of the original cliques; communities are the connected
    /// components of the clique adjacency relation.
    Original,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoinConfig {
    pub exact_threshold: usize,
    pub budget: usize,
    pub seed: u64,
    pub error_constant: f64,
    /// Nodes left in no community become singleton communities.
    pub singleton_backfill: bool,
    pub max_passes: usize,
    pub merge_sizes: MergeSizes,
}

impl Default for CoinConfig {
    fn default() -> Self {
        let s = SamplingConfig::default();
        Self {
            exact_threshold: s.exact_threshold,
            budget: s.budget,
            seed: s.seed,
            error_constant: s.error_constant,
            singleton_backfill: true,
            max_passes: 1000,
            merge_sizes: MergeSizes::Current,
        }
    }
}

impl CoinConfig {
    pub fn sampling(&self) -> SamplingConfig {
        SamplingConfig {
            exact_threshold: self.exact_threshold,
            budget: self.budget,
            seed: self.seed,
            error_constant: self.error_constant,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.sampling().validate()?;
        if self.max_passes == 0 {
            return Err(CoinError::Config(
                "at least one percolation pass is required".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Isolated,
    Percolated,
    Singleton,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Community {
    pub members: NodeSet,
    pub provenance: Provenance,
}

/// Disjoint communities in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct CommunitySet {
    communities: Vec<Community>,
    node_count: usize,
}

impl CommunitySet {
    fn new(mut communities: Vec<Community>, node_count: usize) -> Self {
        communities.sort_by(|a, b| a.members.canonical_cmp(&b.members));
        Self {
            communities,
            node_count,
        }
    }

    pub fn len(&self) -> usize {
        self.communities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.communities.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Community> {
        self.communities.iter()
    }

    pub fn as_slice(&self) -> &[Community] {
        &self.communities
    }

    /// Member lists, for assertions and printing.
    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.communities
            .iter()
            .map(|c| c.members.to_vec())
            .collect()
    }

    /// Fraction of graph nodes in some community.
    pub fn coverage(&self) -> f64 {
        if self.node_count == 0 {
            return 0.0;
        }
        let covered: usize = self.communities.iter().map(|c| c.members.len()).sum();
        covered as f64 / self.node_count as f64
    }

    /// Community index of each node, `None` for uncovered nodes.
    pub fn assignment(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.node_count];
        for (i, c) in self.communities.iter().enumerate() {
            for v in c.members.iter() {
                out[v] = Some(i);
            }
        }
        out
    }

    /// The communities as a partition; fails when some node is uncovered.
    pub fn partition(&self) -> Result<Partition> {
        Partition::new(
            self.node_count,
            self.communities
                .iter()
                .map(|c| c.members.to_vec())
                .collect(),
        )
    }

    pub fn to_json(
        &self,
        g: &Graph,
        config: &CoinConfig,
        timings: Option<StageTimings>,
    ) -> CommunityJson {
        CommunityJson {
            algorithm: "coin".to_string(),
            config: *config,
            communities: self
                .communities
                .iter()
                .map(|c| CommunityEntry {
                    members: c.members.iter().map(|v| g.label(v).to_string()).collect(),
                    provenance: c.provenance,
                })
                .collect(),
            coverage: self.coverage(),
            timings_ms: timings,
        }
    }
}

/// Wall-clock milliseconds per stage.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StageTimings {
    pub stage1: f64,
    pub stage2: f64,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityEntry {
    pub members: Vec<String>,
    pub provenance: Provenance,
}

/// Community output document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityJson {
    pub algorithm: String,
    pub config: CoinConfig,
    pub communities: Vec<CommunityEntry>,
    pub coverage: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<StageTimings>,
}

/// Result of stage one.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Stage1 {
    pub isolated: Vec<NodeSet>,
    pub cut_bridges: Vec<NodeSet>,
    pub relevant: Vec<IdenticalConcept>,
}

/// Splits scored concepts by classification, keeping input order.
pub fn stage1_filter(scored: &[ScoredConcept]) -> Stage1 {
    let mut out = Stage1::default();
    for s in scored {
        match s.classification {
            Classification::IsolatedMaxClique => out.isolated.push(s.concept.members.clone()),
            Classification::NoisyBridge => out.cut_bridges.push(s.concept.members.clone()),
            Classification::RelevantClique => out.relevant.push(s.concept.clone()),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Percolation {
    /// Merged sets in canonical order.
    pub sets: Vec<NodeSet>,
    pub passes: usize,
    /// False when the pass limit was hit while merges were still happening.
    pub converged: bool,
}

fn mergeable(a: &NodeSet, b: &NodeSet) -> bool {
    let smaller = a.len().min(b.len());
    a.intersection_len(b) + 1 >= smaller
}

/// Percolates relevant cliques with current-size semantics.
pub fn percolate(relevant: &[IdenticalConcept], max_passes: usize) -> Percolation {
    let sets: Vec<NodeSet> = relevant.iter().map(|c| c.members.clone()).collect();
    percolate_sets(sets, max_passes)
}

/// Sweeps all pairs in canonical order, merging in place, until a sweep
/// makes no merge or `max_passes` sweeps ran.
pub fn percolate_sets(mut sets: Vec<NodeSet>, max_passes: usize) -> Percolation {
    sort_canonical(&mut sets);
    let mut passes = 0;
    let mut converged = false;
    while passes < max_passes {
        passes += 1;
        let mut merged = false;
        let mut i = 0;
        while i < sets.len() {
            let mut j = i + 1;
            while j < sets.len() {
                if mergeable(&sets[i], &sets[j]) {
                    let other = sets.remove(j);
                    sets[i].union_with(&other);
                    merged = true;
                } else {
                    j += 1;
                }
            }
            i += 1;
        }
        sort_canonical(&mut sets);
        if !merged {
            converged = true;
            break;
        }
    }
    Percolation {
        sets,
        passes,
        converged,
    }
}

/// Connected components of the clique adjacency relation, tested on the
/// original clique sizes.
pub fn percolate_original(relevant: &[IdenticalConcept]) -> Percolation {
    let n = relevant.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if mergeable(&relevant[i].members, &relevant[j].members) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Option<NodeSet>> = vec![None; n];
    for (i, c) in relevant.iter().enumerate() {
        let root = find(&mut parent, i);
        match &mut groups[root] {
            Some(set) => set.union_with(&c.members),
            slot => *slot = Some(c.members.clone()),
        }
    }
    let mut sets: Vec<NodeSet> = groups.into_iter().flatten().collect();
    sort_canonical(&mut sets);
    Percolation {
        sets,
        passes: 1,
        converged: true,
    }
}

/// Makes percolated sets disjoint. A node in several sets stays in the one
/// holding most of its neighbors; ties go to the larger set, then to the
/// earlier set in canonical order. Emptied sets are dropped.
pub fn resolve_overlaps(g: &Graph, sets: &[NodeSet]) -> Vec<NodeSet> {
    let n = g.node_count();
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, s) in sets.iter().enumerate() {
        for v in s.iter() {
            owners[v].push(i);
        }
    }
    let mut out: Vec<NodeSet> = sets.to_vec();
    for (v, own) in owners.iter().enumerate() {
        if own.len() < 2 {
            continue;
        }
        let keep = *own
            .iter()
            .max_by(|&&a, &&b| {
                let na = sets[a].intersection_len(g.adjacency(v));
                let nb = sets[b].intersection_len(g.adjacency(v));
                na.cmp(&nb)
                    .then(sets[a].len().cmp(&sets[b].len()))
                    .then(b.cmp(&a))
            })
            .unwrap();
        for &i in own {
            if i != keep {
                out[i].remove(v);
            }
        }
    }
    out.retain(|s| !s.is_empty());
    out
}

/// Counts behind the `O(|C̃|·ξ + |C̃|²)` cost of a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ComplexityReport {
    pub num_identical_concepts: usize,
    pub num_isolated: usize,
    pub num_bridges_cut: usize,
    pub num_relevant: usize,
    pub exact_scored: usize,
    pub sampled_scored: usize,
    pub budget: usize,
    pub percolation_passes: usize,
    pub elapsed_ms: StageTimings,
}

/// Everything a run produced.
#[derive(Debug, Clone)]
pub struct CoinRun {
    pub config: CoinConfig,
    pub scored: Vec<ScoredConcept>,
    pub stage1: Stage1,
    pub percolation: Percolation,
    pub communities: CommunitySet,
    pub timings: StageTimings,
}

impl CoinRun {
    pub fn complexity_report(&self) -> ComplexityReport {
        let exact_scored = self
            .scored
            .iter()
            .filter(|s| s.stability.is_exact())
            .count();
        ComplexityReport {
            num_identical_concepts: self.scored.len(),
            num_isolated: self.stage1.isolated.len(),
            num_bridges_cut: self.stage1.cut_bridges.len(),
            num_relevant: self.stage1.relevant.len(),
            exact_scored,
            sampled_scored: self.scored.len() - exact_scored,
            budget: self.config.budget,
            percolation_passes: self.percolation.passes,
            elapsed_ms: self.timings,
        }
    }
}

/// Scores every identical concept of `g` (in parallel, order preserved).
pub fn score_identical_concepts(g: &Graph, cfg: &CoinConfig) -> Result<Vec<ScoredConcept>> {
    let ctx = build_one_mode_context(g);
    let sampling = cfg.sampling();
    fast_identical_concepts(g)
        .into_par_iter()
        .map(|c| stability::score(&ctx, g, c, &sampling))
        .collect()
}

/// Runs both stages and keeps the intermediate results.
pub fn run_coin(g: &Graph, cfg: &CoinConfig) -> Result<CoinRun> {
    cfg.validate()?;
    let start = Instant::now();
    let scored = score_identical_concepts(g, cfg)?;
    let stage1 = stage1_filter(&scored);
    let stage1_done = Instant::now();

    let percolation = match cfg.merge_sizes {
        MergeSizes::Current => percolate(&stage1.relevant, cfg.max_passes),
        MergeSizes::Original => percolate_original(&stage1.relevant),
    };
    let percolated = resolve_overlaps(g, &percolation.sets);

    let mut communities: Vec<Community> = stage1
        .isolated
        .iter()
        .map(|m| Community {
            members: m.clone(),
            provenance: Provenance::Isolated,
        })
        .chain(percolated.into_iter().map(|m| Community {
            members: m,
            provenance: Provenance::Percolated,
        }))
        .collect();
    if cfg.singleton_backfill {
        let mut covered = NodeSet::empty(g.node_count());
        for c in &communities {
            covered.union_with(&c.members);
        }
        for v in 0..g.node_count() {
            if !covered.contains(v) {
                communities.push(Community {
                    members: NodeSet::from_members(g.node_count(), [v]),
                    provenance: Provenance::Singleton,
                });
            }
        }
    }
    let communities = CommunitySet::new(communities, g.node_count());
    let end = Instant::now();

    let timings = StageTimings {
        stage1: (stage1_done - start).as_secs_f64() * 1e3,
        stage2: (end - stage1_done).as_secs_f64() * 1e3,
        total: (end - start).as_secs_f64() * 1e3,
    };
    Ok(CoinRun {
        config: *cfg,
        scored,
        stage1,
        percolation,
        communities,
        timings,
    })
}

/// Detects communities in `g`.
pub fn detect_communities(g: &Graph, cfg: &CoinConfig) -> Result<CommunitySet> {
    Ok(run_coin(g, cfg)?.communities)
}
