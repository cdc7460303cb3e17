use super::context::FormalContext;
use crate::error::{CoinError, Result};
use crate::graph::{maximal_cliques, Graph};
use crate::set::NodeSet;

/// Largest context `enumerate_concepts` accepts by default.
pub const DEFAULT_OBJECT_LIMIT: usize = 512;

/// Closed pair `(A, B)` with `A′ = B` and `B′ = A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalConcept {
    pub extent: NodeSet,
    pub intent: NodeSet,
}

impl FormalConcept {
    /// Lattice order: `self ≤ other` iff the extent of `self` is contained in
    /// the extent of `other`.
    pub fn le(&self, other: &FormalConcept) -> bool {
        self.extent.is_subset(&other.extent)
    }

    pub fn is_closed_in(&self, ctx: &FormalContext) -> bool {
        ctx.derive_extent(&self.extent) == self.intent
            && ctx.derive_intent(&self.intent) == self.extent
    }

    pub fn is_identical(&self) -> bool {
        self.extent == self.intent
    }
}

/// All concepts of a context in canonical order (extent size descending,
/// then lexicographic on the extent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptSet {
    concepts: Vec<FormalConcept>,
    one_mode: bool,
}

impl ConceptSet {
    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FormalConcept> {
        self.concepts.iter()
    }

    pub fn as_slice(&self) -> &[FormalConcept] {
        &self.concepts
    }

    pub fn is_one_mode(&self) -> bool {
        self.one_mode
    }
}

/// A concept whose extent equals its intent. In a one-mode context built
/// from a graph these are exactly the maximal cliques.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdenticalConcept {
    pub members: NodeSet,
}

impl IdenticalConcept {
    pub fn new(members: NodeSet) -> Self {
        Self { members }
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Enumerates every concept with Close-by-One, refusing contexts with more
/// than [`DEFAULT_OBJECT_LIMIT`] objects.
pub fn enumerate_concepts(ctx: &FormalContext) -> Result<ConceptSet> {
    enumerate_concepts_with_limit(ctx, DEFAULT_OBJECT_LIMIT)
}

pub fn enumerate_concepts_with_limit(ctx: &FormalContext, limit: usize) -> Result<ConceptSet> {
    if ctx.num_objects() > limit {
        return Err(CoinError::ContextTooLarge {
            objects: ctx.num_objects(),
            limit,
        });
    }
    let n = ctx.num_objects();
    let intent = NodeSet::full(ctx.num_attributes());
    let extent = ctx.derive_intent(&intent);
    let mut concepts = Vec::new();
    close_by_one(ctx, extent, intent, 0, n, &mut concepts);
    concepts.sort_by(|a, b| a.extent.canonical_cmp(&b.extent));
    Ok(ConceptSet {
        concepts,
        one_mode: ctx.is_one_mode(),
    })
}

fn close_by_one(
    ctx: &FormalContext,
    extent: NodeSet,
    intent: NodeSet,
    start: usize,
    n: usize,
    out: &mut Vec<FormalConcept>,
) {
    for j in start..n {
        if extent.contains(j) {
            continue;
        }
        let mut next_intent = intent.clone();
        next_intent.intersect_with(ctx.row(j));
        let next_extent = ctx.derive_intent(&next_intent);
        // canonicity: the closure may not add any object before j
        if next_extent.agrees_below(&extent, j) {
            close_by_one(ctx, next_extent, next_intent, j + 1, n, out);
        }
    }
    out.push(FormalConcept { extent, intent });
}

/// Concepts of a one-mode concept set whose extent equals their intent, in
/// the concept set's order.
pub fn extract_identical_concepts(cs: &ConceptSet) -> Result<Vec<IdenticalConcept>> {
    if let Some(c) = cs.concepts.first() {
        if !cs.one_mode {
            return Err(CoinError::NotOneMode {
                objects: c.extent.width(),
                attributes: c.intent.width(),
            });
        }
    }
    Ok(cs
        .concepts
        .iter()
        .filter(|c| c.is_identical())
        .map(|c| IdenticalConcept::new(c.extent.clone()))
        .collect())
}

/// Identical concepts of the one-mode context of `g`, read off the maximal
/// cliques without building the lattice.
pub fn fast_identical_concepts(g: &Graph) -> Vec<IdenticalConcept> {
    maximal_cliques(g)
        .into_vec()
        .into_iter()
        .map(IdenticalConcept::new)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fca::build_one_mode_context;

    #[test]
    fn identity_context_has_four_concepts() {
        let names: Vec<String> = vec!["a".into(), "b".into()];
        let ctx = FormalContext::from_table(
            names.clone(),
            vec!["x".into(), "y".into()],
            &[vec![true, false], vec![false, true]],
        );
        let cs = enumerate_concepts(&ctx).unwrap();
        assert_eq!(cs.len(), 4);
        assert!(!cs.is_one_mode());
        assert!(extract_identical_concepts(&cs).is_err());
    }

    #[test]
    fn triangle_lattice() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (0, 2)]);
        let cs = enumerate_concepts(&build_one_mode_context(&g)).unwrap();
        // ({0,1,2},{0,1,2}) is both top and bottom
        assert_eq!(cs.len(), 1);
        let ident = extract_identical_concepts(&cs).unwrap();
        assert_eq!(ident.len(), 1);
        assert_eq!(ident[0].members.to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn edgeless_graph_identical_concepts_are_singletons() {
        let g = Graph::with_nodes(3, &[]);
        let cs = enumerate_concepts(&build_one_mode_context(&g)).unwrap();
        let ident = extract_identical_concepts(&cs).unwrap();
        let got: Vec<_> = ident.iter().map(|c| c.members.to_vec()).collect();
        assert_eq!(got, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn limit_is_enforced() {
        let g = Graph::with_nodes(10, &[]);
        let err = enumerate_concepts_with_limit(&build_one_mode_context(&g), 5).unwrap_err();
        assert!(matches!(
            err,
            CoinError::ContextTooLarge {
                objects: 10,
                limit: 5
            }
        ));
    }
}
