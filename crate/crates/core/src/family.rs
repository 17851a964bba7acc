//! Thin spiders and the forbidden family generated from `N_5`.
//!
//! Every member is obtained from the thin spider of size five by repeatedly
//! contracting two 2-cutpoints `v1`, `v2` of a 4-vertex complete subgraph into
//! a new vertex `x`, and replacing their pendant partners by two thin spiders
//! of size three whose clique vertices are joined to `x`.

use std::collections::BTreeMap;
use std::fmt;

use crate::blocks::{decompose, BlockClass, BlockDecomposition};
use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Thin spider `N_n`: clique `0..n`, stable vertex `i + n` pendant on `i`.
pub fn thin_spider(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "thin spider needs size >= 2, got {n}"
        )));
    }
    let mut g = Graph::complete(n);
    for i in 0..n {
        let s = g.add_vertex();
        g.add_edge(i, s)?;
    }
    Ok(g)
}

/// One application of the family procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcedureStep {
    /// Complete subgraph of size four containing `v1` and `v2`.
    pub clique: [usize; 4],
    pub v1: usize,
    pub v2: usize,
}

/// Applies the contraction and spider replacement.
///
/// In the result the surviving vertices keep their relative order and come
/// first, followed by `x`, the first spider (`c1 c2 c3 s1 s2 s3`) and the
/// second spider.
pub fn apply_procedure(g: &Graph, step: &ProcedureStep) -> Result<Graph> {
    let d = decompose(g)?;
    let fail = |msg: String| Err(Error::Precondition(msg));
    let h = step.clique;
    for &v in &h {
        g.check_vertex(v)?;
    }
    if VertexSet::new(h).len() != 4 {
        return fail(format!("clique {h:?} does not have four distinct vertices"));
    }
    for (i, &a) in h.iter().enumerate() {
        for &b in &h[i + 1..] {
            if !g.has_edge(a, b) {
                return fail(format!(
                    "clique {h:?} is not complete: {a} and {b} are not adjacent"
                ));
            }
        }
    }
    if step.v1 == step.v2 || !h.contains(&step.v1) || !h.contains(&step.v2) {
        return fail(format!(
            "v1={} and v2={} must be distinct members of {h:?}",
            step.v1, step.v2
        ));
    }
    let mut removed = vec![step.v1, step.v2];
    for v in [step.v1, step.v2] {
        if !d.is_two_cutpoint(v) {
            return fail(format!("vertex {v} is not a 2-cutpoint"));
        }
        let end = d
            .blocks_of(v)
            .iter()
            .copied()
            .find(|&b| d.is_endblock(b))
            .expect("2-cutpoint has an endblock");
        removed.extend(d.block(end).iter().copied().filter(|&u| u != v));
    }
    let removed = VertexSet::new(removed);

    let kept: Vec<usize> = (0..g.n()).filter(|&v| !removed.contains(v)).collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let r = kept.len();
    let mut out = Graph::new(r + 13);
    for (u, v) in g.edges() {
        if index[u] != usize::MAX && index[v] != usize::MAX {
            out.add_edge(index[u], index[v])?;
        }
    }
    let x = r;
    for v in [step.v1, step.v2] {
        for &w in g.neighbors(v) {
            if index[w] != usize::MAX {
                out.add_edge(x, index[w])?;
            }
        }
    }
    for spider in 0..2 {
        let base = r + 1 + 6 * spider;
        for i in 0..3 {
            out.add_edge(x, base + i)?;
            out.add_edge(base + i, base + 3 + i)?;
            for j in i + 1..3 {
                out.add_edge(base + i, base + j)?;
            }
        }
    }
    Ok(out)
}

/// All valid procedure steps on `g`, one per unordered pair of 2-cutpoints
/// sharing a block of size at least four.
pub fn procedure_steps(g: &Graph) -> Result<Vec<ProcedureStep>> {
    let d = decompose(g)?;
    let mut steps = Vec::new();
    for block in d.blocks() {
        if block.len() < 4 {
            continue;
        }
        let twos: Vec<usize> = block
            .iter()
            .copied()
            .filter(|&v| d.is_two_cutpoint(v))
            .collect();
        for (i, &v1) in twos.iter().enumerate() {
            for &v2 in &twos[i + 1..] {
                let mut clique = [v1, v2, 0, 0];
                let mut fill = block.iter().copied().filter(|&u| u != v1 && u != v2);
                clique[2] = fill.next().expect("block has four vertices");
                clique[3] = fill.next().expect("block has four vertices");
                clique.sort_unstable();
                steps.push(ProcedureStep { clique, v1, v2 });
            }
        }
    }
    Ok(steps)
}

/// A member of the family together with its construction depth.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub graph: Graph,
    /// Number of procedure applications (`0` for `N_5`).
    pub k: usize,
    pub canonical: String,
}

pub fn vertices_for_level(k: usize) -> usize {
    9 * (k + 1) + 1
}

/// Members built with exactly `k` applications, pairwise non-isomorphic and
/// sorted by canonical form.
pub fn family_level(k: usize) -> Vec<FamilyMember> {
    let mut levels = FamilyLevels::new();
    levels.level(k).to_vec()
}

/// All members with at most `max_vertices` vertices, ordered by vertex count
/// then canonical form.
pub fn enumerate_family(max_vertices: usize) -> Vec<FamilyMember> {
    let mut levels = FamilyLevels::new();
    let mut out = Vec::new();
    let mut k = 0;
    while vertices_for_level(k) <= max_vertices {
        out.extend(levels.level(k).iter().cloned());
        k += 1;
    }
    out
}

/// Deterministic representative with `k` applications: the first member of
/// its level.
pub fn family_member(k: usize) -> Graph {
    family_level(k).swap_remove(0).graph
}

/// Incrementally grown levels of the family.
#[derive(Debug, Default)]
pub struct FamilyLevels {
    levels: Vec<Vec<FamilyMember>>,
}

impl FamilyLevels {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn level(&mut self, k: usize) -> &[FamilyMember] {
        while self.levels.len() <= k {
            let next = match self.levels.last() {
                None => {
                    let graph = thin_spider(5).expect("size five");
                    let canonical = canonical_form(&graph).expect("block graph");
                    vec![FamilyMember {
                        graph,
                        k: 0,
                        canonical,
                    }]
                }
                Some(prev) => expand(prev),
            };
            self.levels.push(next);
        }
        &self.levels[k]
    }

    /// Member isomorphic to `g`, if any.
    pub fn identify(&mut self, g: &Graph) -> Option<FamilyMember> {
        let n = g.n();
        if n < 10 || !(n - 1).is_multiple_of(9) {
            return None;
        }
        let form = canonical_form(g)?;
        let k = (n - 1) / 9 - 1;
        self.level(k).iter().find(|m| m.canonical == form).cloned()
    }
}

fn expand(prev: &[FamilyMember]) -> Vec<FamilyMember> {
    let mut seen: BTreeMap<String, Graph> = BTreeMap::new();
    let k = prev.first().map_or(0, |m| m.k) + 1;
    for member in prev {
        for step in procedure_steps(&member.graph).expect("members are connected") {
            let next = apply_procedure(&member.graph, &step).expect("steps are valid");
            let form = canonical_form(&next).expect("members are block graphs");
            seen.entry(form).or_insert(next);
        }
    }
    seen.into_iter()
        .map(|(canonical, graph)| FamilyMember {
            graph,
            k,
            canonical,
        })
        .collect()
}

/// Block and cutpoint counts of a block graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockCensus {
    pub vertices: usize,
    pub blocks: usize,
    pub endblocks: usize,
    pub almost_endblocks: usize,
    pub internal_blocks: usize,
    pub cutpoints: usize,
    pub three_cutpoints: usize,
    pub two_cutpoints: usize,
}

impl BlockCensus {
    pub fn of(d: &BlockDecomposition) -> Self {
        let classes: Vec<BlockClass> = (0..d.block_count()).map(|b| d.classify_block(b)).collect();
        let count = |c: BlockClass| classes.iter().filter(|&&x| x == c).count();
        let cps = d.cutpoints();
        BlockCensus {
            vertices: d.vertex_count(),
            blocks: d.block_count(),
            endblocks: count(BlockClass::Endblock),
            almost_endblocks: count(BlockClass::AlmostEndblock),
            internal_blocks: count(BlockClass::Internal),
            cutpoints: cps.len(),
            three_cutpoints: cps.iter().filter(|&&c| d.is_three_cutpoint(c)).count(),
            two_cutpoints: cps.iter().filter(|&&c| d.is_two_cutpoint(c)).count(),
        }
    }

    /// Counts predicted for a member built with `k >= 1` applications.
    pub fn predicted(k: usize) -> Self {
        BlockCensus {
            vertices: 9 * (k + 1) + 1,
            blocks: 6 * (k + 1),
            endblocks: 4 * (k + 1) + 1,
            almost_endblocks: k + 2,
            internal_blocks: k - 1,
            cutpoints: 5 * (k + 1),
            three_cutpoints: k,
            two_cutpoints: 4 * (k + 1) + 1,
        }
    }
}

/// Which structural property failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PropositionItem {
    BlockSize,
    VertexKinds,
    Endblocks,
    AlmostEndblocks,
    InternalBlocks,
    Counts,
}

impl fmt::Display for PropositionItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PropositionItem::BlockSize => "i (block sizes)",
            PropositionItem::VertexKinds => "ii (vertex kinds)",
            PropositionItem::Endblocks => "iii (endblocks)",
            PropositionItem::AlmostEndblocks => "iv (almost endblocks)",
            PropositionItem::InternalBlocks => "v (internal blocks)",
            PropositionItem::Counts => "vi (counts)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropositionFailure {
    pub item: PropositionItem,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct PropositionReport {
    pub k: usize,
    pub census: BlockCensus,
    pub failures: Vec<PropositionFailure>,
}

impl PropositionReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the structural properties of a member built with `k >= 1`
/// applications. Failures are collected, not raised.
pub fn check_proposition(g: &Graph, k: usize) -> Result<PropositionReport> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "structural properties are stated for k >= 1 only".into(),
        ));
    }
    let d = decompose(g)?;
    let mut failures = Vec::new();
    let mut fail = |item, detail: String| failures.push(PropositionFailure { item, detail });

    for (b, block) in d.blocks().iter().enumerate() {
        if block.len() > 4 {
            fail(
                PropositionItem::BlockSize,
                format!("block {b} has {} vertices", block.len()),
            );
        }
    }
    for v in 0..g.n() {
        let leaf = !d.is_cutpoint(v) && g.degree(v) == 1;
        if !(leaf || d.is_two_cutpoint(v) || d.is_three_cutpoint(v)) {
            fail(
                PropositionItem::VertexKinds,
                format!("vertex {v} is neither leaf, 2- nor 3-cutpoint"),
            );
        }
    }
    for (b, block) in d.blocks().iter().enumerate() {
        let cps = d.block_cutpoints(b);
        let twos = cps.iter().filter(|&&c| d.is_two_cutpoint(c)).count();
        let threes = cps.iter().filter(|&&c| d.is_three_cutpoint(c)).count();
        match d.classify_block(b) {
            BlockClass::Endblock => {
                if block.len() != 2 || twos != 1 {
                    fail(
                        PropositionItem::Endblocks,
                        format!("endblock {b} = {:?}", block.as_slice()),
                    );
                }
            }
            BlockClass::AlmostEndblock => {
                if block.len() != 4 || twos != 3 || threes != 1 {
                    fail(
                        PropositionItem::AlmostEndblocks,
                        format!("almost endblock {b} = {:?}", block.as_slice()),
                    );
                }
            }
            BlockClass::Internal => {
                if block.len() != 3 || twos != 1 || threes != 2 {
                    fail(
                        PropositionItem::InternalBlocks,
                        format!("internal block {b} = {:?}", block.as_slice()),
                    );
                }
            }
        }
    }
    let census = BlockCensus::of(&d);
    let predicted = BlockCensus::predicted(k);
    if census != predicted {
        fail(
            PropositionItem::Counts,
            format!("found {census:?}, expected {predicted:?}"),
        );
    }
    Ok(PropositionReport {
        k,
        census,
        failures,
    })
}

/// Minimality: no vertex-deleted subgraph of `f` contains a member.
///
/// `is_free` decides whether a connected graph is free of members.
pub fn check_minimality(f: &Graph, is_free: impl Fn(&Graph) -> bool) -> bool {
    (0..f.n()).all(|v| {
        let rest = f.without(&VertexSet::new([v])).expect("vertex in range");
        rest.graph.connected_components().iter().all(|comp| {
            let part = rest
                .graph
                .induced_subgraph(comp)
                .expect("component in range");
            is_free(&part.graph)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spider_sizes() {
        let g = thin_spider(3).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 6));
        let g = thin_spider(5).unwrap();
        assert_eq!((g.n(), g.edge_count()), (10, 15));
        assert!(g.has_edge(2, 7) && !g.has_edge(2, 8));
        assert!(thin_spider(1).is_err());
    }

    #[test]
    fn first_application_on_spider() {
        let n5 = thin_spider(5).unwrap();
        let step = ProcedureStep {
            clique: [0, 1, 2, 3],
            v1: 0,
            v2: 1,
        };
        let g = apply_procedure(&n5, &step).unwrap();
        assert_eq!(g.n(), 19);
        let report = check_proposition(&g, 1).unwrap();
        assert!(report.ok(), "{:?}", report.failures);
        assert_eq!(report.census.blocks, 12);
        assert_eq!(report.census.endblocks, 9);
        assert_eq!(report.census.almost_endblocks, 3);
        assert_eq!(report.census.internal_blocks, 0);
        assert_eq!(report.census.cutpoints, 10);
        assert_eq!(report.census.three_cutpoints, 1);
        assert_eq!(report.census.two_cutpoints, 9);
    }

    #[test]
    fn all_first_applications_are_isomorphic() {
        let n5 = thin_spider(5).unwrap();
        let forms: std::collections::BTreeSet<String> = procedure_steps(&n5)
            .unwrap()
            .iter()
            .map(|s| canonical_form(&apply_procedure(&n5, s).unwrap()).unwrap())
            .collect();
        assert_eq!(procedure_steps(&n5).unwrap().len(), 10);
        assert_eq!(forms.len(), 1);
    }

    #[test]
    fn precondition_failures_are_named() {
        let n5 = thin_spider(5).unwrap();
        let bad = ProcedureStep {
            clique: [0, 1, 2, 5],
            v1: 0,
            v2: 1,
        };
        assert!(
            matches!(apply_procedure(&n5, &bad), Err(Error::Precondition(m)) if m.contains("not complete"))
        );
        let bad = ProcedureStep {
            clique: [0, 1, 2, 3],
            v1: 0,
            v2: 0,
        };
        assert!(matches!(
            apply_procedure(&n5, &bad),
            Err(Error::Precondition(_))
        ));
        let k4 = Graph::complete(4);
        let bad = ProcedureStep {
            clique: [0, 1, 2, 3],
            v1: 0,
            v2: 1,
        };
        assert!(
            matches!(apply_procedure(&k4, &bad), Err(Error::Precondition(m)) if m.contains("2-cutpoint"))
        );
    }

    #[test]
    fn vertex_delta_is_nine() {
        let g = family_member(1);
        for step in procedure_steps(&g).unwrap() {
            assert_eq!(apply_procedure(&g, &step).unwrap().n(), g.n() + 9);
        }
    }

    #[test]
    fn enumeration_by_bound() {
        let upto18 = enumerate_family(18);
        assert_eq!(upto18.len(), 1);
        assert_eq!(upto18[0].graph.n(), 10);
        let upto19 = enumerate_family(19);
        assert_eq!(
            upto19.iter().map(|m| m.graph.n()).collect::<Vec<_>>(),
            vec![10, 19]
        );
        // Regression value from exhaustive application with dedup.
        let upto28 = enumerate_family(28);
        assert_eq!(
            upto28.iter().map(|m| m.k).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn level_sizes() {
        // Members correspond to trees on k vertices with maximum degree 3.
        let mut levels = FamilyLevels::new();
        let sizes: Vec<usize> = (0..=6).map(|k| levels.level(k).len()).collect();
        assert_eq!(sizes, vec![1, 1, 1, 1, 2, 2, 4]);
    }

    #[test]
    fn proposition_rejects_k0() {
        assert!(check_proposition(&thin_spider(5).unwrap(), 0).is_err());
    }

    #[test]
    fn proposition_flags_wrong_k() {
        let report = check_proposition(&family_member(2), 1).unwrap();
        assert!(report
            .failures
            .iter()
            .any(|f| f.item == PropositionItem::Counts));
    }

    #[test]
    fn identify_members() {
        let mut levels = FamilyLevels::new();
        let g = family_member(2);
        assert_eq!(levels.identify(&g).unwrap().k, 2);
        assert!(levels.identify(&thin_spider(4).unwrap()).is_none());
    }
}
