//! Decision procedure: BFS order of the block-cutpoint tree, A/B labels of
//! the cutpoints, and the four structural conditions that hold exactly for
//! the representable block graphs.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::blocks::{decompose, BlockDecomposition, NotBlockGraphWitness};
use crate::build::build_representation;
use crate::certify::{extract_certificate, Certificate};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::grid::{compact, GridRepresentation};

const NONE: usize = usize::MAX;

/// A node of the block-cutpoint tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcNode {
    Block(usize),
    Cut(usize),
}

/// BFS order of the block-cutpoint tree from a block.
///
/// Every cutpoint `c` has a parent block `hc(c)`, the block through which
/// the search reached it; every block other than the first has a parent
/// cutpoint `ci(b)`.
#[derive(Debug, Clone)]
pub struct BlockOrder {
    nodes: Vec<BcNode>,
    blocks: Vec<usize>,
    cuts: Vec<usize>,
    block_pos: Vec<usize>,
    cut_pos: Vec<usize>,
    hc: Vec<usize>,
    ci: Vec<usize>,
}

impl BlockOrder {
    /// Full node sequence.
    pub fn nodes(&self) -> &[BcNode] {
        &self.nodes
    }

    /// Blocks in visiting order; `blocks()[0]` is the start block.
    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Cutpoints in visiting order.
    pub fn cutpoints(&self) -> &[usize] {
        &self.cuts
    }

    pub fn root(&self) -> usize {
        self.blocks[0]
    }

    pub fn block_position(&self, b: usize) -> usize {
        self.block_pos[b]
    }

    /// Position of cutpoint `c` in the node sequence.
    pub fn cut_position(&self, c: usize) -> Option<usize> {
        (self.cut_pos[c] != NONE).then_some(self.cut_pos[c])
    }

    /// Parent block of cutpoint `c`.
    pub fn hc(&self, c: usize) -> Option<usize> {
        (self.hc[c] != NONE).then_some(self.hc[c])
    }

    /// Parent cutpoint of block `b`; `None` for the start block.
    pub fn ci(&self, b: usize) -> Option<usize> {
        (self.ci[b] != NONE).then_some(self.ci[b])
    }

    /// Blocks containing `c` other than its parent block, in visiting order.
    pub fn child_blocks(&self, d: &BlockDecomposition, c: usize) -> Vec<usize> {
        let mut out: Vec<usize> = d
            .blocks_of(c)
            .iter()
            .copied()
            .filter(|&b| b != self.hc[c])
            .collect();
        out.sort_by_key(|&b| self.block_pos[b]);
        out
    }

    /// Cutpoints of `b` other than its parent cutpoint, in visiting order.
    pub fn child_cutpoints(&self, d: &BlockDecomposition, b: usize) -> Vec<usize> {
        let mut out: Vec<usize> = d
            .block_cutpoints(b)
            .iter()
            .copied()
            .filter(|&c| c != self.ci[b])
            .collect();
        out.sort_by_key(|&c| self.cut_pos[c]);
        out
    }
}

/// BFS from block `start`, exploring neighbors by ascending block index or
/// vertex id.
pub fn bfs_block_order(d: &BlockDecomposition, start: usize) -> Result<BlockOrder> {
    bfs_block_order_seeded(d, start, None)
}

/// BFS from block `start`; with a seed, neighbor lists are shuffled by a
/// seeded generator instead of explored in ascending order.
pub fn bfs_block_order_seeded(
    d: &BlockDecomposition,
    start: usize,
    seed: Option<u64>,
) -> Result<BlockOrder> {
    let nb = d.block_count();
    if start >= nb {
        return Err(Error::InvalidArgument(format!(
            "start block {start} out of range ({nb} blocks)"
        )));
    }
    let n = d.vertex_count();
    let mut rng = seed.map(StdRng::seed_from_u64);
    let mut order = BlockOrder {
        nodes: Vec::new(),
        blocks: Vec::new(),
        cuts: Vec::new(),
        block_pos: vec![NONE; nb],
        cut_pos: vec![NONE; n],
        hc: vec![NONE; n],
        ci: vec![NONE; nb],
    };
    let mut queue = std::collections::VecDeque::from([BcNode::Block(start)]);
    order.block_pos[start] = 0;
    while let Some(node) = queue.pop_front() {
        let pos = order.nodes.len();
        order.nodes.push(node);
        match node {
            BcNode::Block(b) => {
                order.block_pos[b] = pos;
                order.blocks.push(b);
                let mut next: Vec<usize> = d
                    .block_cutpoints(b)
                    .iter()
                    .copied()
                    .filter(|&c| order.hc[c] == NONE && c != order.ci[b])
                    .collect();
                if let Some(r) = rng.as_mut() {
                    next.shuffle(r);
                }
                for c in next {
                    order.hc[c] = b;
                    queue.push_back(BcNode::Cut(c));
                }
            }
            BcNode::Cut(c) => {
                order.cut_pos[c] = pos;
                order.cuts.push(c);
                let mut next: Vec<usize> = d
                    .blocks_of(c)
                    .iter()
                    .copied()
                    .filter(|&b| b != order.hc[c])
                    .collect();
                if let Some(r) = rng.as_mut() {
                    next.shuffle(r);
                }
                for b in next {
                    order.ci[b] = c;
                    queue.push_back(BcNode::Block(b));
                }
            }
        }
    }
    Ok(order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    A,
    B,
}

/// A label for every cutpoint; `None` on non-cutpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    labels: Vec<Option<Label>>,
}

impl Labeling {
    pub fn get(&self, v: usize) -> Option<Label> {
        self.labels[v]
    }

    pub fn is_b(&self, v: usize) -> bool {
        self.labels[v] == Some(Label::B)
    }

    /// Labels of the cutpoints of block `b`, sorted.
    pub fn multiset(&self, d: &BlockDecomposition, b: usize) -> Vec<Label> {
        let mut out: Vec<Label> = d
            .block_cutpoints(b)
            .iter()
            .filter_map(|&c| self.labels[c])
            .collect();
        out.sort_unstable();
        out
    }
}

/// Label multisets a block may carry when all conditions hold.
pub const ALLOWED_MULTISETS: [&[Label]; 11] = {
    use Label::{A, B};
    [
        &[],
        &[A],
        &[B],
        &[A, A],
        &[A, B],
        &[B, B],
        &[A, A, A],
        &[A, A, B],
        &[A, B, B],
        &[A, A, A, A],
        &[A, A, A, B],
    ]
};

/// Whether child block `k` of cutpoint `c` counts toward `c`'s label: it has
/// at least four cutpoints, or exactly three with one other than `c`
/// labeled B.
fn qualifies(d: &BlockDecomposition, labels: &[Option<Label>], k: usize, c: usize) -> bool {
    let cps = d.block_cutpoints(k);
    match cps.len() {
        0..=2 => false,
        3 => cps.iter().any(|&o| {
            if o == c {
                return false;
            }
            assert!(
                labels[o].is_some(),
                "cutpoint {o} read before being labeled"
            );
            labels[o] == Some(Label::B)
        }),
        _ => true,
    }
}

/// Qualifying child blocks of cutpoint `c`, in visiting order.
pub fn qualifying_blocks(
    d: &BlockDecomposition,
    o: &BlockOrder,
    l: &Labeling,
    c: usize,
) -> Vec<usize> {
    o.child_blocks(d, c)
        .into_iter()
        .filter(|&k| qualifies(d, &l.labels, k, c))
        .collect()
}

/// Labels cutpoints in decreasing visiting order: B when at least two child
/// blocks qualify, A otherwise.
pub fn label_cutpoints(d: &BlockDecomposition, o: &BlockOrder) -> Labeling {
    let mut labels = vec![None; d.vertex_count()];
    for &c in o.cutpoints().iter().rev() {
        let count = o
            .child_blocks(d, c)
            .into_iter()
            .filter(|&k| qualifies(d, &labels, k, c))
            .count();
        labels[c] = Some(if count >= 2 { Label::B } else { Label::A });
    }
    Labeling { labels }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClaimCondition {
    I,
    II,
    III,
    IV,
}

/// The first failed structural condition with the data that shows it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimViolation {
    /// A block with five or more cutpoints.
    FiveCutpoints { block: usize },
    /// A B cutpoint with three or more qualifying child blocks.
    ExtraQualifying { cutpoint: usize, blocks: Vec<usize> },
    /// A B cutpoint whose parent block has four or more cutpoints.
    HeavyParent { cutpoint: usize, block: usize },
    /// A block with three or more cutpoints that is the parent of two B
    /// cutpoints.
    TwoBParents {
        block: usize,
        cutpoints: (usize, usize),
    },
}

impl ClaimViolation {
    pub fn condition(&self) -> ClaimCondition {
        match self {
            ClaimViolation::FiveCutpoints { .. } => ClaimCondition::I,
            ClaimViolation::ExtraQualifying { .. } => ClaimCondition::II,
            ClaimViolation::HeavyParent { .. } => ClaimCondition::III,
            ClaimViolation::TwoBParents { .. } => ClaimCondition::IV,
        }
    }

    /// Rechecks the witness against the decomposition, order and labels.
    pub fn holds(&self, d: &BlockDecomposition, o: &BlockOrder, l: &Labeling) -> bool {
        match self {
            ClaimViolation::FiveCutpoints { block } => d.block_cutpoints(*block).len() >= 5,
            ClaimViolation::ExtraQualifying { cutpoint, blocks } => {
                l.is_b(*cutpoint)
                    && blocks.len() >= 3
                    && blocks.iter().all(|&k| {
                        o.ci(k) == Some(*cutpoint) && qualifies(d, &l.labels, k, *cutpoint)
                    })
            }
            ClaimViolation::HeavyParent { cutpoint, block } => {
                l.is_b(*cutpoint)
                    && o.hc(*cutpoint) == Some(*block)
                    && d.block_cutpoints(*block).len() >= 4
            }
            ClaimViolation::TwoBParents {
                block,
                cutpoints: (a, b),
            } => {
                a != b
                    && d.block_cutpoints(*block).len() >= 3
                    && [a, b]
                        .iter()
                        .all(|&&c| l.is_b(c) && o.hc(c) == Some(*block))
            }
        }
    }
}

/// Checks conditions (i) to (iv) in that order, scanning blocks and
/// cutpoints in visiting order; returns the first violation.
pub fn check_claim_conditions(
    d: &BlockDecomposition,
    o: &BlockOrder,
    l: &Labeling,
) -> Option<ClaimViolation> {
    for &b in o.blocks() {
        if d.block_cutpoints(b).len() >= 5 {
            return Some(ClaimViolation::FiveCutpoints { block: b });
        }
    }
    let bs: Vec<usize> = o
        .cutpoints()
        .iter()
        .copied()
        .filter(|&c| l.is_b(c))
        .collect();
    for &c in &bs {
        let blocks = qualifying_blocks(d, o, l, c);
        if blocks.len() >= 3 {
            return Some(ClaimViolation::ExtraQualifying {
                cutpoint: c,
                blocks,
            });
        }
    }
    for &c in &bs {
        let h = o.hc(c).expect("cutpoints have a parent block");
        if d.block_cutpoints(h).len() >= 4 {
            return Some(ClaimViolation::HeavyParent {
                cutpoint: c,
                block: h,
            });
        }
    }
    for &b in o.blocks() {
        if d.block_cutpoints(b).len() < 3 {
            continue;
        }
        let mut parents = bs.iter().copied().filter(|&c| o.hc(c) == Some(b));
        if let (Some(x), Some(y)) = (parents.next(), parents.next()) {
            return Some(ClaimViolation::TwoBParents {
                block: b,
                cutpoints: (x, y),
            });
        }
    }
    None
}

/// Decomposition, order, labels and condition check of one connected block
/// graph.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub decomposition: BlockDecomposition,
    pub order: BlockOrder,
    pub labels: Labeling,
    pub violation: Option<ClaimViolation>,
}

impl Analysis {
    /// Runs the decision procedure on a connected graph whose blocks are
    /// known to be cliques.
    pub fn new(g: &Graph, start_block: usize, seed: Option<u64>) -> Result<Self> {
        let decomposition = decompose(g)?;
        Self::from_decomposition(decomposition, start_block, seed)
    }

    pub fn from_decomposition(
        decomposition: BlockDecomposition,
        start_block: usize,
        seed: Option<u64>,
    ) -> Result<Self> {
        let order = bfs_block_order_seeded(&decomposition, start_block, seed)?;
        let labels = label_cutpoints(&decomposition, &order);
        let violation = check_claim_conditions(&decomposition, &order, &labels);
        Ok(Analysis {
            decomposition,
            order,
            labels,
            violation,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
    NotBlockGraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    Accept(GridRepresentation),
    Reject(Certificate),
    NotBlockGraph(NotBlockGraphWitness),
}

impl Recognition {
    pub fn verdict(&self) -> Verdict {
        match self {
            Recognition::Accept(_) => Verdict::Accept,
            Recognition::Reject(_) => Verdict::Reject,
            Recognition::NotBlockGraph(_) => Verdict::NotBlockGraph,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RecognizeOptions {
    /// BFS start block, as an index into each component's block list.
    /// Components with fewer blocks start from block 0.
    pub start_block: Option<usize>,
    /// Seed for shuffling BFS neighbor order.
    pub seed: Option<u64>,
}

/// Recognizes with default options.
pub fn recognize(g: &Graph) -> Recognition {
    recognize_with(g, &RecognizeOptions::default()).expect("default options are valid")
}

/// Recognizes each component independently. The whole graph is accepted
/// when every component is; accepted components are laid out side by side.
pub fn recognize_with(g: &Graph, opts: &RecognizeOptions) -> Result<Recognition> {
    let comps = g.connected_components();
    let mut reps = Vec::new();
    for comp in &comps {
        let part = g.induced_subgraph(comp)?;
        let to_original = |v: usize| part.original[v];
        match recognize_connected(&part.graph, opts)? {
            Recognition::Accept(rep) => reps.push((rep, part.original)),
            Recognition::Reject(cert) => {
                return Ok(Recognition::Reject(Certificate {
                    vertices: cert.vertices.iter().map(|&v| to_original(v)).collect(),
                    k: cert.k,
                }))
            }
            Recognition::NotBlockGraph(w) => {
                return Ok(Recognition::NotBlockGraph(NotBlockGraphWitness {
                    block: w.block,
                    members: w.members.iter().map(|&v| to_original(v)).collect(),
                    pair: (to_original(w.pair.0), to_original(w.pair.1)),
                }))
            }
        }
    }
    let mut paths = vec![None; g.n()];
    let mut offset = 0;
    for (mut rep, original) in reps {
        rep.translate(offset, 0);
        offset = rep.bounds().map_or(offset, |b| b.x1 + 2);
        for mut p in rep.paths {
            p.vertex = original[p.vertex];
            paths[p.vertex] = Some(p);
        }
    }
    let paths = paths
        .into_iter()
        .map(|p| p.expect("every vertex placed"))
        .collect();
    Ok(Recognition::Accept(compact(&GridRepresentation::new(
        paths,
    ))))
}

fn recognize_connected(g: &Graph, opts: &RecognizeOptions) -> Result<Recognition> {
    let d = decompose(g)?;
    if let Some(w) = d.non_clique_witness(g) {
        return Ok(Recognition::NotBlockGraph(w));
    }
    let start = opts
        .start_block
        .filter(|&s| s < d.block_count())
        .unwrap_or(0);
    let analysis = Analysis::from_decomposition(d, start, opts.seed)?;
    match &analysis.violation {
        None => Ok(Recognition::Accept(build_representation(&analysis)?)),
        Some(_) => Ok(Recognition::Reject(extract_certificate(g, &analysis)?)),
    }
}

/// Verdict only, without building a witness.
pub fn decide(g: &Graph, opts: &RecognizeOptions) -> Result<Verdict> {
    for comp in g.connected_components() {
        let part = g.induced_subgraph(&comp)?.graph;
        let d = decompose(&part)?;
        if d.non_clique_witness(&part).is_some() {
            return Ok(Verdict::NotBlockGraph);
        }
        let start = opts
            .start_block
            .filter(|&s| s < d.block_count())
            .unwrap_or(0);
        if Analysis::from_decomposition(d, start, opts.seed)?
            .violation
            .is_some()
        {
            return Ok(Verdict::Reject);
        }
    }
    Ok(Verdict::Accept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{family_member, thin_spider};

    fn analysis(g: &Graph) -> Analysis {
        Analysis::new(g, 0, None).unwrap()
    }

    #[test]
    fn path_order() {
        let d = decompose(&Graph::path(3)).unwrap();
        let o = bfs_block_order(&d, 0).unwrap();
        assert_eq!(o.blocks(), &[0, 1]);
        assert_eq!(o.hc(1), Some(0));
        assert_eq!(o.ci(1), Some(1));
        assert_eq!(o.ci(0), None);
    }

    #[test]
    fn spider_order_starts_at_clique() {
        let g = thin_spider(5).unwrap();
        let d = decompose(&g).unwrap();
        let k5 = d.blocks().iter().position(|b| b.len() == 5).unwrap();
        let o = bfs_block_order(&d, k5).unwrap();
        assert_eq!(o.root(), k5);
        assert_eq!(o.blocks().len(), 6);
        for c in 0..5 {
            assert_eq!(o.hc(c), Some(k5));
        }
    }

    #[test]
    fn star_blocks_share_center() {
        let d = decompose(&Graph::star(3)).unwrap();
        for start in 0..3 {
            let o = bfs_block_order(&d, start).unwrap();
            assert_eq!(o.blocks().len(), 3);
            for &b in &o.blocks()[1..] {
                assert_eq!(o.ci(b), Some(0));
            }
        }
    }

    #[test]
    fn bad_start_block() {
        let d = decompose(&Graph::path(3)).unwrap();
        assert!(bfs_block_order(&d, 2).is_err());
    }

    #[test]
    fn siblings_are_consecutive() {
        let g = family_member(2);
        let d = decompose(&g).unwrap();
        for start in 0..d.block_count() {
            let o = bfs_block_order_seeded(&d, start, Some(start as u64)).unwrap();
            for &b in &o.blocks()[1..] {
                let c = o.ci(b).unwrap();
                assert!(d.block(b).contains(c));
                assert!(o.block_position(o.hc(c).unwrap()) < o.block_position(b));
            }
            let mut seen_parent = Vec::new();
            for &b in &o.blocks()[1..] {
                let c = o.ci(b).unwrap();
                if seen_parent.last() != Some(&c) {
                    assert!(!seen_parent.contains(&c), "siblings of {c} split");
                    seen_parent.push(c);
                }
            }
        }
    }

    #[test]
    fn spider_labels_and_violation() {
        let a = analysis(&thin_spider(5).unwrap());
        for c in 0..5 {
            assert_eq!(a.labels.get(c), Some(Label::A));
        }
        let v = a.violation.unwrap();
        assert_eq!(v.condition(), ClaimCondition::I);
        assert!(v.holds(&a.decomposition, &a.order, &a.labels));
    }

    #[test]
    fn first_member_violates_heavy_parent() {
        let g = family_member(1);
        let d = decompose(&g).unwrap();
        let x = (0..g.n()).find(|&v| d.is_three_cutpoint(v)).unwrap();
        let central = d
            .blocks_of(x)
            .iter()
            .copied()
            .find(|&b| {
                d.block_cutpoints(b)
                    .iter()
                    .filter(|&&c| d.blocks_of(c).iter().any(|&o| d.block(o).len() == 2))
                    .count()
                    == 3
            })
            .unwrap();
        let a = Analysis::from_decomposition(d, central, None).unwrap();
        assert_eq!(a.labels.get(x), Some(Label::B));
        let bs = (0..g.n()).filter(|&v| a.labels.is_b(v)).count();
        assert_eq!(bs, 1);
        let v = a.violation.unwrap();
        assert_eq!(
            v,
            ClaimViolation::HeavyParent {
                cutpoint: x,
                block: central
            }
        );
        assert!(v.holds(&a.decomposition, &a.order, &a.labels));
    }

    #[test]
    fn trees_are_all_a() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]).unwrap();
        let a = analysis(&g);
        for &c in a.decomposition.cutpoints() {
            assert_eq!(a.labels.get(c), Some(Label::A));
        }
        assert_eq!(a.violation, None);
    }

    #[test]
    fn verdicts() {
        assert_eq!(recognize(&Graph::path(5)).verdict(), Verdict::Accept);
        assert_eq!(
            recognize(&thin_spider(5).unwrap()).verdict(),
            Verdict::Reject
        );
        assert_eq!(
            recognize(&Graph::cycle(4)).verdict(),
            Verdict::NotBlockGraph
        );
        assert_eq!(recognize(&Graph::new(0)).verdict(), Verdict::Accept);
    }

    #[test]
    fn disconnected_inputs() {
        let g = Graph::path(3).disjoint_union(&thin_spider(5).unwrap());
        match recognize(&g) {
            Recognition::Reject(c) => assert_eq!(c.vertices, (3..13).collect()),
            other => panic!("{other:?}"),
        }
        let g = Graph::path(3).disjoint_union(&Graph::complete(3));
        assert_eq!(recognize(&g).verdict(), Verdict::Accept);
    }
}
