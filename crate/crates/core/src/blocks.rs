//! Blocks, cutpoints and the block-cutpoint tree of a connected graph.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Blocks (maximal 2-connected vertex sets; a bridge is a 2-vertex block)
/// and cutpoints of a connected graph.
///
/// The block-cutpoint tree is bipartite between block indices and cutpoint
/// vertices: block `b` is adjacent to every cutpoint in `block_cutpoints(b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    n: usize,
    blocks: Vec<VertexSet>,
    cutpoints: VertexSet,
    blocks_of: Vec<Vec<usize>>,
    block_cutpoints: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockClass {
    Endblock,
    AlmostEndblock,
    Internal,
}

/// A block that is not complete, with one nonadjacent pair inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotBlockGraphWitness {
    pub block: usize,
    pub members: VertexSet,
    pub pair: (usize, usize),
}

impl BlockDecomposition {
    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &VertexSet {
        &self.blocks[b]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn cutpoints(&self) -> &VertexSet {
        &self.cutpoints
    }

    pub fn is_cutpoint(&self, v: usize) -> bool {
        self.blocks_of[v].len() >= 2
    }

    /// Indices of the blocks containing `v`, ascending.
    pub fn blocks_of(&self, v: usize) -> &[usize] {
        &self.blocks_of[v]
    }

    /// Cutpoints lying in block `b`, ascending.
    pub fn block_cutpoints(&self, b: usize) -> &[usize] {
        &self.block_cutpoints[b]
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of blocks containing cutpoint `c`.
    pub fn cutpoint_multiplicity(&self, c: usize) -> Result<usize> {
        if c >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: c,
                n: self.n,
            });
        }
        if !self.is_cutpoint(c) {
            return Err(Error::NotCutpoint(c));
        }
        Ok(self.blocks_of[c].len())
    }

    pub fn is_endblock(&self, b: usize) -> bool {
        self.block_cutpoints[b].len() <= 1
    }

    /// Endblock / almost endblock / internal block, read literally.
    ///
    /// A graph made of a single block has no cutpoints and is classified as
    /// an endblock.
    pub fn classify_block(&self, b: usize) -> BlockClass {
        let cps = &self.block_cutpoints[b];
        if cps.len() <= 1 {
            return BlockClass::Endblock;
        }
        let touching = cps
            .iter()
            .filter(|&&c| {
                self.blocks_of[c]
                    .iter()
                    .any(|&other| other != b && !self.is_endblock(other))
            })
            .count();
        if touching == 1 {
            BlockClass::AlmostEndblock
        } else {
            BlockClass::Internal
        }
    }

    /// Cutpoint in exactly two blocks, one of which is an endblock.
    pub fn is_two_cutpoint(&self, c: usize) -> bool {
        let bs = &self.blocks_of[c];
        bs.len() == 2 && bs.iter().any(|&b| self.is_endblock(b))
    }

    pub fn is_three_cutpoint(&self, c: usize) -> bool {
        self.blocks_of[c].len() == 3
    }

    /// Neighbors of block `b` in the block-cutpoint tree (its cutpoints).
    /// Neighbors of cutpoint `c` are `blocks_of(c)`.
    pub fn bctree_edges(&self) -> Vec<(usize, usize)> {
        self.block_cutpoints
            .iter()
            .enumerate()
            .flat_map(|(b, cs)| cs.iter().map(move |&c| (b, c)))
            .collect()
    }

    /// First block that is not complete in `g`, if any.
    pub fn non_clique_witness(&self, g: &Graph) -> Option<NotBlockGraphWitness> {
        for (b, members) in self.blocks.iter().enumerate() {
            let vs = members.as_slice();
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    if !g.has_edge(u, v) {
                        return Some(NotBlockGraphWitness {
                            block: b,
                            members: members.clone(),
                            pair: (u, v),
                        });
                    }
                }
            }
        }
        None
    }
}

/// Computes the blocks of a connected graph with one lowpoint DFS from vertex 0.
pub fn decompose(g: &Graph) -> Result<BlockDecomposition> {
    let n = g.n();
    let comps = g.connected_components();
    if comps.len() > 1 {
        return Err(Error::Disconnected(
            comps[0].first().unwrap(),
            comps[1].first().unwrap(),
        ));
    }
    let mut blocks: Vec<VertexSet> = Vec::new();
    if n == 1 {
        blocks.push(VertexSet::new([0]));
    } else if n > 1 {
        blocks = biconnected_components(g);
    }
    blocks.sort_by(|a, b| {
        (a.first(), a.len(), a.as_slice()).cmp(&(b.first(), b.len(), b.as_slice()))
    });

    let mut blocks_of = vec![Vec::new(); n];
    for (b, members) in blocks.iter().enumerate() {
        for &v in members {
            blocks_of[v].push(b);
        }
    }
    let cutpoints = VertexSet::new((0..n).filter(|&v| blocks_of[v].len() >= 2));
    let block_cutpoints = blocks
        .iter()
        .map(|members| {
            members
                .iter()
                .copied()
                .filter(|&v| blocks_of[v].len() >= 2)
                .collect()
        })
        .collect();
    Ok(BlockDecomposition {
        n,
        blocks,
        cutpoints,
        blocks_of,
        block_cutpoints,
    })
}

fn biconnected_components(g: &Graph) -> Vec<VertexSet> {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 1;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    // (vertex, dfs parent, next neighbor index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, UNSEEN, 0)];
    disc[0] = 0;

    while let Some(top) = stack.last_mut() {
        let (u, parent, next) = *top;
        if next < g.degree(u) {
            top.2 += 1;
            let w = g.neighbors(u)[next];
            if disc[w] == UNSEEN {
                edge_stack.push((u, w));
                disc[w] = time;
                low[w] = time;
                time += 1;
                stack.push((w, u, 0));
            } else if w != parent && disc[w] < disc[u] {
                edge_stack.push((u, w));
                low[u] = low[u].min(disc[w]);
            }
        } else {
            stack.pop();
            if parent != UNSEEN {
                low[parent] = low[parent].min(low[u]);
                if low[u] >= disc[parent] {
                    let mut members = Vec::new();
                    while let Some((a, b)) = edge_stack.pop() {
                        members.push(a);
                        members.push(b);
                        if (a, b) == (parent, u) {
                            break;
                        }
                    }
                    out.push(VertexSet::new(members));
                }
            }
        }
    }
    out
}

/// Checks that every block of a connected graph is a clique.
pub fn validate_block_graph(g: &Graph) -> Result<Option<NotBlockGraphWitness>> {
    Ok(decompose(g)?.non_clique_witness(g))
}
