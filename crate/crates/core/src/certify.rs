//! Forbidden induced subgraphs for rejected block graphs.
//!
//! Extraction follows the induction on the number of B cutpoints. With a
//! block of five cutpoints the answer is an `N_5`. Otherwise the last B
//! cutpoint `v` in BFS order is examined: either a family member can be read
//! off around `v` directly, or the graph is reduced (by deleting or by
//! replacing `v`'s subtree with a small gadget), the reduced graph is solved
//! recursively and the answer is translated back.

use crate::blocks::{decompose, BlockDecomposition};
use crate::error::{Error, Result};
use crate::family::FamilyLevels;
use crate::graph::{Graph, VertexSet};
use crate::recognize::{qualifying_blocks, Analysis, BlockOrder, ClaimViolation, Labeling};

/// A vertex set of the input graph inducing a family member built with `k`
/// procedure applications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub vertices: VertexSet,
    pub k: usize,
}

impl Certificate {
    fn from_vertices(vertices: VertexSet) -> Result<Self> {
        let n = vertices.len();
        if n < 10 || !(n - 1).is_multiple_of(9) {
            return Err(internal(format!("certificate of size {n}")));
        }
        Ok(Certificate {
            k: (n - 1) / 9 - 1,
            vertices,
        })
    }
}

fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

/// Extracts a certificate from a graph whose analysis found a violation.
pub fn extract_certificate(g: &Graph, analysis: &Analysis) -> Result<Certificate> {
    if analysis.violation.is_none() {
        return Err(Error::Precondition("no condition is violated".into()));
    }
    let set = extract(g, analysis, 0)?;
    Certificate::from_vertices(set)
}

/// Checks that `cert.vertices` induces a family member with `cert.k`
/// applications.
pub fn verify_certificate(g: &Graph, cert: &Certificate) -> bool {
    let Ok(sub) = g.induced_subgraph(&cert.vertices) else {
        return false;
    };
    FamilyLevels::new()
        .identify(&sub.graph)
        .is_some_and(|m| m.k == cert.k)
}

struct Level<'a> {
    g: &'a Graph,
    d: &'a BlockDecomposition,
    o: &'a BlockOrder,
    l: &'a Labeling,
}

impl Level<'_> {
    /// Lowest-id neighbor of `c` outside block `b`.
    fn pendant(&self, c: usize, b: usize) -> Result<usize> {
        let members = self.d.block(b);
        self.g
            .neighbors(c)
            .iter()
            .copied()
            .find(|&w| !members.contains(w))
            .ok_or_else(|| internal(format!("cutpoint {c} has no neighbor outside block {b}")))
    }

    /// The three cutpoints of `b` other than `entry`, each with a pendant
    /// outside `b`: a thin `N_3` hanging from `entry`.
    fn spider(&self, b: usize, entry: usize) -> Result<Vec<usize>> {
        let others: Vec<usize> = self
            .d
            .block_cutpoints(b)
            .iter()
            .copied()
            .filter(|&c| c != entry)
            .collect();
        if others.len() != 3 {
            return Err(internal(format!(
                "block {b} has {} cutpoints besides {entry}",
                others.len()
            )));
        }
        let mut out = Vec::with_capacity(6);
        for c in others {
            out.push(c);
            out.push(self.pendant(c, b)?);
        }
        Ok(out)
    }

    /// The two qualifying child blocks of a B cutpoint, both with four
    /// cutpoints.
    fn heavy_pair(&self, v: usize) -> Result<Vec<usize>> {
        let q = qualifying_blocks(self.d, self.o, self.l, v);
        if q.len() < 2 || q.iter().any(|&b| self.d.block_cutpoints(b).len() != 4) {
            return Err(internal(format!(
                "cutpoint {v} lacks two four-cutpoint children"
            )));
        }
        Ok(q)
    }
}

fn extract(g: &Graph, a: &Analysis, depth: usize) -> Result<VertexSet> {
    if depth > g.n() {
        return Err(internal("reduction does not terminate"));
    }
    let lv = Level {
        g,
        d: &a.decomposition,
        o: &a.order,
        l: &a.labels,
    };
    let violation = a
        .violation
        .as_ref()
        .ok_or_else(|| internal("reduced graph satisfies every condition"))?;
    if let ClaimViolation::FiveCutpoints { block } = *violation {
        let mut out = Vec::new();
        for &c in &lv.d.block_cutpoints(block)[..5] {
            out.push(c);
            out.push(lv.pendant(c, block)?);
        }
        return Ok(VertexSet::new(out));
    }
    let v = *lv
        .o
        .cutpoints()
        .iter()
        .rev()
        .find(|&&c| lv.l.is_b(c))
        .ok_or_else(|| internal("violation without a B cutpoint"))?;
    let q = lv.heavy_pair(v)?;
    let hv = lv.o.hc(v).expect("cutpoints have a parent block");
    let hv_cuts = lv.d.block_cutpoints(hv);
    let mut out = vec![v];
    out.extend(lv.spider(q[0], v)?);
    out.extend(lv.spider(q[1], v)?);
    if q.len() >= 3 {
        out.extend(lv.spider(q[2], v)?);
        return Ok(VertexSet::new(out));
    }
    match hv_cuts.len() {
        4 => {
            out.extend(lv.spider(hv, v)?);
            Ok(VertexSet::new(out))
        }
        3 => {
            let others: Vec<usize> = hv_cuts.iter().copied().filter(|&c| c != v).collect();
            let w = others
                .iter()
                .copied()
                .filter(|&c| lv.l.is_b(c) && lv.o.hc(c) == Some(hv))
                .min_by_key(|&c| lv.o.cut_position(c));
            match w {
                Some(w) => {
                    let u = others
                        .iter()
                        .copied()
                        .find(|&c| c != w)
                        .expect("three cutpoints");
                    let qw = lv.heavy_pair(w)?;
                    out.push(w);
                    out.extend(lv.spider(qw[0], w)?);
                    out.extend(lv.spider(qw[1], w)?);
                    out.push(u);
                    out.push(lv.pendant(u, hv)?);
                    Ok(VertexSet::new(out))
                }
                None => replace_subtree(&lv, a, v, hv, &q, depth),
            }
        }
        2 => delete_subtree(&lv, a, v, hv, depth),
        n => Err(internal(format!("parent block of {v} has {n} cutpoints"))),
    }
}

/// Vertices of the components of `g - v` not containing `keep`.
fn subtree_of(g: &Graph, v: usize, keep: usize) -> Result<VertexSet> {
    let rest = g.without(&VertexSet::new([v]))?;
    let anchor = rest
        .original
        .iter()
        .position(|&x| x == keep)
        .expect("keep differs from v");
    let mut out = Vec::new();
    for comp in rest.graph.connected_components() {
        if !comp.contains(anchor) {
            out.extend(comp.iter().map(|&i| rest.original[i]));
        }
    }
    Ok(VertexSet::new(out))
}

/// Start block of a reduced graph: the block holding all of `members`.
fn block_holding(d: &BlockDecomposition, members: &[usize]) -> Result<usize> {
    (0..d.block_count())
        .find(|&b| members.iter().all(|&m| d.block(b).contains(m)))
        .ok_or_else(|| internal("start block lost in reduction"))
}

fn reanalyze(g: &Graph, root_members: &[usize]) -> Result<Analysis> {
    let d = decompose(g)?;
    let start = block_holding(&d, root_members)?;
    Analysis::from_decomposition(d, start, None)
}

fn root_members(lv: &Level, a: &Analysis) -> Vec<usize> {
    lv.d.block(a.order.root()).as_slice().to_vec()
}

/// `v`'s parent block has two cutpoints: drop everything below `v` and
/// recurse.
fn delete_subtree(
    lv: &Level,
    a: &Analysis,
    v: usize,
    hv: usize,
    depth: usize,
) -> Result<VertexSet> {
    let keep =
        lv.d.block(hv)
            .iter()
            .copied()
            .find(|&x| x != v)
            .expect("blocks have two vertices");
    let removed = subtree_of(lv.g, v, keep)?;
    let reduced = lv.g.without(&removed)?;
    let local = |x: usize| reduced.original.binary_search(&x).expect("kept vertex");
    let root: Vec<usize> = root_members(lv, a).into_iter().map(local).collect();
    let next = reanalyze(&reduced.graph, &root)?;
    let inner = extract(&reduced.graph, &next, depth + 1)?;
    Ok(inner.iter().map(|&x| reduced.original[x]).collect())
}

/// `v`'s parent block has three cutpoints and no B sibling: replace `v` and
/// its subtree by two adjacent copies `v1`, `v2` of `v` restricted to the
/// parent block, each with one pendant, and recurse. A certificate using
/// both copies is mapped back by undoing the contraction on `v` and its two
/// heavy children.
fn replace_subtree(
    lv: &Level,
    a: &Analysis,
    v: usize,
    hv: usize,
    q: &[usize],
    depth: usize,
) -> Result<VertexSet> {
    let keep =
        lv.d.block(hv)
            .iter()
            .copied()
            .find(|&x| x != v)
            .expect("blocks have two vertices");
    let mut removed = subtree_of(lv.g, v, keep)?.into_vec();
    removed.push(v);
    let removed = VertexSet::new(removed);
    let reduced = lv.g.without(&removed)?;
    let mut g2 = reduced.graph.clone();
    let local = |x: usize| reduced.original.binary_search(&x).expect("kept vertex");
    let v1 = g2.add_vertex();
    let v2 = g2.add_vertex();
    let p1 = g2.add_vertex();
    let p2 = g2.add_vertex();
    g2.add_edge(v1, v2)?;
    g2.add_edge(v1, p1)?;
    g2.add_edge(v2, p2)?;
    for &x in lv.d.block(hv).iter().filter(|&&x| x != v) {
        g2.add_edge(v1, local(x))?;
        g2.add_edge(v2, local(x))?;
    }
    let root_block = a.order.root();
    let root: Vec<usize> = if root_block == hv {
        let mut r: Vec<usize> =
            lv.d.block(hv)
                .iter()
                .filter(|&&x| x != v)
                .map(|&x| local(x))
                .collect();
        r.push(v1);
        r
    } else {
        root_members(lv, a).into_iter().map(local).collect()
    };
    let next = reanalyze(&g2, &root)?;
    let inner = extract(&g2, &next, depth + 1)?;
    let kept = reduced.original.len();
    let mut out: Vec<usize> = inner
        .iter()
        .filter(|&&x| x < kept)
        .map(|&x| reduced.original[x])
        .collect();
    match (inner.contains(v1), inner.contains(v2)) {
        (true, true) => {
            out.push(v);
            out.extend(lv.spider(q[0], v)?);
            out.extend(lv.spider(q[1], v)?);
        }
        (true, false) | (false, true) => {
            let pi = if inner.contains(v1) { p1 } else { p2 };
            out.push(v);
            if inner.contains(pi) {
                out.push(lv.pendant(v, hv)?);
            }
        }
        (false, false) => {}
    }
    Ok(VertexSet::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{family_level, family_member, thin_spider};

    fn certify(g: &Graph) -> Certificate {
        let a = Analysis::new(g, 0, None).unwrap();
        extract_certificate(g, &a).unwrap()
    }

    #[test]
    fn spider_is_its_own_certificate() {
        let g = thin_spider(5).unwrap();
        let c = certify(&g);
        assert_eq!(c.vertices, g.vertices());
        assert_eq!(c.k, 0);
        assert!(verify_certificate(&g, &c));
    }

    #[test]
    fn partial_sets_fail() {
        let g = thin_spider(5).unwrap();
        let c = Certificate {
            vertices: (0..9).collect(),
            k: 0,
        };
        assert!(!verify_certificate(&g, &c));
        let t = Graph::star(12);
        let c = Certificate {
            vertices: (0..10).collect(),
            k: 0,
        };
        assert!(!verify_certificate(&t, &c));
    }

    #[test]
    fn members_certify_themselves_from_every_start() {
        for k in 1..=3 {
            for m in family_level(k) {
                let d = decompose(&m.graph).unwrap();
                for start in 0..d.block_count() {
                    let a = Analysis::from_decomposition(d.clone(), start, None).unwrap();
                    let c = extract_certificate(&m.graph, &a).unwrap();
                    assert_eq!(c.vertices, m.graph.vertices(), "k={k} start={start}");
                    assert_eq!(c.k, k);
                }
            }
        }
    }

    #[test]
    fn extra_leaf_is_ignored() {
        let mut g = family_member(1);
        let leaf = (0..g.n()).find(|&v| g.degree(v) == 1).unwrap();
        let extra = g.add_vertex();
        g.add_edge(leaf, extra).unwrap();
        let c = certify(&g);
        assert_eq!(c.vertices, (0..19).collect());
        assert!(verify_certificate(&g, &c));
    }

    #[test]
    fn accepted_graphs_have_no_certificate() {
        let g = Graph::path(4);
        let a = Analysis::new(&g, 0, None).unwrap();
        assert!(extract_certificate(&g, &a).is_err());
    }
}
