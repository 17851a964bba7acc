//! Canonical forms for connected block graphs.
//!
//! A connected block graph is determined up to isomorphism by its
//! block-cutpoint tree once every block node is annotated with the number of
//! its vertices that are not cutpoints. The canonical form is the AHU
//! encoding of that annotated tree rooted at its center (the smaller encoding
//! when the tree is bicentral).

use crate::blocks::{decompose, BlockDecomposition};
use crate::graph::Graph;

/// Canonical string of a connected block graph; `None` for any other graph.
pub fn canonical_form(g: &Graph) -> Option<String> {
    if g.n() == 0 {
        return Some(String::from("e"));
    }
    let d = decompose(g).ok()?;
    if d.non_clique_witness(g).is_some() {
        return None;
    }
    Some(encode(&d))
}

fn encode(d: &BlockDecomposition) -> String {
    let nb = d.block_count();
    let cps = d.cutpoints().as_slice();
    let mut cut_index = vec![usize::MAX; d.vertex_count()];
    for (i, &c) in cps.iter().enumerate() {
        cut_index[c] = nb + i;
    }
    let total = nb + cps.len();
    let mut adj = vec![Vec::new(); total];
    let mut label = vec![String::from("c"); total];
    for b in 0..nb {
        let private = d.block(b).len() - d.block_cutpoints(b).len();
        label[b] = format!("b{private}");
        for &c in d.block_cutpoints(b) {
            adj[b].push(cut_index[c]);
            adj[cut_index[c]].push(b);
        }
    }
    centers(&adj)
        .into_iter()
        .map(|root| rooted(&adj, &label, root, usize::MAX))
        .min()
        .expect("tree has a center")
}

fn centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in &adj[leaf] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted(adj: &[Vec<usize>], label: &[String], v: usize, parent: usize) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted(adj, label, w, v))
        .collect();
    children.sort_unstable();
    format!("{}({})", label[v], children.concat())
}
