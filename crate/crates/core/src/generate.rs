//! Block graph generators for test corpora.

use std::collections::BTreeMap;

use rand::Rng;

use crate::canon::canonical_form;
use crate::graph::Graph;

/// Glues a new clique of `size` vertices onto `g` at vertex `at`: `size - 1`
/// fresh vertices, all adjacent to each other and to `at`.
pub fn attach_clique(g: &mut Graph, at: usize, size: usize) {
    let fresh: Vec<usize> = (1..size).map(|_| g.add_vertex()).collect();
    for (i, &u) in fresh.iter().enumerate() {
        g.add_edge(at, u).expect("fresh vertex");
        for &w in &fresh[i + 1..] {
            g.add_edge(u, w).expect("fresh vertex");
        }
    }
}

/// Random connected block graph with exactly `n` vertices. Block sizes are
/// drawn from `sizes` (each at least 2), truncated to fit.
pub fn random_block_graph<R: Rng>(rng: &mut R, n: usize, sizes: &[usize]) -> Graph {
    assert!(sizes.iter().all(|&s| s >= 2), "block sizes start at 2");
    if n == 0 {
        return Graph::new(0);
    }
    let mut g = Graph::new(1);
    while g.n() < n {
        let at = rng.gen_range(0..g.n());
        let size = sizes[rng.gen_range(0..sizes.len())].min(n - g.n() + 1);
        attach_clique(&mut g, at, size);
    }
    g
}

/// Like [`random_block_graph`], but new cliques are glued, with
/// probability `bias`, onto a vertex of a clique with at least three
/// vertices. This makes blocks with many cutpoints, and so B labels and
/// rejections, far more common.
pub fn random_dense_block_graph<R: Rng>(
    rng: &mut R,
    n: usize,
    sizes: &[usize],
    bias: f64,
) -> Graph {
    assert!(sizes.iter().all(|&s| s >= 2), "block sizes start at 2");
    if n == 0 {
        return Graph::new(0);
    }
    let mut g = Graph::new(1);
    let mut anchors = Vec::new();
    while g.n() < n {
        let at = if !anchors.is_empty() && rng.gen_bool(bias) {
            anchors[rng.gen_range(0..anchors.len())]
        } else {
            rng.gen_range(0..g.n())
        };
        let size = sizes[rng.gen_range(0..sizes.len())].min(n - g.n() + 1);
        let first = g.n();
        attach_clique(&mut g, at, size);
        if size >= 3 {
            anchors.extend(first..g.n());
        }
    }
    g
}

/// Glues a K4 at `at` and a pendant edge on each of its three new
/// vertices: a block with four cutpoints hanging from `at`.
pub fn attach_heavy_unit(g: &mut Graph, at: usize) {
    let first = g.n();
    attach_clique(g, at, 4);
    for v in first..first + 3 {
        attach_clique(g, v, 2);
    }
}

/// Random connected block graph with exactly `n` vertices built from small
/// cliques and heavy units (see [`attach_heavy_unit`]), often two units at
/// one vertex. Such graphs carry many B labels; a good share is rejected.
pub fn random_heavy_block_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    if n == 0 {
        return Graph::new(0);
    }
    let mut g = Graph::new(1);
    while g.n() < n {
        let at = rng.gen_range(0..g.n());
        let room = n - g.n();
        let roll: f64 = rng.gen();
        if room >= 14 && roll < 0.3 {
            attach_heavy_unit(&mut g, at);
            attach_heavy_unit(&mut g, at);
        } else if room >= 7 && roll < 0.55 {
            attach_heavy_unit(&mut g, at);
        } else {
            let size = rng.gen_range(2..=4).min(room + 1);
            attach_clique(&mut g, at, size);
        }
    }
    g
}

/// Pads `g` with random cliques glued at random vertices until it has `n`
/// vertices.
pub fn pad<R: Rng>(rng: &mut R, g: &Graph, n: usize, sizes: &[usize]) -> Graph {
    let mut out = g.clone();
    while out.n() < n {
        let at = rng.gen_range(0..out.n());
        let size = sizes[rng.gen_range(0..sizes.len())].min(n - out.n() + 1);
        attach_clique(&mut out, at, size);
    }
    out
}

/// Every connected block graph with at most `max_n` vertices, one per
/// isomorphism class, ordered by vertex count then canonical form.
pub fn all_block_graphs(max_n: usize) -> Vec<Graph> {
    let mut by_size: Vec<BTreeMap<String, Graph>> = vec![BTreeMap::new(); max_n + 1];
    if max_n == 0 {
        return vec![Graph::new(0)];
    }
    let k1 = Graph::new(1);
    by_size[1].insert(canonical_form(&k1).expect("block graph"), k1);
    for n in 1..max_n {
        let current: Vec<Graph> = by_size[n].values().cloned().collect();
        for g in current {
            for at in 0..n {
                for size in 2..=(max_n - n + 1) {
                    let mut h = g.clone();
                    attach_clique(&mut h, at, size);
                    let form = canonical_form(&h).expect("block graph");
                    by_size[h.n()].entry(form).or_insert(h);
                }
            }
        }
    }
    by_size.into_iter().flat_map(|m| m.into_values()).collect()
}
