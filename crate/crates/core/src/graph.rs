//! Finite simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A simple undirected graph with vertices `0..n`.
///
/// Neighbor lists are kept sorted, so iteration order is deterministic
/// everywhere downstream.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    /// Builds a graph from an edge list. Repeated edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("in range");
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..n {
            g.add_edge(u - 1, u).expect("in range");
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0).expect("in range");
        }
        g
    }

    /// Star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v).expect("in range");
        }
        g
    }

    /// Adds an isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Inserts edge `uv`. Returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edges += 1;
                Ok(true)
            }
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet((0..self.n()).collect())
    }

    /// Subgraph induced by `s`, relabelled `0..|s|` in ascending order of `s`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Induced> {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in s.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let mut g = Graph::new(s.len());
        for (i, &v) in s.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && j > i {
                    g.adj[i].push(j);
                    g.adj[j].push(i);
                    g.edges += 1;
                }
            }
        }
        for ns in &mut g.adj {
            ns.sort_unstable();
        }
        Ok(Induced {
            graph: g,
            original: s.0.clone(),
        })
    }

    /// `G - A`: deletes the given vertices.
    pub fn without(&self, removed: &VertexSet) -> Result<Induced> {
        for &v in removed.iter() {
            self.check_vertex(v)?;
        }
        let keep = VertexSet((0..self.n()).filter(|v| !removed.contains(*v)).collect());
        self.induced_subgraph(&keep)
    }

    /// Connected components, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(VertexSet(comp));
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// All maximal cliques, each sorted, in lexicographic order.
    pub fn maximal_cliques(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let all: Vec<usize> = (0..self.n()).collect();
        self.bron_kerbosch(&mut Vec::new(), all, Vec::new(), &mut out);
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<VertexSet>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(VertexSet::new(r.iter().copied()));
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&w| self.has_edge(u, w)).count())
            .expect("p is nonempty");
        let mut p = p;
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&w| !self.has_edge(pivot, w))
            .collect();
        for v in candidates {
            let np = p.iter().copied().filter(|&w| self.has_edge(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| self.has_edge(v, w)).collect();
            r.push(v);
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.n();
        let mut g = self.clone();
        g.adj.extend(
            other
                .adj
                .iter()
                .map(|ns| ns.iter().map(|&w| w + offset).collect()),
        );
        g.edges += other.edges;
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// An induced subgraph together with the map back to the host's ids.
#[derive(Debug, Clone)]
pub struct Induced {
    pub graph: Graph,
    /// `original[i]` is the host vertex that became vertex `i`.
    pub original: Vec<usize>,
}

/// Sorted set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(items: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Searches for an induced copy of `pattern` inside `host`.
///
/// Returns `phi` with `phi[p]` the host vertex playing pattern vertex `p`.
/// Candidates are tried in ascending id order, so the first injection found
/// is deterministic.
pub fn find_induced_copy(pattern: &Graph, host: &Graph) -> Option<Vec<usize>> {
    let np = pattern.n();
    if np > host.n() {
        return None;
    }
    if np == 0 {
        return Some(Vec::new());
    }
    let order = search_order(pattern);
    let mut pos = vec![0; np];
    for (i, &p) in order.iter().enumerate() {
        pos[p] = i;
    }
    // anchor[i]: an earlier pattern vertex adjacent to order[i], if any.
    let anchor: Vec<Option<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            pattern
                .neighbors(p)
                .iter()
                .copied()
                .filter(|&q| pos[q] < i)
                .min_by_key(|&q| pos[q])
        })
        .collect();

    let mut search = CopySearch {
        pattern,
        host,
        order: &order,
        pos: &pos,
        anchor: &anchor,
        map: vec![usize::MAX; np],
        used: vec![false; host.n()],
        open: vec![0; np],
    };
    for p in 0..np {
        search.open[p] = pattern.degree(p);
    }
    if search.extend(0) {
        Some(search.map)
    } else {
        None
    }
}

fn search_order(pattern: &Graph) -> Vec<usize> {
    let np = pattern.n();
    let mut placed = vec![false; np];
    let mut links = vec![0usize; np];
    let mut order = Vec::with_capacity(np);
    while order.len() < np {
        let next = (0..np)
            .filter(|&p| !placed[p])
            .max_by(|&a, &b| {
                (links[a], pattern.degree(a), std::cmp::Reverse(a)).cmp(&(
                    links[b],
                    pattern.degree(b),
                    std::cmp::Reverse(b),
                ))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
        for &w in pattern.neighbors(next) {
            links[w] += 1;
        }
    }
    order
}

struct CopySearch<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    order: &'a [usize],
    pos: &'a [usize],
    anchor: &'a [Option<usize>],
    map: Vec<usize>,
    used: Vec<bool>,
    /// Pattern neighbors of each vertex that are not yet mapped.
    open: Vec<usize>,
}

impl CopySearch<'_> {
    fn extend(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let p = self.order[i];
        let candidates: Vec<usize> = match self.anchor[i] {
            Some(q) => self.host.neighbors(self.map[q]).to_vec(),
            None => (0..self.host.n()).collect(),
        };
        for h in candidates {
            if self.used[h] || self.host.degree(h) < self.pattern.degree(p) {
                continue;
            }
            if !self.consistent(i, p, h) {
                continue;
            }
            self.assign(p, h);
            if self.capacity_ok(p) && self.extend(i + 1) {
                return true;
            }
            self.unassign(p, h);
        }
        false
    }

    fn consistent(&self, i: usize, p: usize, h: usize) -> bool {
        self.order[..i]
            .iter()
            .all(|&r| self.pattern.has_edge(p, r) == self.host.has_edge(h, self.map[r]))
    }

    /// Every mapped neighbor of `p` must still have enough free host neighbors
    /// for its unmapped pattern neighbors.
    fn capacity_ok(&self, p: usize) -> bool {
        let check = |q: usize| {
            let free = self
                .host
                .neighbors(self.map[q])
                .iter()
                .filter(|&&h| !self.used[h])
                .count();
            free >= self.open[q]
        };
        check(p)
            && self
                .pattern
                .neighbors(p)
                .iter()
                .filter(|&&q| self.pos[q] < self.pos[p])
                .all(|&q| check(q))
    }

    fn assign(&mut self, p: usize, h: usize) {
        self.map[p] = h;
        self.used[h] = true;
        for &q in self.pattern.neighbors(p) {
            self.open[q] -= 1;
        }
    }

    fn unassign(&mut self, p: usize, h: usize) {
        self.map[p] = usize::MAX;
        self.used[h] = false;
        for &q in self.pattern.neighbors(p) {
            self.open[q] += 1;
        }
    }
}
