//! Exhaustive search for a grid representation of a small graph.
//!
//! Whether two axis-parallel paths meet depends only on how their
//! coordinates compare on each axis, never on the values themselves. The
//! search therefore places paths one at a time and keeps the coordinates in
//! use on each axis rank-compressed to multiples of 3: `0, 3, 6, ...`. A new
//! coordinate is either equal to one in use or falls strictly inside one of
//! the gaps, including the two unbounded ones, so the values `3i` and `3i+1`
//! (for `i` from `-1` to the number of values in use) cover every
//! possibility for one new coordinate; `3i+2` is added so both ends of a new
//! span can fall in the same gap. Every order type of every representation
//! is reachable this way, so exhausting the search proves that none exists.
//!
//! After compaction each axis holds at most `2h + v <= 2n` values (`h`
//! horizontal and `v` vertical paths, each horizontal path contributing two
//! column values and each vertical one one column value), which is the
//! `[0, 2n)` coordinate box of the search space.
//!
//! Symmetry: transposing a representation swaps horizontal and vertical and
//! preserves all intersections, so the first path placed is horizontal.
//!
//! Pruning: when one path lies inside another, every path meeting the inner
//! one meets the outer one too, so the inner vertex's closed neighborhood
//! must be contained in the outer vertex's. Candidates breaking this are
//! skipped before recursing.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::grid::{compact, paths_intersect, GridPath, GridRepresentation, Orientation};

/// Largest graph the oracle accepts.
pub const ORACLE_CAP: usize = 7;

/// A representation of `g` if one exists. Refuses graphs above
/// [`ORACLE_CAP`] vertices.
pub fn brute_force_b0vpg(g: &Graph) -> Result<Option<GridRepresentation>> {
    if g.n() > ORACLE_CAP {
        return Err(Error::TooLarge {
            n: g.n(),
            cap: ORACLE_CAP,
        });
    }
    if g.n() == 0 {
        return Ok(Some(GridRepresentation::default()));
    }
    let order = search_order(g);
    let mut placed = Vec::with_capacity(g.n());
    if !extend(g, &order, &mut placed) {
        return Ok(None);
    }
    let mut paths = placed;
    paths.sort_by_key(|p: &GridPath| p.vertex);
    Ok(Some(compact(&GridRepresentation::new(paths))))
}

/// Highest degree first, then repeatedly the vertex with most placed
/// neighbors (ties: higher degree, lower id).
fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut done = vec![false; n];
    let mut placed_nbrs = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by_key(|&v| (placed_nbrs[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("vertex left");
        done[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            placed_nbrs[w] += 1;
        }
    }
    order
}

fn extend(g: &Graph, order: &[usize], placed: &mut Vec<GridPath>) -> bool {
    let Some(&v) = order.get(placed.len()) else {
        return true;
    };
    let (xs, ys) = axis_counts(placed);
    let orientations: &[Orientation] = if placed.is_empty() {
        &[Orientation::Horizontal]
    } else {
        &[Orientation::Horizontal, Orientation::Vertical]
    };
    for &orientation in orientations {
        let (line_count, span_count) = match orientation {
            Orientation::Horizontal => (ys, xs),
            Orientation::Vertical => (xs, ys),
        };
        for line in slots(line_count) {
            for (lo, hi) in spans(span_count) {
                let cand = GridPath {
                    vertex: v,
                    orientation,
                    line,
                    lo,
                    hi,
                };
                let consistent = placed.iter().all(|q| {
                    paths_intersect(&cand, q) == g.has_edge(v, q.vertex)
                        && nesting_allowed(g, &cand, q)
                        && nesting_allowed(g, q, &cand)
                });
                if !consistent {
                    continue;
                }
                let saved = placed.clone();
                placed.push(cand);
                normalize(placed);
                if extend(g, order, placed) {
                    return true;
                }
                *placed = saved;
            }
        }
    }
    false
}

/// False when `inner` lies inside `outer` although some neighbor of
/// `inner` is neither `outer` nor adjacent to it.
fn nesting_allowed(g: &Graph, inner: &GridPath, outer: &GridPath) -> bool {
    let (a, b) = (inner.rect(), outer.rect());
    let nested = b.x0 <= a.x0 && a.x1 <= b.x1 && b.y0 <= a.y0 && a.y1 <= b.y1;
    !nested
        || g.neighbors(inner.vertex)
            .iter()
            .all(|&w| w == outer.vertex || g.has_edge(w, outer.vertex))
}

/// Number of distinct column and row values in use.
fn axis_counts(placed: &[GridPath]) -> (i64, i64) {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for p in placed {
        let r = p.rect();
        xs.extend([r.x0, r.x1]);
        ys.extend([r.y0, r.y1]);
    }
    for v in [&mut xs, &mut ys] {
        v.sort_unstable();
        v.dedup();
    }
    (xs.len() as i64, ys.len() as i64)
}

/// Values in use plus one fresh value per gap, ascending.
fn slots(used: i64) -> Vec<i64> {
    let mut out = vec![-2];
    for i in 0..used {
        out.push(3 * i);
        out.push(3 * i + 1);
    }
    out
}

/// Candidate spans, ascending by `lo` then `hi`.
fn spans(used: i64) -> Vec<(i64, i64)> {
    let s = slots(used);
    let mut out = Vec::new();
    for (i, &lo) in s.iter().enumerate() {
        for &hi in &s[i..] {
            out.push((lo, hi));
        }
        if lo % 3 != 0 {
            out.push((lo, lo + 1));
        }
    }
    out.sort_unstable();
    out
}

/// Rank-compresses each axis to multiples of 3.
fn normalize(placed: &mut [GridPath]) {
    let rep = compact(&GridRepresentation {
        paths: placed.to_vec(),
    });
    for (p, c) in placed.iter_mut().zip(rep.paths) {
        *p = GridPath {
            line: 3 * c.line,
            lo: 3 * c.lo,
            hi: 3 * c.hi,
            ..c
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn agrees(g: &Graph, rep: &GridRepresentation) -> bool {
        (0..g.n()).all(|u| {
            (u + 1..g.n())
                .all(|v| paths_intersect(&rep.paths[u], &rep.paths[v]) == g.has_edge(u, v))
        })
    }

    #[test]
    fn fresh_slots_cover_every_gap() {
        assert_eq!(slots(0), vec![-2]);
        assert_eq!(slots(2), vec![-2, 0, 1, 3, 4]);
        let sp = spans(1);
        assert!(sp.contains(&(-2, -1)));
        assert!(sp.contains(&(1, 2)));
        assert!(sp.contains(&(-2, 1)));
    }

    #[test]
    fn cliques_and_paths() {
        for g in [
            Graph::complete(3),
            Graph::complete(7),
            Graph::path(5),
            Graph::star(6),
        ] {
            let rep = brute_force_b0vpg(&g).unwrap().unwrap();
            assert!(agrees(&g, &rep));
        }
    }

    #[test]
    fn four_cycle_is_a_rectangle() {
        let g = Graph::cycle(4);
        let rep = brute_force_b0vpg(&g).unwrap().unwrap();
        assert!(agrees(&g, &rep));
    }

    #[test]
    fn five_cycle() {
        // Two collinear overlapping paths close an odd rectilinear cycle.
        let g = Graph::cycle(5);
        assert!(agrees(&g, &brute_force_b0vpg(&g).unwrap().unwrap()));
    }

    #[test]
    fn longer_cycles() {
        for n in [6, 7] {
            let g = Graph::cycle(n);
            assert!(agrees(&g, &brute_force_b0vpg(&g).unwrap().unwrap()));
        }
    }

    #[test]
    fn nested_paths_need_nested_neighborhoods() {
        // 0 - 1 - 2: path 1 may not sit inside path 0, since 2 would then
        // meet 0 as well; path 0 may sit inside path 1.
        let g = Graph::path(3);
        let long = GridPath::horizontal(0, 0, 0, 4);
        let short = GridPath::point(1, 2, 0);
        assert!(!nesting_allowed(&g, &short, &long));
        let long = GridPath { vertex: 1, ..long };
        let short = GridPath { vertex: 0, ..short };
        assert!(nesting_allowed(&g, &short, &long));
        assert!(nesting_allowed(&g, &GridPath::point(2, 9, 9), &long));
    }

    #[test]
    fn wheel_on_four_cycle_has_none() {
        let mut g = Graph::cycle(4);
        let hub = g.add_vertex();
        for v in 0..4 {
            g.add_edge(hub, v).unwrap();
        }
        assert_eq!(brute_force_b0vpg(&g).unwrap(), None);
    }

    #[test]
    fn size_cap() {
        assert_eq!(
            brute_force_b0vpg(&Graph::path(8)),
            Err(Error::TooLarge { n: 8, cap: 7 })
        );
    }
}
