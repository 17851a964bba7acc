//! Independent checks of representations and of forbidden subgraphs.

use crate::blocks::{decompose, BlockDecomposition};
use crate::error::{Error, Result};
use crate::family::enumerate_family;
use crate::graph::{find_induced_copy, Graph, VertexSet};
use crate::grid::{paths_intersect, CliqueRepKind, GridPath, GridRepresentation, Orientation};

pub use crate::oracle::{brute_force_b0vpg, ORACLE_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MismatchKind {
    /// Adjacent vertices whose paths are disjoint.
    Disjoint,
    /// Nonadjacent vertices whose paths meet.
    Intersecting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch {
    pub u: usize,
    pub v: usize,
    pub kind: MismatchKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma {
    /// The paths of a clique share a grid point.
    CommonPoint,
    /// A block with three or four cutpoints is a cross clique.
    Cross,
    /// Each such cutpoint is the unique farthest path in its own direction.
    Cardinal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaFailure {
    pub clique: VertexSet,
    pub lemma: Lemma,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub mismatches: Vec<Mismatch>,
    pub lemma_failures: Vec<LemmaFailure>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.lemma_failures.is_empty()
    }
}

fn check_sizes(g: &Graph, rep: &GridRepresentation) -> Result<()> {
    if rep.len() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "{} paths for {} vertices",
            rep.len(),
            g.n()
        )));
    }
    if let Some((i, p)) = rep
        .paths
        .iter()
        .enumerate()
        .find(|(i, p)| p.vertex != *i || p.lo > p.hi)
    {
        return Err(Error::InvalidArgument(format!(
            "path at index {i} is malformed: {p:?}"
        )));
    }
    Ok(())
}

/// Compares intersection with adjacency over all pairs.
pub fn verify_representation(g: &Graph, rep: &GridRepresentation) -> Result<VerificationReport> {
    check_sizes(g, rep)?;
    let mut report = VerificationReport::default();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let meet = paths_intersect(&rep.paths[u], &rep.paths[v]);
            let adj = g.has_edge(u, v);
            if meet != adj {
                report.mismatches.push(Mismatch {
                    u,
                    v,
                    kind: if adj {
                        MismatchKind::Disjoint
                    } else {
                        MismatchKind::Intersecting
                    },
                });
            }
        }
    }
    Ok(report)
}

/// Pairwise check plus the clique lemmas: every maximal clique has a common
/// point and classifies as a line or a cross, and every block graph
/// component passes [`check_cardinal_lemmas`].
pub fn verify_with_lemmas(g: &Graph, rep: &GridRepresentation) -> Result<VerificationReport> {
    let mut report = verify_representation(g, rep)?;
    if !report.mismatches.is_empty() {
        return Ok(report);
    }
    for clique in g.maximal_cliques() {
        if let Err(f) = classify_clique_rep(rep, &clique) {
            report.lemma_failures.push(f);
        }
    }
    for comp in g.connected_components() {
        let part = g.induced_subgraph(&comp)?;
        let d = decompose(&part.graph)?;
        if d.non_clique_witness(&part.graph).is_some() {
            continue;
        }
        let sub = GridRepresentation::new(
            part.original
                .iter()
                .enumerate()
                .map(|(i, &v)| GridPath {
                    vertex: i,
                    ..rep.paths[v]
                })
                .collect(),
        );
        for mut f in check_cardinal_lemmas(&part.graph, &d, &sub) {
            f.clique = f.clique.iter().map(|&v| part.original[v]).collect();
            report.lemma_failures.push(f);
        }
    }
    Ok(report)
}

/// Line or cross classification of a clique's paths.
///
/// Fails when the paths have no common point, or when paths of both
/// orientations share more than one point.
pub fn classify_clique_rep(
    rep: &GridRepresentation,
    clique: &VertexSet,
) -> std::result::Result<CliqueRepKind, LemmaFailure> {
    let failure = |lemma, detail: String| LemmaFailure {
        clique: clique.clone(),
        lemma,
        detail,
    };
    let rects: Vec<_> = clique.iter().map(|&v| rep.paths[v].rect()).collect();
    let Some(first) = rects.first() else {
        return Err(failure(Lemma::CommonPoint, "empty clique".into()));
    };
    let common = rects
        .iter()
        .try_fold(*first, |acc, r| acc.intersect(r))
        .ok_or_else(|| failure(Lemma::CommonPoint, "paths share no grid point".into()))?;
    if rects.iter().all(|r| r.y0 == r.y1 && r.y0 == first.y0) {
        return Ok(CliqueRepKind::Line {
            axis: Orientation::Horizontal,
            line: first.y0,
        });
    }
    if rects.iter().all(|r| r.x0 == r.x1 && r.x0 == first.x0) {
        return Ok(CliqueRepKind::Line {
            axis: Orientation::Vertical,
            line: first.x0,
        });
    }
    if !common.is_point() {
        return Err(failure(
            Lemma::CommonPoint,
            format!("cross with common set {common:?}"),
        ));
    }
    Ok(CliqueRepKind::Cross {
        center: (common.x0, common.y0),
    })
}

/// Distance of a path's end from `center` toward East, West, South (row
/// increasing) and North.
fn reaches(p: &GridPath, center: (i64, i64)) -> [i64; 4] {
    let r = p.rect();
    [
        r.x1 - center.0,
        center.0 - r.x0,
        r.y1 - center.1,
        center.1 - r.y0,
    ]
}

const DIRECTIONS: [&str; 4] = ["East", "West", "South", "North"];

/// Checks one block with three or four cutpoints: the block is a cross
/// clique and each cutpoint is the unique farthest path of the block in
/// some direction. Returns a description of the first problem.
pub fn check_block_cardinals(
    rep: &GridRepresentation,
    clique: &VertexSet,
    cutpoints: &[usize],
) -> Option<LemmaFailure> {
    let center = match classify_clique_rep(rep, clique) {
        Err(f) => return Some(f),
        Ok(CliqueRepKind::Line { axis, line }) => {
            return Some(LemmaFailure {
                clique: clique.clone(),
                lemma: Lemma::Cross,
                detail: format!(
                    "{} cutpoints on a line clique ({axis:?} {line})",
                    cutpoints.len()
                ),
            })
        }
        Ok(CliqueRepKind::Cross { center }) => center,
    };
    let reach: Vec<(usize, [i64; 4])> = clique
        .iter()
        .map(|&v| (v, reaches(&rep.paths[v], center)))
        .collect();
    let mut farthest = [None; 4];
    for (dir, slot) in farthest.iter_mut().enumerate() {
        let best = reach.iter().map(|(_, r)| r[dir]).max().unwrap_or(0);
        let hits: Vec<usize> = reach
            .iter()
            .filter(|(_, r)| r[dir] == best)
            .map(|(v, _)| *v)
            .collect();
        if best > 0 && hits.len() == 1 {
            *slot = Some(hits[0]);
        }
    }
    for &c in cutpoints {
        if !farthest.contains(&Some(c)) {
            let owners: Vec<String> = farthest
                .iter()
                .zip(DIRECTIONS)
                .map(|(f, name)| match f {
                    Some(v) => format!("{name}: {v}"),
                    None => format!("{name}: none"),
                })
                .collect();
            return Some(LemmaFailure {
                clique: clique.clone(),
                lemma: Lemma::Cardinal,
                detail: format!(
                    "cutpoint {c} is farthest in no direction ({})",
                    owners.join(", ")
                ),
            });
        }
    }
    None
}

/// Cardinal checks for every block with three or four cutpoints.
pub fn check_cardinal_lemmas(
    _g: &Graph,
    d: &BlockDecomposition,
    rep: &GridRepresentation,
) -> Vec<LemmaFailure> {
    (0..d.block_count())
        .filter(|&b| matches!(d.block_cutpoints(b).len(), 3 | 4))
        .filter_map(|b| check_block_cardinals(rep, d.block(b), d.block_cutpoints(b)))
        .collect()
}

/// Vertices of the first family member (by size, then canonical order)
/// found as an induced subgraph of `g`.
pub fn find_induced_f_member(g: &Graph) -> Option<VertexSet> {
    enumerate_family(g.n())
        .iter()
        .find_map(|m| find_induced_copy(&m.graph, g))
        .map(VertexSet::new)
}
