//! Horizontal and vertical grid paths and whole representations.
//!
//! Points are `(x, y)` = `(column, row)`. Rows grow downward when rendered,
//! so North is the direction of decreasing row index.

use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// An axis-parallel path: a row segment (`Horizontal`) or a column segment
/// (`Vertical`). `line` is the row or column index; `lo..=hi` is the span
/// along the other axis. A path with `lo == hi` is a single grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridPath {
    pub vertex: usize,
    pub orientation: Orientation,
    pub line: i64,
    pub lo: i64,
    pub hi: i64,
}

/// Closed box `[x0, x1] x [y0, y1]` of grid points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub x0: i64,
    pub x1: i64,
    pub y0: i64,
    pub y1: i64,
}

impl Rect {
    pub fn intersect(&self, other: &Rect) -> Option<Rect> {
        let r = Rect {
            x0: self.x0.max(other.x0),
            x1: self.x1.min(other.x1),
            y0: self.y0.max(other.y0),
            y1: self.y1.min(other.y1),
        };
        (r.x0 <= r.x1 && r.y0 <= r.y1).then_some(r)
    }

    pub fn is_point(&self) -> bool {
        self.x0 == self.x1 && self.y0 == self.y1
    }
}

impl GridPath {
    pub fn horizontal(vertex: usize, row: i64, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty span {lo}..{hi}");
        GridPath {
            vertex,
            orientation: Orientation::Horizontal,
            line: row,
            lo,
            hi,
        }
    }

    pub fn vertical(vertex: usize, column: i64, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty span {lo}..{hi}");
        GridPath {
            vertex,
            orientation: Orientation::Vertical,
            line: column,
            lo,
            hi,
        }
    }

    pub fn point(vertex: usize, x: i64, y: i64) -> Self {
        GridPath::horizontal(vertex, y, x, x)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// The set of grid points covered, as a degenerate box.
    pub fn rect(&self) -> Rect {
        match self.orientation {
            Orientation::Horizontal => Rect {
                x0: self.lo,
                x1: self.hi,
                y0: self.line,
                y1: self.line,
            },
            Orientation::Vertical => Rect {
                x0: self.line,
                x1: self.line,
                y0: self.lo,
                y1: self.hi,
            },
        }
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        let r = self.rect();
        (r.x0..=r.x1).contains(&x) && (r.y0..=r.y1).contains(&y)
    }
}

/// Whether two paths share at least one grid point.
pub fn paths_intersect(p: &GridPath, q: &GridPath) -> bool {
    p.rect().intersect(&q.rect()).is_some()
}

/// One path per vertex, `paths[v].vertex == v`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GridRepresentation {
    pub paths: Vec<GridPath>,
}

impl GridRepresentation {
    pub fn new(paths: Vec<GridPath>) -> Self {
        debug_assert!(paths.iter().enumerate().all(|(i, p)| p.vertex == i));
        GridRepresentation { paths }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn path(&self, v: usize) -> &GridPath {
        &self.paths[v]
    }

    /// Number of rows and columns needed to hold every path, counting from 0.
    pub fn extent(&self) -> (i64, i64) {
        let rows = self
            .paths
            .iter()
            .map(|p| p.rect().y1 + 1)
            .max()
            .unwrap_or(0);
        let cols = self
            .paths
            .iter()
            .map(|p| p.rect().x1 + 1)
            .max()
            .unwrap_or(0);
        (rows.max(0), cols.max(0))
    }

    /// Bounding box of all paths.
    pub fn bounds(&self) -> Option<Rect> {
        let mut it = self.paths.iter().map(GridPath::rect);
        let first = it.next()?;
        Some(it.fold(first, |a, r| Rect {
            x0: a.x0.min(r.x0),
            x1: a.x1.max(r.x1),
            y0: a.y0.min(r.y0),
            y1: a.y1.max(r.y1),
        }))
    }

    pub fn translate(&mut self, dx: i64, dy: i64) {
        for p in &mut self.paths {
            match p.orientation {
                Orientation::Horizontal => {
                    p.line += dy;
                    p.lo += dx;
                    p.hi += dx;
                }
                Orientation::Vertical => {
                    p.line += dx;
                    p.lo += dy;
                    p.hi += dy;
                }
            }
        }
    }

    /// Pairwise intersection matrix.
    pub fn intersection_matrix(&self) -> Vec<Vec<bool>> {
        self.paths
            .iter()
            .map(|p| self.paths.iter().map(|q| paths_intersect(p, q)).collect())
            .collect()
    }
}

/// Rank-compresses the used rows and the used columns independently to
/// `0..R` and `0..C`, preserving order.
pub fn compact(rep: &GridRepresentation) -> GridRepresentation {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for p in &rep.paths {
        let r = p.rect();
        xs.extend([r.x0, r.x1]);
        ys.extend([r.y0, r.y1]);
    }
    let rank = |mut v: Vec<i64>| -> BTreeMap<i64, i64> {
        v.sort_unstable();
        v.dedup();
        v.into_iter()
            .enumerate()
            .map(|(i, c)| (c, i as i64))
            .collect()
    };
    let (xr, yr) = (rank(xs), rank(ys));
    let paths = rep
        .paths
        .iter()
        .map(|p| match p.orientation {
            Orientation::Horizontal => GridPath {
                line: yr[&p.line],
                lo: xr[&p.lo],
                hi: xr[&p.hi],
                ..*p
            },
            Orientation::Vertical => GridPath {
                line: xr[&p.line],
                lo: yr[&p.lo],
                hi: yr[&p.hi],
                ..*p
            },
        })
        .collect();
    GridRepresentation { paths }
}

/// How a clique's paths meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueRepKind {
    /// All paths lie on one row (`Horizontal`) or one column (`Vertical`).
    Line { axis: Orientation, line: i64 },
    /// Paths of both orientations meeting in exactly one point.
    Cross { center: (i64, i64) },
}
