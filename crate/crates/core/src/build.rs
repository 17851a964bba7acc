//! Grid representations of accepted block graphs.
//!
//! Building has two phases. The plan walks the BFS order: the first block
//! gets a layout, then every cutpoint in turn distributes its child blocks
//! over the free ends of its own path, heavy blocks last. The drawing then
//! lays the plan out bottom-up with local coordinates: each block is drawn
//! around its own center, and the blocks hanging from one end of a path are
//! placed side by side along that end.
//!
//! A block layout puts every cutpoint on the horizontal or vertical line
//! through the block center. On each line there is either one path that
//! crosses the center (free in both directions) or up to two paths that end
//! at the center (free in one direction each). Vertices that are not
//! cutpoints are single points at the center.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::grid::{compact, paths_intersect, GridPath, GridRepresentation, Rect};
use crate::recognize::{qualifying_blocks, Analysis, Label};

/// Paths of a block on one line through its center.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Group {
    Empty,
    /// One path through the center.
    Through(usize),
    /// Paths ending at the center, toward the positive and negative side.
    Pair {
        pos: Option<usize>,
        neg: Option<usize>,
    },
}

impl Group {
    fn from_paths(paths: &[usize]) -> Result<Group> {
        match *paths {
            [] => Ok(Group::Empty),
            [c] => Ok(Group::Through(c)),
            [a, b] => Ok(Group::Pair {
                pos: Some(a),
                neg: Some(b),
            }),
            _ => Err(internal(format!("{} paths on one line", paths.len()))),
        }
    }

    /// `(vertex, side)` for every free end on this line; side 0 is positive.
    fn arms(&self) -> Vec<(usize, usize)> {
        match *self {
            Group::Empty => vec![],
            Group::Through(c) => vec![(c, 0), (c, 1)],
            Group::Pair { pos, neg } => pos
                .map(|c| (c, 0))
                .into_iter()
                .chain(neg.map(|c| (c, 1)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone)]
struct BlockPlan {
    parent: Option<usize>,
    heavy: bool,
    horizontal: Group,
    vertical: Group,
}

/// Child blocks of a cutpoint per free end; `None` when that end is not free.
#[derive(Debug, Clone, Default)]
struct CutPlan {
    sides: [Option<Vec<usize>>; 2],
    attached: bool,
}

fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

/// Plan state during the walk over the BFS order.
#[derive(Debug, Clone)]
pub struct BuildContext<'a> {
    analysis: &'a Analysis,
    blocks: Vec<Option<BlockPlan>>,
    cuts: Vec<Option<CutPlan>>,
    next_cut: usize,
}

impl<'a> BuildContext<'a> {
    /// Lays out the first block of the order.
    pub fn represent_first_block(analysis: &'a Analysis) -> Result<Self> {
        if analysis.violation.is_some() {
            return Err(Error::Precondition(
                "graph fails a structural condition".into(),
            ));
        }
        let d = &analysis.decomposition;
        let mut ctx = BuildContext {
            analysis,
            blocks: vec![None; d.block_count()],
            cuts: vec![None; d.vertex_count()],
            next_cut: 0,
        };
        let root = analysis.order.root();
        let cps = analysis.order.child_cutpoints(d, root);
        let (bs, as_): (Vec<usize>, Vec<usize>) =
            cps.iter().partition(|&&c| analysis.labels.is_b(c));
        let (horizontal, vertical) = match (bs.len(), as_.len()) {
            (0, 0) => (Group::Empty, Group::Empty),
            (_, _) if cps.len() <= 2 => (
                Group::Through(cps[0]),
                cps.get(1).map_or(Group::Empty, |&c| Group::Through(c)),
            ),
            (0, 3) => (Group::from_paths(&as_[1..])?, Group::Through(as_[0])),
            (1, 2) => (Group::from_paths(&as_)?, Group::Through(bs[0])),
            (0, 4) => (Group::from_paths(&as_[..2])?, Group::from_paths(&as_[2..])?),
            _ => {
                return Err(internal(format!(
                    "first block with labels {:?}",
                    analysis.labels.multiset(d, root)
                )))
            }
        };
        ctx.set_block(
            root,
            BlockPlan {
                parent: None,
                heavy: false,
                horizontal,
                vertical,
            },
        );
        Ok(ctx)
    }

    fn set_block(&mut self, b: usize, plan: BlockPlan) {
        for group in [plan.horizontal, plan.vertical] {
            for (c, side) in group.arms() {
                if Some(c) == plan.parent {
                    continue;
                }
                let cp = self.cuts[c].get_or_insert_with(CutPlan::default);
                cp.sides[side] = Some(Vec::new());
            }
        }
        self.blocks[b] = Some(plan);
    }

    /// Next cutpoint whose child blocks are still to be attached.
    pub fn pending(&self) -> Option<usize> {
        self.analysis.order.cutpoints().get(self.next_cut).copied()
    }

    /// Attaches every child block of `v` to the free ends of `v`'s path.
    pub fn attach_blocks(&mut self, v: usize) -> Result<()> {
        let a = self.analysis;
        let d = &a.decomposition;
        let children = a.order.child_blocks(d, v);
        let heavy = qualifying_blocks(d, &a.order, &a.labels, v);
        let plan = self.cuts[v]
            .clone()
            .ok_or_else(|| internal(format!("cutpoint {v} attached before being placed")))?;
        if plan.attached {
            return Err(internal(format!("cutpoint {v} attached twice")));
        }
        let free: Vec<usize> = (0..2).filter(|&s| plan.sides[s].is_some()).collect();
        if heavy.len() > free.len() {
            return Err(internal(format!(
                "cutpoint {v} has {} heavy blocks and {} free ends",
                heavy.len(),
                free.len()
            )));
        }
        let mut sides: [Vec<usize>; 2] = Default::default();
        let first = free[0];
        sides[first].extend(children.iter().filter(|b| !heavy.contains(b)));
        match heavy[..] {
            [] => {}
            [h] => sides[first].push(h),
            [h1, h2] => {
                sides[first].push(h1);
                sides[free[1]].push(h2);
            }
            _ => unreachable!(),
        }
        for &k in &children {
            let is_heavy = heavy.contains(&k);
            let others = a.order.child_cutpoints(d, k);
            let (horizontal, rest) = if is_heavy {
                let e = others
                    .iter()
                    .copied()
                    .find(|&c| !a.labels.is_b(c))
                    .ok_or_else(|| internal(format!("heavy block {k} has no A cutpoint")))?;
                let rest: Vec<usize> = others.iter().copied().filter(|&c| c != e).collect();
                (
                    Group::Pair {
                        pos: Some(e),
                        neg: Some(v),
                    },
                    rest,
                )
            } else {
                (Group::Through(v), others)
            };
            if rest.len() == 2 && rest.iter().any(|&c| a.labels.is_b(c)) {
                return Err(internal(format!("block {k} needs too many free ends")));
            }
            let vertical = Group::from_paths(&rest)?;
            self.set_block(
                k,
                BlockPlan {
                    parent: Some(v),
                    heavy: is_heavy,
                    horizontal,
                    vertical,
                },
            );
        }
        let cp = self.cuts[v].as_mut().expect("checked above");
        for (slot, children) in cp.sides.iter_mut().zip(sides.iter_mut()) {
            if let Some(list) = slot.as_mut() {
                *list = std::mem::take(children);
            }
        }
        cp.attached = true;
        if self.pending() == Some(v) {
            self.next_cut += 1;
        }
        Ok(())
    }

    /// Attaches the next pending cutpoint; `false` when none is left.
    pub fn step(&mut self) -> Result<bool> {
        match self.pending() {
            Some(v) => self.attach_blocks(v).map(|_| true),
            None => Ok(false),
        }
    }

    /// Vertices in blocks laid out so far, ascending.
    pub fn placed(&self) -> VertexSet {
        let d = &self.analysis.decomposition;
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_some())
            .flat_map(|(b, _)| d.block(b).iter().copied())
            .collect()
    }

    /// Draws the current plan. Paths are indexed like `placed()`.
    pub fn realize(&self) -> GridRepresentation {
        let d = &self.analysis.decomposition;
        let placed = self.placed();
        if d.block_count() == 1 {
            let n = d.vertex_count();
            let hi = i64::from(n > 1);
            return GridRepresentation::new(
                (0..n).map(|v| GridPath::horizontal(v, 0, 0, hi)).collect(),
            );
        }
        let drawing = self.draw_block(self.analysis.order.root());
        let mut rects: Vec<Option<Rect>> = vec![None; d.vertex_count()];
        for (v, r) in drawing.segs {
            let slot = &mut rects[v];
            *slot = Some(match *slot {
                None => r,
                Some(old) => union(old, r),
            });
        }
        let paths = placed
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let r = rects[v].unwrap_or_else(|| panic!("vertex {v} not drawn"));
                to_path(i, r)
            })
            .collect();
        GridRepresentation::new(paths)
    }

    /// Attaches all remaining cutpoints and returns the compacted drawing.
    pub fn finalize(mut self) -> Result<GridRepresentation> {
        while self.step()? {}
        Ok(compact(&self.realize()))
    }

    fn draw_block(&self, b: usize) -> Drawing {
        let d = &self.analysis.decomposition;
        let plan = self.blocks[b].as_ref().expect("block planned");
        let mut out = Drawing::default();
        for &v in d.block(b) {
            if !d.is_cutpoint(v) {
                out.push(v, Rect::point(0, 0));
            }
        }
        // Free ends: (vertex, direction, side); directions E, W, N, S.
        let mut arms = Vec::new();
        for (group, dirs) in [
            (plan.horizontal, [Dir::E, Dir::W]),
            (plan.vertical, [Dir::N, Dir::S]),
        ] {
            for (c, side) in group.arms() {
                if Some(c) != plan.parent {
                    arms.push((c, dirs[side], side));
                }
            }
        }
        let hangs: Vec<(usize, Dir, Hang)> = arms
            .into_iter()
            .map(|(c, dir, side)| (c, dir, self.draw_hang(c, side)))
            .collect();
        let spread = |dirs: [Dir; 2]| {
            hangs
                .iter()
                .filter(|(_, dir, _)| dirs.contains(dir))
                .map(|(_, _, h)| h.spread())
                .max()
                .unwrap_or(0)
        };
        let offset_ew = spread([Dir::N, Dir::S]);
        let offset_ns = spread([Dir::E, Dir::W]);
        for (c, dir, hang) in hangs {
            let a = if matches!(dir, Dir::E | Dir::W) {
                offset_ew
            } else {
                offset_ns
            };
            out.push(c, dir.ray(a + hang.ray_end));
            for (v, r) in hang.drawing.segs {
                out.push(v, dir.place(a, r));
            }
        }
        out
    }

    fn draw_hang(&self, c: usize, side: usize) -> Hang {
        let cp = self.cuts[c].as_ref().expect("cutpoint placed");
        let children = cp.sides[side].as_deref().unwrap_or(&[]);
        let mut drawing = Drawing::default();
        let mut end = 0;
        let mut ray_end = 1;
        for &k in children {
            let child = self.draw_block(k);
            let (left, right) = child
                .bounds()
                .map_or((0, 0), |r| ((-r.x0).max(0), r.x1.max(0)));
            let center = end + 1 + left;
            end = center + right;
            for (v, r) in child.segs {
                drawing.push(v, r.translate(center, 0));
            }
            let heavy = self.blocks[k].as_ref().is_some_and(|p| p.heavy);
            ray_end = if heavy { center } else { center + 1 };
        }
        Hang { drawing, ray_end }
    }

    /// Checks the plan so far: the drawing represents the graph induced by
    /// the placed vertices; every placed cutpoint is the unique extreme path
    /// of its parent block in at least one direction, in two opposite
    /// directions when labeled B; and the free ends of cutpoints not yet
    /// attached meet no other path.
    pub fn check_invariants(&self, g: &Graph) -> Vec<String> {
        let a = self.analysis;
        let d = &a.decomposition;
        let placed = self.placed();
        let rep = self.realize();
        let mut problems = Vec::new();
        let sub = match g.induced_subgraph(&placed) {
            Ok(s) => s,
            Err(e) => return vec![e.to_string()],
        };
        for (i, p) in rep.paths.iter().enumerate() {
            for (j, q) in rep.paths.iter().enumerate().skip(i + 1) {
                if paths_intersect(p, q) != sub.graph.has_edge(i, j) {
                    problems.push(format!(
                        "vertices {} and {} disagree",
                        sub.original[i], sub.original[j]
                    ));
                }
            }
        }
        let index = |v: usize| placed.as_slice().binary_search(&v).expect("placed");
        for &c in placed.iter().filter(|&&c| d.is_cutpoint(c)) {
            let Some(h) = a.order.hc(c) else { continue };
            let members: Vec<GridPath> = d.block(h).iter().map(|&v| rep.paths[index(v)]).collect();
            let me = rep.paths[index(c)];
            let dirs: Vec<Dir> = Dir::ALL
                .into_iter()
                .filter(|dir| unique_extreme(&members, *dir) == Some(index(c)))
                .collect();
            let wanted_pairs = a.labels.get(c) == Some(Label::B);
            let ok = if wanted_pairs {
                (dirs.contains(&Dir::E) && dirs.contains(&Dir::W))
                    || (dirs.contains(&Dir::N) && dirs.contains(&Dir::S))
            } else {
                !dirs.is_empty()
            };
            if !ok {
                problems.push(format!("cutpoint {c} is not extreme in block {h}"));
            }
            let cp = self.cuts[c].as_ref().expect("placed cutpoint has a plan");
            if cp.attached {
                continue;
            }
            for dir in dirs {
                let free = free_part(&me, &members, dir);
                if let Some(seg) = free {
                    for (i, p) in rep.paths.iter().enumerate() {
                        if i != index(c) && paths_intersect(p, &seg) {
                            problems.push(format!(
                                "free end of {c} meets vertex {}",
                                placed.as_slice()[i]
                            ));
                        }
                    }
                }
            }
        }
        problems
    }
}

/// Builds the representation of an accepted connected block graph.
pub fn build_representation(analysis: &Analysis) -> Result<GridRepresentation> {
    BuildContext::represent_first_block(analysis)?.finalize()
}

#[derive(Debug, Default)]
struct Drawing {
    segs: Vec<(usize, Rect)>,
}

impl Drawing {
    fn push(&mut self, v: usize, r: Rect) {
        self.segs.push((v, r));
    }

    fn bounds(&self) -> Option<Rect> {
        self.segs.iter().map(|s| s.1).reduce(union)
    }
}

struct Hang {
    drawing: Drawing,
    ray_end: i64,
}

impl Hang {
    /// Largest distance of the drawing from the ray's line.
    fn spread(&self) -> i64 {
        self.drawing.bounds().map_or(0, |r| r.y1.max(-r.y0).max(0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    E,
    W,
    N,
    S,
}

impl Dir {
    const ALL: [Dir; 4] = [Dir::E, Dir::W, Dir::N, Dir::S];

    /// Segment from the origin to distance `len` in this direction.
    fn ray(self, len: i64) -> Rect {
        Rect::point(0, 0).union_point(self.map(0, len))
    }

    fn map(self, a: i64, x: i64) -> (i64, i64) {
        self.transform(a, x, 0)
    }

    /// Moves a point of a hang (ray along +x) to this side of a block
    /// center at distance `a`.
    fn transform(self, a: i64, x: i64, y: i64) -> (i64, i64) {
        match self {
            Dir::E => (a + x, y),
            Dir::W => (-a - x, -y),
            Dir::N => (-y, a + x),
            Dir::S => (y, -a - x),
        }
    }

    fn place(self, a: i64, r: Rect) -> Rect {
        let p = self.transform(a, r.x0, r.y0);
        Rect::point(p.0, p.1).union_point(self.transform(a, r.x1, r.y1))
    }
}

impl Rect {
    fn point(x: i64, y: i64) -> Rect {
        Rect {
            x0: x,
            x1: x,
            y0: y,
            y1: y,
        }
    }

    fn union_point(self, (x, y): (i64, i64)) -> Rect {
        union(self, Rect::point(x, y))
    }

    fn translate(self, dx: i64, dy: i64) -> Rect {
        Rect {
            x0: self.x0 + dx,
            x1: self.x1 + dx,
            y0: self.y0 + dy,
            y1: self.y1 + dy,
        }
    }
}

fn union(a: Rect, b: Rect) -> Rect {
    Rect {
        x0: a.x0.min(b.x0),
        x1: a.x1.max(b.x1),
        y0: a.y0.min(b.y0),
        y1: a.y1.max(b.y1),
    }
}

fn to_path(vertex: usize, r: Rect) -> GridPath {
    if r.y0 == r.y1 {
        GridPath::horizontal(vertex, r.y0, r.x0, r.x1)
    } else {
        assert_eq!(r.x0, r.x1, "vertex {vertex} drawn off a line");
        GridPath::vertical(vertex, r.x0, r.y0, r.y1)
    }
}

/// Coordinate of a path's end in a direction (larger is farther).
fn reach(p: &GridPath, dir: Dir) -> i64 {
    let r = p.rect();
    match dir {
        Dir::E => r.x1,
        Dir::W => -r.x0,
        Dir::N => r.y1,
        Dir::S => -r.y0,
    }
}

fn unique_extreme(paths: &[GridPath], dir: Dir) -> Option<usize> {
    let best = paths.iter().map(|p| reach(p, dir)).max()?;
    let mut hits = paths.iter().filter(|p| reach(p, dir) == best);
    let first = hits.next()?;
    hits.next().is_none().then_some(first.vertex)
}

/// Part of `me` beyond every other member in direction `dir`.
fn free_part(me: &GridPath, members: &[GridPath], dir: Dir) -> Option<GridPath> {
    let others = members
        .iter()
        .filter(|p| p.vertex != me.vertex)
        .map(|p| reach(p, dir))
        .max()?;
    let mine = reach(me, dir);
    if mine <= others {
        return None;
    }
    let (from, to) = (others + 1, mine);
    let mut p = *me;
    match dir {
        Dir::E | Dir::N => {
            p.lo = from;
            p.hi = to;
        }
        Dir::W | Dir::S => {
            p.lo = -to;
            p.hi = -from;
        }
    }
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::thin_spider;

    fn build(g: &Graph) -> GridRepresentation {
        let a = Analysis::new(g, 0, None).unwrap();
        build_representation(&a).unwrap()
    }

    fn agrees(g: &Graph, rep: &GridRepresentation) -> bool {
        (0..g.n()).all(|u| {
            (0..g.n())
                .filter(|&v| v != u)
                .all(|v| paths_intersect(&rep.paths[u], &rep.paths[v]) == g.has_edge(u, v))
        })
    }

    #[test]
    fn single_vertex_and_edge() {
        assert_eq!(build(&Graph::new(1)).paths, vec![GridPath::point(0, 0, 0)]);
        let rep = build(&Graph::complete(2));
        assert_eq!(
            rep.paths,
            vec![
                GridPath::horizontal(0, 0, 0, 1),
                GridPath::horizontal(1, 0, 0, 1)
            ]
        );
    }

    #[test]
    fn small_graphs_verify() {
        let graphs = [
            Graph::complete(4),
            Graph::star(6),
            Graph::path(6),
            thin_spider(4).unwrap(),
            Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap(),
        ];
        for g in &graphs {
            assert!(agrees(g, &build(g)), "{g:?}");
        }
    }

    #[test]
    fn two_heavy_blocks() {
        // Two K4 sharing vertex 0, with a pendant on each other K4 vertex.
        let mut g = Graph::new(7);
        for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            g.add_edge(a, b).unwrap();
        }
        for (a, b) in [(0, 4), (0, 5), (0, 6), (4, 5), (4, 6), (5, 6)] {
            g.add_edge(a, b).unwrap();
        }
        for v in [1, 2, 3, 4, 5, 6, 0] {
            let p = g.add_vertex();
            g.add_edge(v, p).unwrap();
        }
        // Vertex 0 is B only when both K4 lie below it.
        let d = crate::blocks::decompose(&g).unwrap();
        let pendant = d.blocks_of(13)[0];
        let a = Analysis::from_decomposition(d, pendant, None).unwrap();
        assert_eq!(a.labels.get(0), Some(Label::B));
        let mut ctx = BuildContext::represent_first_block(&a).unwrap();
        assert!(ctx.check_invariants(&g).is_empty());
        while ctx.step().unwrap() {
            let problems = ctx.check_invariants(&g);
            assert!(problems.is_empty(), "{problems:?}");
        }
        let rep = ctx.finalize().unwrap();
        assert!(agrees(&g, &rep));
    }

    #[test]
    fn rejected_graphs_are_refused() {
        let a = Analysis::new(&thin_spider(5).unwrap(), 0, None).unwrap();
        assert!(matches!(
            BuildContext::represent_first_block(&a),
            Err(Error::Precondition(_))
        ));
    }
}
