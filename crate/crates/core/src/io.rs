//! Text formats: graph files, representation and certificate JSON, ASCII
//! drawings. Vertex ids are 1-based in every external format.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::grid::{compact, GridPath, GridRepresentation, Orientation};
use crate::recognize::Recognition;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a graph file: a header `p <n> <m>` (a format word such as
/// `p edge <n> <m>` is also accepted), then `m` lines `e <u> <v>` with
/// 1-based ids. Lines starting with `c` and blank lines are ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = Graph::new(0);
    let mut edges = 0;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        let mut fields = line.split_ascii_whitespace();
        match fields.next() {
            None | Some("c") => continue,
            Some(tag) if tag.starts_with('c') && tag.len() > 1 => {
                return Err(parse_err(lineno, format!("unknown line type {tag:?}")))
            }
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(lineno, "second header line"));
                }
                let rest: Vec<&str> = fields.collect();
                let nums = match rest.as_slice() {
                    [n, m] => [*n, *m],
                    [word, n, m] if word.parse::<usize>().is_err() => [*n, *m],
                    _ => return Err(parse_err(lineno, "expected `p <n> <m>`")),
                };
                let n = number(nums[0], lineno)?;
                let m = number(nums[1], lineno)?;
                header = Some((n, m));
                g = Graph::new(n);
            }
            Some("e") => {
                let Some((n, m)) = header else {
                    return Err(parse_err(lineno, "edge before the `p` header"));
                };
                let rest: Vec<&str> = fields.collect();
                let [u, v] = rest.as_slice() else {
                    return Err(parse_err(lineno, "expected `e <u> <v>`"));
                };
                let (u, v) = (number(u, lineno)?, number(v, lineno)?);
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(parse_err(lineno, format!("vertex {x} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(parse_err(lineno, format!("self-loop on {u}")));
                }
                if !g
                    .add_edge(u - 1, v - 1)
                    .map_err(|e| parse_err(lineno, e.to_string()))?
                {
                    return Err(parse_err(lineno, format!("duplicate edge {u} {v}")));
                }
                edges += 1;
                if edges > m {
                    return Err(parse_err(
                        lineno,
                        format!("more than the {m} declared edges"),
                    ));
                }
            }
            Some(other) => return Err(parse_err(lineno, format!("unknown line type {other:?}"))),
        }
    }
    let Some((_, m)) = header else {
        return Err(parse_err(
            text.lines().count().max(1),
            "missing `p <n> <m>` header",
        ));
    };
    if edges != m {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("declared {m} edges, found {edges}"),
        ));
    }
    Ok(g)
}

fn number(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(line, format!("expected a non-negative integer, got {s:?}")))
}

/// Writes a graph file, edges sorted.
pub fn write_graph(g: &Graph, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "c {line}");
        }
    }
    let _ = writeln!(out, "p {} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridExtent {
    pub rows: u64,
    pub cols: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    H,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathEntry {
    pub v: u64,
    pub dir: Direction,
    pub line: u64,
    pub lo: u64,
    pub hi: u64,
}

/// JSON form of a representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationFile {
    pub grid: GridExtent,
    pub paths: Vec<PathEntry>,
}

impl RepresentationFile {
    /// Compacts `rep` and converts it.
    pub fn from_representation(rep: &GridRepresentation) -> Self {
        let rep = compact(rep);
        let (rows, cols) = rep.extent();
        let paths = rep
            .paths
            .iter()
            .map(|p| PathEntry {
                v: p.vertex as u64 + 1,
                dir: match p.orientation {
                    Orientation::Horizontal => Direction::H,
                    Orientation::Vertical => Direction::V,
                },
                line: p.line as u64,
                lo: p.lo as u64,
                hi: p.hi as u64,
            })
            .collect();
        RepresentationFile {
            grid: GridExtent {
                rows: rows as u64,
                cols: cols as u64,
            },
            paths,
        }
    }

    /// Validates the file and converts it to a representation of `n`
    /// vertices.
    pub fn to_representation(&self, n: usize) -> Result<GridRepresentation> {
        let bad = |msg: String| Error::InvalidArgument(msg);
        if self.paths.len() != n {
            return Err(bad(format!("{} paths for {n} vertices", self.paths.len())));
        }
        let mut slots: Vec<Option<GridPath>> = vec![None; n];
        for e in &self.paths {
            if e.v == 0 || e.v > n as u64 {
                return Err(bad(format!("path for vertex {} outside 1..={n}", e.v)));
            }
            if e.lo > e.hi {
                return Err(bad(format!("vertex {}: lo {} > hi {}", e.v, e.lo, e.hi)));
            }
            let (line_bound, span_bound, axis) = match e.dir {
                Direction::H => (self.grid.rows, self.grid.cols, "rows"),
                Direction::V => (self.grid.cols, self.grid.rows, "cols"),
            };
            if e.line >= line_bound || e.hi >= span_bound {
                return Err(bad(format!(
                    "vertex {}: path outside the {}x{} grid ({axis} bound)",
                    e.v, self.grid.rows, self.grid.cols
                )));
            }
            let v = (e.v - 1) as usize;
            if slots[v].is_some() {
                return Err(bad(format!("two paths for vertex {}", e.v)));
            }
            let (line, lo, hi) = (e.line as i64, e.lo as i64, e.hi as i64);
            slots[v] = Some(match e.dir {
                Direction::H => GridPath::horizontal(v, line, lo, hi),
                Direction::V => GridPath::vertical(v, line, lo, hi),
            });
        }
        Ok(GridRepresentation::new(
            slots.into_iter().map(|p| p.expect("counted")).collect(),
        ))
    }
}

pub fn parse_representation(text: &str) -> Result<RepresentationFile> {
    serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))
}

pub fn write_representation(rep: &GridRepresentation) -> String {
    let file = RepresentationFile::from_representation(rep);
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

/// JSON form of a recognition outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CertificateFile {
    Accept,
    Reject {
        family_k: usize,
        vertices: Vec<usize>,
    },
    NotBlockGraph {
        block: Vec<usize>,
        nonadjacent: [usize; 2],
    },
}

impl CertificateFile {
    pub fn from_recognition(r: &Recognition) -> Self {
        let one_based = |s: &VertexSet| s.iter().map(|&v| v + 1).collect();
        match r {
            Recognition::Accept(_) => CertificateFile::Accept,
            Recognition::Reject(c) => CertificateFile::Reject {
                family_k: c.k,
                vertices: one_based(&c.vertices),
            },
            Recognition::NotBlockGraph(w) => CertificateFile::NotBlockGraph {
                block: one_based(&w.members),
                nonadjacent: [w.pair.0 + 1, w.pair.1 + 1],
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Draws a representation: rows top to bottom, `-` and `|` for cells on
/// one horizontal or vertical path, `+` where paths cross or overlap, `.`
/// for empty cells, followed by a legend with one line per vertex.
pub fn render_ascii(rep: &GridRepresentation) -> String {
    let rep = compact(rep);
    let (rows, cols) = rep.extent();
    let mut h = vec![vec![0u32; cols as usize]; rows as usize];
    let mut v = vec![vec![0u32; cols as usize]; rows as usize];
    for p in &rep.paths {
        let r = p.rect();
        for y in r.y0..=r.y1 {
            for x in r.x0..=r.x1 {
                let cell = match p.orientation {
                    Orientation::Horizontal => &mut h[y as usize][x as usize],
                    Orientation::Vertical => &mut v[y as usize][x as usize],
                };
                *cell += 1;
            }
        }
    }
    let mut out = String::new();
    for y in 0..rows as usize {
        for x in 0..cols as usize {
            out.push(match (h[y][x], v[y][x]) {
                (0, 0) => '.',
                (1, 0) => '-',
                (0, 1) => '|',
                _ => '+',
            });
        }
        out.push('\n');
    }
    out.push('\n');
    for p in &rep.paths {
        let _ = match p.orientation {
            Orientation::Horizontal => writeln!(
                out,
                "{}: H row {} cols {}..{}",
                p.vertex + 1,
                p.line,
                p.lo,
                p.hi
            ),
            Orientation::Vertical => writeln!(
                out,
                "{}: V col {} rows {}..{}",
                p.vertex + 1,
                p.line,
                p.lo,
                p.hi
            ),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 1)]).unwrap();
        let text = write_graph(&g, Some("paw"));
        assert!(text.starts_with("c paw\np 4 4\n"));
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert_eq!(parse_graph("p edge 2 1\ne 1 2\n").unwrap().edge_count(), 1);
    }

    #[test]
    fn graph_errors() {
        let cases = [
            ("e 1 2\n", 1),
            ("p 3 1\ne 1 4\n", 2),
            ("p 3 1\ne 2 2\n", 2),
            ("p 3 2\ne 1 2\ne 2 1\n", 3),
            ("p 3 2\ne 1 2\n", 2),
            ("p 3 1\ne 1 2\ne 2 3\n", 3),
            ("p 3 x\n", 1),
            ("", 1),
            ("p 2 1\nq 1 2\n", 2),
        ];
        for (text, line) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn representation_round_trip() {
        let rep = GridRepresentation::new(vec![
            GridPath::horizontal(0, 4, 2, 8),
            GridPath::vertical(1, 5, 4, 9),
            GridPath::point(2, 8, 4),
        ]);
        let text = write_representation(&rep);
        let file = parse_representation(&text).unwrap();
        assert_eq!(file.grid, GridExtent { rows: 2, cols: 3 });
        assert_eq!(file.to_representation(3).unwrap(), compact(&rep));
        assert!(file.to_representation(2).is_err());
    }

    #[test]
    fn representation_validation() {
        let text =
            r#"{"grid":{"rows":1,"cols":2},"paths":[{"v":1,"dir":"H","line":0,"lo":0,"hi":2}]}"#;
        assert!(parse_representation(text)
            .unwrap()
            .to_representation(1)
            .is_err());
        let text =
            r#"{"grid":{"rows":1,"cols":3},"paths":[{"v":1,"dir":"H","line":0,"lo":2,"hi":1}]}"#;
        assert!(parse_representation(text)
            .unwrap()
            .to_representation(1)
            .is_err());
        assert!(matches!(
            parse_representation("{"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn certificate_json() {
        let json = CertificateFile::Reject {
            family_k: 0,
            vertices: vec![1, 2],
        }
        .to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["verdict"], "reject");
        assert_eq!(value["family_k"], 0);
        let nb: serde_json::Value = serde_json::from_str(
            &CertificateFile::NotBlockGraph {
                block: vec![1, 2, 3, 4],
                nonadjacent: [1, 3],
            }
            .to_json(),
        )
        .unwrap();
        assert_eq!(nb["verdict"], "not_block_graph");
        assert_eq!(
            serde_json::from_str::<serde_json::Value>(&CertificateFile::Accept.to_json()).unwrap()
                ["verdict"],
            "accept"
        );
    }

    #[test]
    fn ascii() {
        let rep = GridRepresentation::new(vec![
            GridPath::horizontal(0, 0, 0, 2),
            GridPath::vertical(1, 1, 0, 1),
        ]);
        let text = render_ascii(&rep);
        assert!(text.starts_with("-+-\n.|.\n\n"));
        assert!(text.contains("1: H row 0 cols 0..2"));
        assert!(text.contains("2: V col 1 rows 0..1"));
    }
}
