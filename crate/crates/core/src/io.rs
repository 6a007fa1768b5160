//! graph6, the plain edge-list text format, and DOT export.
//!
//! graph6 follows the usual layout: an optional `>>graph6<<` header, the
//! order in `N(n)` form, then the upper triangle of the adjacency matrix in
//! column order (`x(0,1) x(0,2) x(1,2) x(0,3) …`) packed six bits per byte,
//! each byte offset by 63.

use std::fmt::Write as _;
use std::path::Path;

use crate::graph::Graph;
use crate::labeling::Numbering;
use crate::{Error, Result};

const HEADER: &[u8] = b">>graph6<<";

fn g6_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

/// Parses one graph6 record. A single trailing newline is accepted.
pub fn parse_graph6(text: &[u8]) -> Result<Graph> {
    let mut end = text.len();
    if text[..end].ends_with(b"\n") {
        end -= 1;
        if text[..end].ends_with(b"\r") {
            end -= 1;
        }
    }
    let body = &text[..end];
    let mut pos = if body.starts_with(HEADER) { HEADER.len() } else { 0 };
    if pos >= body.len() {
        return Err(g6_err(pos, "missing order"));
    }

    let byte = |i: usize| -> Result<u8> {
        match body.get(i) {
            None => Err(g6_err(i, "unexpected end of input")),
            Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
            Some(&b) => Err(g6_err(i, format!("byte {b:#04x} outside the graph6 range"))),
        }
    };
    let n = if body[pos] != 126 {
        let n = byte(pos)? as usize;
        pos += 1;
        n
    } else if body.get(pos + 1) != Some(&126) {
        let mut n = 0usize;
        for i in 1..=3 {
            n = (n << 6) | byte(pos + i)? as usize;
        }
        if n < 63 {
            return Err(g6_err(pos, "long order prefix used for n < 63"));
        }
        pos += 4;
        n
    } else {
        let mut n = 0usize;
        for i in 2..=7 {
            n = (n << 6) | byte(pos + i)? as usize;
        }
        if n < 258048 {
            return Err(g6_err(pos, "8-byte order prefix used for n < 258048"));
        }
        pos += 8;
        n
    };

    let bits = n * n.saturating_sub(1) / 2;
    let nbytes = bits.div_ceil(6);
    if body.len() < pos + nbytes {
        return Err(g6_err(body.len(), format!("expected {nbytes} adjacency bytes")));
    }
    if body.len() > pos + nbytes {
        return Err(g6_err(pos + nbytes, "trailing bytes after adjacency data"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let b = byte(pos + k / 6)?;
            if b & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let last = byte(pos + k / 6)?;
        if last & ((1 << (6 - k % 6)) - 1) != 0 {
            return Err(g6_err(pos + k / 6, "nonzero padding bits"));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Encodes `g` without header or newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Parses a file of graph6 records, one per non-empty line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_graph6(l.trim_end().as_bytes()))
        .collect()
}

/// Parses the edge-list format: a `p q` header line, then `q` lines `u v`.
/// Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, message: String| Error::EdgeList { line, message };
    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `p q` header".into()))?;
    let nums = |line: usize, l: &str| -> Result<Vec<usize>> {
        l.split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| err(line, format!("not an integer: {t:?}"))))
            .collect()
    };
    let h = nums(hline, header)?;
    if h.len() != 2 {
        return Err(err(hline, "header must be `p q`".into()));
    }
    let (p, q) = (h[0], h[1]);
    let mut edges = Vec::with_capacity(q);
    for (line, l) in lines {
        let e = nums(line, l)?;
        if e.len() != 2 {
            return Err(err(line, "edge line must be `u v`".into()));
        }
        edges.push((e[0], e[1]));
    }
    if edges.len() != q {
        return Err(err(hline, format!("header promises {q} edges, found {}", edges.len())));
    }
    Graph::from_edges(p, &edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Reads a graph file, choosing the format by extension: `.g6`/`.graph6`
/// for graph6, anything else for the edge-list format.
pub fn read_graph_file(path: &Path) -> Result<Graph> {
    let data = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6") | Some("graph6") => parse_graph6(&data),
        _ => parse_edge_list(&String::from_utf8_lossy(&data)),
    }
}

/// DOT rendering; with a numbering, each vertex is annotated with its label.
pub fn to_dot(g: &Graph, labels: Option<&Numbering>) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.order() {
        match labels {
            Some(f) => {
                let _ = writeln!(s, "  {v} [label=\"{}\", xlabel=\"v{v}\"];", f.label(v));
            }
            None => {
                let _ = writeln!(s, "  {v};");
            }
        }
    }
    for (u, v) in g.edges() {
        match labels {
            Some(f) => {
                let _ = writeln!(s, "  {u} -- {v} [label=\"{}\"];", f.label(u) + f.label(v));
            }
            None => {
                let _ = writeln!(s, "  {u} -- {v};");
            }
        }
    }
    s.push_str("}\n");
    s
}
