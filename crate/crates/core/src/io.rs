//! graph6, edge-list and matrix-json readers and writers.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedLabeledGraph, LabelId, LabelMatrix, LabeledGraph};

/// Largest order any reader will allocate.
pub const MAX_ORDER: usize = 4096;

/// Syntax error with a 1-based position.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    Edgelist,
    MatrixJson,
}

impl Format {
    /// Guess from a file extension: `.g6`, `.json`, anything else is an edge list.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => Format::Graph6,
            Some("json") => Format::MatrixJson,
            _ => Format::Edgelist,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" => Ok(Format::Edgelist),
            "matrix-json" | "json" => Ok(Format::MatrixJson),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Graph6 => "graph6",
            Format::Edgelist => "edgelist",
            Format::MatrixJson => "matrix-json",
        })
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<LabeledGraph> {
    match format {
        Format::Graph6 => parse_graph6(text),
        Format::Edgelist => parse_edgelist(text),
        Format::MatrixJson => parse_matrix_json(text),
    }
}

pub fn format_graph(g: &LabeledGraph, format: Format) -> Result<String> {
    match format {
        Format::Graph6 => to_graph6(g).map(|s| s + "\n"),
        Format::Edgelist => to_edgelist(g),
        Format::MatrixJson => Ok(to_matrix_json(g)),
    }
}

pub fn read_graph(path: impl AsRef<Path>, format: Format) -> Result<LabeledGraph> {
    parse_graph(&fs::read_to_string(path)?, format)
}

pub fn write_graph(g: &LabeledGraph, path: impl AsRef<Path>, format: Format) -> Result<()> {
    fs::write(path, format_graph(g, format)?)?;
    Ok(())
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes the first graph of a graph6 text.
pub fn parse_graph6(text: &str) -> Result<LabeledGraph> {
    let mut all = graph6_lines(text).take(1).collect::<Result<Vec<_>>>()?;
    all.pop().ok_or_else(|| ParseError::at(1, 1, "no graph found").into())
}

/// Decodes every non-empty line of a graph6 text.
pub fn parse_graph6_all(text: &str) -> Result<Vec<LabeledGraph>> {
    graph6_lines(text).collect()
}

fn graph6_lines(text: &str) -> impl Iterator<Item = Result<LabeledGraph>> + '_ {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| decode_graph6_line(l.trim_end(), i + 1).map_err(Error::from))
}

fn decode_graph6_line(line: &str, lineno: usize) -> std::result::Result<LabeledGraph, ParseError> {
    let (body, offset) = match line.strip_prefix(GRAPH6_HEADER) {
        Some(rest) => (rest.as_bytes(), GRAPH6_HEADER.len()),
        None => (line.as_bytes(), 0),
    };
    let err = |pos: usize, msg: &str| ParseError::at(lineno, offset + pos + 1, msg);
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(i, "byte outside the graph6 range 63..=126"));
        }
    }
    let six = |i: usize| -> std::result::Result<u64, ParseError> {
        body.get(i).map(|&b| u64::from(b - 63)).ok_or_else(|| err(i, "truncated order field"))
    };
    let (n, start) = match body.first() {
        None => return Err(err(0, "empty graph6 string")),
        Some(&126) if body.get(1) == Some(&126) => {
            let mut n = 0u64;
            for i in 2..8 {
                n = (n << 6) | six(i)?;
            }
            (n, 8)
        }
        Some(&126) => {
            let mut n = 0u64;
            for i in 1..4 {
                n = (n << 6) | six(i)?;
            }
            (n, 4)
        }
        Some(&b) => (u64::from(b - 63), 1),
    };
    if n == 0 {
        return Err(err(0, "graph6 order must be at least 1"));
    }
    let n = usize::try_from(n).map_err(|_| err(0, "order does not fit in memory"))?;
    let bits = n.checked_mul(n - 1).map(|x| x / 2).ok_or_else(|| err(0, "order too large"))?;
    let need = bits.div_ceil(6);
    let data = &body[start..];
    if data.len() != need {
        return Err(err(start + data.len().min(need), &format!("expected {need} data bytes, found {}", data.len())));
    }
    if n > MAX_ORDER {
        return Err(err(0, &format!("order {n} exceeds {MAX_ORDER}")));
    }
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..need * 6).any(bit) {
        return Err(err(start + need - 1, "non-zero padding bits"));
    }
    let mut g = LabeledGraph::empty(n).expect("n >= 1");
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                g.set(u, v, LabelId(1));
            }
            k += 1;
        }
    }
    Ok(g)
}

/// graph6 encoding of a simple graph.
pub fn to_graph6(g: &LabeledGraph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::Unrepresentable("graph6 holds only simple graphs".into()));
    }
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(!g.label(u, v).is_blank());
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Edge list: first line `n`, then one `u v` pair of 1-based endpoints per line.
/// Blank lines and `#` comments are ignored.
pub fn parse_edgelist(text: &str) -> Result<LabeledGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());
    let (first, header) = lines.next().ok_or_else(|| ParseError::at(1, 1, "missing vertex count"))?;
    let header_tokens = tokens(header);
    let &[(col, tok)] = header_tokens.as_slice() else {
        return Err(ParseError::at(first, 1, "first line must hold only the vertex count").into());
    };
    let n: usize = tok.parse().map_err(|_| ParseError::at(first, col, format!("invalid vertex count `{tok}`")))?;
    if n == 0 || n > MAX_ORDER {
        return Err(ParseError::at(first, col, format!("vertex count must be in 1..={MAX_ORDER}")).into());
    }
    let mut g = LabeledGraph::empty(n).expect("n >= 1");
    for (lineno, line) in lines {
        let toks = tokens(line);
        if toks.len() != 2 {
            let col = toks.get(2).map_or(1, |t| t.0);
            return Err(ParseError::at(lineno, col, "expected exactly two endpoints").into());
        }
        let mut ends = [0usize; 2];
        for (slot, &(col, tok)) in ends.iter_mut().zip(&toks) {
            let v: usize = tok.parse().map_err(|_| ParseError::at(lineno, col, format!("invalid vertex `{tok}`")))?;
            if v == 0 || v > n {
                return Err(ParseError::at(lineno, col, format!("vertex {v} outside 1..={n}")).into());
            }
            *slot = v - 1;
        }
        let [u, v] = ends;
        if u == v {
            return Err(ParseError::at(lineno, toks[1].0, "self-loops are not allowed").into());
        }
        if !g.label(u, v).is_blank() {
            return Err(ParseError::at(lineno, toks[0].0, "duplicate edge").into());
        }
        g.set(u, v, LabelId(1));
    }
    Ok(g)
}

fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

pub fn to_edgelist(g: &LabeledGraph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::Unrepresentable("edge lists hold only simple graphs".into()));
    }
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    n: usize,
    labels: Vec<Vec<u32>>,
}

fn parse_rows(text: &str) -> Result<Vec<Vec<u32>>> {
    let m: MatrixJson = serde_json::from_str(text).map_err(|e| ParseError::at(e.line(), e.column(), e.to_string()))?;
    if m.n == 0 {
        return Err(Error::Empty);
    }
    if m.labels.len() != m.n {
        return Err(Error::NotSquare { row: m.labels.len(), len: 0, expected: m.n });
    }
    Ok(m.labels)
}

/// `{"n": …, "labels": [[…]]}` holding a symmetric matrix.
pub fn parse_matrix_json(text: &str) -> Result<LabeledGraph> {
    LabeledGraph::from_rows(parse_rows(text)?)
}

pub fn parse_directed_matrix_json(text: &str) -> Result<DirectedLabeledGraph> {
    DirectedLabeledGraph::from_rows(parse_rows(text)?)
}

/// One matrix row per line.
pub fn to_matrix_json<G: LabelMatrix + ?Sized>(g: &G) -> String {
    let rows: Vec<String> =
        g.to_rows().iter().map(|r| format!("    {}", serde_json::to_string(r).expect("integers serialize"))).collect();
    format!("{{\n  \"n\": {},\n  \"labels\": [\n{}\n  ]\n}}\n", g.order(), rows.join(",\n"))
}

pub fn write_matrix_json<G: LabelMatrix + ?Sized>(g: &G, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_matrix_json(g))?;
    Ok(())
}
