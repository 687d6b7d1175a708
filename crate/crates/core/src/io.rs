//! Text formats: the loop-capable edge list and graph6 (loopless only).
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with `0 <= u, v < n`;
//! `u u` is a loop. Tokens are whitespace separated and the trailing newline is
//! optional.

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Graph6,
}

/// Parses either format, picking edge-list when the text starts with two integers.
pub fn parse_graph(text: &str) -> Result<Graph> {
    match detect(text) {
        Format::EdgeList => parse_edge_list(text),
        Format::Graph6 => parse_graph6(text),
    }
}

pub fn detect(text: &str) -> Format {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    let mut toks = first.split_whitespace();
    let numeric = |t: Option<&str>| t.is_some_and(|t| t.parse::<usize>().is_ok());
    if numeric(toks.next()) && numeric(toks.next()) {
        Format::EdgeList
    } else {
        Format::Graph6
    }
}

pub fn emit_graph(g: &Graph, format: Format) -> Result<String> {
    match format {
        Format::EdgeList => Ok(emit_edge_list(g)),
        Format::Graph6 => emit_graph6(g),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut toks = text.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|_| Error::Parse(format!("not a non-negative integer: {t:?}")))
    });
    let n = toks
        .next()
        .ok_or_else(|| Error::Parse("missing header `n m`".into()))??;
    let m = toks
        .next()
        .ok_or_else(|| Error::Parse("header needs both `n` and `m`".into()))??;
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let u = toks
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {m} edges, found {i}")))??;
        let v = toks
            .next()
            .ok_or_else(|| Error::Parse(format!("edge {i} has only one endpoint")))??;
        edges.push((u, v));
    }
    if toks.next().is_some() {
        return Err(Error::Parse(format!("trailing tokens after {m} edges")));
    }
    Graph::from_edges(n, &edges)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.order(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse("graph6 byte outside 63..=126".into()));
    }
    let (n, rest) = match bytes {
        [] => return Err(Error::Parse("empty graph6 string".into())),
        [126, 126, r @ ..] => {
            if r.len() < 6 {
                return Err(Error::Parse("truncated graph6 order".into()));
            }
            (decode_n(&r[..6]), &r[6..])
        }
        [126, r @ ..] => {
            if r.len() < 3 {
                return Err(Error::Parse("truncated graph6 order".into()));
            }
            (decode_n(&r[..3]), &r[3..])
        }
        [b, r @ ..] => ((b - 63) as usize, r),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let needed = pairs.div_ceil(6);
    if rest.len() != needed {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {needed} for n={n}",
            rest.len()
        )));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

fn decode_n(b: &[u8]) -> usize {
    b.iter().fold(0usize, |acc, &x| (acc << 6) | (x - 63) as usize)
}

pub fn emit_graph6(g: &Graph) -> Result<String> {
    if g.has_loops() {
        return Err(Error::invalid("graph6 cannot encode loops"));
    }
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
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
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, looped_vertex};

    #[test]
    fn edge_list_examples() {
        let g = parse_graph("3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g, cycle(3).unwrap());
        let l = parse_graph("1 1\n0 0").unwrap();
        assert_eq!(l, looped_vertex());
        assert_eq!(emit_edge_list(&l), "1 1\n0 0\n");
    }

    #[test]
    fn edge_list_errors() {
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("3").is_err());
        assert!(parse_edge_list("3 1\n0 3\n").is_err());
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 1 2\n").is_err());
        assert!(parse_edge_list("x y\n").is_err());
    }

    #[test]
    fn graph6_known_strings() {
        // K4 is "C~", C5 is "Dhc" in the standard encoding
        assert_eq!(emit_graph6(&complete(4).unwrap()).unwrap(), "C~");
        assert_eq!(emit_graph6(&cycle(5).unwrap()).unwrap(), "Dhc");
        assert_eq!(parse_graph6("Dhc").unwrap(), cycle(5).unwrap());
        assert_eq!(parse_graph(">>graph6<<C~").unwrap(), complete(4).unwrap());
        assert!(emit_graph6(&looped_vertex()).is_err());
        assert!(parse_graph6("D").is_err());
    }

    #[test]
    fn graph6_long_header() {
        let g = cycle(70).unwrap();
        let s = emit_graph6(&g).unwrap();
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}
