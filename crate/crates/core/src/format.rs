//! Line-oriented text files: graphs (`n`, `v`, `e` lines) and vertex weights
//! (`w` lines). `#` starts a comment line.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

fn malformed(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Malformed { line, message: message.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

fn id_at(line: usize, tok: &str) -> Result<VertexId, FormatError> {
    VertexId::new(tok).map_err(|_| malformed(line, format!("invalid vertex id {tok:?}")))
}

pub fn read_graph(text: &str) -> Result<Graph, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();
    let mut isolated = Vec::new();
    for (line, toks) in content_lines(text) {
        match toks.as_slice() {
            ["n", count] => {
                if header.is_some() {
                    return Err(malformed(line, "duplicate header"));
                }
                let c = count.parse().map_err(|_| malformed(line, format!("bad vertex count {count:?}")))?;
                header = Some((line, c));
            }
            ["v", id] => isolated.push(id_at(line, id)?),
            ["e", a, b] => {
                let (a, b) = (id_at(line, a)?, id_at(line, b)?);
                if a == b {
                    return Err(malformed(line, format!("self-loop at {a}")));
                }
                pairs.push((a, b));
            }
            _ => return Err(malformed(line, format!("unrecognized line {:?}", toks.join(" ")))),
        }
    }
    let (hline, count) = header.ok_or_else(|| malformed(0, "missing header line `n <count>`"))?;
    let distinct: BTreeSet<&VertexId> = isolated.iter().chain(pairs.iter().flat_map(|(a, b)| [a, b])).collect();
    if distinct.len() != count {
        return Err(malformed(hline, format!("header says {count} vertices, file names {}", distinct.len())));
    }
    Graph::from_edge_list(&pairs, &isolated).map_err(|e| malformed(0, e.to_string()))
}

/// Canonical rendering: header, `v` lines for isolated vertices, sorted `e` lines.
pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.n());
    for v in (0..g.n()).filter(|&v| g.degree(v) == 0) {
        s.push_str(&format!("v {}\n", g.id(v)));
    }
    for (u, v) in g.edges() {
        s.push_str(&format!("e {} {}\n", g.id(u), g.id(v)));
    }
    s
}

pub fn read_weights(text: &str) -> Result<BTreeMap<VertexId, u64>, FormatError> {
    let mut out = BTreeMap::new();
    for (line, toks) in content_lines(text) {
        match toks.as_slice() {
            ["w", id, w] => {
                let w = w.parse::<u64>().map_err(|_| malformed(line, format!("bad weight {w:?}")))?;
                if out.insert(id_at(line, id)?, w).is_some() {
                    return Err(malformed(line, format!("duplicate weight for {id}")));
                }
            }
            _ => return Err(malformed(line, format!("unrecognized line {:?}", toks.join(" ")))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::from_strs(&[("a", "b"), ("b", "c")], &["z"]).unwrap();
        let text = write_graph(&g);
        assert_eq!(text, "n 4\nv z\ne a b\ne b c\n");
        assert_eq!(read_graph(&text).unwrap(), g);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = read_graph("# hi\n\nn 2\n  e x y  \n").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn header_must_match() {
        assert!(read_graph("n 3\ne a b\n").is_err());
        assert!(read_graph("e a b\n").is_err());
        assert!(read_graph("n 1\ne a a\n").is_err());
        assert!(read_graph("n 2\ne a b-c\n").is_err());
        assert!(read_graph("n 2\nq a b\n").is_err());
    }

    #[test]
    fn weights() {
        let w = read_weights("w a 3\n# c\nw b 0\n").unwrap();
        assert_eq!(w[&VertexId::new("a").unwrap()], 3);
        assert!(read_weights("w a -1\n").is_err());
        assert!(read_weights("w a 1\nw a 2\n").is_err());
    }
}
