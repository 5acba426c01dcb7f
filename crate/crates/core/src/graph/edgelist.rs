//! Plain edge-list text: a `"ν m"` line, then `m` lines `"u v"` (0-based).

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Input("edge list is empty".into()))?;
    let (order, m) = two_numbers(header, 1)?;
    let mut edges = Vec::with_capacity(m);
    for (idx, line) in lines {
        edges.push(two_numbers(line, idx + 1)?);
    }
    if edges.len() != m {
        return Err(Error::Input(format!(
            "edge list declares {m} edges but contains {}",
            edges.len()
        )));
    }
    Graph::from_edges(order, &edges)
}

fn two_numbers(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::Input(format!(
            "line {lineno}: expected two non-negative integers, got {line:?}"
        ))),
    }
}

pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.order(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::cycle(5).unwrap();
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 x\n").is_err());
        assert!(parse_edge_list("3 1\n0 3\n").is_err());
    }
}
