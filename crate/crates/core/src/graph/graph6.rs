//! graph6, short form only (order ≤ 62).

use super::Graph;
use crate::error::{Error, Result};

const MAX_SHORT_ORDER: usize = 62;
const HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > MAX_SHORT_ORDER {
        return Err(Error::Capability {
            operation: "graph6 encoding",
            limit: MAX_SHORT_ORDER,
            order: n,
        });
    }
    let bits = g.upper_triangle_bits();
    let mut out = String::with_capacity(1 + bits.len().div_ceil(6));
    out.push((63 + n as u8) as char);
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                v |= 1 << (5 - k);
            }
        }
        out.push((63 + v) as char);
    }
    Ok(out)
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (skip, body) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, line),
    };
    let bytes = body.as_bytes();
    let err = |offset: usize, reason: &str| Error::Graph6 {
        offset: skip + offset,
        reason: reason.to_string(),
    };
    let &first = bytes.first().ok_or_else(|| err(0, "empty input"))?;
    if !(63..=126).contains(&first) {
        return Err(err(0, "invalid order byte"));
    }
    if first == 126 {
        return Err(err(0, "orders above 62 (long form) are not supported"));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(err(0, "graph has no vertices"));
    }
    let nbits = n * (n - 1) / 2;
    let need = nbits.div_ceil(6);
    let data = &bytes[1..];
    if data.len() < need {
        return Err(err(bytes.len(), "truncated edge data"));
    }
    if data.len() > need {
        return Err(err(1 + need, "trailing bytes after edge data"));
    }
    for (i, &c) in data.iter().enumerate() {
        if !(63..=126).contains(&c) {
            return Err(err(1 + i, "byte outside the printable graph6 range"));
        }
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.set_edge(i, j);
            }
            k += 1;
        }
    }
    if need > 0 {
        let pad = need * 6 - nbits;
        let last = data[need - 1] - 63;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(err(need, "non-zero padding bits"));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(to_graph6(&Graph::complete(1).unwrap()).unwrap(), "@");
        assert_eq!(to_graph6(&Graph::complete(3).unwrap()).unwrap(), "Bw");
        assert_eq!(from_graph6("Bw").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(from_graph6(">>graph6<<Bw\n").unwrap(), Graph::complete(3).unwrap());
    }

    #[test]
    fn petgraph_vector() {
        // 0-2, 0-4, 1-3, 3-4
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g).unwrap(), "DQc");
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match from_graph6("B") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        match from_graph6("C~ ") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        assert!(from_graph6("").is_err());
        assert!(from_graph6("?").is_err());
        // K3 is "Bw"; "Bx" sets a padding bit.
        assert!(from_graph6("Bx").is_err());
    }

    #[test]
    fn order_cap() {
        assert!(matches!(
            to_graph6(&Graph::empty(63).unwrap()),
            Err(Error::Capability { .. })
        ));
        assert_eq!(to_graph6(&Graph::empty(62).unwrap()).unwrap().as_bytes()[0], 125);
    }
}
