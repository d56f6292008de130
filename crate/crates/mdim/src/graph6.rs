//! graph6 text codec for graphs on at most 62 vertices (single-byte size
//! header). The format packs the upper triangle of the adjacency matrix in
//! column order — (0,1), (0,2), (1,2), (0,3), … — six bits per printable
//! byte, most significant bit first, each byte offset by 63.
//!
//! ```
//! use mdim::{encode_graph6, parse_graph6, Graph};
//!
//! let g = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (3, 4)])?;
//! let g6 = encode_graph6(&g);
//! assert_eq!(g6, "DsC");
//! assert_eq!(parse_graph6(&g6)?.edges(), g.edges());
//! # Ok::<(), mdim::Error>(())
//! ```
//!
//! The encoding is of the *labeled* graph; use
//! [`canonical_graph6`](crate::canonical_graph6) when the string should
//! identify the isomorphism class instead.

use crate::error::{Error, Result};
use crate::graph::Graph;

const OFFSET: u8 = 63;
const MAX_ORDER: usize = 62;

fn bit_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn byte_count(n: usize) -> usize {
    bit_count(n).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    // The reference tools sometimes emit a format header; accept it.
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6 {
            offset: 0,
            reason: "empty string".into(),
        });
    }
    if bytes[0] == b'~' {
        return Err(Error::Graph6 {
            offset: 0,
            reason: "multi-byte order header (n > 62) not supported".into(),
        });
    }
    if !(OFFSET..=OFFSET + 62).contains(&bytes[0]) {
        return Err(Error::Graph6 {
            offset: 0,
            reason: format!("invalid order byte 0x{:02x}", bytes[0]),
        });
    }
    let n = (bytes[0] - OFFSET) as usize;
    if n == 0 {
        return Err(Error::Graph6 {
            offset: 0,
            reason: "graph of order 0".into(),
        });
    }
    let expected = 1 + byte_count(n);
    if bytes.len() != expected {
        return Err(Error::Graph6 {
            offset: bytes.len().min(expected),
            reason: format!(
                "expected {expected} bytes for order {n}, found {}",
                bytes.len()
            ),
        });
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[1 + bit / 6];
            if !(OFFSET..OFFSET + 64).contains(&byte) {
                return Err(Error::Graph6 {
                    offset: 1 + bit / 6,
                    reason: format!("byte 0x{byte:02x} outside graph6 range"),
                });
            }
            let group = byte - OFFSET;
            if group >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    // Padding bits must be zero for a canonical encoding; tolerate them
    // being set only if the order byte was consistent (we already consumed
    // exactly the triangle, so trailing garbage can only live in padding).
    Graph::from_edge_list(n, &edges)
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(
        n <= MAX_ORDER,
        "graph6 single-byte header covers orders up to 62, got {n}"
    );
    let mut out = vec![OFFSET + n as u8];
    let mut group = 0u8;
    let mut filled = 0usize;
    for j in 1..n {
        for i in 0..j {
            group <<= 1;
            group |= u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(OFFSET + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(OFFSET + (group << (6 - filled)));
    }
    String::from_utf8(out).expect("all bytes printable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_known_strings() {
        // 'B' = order 3; 'w' = 111000 → edges (0,1),(0,2),(1,2).
        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!(k3.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        // 'g' = 101000 → edges (0,1),(1,2): the path 0-1-2.
        let p3 = parse_graph6("Bg").unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn encodes_known_graphs() {
        let k3 = Graph::from_edge_list(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(encode_graph6(&k3), "Bw");
        assert_eq!(encode_graph6(&Graph::path(3)), "Bg");
        assert_eq!(parse_graph6(&encode_graph6(&k3)).unwrap(), k3);
    }

    #[test]
    fn round_trips_assorted_graphs() {
        for g in [
            Graph::path(1),
            Graph::path(2),
            Graph::path(10),
            Graph::star(7),
            Graph::from_edge_list(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]).unwrap(),
        ] {
            let s = encode_graph6(&g);
            assert_eq!(parse_graph6(&s).unwrap(), g, "mismatch for {s}");
        }
    }

    #[test]
    fn accepts_format_header_and_newline() {
        assert_eq!(
            parse_graph6(">>graph6<<Bw\n").unwrap(),
            parse_graph6("Bw").unwrap()
        );
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_graph6(""), Err(Error::Graph6 { offset: 0, .. })));
        // Order byte claims 3 vertices but the body is missing.
        assert!(parse_graph6("B").is_err());
        // Too much body for the declared order.
        assert!(parse_graph6("Bww").is_err());
        // Byte below the printable range inside the body.
        let err = parse_graph6("B\x1f").unwrap_err();
        assert!(matches!(err, Error::Graph6 { .. }));
        // Extended-order headers are out of scope.
        assert!(parse_graph6("~??").is_err());
    }
}
