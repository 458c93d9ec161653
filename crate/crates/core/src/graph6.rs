//! Parser and writer for the graph6 byte format.
//!
//! The layout follows the published format description: an order field
//! `N(n)`, then the upper triangle of the adjacency matrix in column order,
//! packed into 6-bit groups offset by 63. Parsing is strict: every byte must
//! be in `63..=126`, the payload must have exactly the expected length and
//! the padding bits of the final group must be zero, so that
//! `parse . serialize` and `serialize . parse` are identities.

use crate::error::{Error, Result};
use crate::graph::Graph;

const OPTIONAL_HEADER: &str = ">>graph6<<";

fn g6_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

fn payload_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Parses a single graph6 line (optionally prefixed by `>>graph6<<`).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(OPTIONAL_HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(g6_err(0, "empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(g6_err(i, format!("byte {b} outside graph6 range 63..=126")));
        }
    }

    // Order field.
    let (n, mut pos) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(g6_err(bytes.len(), "truncated long-form order field"));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 4)
    } else {
        return Err(g6_err(1, "orders above 258047 are not supported"));
    };
    if n == 0 {
        return Err(g6_err(0, "graph order must be at least 1"));
    }

    let need = payload_len(n);
    if bytes.len() - pos < need {
        return Err(g6_err(
            bytes.len(),
            format!("truncated payload: expected {need} bytes, found {}", bytes.len() - pos),
        ));
    }
    if bytes.len() - pos > need {
        return Err(g6_err(pos + need, "trailing data after payload"));
    }

    let mut g = Graph::empty(n)?;
    let total_bits = n * (n - 1) / 2;
    let mut bit_index = 0usize;
    let mut pairs = (1..n).flat_map(|v| (0..v).map(move |u| (u, v)));
    while bit_index < total_bits {
        let group = bytes[pos] - 63;
        for k in 0..6 {
            let bit = (group >> (5 - k)) & 1;
            if bit_index < total_bits {
                let (u, v) = pairs.next().expect("pair iterator matches bit count");
                if bit == 1 {
                    g.add_edge(u, v);
                }
                bit_index += 1;
            } else if bit == 1 {
                return Err(g6_err(pos, "nonzero padding bits"));
            }
        }
        pos += 1;
    }
    Ok(g)
}

/// Serializes a graph to its canonical graph6 string (no optional header).
pub fn serialize_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        assert!(n <= 258_047, "orders above 258047 are not supported");
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    let mut group = 0u8;
    let mut filled = 0u8;
    for v in 1..n {
        for u in 0..v {
            group <<= 1;
            if g.has_edge(u, v) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        group <<= 6 - filled;
        out.push(group + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses every nonempty line of `text` as a graph6 graph.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect()
}
