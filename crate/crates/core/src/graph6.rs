//! graph6 records for graphs with at most 62 vertices.
//!
//! A record is one header byte `n + 63` followed by the strict upper
//! triangle of the adjacency matrix, pairs `(i, j)` with `i < j` ordered by
//! `j` then `i`, packed six bits per byte (most significant first), padded
//! with zeros and offset by 63.

use crate::error::{Graph6Error, GraphError};
use crate::graph::Graph;

pub const GRAPH6_MAX_VERTICES: usize = 62;

const OFFSET: u8 = 63;

pub fn write_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n > GRAPH6_MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n, max: GRAPH6_MAX_VERTICES });
    }
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(n as u8 + OFFSET);
    let (mut acc, mut filled) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Parses one record. Surrounding whitespace is the caller's concern.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let bytes = line.as_bytes();
    let &header = bytes.first().ok_or(Graph6Error::Empty)?;
    if !(OFFSET..=OFFSET + GRAPH6_MAX_VERTICES as u8).contains(&header) {
        return Err(Graph6Error::BadHeader { byte: header });
    }
    let n = (header - OFFSET) as usize;
    let expected = data_len(n);
    let data = &bytes[1..];
    for (i, &b) in data.iter().enumerate().take(expected) {
        if !(OFFSET..=126).contains(&b) {
            return Err(Graph6Error::BadByte { position: i + 1, byte: b });
        }
    }
    if data.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: data.len() });
    }
    if data.len() > expected {
        return Err(Graph6Error::TrailingData { position: expected + 1 });
    }
    let total_bits = n * n.saturating_sub(1) / 2;
    let pad = expected * 6 - total_bits;
    if pad > 0 && (data[expected - 1] - OFFSET) & ((1 << pad) - 1) != 0 {
        return Err(Graph6Error::NonZeroPadding { position: expected });
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for row in rows.iter_mut().take(j) {
            let byte = data[k / 6] - OFFSET;
            if byte >> (5 - k % 6) & 1 == 1 {
                *row |= 1 << j;
            }
            k += 1;
        }
    }
    for j in 0..n {
        for i in 0..j {
            if rows[i] >> j & 1 == 1 {
                rows[j] |= 1 << i;
            }
        }
    }
    Ok(Graph::from_adjacency(&rows)?)
}
