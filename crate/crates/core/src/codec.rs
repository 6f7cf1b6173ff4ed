//! graph6 and edge-list codecs.
//!
//! graph6 packs the upper triangle of the adjacency matrix column by column
//! into 6-bit groups biased by 63. Records up to n = 62 use a single length
//! byte; larger graphs use the '~' + 3-byte extended length form.

use crate::error::{Error, Result};
use crate::graph::Graph;

const MAX_EXTENDED_N: usize = 258_047;

/// Parses one graph6 record. A leading ">>graph6<<" header is permitted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let mut s = text.trim_end_matches(['\r', '\n']);
    if let Some(rest) = s.strip_prefix(">>graph6<<") {
        s = rest;
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty record".into()));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!("byte {b} out of range 63..126")));
        }
    }
    let (n, body) = if bytes[0] == b'~' {
        if bytes.len() >= 2 && bytes[1] == b'~' {
            return Err(Error::Graph6("8-byte length form not supported".into()));
        }
        if bytes.len() < 4 {
            return Err(Error::Graph6("truncated extended length prefix".into()));
        }
        let n = ((bytes[1] - 63) as usize) << 12
            | ((bytes[2] - 63) as usize) << 6
            | (bytes[3] - 63) as usize;
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = (nbits + 5) / 6;
    if body.len() != nbytes {
        return Err(Error::Graph6(format!(
            "expected {nbytes} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = (body[bit / 6] - 63) as usize;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(u, v)?;
            }
            bit += 1;
        }
    }
    // padding bits must be zero
    while bit < nbytes * 6 {
        let byte = (body[bit / 6] - 63) as usize;
        if byte >> (5 - bit % 6) & 1 == 1 {
            return Err(Error::Graph6("nonzero trailing padding bits".into()));
        }
        bit += 1;
    }
    Ok(g)
}

pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= MAX_EXTENDED_N {
        out.push(b'~');
        out.push(63 + ((n >> 12) & 0x3f) as u8);
        out.push(63 + ((n >> 6) & 0x3f) as u8);
        out.push(63 + (n & 0x3f) as u8);
    } else {
        return Err(Error::Graph6(format!("n = {n} exceeds supported range")));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc <<= 1;
            if g.has_edge(u, v) {
                acc |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        acc <<= 6 - filled;
        out.push(63 + acc);
    }
    debug_assert_eq!(out.len() - if n <= 62 { 1 } else { 4 }, (nbits + 5) / 6);
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parses an edge list: lines "u v", optionally preceded by a header "n m".
/// Without a header, n is one more than the largest vertex mentioned.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let a: usize = it
            .next()
            .unwrap()
            .parse()
            .map_err(|_| Error::EdgeList(format!("line {}: bad integer", lineno + 1)))?;
        let b: usize = it
            .next()
            .ok_or_else(|| Error::EdgeList(format!("line {}: missing second field", lineno + 1)))?
            .parse()
            .map_err(|_| Error::EdgeList(format!("line {}: bad integer", lineno + 1)))?;
        if it.next().is_some() {
            return Err(Error::EdgeList(format!("line {}: extra fields", lineno + 1)));
        }
        pairs.push((a, b));
    }
    // the first line is an "n m" header iff m equals the number of remaining lines
    if let Some(&(n, m)) = pairs.first() {
        let rest = &pairs[1..];
        if m == rest.len() {
            return Graph::from_edges(n, rest);
        }
    }
    let n = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Graph::from_edges(n, &pairs)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent decoder: rebuilds the full adjacency matrix from the raw
    /// bit stream, ignoring the Graph type entirely.
    fn matrix_bits(record: &str) -> (usize, Vec<Vec<bool>>) {
        let bytes = record.as_bytes();
        let (n, body) = if bytes[0] == b'~' {
            let n = ((bytes[1] - 63) as usize) << 12
                | ((bytes[2] - 63) as usize) << 6
                | (bytes[3] - 63) as usize;
            (n, &bytes[4..])
        } else {
            ((bytes[0] - 63) as usize, &bytes[1..])
        };
        let mut bits = Vec::new();
        for &b in body {
            let x = b - 63;
            for k in (0..6).rev() {
                bits.push(x >> k & 1 == 1);
            }
        }
        let mut m = vec![vec![false; n]; n];
        let mut i = 0;
        for v in 1..n {
            for u in 0..v {
                m[u][v] = bits[i];
                m[v][u] = bits[i];
                i += 1;
            }
        }
        (n, m)
    }

    #[test]
    fn smallest_record() {
        let g = parse_graph6("@").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(write_graph6(&g).unwrap(), "@");
    }

    #[test]
    fn decode_matches_independent_matrix_decoder() {
        for record in ["D?{", "DQc", "C]", "Bw", "E?~o", "Ss??GOGA_?c?C?AA?_?O?@?@??_??c"] {
            if let Ok(g) = parse_graph6(record) {
                let (n, m) = matrix_bits(record);
                assert_eq!(g.vertex_count(), n);
                for u in 0..n {
                    for v in 0..n {
                        assert_eq!(g.has_edge(u, v), m[u][v], "record {record} at {u},{v}");
                    }
                }
            }
        }
    }

    #[test]
    fn k4_record_matches_bit_packing_oracle() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let rec = write_graph6(&k4).unwrap();
        // oracle: n = 4 → 'C'; 6 upper-triangle bits all 1 → 111111 → 63 + 63 = '~'
        assert_eq!(rec, "C~");
        assert_eq!(parse_graph6(&rec).unwrap(), k4);
    }

    #[test]
    fn prism_record_matches_bit_packing_oracle() {
        let prism = crate::generators::gen_prism();
        let rec = write_graph6(&prism).unwrap();
        let (n, m) = matrix_bits(&rec);
        assert_eq!(n, 6);
        for u in 0..6 {
            for v in 0..6 {
                assert_eq!(prism.has_edge(u, v), m[u][v]);
            }
        }
    }

    #[test]
    fn header_and_padding_errors() {
        assert!(parse_graph6(">>graph6<<@").is_ok());
        // 'B' (n=3) needs exactly one data byte
        assert!(parse_graph6("B").is_err());
        assert!(parse_graph6("Bww").is_err());
        // n=2: one adjacency bit, five padding bits; '~' would set padding
        assert!(parse_graph6("A~").is_err());
        assert!(parse_graph6("A_").is_ok());
        assert!(parse_graph6("A\x1f").is_err());
    }

    #[test]
    fn edge_list_basics() {
        let g = parse_edge_list("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert!(matches!(parse_edge_list("2 1\n0 0"), Err(Error::SelfLoop(0))));
        assert!(matches!(
            parse_edge_list("2 2\n0 1\n0 1"),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(parse_edge_list("2 1\n0 5").is_err());
    }

    #[test]
    fn edge_list_without_header() {
        // two lines, first cannot be a header since m would be wrong
        let g = parse_edge_list("0 1\n1 2\n2 3").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = parse_edge_list("4 3\n0 1\n1 2\n2 3").unwrap();
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }
}
