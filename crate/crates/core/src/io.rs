//! graph6 and edge-list text formats.
//!
//! graph6: a size header (one byte `63 + n` for `n <= 62`, otherwise `~`
//! followed by three bytes of 6 bits each), then the upper triangle of the
//! adjacency matrix in column order (`x(0,1), x(0,2), x(1,2), x(0,3), ..`),
//! packed six bits per byte, high bit first, each byte offset by 63.
//!
//! Edge list: first line `n m`, then `m` lines `u v`. Blank lines and lines
//! starting with `#` are ignored.

use std::io::BufRead;

use crate::error::ParseError;
use crate::graph::{Graph, MAX_VERTICES};

const GRAPH6_HEADER: &str = ">>graph6<<";

pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    if n <= 62 {
        out.push((63 + n as u8) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((63 + ((n >> shift) & 63) as u8) as char);
        }
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push((63 + acc) as char);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        acc <<= 6 - bits;
        out.push((63 + acc) as char);
    }
    out
}

pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let line = text.trim();
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::Empty);
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(ParseError::BadByte(b));
        }
    }
    let (n, body) = if bytes[0] != b'~' {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == b'~' {
            // eight-byte headers encode n > 258047, far beyond the cap
            return Err(ParseError::BadHeader);
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    };
    if n > MAX_VERTICES {
        return Err(crate::error::GraphError::TooManyVertices {
            n,
            max: MAX_VERTICES,
        }
        .into());
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(ParseError::BadLength {
            expected,
            got: body.len(),
        });
    }
    let mut g = Graph::empty(n)?;
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    for pad in nbits..expected * 6 {
        if bit(pad) {
            return Err(ParseError::NonzeroPadding);
        }
    }
    Ok(g)
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or(ParseError::Empty)?;
    let (n, m) = parse_pair(header)?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        edges.push(parse_pair(line)?);
    }
    if edges.len() != m {
        return Err(ParseError::EdgeList(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.order(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn parse_pair(line: &str) -> Result<(usize, usize), ParseError> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(ParseError::EdgeList(format!("expected two integers, got {line:?}"))),
    }
}

/// True if the text looks like an edge list (first meaningful line is two
/// integers) rather than graph6.
pub fn looks_like_edge_list(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_pair(l).is_ok())
        .unwrap_or(false)
}

/// Reads graph6 lines, yielding each parsed graph (or its error) with the
/// 1-based line number. Blank lines are skipped.
pub fn read_graph6_lines<R: BufRead>(
    reader: R,
) -> impl Iterator<Item = (usize, String, Result<Graph, ParseError>)> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(i, line)| match line {
            Ok(l) if l.trim().is_empty() => None,
            Ok(l) => {
                let parsed = parse_graph6(&l);
                Some((i + 1, l.trim().to_string(), parsed))
            }
            Err(e) => Some((i + 1, String::new(), Err(ParseError::EdgeList(e.to_string())))),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn triangle_by_hand() {
        // n = 3 -> 'B'; bits x01 x02 x12 = 111 padded to 111000 = 56 -> 'w'
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3));
        assert_eq!(write_graph6(&Graph::complete(3)), "Bw");
    }

    #[test]
    fn five_vertex_example_and_empty() {
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(write_graph6(&g), "D?{");
        let e = parse_graph6("D??").unwrap();
        assert_eq!(e.order(), 5);
        assert_eq!(e.size(), 0);
    }

    #[test]
    fn header_prefix_accepted() {
        assert_eq!(parse_graph6(">>graph6<<Bw").unwrap(), Graph::complete(3));
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(parse_graph6(""), Err(ParseError::Empty));
        assert_eq!(parse_graph6("B"), Err(ParseError::BadLength { expected: 1, got: 0 }));
        // 'x' = 63 + 57 sets a padding bit for n = 3
        assert_eq!(parse_graph6("Bx"), Err(ParseError::NonzeroPadding));
        assert!(matches!(parse_graph6("B\u{7}"), Err(ParseError::BadByte(_))));
        assert!(matches!(parse_graph6("~~??????"), Err(ParseError::BadHeader)));
        // n = 600 in the four-byte form
        let big = format!("~?{}{}", (63 + ((600 >> 6) & 63)) as u8 as char, (63 + (600 & 63)) as u8 as char);
        assert!(matches!(parse_graph6(&big), Err(ParseError::Graph(_))));
    }

    #[test]
    fn long_header_round_trip() {
        let g = Graph::cycle(70);
        let s = write_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn edge_list_format() {
        let g = parse_edge_list("# diamond\n4 5\n0 1\n0 2\n1 2\n1 3\n2 3\n").unwrap();
        assert_eq!(g, Graph::complete(4).without_edge(0, 3));
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 0\n").is_err());
        assert!(looks_like_edge_list("3 1\n0 1"));
        assert!(!looks_like_edge_list("Bw"));
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
                move |bits| {
                    let mut edges = Vec::new();
                    let mut k = 0;
                    for j in 1..n {
                        for i in 0..j {
                            if bits[k] {
                                edges.push((i, j));
                            }
                            k += 1;
                        }
                    }
                    Graph::from_edge_list(n, &edges).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trip(g in arb_graph(8)) {
            prop_assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), g);
        }
    }
}
