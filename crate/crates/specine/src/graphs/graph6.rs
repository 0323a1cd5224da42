//! graph6 codec: printable ASCII encoding of the column-major upper-triangle
//! adjacency bits, six bits per character with offset 63.

use super::{Graph, GraphError};

/// Encodes a graph in graph6 format.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        // 63 <= n <= 258047: '~' then three characters of the 18-bit count.
        out.push(126);
        out.push(63 + ((n >> 12) & 0x3f) as u8);
        out.push(63 + ((n >> 6) & 0x3f) as u8);
        out.push(63 + (n & 0x3f) as u8);
    }
    let mut buf = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            buf <<= 1;
            buf |= g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + buf);
                buf = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (buf << (6 - filled)));
    }
    String::from_utf8(out).unwrap()
}

/// Decodes a graph6 string; the graph must have 1..=64 vertices.
pub fn from_graph6(s: &str) -> Result<Graph, GraphError> {
    let bytes = s.trim().as_bytes();
    if bytes.is_empty() {
        return Err(GraphError::Parse("empty input".into()));
    }
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Parse("byte out of graph6 range".into()));
    }
    let (n, rest) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(GraphError::Parse("graphs beyond 258047 vertices are not supported".into()));
        }
        if bytes.len() < 4 {
            return Err(GraphError::Parse("truncated vertex count".into()));
        }
        let n = (((bytes[1] - 63) as usize) << 12)
            | (((bytes[2] - 63) as usize) << 6)
            | ((bytes[3] - 63) as usize);
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    if n == 0 || n > 64 {
        return Err(GraphError::Parse(format!(
            "vertex count {n} outside the supported range 1..=64"
        )));
    }
    let nbits = n * (n - 1) / 2;
    if rest.len() != nbits.div_ceil(6) {
        return Err(GraphError::Parse(format!(
            "expected {} data characters, found {}",
            nbits.div_ceil(6),
            rest.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let chunk = rest[bit / 6] - 63;
            if chunk >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    // Padding bits must be zero.
    for extra in bit..rest.len() * 6 {
        let chunk = rest[extra / 6] - 63;
        if chunk >> (5 - extra % 6) & 1 == 1 {
            return Err(GraphError::Parse("nonzero padding bits".into()));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_vector() {
        // 5 vertices, edges 0-2, 0-4, 1-3, 3-4.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(from_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn round_trips_small_graphs() {
        for g in [
            Graph::bullet(),
            Graph::complete(2),
            Graph::path(4),
            Graph::cycle(5),
            Graph::star(7),
            Graph::complete(8),
        ] {
            assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }

    #[test]
    fn long_form_vertex_count() {
        let g = Graph::complete(64);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("D").is_err()); // truncated data
        assert!(from_graph6("?").is_err()); // zero vertices
        assert!(from_graph6("B\u{1}").is_err()); // byte below the offset
        assert!(from_graph6("Bx").is_err()); // nonzero padding
        assert_eq!(from_graph6("Bw").unwrap(), Graph::complete(3));
    }
}
