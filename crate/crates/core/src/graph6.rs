//! graph6 codec (nauty format), bit-exact.

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Pair, Vertex};

const BIAS: u8 = 63;
const MAX_SMALL: usize = 62;
const MAX_MEDIUM: usize = 258_047;
const MAX_LARGE: usize = 68_719_476_735;

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= MAX_SMALL {
        out.push(n as u8 + BIAS);
    } else if n <= MAX_MEDIUM {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

pub fn encode(g: &FiniteGraph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n as Vertex {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(Pair::of(i, j)) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + BIAS);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is printable ASCII")
}

fn sextet(b: u8, pos: usize) -> Result<u8> {
    if (BIAS..=126).contains(&b) {
        Ok(b - BIAS)
    } else {
        Err(Error::Graph6(format!("byte {b} at offset {pos} outside printable range 63-126")))
    }
}

pub fn decode(text: &str) -> Result<FiniteGraph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    let (n, mut pos) = if bytes[0] != 126 {
        (sextet(bytes[0], 0)? as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Error::Graph6("truncated 8-byte size header".into()));
        }
        let mut n = 0usize;
        for (k, &b) in bytes[2..8].iter().enumerate() {
            n = (n << 6) | sextet(b, k + 2)? as usize;
        }
        if n <= MAX_MEDIUM || n > MAX_LARGE {
            return Err(Error::Graph6(format!("non-canonical size header for n={n}")));
        }
        (n, 8)
    } else {
        if bytes.len() < 4 {
            return Err(Error::Graph6("truncated 4-byte size header".into()));
        }
        let mut n = 0usize;
        for (k, &b) in bytes[1..4].iter().enumerate() {
            n = (n << 6) | sextet(b, k + 1)? as usize;
        }
        if n <= MAX_SMALL {
            return Err(Error::Graph6(format!("non-canonical size header for n={n}")));
        }
        (n, 4)
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    let body = &bytes[pos..];
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "body has {} bytes, {} expected for n={n}",
            body.len(),
            expected
        )));
    }
    let mut g = FiniteGraph::empty(n);
    let mut bit = 0usize;
    let mut i: Vertex = 0;
    let mut j: Vertex = 1;
    for &b in body {
        let v = sextet(b, pos)?;
        pos += 1;
        for k in (0..6).rev() {
            let set = (v >> k) & 1 == 1;
            if bit < nbits {
                if set {
                    g.add_edge(Pair::of(i, j))?;
                }
                i += 1;
                if i == j {
                    i = 0;
                    j += 1;
                }
            } else if set {
                return Err(Error::Graph6("nonzero padding bits".into()));
            }
            bit += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        let g = decode("B_").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_set(), [Pair::of(0, 1)].into());
        assert_eq!(encode(&g), "B_");
        assert_eq!(decode("?").unwrap().n(), 0);
        assert_eq!(encode(&FiniteGraph::empty(0)), "?");
    }

    #[test]
    fn matches_reference_string() {
        // A-C, A-E, B-D, D-E on five vertices
        let g = FiniteGraph::from_pairs(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
    }

    #[test]
    fn rejects_malformed() {
        assert!(decode("B>").is_err()); // byte 62
        assert!(decode("B").is_err()); // missing body
        assert!(decode("B__").is_err()); // too long
        assert!(decode("B`").is_err()); // padding bit set: 96-63 = 100001
        assert!(decode("").is_err());
    }

    #[test]
    fn medium_size_header_round_trips() {
        let mut g = FiniteGraph::empty(70);
        g.add_edge(Pair::of(3, 69)).unwrap();
        let s = encode(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(decode(&s).unwrap(), g);
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..=40, bits in proptest::collection::vec(any::<bool>(), 780)) {
            let mut g = FiniteGraph::empty(n);
            let mut k = 0;
            for j in 1..n as Vertex {
                for i in 0..j {
                    if bits[k] { g.add_edge(Pair::of(i, j)).unwrap(); }
                    k += 1;
                }
            }
            let s = encode(&g);
            prop_assert_eq!(decode(&s).unwrap(), g);
            prop_assert_eq!(encode(&decode(&s).unwrap()), s);
        }
    }
}
