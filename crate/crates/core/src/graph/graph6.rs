use super::{Graph, GraphBuilder, MAX_VERTICES};
use crate::error::{Error, Result};

const BIAS: u8 = 63;
const LONG_HEADER: u8 = b'~';
const MAX_SHORT_N: usize = 62;
const MAX_MEDIUM_N: usize = 258_047;

/// Encodes `g` in graph6. The upper triangle is read column by column,
/// (0,1), (0,2), (1,2), (0,3), ..., packed six bits per printable byte.
pub fn g6_encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= MAX_SHORT_N {
        out.push(n as u8 + BIAS);
    } else {
        debug_assert!(n <= MAX_MEDIUM_N);
        out.push(LONG_HEADER);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn g6_decode(text: &[u8]) -> Result<Graph> {
    let malformed = |m: &str| Error::MalformedGraph6(m.to_string());
    let (&first, rest) = text.split_first().ok_or_else(|| malformed("empty input"))?;
    let (n, payload) = if first == LONG_HEADER {
        if rest.first() == Some(&LONG_HEADER) {
            return Err(Error::SizeLimitExceeded { what: "graph6 vertex count", got: usize::MAX, limit: MAX_VERTICES });
        }
        if rest.len() < 3 {
            return Err(malformed("truncated size header"));
        }
        let mut n = 0usize;
        for &b in &rest[..3] {
            n = (n << 6) | six_bits(b)? as usize;
        }
        if n <= MAX_SHORT_N {
            return Err(malformed("long size header used for a small graph"));
        }
        (n, &rest[3..])
    } else {
        (six_bits(first)? as usize, rest)
    };
    if n > MAX_VERTICES {
        return Err(Error::SizeLimitExceeded { what: "graph6 vertex count", got: n, limit: MAX_VERTICES });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if payload.len() != expected {
        return Err(Error::MalformedGraph6(format!(
            "payload has {} bytes, {} vertices need {}",
            payload.len(),
            n,
            expected
        )));
    }
    let mut b = GraphBuilder::new(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = six_bits(payload[k / 6])?;
            if byte >> (5 - k % 6) & 1 == 1 {
                b.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if let Some(&last) = payload.last() {
        let pad = expected * 6 - nbits;
        if six_bits(last)? & ((1u8 << pad) - 1) != 0 {
            return Err(malformed("nonzero padding bits"));
        }
    }
    Ok(b.build())
}

fn six_bits(b: u8) -> Result<u8> {
    if (BIAS..=BIAS + 63).contains(&b) {
        Ok(b - BIAS)
    } else {
        Err(Error::MalformedGraph6(format!("byte {b:#04x} outside the printable range")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Straight transcription of the format: build the bit string, pad,
    /// then chop into six-bit groups.
    fn reference_encode(g: &Graph) -> String {
        let n = g.n();
        let mut s: Vec<u8> = if n <= 62 {
            vec![n as u8 + 63]
        } else {
            vec![126, ((n >> 12) & 63) as u8 + 63, ((n >> 6) & 63) as u8 + 63, (n & 63) as u8 + 63]
        };
        let mut bitstr = String::new();
        for j in 0..n {
            for i in 0..j {
                bitstr.push(if g.has_edge(i, j) { '1' } else { '0' });
            }
        }
        while !bitstr.len().is_multiple_of(6) {
            bitstr.push('0');
        }
        for chunk in bitstr.as_bytes().chunks(6) {
            let v = u8::from_str_radix(std::str::from_utf8(chunk).unwrap(), 2).unwrap();
            s.push(v + 63);
        }
        String::from_utf8(s).unwrap()
    }

    #[test]
    fn known_strings() {
        let k3 = Graph::complete(3).unwrap();
        let i2 = Graph::empty(2).unwrap();
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        for g in [&k3, &i2, &c4] {
            assert_eq!(g6_encode(g), reference_encode(g));
        }
        assert_eq!(g6_encode(&k3), "Bw");
        assert_eq!(g6_encode(&i2), "A?");
        assert_eq!(g6_encode(&c4), "Cl");
        assert_eq!(g6_decode(b"Cl").unwrap(), c4);
        assert_eq!(g6_encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(g6_decode(b"?").unwrap().n(), 0);
    }

    #[test]
    fn long_header() {
        let g = Graph::from_edges(100, [(0, 99), (5, 6)]).unwrap();
        let s = g6_encode(&g);
        assert_eq!(s, reference_encode(&g));
        assert!(s.starts_with('~'));
        assert_eq!(g6_decode(s.as_bytes()).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(g6_decode(b""), Err(Error::MalformedGraph6(_))));
        assert!(matches!(g6_decode(b"C"), Err(Error::MalformedGraph6(_))));
        assert!(matches!(g6_decode(b"Clx"), Err(Error::MalformedGraph6(_))));
        // K_3 with a padding bit set: 111001
        assert!(matches!(g6_decode(&[b'B', 57 + 63]), Err(Error::MalformedGraph6(_))));
        assert!(matches!(g6_decode(b"B\x10"), Err(Error::MalformedGraph6(_))));
        assert!(matches!(g6_decode(b"~??B"), Err(Error::MalformedGraph6(_))));
        assert!(matches!(g6_decode(b"~~??????"), Err(Error::SizeLimitExceeded { .. })));
    }
}
