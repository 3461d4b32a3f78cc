//! Systematic k-of-n MDS erasure codec over GF(256).
//!
//! The message is split into `k` data chunks. Chunk `i` is treated as the
//! value of a degree < `k` polynomial (one polynomial per byte position) at
//! evaluation point `i`; parity chunks are the same polynomials evaluated
//! at points `k..n`. Any `k` chunks determine the polynomial, so any `k`
//! chunks recover the message (Lagrange interpolation back to points
//! `0..k`). This is the classic Vandermonde construction: the generator
//! matrix rows are Vandermonde-interpolated evaluations at distinct field
//! points, which is what guarantees the MDS property for `n <= 255`.
//!
//! Field: GF(2^8) with the reduction polynomial `x^8 + x^4 + x^3 + x^2 + 1`
//! (0x11d), log/antilog tables built from the generator 2.

use crate::Error;

const POLY: u16 = 0x11d;

struct Tables {
    exp: [u8; 512],
    log: [u8; 256],
}

fn tables() -> &'static Tables {
    use std::sync::OnceLock;
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut t = Tables { exp: [0; 512], log: [0; 256] };
        let mut x: u16 = 1;
        for i in 0..255 {
            t.exp[i] = x as u8;
            t.log[x as usize] = i as u8;
            x <<= 1;
            if x & 0x100 != 0 {
                x ^= POLY;
            }
        }
        for i in 255..512 {
            t.exp[i] = t.exp[i - 255];
        }
        t
    })
}

fn gf_mul(a: u8, b: u8) -> u8 {
    if a == 0 || b == 0 {
        return 0;
    }
    let t = tables();
    t.exp[t.log[a as usize] as usize + t.log[b as usize] as usize]
}

fn gf_inv(a: u8) -> u8 {
    debug_assert!(a != 0);
    let t = tables();
    t.exp[255 - t.log[a as usize] as usize]
}

fn gf_div(a: u8, b: u8) -> u8 {
    gf_mul(a, gf_inv(b))
}

/// Lagrange coefficients for evaluating at `target` a polynomial known at
/// the distinct points `nodes`: `l_j(target) = prod_{i != j} (target - x_i)
/// / (x_j - x_i)` with subtraction = XOR in GF(256).
fn lagrange_weights(nodes: &[u8], target: u8) -> Vec<u8> {
    nodes
        .iter()
        .enumerate()
        .map(|(j, &xj)| {
            let mut w = 1u8;
            for (i, &xi) in nodes.iter().enumerate() {
                if i != j {
                    w = gf_mul(w, gf_div(target ^ xi, xj ^ xi));
                }
            }
            w
        })
        .collect()
}

/// Encoded chunks with their indices. Indices `0..k` are the systematic
/// (raw message) chunks; `k..n` are parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChunkSet {
    pub k: usize,
    pub n: usize,
    pub message_len: usize,
    pub chunks: Vec<(u8, Vec<u8>)>,
}

/// Splits `message` into `k` chunks of `ceil(|message|/k)` bytes
/// (zero-padded) and appends `n - k` parity chunks.
pub fn encode(message: &[u8], k: usize, n: usize) -> Result<ChunkSet, Error> {
    if message.is_empty() {
        return Err(Error::Codec("message must be non-empty".into()));
    }
    if k < 1 || k > n {
        return Err(Error::Codec(format!("require 1 <= k = {k} <= n = {n}")));
    }
    if n > 255 {
        return Err(Error::Codec(format!("n = {n} exceeds the GF(256) limit of 255")));
    }
    let chunk_len = message.len().div_ceil(k);
    let mut chunks: Vec<(u8, Vec<u8>)> = (0..k)
        .map(|i| {
            let mut c = vec![0u8; chunk_len];
            let lo = i * chunk_len;
            if lo < message.len() {
                let hi = (lo + chunk_len).min(message.len());
                c[..hi - lo].copy_from_slice(&message[lo..hi]);
            }
            (i as u8, c)
        })
        .collect();
    let nodes: Vec<u8> = (0..k as u8).collect();
    for p in k..n {
        let weights = lagrange_weights(&nodes, p as u8);
        let mut parity = vec![0u8; chunk_len];
        for (j, &w) in weights.iter().enumerate() {
            for (out, &b) in parity.iter_mut().zip(chunks[j].1.iter()) {
                *out ^= gf_mul(w, b);
            }
        }
        chunks.push((p as u8, parity));
    }
    Ok(ChunkSet { k, n, message_len: message.len(), chunks })
}

/// Reconstructs the message from any `k` distinct-index chunks.
pub fn decode(
    chunks: &[(u8, Vec<u8>)],
    k: usize,
    n: usize,
    message_len: usize,
) -> Result<Vec<u8>, Error> {
    if k < 1 || k > n || n > 255 {
        return Err(Error::Codec(format!("invalid (k, n) = ({k}, {n})")));
    }
    let mut seen = [false; 256];
    let mut avail: Vec<&(u8, Vec<u8>)> = Vec::new();
    for c in chunks {
        if c.0 as usize >= n {
            return Err(Error::Codec(format!("chunk index {} out of range [0, {n})", c.0)));
        }
        if !seen[c.0 as usize] {
            seen[c.0 as usize] = true;
            avail.push(c);
        }
    }
    if avail.len() < k {
        return Err(Error::Codec(format!(
            "need {k} distinct chunks to decode, got {}",
            avail.len()
        )));
    }
    avail.truncate(k);
    let chunk_len = avail[0].1.len();
    if avail.iter().any(|c| c.1.len() != chunk_len) {
        return Err(Error::Codec("chunks have inconsistent lengths".into()));
    }
    if chunk_len * k < message_len {
        return Err(Error::Codec(format!(
            "chunks too short for a {message_len}-byte message"
        )));
    }
    let nodes: Vec<u8> = avail.iter().map(|c| c.0).collect();
    let mut data = vec![vec![0u8; chunk_len]; k];
    for (t, out) in data.iter_mut().enumerate() {
        let t = t as u8;
        if let Some(pos) = nodes.iter().position(|&x| x == t) {
            out.copy_from_slice(&avail[pos].1);
            continue;
        }
        let weights = lagrange_weights(&nodes, t);
        for (j, &w) in weights.iter().enumerate() {
            for (o, &b) in out.iter_mut().zip(avail[j].1.iter()) {
                *o ^= gf_mul(w, b);
            }
        }
    }
    let mut message: Vec<u8> = data.into_iter().flatten().collect();
    message.truncate(message_len);
    Ok(message)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        for a in 1..=255u8 {
            assert_eq!(gf_mul(a, gf_inv(a)), 1);
        }
        assert_eq!(gf_mul(0, 7), 0);
        // Distributivity spot check.
        assert_eq!(gf_mul(3, 7 ^ 9), gf_mul(3, 7) ^ gf_mul(3, 9));
    }

    #[test]
    fn identity_code() {
        let set = encode(b"hello", 1, 1).unwrap();
        assert_eq!(set.chunks.len(), 1);
        assert_eq!(set.chunks[0].1, b"hello");
        assert_eq!(decode(&set.chunks, 1, 1, 5).unwrap(), b"hello");
    }

    #[test]
    fn systematic_split_without_parity() {
        let set = encode(b"abcdef", 3, 3).unwrap();
        let parts: Vec<&[u8]> = set.chunks.iter().map(|c| c.1.as_slice()).collect();
        assert_eq!(parts, vec![b"ab", b"cd", b"ef"]);
    }

    #[test]
    fn systematic_chunks_concatenate() {
        let set = encode(b"0123456789", 2, 5).unwrap();
        let sys: Vec<(u8, Vec<u8>)> = set.chunks[..2].to_vec();
        assert_eq!(decode(&sys, 2, 5, 10).unwrap(), b"0123456789");
    }

    #[test]
    fn every_pair_of_three_decodes() {
        let msg = [1u8, 2, 3, 4];
        let set = encode(&msg, 2, 3).unwrap();
        for drop in 0..3 {
            let subset: Vec<(u8, Vec<u8>)> =
                set.chunks.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, c)| c.clone()).collect();
            assert_eq!(decode(&subset, 2, 3, 4).unwrap(), msg);
        }
    }

    #[test]
    fn too_few_chunks_rejected() {
        let set = encode(b"payload", 3, 5).unwrap();
        assert!(decode(&set.chunks[..2], 3, 5, 7).is_err());
        // Duplicate indices do not count twice.
        let dup = vec![set.chunks[0].clone(), set.chunks[0].clone(), set.chunks[0].clone()];
        assert!(decode(&dup, 3, 5, 7).is_err());
    }

    #[test]
    fn inconsistent_lengths_rejected() {
        let set = encode(b"payload!", 2, 4).unwrap();
        let mut bad = set.chunks.clone();
        bad[1].1.pop();
        assert!(decode(&bad[..2], 2, 4, 8).is_err());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(encode(b"", 1, 1).is_err());
        assert!(encode(b"x", 3, 2).is_err());
        assert!(encode(b"x", 1, 256).is_err());
    }

    #[test]
    fn chunk_length_is_ceiling() {
        let set = encode(&[9u8; 10], 3, 5).unwrap();
        assert!(set.chunks.iter().all(|c| c.1.len() == 4));
    }

    // Exhaustive MDS check for all k <= n <= 8: every k-subset decodes.
    #[test]
    fn mds_property_small_scale() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for n in 1..=8usize {
            for k in 1..=n {
                let msg: Vec<u8> = (0..64).map(|_| rng.random()).collect();
                let set = encode(&msg, k, n).unwrap();
                for mask in 0u32..1 << n {
                    if mask.count_ones() as usize != k {
                        continue;
                    }
                    let subset: Vec<(u8, Vec<u8>)> = set
                        .chunks
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, c)| c.clone())
                        .collect();
                    assert_eq!(decode(&subset, k, n, 64).unwrap(), msg, "k={k} n={n} mask={mask:b}");
                }
            }
        }
    }
}
