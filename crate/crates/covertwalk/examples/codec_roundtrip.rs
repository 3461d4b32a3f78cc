//! k-of-n erasure codec demo: encode a message, drop chunks, decode from
//! every surviving k-subset.
//!
//! Run with: `cargo run --release --example codec_roundtrip`

use covertwalk::codec;

fn main() {
    let message = b"the lighthouse keeper sleeps at noon";
    let (k, n) = (3, 5);

    let set = codec::encode(message, k, n).unwrap();
    println!("message: {} bytes, k={k}, n={n}", message.len());
    for (idx, payload) in &set.chunks {
        let kind = if (*idx as usize) < k { "data  " } else { "parity" };
        println!("  chunk {idx} ({kind}): {} bytes", payload.len());
    }

    // Any k of the n chunks reconstruct the message.
    let mut subsets = 0;
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
        let decoded = codec::decode(&subset, k, n, message.len()).unwrap();
        assert_eq!(decoded, message);
        subsets += 1;
    }
    println!("\ndecoded successfully from all {subsets} possible {k}-subsets");

    match codec::decode(&set.chunks[..k - 1], k, n, message.len()) {
        Err(e) => println!("with only {} chunks: {e}", k - 1),
        Ok(_) => unreachable!(),
    }
}
