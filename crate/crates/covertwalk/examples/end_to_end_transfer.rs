//! Full protocol walkthrough with real payloads: encode a message into
//! k-of-n chunks, deposit them along the source's simulated walk, collect
//! k of them along the collector's walk, decode, and report the warden's
//! verdict. Also prints the start of the event transcript.
//!
//! Run with: `cargo run --release --example end_to_end_transfer`

use covertwalk::params::{DelayModel, WalkModel};
use covertwalk::sim::{self, TrialLog};
use covertwalk::{codec, SystemParams};

fn main() {
    let params = SystemParams::new(50, 10, 10.0, 3, 5, 1.0, 50.0).unwrap();
    let message = b"rendezvous moved to thursday".to_vec();

    let encoded = codec::encode(&message, params.k as usize, params.n as usize).unwrap();
    println!(
        "encoded {} bytes into {} chunks of {} bytes ({} data + {} parity)",
        message.len(),
        params.n,
        encoded.chunks[0].1.len(),
        params.k,
        params.n - params.k
    );

    let mut rng = sim::trial_rng(7, 0);
    let mut log = TrialLog::new(0);
    let (outcome, collected) = sim::run_trial_detailed(
        &mut rng,
        &params,
        DelayModel::Model1,
        WalkModel::IidUniform,
        Some(&mut log),
    );

    println!(
        "\nsource walk: {} vertices, {:.2} time units to deposit all {} chunks",
        outcome.dissemination_steps, outcome.dissemination_time, params.n
    );
    println!(
        "collector walk: {} vertices, {:.2} time units, harvested chunks {:?}",
        outcome.collection_steps, outcome.collection_time, collected
    );
    println!(
        "warden verdict: {}",
        if outcome.detected { "DETECTED" } else { "covert" }
    );

    let chunks: Vec<(u8, Vec<u8>)> =
        collected.iter().map(|&i| encoded.chunks[i as usize].clone()).collect();
    let recovered =
        codec::decode(&chunks, params.k as usize, params.n as usize, message.len()).unwrap();
    assert_eq!(recovered, message);
    println!("recovered: {:?}", String::from_utf8(recovered).unwrap());

    println!("\nfirst transcript events:");
    let mut buf = Vec::new();
    sim::write_transcript(&mut buf, &log.events[..8.min(log.events.len())]).unwrap();
    print!("{}", String::from_utf8(buf).unwrap());
}
