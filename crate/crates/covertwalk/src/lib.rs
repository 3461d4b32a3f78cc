//! Covert chunked message passing over random-walk relays.
//!
//! A source splits an `m`-bit message into `k` chunks, erasure-codes them
//! into `n` chunks, and deposits them on relays while walking randomly on a
//! complete graph of `s` vertices; a collector later gathers any `k` of
//! them. A warden with a uniform `U(0,W)` monitoring arrival may catch any
//! individual chunk transmission. The crate provides:
//!
//! * [`analytic`] - closed forms for the detection/covertness probabilities
//!   and the expected dissemination, collection, and total times under two
//!   delay models.
//! * [`sim`] - a seeded, reproducible Monte Carlo simulator of the whole
//!   protocol, used to validate the closed forms.
//! * [`codec`] - a systematic k-of-n MDS erasure codec for the end-to-end
//!   demo.
//! * [`optimizer`] - grid evaluation, Pareto frontiers, and the closed-form
//!   optimal redundancy with its exhaustive-search check.
//! * [`sweep`] - the experiment harness behind the CLI: figure presets,
//!   CSV rows, and the flat config format.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `covertwalk` binary for the command-line front end.

pub mod analytic;
pub mod codec;
pub mod optimizer;
pub mod params;
pub mod sim;
pub mod sweep;

pub use params::{DelayModel, SystemParams, WalkModel};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("codec error: {0}")]
    Codec(String),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
