//! The linear deterministic interference channel.

mod channel;
mod gf2;
mod gf4;
mod params;
mod rate;
mod scheme;
mod sim;

pub use channel::channel_apply;
pub use gf2::Gf2Vec;
pub use params::{DetParams, RationalRate};
pub use rate::{csym_infinite, csym_zero, theorem1_rate};
pub use scheme::{
    random_payload, run_block, run_block_pair, run_block_seeded, scheme_plan, scheme_rate, scheme_regime, BlockSeed,
    DetBlockTrace, Forwarding, SchemePlan, SchemeRegime,
};
pub use sim::{simulate, simulate_traces, SimReport};
