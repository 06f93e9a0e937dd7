use serde::Serialize;

use super::params::{DetParams, RationalRate};
use super::scheme::{block_rng, random_payload, run_frame, scheme_plan, BlockSeed, DetBlockTrace};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Outcome of a multi-block run.
#[derive(Clone, Debug, Serialize)]
pub struct SimReport {
    pub params: DetParams,
    pub blocks: usize,
    pub decoded_blocks: usize,
    pub rate: RationalRate,
    pub max_feedback_bits: usize,
}

impl SimReport {
    pub fn all_decoded(&self) -> bool {
        self.decoded_blocks == self.blocks
    }
}

/// Runs `blocks` random blocks; block `b` draws its payload from stream `b`
/// of `seed`, so results do not depend on the execution strategy.
///
/// Plans that pair blocks need an even block count.
pub fn simulate(params: &DetParams, blocks: usize, seed: u64, exec: Execution) -> Result<SimReport> {
    let traces = simulate_traces(params, blocks, seed, exec)?;
    Ok(SimReport {
        params: *params,
        blocks,
        decoded_blocks: traces.iter().filter(|t| t.is_success()).count(),
        rate: super::scheme::scheme_rate(params)?,
        max_feedback_bits: traces
            .iter()
            .flat_map(|t| t.fb_bits.iter().map(Vec::len))
            .max()
            .unwrap_or(0),
    })
}

/// As [`simulate`] but returns every block trace.
pub fn simulate_traces(params: &DetParams, blocks: usize, seed: u64, exec: Execution) -> Result<Vec<DetBlockTrace>> {
    let plan = scheme_plan(params)?;
    let frame = plan.frame_len();
    if !blocks.is_multiple_of(frame) {
        return Err(Error::InvalidArgument(format!(
            "this configuration runs blocks in pairs; got an odd count {blocks}"
        )));
    }
    let starts: Vec<usize> = (0..blocks).step_by(frame).collect();
    let frames = exec.try_map(&starts, |&start| -> Result<Vec<DetBlockTrace>> {
        let payloads = (start..start + frame)
            .map(|b| random_payload(params, &mut block_rng(seed, b as u64)))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&[Vec<bool>]> = payloads.iter().map(Vec::as_slice).collect();
        let mut traces = run_frame(params, &plan, &refs)?;
        for (offset, t) in traces.iter_mut().enumerate() {
            t.seed = Some(BlockSeed {
                seed,
                block: (start + offset) as u64,
            });
        }
        Ok(traces)
    })?;
    Ok(frames.into_iter().flatten().collect())
}
