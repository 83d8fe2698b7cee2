//! Seeded randomized campaigns that check every bound on many pairs of
//! random states, plus report writers.
//!
//! Cell `i` of a campaign (one `(dim, ensemble)` pair) samples from the seed
//! stream `substream_seed(seed, i)`; trial `t` uses samples `2t` (rho) and
//! `2t + 1` (sigma) of that stream. Outputs therefore depend only on the
//! configuration, never on the number of worker threads.

mod config;
mod output;
mod run;

pub use config::{resolve_ensemble, CampaignConfig, Cell, OutputFormat};
pub use output::{render_rows, render_summary, summary_path, write_outputs};
pub use run::{
    run_compare_bounds, run_saturate, run_verify, saturation_baselines, BoundRow, CampaignResult,
    CampaignSummary, CheckSummary, CompareRow, ExtremalInstance, SaturationRow,
};

use crate::error::{Error, Result};

/// Runs `f` on a dedicated pool of `threads` workers, or on the global pool
/// when `threads` is `None`.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::Config("threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}
