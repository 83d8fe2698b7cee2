use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::substream_seed;
use crate::states::{EnsembleKind, EnsembleSpec};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Config(format!(
                "unknown format '{s}' (expected csv or json)"
            ))),
        }
    }
}

/// Randomized campaign settings. Every field has a default, so a config file
/// only needs the entries it changes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub dims: Vec<usize>,
    /// Ensemble names; `rank_deficient` without `:k` uses `k = max(1, d / 2)`.
    pub ensembles: Vec<String>,
    pub trials_per_cell: u64,
    pub seed: u64,
    pub lambda_grid: Vec<f64>,
    pub tolerances: Tolerances,
    /// Not echoed in summaries, so that runs differing only in destination
    /// produce identical artifacts.
    #[serde(skip_serializing)]
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    /// Number of leading trials per qubit cell checked against the grid
    /// oracle.
    pub brute_force_trials: u64,
    pub grid_resolution: usize,
    /// Rows kept by the saturation search.
    pub top_k: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            dims: vec![2, 3, 4],
            ensembles: ["pure_haar", "hilbert_schmidt", "bures", "rank_deficient"]
                .map(String::from)
                .to_vec(),
            trials_per_cell: 100,
            seed: 2024,
            lambda_grid: (0..=10).map(|i| i as f64 / 10.0).collect(),
            tolerances: Tolerances::DEFAULT,
            output_path: None,
            format: OutputFormat::Csv,
            brute_force_trials: 10,
            grid_resolution: 200,
            top_k: 10,
        }
    }
}

/// One `(dim, ensemble)` combination of a campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub index: u64,
    pub dim: usize,
    pub kind: EnsembleKind,
    pub spec: EnsembleSpec,
}

impl Cell {
    pub fn label(&self) -> String {
        self.kind.to_string()
    }
}

pub fn resolve_ensemble(name: &str, dim: usize) -> Result<EnsembleKind> {
    if name == "rank_deficient" {
        return Ok(EnsembleKind::RankDeficient((dim / 2).max(1)));
    }
    name.parse()
        .map_err(|_| Error::Config(format!("unknown ensemble '{name}'")))
}

impl CampaignConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.dims.is_empty() || self.dims.contains(&0) {
            return fail("dims must be a non-empty list of positive integers".into());
        }
        if self.ensembles.is_empty() {
            return fail("ensembles must not be empty".into());
        }
        if self.trials_per_cell == 0 {
            return fail("trials_per_cell must be at least 1".into());
        }
        if let Some(l) = self.lambda_grid.iter().find(|l| !(0.0..=1.0).contains(*l)) {
            return fail(format!("lambda_grid value {l} outside [0, 1]"));
        }
        if self.grid_resolution == 0 {
            return fail("grid_resolution must be positive".into());
        }
        let t = &self.tolerances;
        let positive = [
            t.herm_tol,
            t.psd_tol,
            t.trace_tol,
            t.fn_tol,
            t.rank_tol,
            t.spectral_floor,
            t.support_leak_tol,
            t.deg_tol,
            t.sat_tol,
            t.povm_tol,
            t.prob_clamp_tol,
            t.recon_tol,
            t.jacobi_rel_tol,
        ];
        if positive.iter().any(|x| !(x.is_finite() && *x > 0.0)) || t.jacobi_max_sweeps == 0 {
            return fail("tolerances must be positive and finite".into());
        }
        self.cells().map(|_| ())
    }

    /// Cells in `dims`-major order; cell `i` draws from the seed stream
    /// `substream_seed(seed, i)`.
    pub fn cells(&self) -> Result<Vec<Cell>> {
        let mut out = Vec::new();
        for &dim in &self.dims {
            for name in &self.ensembles {
                let kind = resolve_ensemble(name, dim)?;
                let index = out.len() as u64;
                let spec = EnsembleSpec::new(kind, dim, substream_seed(self.seed, index))
                    .map_err(|e| Error::Config(format!("ensemble '{name}' at d = {dim}: {e}")))?;
                out.push(Cell {
                    index,
                    dim,
                    kind,
                    spec,
                });
            }
        }
        Ok(out)
    }
}
