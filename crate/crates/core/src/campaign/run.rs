use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{CampaignConfig, Cell};
use crate::bounds::{
    bound_report, bound_report_from_eig, mixture_rhs, saturation_from_report, BoundReport,
};
use crate::error::Result;
use crate::linalg::support_rank;
use crate::metrics::{
    brute_force_povm_extrema, fidelity_from_eig, fuchs_caves_measurement, helstrom_measurement,
    support_leak, ExtendedReal,
};
use crate::states::{sample_state, DensityMatrix, StateFile};
use crate::tolerances::Tolerances;

/// One CSV/JSON row of a verification campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub dim: usize,
    pub ensemble: String,
    pub trial: u64,
    pub fidelity: f64,
    pub trace_norm: f64,
    pub s_max: ExtendedReal,
    pub lambda0: ExtendedReal,
    pub fvdg_lower: f64,
    pub fvdg_upper: f64,
    pub new_lower: f64,
    pub gap_new_vs_fvdg: f64,
    pub fvdg_saturated: bool,
}

/// One row of the saturation search, ranked by `slack = F - (1 - T/2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaturationRow {
    /// `random`, or the name of a constructed baseline pair.
    pub source: String,
    pub dim: usize,
    pub ensemble: String,
    pub trial: Option<u64>,
    pub slack: f64,
    pub fvdg_lower_saturated: bool,
    pub s_max_infinite: bool,
    pub states_equal: bool,
    pub implication_holds: bool,
    pub fidelity: f64,
    pub trace_norm: f64,
    pub s_max: ExtendedReal,
}

/// Plot-ready comparison of the two lower bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub dim: usize,
    pub ensemble: String,
    pub trial: u64,
    pub trace_norm: f64,
    pub s_max: ExtendedReal,
    pub fvdg_lower: f64,
    pub new_lower: f64,
    pub fidelity: f64,
    pub gap_new_vs_fvdg: f64,
}

/// Tally of one inequality over a campaign. A check is violated when
/// `slack < -allowance`; only asserted checks count toward
/// `total_violations`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub asserted: bool,
    pub allowance: f64,
    pub evaluated: u64,
    pub violations: u64,
    pub min_slack: Option<f64>,
    pub max_slack: Option<f64>,
}

/// A pair of states singled out by the campaign, stored in full so it can
/// be re-checked after reloading.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalInstance {
    pub label: String,
    pub dim: usize,
    pub ensemble: String,
    pub trial: u64,
    pub value: f64,
    pub rho: StateFile,
    pub sigma: StateFile,
}

impl ExtremalInstance {
    /// Recomputes `value` from the stored states.
    pub fn reverify(&self, tol: &Tolerances) -> Result<f64> {
        let rho = self.rho.to_state(tol)?;
        let sigma = self.sigma.to_state(tol)?;
        let r = bound_report(&rho, &sigma, tol)?;
        Ok(match self.label.as_str() {
            MAX_GAP => r.gap_new_vs_fvdg,
            _ => r.fidelity - r.new_lower,
        })
    }
}

const MAX_GAP: &str = "max_gap_new_vs_fvdg";
const MIN_BOUND_SLACK: &str = "min_slack_new_lower_le_fidelity";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: CampaignConfig,
    pub cells: u64,
    pub trials: u64,
    pub checks: Vec<CheckSummary>,
    pub total_violations: u64,
    pub extremal: Vec<ExtremalInstance>,
}

impl CampaignSummary {
    fn new(command: &str, cfg: &CampaignConfig, cells: usize, checks: Vec<CheckSummary>) -> Self {
        let trials = cells as u64 * cfg.trials_per_cell;
        let total_violations = checks
            .iter()
            .filter(|c| c.asserted)
            .map(|c| c.violations)
            .sum();
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config: cfg.clone(),
            cells: cells as u64,
            trials,
            checks,
            total_violations,
            extremal: Vec::new(),
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignResult<R> {
    pub rows: Vec<R>,
    pub summary: CampaignSummary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Check {
    FvdgLowerLeNew,
    NewLeFidelity,
    FidelityLeFvdgUpper,
    Mixture,
    MixtureEndpoints,
    HelstromAttainment,
    FcDataProcessing,
    FcAttainment,
    SaturationImplication,
    GridL1,
    GridFidelity,
    GridConvergence,
    GapNonnegative,
}

impl Check {
    /// `(name, allowance, asserted)`
    fn spec(self) -> (&'static str, f64, bool) {
        match self {
            Check::FvdgLowerLeNew => ("fvdg_lower_le_new_lower", 1e-12, true),
            Check::NewLeFidelity => ("new_lower_le_fidelity", 1e-8, true),
            Check::FidelityLeFvdgUpper => ("fidelity_le_fvdg_upper", 1e-8, true),
            Check::Mixture => ("mixture_bound", 1e-8, true),
            Check::MixtureEndpoints => ("mixture_endpoints", 1e-10, true),
            Check::HelstromAttainment => ("helstrom_attainment", 1e-8, true),
            Check::FcDataProcessing => ("fuchs_caves_ge_fidelity", 1e-8, true),
            Check::FcAttainment => ("fuchs_caves_attainment", 1e-7, true),
            // Slack is 0 when the implication holds and -1 when it fails.
            Check::SaturationImplication => ("saturation_implication", 0.0, true),
            Check::GridL1 => ("grid_l1_le_trace_norm", 1e-9, true),
            Check::GridFidelity => ("grid_fidelity_ge_fidelity", 1e-9, true),
            Check::GridConvergence => ("grid_convergence", 1e-3, false),
            Check::GapNonnegative => ("gap_nonnegative", 1e-12, true),
        }
    }
}

type Observations = Vec<(Check, f64)>;

fn tally(order: &[Check], obs: &[Observations]) -> Vec<CheckSummary> {
    order
        .iter()
        .map(|&check| {
            let (name, allowance, asserted) = check.spec();
            let mut s = CheckSummary {
                name: name.into(),
                asserted,
                allowance,
                evaluated: 0,
                violations: 0,
                min_slack: None,
                max_slack: None,
            };
            for &(_, slack) in obs.iter().flatten().filter(|(c, _)| *c == check) {
                s.evaluated += 1;
                if slack < -allowance {
                    s.violations += 1;
                }
                s.min_slack = Some(s.min_slack.map_or(slack, |m| m.min(slack)));
                s.max_slack = Some(s.max_slack.map_or(slack, |m| m.max(slack)));
            }
            s
        })
        .collect()
}

fn sample_pair(cell: &Cell, trial: u64) -> Result<(DensityMatrix, DensityMatrix)> {
    Ok((
        sample_state(&cell.spec, 2 * trial)?,
        sample_state(&cell.spec, 2 * trial + 1)?,
    ))
}

/// Evaluates `f` on every trial of every cell. Trials within a cell run in
/// parallel; results come back in `(cell, trial)` order regardless of the
/// thread count.
fn for_each_trial<T, F>(cfg: &CampaignConfig, cells: &[Cell], f: F) -> Result<Vec<(usize, u64, T)>>
where
    T: Send,
    F: Fn(&Cell, u64, &DensityMatrix, &DensityMatrix) -> Result<T> + Sync,
{
    let mut out = Vec::with_capacity(cells.len() * cfg.trials_per_cell as usize);
    for (ci, cell) in cells.iter().enumerate() {
        let results: Vec<Result<T>> = (0..cfg.trials_per_cell)
            .into_par_iter()
            .map(|trial| {
                let (rho, sigma) = sample_pair(cell, trial)?;
                f(cell, trial, &rho, &sigma)
            })
            .collect();
        for (trial, r) in results.into_iter().enumerate() {
            out.push((ci, trial as u64, r?));
        }
    }
    Ok(out)
}

fn bound_row(cell: &Cell, trial: u64, r: &BoundReport, tol: &Tolerances) -> BoundRow {
    BoundRow {
        dim: cell.dim,
        ensemble: cell.label(),
        trial,
        fidelity: r.fidelity,
        trace_norm: r.trace_norm,
        s_max: r.s_max,
        lambda0: r.lambda0,
        fvdg_lower: r.fvdg_lower,
        fvdg_upper: r.fvdg_upper,
        new_lower: r.new_lower,
        gap_new_vs_fvdg: r.gap_new_vs_fvdg,
        fvdg_saturated: saturation_from_report(*r, tol).fvdg_lower_saturated,
    }
}

fn verify_trial(
    cfg: &CampaignConfig,
    cell: &Cell,
    trial: u64,
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
) -> Result<(BoundReport, Observations)> {
    let tol = &cfg.tolerances;
    let er = rho.eig(tol)?;
    let es = sigma.eig(tol)?;
    let r = bound_report_from_eig(rho, &er, sigma, &es, tol)?;
    let mut obs = vec![
        (Check::FvdgLowerLeNew, r.new_lower - r.fvdg_lower),
        (Check::NewLeFidelity, r.fidelity - r.new_lower),
        (Check::FidelityLeFvdgUpper, r.fvdg_upper - r.fidelity),
    ];

    for &lambda in &cfg.lambda_grid {
        let mixed = rho.mix(sigma, lambda)?;
        let em = mixed.eig(tol)?;
        let lhs = fidelity_from_eig(rho, &er, &mixed, &em, tol)?;
        let rhs = mixture_rhs(lambda, r.trace_norm);
        obs.push((Check::Mixture, lhs - rhs));
        if lambda == 0.0 {
            let dev = (lhs - r.fidelity).abs().max((rhs - r.fvdg_lower).abs());
            obs.push((Check::MixtureEndpoints, -dev));
        } else if lambda == 1.0 {
            let dev = (lhs - 1.0).abs().max((rhs - 1.0).abs());
            obs.push((Check::MixtureEndpoints, -dev));
        }
    }

    let helstrom = helstrom_measurement(rho, sigma, tol)?;
    obs.push((
        Check::HelstromAttainment,
        -(helstrom.achieved - r.trace_norm).abs(),
    ));

    let fc = fuchs_caves_measurement(rho, sigma, tol.rank_tol, tol)?;
    obs.push((Check::FcDataProcessing, fc.achieved - r.fidelity));
    // The optimal-measurement construction is exact when one support
    // contains the other or one state is pure.
    let exact = !r.lambda0.is_infinite()
        || support_leak(sigma, &er, tol.rank_tol) <= tol.support_leak_tol
        || support_rank(&er, tol.rank_tol) == 1
        || support_rank(&es, tol.rank_tol) == 1;
    if exact {
        obs.push((Check::FcAttainment, -(fc.achieved - r.fidelity).abs()));
    }

    let sat = saturation_from_report(r, tol);
    obs.push((
        Check::SaturationImplication,
        if sat.implication_holds() { 0.0 } else { -1.0 },
    ));

    if cell.dim == 2 && trial < cfg.brute_force_trials {
        let g = brute_force_povm_extrema(rho, sigma, cfg.grid_resolution)?;
        obs.push((Check::GridL1, r.trace_norm - g.max_l1));
        obs.push((Check::GridFidelity, g.min_fid - r.fidelity));
        let dev = (r.trace_norm - g.max_l1)
            .abs()
            .max((g.min_fid - r.fidelity).abs());
        obs.push((Check::GridConvergence, -dev));
    }
    Ok((r, obs))
}

/// Runs every inequality check on `trials_per_cell` random pairs per cell.
pub fn run_verify(cfg: &CampaignConfig) -> Result<CampaignResult<BoundRow>> {
    cfg.validate()?;
    let cells = cfg.cells()?;
    let results = for_each_trial(cfg, &cells, |cell, trial, rho, sigma| {
        verify_trial(cfg, cell, trial, rho, sigma)
    })?;

    let mut rows = Vec::with_capacity(results.len());
    let mut obs = Vec::with_capacity(results.len());
    let mut max_gap: Option<(usize, u64, f64)> = None;
    let mut min_slack: Option<(usize, u64, f64)> = None;
    for (ci, trial, (r, o)) in results {
        rows.push(bound_row(&cells[ci], trial, &r, &cfg.tolerances));
        obs.push(o);
        if max_gap.is_none_or(|(_, _, v)| r.gap_new_vs_fvdg > v) {
            max_gap = Some((ci, trial, r.gap_new_vs_fvdg));
        }
        let slack = r.fidelity - r.new_lower;
        if min_slack.is_none_or(|(_, _, v)| slack < v) {
            min_slack = Some((ci, trial, slack));
        }
    }

    use Check::*;
    let order = [
        FvdgLowerLeNew,
        NewLeFidelity,
        FidelityLeFvdgUpper,
        Mixture,
        MixtureEndpoints,
        HelstromAttainment,
        FcDataProcessing,
        FcAttainment,
        SaturationImplication,
        GridL1,
        GridFidelity,
        GridConvergence,
    ];
    let mut summary = CampaignSummary::new("verify", cfg, cells.len(), tally(&order, &obs));
    for (label, pick) in [(MAX_GAP, max_gap), (MIN_BOUND_SLACK, min_slack)] {
        if let Some((ci, trial, value)) = pick {
            let cell = &cells[ci];
            let (rho, sigma) = sample_pair(cell, trial)?;
            summary.extremal.push(ExtremalInstance {
                label: label.into(),
                dim: cell.dim,
                ensemble: cell.label(),
                trial,
                value,
                rho: StateFile::from_state(&rho),
                sigma: StateFile::from_state(&sigma),
            });
        }
    }
    Ok(CampaignResult { rows, summary })
}

fn saturation_row(
    source: &str,
    dim: usize,
    ensemble: String,
    trial: Option<u64>,
    r: BoundReport,
    tol: &Tolerances,
) -> SaturationRow {
    let s = saturation_from_report(r, tol);
    SaturationRow {
        source: source.into(),
        dim,
        ensemble,
        trial,
        slack: s.fvdg_slack(),
        fvdg_lower_saturated: s.fvdg_lower_saturated,
        s_max_infinite: s.s_max_infinite,
        states_equal: s.states_equal,
        implication_holds: s.implication_holds(),
        fidelity: r.fidelity,
        trace_norm: r.trace_norm,
        s_max: r.s_max,
    }
}

/// Constructed pairs with known saturation behaviour in dimension `d >= 2`:
/// orthogonal pure states, equal states, and a pure pair with S_max = +inf
/// that does not saturate.
pub fn saturation_baselines(d: usize) -> Vec<(&'static str, DensityMatrix, DensityMatrix)> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut plus = vec![num_complex::Complex64::new(0.0, 0.0); d];
    plus[0] = num_complex::Complex64::new(s, 0.0);
    plus[1] = num_complex::Complex64::new(s, 0.0);
    let plus = DensityMatrix::pure(&plus).expect("unit vector");
    vec![
        (
            "baseline_orthogonal_pure",
            DensityMatrix::basis(d, 0),
            DensityMatrix::basis(d, 1),
        ),
        (
            "baseline_equal",
            DensityMatrix::maximally_mixed(d),
            DensityMatrix::maximally_mixed(d),
        ),
        ("baseline_converse", plus, DensityMatrix::basis(d, 0)),
    ]
}

/// Ranks random pairs by their distance to saturating `F >= 1 - T/2`, keeps
/// the `top_k` closest, and appends the constructed baselines.
pub fn run_saturate(cfg: &CampaignConfig) -> Result<CampaignResult<SaturationRow>> {
    cfg.validate()?;
    let tol = &cfg.tolerances;
    let cells = cfg.cells()?;
    let results = for_each_trial(cfg, &cells, |_, _, rho, sigma| {
        bound_report(rho, sigma, tol)
    })?;

    let mut all: Vec<SaturationRow> = results
        .into_iter()
        .map(|(ci, trial, r)| {
            saturation_row(
                "random",
                cells[ci].dim,
                cells[ci].label(),
                Some(trial),
                r,
                tol,
            )
        })
        .collect();
    let mut obs: Vec<Observations> = all
        .iter()
        .map(|row| {
            vec![(
                Check::SaturationImplication,
                if row.implication_holds { 0.0 } else { -1.0 },
            )]
        })
        .collect();
    // Stable sort keeps (cell, trial) order among equal slacks.
    all.sort_by(|a, b| a.slack.total_cmp(&b.slack));
    all.truncate(cfg.top_k);

    let d = cfg
        .dims
        .iter()
        .copied()
        .filter(|&d| d >= 2)
        .min()
        .unwrap_or(2);
    for (name, rho, sigma) in saturation_baselines(d) {
        let row = saturation_row(
            name,
            d,
            "constructed".into(),
            None,
            bound_report(&rho, &sigma, tol)?,
            tol,
        );
        obs.push(vec![(
            Check::SaturationImplication,
            if row.implication_holds { 0.0 } else { -1.0 },
        )]);
        all.push(row);
    }
    let summary = CampaignSummary::new(
        "saturate",
        cfg,
        cells.len(),
        tally(&[Check::SaturationImplication], &obs),
    );
    Ok(CampaignResult { rows: all, summary })
}

/// Both lower bounds and the fidelity for every random pair.
pub fn run_compare_bounds(cfg: &CampaignConfig) -> Result<CampaignResult<CompareRow>> {
    cfg.validate()?;
    let tol = &cfg.tolerances;
    let cells = cfg.cells()?;
    let results = for_each_trial(cfg, &cells, |_, _, rho, sigma| {
        bound_report(rho, sigma, tol)
    })?;
    let rows: Vec<CompareRow> = results
        .into_iter()
        .map(|(ci, trial, r)| CompareRow {
            dim: cells[ci].dim,
            ensemble: cells[ci].label(),
            trial,
            trace_norm: r.trace_norm,
            s_max: r.s_max,
            fvdg_lower: r.fvdg_lower,
            new_lower: r.new_lower,
            fidelity: r.fidelity,
            gap_new_vs_fvdg: r.gap_new_vs_fvdg,
        })
        .collect();
    let obs: Vec<Observations> = rows
        .iter()
        .map(|r| vec![(Check::GapNonnegative, r.gap_new_vs_fvdg)])
        .collect();
    let summary = CampaignSummary::new(
        "compare-bounds",
        cfg,
        cells.len(),
        tally(&[Check::GapNonnegative], &obs),
    );
    Ok(CampaignResult { rows, summary })
}
