//! Sizing: grid search, differential-evolution refinement and parameter sweeps.
//!
//! Every configuration is scored by its NPV. Dispatch results are cached per
//! configuration, so sweeps that only change investment-cost factors reuse the
//! operating costs.

pub mod de;
mod io;

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dispatch::{self, DispatchError, DispatchOptions, DispatchOutcome, SystemConfig};
use crate::economics::{self, CostBreakdown, EconomicsError, InvestmentCost, InvestmentModel, NpvParams};
use crate::market::Scenario;
use crate::thermo::{self, BatteryParams, SteamSystemParams};

pub use de::{differential_evolution, DeGeneration, DeParams, DeResult};
pub use io::{write_de_trace_csv, write_sensitivity_csv, write_sweep_csv, SENSITIVITY_COLUMNS};

/// Score given to configurations that cannot meet the steam demand.
pub const INFEASIBLE_NPV: f64 = -1e12;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search setup: {0}")]
    Config(String),
    #[error("evaluation of {config} failed: {source}")]
    Evaluation {
        config: String,
        #[source]
        source: Box<EvalError>,
    },
    #[error("no feasible boiler-only configuration with P_eb_max in [{lo:.0}, {hi:.0}] W")]
    NoFeasibleReference { lo: f64, hi: f64 },
    #[error("no feasible configuration in the search space")]
    NoFeasibleCell,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Dispatch(#[from] DispatchError),
    #[error(transparent)]
    Economics(#[from] EconomicsError),
}

fn describe(c: &SystemConfig) -> String {
    format!(
        "(M_sa_max = {} kg, P_eb_max = {} W, Q_b_max = {} Wh, c_rate = {} 1/h, T0 = {} K)",
        c.m_sa_max, c.p_eb_max, c.q_b_max, c.c_rate, c.t0
    )
}

/// Evenly spaced axis values, end points included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Range {
    pub fn fixed(v: f64) -> Self {
        Self { min: v, max: v, points: 1 }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points <= 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| if i + 1 == self.points { self.max } else { self.min + step * i as f64 })
            .collect()
    }

    fn validate(&self, name: &str) -> Result<(), SearchError> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min >= 0.0 && self.min <= self.max) {
            return Err(SearchError::Config(format!(
                "{name} range [{}, {}] must satisfy 0 <= min <= max",
                self.min, self.max
            )));
        }
        if self.points < 1 {
            return Err(SearchError::Config(format!("{name} needs at least one grid point")));
        }
        Ok(())
    }
}

/// A capacity axis of the configuration space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Capacity {
    MSaMax,
    PEbMax,
    QBMax,
    CRate,
}

impl Capacity {
    pub const ALL: [Capacity; 4] = [Capacity::MSaMax, Capacity::PEbMax, Capacity::QBMax, Capacity::CRate];

    /// CSV column name, unit included.
    pub fn column(&self) -> &'static str {
        match self {
            Capacity::MSaMax => "m_sa_max_kg",
            Capacity::PEbMax => "p_eb_max_w",
            Capacity::QBMax => "q_b_max_wh",
            Capacity::CRate => "c_rate_per_h",
        }
    }

    pub fn get(&self, c: &SystemConfig) -> f64 {
        match self {
            Capacity::MSaMax => c.m_sa_max,
            Capacity::PEbMax => c.p_eb_max,
            Capacity::QBMax => c.q_b_max,
            Capacity::CRate => c.c_rate,
        }
    }

    pub fn set(&self, c: &mut SystemConfig, v: f64) {
        match self {
            Capacity::MSaMax => c.m_sa_max = v,
            Capacity::PEbMax => c.p_eb_max = v,
            Capacity::QBMax => c.q_b_max = v,
            Capacity::CRate => c.c_rate = v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchSpace {
    pub m_sa_max: Range,
    pub p_eb_max: Range,
    pub q_b_max: Range,
    pub c_rate: Range,
    /// Inlet temperature shared by every configuration, K.
    pub t0: f64,
}

impl SearchSpace {
    pub fn range(&self, axis: Capacity) -> Range {
        match axis {
            Capacity::MSaMax => self.m_sa_max,
            Capacity::PEbMax => self.p_eb_max,
            Capacity::QBMax => self.q_b_max,
            Capacity::CRate => self.c_rate,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        for axis in Capacity::ALL {
            self.range(axis).validate(axis.column())?;
        }
        if self.q_b_max.max > 0.0 && self.c_rate.min <= 0.0 {
            return Err(SearchError::Config("c_rate must be positive when battery capacities are searched".into()));
        }
        if !(self.t0.is_finite() && self.t0 > 0.0) {
            return Err(SearchError::Config(format!("inlet temperature {} K must be positive", self.t0)));
        }
        Ok(())
    }

    /// Grid points in row-major order over (M_sa, P_eb, Q_b, c_rate).
    pub fn grid(&self) -> Vec<SystemConfig> {
        let mut out = Vec::new();
        for &m in &self.m_sa_max.values() {
            for &p in &self.p_eb_max.values() {
                for &q in &self.q_b_max.values() {
                    for &c in &self.c_rate.values() {
                        out.push(SystemConfig {
                            p_eb_max: p,
                            m_sa_max: m,
                            q_b_max: q,
                            c_rate: c,
                            t0: self.t0,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn bounds(&self) -> Vec<(f64, f64)> {
        Capacity::ALL.iter().map(|a| (self.range(*a).min, self.range(*a).max)).collect()
    }

    pub fn config_at(&self, x: &[f64]) -> SystemConfig {
        let mut c = SystemConfig::boiler_only(0.0);
        c.t0 = self.t0;
        for (a, v) in Capacity::ALL.iter().zip(x) {
            a.set(&mut c, *v);
        }
        c
    }

    pub fn point_of(c: &SystemConfig) -> Vec<f64> {
        Capacity::ALL.iter().map(|a| a.get(c)).collect()
    }
}

/// Operating result of one configuration, annualised.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Operation {
    Feasible { annual: CostBreakdown, peak_grid_power: f64 },
    Infeasible { detail: String },
}

/// A scored configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub config: SystemConfig,
    pub investment: InvestmentCost,
    pub operation: Operation,
    /// `None` when infeasible.
    pub npv: Option<f64>,
}

impl Evaluation {
    pub fn feasible(&self) -> bool {
        self.npv.is_some()
    }

    pub fn score(&self) -> f64 {
        self.npv.unwrap_or(INFEASIBLE_NPV)
    }

    pub fn annual(&self) -> Option<&CostBreakdown> {
        match &self.operation {
            Operation::Feasible { annual, .. } => Some(annual),
            Operation::Infeasible { .. } => None,
        }
    }

    /// Higher NPV wins; near-ties go to the cheaper investment, then to the
    /// lexicographically smaller capacities.
    pub fn better_than(&self, other: &Evaluation) -> bool {
        let (a, b) = (self.score(), other.score());
        let tie = (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()));
        if !tie {
            return a > b;
        }
        if self.investment.total != other.investment.total {
            return self.investment.total < other.investment.total;
        }
        SearchSpace::point_of(&self.config) < SearchSpace::point_of(&other.config)
    }
}

fn pick_best<'a>(it: impl IntoIterator<Item = &'a Evaluation>) -> Option<&'a Evaluation> {
    it.into_iter().fold(None, |best: Option<&Evaluation>, e| match best {
        Some(b) if !e.better_than(b) => Some(b),
        _ => Some(e),
    })
}

type Key = [u64; 5];

fn key(c: &SystemConfig) -> Key {
    // The C-rate is irrelevant without a battery.
    let rate = if c.q_b_max > 0.0 { c.c_rate } else { 0.0 };
    [c.p_eb_max, c.m_sa_max, c.q_b_max, rate, c.t0].map(f64::to_bits)
}

/// Scores configurations against one scenario.
pub struct Evaluator {
    pub scenario: Scenario,
    pub params: SteamSystemParams,
    pub battery: BatteryParams,
    pub npv: NpvParams,
    pub tol: f64,
    cache: Mutex<HashMap<Key, Operation>>,
}

impl Evaluator {
    pub fn new(scenario: Scenario, params: SteamSystemParams, battery: BatteryParams, npv: NpvParams) -> Self {
        Self {
            scenario,
            params,
            battery,
            npv,
            tol: crate::lp::DEFAULT_TOL,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Number of distinct dispatch problems solved so far.
    pub fn solved(&self) -> usize {
        self.cache.lock().map(|c| c.len()).unwrap_or(0)
    }

    pub fn operate(&self, config: &SystemConfig) -> Result<Operation, SearchError> {
        let k = key(config);
        if let Some(op) = self.cache.lock().ok().and_then(|c| c.get(&k).cloned()) {
            return Ok(op);
        }
        let op = self.operate_uncached(config).map_err(|e| SearchError::Evaluation {
            config: describe(config),
            source: Box::new(e),
        })?;
        if let Ok(mut c) = self.cache.lock() {
            c.insert(k, op.clone());
        }
        Ok(op)
    }

    fn operate_uncached(&self, config: &SystemConfig) -> Result<Operation, EvalError> {
        let mut cfg = *config;
        if cfg.q_b_max <= 0.0 {
            cfg.c_rate = 0.0;
        }
        let opts = DispatchOptions {
            tol: self.tol,
            ..DispatchOptions::default()
        };
        match dispatch::solve_dispatch_with(&self.scenario, &cfg, &self.params, &self.battery, &opts)? {
            DispatchOutcome::Optimal(r) => {
                let horizon = economics::cost_breakdown(&r, &self.scenario)?;
                Ok(Operation::Feasible {
                    annual: horizon.annualized(self.scenario.annualization),
                    peak_grid_power: r.peak_grid_power,
                })
            }
            DispatchOutcome::Infeasible(i) => Ok(Operation::Infeasible { detail: i.detail }),
        }
    }

    pub fn evaluate(&self, config: &SystemConfig, model: &InvestmentModel) -> Result<Evaluation, SearchError> {
        let operation = self.operate(config)?;
        let investment = economics::investment_cost(config, model);
        let npv = match &operation {
            Operation::Feasible { annual, .. } => Some(economics::npv(annual, investment.total, &self.npv)),
            Operation::Infeasible { .. } => None,
        };
        Ok(Evaluation {
            config: *config,
            investment,
            operation,
            npv,
        })
    }

    fn evaluate_all(&self, configs: &[SystemConfig], model: &InvestmentModel) -> Result<Vec<Evaluation>, SearchError> {
        let results: Vec<_> = configs.par_iter().map(|c| self.evaluate(c, model)).collect();
        results.into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    /// CSV column name, unit included.
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    /// One value per axis.
    pub coords: Vec<f64>,
    pub evaluation: Evaluation,
    /// NPV minus the reference NPV; `None` when infeasible.
    pub delta_npv: Option<f64>,
    /// NPV gain over the same capacities at the baseline inlet temperature.
    pub gain_vs_baseline: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axes: Vec<Axis>,
    pub reference_npv: f64,
    pub cells: Vec<SweepCell>,
}

impl SweepResult {
    pub fn best(&self) -> Option<&SweepCell> {
        let best = pick_best(self.cells.iter().filter(|c| c.evaluation.feasible()).map(|c| &c.evaluation))?;
        self.cells.iter().find(|c| std::ptr::eq(&c.evaluation, best))
    }

    pub fn feasible_count(&self) -> usize {
        self.cells.iter().filter(|c| c.evaluation.feasible()).count()
    }
}

fn cell(coords: Vec<f64>, evaluation: Evaluation, reference_npv: f64) -> SweepCell {
    SweepCell {
        coords,
        delta_npv: evaluation.npv.map(|n| economics::delta_npv(n, reference_npv)),
        evaluation,
        gain_vs_baseline: None,
    }
}

/// Evaluates every grid point. Results are in grid order whatever the degree
/// of parallelism.
pub fn grid_search(
    space: &SearchSpace,
    evaluator: &Evaluator,
    model: &InvestmentModel,
    reference_npv: f64,
) -> Result<SweepResult, SearchError> {
    space.validate()?;
    let configs = space.grid();
    let evals = evaluator.evaluate_all(&configs, model)?;
    let axes = Capacity::ALL
        .iter()
        .map(|a| Axis {
            name: a.column().into(),
            values: space.range(*a).values(),
        })
        .collect();
    let cells = evals
        .into_iter()
        .map(|e| cell(SearchSpace::point_of(&e.config), e, reference_npv))
        .collect();
    Ok(SweepResult {
        axes,
        reference_npv,
        cells,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceOptions {
    /// Largest boiler considered, W.
    pub p_eb_upper: f64,
    pub scan_points: usize,
    /// Golden-section stopping width, W.
    pub resolution: f64,
    pub t0: f64,
}

impl Default for ReferenceOptions {
    fn default() -> Self {
        Self {
            p_eb_upper: 4.0e6,
            scan_points: 9,
            resolution: 1.0e3,
            t0: 283.0,
        }
    }
}

/// Best boiler-only configuration. The boiler must at least cover the peak
/// demand; above that the NPV is scanned and refined by golden-section search
/// around the best scan point.
pub fn optimize_reference(
    evaluator: &Evaluator,
    model: &InvestmentModel,
    opts: &ReferenceOptions,
) -> Result<Evaluation, SearchError> {
    let dh = thermo::total_enthalpy(&evaluator.params, opts.t0)
        .map_err(|e| SearchError::Config(e.to_string()))?;
    let lo = evaluator.scenario.max_demand() * dh * 1e3;
    let hi = opts.p_eb_upper;
    if !(lo <= hi) {
        return Err(SearchError::NoFeasibleReference { lo, hi });
    }
    let at = |p: f64| SystemConfig {
        t0: opts.t0,
        ..SystemConfig::boiler_only(p)
    };
    let n = opts.scan_points.max(2);
    let scan: Vec<f64> = Range { min: lo, max: hi, points: n }.values();
    let configs: Vec<SystemConfig> = scan.iter().map(|&p| at(p)).collect();
    let mut evals = evaluator.evaluate_all(&configs, model)?;

    let best_i = (0..n).fold(0, |b, i| if evals[i].better_than(&evals[b]) { i } else { b });
    if evals[best_i].feasible() {
        let (mut a, mut b) = (scan[best_i.saturating_sub(1)], scan[(best_i + 1).min(n - 1)]);
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let mut x1 = b - phi * (b - a);
        let mut x2 = a + phi * (b - a);
        let mut f1 = evaluator.evaluate(&at(x1), model)?;
        let mut f2 = evaluator.evaluate(&at(x2), model)?;
        while b - a > opts.resolution.max(1e-9 * hi) {
            if f1.better_than(&f2) {
                b = x2;
                x2 = x1;
                evals.push(std::mem::replace(&mut f2, f1.clone()));
                x1 = b - phi * (b - a);
                f1 = evaluator.evaluate(&at(x1), model)?;
            } else {
                a = x1;
                x1 = x2;
                evals.push(std::mem::replace(&mut f1, f2.clone()));
                x2 = a + phi * (b - a);
                f2 = evaluator.evaluate(&at(x2), model)?;
            }
        }
        evals.push(f1);
        evals.push(f2);
    }
    pick_best(evals.iter().filter(|e| e.feasible()))
        .cloned()
        .ok_or(SearchError::NoFeasibleReference { lo, hi })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizingResult {
    pub reference: Evaluation,
    pub grid: SweepResult,
    pub de: Option<DeResult>,
    pub best: Evaluation,
    pub delta_npv: f64,
}

/// Grid search followed, if `de` is given, by differential evolution over the
/// space's bounding box seeded with the best grid cell.
pub fn size(
    space: &SearchSpace,
    evaluator: &Evaluator,
    model: &InvestmentModel,
    reference: &Evaluation,
    de: Option<&DeParams>,
) -> Result<SizingResult, SearchError> {
    let reference_npv = reference.npv.ok_or(SearchError::NoFeasibleCell)?;
    let grid = grid_search(space, evaluator, model, reference_npv)?;
    let grid_best = grid.best().ok_or(SearchError::NoFeasibleCell)?.evaluation.clone();

    let (de_result, best) = match de {
        None => (None, grid_best),
        Some(params) => {
            let failure: Mutex<Option<SearchError>> = Mutex::new(None);
            let objective = |x: &[f64]| match evaluator.evaluate(&space.config_at(x), model) {
                Ok(e) => -e.score(),
                Err(err) => {
                    if let Ok(mut f) = failure.lock() {
                        f.get_or_insert(err);
                    }
                    f64::INFINITY
                }
            };
            let seeds = [SearchSpace::point_of(&grid_best.config)];
            let r = differential_evolution(objective, &space.bounds(), params, &seeds)?;
            if let Some(err) = failure.into_inner().ok().flatten() {
                return Err(err);
            }
            let refined = evaluator.evaluate(&space.config_at(&r.best_point), model)?;
            let best = if refined.better_than(&grid_best) { refined } else { grid_best };
            (Some(r), best)
        }
    };
    let delta_npv = best.score() - reference_npv;
    Ok(SizingResult {
        reference: reference.clone(),
        grid,
        de: de_result,
        best,
        delta_npv,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityCell {
    pub f_sa: f64,
    pub f_b: f64,
    pub best: Evaluation,
    pub delta_npv: f64,
}

/// Two-stage sizing for every pair of accumulator and battery cost factors.
pub fn sensitivity_sweep(
    space: &SearchSpace,
    evaluator: &Evaluator,
    base: &InvestmentModel,
    reference: &Evaluation,
    f_sa: &[f64],
    f_b: &[f64],
    de: Option<&DeParams>,
) -> Result<Vec<SensitivityCell>, SearchError> {
    if let Some(f) = f_sa.iter().chain(f_b).find(|f| !(**f > 0.0 && f.is_finite())) {
        return Err(SearchError::Config(format!("cost factor {f} must be positive")));
    }
    let mut out = Vec::with_capacity(f_sa.len() * f_b.len());
    for &a in f_sa {
        for &b in f_b {
            let model = base.with_factors(base.boiler.factor, a, b);
            // The boiler-only reference does not depend on these factors.
            let r = size(space, evaluator, &model, reference, de)?;
            out.push(SensitivityCell {
                f_sa: a,
                f_b: b,
                delta_npv: r.delta_npv,
                best: r.best,
            });
        }
    }
    Ok(out)
}

/// NPV over inlet temperature and one capacity axis, other capacities fixed.
#[allow(clippy::too_many_arguments)]
pub fn preheat_sweep(
    evaluator: &Evaluator,
    model: &InvestmentModel,
    base: &SystemConfig,
    t0_values: &[f64],
    axis: Capacity,
    axis_values: &[f64],
    baseline_t0: f64,
    reference_npv: f64,
) -> Result<SweepResult, SearchError> {
    let t_ref = evaluator.params.t_ref;
    let t_op = evaluator.params.t_op;
    if let Some(t) = t0_values.iter().chain(std::iter::once(&baseline_t0)).find(|t| !(**t >= t_ref && **t < t_op)) {
        return Err(SearchError::Config(format!(
            "inlet temperature {t} K outside [{t_ref}, {t_op}) K"
        )));
    }
    let with = |t0: f64, v: f64| {
        let mut c = SystemConfig { t0, ..*base };
        axis.set(&mut c, v);
        c
    };
    let mut configs: Vec<SystemConfig> = Vec::new();
    for &t in t0_values {
        for &v in axis_values {
            configs.push(with(t, v));
        }
    }
    let baseline: Vec<SystemConfig> = axis_values.iter().map(|&v| with(baseline_t0, v)).collect();
    let evals = evaluator.evaluate_all(&configs, model)?;
    let base_evals = evaluator.evaluate_all(&baseline, model)?;
    let cells = evals
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let j = i % axis_values.len();
            let gain = match (e.npv, base_evals[j].npv) {
                (Some(a), Some(b)) => Some(a - b),
                _ => None,
            };
            let mut c = cell(vec![e.config.t0, axis.get(&e.config)], e, reference_npv);
            c.gain_vs_baseline = gain;
            c
        })
        .collect();
    Ok(SweepResult {
        axes: vec![
            Axis {
                name: "t0_k".into(),
                values: t0_values.to_vec(),
            },
            Axis {
                name: axis.column().into(),
                values: axis_values.to_vec(),
            },
        ],
        reference_npv,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market::{hourly_scenario, TariffSchedule};
    use approx::assert_relative_eq;

    fn evaluator(demand: Vec<f64>, spot: Vec<f64>, fcr: Vec<f64>) -> Evaluator {
        let s = hourly_scenario(spot, fcr, demand, TariffSchedule::flat(0.01, 2.0, 1.0)).unwrap();
        Evaluator::new(s, SteamSystemParams::default(), BatteryParams::default(), NpvParams::default())
    }

    #[test]
    fn range_values_include_end_points() {
        assert_eq!(Range { min: 0.0, max: 1.0, points: 3 }.values(), vec![0.0, 0.5, 1.0]);
        assert_eq!(Range::fixed(2.0).values(), vec![2.0]);
    }

    #[test]
    fn reference_cell_has_zero_delta() {
        let ev = evaluator(vec![0.1, 0.2, 0.15, 0.05], vec![0.05, 0.1, 0.02, 0.08], vec![0.0; 4]);
        let model = InvestmentModel::default();
        let reference = ev.evaluate(&SystemConfig::boiler_only(800e3), &model).unwrap();
        let space = SearchSpace {
            m_sa_max: Range::fixed(0.0),
            p_eb_max: Range::fixed(800e3),
            q_b_max: Range::fixed(0.0),
            c_rate: Range::fixed(0.0),
            t0: 283.0,
        };
        let g = grid_search(&space, &ev, &model, reference.npv.unwrap()).unwrap();
        assert_eq!(g.cells.len(), 1);
        assert_eq!(g.cells[0].delta_npv, Some(0.0));
    }

    #[test]
    fn undersized_cell_is_marked_infeasible() {
        let ev = evaluator(vec![0.3; 4], vec![0.05; 4], vec![0.0; 4]);
        let space = SearchSpace {
            m_sa_max: Range::fixed(0.0),
            p_eb_max: Range { min: 500e3, max: 1000e3, points: 2 },
            q_b_max: Range::fixed(0.0),
            c_rate: Range::fixed(0.0),
            t0: 283.0,
        };
        let g = grid_search(&space, &ev, &InvestmentModel::default(), 0.0).unwrap();
        assert!(!g.cells[0].evaluation.feasible());
        assert_eq!(g.cells[0].delta_npv, None);
        assert!(g.cells[1].evaluation.feasible());
    }

    #[test]
    fn flat_reference_sizes_to_peak_demand() {
        let d = 0.2;
        let ev = evaluator(vec![d; 6], vec![0.05; 6], vec![0.0; 6]);
        let r = optimize_reference(&ev, &InvestmentModel::default(), &ReferenceOptions::default()).unwrap();
        assert_relative_eq!(r.config.p_eb_max, d * 2772.0e3, max_relative = 1e-12);
    }

    #[test]
    fn tie_break_prefers_cheaper_then_smaller() {
        let ev = evaluator(vec![0.1; 3], vec![0.05; 3], vec![0.0; 3]);
        let m = InvestmentModel::default();
        let a = ev.evaluate(&SystemConfig { c_rate: 0.5, ..SystemConfig::boiler_only(600e3) }, &m).unwrap();
        let b = ev.evaluate(&SystemConfig { c_rate: 0.2, ..SystemConfig::boiler_only(600e3) }, &m).unwrap();
        assert!(b.better_than(&a));
        assert!(!a.better_than(&b));
        assert_eq!(ev.solved(), 1);
    }

    #[test]
    fn preheat_baseline_row_has_zero_gain() {
        let ev = evaluator(vec![0.1, 0.2, 0.1], vec![0.05, 0.1, 0.02], vec![0.0; 3]);
        let base = SystemConfig::boiler_only(1e6);
        let s = preheat_sweep(&ev, &InvestmentModel::default(), &base, &[283.0, 333.0], Capacity::PEbMax, &[1e6], 283.0, 0.0)
            .unwrap();
        assert_eq!(s.cells[0].gain_vs_baseline, Some(0.0));
        assert!(s.cells[1].gain_vs_baseline.unwrap() > 0.0);
    }
}
