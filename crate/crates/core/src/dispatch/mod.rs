//! Optimal operation of boiler, accumulator and battery over a scenario.
//!
//! The plant balance is `ṁ_eb − ṁ⁺ + ṁ⁻ = ṁ_plant`: charging steam comes out
//! of boiler output and discharged steam goes to the plant. The accumulator
//! follows `M' = (1 − εΔt)M + (η⁺ṁ⁺ − ṁ⁻/η⁻)Δt`, the battery the same form.
//! FCR capacity is one variable per hour block and must fit below both the
//! unused power headroom and the current consumption.

mod build;
mod check;
mod io;
mod kpis;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lp::{self, verify_infeasibility, verify_solution, Diagnostics, LpBackend, LpStatus, SolveError};
use crate::market::Scenario;
use crate::thermo::{self, BatteryParams, StorageCoefficients, SteamSystemParams, ThermoError};

pub use build::{build_problem, build_problem_with, BuildOptions, DispatchProblem, VarIndex};
pub use check::{recheck, RecheckReport};
pub use io::{write_dispatch_csv, DISPATCH_COLUMNS};
pub use kpis::{extract_kpis, Kpis};

/// Message attached to every infeasible dispatch.
pub const INFEASIBLE_MESSAGE: &str = "cannot meet steam demand";

/// Equipment sizing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    /// Boiler capacity, W.
    pub p_eb_max: f64,
    /// Accumulator capacity, kg.
    pub m_sa_max: f64,
    /// Battery capacity, Wh.
    pub q_b_max: f64,
    /// Battery C-rate, 1/h.
    pub c_rate: f64,
    /// Boiler inlet water temperature, K.
    pub t0: f64,
}

impl SystemConfig {
    pub fn boiler_only(p_eb_max: f64) -> Self {
        Self {
            p_eb_max,
            m_sa_max: 0.0,
            q_b_max: 0.0,
            c_rate: 0.0,
            t0: 283.0,
        }
    }

    pub fn has_storage(&self) -> bool {
        self.m_sa_max > 0.0 || self.q_b_max > 0.0
    }

    pub fn validate(&self) -> Result<(), DispatchError> {
        let fields = [
            ("p_eb_max", self.p_eb_max),
            ("m_sa_max", self.m_sa_max),
            ("q_b_max", self.q_b_max),
            ("c_rate", self.c_rate),
            ("t0", self.t0),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v >= 0.0) {
                return Err(DispatchError::Config(format!("{name} = {v} must be finite and non-negative")));
            }
        }
        if self.q_b_max > 0.0 && self.c_rate <= 0.0 {
            return Err(DispatchError::Config("c_rate must be positive when a battery is installed".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum DispatchError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("coefficient/configuration mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Thermo(#[from] ThermoError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("solver reported {status} for a dispatch problem")]
    Solver { status: LpStatus },
    #[error("solution failed certification: {0}")]
    Certification(Diagnostics),
    #[error("independent re-check failed: {0}")]
    Recheck(String),
}

/// Optimal per-step schedule in SI units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispatchResult {
    pub config: SystemConfig,
    pub coeffs: StorageCoefficients,
    pub battery: BatteryParams,
    pub p_grid: Vec<f64>,
    pub p_eb: Vec<f64>,
    pub p_b_charge: Vec<f64>,
    pub p_b_discharge: Vec<f64>,
    /// Per step; constant within each hour block.
    pub p_fcr: Vec<f64>,
    pub m_dot_eb: Vec<f64>,
    pub m_dot_sa_charge: Vec<f64>,
    pub m_dot_sa_discharge: Vec<f64>,
    /// End-of-step accumulator mass, kg.
    pub m_sa: Vec<f64>,
    /// End-of-step battery energy, Wh.
    pub q_b: Vec<f64>,
    pub m_sa_initial: f64,
    pub q_b_initial: f64,
    /// Value of the horizon peak variable, W.
    pub peak_grid_power: f64,
    /// LP objective including initial-charge cost, EUR.
    pub objective: f64,
    /// Part of `objective` from the optional throughput penalty, EUR.
    pub penalty_cost: f64,
    pub initial_cost: f64,
    pub diagnostics: Diagnostics,
    pub backend: String,
}

impl DispatchResult {
    /// Objective without any artificial penalty: the net energy cost.
    pub fn net_energy_cost(&self) -> f64 {
        self.objective - self.penalty_cost
    }
}

/// Typed infeasibility, kept out of the error channel so sweeps can record it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Infeasibility {
    pub message: String,
    pub detail: String,
    /// Whether a Farkas certificate was supplied and checked.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DispatchOutcome {
    Optimal(Box<DispatchResult>),
    Infeasible(Infeasibility),
}

impl DispatchOutcome {
    pub fn optimal(self) -> Option<DispatchResult> {
        match self {
            DispatchOutcome::Optimal(r) => Some(*r),
            DispatchOutcome::Infeasible(_) => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, DispatchOutcome::Infeasible(_))
    }
}

pub struct DispatchOptions<'a> {
    pub backend: &'a dyn LpBackend,
    pub tol: f64,
    pub build: BuildOptions,
}

impl Default for DispatchOptions<'static> {
    fn default() -> Self {
        static BACKEND: lp::InteriorPoint = lp::InteriorPoint {
            max_iter: 400,
            tighten: 1e-3,
        };
        Self {
            backend: &BACKEND,
            tol: lp::DEFAULT_TOL,
            build: BuildOptions::default(),
        }
    }
}

/// Storage coefficients matching a configuration: rated at the boiler capacity
/// and evaluated at the configured inlet temperature.
pub fn coefficients_for(params: &SteamSystemParams, config: &SystemConfig) -> Result<StorageCoefficients, ThermoError> {
    let p = params.with_inlet_temperature(config.t0);
    if config.m_sa_max > 0.0 {
        thermo::storage_coefficients(&p, config.m_sa_max, config.p_eb_max)
    } else {
        StorageCoefficients::without_accumulator(&p, config.p_eb_max)
    }
}

pub fn solve_dispatch(
    scenario: &Scenario,
    config: &SystemConfig,
    params: &SteamSystemParams,
    battery: &BatteryParams,
) -> Result<DispatchOutcome, DispatchError> {
    solve_dispatch_with(scenario, config, params, battery, &DispatchOptions::default())
}

pub fn solve_dispatch_with(
    scenario: &Scenario,
    config: &SystemConfig,
    params: &SteamSystemParams,
    battery: &BatteryParams,
    opts: &DispatchOptions<'_>,
) -> Result<DispatchOutcome, DispatchError> {
    config.validate()?;
    let coeffs = match coefficients_for(params, config) {
        Ok(c) => c,
        Err(e @ ThermoError::PipeLossExceedsRating { .. })
        | Err(e @ ThermoError::Domain { quantity: "rated_power", .. }) => {
            return Ok(DispatchOutcome::Infeasible(Infeasibility {
                message: INFEASIBLE_MESSAGE.into(),
                detail: e.to_string(),
                certified: false,
            }))
        }
        Err(e) => return Err(e.into()),
    };
    solve_with_coefficients(scenario, config, &coeffs, battery, opts)
}

pub fn solve_with_coefficients(
    scenario: &Scenario,
    config: &SystemConfig,
    coeffs: &StorageCoefficients,
    battery: &BatteryParams,
    opts: &DispatchOptions<'_>,
) -> Result<DispatchOutcome, DispatchError> {
    let problem = build_problem_with(scenario, config, coeffs, battery, &opts.build)?;
    let mut sol = opts.backend.solve(&problem.lp, opts.tol)?;
    if sol.status == LpStatus::NumericalFailure {
        // Retry once with the objective normalised to unit magnitude.
        let scale = problem.lp.objective().iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if scale > 0.0 {
            let scaled = problem.lp.scaled_objective(1.0 / scale);
            let mut retry = opts.backend.solve(&scaled, opts.tol)?;
            if retry.is_optimal() {
                retry.objective = problem.lp.evaluate(&retry.primal);
                if let Some(y) = retry.duals.as_mut() {
                    y.iter_mut().for_each(|v| *v *= scale);
                }
            }
            sol = retry;
        }
    }
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => {
            let (certified, detail) = match &sol.evidence {
                Some(ev) => {
                    let check = verify_infeasibility(&problem.lp, ev, 1e-5);
                    (check.passed, check.detail)
                }
                None => (false, "no evidence supplied".into()),
            };
            return Ok(DispatchOutcome::Infeasible(Infeasibility {
                message: INFEASIBLE_MESSAGE.into(),
                detail: format!("{} backend: {detail}", sol.backend),
                certified,
            }));
        }
        status => return Err(DispatchError::Solver { status }),
    }

    let diagnostics = verify_solution(&problem.lp, &sol, opts.tol);
    if !diagnostics.passed() {
        return Err(DispatchError::Certification(diagnostics));
    }
    let result = extract(scenario, config, coeffs, battery, &problem, &sol.primal, sol.objective, diagnostics, &sol.backend, &opts.build);
    let report = recheck(&result, scenario, opts.tol.max(1e-6));
    if !report.passed() {
        return Err(DispatchError::Recheck(report.to_string()));
    }
    Ok(DispatchOutcome::Optimal(Box::new(result)))
}

#[allow(clippy::too_many_arguments)]
fn extract(
    scenario: &Scenario,
    config: &SystemConfig,
    coeffs: &StorageCoefficients,
    battery: &BatteryParams,
    problem: &DispatchProblem,
    x: &[f64],
    objective: f64,
    diagnostics: Diagnostics,
    backend: &str,
    build: &BuildOptions,
) -> DispatchResult {
    let n = scenario.horizon_steps;
    let v = &problem.vars;
    let kw = |id: crate::lp::VarId| x[id.0] * 1e3;
    let p_eb: Vec<f64> = v.p_eb.iter().map(|&id| kw(id)).collect();
    let zeros = vec![0.0; n];
    let (p_b_charge, p_b_discharge, q_b) = match &v.battery {
        Some(b) => (
            b.p_charge.iter().map(|&id| kw(id)).collect(),
            b.p_discharge.iter().map(|&id| kw(id)).collect(),
            b.soc.iter().map(|&id| kw(id)).collect(),
        ),
        None => (zeros.clone(), zeros.clone(), zeros.clone()),
    };
    let (m_ch, m_dis, m_sa): (Vec<f64>, Vec<f64>, Vec<f64>) = match &v.accumulator {
        Some(a) => (
            a.m_charge.iter().map(|&id| x[id.0] / 3600.0).collect(),
            a.m_discharge.iter().map(|&id| x[id.0] / 3600.0).collect(),
            a.mass.iter().map(|&id| x[id.0]).collect(),
        ),
        None => (zeros.clone(), zeros.clone(), zeros),
    };
    let p_grid: Vec<f64> = (0..n).map(|t| p_eb[t] + p_b_charge[t] - p_b_discharge[t]).collect();
    let p_fcr = (0..n).map(|t| kw(v.p_fcr[v.fcr_block[t]])).collect();
    let m_dot_eb = p_eb.iter().map(|p| p / (coeffs.dh_tot * 1e3)).collect();
    let dt_h = scenario.dt_hours();
    let penalty_cost = build.throughput_penalty
        * dt_h
        * (0..n).map(|t| (p_b_charge[t] + p_b_discharge[t]) / 1e3).sum::<f64>();

    DispatchResult {
        config: *config,
        coeffs: *coeffs,
        battery: *battery,
        p_grid,
        p_eb,
        p_b_charge,
        p_b_discharge,
        p_fcr,
        m_dot_eb,
        m_dot_sa_charge: m_ch,
        m_dot_sa_discharge: m_dis,
        m_sa,
        q_b,
        m_sa_initial: problem.m0,
        q_b_initial: problem.q0 * 1e3,
        peak_grid_power: kw(v.p_peak),
        objective,
        penalty_cost,
        initial_cost: problem.initial_cost,
        diagnostics,
        backend: backend.to_string(),
    }
}
