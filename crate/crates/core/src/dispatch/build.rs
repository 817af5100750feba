//! Assembly of the dispatch LP.
//!
//! Internal units: kW, kWh, kg, kg/h and hours, so prices in EUR/kWh apply
//! directly and coefficients stay near unity. Storage states are end-of-step
//! values; the initial states are constants. Storage absent from the
//! configuration gets no variables at all.

use crate::lp::{LinearProgram, Relation, VarId};
use crate::market::Scenario;
use crate::thermo::{BatteryParams, StorageCoefficients};

use super::{DispatchError, SystemConfig};

/// Indices of the decision variables.
#[derive(Debug, Clone)]
pub struct VarIndex {
    pub p_eb: Vec<VarId>,
    /// One entry per hour block; `fcr_block[t]` maps steps to blocks.
    pub p_fcr: Vec<VarId>,
    pub fcr_block: Vec<usize>,
    pub p_import: Vec<VarId>,
    pub p_peak: VarId,
    pub battery: Option<BatteryVars>,
    pub accumulator: Option<AccumulatorVars>,
}

#[derive(Debug, Clone)]
pub struct BatteryVars {
    pub p_charge: Vec<VarId>,
    pub p_discharge: Vec<VarId>,
    pub soc: Vec<VarId>,
}

#[derive(Debug, Clone)]
pub struct AccumulatorVars {
    pub m_charge: Vec<VarId>,
    pub m_discharge: Vec<VarId>,
    pub mass: Vec<VarId>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildOptions {
    /// EUR/kWh charged on battery charge plus discharge energy.
    pub throughput_penalty: f64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self { throughput_penalty: 0.0 }
    }
}

/// Built LP plus the data needed to read the solution back.
#[derive(Debug, Clone)]
pub struct DispatchProblem {
    pub lp: LinearProgram,
    pub vars: VarIndex,
    /// Initial battery energy, kWh.
    pub q0: f64,
    /// Initial accumulator mass, kg.
    pub m0: f64,
    /// Initial-charge cost included in the objective offset, EUR.
    pub initial_cost: f64,
}

pub(crate) fn fcr_blocks(scenario: &Scenario) -> Vec<usize> {
    let dt = scenario.dt as usize;
    (0..scenario.horizon_steps)
        .map(|t| if dt >= 3600 { t } else { t * dt / 3600 })
        .collect()
}

pub fn build_problem(
    scenario: &Scenario,
    config: &SystemConfig,
    coeffs: &StorageCoefficients,
    battery: &BatteryParams,
) -> Result<DispatchProblem, DispatchError> {
    build_problem_with(scenario, config, coeffs, battery, &BuildOptions::default())
}

pub fn build_problem_with(
    scenario: &Scenario,
    config: &SystemConfig,
    coeffs: &StorageCoefficients,
    battery: &BatteryParams,
    opts: &BuildOptions,
) -> Result<DispatchProblem, DispatchError> {
    config.validate()?;
    battery.validate().map_err(DispatchError::Thermo)?;
    check_coefficients(config, coeffs)?;

    let n = scenario.horizon_steps;
    let dt_h = scenario.dt_hours();
    let dt_s = f64::from(scenario.dt);
    let p_max = config.p_eb_max / 1e3;
    let q_max = config.q_b_max / 1e3;
    let gamma_q = config.c_rate * q_max;
    let m_max = config.m_sa_max;
    let dh = coeffs.dh_tot;
    let steam_per_kw = 3600.0 / dh;
    let fcr_price = scenario.effective_fcr_price();
    let has_battery = q_max > 0.0;
    let has_accumulator = m_max > 0.0;

    let mut lp = LinearProgram::new();

    let p_eb: Vec<VarId> = (0..n)
        .map(|t| {
            let c = dt_h * scenario.spot_at(t);
            lp.add_var(format!("p_eb[{t}]"), 0.0, p_max, c)
        })
        .collect();

    let fcr_block = fcr_blocks(scenario);
    let n_blocks = fcr_block.last().map_or(0, |b| b + 1);
    let mut block_gain = vec![0.0; n_blocks];
    for t in 0..n {
        block_gain[fcr_block[t]] += dt_h * fcr_price[t];
    }
    let p_fcr: Vec<VarId> = block_gain
        .iter()
        .enumerate()
        .map(|(b, g)| lp.add_var(format!("p_fcr[{b}]"), 0.0, f64::INFINITY, -g))
        .collect();

    let p_import: Vec<VarId> = (0..n)
        .map(|t| lp.add_var(format!("p_import[{t}]"), 0.0, f64::INFINITY, dt_h * scenario.volumetric_at(t)))
        .collect();
    let peak_cost = scenario.tariff.months_per_horizon * scenario.tariff.capacity;
    let p_peak = lp.add_var("p_peak", 0.0, f64::INFINITY, peak_cost);

    let battery_vars = has_battery.then(|| {
        let mut charge = Vec::with_capacity(n);
        let mut discharge = Vec::with_capacity(n);
        let mut soc = Vec::with_capacity(n);
        for t in 0..n {
            let price = dt_h * scenario.spot_at(t);
            let wear = dt_h * opts.throughput_penalty;
            charge.push(lp.add_var(format!("p_b_charge[{t}]"), 0.0, gamma_q, price + wear));
            discharge.push(lp.add_var(format!("p_b_discharge[{t}]"), 0.0, gamma_q, -price + wear));
            soc.push(lp.add_var(
                format!("q_b[{t}]"),
                battery.soc_min_frac * q_max,
                battery.soc_max_frac * q_max,
                0.0,
            ));
        }
        BatteryVars {
            p_charge: charge,
            p_discharge: discharge,
            soc,
        }
    });

    let accumulator_vars = has_accumulator.then(|| {
        let mut charge = Vec::with_capacity(n);
        let mut discharge = Vec::with_capacity(n);
        let mut mass = Vec::with_capacity(n);
        for t in 0..n {
            charge.push(lp.add_var(format!("m_sa_charge[{t}]"), 0.0, f64::INFINITY, 0.0));
            discharge.push(lp.add_var(format!("m_sa_discharge[{t}]"), 0.0, f64::INFINITY, 0.0));
            mass.push(lp.add_var(format!("m_sa[{t}]"), 0.0, m_max, 0.0));
        }
        AccumulatorVars {
            m_charge: charge,
            m_discharge: discharge,
            mass,
        }
    });

    let grid_terms = |t: usize| {
        let mut terms = vec![(p_eb[t], 1.0)];
        if let Some(b) = &battery_vars {
            terms.push((b.p_charge[t], 1.0));
            terms.push((b.p_discharge[t], -1.0));
        }
        terms
    };

    let q0 = battery.soc_init_frac * q_max;
    let m0 = 0.9 * m_max;
    let keep_b = 1.0 - battery.self_discharge_per_second() * dt_s;
    let keep_sa = 1.0 - coeffs.eps_sa * dt_s;

    for t in 0..n {
        let mut steam = vec![(p_eb[t], steam_per_kw)];
        if let Some(a) = &accumulator_vars {
            steam.push((a.m_charge[t], -1.0));
            steam.push((a.m_discharge[t], 1.0));
        }
        lp.add_row(
            format!("steam[{t}]"),
            steam,
            Relation::Eq,
            3600.0 * scenario.steam_demand.values()[t],
        );

        let fcr = p_fcr[fcr_block[t]];
        let mut down = grid_terms(t);
        down.push((fcr, 1.0));
        lp.add_row(format!("fcr_down[{t}]"), down, Relation::Le, p_max + gamma_q);

        let mut up: Vec<_> = grid_terms(t).into_iter().map(|(v, a)| (v, -a)).collect();
        up.push((fcr, 1.0));
        lp.add_row(format!("fcr_up[{t}]"), up, Relation::Le, 0.0);

        let mut import = grid_terms(t);
        import.push((p_import[t], -1.0));
        lp.add_row(format!("import[{t}]"), import, Relation::Le, 0.0);

        let mut peak = grid_terms(t);
        peak.push((p_peak, -1.0));
        lp.add_row(format!("peak[{t}]"), peak, Relation::Le, 0.0);

        if let Some(b) = &battery_vars {
            let mut row = vec![
                (b.soc[t], 1.0),
                (b.p_charge[t], -battery.eta_charge * dt_h),
                (b.p_discharge[t], dt_h / battery.eta_discharge),
            ];
            let rhs = if t == 0 {
                keep_b * q0
            } else {
                row.push((b.soc[t - 1], -keep_b));
                0.0
            };
            lp.add_row(format!("battery[{t}]"), row, Relation::Eq, rhs);
            lp.add_row(
                format!("c_rate_up[{t}]"),
                vec![(b.p_charge[t], 1.0), (b.p_discharge[t], -1.0)],
                Relation::Le,
                gamma_q,
            );
            lp.add_row(
                format!("c_rate_down[{t}]"),
                vec![(b.p_charge[t], -1.0), (b.p_discharge[t], 1.0)],
                Relation::Le,
                gamma_q,
            );
        }

        if let Some(a) = &accumulator_vars {
            let mut row = vec![
                (a.mass[t], 1.0),
                (a.m_charge[t], -coeffs.eta_sa_charge * dt_h),
                (a.m_discharge[t], dt_h / coeffs.eta_sa_discharge),
            ];
            let rhs = if t == 0 {
                keep_sa * m0
            } else {
                row.push((a.mass[t - 1], -keep_sa));
                0.0
            };
            lp.add_row(format!("accumulator[{t}]"), row, Relation::Eq, rhs);
        }
    }

    let initial_cost = scenario.mean_energy_price() * (q0 + m0 * dh / 3600.0);
    lp.set_offset(initial_cost);

    Ok(DispatchProblem {
        lp,
        vars: VarIndex {
            p_eb,
            p_fcr,
            fcr_block,
            p_import,
            p_peak,
            battery: battery_vars,
            accumulator: accumulator_vars,
        },
        q0,
        m0,
        initial_cost,
    })
}

fn check_coefficients(config: &SystemConfig, coeffs: &StorageCoefficients) -> Result<(), DispatchError> {
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()));
    let mut problems = Vec::new();
    if !close(coeffs.rated_power, config.p_eb_max) {
        problems.push(format!(
            "coefficients rated at {} W but boiler capacity is {} W",
            coeffs.rated_power, config.p_eb_max
        ));
    }
    if !close(coeffs.t0, config.t0) {
        problems.push(format!(
            "coefficients computed at T0 = {} K but configuration has {} K",
            coeffs.t0, config.t0
        ));
    }
    if !close(coeffs.m_max, config.m_sa_max) {
        problems.push(format!(
            "coefficients computed for {} kg but accumulator capacity is {} kg",
            coeffs.m_max, config.m_sa_max
        ));
    }
    if !(coeffs.eta_sa_charge > 0.0 && coeffs.eta_sa_charge <= 1.0)
        || !(coeffs.eta_sa_discharge > 0.0 && coeffs.eta_sa_discharge <= 1.0)
        || !(coeffs.eps_sa >= 0.0)
        || !(coeffs.dh_tot > 0.0)
    {
        problems.push("storage coefficients outside their admissible ranges".into());
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(DispatchError::Mismatch(problems.join("; ")))
    }
}
