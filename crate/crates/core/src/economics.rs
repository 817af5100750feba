//! Cost accounting, investment cost and net present value.
//!
//! Monetary values are EUR. Capacities follow the SI convention of the rest of
//! the crate (W, kg, Wh); unit costs are quoted per kW, kg and kWh.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dispatch::{DispatchResult, SystemConfig};
use crate::market::Scenario;

#[derive(Debug, Error, PartialEq)]
pub enum EconomicsError {
    #[error("cost breakdown {recomputed} EUR disagrees with the LP objective {objective} EUR (relative error {relative:.3e})")]
    Inconsistent {
        recomputed: f64,
        objective: f64,
        relative: f64,
    },
    #[error("dispatch series do not match the scenario horizon ({series} vs {horizon} steps)")]
    Horizon { series: usize, horizon: usize },
    #[error("invalid parameter: {0}")]
    Invalid(String),
}

/// Relative tolerance for breakdown/objective agreement.
pub const CONSISTENCY_TOL: f64 = 1e-6;

/// Energy costs and FCR profit over one horizon, EUR.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostBreakdown {
    /// Spot purchases minus spot sales.
    pub c_s: f64,
    /// Volumetric grid tariff on imports.
    pub c_ec: f64,
    /// Capacity tariff on the horizon peak.
    pub c_pc: f64,
    /// Cost of the initial storage charge.
    pub c_0: f64,
    pub pi_fcr: f64,
    pub net_energy_cost: f64,
}

impl CostBreakdown {
    pub fn new(c_s: f64, c_ec: f64, c_pc: f64, c_0: f64, pi_fcr: f64) -> Self {
        Self {
            c_s,
            c_ec,
            c_pc,
            c_0,
            pi_fcr,
            net_energy_cost: c_s + c_ec + c_pc + c_0 - pi_fcr,
        }
    }

    /// Energy cost C_E, excluding FCR profit.
    pub fn energy_cost(&self) -> f64 {
        self.c_s + self.c_ec + self.c_pc + self.c_0
    }

    /// Grid tariff C_G.
    pub fn grid_cost(&self) -> f64 {
        self.c_ec + self.c_pc
    }

    /// Extrapolates horizon totals to one year. The initial charge is paid once
    /// per year regardless of horizon length.
    pub fn annualized(&self, factor: f64) -> Self {
        Self::new(
            self.c_s * factor,
            self.c_ec * factor,
            self.c_pc * factor,
            self.c_0,
            self.pi_fcr * factor,
        )
    }
}

/// Recomputes every cost term from the primal schedule and checks it against
/// the LP objective.
pub fn cost_breakdown(result: &DispatchResult, scenario: &Scenario) -> Result<CostBreakdown, EconomicsError> {
    let n = scenario.horizon_steps;
    if result.p_grid.len() != n {
        return Err(EconomicsError::Horizon {
            series: result.p_grid.len(),
            horizon: n,
        });
    }
    let dt_h = scenario.dt_hours();
    let fcr_price = scenario.effective_fcr_price();
    let mut c_s = 0.0;
    let mut c_ec = 0.0;
    let mut pi_fcr = 0.0;
    let mut peak = 0.0f64;
    for t in 0..n {
        let grid = (result.p_eb[t] + result.p_b_charge[t] - result.p_b_discharge[t]) / 1e3;
        c_s += dt_h * scenario.spot_at(t) * grid;
        c_ec += dt_h * scenario.volumetric_at(t) * grid.max(0.0);
        pi_fcr += dt_h * fcr_price[t] * result.p_fcr[t] / 1e3;
        peak = peak.max(grid);
    }
    let c_pc = scenario.tariff.months_per_horizon * scenario.tariff.capacity * peak;
    let q0 = result.q_b_initial / 1e3;
    let c_0 = scenario.mean_energy_price() * (q0 + result.m_sa_initial * result.coeffs.dh_tot / 3600.0);
    let b = CostBreakdown::new(c_s, c_ec, c_pc, c_0, pi_fcr);

    let objective = result.net_energy_cost();
    let scale = 1.0 + c_s.abs() + c_ec + c_pc + c_0.abs() + pi_fcr.abs();
    let relative = (b.net_energy_cost - objective).abs() / scale;
    if relative.is_nan() || relative > CONSISTENCY_TOL {
        return Err(EconomicsError::Inconsistent {
            recomputed: b.net_energy_cost,
            objective,
            relative,
        });
    }
    Ok(b)
}

/// Initial storage content must not call for more grid power than the
/// operational peak if it were charged within `window_h` hours before the
/// horizon. Returns a warning when it would.
pub fn check_initial_charge(config: &SystemConfig, result: &DispatchResult, window_h: f64) -> Option<String> {
    let energy_kwh = result.q_b_initial / 1e3 + result.m_sa_initial * result.coeffs.dh_tot / 3600.0;
    if energy_kwh <= 0.0 || window_h <= 0.0 {
        return None;
    }
    let power_w = energy_kwh / window_h * 1e3;
    let peak = result.peak_grid_power.max(0.0);
    (power_w > peak).then(|| {
        format!(
            "charging the initial storage content ({energy_kwh:.0} kWh) within {window_h} h needs {:.0} kW, above the operational peak of {:.0} kW; the capacity tariff on the initial charge is not negligible (boiler {:.0} kW)",
            power_w / 1e3,
            peak / 1e3,
            config.p_eb_max / 1e3
        )
    })
}

/// Power-law cost of one technology: `f·c·x·(x/x0)^α·γ^β`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitCost {
    /// EUR per kW, kg or kWh.
    pub base_cost: f64,
    pub capacity_exponent: f64,
    /// Exponent on the C-rate; zero for units without one.
    pub power_exponent: f64,
    /// Reference capacity in the same unit as `base_cost`'s denominator.
    pub reference: f64,
    pub factor: f64,
}

impl UnitCost {
    /// Cost of `size` (in the unit of `base_cost`) at C-rate `gamma`.
    pub fn cost(&self, size: f64, gamma: f64) -> f64 {
        if size <= 0.0 {
            return 0.0;
        }
        let rate = if self.power_exponent == 0.0 { 1.0 } else { gamma.powf(self.power_exponent) };
        self.factor * self.base_cost * size * (size / self.reference).powf(self.capacity_exponent) * rate
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvestmentModel {
    /// Per kW of boiler capacity; reference 1 MW.
    pub boiler: UnitCost,
    /// Per kg of accumulator capacity; reference 1000 kg.
    pub accumulator: UnitCost,
    /// Per kWh of battery capacity; reference 1 MWh.
    pub battery: UnitCost,
}

impl Default for InvestmentModel {
    fn default() -> Self {
        Self {
            boiler: UnitCost {
                base_cost: 152.0,
                capacity_exponent: -0.296,
                power_exponent: 0.0,
                reference: 1000.0,
                factor: 1.0,
            },
            accumulator: UnitCost {
                base_cost: 191.0,
                capacity_exponent: -0.05,
                power_exponent: 0.0,
                reference: 1000.0,
                factor: 1.0,
            },
            battery: UnitCost {
                base_cost: 433.0,
                capacity_exponent: -0.164,
                power_exponent: 0.005,
                reference: 1000.0,
                factor: 1.0,
            },
        }
    }
}

impl InvestmentModel {
    pub fn with_factors(mut self, f_eb: f64, f_sa: f64, f_b: f64) -> Self {
        self.boiler.factor = f_eb;
        self.accumulator.factor = f_sa;
        self.battery.factor = f_b;
        self
    }

    pub fn validate(&self) -> Result<(), EconomicsError> {
        for (name, u) in [("boiler", self.boiler), ("accumulator", self.accumulator), ("battery", self.battery)] {
            if !(u.base_cost >= 0.0 && u.factor >= 0.0 && u.reference > 0.0) {
                return Err(EconomicsError::Invalid(format!(
                    "{name} cost needs base cost and factor >= 0 and a positive reference"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvestmentCost {
    pub c_eb: f64,
    pub c_sa: f64,
    pub c_b: f64,
    pub total: f64,
}

pub fn investment_cost(config: &SystemConfig, model: &InvestmentModel) -> InvestmentCost {
    let c_eb = model.boiler.cost(config.p_eb_max / 1e3, 1.0);
    let c_sa = model.accumulator.cost(config.m_sa_max, 1.0);
    let c_b = model.battery.cost(config.q_b_max / 1e3, config.c_rate);
    InvestmentCost {
        c_eb,
        c_sa,
        c_b,
        total: c_eb + c_sa + c_b,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NpvParams {
    pub discount_rate: f64,
    /// Years.
    pub lifetime: u32,
    /// Annual maintenance as a fraction of investment.
    pub maintenance_fraction: f64,
    /// First summation year, 0 or 1.
    pub year_index_start: u32,
}

impl Default for NpvParams {
    fn default() -> Self {
        Self {
            discount_rate: 0.05,
            lifetime: 15,
            maintenance_fraction: 0.02,
            year_index_start: 0,
        }
    }
}

impl NpvParams {
    pub fn validate(&self) -> Result<(), EconomicsError> {
        if !(0.0..1.0).contains(&self.discount_rate) {
            return Err(EconomicsError::Invalid(format!(
                "discount rate {} outside [0, 1)",
                self.discount_rate
            )));
        }
        if self.lifetime < 1 {
            return Err(EconomicsError::Invalid("lifetime must be at least one year".into()));
        }
        if self.year_index_start > 1 {
            return Err(EconomicsError::Invalid("year_index_start must be 0 or 1".into()));
        }
        if !(self.maintenance_fraction >= 0.0) {
            return Err(EconomicsError::Invalid("maintenance fraction must be non-negative".into()));
        }
        Ok(())
    }

    /// Σ 1/(1+r)^t over the summation years.
    pub fn annuity_factor(&self) -> f64 {
        (self.year_index_start..=self.lifetime)
            .map(|t| (1.0 + self.discount_rate).powi(t as i32).recip())
            .sum()
    }
}

/// NPV of a constant annual operating cash flow (profit minus energy cost)
/// before maintenance.
pub fn npv_from_cash_flow(annual_cash_flow: f64, invest: f64, params: &NpvParams) -> f64 {
    let maintenance = params.maintenance_fraction * invest;
    (annual_cash_flow - maintenance) * params.annuity_factor() - invest
}

/// NPV of a system whose annual costs are `annual`.
pub fn npv(annual: &CostBreakdown, invest: f64, params: &NpvParams) -> f64 {
    npv_from_cash_flow(-annual.net_energy_cost, invest, params)
}

pub fn delta_npv(config_npv: f64, reference_npv: f64) -> f64 {
    config_npv - reference_npv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispatch::solve_dispatch;
    use crate::market::{hourly_scenario, TariffSchedule};
    use crate::thermo::{BatteryParams, SteamSystemParams};
    use approx::assert_relative_eq;

    #[test]
    fn investment_anchors() {
        let m = InvestmentModel::default();
        let eb = |kw: f64| investment_cost(&SystemConfig::boiler_only(kw * 1e3), &m).c_eb;
        // 152·P·(P/1000)^-0.296 evaluated by hand.
        assert_relative_eq!(eb(1000.0), 152_000.0, max_relative = 1e-12);
        assert_relative_eq!(eb(1702.0), 152.0 * 1702.0 * 1.702f64.powf(-0.296), max_relative = 1e-12);
        let sa = investment_cost(
            &SystemConfig {
                m_sa_max: 1000.0,
                ..SystemConfig::boiler_only(0.0)
            },
            &m,
        );
        assert_relative_eq!(sa.c_sa, 191_000.0, max_relative = 1e-12);
        let b = investment_cost(
            &SystemConfig {
                q_b_max: 1.0e6,
                c_rate: 1.0,
                ..SystemConfig::boiler_only(0.0)
            },
            &m,
        );
        assert_relative_eq!(b.c_b, 433_000.0, max_relative = 1e-12);
        assert_eq!(investment_cost(&SystemConfig::boiler_only(0.0), &m).total, 0.0);
    }

    #[test]
    fn cost_factors_scale_linearly() {
        let cfg = SystemConfig {
            p_eb_max: 1.2e6,
            m_sa_max: 700.0,
            q_b_max: 300e3,
            c_rate: 0.5,
            t0: 283.0,
        };
        let base = investment_cost(&cfg, &InvestmentModel::default());
        let f = investment_cost(&cfg, &InvestmentModel::default().with_factors(2.0, 0.5, 3.0));
        assert_relative_eq!(f.c_eb, 2.0 * base.c_eb);
        assert_relative_eq!(f.c_sa, 0.5 * base.c_sa);
        assert_relative_eq!(f.c_b, 3.0 * base.c_b);
    }

    #[test]
    fn npv_examples() {
        let p = NpvParams {
            discount_rate: 0.0,
            lifetime: 1,
            maintenance_fraction: 0.0,
            year_index_start: 1,
        };
        assert_relative_eq!(npv_from_cash_flow(-100.0, 50.0, &p), -150.0);
        assert_eq!(npv_from_cash_flow(0.0, 0.0, &NpvParams::default()), 0.0);
        let d = NpvParams::default();
        let a = npv_from_cash_flow(-1234.0, 5000.0, &d) + 5000.0 + 0.02 * 5000.0 * d.annuity_factor();
        let b = npv_from_cash_flow(-2468.0, 5000.0, &d) + 5000.0 + 0.02 * 5000.0 * d.annuity_factor();
        assert_relative_eq!(b, 2.0 * a, max_relative = 1e-12);
        assert_eq!(delta_npv(3.0, 3.0), 0.0);
    }

    #[test]
    fn annuity_factor_closed_form() {
        let p = NpvParams::default();
        // Σ_{t=0}^{15} 1.05^-t = (1 − 1.05^-16)/(1 − 1/1.05).
        let closed = (1.0 - 1.05f64.powi(-16)) / (1.0 - 1.0 / 1.05);
        assert_relative_eq!(p.annuity_factor(), closed, max_relative = 1e-12);
    }

    #[test]
    fn breakdown_matches_objective() {
        let s = hourly_scenario(
            vec![0.05, 0.12, 0.02, 0.09, 0.07, 0.03],
            vec![0.01, 0.0, 0.03, 0.02, 0.0, 0.01],
            vec![0.1, 0.2, 0.05, 0.15, 0.1, 0.12],
            TariffSchedule::flat(0.02, 5.0, 1.0),
        )
        .unwrap();
        let cfg = SystemConfig {
            p_eb_max: 900e3,
            m_sa_max: 300.0,
            q_b_max: 200e3,
            c_rate: 0.5,
            t0: 283.0,
        };
        let r = solve_dispatch(&s, &cfg, &SteamSystemParams::default(), &BatteryParams::default())
            .unwrap()
            .optimal()
            .unwrap();
        let b = cost_breakdown(&r, &s).unwrap();
        assert_relative_eq!(b.net_energy_cost, r.objective, max_relative = 1e-6);
        assert_eq!(b.net_energy_cost, b.c_s + b.c_ec + b.c_pc + b.c_0 - b.pi_fcr);
        assert_relative_eq!(b.c_0, r.initial_cost, max_relative = 1e-12);
    }

    #[test]
    fn zero_prices_without_storage_cost_nothing() {
        let s = hourly_scenario(vec![0.0; 4], vec![0.0; 4], vec![0.1; 4], TariffSchedule::flat(0.0, 0.0, 1.0)).unwrap();
        let cfg = SystemConfig::boiler_only(500e3);
        let r = solve_dispatch(&s, &cfg, &SteamSystemParams::default(), &BatteryParams::default())
            .unwrap()
            .optimal()
            .unwrap();
        let b = cost_breakdown(&r, &s).unwrap();
        assert_eq!(b, CostBreakdown::new(0.0, 0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn tampered_schedule_is_inconsistent() {
        let s = hourly_scenario(vec![0.1; 3], vec![0.0; 3], vec![0.1; 3], TariffSchedule::flat(0.0, 0.0, 1.0)).unwrap();
        let mut r = solve_dispatch(&s, &SystemConfig::boiler_only(1e6), &SteamSystemParams::default(), &BatteryParams::default())
            .unwrap()
            .optimal()
            .unwrap();
        r.objective *= 1.01;
        assert!(matches!(cost_breakdown(&r, &s), Err(EconomicsError::Inconsistent { .. })));
    }
}
