use serde::{Deserialize, Serialize};

use super::{DispatchResult, SystemConfig};
use crate::market::Scenario;

/// Annual-style operating figures of one dispatch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Kpis {
    /// W.
    pub max_grid_power: f64,
    /// W.
    pub mean_grid_power: f64,
    /// Σ P_grid·Δt, Wh.
    pub total_grid_energy: f64,
    /// Full accumulator cycles per day; `None` without an accumulator.
    pub sa_cycles_per_day: Option<f64>,
    /// Mean committed FCR capacity, W.
    pub mean_fcr_capacity: f64,
    /// KPIs that can differ between alternative optima of the same LP.
    pub solver_dependent: Vec<String>,
}

pub fn extract_kpis(result: &DispatchResult, scenario: &Scenario, config: &SystemConfig) -> Kpis {
    let n = result.p_grid.len().max(1) as f64;
    let dt_h = scenario.dt_hours();
    let max_grid_power = result.p_grid.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let total: f64 = result.p_grid.iter().sum();
    let days = scenario.horizon_hours() / 24.0;
    let sa_cycles_per_day = (config.m_sa_max > 0.0).then(|| {
        let moved: f64 = result
            .m_dot_sa_charge
            .iter()
            .zip(&result.m_dot_sa_discharge)
            .map(|(c, d)| (c - d).abs() * f64::from(scenario.dt))
            .sum();
        moved / (2.0 * config.m_sa_max * days)
    });
    Kpis {
        max_grid_power,
        mean_grid_power: total / n,
        total_grid_energy: total * dt_h,
        sa_cycles_per_day,
        mean_fcr_capacity: result.p_fcr.iter().sum::<f64>() / n,
        solver_dependent: vec!["sa_cycles_per_day".into(), "mean_fcr_capacity".into()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispatch::{solve_dispatch, SystemConfig};
    use crate::market::{hourly_scenario, TariffSchedule};
    use crate::thermo::{BatteryParams, SteamSystemParams};
    use approx::assert_relative_eq;

    #[test]
    fn constant_grid_power_over_two_days() {
        // 1 kW of boiler power is a demand of 1/2772 kg/s.
        let d = 1.0 / 2772.0;
        let s = hourly_scenario(vec![0.05; 48], vec![0.0; 48], vec![d; 48], TariffSchedule::flat(0.0, 0.0, 1.0)).unwrap();
        let cfg = SystemConfig::boiler_only(10.0e3);
        let r = solve_dispatch(&s, &cfg, &SteamSystemParams::default(), &BatteryParams::default())
            .unwrap()
            .optimal()
            .unwrap();
        let k = extract_kpis(&r, &s, &cfg);
        assert_relative_eq!(k.mean_grid_power, 1000.0, max_relative = 1e-6);
        assert_relative_eq!(k.total_grid_energy, 48_000.0, max_relative = 1e-6);
        assert_eq!(k.sa_cycles_per_day, None);
    }
}
