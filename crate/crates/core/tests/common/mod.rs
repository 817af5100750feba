#![allow(dead_code)]

pub mod oracle;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use steamflex::dispatch::{coefficients_for, recheck, solve_dispatch, DispatchResult, SystemConfig};
use steamflex::market::{hourly_scenario, Scenario, TariffSchedule};
use steamflex::thermo::{BatteryParams, SteamSystemParams};

use oracle::{Bracket, Instance, StoreKind};

/// Miniature single-storage case plus its oracle description.
pub struct Case {
    pub seed: u64,
    pub scenario: Scenario,
    pub config: SystemConfig,
    pub params: SteamSystemParams,
    pub battery: BatteryParams,
    pub instance: Instance,
}

pub fn random_case(seed: u64) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(3..=8usize);
    let kind = if seed % 2 == 0 {
        StoreKind::Accumulator
    } else {
        StoreKind::Battery
    };
    let spot: Vec<f64> = (0..n).map(|_| rng.random_range(-0.05..0.30)).collect();
    let vol = if rng.random_bool(0.5) { rng.random_range(0.0..0.05) } else { 0.0 };
    let fcr: Vec<f64> = if rng.random_bool(0.6) {
        (0..n).map(|_| if rng.random_bool(0.7) { rng.random_range(0.0..0.06) } else { 0.0 }).collect()
    } else {
        vec![0.0; n]
    };
    let capacity = if rng.random_bool(0.5) { rng.random_range(0.5..8.0) } else { 0.0 };
    let months = 1.0;
    let demand: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..0.4)).collect();
    let t0 = if rng.random_bool(0.5) { 283.0 } else { 340.0 };

    let params = SteamSystemParams::default();
    let dh = 2772.0 - 4.186 * (t0 - 283.0);
    let d_max = demand.iter().cloned().fold(0.0, f64::max);
    let p_need = d_max * dh; // kW
    let (config, battery) = match kind {
        StoreKind::Accumulator => {
            let p_kw = (p_need * rng.random_range(1.05..2.0)).max(100.0);
            let cfg = SystemConfig {
                p_eb_max: p_kw * 1e3,
                m_sa_max: rng.random_range(50.0..1500.0),
                q_b_max: 0.0,
                c_rate: 0.0,
                t0,
            };
            (cfg, BatteryParams::default())
        }
        StoreKind::Battery => {
            let p_kw = (p_need * rng.random_range(1.0..1.5)).max(100.0);
            let soc_min = rng.random_range(0.0..0.2);
            let soc_max = rng.random_range(0.8..1.0);
            let batt = BatteryParams {
                eta_charge: rng.random_range(0.85..1.0),
                eta_discharge: rng.random_range(0.85..1.0),
                self_discharge: rng.random_range(0.0..0.1),
                soc_min_frac: soc_min,
                soc_max_frac: soc_max,
                soc_init_frac: rng.random_range(soc_min + 0.05..soc_max),
            };
            let cfg = SystemConfig {
                p_eb_max: p_kw * 1e3,
                m_sa_max: 0.0,
                q_b_max: rng.random_range(100.0..2000.0) * 1e3,
                c_rate: rng.random_range(0.25..2.0),
                t0,
            };
            (cfg, batt)
        }
    };

    let scenario = hourly_scenario(spot.clone(), fcr.clone(), demand.clone(), TariffSchedule::flat(vol, capacity, months)).unwrap();
    let coeffs = coefficients_for(&params, &config).unwrap();
    let mean_price = spot.iter().map(|s| s + vol).sum::<f64>() / n as f64;
    let instance = match kind {
        StoreKind::Accumulator => {
            let m = config.m_sa_max;
            Instance {
                kind,
                dt: 1.0,
                spot,
                volumetric: vec![vol; n],
                fcr,
                peak_price: capacity * months,
                demand: demand.iter().map(|d| d * 3600.0).collect(),
                dh,
                p_max: config.p_eb_max / 1e3,
                level_min: 0.0,
                level_max: m,
                level_init: 0.9 * m,
                keep: 1.0 - coeffs.eps_sa * 3600.0,
                eta_in: coeffs.eta_sa_charge,
                eta_out: coeffs.eta_sa_discharge,
                power_limit: 0.0,
                offset: mean_price * 0.9 * m * dh / 3600.0,
            }
        }
        StoreKind::Battery => {
            let q = config.q_b_max / 1e3;
            Instance {
                kind,
                dt: 1.0,
                spot,
                volumetric: vec![vol; n],
                fcr,
                peak_price: capacity * months,
                demand: demand.iter().map(|d| d * 3600.0).collect(),
                dh,
                p_max: config.p_eb_max / 1e3,
                level_min: battery.soc_min_frac * q,
                level_max: battery.soc_max_frac * q,
                level_init: battery.soc_init_frac * q,
                keep: 1.0 - battery.self_discharge / (365.25 / 12.0 * 24.0),
                eta_in: battery.eta_charge,
                eta_out: battery.eta_discharge,
                power_limit: config.c_rate * q,
                offset: mean_price * battery.soc_init_frac * q,
            }
        }
    };
    Case {
        seed,
        scenario,
        config,
        params,
        battery,
        instance,
    }
}

/// Outcome of one LP-versus-oracle comparison.
pub struct OracleCheck {
    pub seed: u64,
    pub lp: f64,
    pub bracket: Bracket,
    pub within: bool,
    pub certified: bool,
}

impl OracleCheck {
    /// Bracket width relative to the objective scale.
    pub fn relative_width(&self) -> f64 {
        self.bracket.width() / (1.0 + self.lp.abs())
    }
}

pub fn solve_case(case: &Case) -> DispatchResult {
    solve_dispatch(&case.scenario, &case.config, &case.params, &case.battery)
        .unwrap_or_else(|e| panic!("case {}: {e}", case.seed))
        .optimal()
        .unwrap_or_else(|| panic!("case {} infeasible", case.seed))
}

pub fn check_case(seed: u64, bins: usize) -> OracleCheck {
    let case = random_case(seed);
    let r = solve_case(&case);
    let bracket = case.instance.bracket(bins, 200);
    let tol = 1e-6 * (1.0 + r.objective.abs());
    OracleCheck {
        seed,
        lp: r.objective,
        bracket,
        within: bracket.contains(r.objective, tol),
        certified: r.diagnostics.passed() && recheck(&r, &case.scenario, 1e-6).passed(),
    }
}

pub fn oracle_suite(seeds: std::ops::Range<u64>, bins: usize) -> Vec<OracleCheck> {
    seeds.into_par_iter().map(|s| check_case(s, bins)).collect()
}
