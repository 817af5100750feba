//! Re-derives every operating constraint from a [`DispatchResult`] alone.
//!
//! Nothing here reads the LP; residuals are recomputed from the SI series, the
//! scenario and the stored coefficients. Each residual is divided by one plus
//! the magnitude of the terms it compares.

use std::fmt;

use serde::Serialize;

use super::build::fcr_blocks;
use super::DispatchResult;
use crate::market::Scenario;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecheckReport {
    pub tol: f64,
    pub max_residual: f64,
    pub worst: Option<String>,
    pub checked: usize,
}

impl RecheckReport {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.tol
    }
}

impl fmt::Display for RecheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} checks, max residual {:.3e} at {} (tol {:.1e})",
            self.checked,
            self.max_residual,
            self.worst.as_deref().unwrap_or("-"),
            self.tol
        )
    }
}

struct Tally {
    max: f64,
    worst: Option<String>,
    count: usize,
}

impl Tally {
    fn eq(&mut self, name: impl FnOnce() -> String, lhs: f64, rhs: f64, scale: f64) {
        self.record(name, (lhs - rhs).abs() / (1.0 + scale));
    }

    fn le(&mut self, name: impl FnOnce() -> String, lhs: f64, rhs: f64, scale: f64) {
        self.record(name, (lhs - rhs).max(0.0) / (1.0 + scale));
    }

    fn record(&mut self, name: impl FnOnce() -> String, r: f64) {
        self.count += 1;
        let r = if r.is_nan() { f64::INFINITY } else { r };
        if r > self.max {
            self.max = r;
            self.worst = Some(name());
        }
    }
}

pub fn recheck(r: &DispatchResult, scenario: &Scenario, tol: f64) -> RecheckReport {
    let n = scenario.horizon_steps;
    let mut t_ = Tally {
        max: 0.0,
        worst: None,
        count: 0,
    };
    let series = [
        &r.p_grid,
        &r.p_eb,
        &r.p_b_charge,
        &r.p_b_discharge,
        &r.p_fcr,
        &r.m_dot_eb,
        &r.m_dot_sa_charge,
        &r.m_dot_sa_discharge,
        &r.m_sa,
        &r.q_b,
    ];
    if series.iter().any(|s| s.len() != n) {
        t_.record(|| "series length".into(), f64::INFINITY);
        return RecheckReport {
            tol,
            max_residual: t_.max,
            worst: t_.worst,
            checked: t_.count,
        };
    }

    // Work in kW, kWh, kg/h, kg, h.
    let dt_h = scenario.dt_hours();
    let dt_s = f64::from(scenario.dt);
    let c = &r.coeffs;
    let b = &r.battery;
    let cfg = &r.config;
    let p_max = cfg.p_eb_max / 1e3;
    let q_max = cfg.q_b_max / 1e3;
    let gq = cfg.c_rate * q_max;
    let keep_b = 1.0 - b.self_discharge_per_second() * dt_s;
    let keep_sa = 1.0 - c.eps_sa * dt_s;
    let blocks = fcr_blocks(scenario);

    let mut m_prev = r.m_sa_initial;
    let mut q_prev = r.q_b_initial / 1e3;
    let mut observed_peak = f64::NEG_INFINITY;
    for t in 0..n {
        let p_eb = r.p_eb[t] / 1e3;
        let ch = r.p_b_charge[t] / 1e3;
        let dis = r.p_b_discharge[t] / 1e3;
        let grid = r.p_grid[t] / 1e3;
        let fcr = r.p_fcr[t] / 1e3;
        let m_eb = r.m_dot_eb[t] * 3600.0;
        let m_ch = r.m_dot_sa_charge[t] * 3600.0;
        let m_dis = r.m_dot_sa_discharge[t] * 3600.0;
        let m = r.m_sa[t];
        let q = r.q_b[t] / 1e3;
        let d = scenario.steam_demand.values()[t] * 3600.0;
        observed_peak = observed_peak.max(grid);

        t_.eq(|| format!("steam balance[{t}]"), m_eb - m_ch + m_dis, d, m_eb + m_ch + m_dis + d);
        t_.eq(|| format!("boiler conversion[{t}]"), m_eb, p_eb * 3600.0 / c.dh_tot, m_eb);
        t_.eq(|| format!("grid balance[{t}]"), grid, p_eb + ch - dis, p_eb + ch + dis);
        t_.le(|| format!("fcr down[{t}]"), fcr, (p_max - p_eb) + (gq - (ch - dis)), p_max + gq + fcr);
        t_.le(|| format!("fcr up[{t}]"), fcr, p_eb + ch - dis, p_eb + ch + dis + fcr);
        t_.le(|| format!("fcr non-negative[{t}]"), -fcr, 0.0, fcr.abs());
        if t > 0 && blocks[t] == blocks[t - 1] {
            t_.eq(|| format!("fcr hour block[{t}]"), fcr, r.p_fcr[t - 1] / 1e3, fcr.abs());
        }
        t_.le(|| format!("accumulator upper[{t}]"), m, cfg.m_sa_max, cfg.m_sa_max);
        t_.le(|| format!("accumulator lower[{t}]"), -m, 0.0, cfg.m_sa_max);
        t_.le(|| format!("boiler upper[{t}]"), p_eb, p_max, p_max);
        t_.le(|| format!("boiler lower[{t}]"), -p_eb, 0.0, p_max);
        t_.le(|| format!("soc upper[{t}]"), q, b.soc_max_frac * q_max, q_max);
        t_.le(|| format!("soc lower[{t}]"), b.soc_min_frac * q_max, q, q_max);
        let q_next = keep_b * q_prev + (b.eta_charge * ch - dis / b.eta_discharge) * dt_h;
        t_.eq(|| format!("battery balance[{t}]"), q, q_next, q_prev + (ch + dis) * dt_h);
        t_.le(|| format!("charge non-negative[{t}]"), -ch, 0.0, gq);
        t_.le(|| format!("discharge non-negative[{t}]"), -dis, 0.0, gq);
        t_.le(|| format!("c-rate[{t}]"), (ch - dis).abs(), gq, gq);
        let m_next = keep_sa * m_prev + (c.eta_sa_charge * m_ch - m_dis / c.eta_sa_discharge) * dt_h;
        t_.eq(|| format!("accumulator balance[{t}]"), m, m_next, m_prev + (m_ch + m_dis) * dt_h);
        t_.le(|| format!("accumulator flow non-negative[{t}]"), -m_ch.min(m_dis), 0.0, m_ch + m_dis);
        m_prev = m;
        q_prev = q;
    }
    if cfg.m_sa_max == 0.0 {
        t_.eq(|| "initial accumulator".into(), r.m_sa_initial, 0.0, 0.0);
    } else {
        t_.eq(|| "initial accumulator".into(), r.m_sa_initial, 0.9 * cfg.m_sa_max, cfg.m_sa_max);
    }
    t_.eq(|| "initial battery".into(), r.q_b_initial / 1e3, b.soc_init_frac * q_max, q_max);
    let peak = r.peak_grid_power / 1e3;
    t_.le(|| "peak bound".into(), observed_peak, peak, peak.abs());
    if scenario.tariff.capacity * scenario.tariff.months_per_horizon > 0.0 {
        t_.eq(|| "peak tightness".into(), peak, observed_peak.max(0.0), peak.abs());
    }

    RecheckReport {
        tol,
        max_residual: t_.max,
        worst: t_.worst,
        checked: t_.count,
    }
}
