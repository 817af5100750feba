use std::io::Write;

use super::{Capacity, DeResult, SensitivityCell, SweepResult};

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Long format: one row per cell, axis columns first, then
/// `feasible,delta_npv_eur,npv_eur,investment_eur,net_energy_cost_eur,peak_grid_power_w,gain_vs_baseline_eur`.
/// Numeric fields of infeasible cells are empty.
pub fn write_sweep_csv<W: Write>(out: W, sweep: &SweepResult) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = sweep.axes.iter().map(|a| a.name.clone()).collect();
    header.extend(
        [
            "feasible",
            "delta_npv_eur",
            "npv_eur",
            "investment_eur",
            "net_energy_cost_eur",
            "peak_grid_power_w",
            "gain_vs_baseline_eur",
        ]
        .map(String::from),
    );
    w.write_record(&header)?;
    for c in &sweep.cells {
        let e = &c.evaluation;
        let mut row: Vec<String> = c.coords.iter().map(|v| v.to_string()).collect();
        let (net, peak) = match &e.operation {
            super::Operation::Feasible { annual, peak_grid_power } => (Some(annual.net_energy_cost), Some(*peak_grid_power)),
            super::Operation::Infeasible { .. } => (None, None),
        };
        row.push(e.feasible().to_string());
        row.push(opt(c.delta_npv));
        row.push(opt(e.npv));
        row.push(e.investment.total.to_string());
        row.push(opt(net));
        row.push(opt(peak));
        row.push(opt(c.gain_vs_baseline));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// One row per generation. Values are NPVs (the negated minimised objective).
pub fn write_de_trace_csv<W: Write>(out: W, de: &DeResult) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["generation".to_string(), "best_npv_eur".into(), "mean_npv_eur".into()];
    header.extend(Capacity::ALL.iter().map(|a| a.column().to_string()));
    w.write_record(&header)?;
    for g in &de.trace {
        let mut row = vec![g.generation.to_string(), (-g.best_value).to_string(), (-g.mean_value).to_string()];
        row.extend(g.best_point.iter().map(|v| v.to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub const SENSITIVITY_COLUMNS: [&str; 9] = [
    "f_sa",
    "f_b",
    "m_sa_max_kg",
    "p_eb_max_w",
    "q_b_max_wh",
    "c_rate_per_h",
    "investment_eur",
    "npv_eur",
    "delta_npv_eur",
];

pub fn write_sensitivity_csv<W: Write>(out: W, cells: &[SensitivityCell]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SENSITIVITY_COLUMNS)?;
    for c in cells {
        let cfg = &c.best.config;
        w.write_record([
            c.f_sa.to_string(),
            c.f_b.to_string(),
            cfg.m_sa_max.to_string(),
            cfg.p_eb_max.to_string(),
            cfg.q_b_max.to_string(),
            cfg.c_rate.to_string(),
            c.best.investment.total.to_string(),
            opt(c.best.npv),
            c.delta_npv.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
