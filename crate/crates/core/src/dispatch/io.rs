use std::io::Write;

use super::DispatchResult;
use crate::market::Scenario;

pub const DISPATCH_COLUMNS: [&str; 12] = [
    "step",
    "timestamp",
    "p_grid_w",
    "p_eb_w",
    "p_b_charge_w",
    "p_b_discharge_w",
    "p_fcr_w",
    "m_dot_eb_kg_s",
    "m_dot_sa_charge_kg_s",
    "m_dot_sa_discharge_kg_s",
    "m_sa_kg",
    "q_b_wh",
];

/// One row per step; timestamps mark the start of each step.
pub fn write_dispatch_csv<W: Write>(out: W, result: &DispatchResult, scenario: &Scenario) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(DISPATCH_COLUMNS)?;
    for t in 0..result.p_grid.len() {
        let ts = scenario.spot.timestamp(t).format("%Y-%m-%dT%H:%M:%SZ").to_string();
        let values = [
            result.p_grid[t],
            result.p_eb[t],
            result.p_b_charge[t],
            result.p_b_discharge[t],
            result.p_fcr[t],
            result.m_dot_eb[t],
            result.m_dot_sa_charge[t],
            result.m_dot_sa_discharge[t],
            result.m_sa[t],
            result.q_b[t],
        ];
        let mut record = vec![t.to_string(), ts];
        record.extend(values.iter().map(|v| format!("{:.6}", clean(*v))));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

// Keeps "-0.000000" out of the files.
fn clean(v: f64) -> f64 {
    if v.abs() < 5e-7 {
        0.0
    } else {
        v
    }
}
