use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::{Overrides, Run, RunConfig};
use super::{Cli, Command, Status, SweepKind};
use crate::dispatch::{self, DispatchOutcome, SystemConfig, INFEASIBLE_MESSAGE};
use crate::economics::{self, CostBreakdown, InvestmentCost};
use crate::search::{self, Evaluation, Evaluator, ReferenceOptions};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub file: String,
    pub sha256: String,
}

/// Everything needed to repeat a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub preset: Option<String>,
    pub config_sha256: String,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    /// True when the scenario is a representative slice, not a full year.
    pub coarse: bool,
    pub outputs: Vec<String>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<()> {
    let path = dir.join(name);
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    let path = dir.join(name);
    Ok(BufWriter::new(
        File::create(&path).with_context(|| format!("cannot write {}", path.display()))?,
    ))
}

struct Session {
    run: Run,
    out: PathBuf,
    config_bytes: Vec<u8>,
    command: String,
}

impl Session {
    fn manifest(&self, outputs: &[&str]) -> Result<()> {
        let inputs = self
            .run
            .inputs
            .iter()
            .map(|p| {
                let bytes = fs::read(p).with_context(|| format!("cannot read {}", p.display()))?;
                Ok(InputDigest {
                    file: p.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default(),
                    sha256: sha256_hex(&bytes),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Manifest {
            tool: "steamflex".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: self.command.clone(),
            preset: self.run.preset.clone(),
            config_sha256: sha256_hex(&self.config_bytes),
            seed: self.run.seed,
            inputs,
            coarse: self.run.coarse,
            outputs: outputs.iter().map(|s| s.to_string()).collect(),
        };
        write_json(&self.out, MANIFEST_FILE, &m)
    }

    fn evaluator(&self) -> Evaluator {
        Evaluator::new(self.run.scenario.clone(), self.run.params, self.run.battery, self.run.npv)
    }
}

fn load(cli: &Cli) -> Result<Session> {
    let (cfg, bytes, base_dir) = match &cli.config {
        Some(path) => {
            let bytes = fs::read(path).with_context(|| format!("cannot read config {}", path.display()))?;
            let text = String::from_utf8(bytes.clone()).with_context(|| format!("config {} is not UTF-8", path.display()))?;
            let cfg = RunConfig::from_toml(&text, &path.display().to_string())?;
            let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
            (cfg, bytes, base)
        }
        None if cli.preset.is_some() => (RunConfig::default(), Vec::new(), PathBuf::from(".")),
        None => bail!("give --config <path> or --preset <name>"),
    };
    let ov = Overrides {
        preset: cli.preset.as_deref(),
        seed: cli.seed,
        base_dir,
    };
    let run = cfg.resolve(&ov)?;
    let out = cli
        .out
        .clone()
        .or_else(|| cfg.out.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    let command = match &cli.command {
        Command::Dispatch => "dispatch".to_string(),
        Command::Size => "size".into(),
        Command::Sweep { kind: SweepKind::Sensitivity } => "sweep sensitivity".into(),
        Command::Sweep { kind: SweepKind::Preheat } => "sweep preheat".into(),
        Command::Validate => "validate".into(),
    };
    if run.coarse {
        log::warn!("scenario is a representative slice; results are extrapolated, not a full-year evaluation");
    }
    Ok(Session {
        run,
        out,
        config_bytes: bytes,
        command,
    })
}

pub(super) fn execute(cli: &Cli) -> Result<Status> {
    let ctx = load(cli)?;
    if !matches!(cli.command, Command::Validate) {
        fs::create_dir_all(&ctx.out).with_context(|| format!("cannot create {}", ctx.out.display()))?;
    }
    match &cli.command {
        Command::Dispatch => cmd_dispatch(&ctx),
        Command::Size => cmd_size(&ctx),
        Command::Sweep { kind } => cmd_sweep(&ctx, *kind),
        Command::Validate => cmd_validate(&ctx),
    }
}

/// Configuration with units in the field names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub p_eb_max_w: f64,
    pub m_sa_max_kg: f64,
    pub q_b_max_wh: f64,
    pub c_rate_per_h: f64,
    pub t0_k: f64,
}

impl From<&SystemConfig> for ConfigRecord {
    fn from(c: &SystemConfig) -> Self {
        Self {
            p_eb_max_w: c.p_eb_max,
            m_sa_max_kg: c.m_sa_max,
            q_b_max_wh: c.q_b_max,
            c_rate_per_h: c.c_rate,
            t0_k: c.t0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostsReport {
    pub config: ConfigRecord,
    /// Over the simulated horizon.
    pub horizon: CostBreakdown,
    /// Extrapolated to one year.
    pub annual: CostBreakdown,
    pub investment: InvestmentCost,
    pub npv_eur: f64,
    pub coarse: bool,
}

fn cmd_dispatch(ctx: &Session) -> Result<Status> {
    let run = &ctx.run;
    let cfg = run
        .system
        .ok_or_else(|| anyhow!("dispatch needs a [system] section or a preset"))?;
    let outcome = dispatch::solve_dispatch(&run.scenario, &cfg, &run.params, &run.battery)?;
    let r = match outcome {
        DispatchOutcome::Infeasible(i) => {
            eprintln!("{INFEASIBLE_MESSAGE}: {}", i.detail);
            return Ok(Status::Infeasible);
        }
        DispatchOutcome::Optimal(r) => r,
    };
    let horizon = economics::cost_breakdown(&r, &run.scenario)?;
    if let Some(w) = economics::check_initial_charge(&cfg, &r, 24.0) {
        log::warn!("{w}");
    }
    let annual = horizon.annualized(run.scenario.annualization);
    let investment = economics::investment_cost(&cfg, &run.investment);
    let report = CostsReport {
        config: (&cfg).into(),
        horizon,
        annual,
        investment,
        npv_eur: economics::npv(&annual, investment.total, &run.npv),
        coarse: run.coarse,
    };
    let mut w = create(&ctx.out, "dispatch.csv")?;
    dispatch::write_dispatch_csv(&mut w, &r, &run.scenario)?;
    w.flush()?;
    write_json(&ctx.out, "kpis.json", &dispatch::extract_kpis(&r, &run.scenario, &cfg))?;
    write_json(&ctx.out, "costs.json", &report)?;
    ctx.manifest(&["dispatch.csv", "kpis.json", "costs.json"])?;
    Ok(Status::Ok)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationRecord {
    pub config: ConfigRecord,
    pub feasible: bool,
    pub investment: InvestmentCost,
    pub annual: Option<CostBreakdown>,
    pub npv_eur: Option<f64>,
}

impl From<&Evaluation> for EvaluationRecord {
    fn from(e: &Evaluation) -> Self {
        Self {
            config: (&e.config).into(),
            feasible: e.feasible(),
            investment: e.investment,
            annual: e.annual().copied(),
            npv_eur: e.npv,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestConfigReport {
    pub best: EvaluationRecord,
    pub delta_npv_eur: f64,
    pub reference: EvaluationRecord,
    pub grid_cells: usize,
    pub feasible_cells: usize,
    pub de_generations: Option<usize>,
    pub coarse: bool,
}

fn reference(ctx: &Session, ev: &Evaluator, opts: ReferenceOptions) -> Result<Evaluation> {
    let r = search::optimize_reference(ev, &ctx.run.investment, &opts)?;
    log::info!(
        "reference: P_eb_max = {:.0} kW, NPV = {:.0} EUR",
        r.config.p_eb_max / 1e3,
        r.score()
    );
    Ok(r)
}

fn cmd_size(ctx: &Session) -> Result<Status> {
    let plan = ctx
        .run
        .search
        .as_ref()
        .ok_or_else(|| anyhow!("size needs a [search] section"))?;
    let ev = ctx.evaluator();
    let reference = reference(ctx, &ev, plan.reference)?;
    let r = search::size(&plan.space, &ev, &ctx.run.investment, &reference, plan.de.as_ref())?;

    let mut w = create(&ctx.out, "grid.csv")?;
    search::write_sweep_csv(&mut w, &r.grid)?;
    w.flush()?;
    let mut w = create(&ctx.out, "de_trace.csv")?;
    match &r.de {
        Some(de) => search::write_de_trace_csv(&mut w, de)?,
        None => search::write_de_trace_csv(
            &mut w,
            &search::DeResult {
                best_point: Vec::new(),
                best_value: f64::NAN,
                trace: Vec::new(),
                evaluations: 0,
                converged: false,
            },
        )?,
    }
    w.flush()?;
    let report = BestConfigReport {
        best: (&r.best).into(),
        delta_npv_eur: r.delta_npv,
        reference: (&r.reference).into(),
        grid_cells: r.grid.cells.len(),
        feasible_cells: r.grid.feasible_count(),
        de_generations: r.de.as_ref().map(|d| d.trace.len().saturating_sub(1)),
        coarse: ctx.run.coarse,
    };
    write_json(&ctx.out, "best_config.json", &report)?;
    ctx.manifest(&["grid.csv", "de_trace.csv", "best_config.json"])?;
    Ok(Status::Ok)
}

fn cmd_sweep(ctx: &Session, kind: SweepKind) -> Result<Status> {
    let run = &ctx.run;
    let ev = ctx.evaluator();
    match kind {
        SweepKind::Sensitivity => {
            let plan = run
                .search
                .as_ref()
                .ok_or_else(|| anyhow!("sweep sensitivity needs a [search] section"))?;
            let (f_sa, f_b) = run
                .sensitivity
                .as_ref()
                .ok_or_else(|| anyhow!("sweep sensitivity needs a [sweep.sensitivity] section"))?;
            let reference = reference(ctx, &ev, plan.reference)?;
            let cells =
                search::sensitivity_sweep(&plan.space, &ev, &run.investment, &reference, f_sa, f_b, plan.de.as_ref())?;
            let mut w = create(&ctx.out, "sensitivity.csv")?;
            search::write_sensitivity_csv(&mut w, &cells)?;
            w.flush()?;
            ctx.manifest(&["sensitivity.csv"])?;
        }
        SweepKind::Preheat => {
            let base = run
                .system
                .ok_or_else(|| anyhow!("sweep preheat needs a [system] section with the fixed capacities"))?;
            let plan = run
                .preheat
                .as_ref()
                .ok_or_else(|| anyhow!("sweep preheat needs a [sweep.preheat] section"))?;
            let opts = ReferenceOptions {
                t0: plan.baseline_t0,
                p_eb_upper: ReferenceOptions::default().p_eb_upper.max(base.p_eb_max),
                ..ReferenceOptions::default()
            };
            let reference = reference(ctx, &ev, opts)?;
            let sweep = search::preheat_sweep(
                &ev,
                &run.investment,
                &base,
                &plan.t0,
                plan.axis,
                &plan.values,
                plan.baseline_t0,
                reference.score(),
            )?;
            let mut w = create(&ctx.out, "preheat.csv")?;
            search::write_sweep_csv(&mut w, &sweep)?;
            w.flush()?;
            ctx.manifest(&["preheat.csv"])?;
        }
    }
    Ok(Status::Ok)
}

fn cmd_validate(ctx: &Session) -> Result<Status> {
    let s = &ctx.run.scenario;
    let mut out = std::io::stdout().lock();
    writeln!(out, "steps: {} of {} s from {}", s.horizon_steps, s.dt, s.spot.start().to_rfc3339())?;
    writeln!(out, "mean spot price: {:.5} EUR/kWh", s.spot.mean())?;
    writeln!(out, "mean FCR price (all bids): {:.5} EUR/kW", s.fcr.price.mean())?;
    writeln!(
        out,
        "accepted FCR bids: {} of {}",
        s.fcr.acceptance.iter().filter(|a| **a).count(),
        s.fcr.acceptance.len()
    )?;
    writeln!(
        out,
        "steam demand: mean {:.4} kg/s, max {:.4} kg/s, total {:.0} kg",
        s.steam_demand.mean(),
        s.max_demand(),
        s.steam_demand.integral()
    )?;
    writeln!(
        out,
        "tariff: {} EUR/kWh volumetric, {} EUR/kW/month capacity over {} months",
        s.tariff.volumetric_at(0),
        s.tariff.capacity,
        s.tariff.months_per_horizon
    )?;
    if ctx.run.coarse {
        writeln!(out, "note: representative slice, annualisation factor {}", s.annualization)?;
    } else if let Err(e) = crate::market::check_annual_2024(s) {
        writeln!(out, "note: not a full-year 2024 horizon: {e}")?;
    }
    writeln!(out, "ok")?;
    Ok(Status::Ok)
}
