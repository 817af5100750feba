//! Run configuration: TOML file, named presets and scenario assembly.

use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::units::{parse_quantity, Dimension, UnitError};
use crate::dispatch::SystemConfig;
use crate::economics::{InvestmentModel, NpvParams};
use crate::market::{
    self, ColumnSpec, Currency, FcrMarket, MarketError, Scenario, ScenarioError, TariffSchedule, TimeSeries, Unit,
};
use crate::search::{Capacity, DeParams, Range, ReferenceOptions, SearchSpace};
use crate::thermo::{BatteryParams, SteamSystemParams, SECONDS_PER_MONTH};

/// Environment variable naming the directory with the 2024 input series.
pub const DATA_DIR_ENV: &str = "STEAMFLEX_DATA_DIR";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config {path}: {message}")]
    Parse { path: String, message: String },
    #[error(transparent)]
    Unit(#[from] UnitError),
    #[error("unknown preset {0:?} (available: NO-2024, DE-2024)")]
    UnknownPreset(String),
    #[error("input file {0} does not exist")]
    MissingFile(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{file}: {source}")]
    Market {
        file: String,
        #[source]
        source: MarketError,
    },
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

/// File layout of the TOML config. Quantities are strings with units.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub preset: Option<String>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub data: DataSection,
    #[serde(default)]
    pub scenario: ScenarioSection,
    #[serde(default)]
    pub tariff: TariffSection,
    #[serde(default)]
    pub thermo: ThermoSection,
    #[serde(default)]
    pub battery: BatterySection,
    pub system: Option<SystemSection>,
    pub search: Option<SearchSection>,
    #[serde(default)]
    pub economics: EconomicsSection,
    #[serde(default)]
    pub sweep: SweepSection,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataSection {
    /// Base for relative paths; defaults to the config file's directory.
    pub dir: Option<PathBuf>,
    pub spot: Option<SeriesFile>,
    pub fcr: Option<SeriesFile>,
    pub steam: Option<SeriesFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesFile {
    pub path: PathBuf,
    /// `EUR/kWh`, `NOK/kWh`, `EUR/kW`, `NOK/kW` or `kg/s`.
    pub unit: String,
    pub timestamp_column: Option<String>,
    pub value_column: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    /// RFC 3339 start of the horizon.
    pub start: Option<String>,
    pub step: Option<String>,
    pub horizon: Option<String>,
    pub weekend_factor: Option<f64>,
    pub fcr_acceptance: Option<f64>,
    pub nok_to_eur: Option<f64>,
    /// Representative sub-horizon for quick runs. Results are extrapolated and
    /// not equivalent to a full-year evaluation.
    pub slice: Option<SliceSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceSection {
    pub offset: String,
    pub length: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TariffSection {
    pub volumetric: Option<String>,
    pub capacity: Option<String>,
    /// Billing months covered by the horizon.
    pub months: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThermoSection {
    pub t_op: Option<String>,
    pub t_ambient: Option<String>,
    /// kg/m³.
    pub store_density: Option<f64>,
    /// Fraction per month; replaces the geometry-derived value.
    pub sa_self_discharge: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatterySection {
    pub eta_charge: Option<f64>,
    pub eta_discharge: Option<f64>,
    /// Fraction per month.
    pub self_discharge: Option<f64>,
    pub soc_min: Option<f64>,
    pub soc_max: Option<f64>,
    pub soc_init: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSection {
    pub p_eb_max: String,
    pub m_sa_max: Option<String>,
    pub q_b_max: Option<String>,
    pub c_rate: Option<String>,
    pub t0: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSection {
    pub min: String,
    pub max: String,
    pub points: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSection {
    pub m_sa_max: Option<RangeSection>,
    pub p_eb_max: Option<RangeSection>,
    pub q_b_max: Option<RangeSection>,
    pub c_rate: Option<RangeSection>,
    pub t0: Option<String>,
    /// Largest boiler tried for the no-storage reference.
    pub reference_max: Option<String>,
    pub de: Option<DeSection>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeSection {
    pub enabled: Option<bool>,
    pub population: Option<usize>,
    pub f: Option<f64>,
    pub cr: Option<f64>,
    pub generations: Option<usize>,
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EconomicsSection {
    pub discount_rate: Option<f64>,
    pub lifetime: Option<u32>,
    pub maintenance: Option<f64>,
    pub year_index_start: Option<u32>,
    pub f_eb: Option<f64>,
    pub f_sa: Option<f64>,
    pub f_b: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub sensitivity: Option<SensitivitySection>,
    pub preheat: Option<PreheatSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensitivitySection {
    pub f_sa: Vec<f64>,
    pub f_b: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreheatSection {
    pub t0: Vec<String>,
    /// `m_sa_max`, `p_eb_max`, `q_b_max` or `c_rate`.
    pub axis: String,
    pub values: Vec<String>,
    pub baseline_t0: Option<String>,
}

impl RunConfig {
    pub fn from_toml(text: &str, origin: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse {
            path: origin.into(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text, &path.display().to_string())
    }
}

/// Built-in region defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub tariff: TariffSchedule,
    pub spot: (&'static str, Unit),
    pub fcr: (&'static str, Unit),
    pub steam: (&'static str, Unit),
    pub system: SystemConfig,
}

pub fn preset(name: &str) -> Result<Preset, ConfigError> {
    let steam = ("steam_demand_raw.csv", Unit::MassFlow);
    match name {
        "NO-2024" => Ok(Preset {
            name: "NO-2024",
            tariff: TariffSchedule::norway_2024(),
            spot: ("spot_no3_2024.csv", Unit::EnergyPrice(Currency::Nok)),
            fcr: ("fcr_no3_2024.csv", Unit::CapacityPrice(Currency::Nok)),
            steam,
            system: SystemConfig {
                p_eb_max: 1702e3,
                m_sa_max: 438.0,
                q_b_max: 0.0,
                c_rate: 0.9,
                t0: 283.0,
            },
        }),
        "DE-2024" => Ok(Preset {
            name: "DE-2024",
            tariff: TariffSchedule::germany_2024(),
            spot: ("spot_de_2024.csv", Unit::EnergyPrice(Currency::Eur)),
            fcr: ("fcr_de_2024.csv", Unit::CapacityPrice(Currency::Eur)),
            steam,
            system: SystemConfig {
                p_eb_max: 1413e3,
                m_sa_max: 2125.0,
                q_b_max: 0.0,
                c_rate: 0.9,
                t0: 283.0,
            },
        }),
        other => Err(ConfigError::UnknownPreset(other.into())),
    }
}

/// Search grid used when a config asks for sizing without giving ranges.
pub fn default_search_space() -> SearchSpace {
    SearchSpace {
        m_sa_max: Range { min: 0.0, max: 3000.0, points: 7 },
        p_eb_max: Range { min: 1.0e6, max: 3.0e6, points: 5 },
        q_b_max: Range { min: 0.0, max: 1.0e6, points: 3 },
        c_rate: Range::fixed(0.9),
        t0: 283.0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchPlan {
    pub space: SearchSpace,
    pub reference: ReferenceOptions,
    pub de: Option<DeParams>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PreheatPlan {
    pub t0: Vec<f64>,
    pub axis: Capacity,
    pub values: Vec<f64>,
    pub baseline_t0: f64,
}

/// Fully resolved run: SI values, loaded data, defaults applied.
#[derive(Debug, Clone)]
pub struct Run {
    pub preset: Option<String>,
    pub scenario: Scenario,
    /// Set when the scenario is a representative slice.
    pub coarse: bool,
    pub params: SteamSystemParams,
    pub battery: BatteryParams,
    pub npv: NpvParams,
    pub investment: InvestmentModel,
    pub seed: u64,
    pub system: Option<SystemConfig>,
    pub search: Option<SearchPlan>,
    pub sensitivity: Option<(Vec<f64>, Vec<f64>)>,
    pub preheat: Option<PreheatPlan>,
    pub inputs: Vec<PathBuf>,
}

pub struct Overrides<'a> {
    pub preset: Option<&'a str>,
    pub seed: Option<u64>,
    /// Directory relative paths in the config are resolved against.
    pub base_dir: PathBuf,
}

fn q(field: &str, v: &Option<String>, dim: Dimension, default: f64) -> Result<f64, ConfigError> {
    match v {
        Some(s) => Ok(parse_quantity(field, s, dim)?),
        None => Ok(default),
    }
}

fn range(field: &str, r: &Option<RangeSection>, dim: Dimension, default: Range) -> Result<Range, ConfigError> {
    match r {
        None => Ok(default),
        Some(r) => Ok(Range {
            min: parse_quantity(&format!("{field}.min"), &r.min, dim)?,
            max: parse_quantity(&format!("{field}.max"), &r.max, dim)?,
            points: r.points,
        }),
    }
}

fn axis_by_name(name: &str) -> Result<(Capacity, Dimension), ConfigError> {
    Ok(match name {
        "m_sa_max" => (Capacity::MSaMax, Dimension::Mass),
        "p_eb_max" => (Capacity::PEbMax, Dimension::Power),
        "q_b_max" => (Capacity::QBMax, Dimension::Energy),
        "c_rate" => (Capacity::CRate, Dimension::Rate),
        other => return Err(invalid(format!("sweep.preheat.axis {other:?} is not a capacity axis"))),
    })
}

impl RunConfig {
    /// Applies preset defaults and overrides, loads the input series and
    /// checks the result.
    pub fn resolve(&self, ov: &Overrides<'_>) -> Result<Run, ConfigError> {
        let preset_name = ov.preset.map(str::to_string).or_else(|| self.preset.clone());
        let preset = preset_name.as_deref().map(preset).transpose()?;
        let seed = ov.seed.or(self.seed).unwrap_or(2024);

        if self.system.is_some() && self.search.is_some() {
            return Err(invalid("give either [system] or [search], not both"));
        }

        let params = self.thermo_params()?;
        let battery = self.battery_params();
        battery.validate().map_err(|e| invalid(e.to_string()))?;

        let e = &self.economics;
        let npv = NpvParams {
            discount_rate: e.discount_rate.unwrap_or(0.05),
            lifetime: e.lifetime.unwrap_or(15),
            maintenance_fraction: e.maintenance.unwrap_or(0.02),
            year_index_start: e.year_index_start.unwrap_or(0),
        };
        npv.validate().map_err(|e| invalid(e.to_string()))?;
        let investment = InvestmentModel::default().with_factors(
            e.f_eb.unwrap_or(1.0),
            e.f_sa.unwrap_or(1.0),
            e.f_b.unwrap_or(1.0),
        );
        investment.validate().map_err(|e| invalid(e.to_string()))?;

        let system = match &self.system {
            Some(s) => {
                let c = SystemConfig {
                    p_eb_max: parse_quantity("system.p_eb_max", &s.p_eb_max, Dimension::Power)?,
                    m_sa_max: q("system.m_sa_max", &s.m_sa_max, Dimension::Mass, 0.0)?,
                    q_b_max: q("system.q_b_max", &s.q_b_max, Dimension::Energy, 0.0)?,
                    c_rate: q("system.c_rate", &s.c_rate, Dimension::Rate, 0.9)?,
                    t0: q("system.t0", &s.t0, Dimension::Temperature, 283.0)?,
                };
                c.validate().map_err(|e| invalid(e.to_string()))?;
                Some(c)
            }
            None if self.search.is_none() => preset.as_ref().map(|p| p.system),
            None => None,
        };

        let search = match &self.search {
            None => None,
            Some(s) => {
                let d = default_search_space();
                let space = SearchSpace {
                    m_sa_max: range("search.m_sa_max", &s.m_sa_max, Dimension::Mass, d.m_sa_max)?,
                    p_eb_max: range("search.p_eb_max", &s.p_eb_max, Dimension::Power, d.p_eb_max)?,
                    q_b_max: range("search.q_b_max", &s.q_b_max, Dimension::Energy, d.q_b_max)?,
                    c_rate: range("search.c_rate", &s.c_rate, Dimension::Rate, d.c_rate)?,
                    t0: q("search.t0", &s.t0, Dimension::Temperature, d.t0)?,
                };
                space.validate().map_err(|e| invalid(e.to_string()))?;
                let reference = ReferenceOptions {
                    p_eb_upper: q(
                        "search.reference_max",
                        &s.reference_max,
                        Dimension::Power,
                        space.p_eb_max.max.max(ReferenceOptions::default().p_eb_upper),
                    )?,
                    t0: space.t0,
                    ..ReferenceOptions::default()
                };
                let de = match &s.de {
                    Some(d) if d.enabled == Some(false) => None,
                    d => {
                        let d = d.clone().unwrap_or_default();
                        let base = DeParams::default();
                        let p = DeParams {
                            population: d.population.unwrap_or(base.population),
                            f: d.f.unwrap_or(base.f),
                            cr: d.cr.unwrap_or(base.cr),
                            generations: d.generations.unwrap_or(base.generations),
                            tol: d.tol.unwrap_or(base.tol),
                            seed,
                        };
                        p.validate().map_err(|e| invalid(e.to_string()))?;
                        Some(p)
                    }
                };
                Some(SearchPlan { space, reference, de })
            }
        };

        let sensitivity = self.sweep.sensitivity.as_ref().map(|s| (s.f_sa.clone(), s.f_b.clone()));
        let preheat = match &self.sweep.preheat {
            None => None,
            Some(p) => {
                let (axis, dim) = axis_by_name(&p.axis)?;
                let t0 = p
                    .t0
                    .iter()
                    .map(|t| parse_quantity("sweep.preheat.t0", t, Dimension::Temperature))
                    .collect::<Result<Vec<_>, _>>()?;
                let values = p
                    .values
                    .iter()
                    .map(|v| parse_quantity("sweep.preheat.values", v, dim))
                    .collect::<Result<Vec<_>, _>>()?;
                let baseline_t0 = q("sweep.preheat.baseline_t0", &p.baseline_t0, Dimension::Temperature, 283.0)?;
                Some(PreheatPlan {
                    t0,
                    axis,
                    values,
                    baseline_t0,
                })
            }
        };

        let (scenario, coarse, inputs) = self.load_scenario(preset.as_ref(), ov, seed)?;

        Ok(Run {
            preset: preset_name,
            scenario,
            coarse,
            params,
            battery,
            npv,
            investment,
            seed,
            system,
            search,
            sensitivity,
            preheat,
            inputs,
        })
    }

    fn thermo_params(&self) -> Result<SteamSystemParams, ConfigError> {
        let t = &self.thermo;
        let mut p = SteamSystemParams::default();
        if let Some(s) = &t.t_op {
            p.t_op = parse_quantity("thermo.t_op", s, Dimension::Temperature)?;
        }
        if let Some(s) = &t.t_ambient {
            p.t_ambient = parse_quantity("thermo.t_ambient", s, Dimension::Temperature)?;
        }
        if let Some(d) = t.store_density {
            p.tank.store_density = d;
        }
        if let Some(e) = t.sa_self_discharge {
            p.self_discharge_override = Some(e / SECONDS_PER_MONTH);
        }
        p.validate().map_err(|e| invalid(e.to_string()))?;
        Ok(p)
    }

    fn battery_params(&self) -> BatteryParams {
        let b = &self.battery;
        let d = BatteryParams::default();
        BatteryParams {
            eta_charge: b.eta_charge.unwrap_or(d.eta_charge),
            eta_discharge: b.eta_discharge.unwrap_or(d.eta_discharge),
            self_discharge: b.self_discharge.unwrap_or(d.self_discharge),
            soc_min_frac: b.soc_min.unwrap_or(d.soc_min_frac),
            soc_max_frac: b.soc_max.unwrap_or(d.soc_max_frac),
            soc_init_frac: b.soc_init.unwrap_or(d.soc_init_frac),
        }
    }

    fn data_dir(&self, ov: &Overrides<'_>) -> PathBuf {
        match &self.data.dir {
            Some(d) if d.is_absolute() => d.clone(),
            Some(d) => ov.base_dir.join(d),
            None => std::env::var_os(DATA_DIR_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| ov.base_dir.clone()),
        }
    }

    fn load_scenario(
        &self,
        preset: Option<&Preset>,
        ov: &Overrides<'_>,
        seed: u64,
    ) -> Result<(Scenario, bool, Vec<PathBuf>), ConfigError> {
        let dir = self.data_dir(ov);
        let pick = |given: &Option<SeriesFile>, fallback: Option<(&str, Unit)>, what: &str| -> Result<(PathBuf, Unit, ColumnSpec), ConfigError> {
            match (given, fallback) {
                (Some(f), _) => {
                    let unit: Unit = f.unit.parse().map_err(|e: MarketError| invalid(format!("data.{what}.unit: {e}")))?;
                    let d = ColumnSpec::default();
                    let spec = ColumnSpec {
                        timestamp: f.timestamp_column.clone().unwrap_or(d.timestamp),
                        value: f.value_column.clone().unwrap_or(d.value),
                        dt: None,
                    };
                    Ok((dir.join(&f.path), unit, spec))
                }
                (None, Some((name, unit))) => Ok((dir.join(name), unit, ColumnSpec::default())),
                (None, None) => Err(invalid(format!("no data.{what} file given and no preset selected"))),
            }
        };
        let spot_f = pick(&self.data.spot, preset.map(|p| p.spot), "spot")?;
        let fcr_f = pick(&self.data.fcr, preset.map(|p| p.fcr), "fcr")?;
        let steam_f = pick(&self.data.steam, preset.map(|p| p.steam), "steam")?;
        for (path, _, _) in [&spot_f, &fcr_f, &steam_f] {
            if !path.is_file() {
                return Err(ConfigError::MissingFile(path.display().to_string()));
            }
        }
        let load = |(path, unit, spec): &(PathBuf, Unit, ColumnSpec)| {
            market::load_timeseries(path, *unit, spec).map_err(|source| ConfigError::Market {
                file: path.display().to_string(),
                source,
            })
        };

        let s = &self.scenario;
        let start: DateTime<Utc> = match &s.start {
            Some(t) => DateTime::parse_from_rfc3339(t)
                .map_err(|e| invalid(format!("scenario.start {t:?}: {e}")))?
                .with_timezone(&Utc),
            None => market::start_2024(),
        };
        let step = q("scenario.step", &s.step, Dimension::Duration, 3600.0)?;
        let horizon = q("scenario.horizon", &s.horizon, Dimension::Duration, 3600.0 * market::HOURS_2024 as f64)?;
        if !(step >= 1.0 && step.fract() == 0.0 && horizon >= step && (horizon / step).fract() == 0.0) {
            return Err(invalid(format!(
                "scenario.horizon ({horizon} s) must be a whole number of steps ({step} s)"
            )));
        }
        let dt = step as u32;
        let n = (horizon / step) as usize;
        let rate = s.nok_to_eur.unwrap_or(market::NOK_TO_EUR);

        let price = |f: &(PathBuf, Unit, ColumnSpec)| -> Result<TimeSeries, ConfigError> {
            let ts = load(f)?;
            let wrap = |source| ConfigError::Market {
                file: f.0.display().to_string(),
                source,
            };
            let ts = if ts.unit().currency() == Some(Currency::Nok) {
                market::convert_currency(&ts, rate, Currency::Eur).map_err(wrap)?
            } else {
                ts
            };
            let ts = if ts.dt() == dt { ts } else { market::resample_mean(&ts, dt).map_err(wrap)? };
            let offset = (start - ts.start()).num_seconds();
            if offset < 0 || offset % i64::from(dt) != 0 {
                return Err(invalid(format!(
                    "{} starts at {}, which does not allow a horizon starting at {}",
                    f.0.display(),
                    ts.start().to_rfc3339(),
                    start.to_rfc3339()
                )));
            }
            ts.slice((offset / i64::from(dt)) as usize, n).map_err(|_| {
                invalid(format!(
                    "{} covers {} steps from {}, horizon needs {n} from {}",
                    f.0.display(),
                    ts.len(),
                    ts.start().to_rfc3339(),
                    start.to_rfc3339()
                ))
            })
        };
        let spot = price(&spot_f)?;
        let fcr = price(&fcr_f)?;

        // The demand record is a representative period; its first sample is
        // placed at the horizon start and the record is repeated.
        let raw = load(&steam_f)?;
        let wrap = |source| ConfigError::Market {
            file: steam_f.0.display().to_string(),
            source,
        };
        let raw = if raw.dt() == dt { raw } else { market::resample_mean(&raw, dt).map_err(wrap)? };
        let raw = TimeSeries::new(start, dt, raw.values().to_vec(), raw.unit()).map_err(wrap)?;
        let demand = market::extend_periodic(&raw, n);
        let demand = market::apply_weekend_scaling_calendar(&demand, s.weekend_factor.unwrap_or(0.25)).map_err(wrap)?;

        let t = &self.tariff;
        let base_tariff = preset.map(|p| p.tariff.clone()).unwrap_or_else(|| TariffSchedule::flat(0.0, 0.0, 12.0));
        let base_vol = base_tariff.volumetric_at(0);
        let tariff = TariffSchedule::flat(
            q("tariff.volumetric", &t.volumetric, Dimension::EnergyPrice, base_vol)?,
            q("tariff.capacity", &t.capacity, Dimension::CapacityPrice, base_tariff.capacity)?,
            t.months.unwrap_or(base_tariff.months_per_horizon * horizon / (3600.0 * market::HOURS_2024 as f64)),
        );
        let fcr = FcrMarket::new(fcr, s.fcr_acceptance.unwrap_or(0.5), seed);
        let mut scenario = market::assemble_scenario(spot, tariff, fcr, demand)?;
        // Annualisation maps the horizon to one year.
        scenario.annualization = 3600.0 * market::HOURS_2024 as f64 / horizon;

        let mut coarse = false;
        if let Some(sl) = &s.slice {
            let off = parse_quantity("scenario.slice.offset", &sl.offset, Dimension::Duration)?;
            let len = parse_quantity("scenario.slice.length", &sl.length, Dimension::Duration)?;
            let (o, l) = (off / step, len / step);
            if o.fract() != 0.0 || l.fract() != 0.0 || l < 1.0 {
                return Err(invalid("scenario.slice must be a whole, positive number of steps"));
            }
            scenario = scenario
                .slice(o as usize, l as usize)
                .map_err(|e| invalid(format!("scenario.slice: {e}")))?;
            coarse = true;
        }
        Ok((scenario, coarse, vec![spot_f.0, fcr_f.0, steam_f.0]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_keys_and_units() {
        assert!(RunConfig::from_toml("bogus = 1", "t").is_err());
        let c = RunConfig::from_toml("[system]\np_eb_max = \"1413 kWh\"", "t").unwrap();
        let ov = Overrides {
            preset: Some("NO-2024"),
            seed: None,
            base_dir: PathBuf::from("."),
        };
        assert!(matches!(c.resolve(&ov), Err(ConfigError::Unit(_))));
    }

    #[test]
    fn system_and_search_are_exclusive() {
        let c = RunConfig::from_toml("[system]\np_eb_max = \"1 MW\"\n[search]\n", "t").unwrap();
        let ov = Overrides {
            preset: None,
            seed: None,
            base_dir: PathBuf::from("."),
        };
        assert!(matches!(c.resolve(&ov), Err(ConfigError::Invalid(_))));
    }

    #[test]
    fn presets_exist() {
        assert_eq!(preset("NO-2024").unwrap().tariff, TariffSchedule::norway_2024());
        assert_eq!(preset("DE-2024").unwrap().system.m_sa_max, 2125.0);
        assert!(matches!(preset("SE-2024"), Err(ConfigError::UnknownPreset(_))));
    }
}
