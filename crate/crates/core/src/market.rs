//! Exogenous time series and tariffs, cleaned and aligned into a [`Scenario`].
//!
//! Series are read from a canonical CSV with header `timestamp,value`, RFC 3339
//! UTC timestamps and a decimal point. Ingestion never fills gaps.

use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use chrono::{DateTime, Datelike, Duration, NaiveDate, Timelike, Utc, Weekday};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// NOK to EUR conversion rate for 2024.
pub const NOK_TO_EUR: f64 = 0.086;
/// Hours in the 2024 leap year.
pub const HOURS_2024: usize = 8784;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Currency {
    #[serde(rename = "EUR")]
    Eur,
    #[serde(rename = "NOK")]
    Nok,
}

impl fmt::Display for Currency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Currency::Eur => "EUR",
            Currency::Nok => "NOK",
        })
    }
}

/// Physical or monetary unit carried by a [`TimeSeries`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    /// Currency per kWh.
    EnergyPrice(Currency),
    /// Currency per kW of standby capacity per bid hour.
    CapacityPrice(Currency),
    /// kg/s.
    MassFlow,
    /// W.
    Power,
}

impl Unit {
    pub fn currency(&self) -> Option<Currency> {
        match self {
            Unit::EnergyPrice(c) | Unit::CapacityPrice(c) => Some(*c),
            _ => None,
        }
    }

    fn with_currency(self, c: Currency) -> Option<Unit> {
        match self {
            Unit::EnergyPrice(_) => Some(Unit::EnergyPrice(c)),
            Unit::CapacityPrice(_) => Some(Unit::CapacityPrice(c)),
            _ => None,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unit::EnergyPrice(c) => write!(f, "{c}/kWh"),
            Unit::CapacityPrice(c) => write!(f, "{c}/kW"),
            Unit::MassFlow => f.write_str("kg/s"),
            Unit::Power => f.write_str("W"),
        }
    }
}

impl FromStr for Unit {
    type Err = MarketError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "EUR/kWh" => Unit::EnergyPrice(Currency::Eur),
            "NOK/kWh" => Unit::EnergyPrice(Currency::Nok),
            "EUR/kW" => Unit::CapacityPrice(Currency::Eur),
            "NOK/kW" => Unit::CapacityPrice(Currency::Nok),
            "kg/s" => Unit::MassFlow,
            "W" => Unit::Power,
            other => return Err(MarketError::UnknownUnit(other.to_string())),
        })
    }
}

#[derive(Debug, Error)]
pub enum MarketError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Malformed { line: u64, message: String },
    #[error("line {line}: timestamp {ts} is not after the previous timestamp {prev}")]
    NonMonotone { line: u64, ts: String, prev: String },
    #[error("line {line}: duplicate timestamp {ts}")]
    Duplicate { line: u64, ts: String },
    #[error("line {line}: gap in series, missing interval from {from} to {to}")]
    Gap { line: u64, from: String, to: String },
    #[error("series is empty")]
    Empty,
    #[error("cannot infer the time step from a single row; give it explicitly")]
    UnknownStep,
    #[error("invalid series: {0}")]
    Invalid(String),
    #[error("new step {new_dt} s is not a positive multiple of {dt} s")]
    NotDivisible { dt: u32, new_dt: u32 },
    #[error("series length {len} is not a multiple of the resampling factor {factor}")]
    PartialBucket { len: usize, factor: usize },
    #[error("time step {0} s does not divide one day")]
    StepNotDayDivisor(u32),
    #[error("factor {0} outside [0, 1]")]
    BadFactor(f64),
    #[error("conversion rate must be positive, got {0}")]
    BadRate(f64),
    #[error("unit {0} carries no currency")]
    NotMonetary(Unit),
    #[error("unknown unit {0:?}")]
    UnknownUnit(String),
}

/// Regularly sampled series with an immutable unit tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    start: DateTime<Utc>,
    dt: u32,
    values: Vec<f64>,
    unit: Unit,
}

impl TimeSeries {
    pub fn new(start: DateTime<Utc>, dt: u32, values: Vec<f64>, unit: Unit) -> Result<Self, MarketError> {
        if dt == 0 {
            return Err(MarketError::Invalid("time step must be positive".into()));
        }
        if values.is_empty() {
            return Err(MarketError::Empty);
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(MarketError::Invalid(format!("value at step {i} is not finite")));
        }
        Ok(Self { start, dt, values, unit })
    }

    /// Hourly series starting at 2024-01-01T00:00Z.
    pub fn hourly_2024(values: Vec<f64>, unit: Unit) -> Result<Self, MarketError> {
        Self::new(start_2024(), 3600, values, unit)
    }

    pub fn start(&self) -> DateTime<Utc> {
        self.start
    }

    /// Step length, s.
    pub fn dt(&self) -> u32 {
        self.dt
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Σ value·dt, in value·s.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * f64::from(self.dt)
    }

    pub fn timestamp(&self, step: usize) -> DateTime<Utc> {
        self.start + Duration::seconds(i64::from(self.dt) * step as i64)
    }

    /// Contiguous sub-series.
    pub fn slice(&self, offset: usize, len: usize) -> Result<Self, MarketError> {
        if len == 0 || offset + len > self.len() {
            return Err(MarketError::Invalid(format!(
                "slice {offset}..{} outside series of length {}",
                offset + len,
                self.len()
            )));
        }
        Ok(Self {
            start: self.timestamp(offset),
            dt: self.dt,
            values: self.values[offset..offset + len].to_vec(),
            unit: self.unit,
        })
    }

    fn map_values(&self, f: impl Fn(usize, f64) -> f64) -> Self {
        Self {
            values: self.values.iter().enumerate().map(|(i, &v)| f(i, v)).collect(),
            ..self.clone()
        }
    }
}

pub fn start_2024() -> DateTime<Utc> {
    NaiveDate::from_ymd_opt(2024, 1, 1)
        .and_then(|d| d.and_hms_opt(0, 0, 0))
        .map(|d| d.and_utc())
        .expect("valid date")
}

/// Column names and optional fixed step for CSV ingestion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnSpec {
    pub timestamp: String,
    pub value: String,
    /// Required when the file has a single row.
    pub dt: Option<u32>,
}

impl Default for ColumnSpec {
    fn default() -> Self {
        Self {
            timestamp: "timestamp".into(),
            value: "value".into(),
            dt: None,
        }
    }
}

pub fn load_timeseries(path: &Path, unit: Unit, spec: &ColumnSpec) -> Result<TimeSeries, MarketError> {
    let file = std::fs::File::open(path).map_err(|source| MarketError::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_timeseries(file, unit, spec)
}

pub fn read_timeseries<R: Read>(reader: R, unit: Unit, spec: &ColumnSpec) -> Result<TimeSeries, MarketError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| MarketError::Malformed { line: 1, message: e.to_string() })?
        .clone();
    let col = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| MarketError::Malformed {
            line: 1,
            message: format!("missing column {name:?}"),
        })
    };
    let ts_col = col(&spec.timestamp)?;
    let val_col = col(&spec.value)?;

    let mut stamps: Vec<DateTime<Utc>> = Vec::new();
    let mut values = Vec::new();
    let mut dt: Option<i64> = spec.dt.map(i64::from);
    for rec in rdr.records() {
        let rec = rec.map_err(|e| MarketError::Malformed {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        let field = |i: usize| {
            rec.get(i).ok_or_else(|| MarketError::Malformed {
                line,
                message: format!("missing field {}", i + 1),
            })
        };
        let raw_ts = field(ts_col)?;
        let ts = DateTime::parse_from_rfc3339(raw_ts)
            .map_err(|e| MarketError::Malformed {
                line,
                message: format!("bad timestamp {raw_ts:?}: {e}"),
            })?
            .with_timezone(&Utc);
        let raw_v = field(val_col)?;
        let v: f64 = raw_v.parse().map_err(|e| MarketError::Malformed {
            line,
            message: format!("bad value {raw_v:?}: {e}"),
        })?;
        if !v.is_finite() {
            return Err(MarketError::Malformed {
                line,
                message: format!("value {raw_v:?} is not finite"),
            });
        }
        if let Some(&prev) = stamps.last() {
            let step = (ts - prev).num_seconds();
            if step == 0 {
                return Err(MarketError::Duplicate { line, ts: ts.to_rfc3339() });
            }
            if step < 0 {
                return Err(MarketError::NonMonotone {
                    line,
                    ts: ts.to_rfc3339(),
                    prev: prev.to_rfc3339(),
                });
            }
            let expected = *dt.get_or_insert(step);
            if step != expected {
                if step > expected && step % expected == 0 {
                    return Err(MarketError::Gap {
                        line,
                        from: (prev + Duration::seconds(expected)).to_rfc3339(),
                        to: ts.to_rfc3339(),
                    });
                }
                return Err(MarketError::Malformed {
                    line,
                    message: format!("irregular step of {step} s, expected {expected} s"),
                });
            }
        }
        stamps.push(ts);
        values.push(v);
    }
    let start = *stamps.first().ok_or(MarketError::Empty)?;
    let dt = dt.ok_or(MarketError::UnknownStep)?;
    let dt = u32::try_from(dt).map_err(|_| MarketError::Invalid(format!("step {dt} s out of range")))?;
    TimeSeries::new(start, dt, values, unit)
}

/// Writes the canonical CSV form.
pub fn write_timeseries<W: std::io::Write>(ts: &TimeSeries, out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["timestamp", "value"])?;
    for (i, v) in ts.values.iter().enumerate() {
        w.write_record([ts.timestamp(i).format("%Y-%m-%dT%H:%M:%SZ").to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Block means over `new_dt / dt` samples.
pub fn resample_mean(ts: &TimeSeries, new_dt: u32) -> Result<TimeSeries, MarketError> {
    if new_dt == 0 || new_dt % ts.dt != 0 {
        return Err(MarketError::NotDivisible { dt: ts.dt, new_dt });
    }
    let factor = (new_dt / ts.dt) as usize;
    if ts.len() % factor != 0 {
        return Err(MarketError::PartialBucket { len: ts.len(), factor });
    }
    let values = ts
        .values
        .chunks(factor)
        .map(|c| c.iter().sum::<f64>() / factor as f64)
        .collect();
    TimeSeries::new(ts.start, new_dt, values, ts.unit)
}

/// Repeats the series cyclically to `horizon_steps` values.
pub fn extend_periodic(ts: &TimeSeries, horizon_steps: usize) -> TimeSeries {
    let n = ts.len();
    TimeSeries {
        values: (0..horizon_steps).map(|i| ts.values[i % n]).collect(),
        ..ts.clone()
    }
}

/// Multiplies values on Saturdays and Sundays by `factor`.
///
/// Day boundaries follow the series' UTC time of day; `first_weekday` names
/// the weekday of the first step.
pub fn apply_weekend_scaling(ts: &TimeSeries, factor: f64, first_weekday: Weekday) -> Result<TimeSeries, MarketError> {
    if !(0.0..=1.0).contains(&factor) {
        return Err(MarketError::BadFactor(factor));
    }
    if 86_400 % ts.dt != 0 {
        return Err(MarketError::StepNotDayDivisor(ts.dt));
    }
    let offset = i64::from(ts.start.num_seconds_from_midnight());
    let first = i64::from(first_weekday.num_days_from_monday());
    let dt = i64::from(ts.dt);
    Ok(ts.map_values(|i, v| {
        let day = (offset + dt * i as i64) / 86_400;
        if (first + day).rem_euclid(7) >= 5 {
            v * factor
        } else {
            v
        }
    }))
}

/// Weekend scaling using the weekday of the series' own start date.
pub fn apply_weekend_scaling_calendar(ts: &TimeSeries, factor: f64) -> Result<TimeSeries, MarketError> {
    apply_weekend_scaling(ts, factor, ts.start.weekday())
}

/// Exactly `round(fraction·n_hours)` true entries at uniformly drawn positions.
pub fn build_acceptance_mask(n_hours: usize, fraction: f64, seed: u64) -> Vec<bool> {
    let fraction = fraction.clamp(0.0, 1.0);
    let k = ((fraction * n_hours as f64).round() as usize).min(n_hours);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mask = vec![false; n_hours];
    for i in rand::seq::index::sample(&mut rng, n_hours, k) {
        mask[i] = true;
    }
    mask
}

/// Multiplies a monetary series by `rate` and relabels it in `target` currency.
pub fn convert_currency(ts: &TimeSeries, rate: f64, target: Currency) -> Result<TimeSeries, MarketError> {
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(MarketError::BadRate(rate));
    }
    let unit = ts.unit.with_currency(target).ok_or(MarketError::NotMonetary(ts.unit))?;
    let mut out = ts.map_values(|_, v| v * rate);
    out.unit = unit;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Volumetric {
    /// EUR/kWh for every step.
    Flat(f64),
    Series(TimeSeries),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TariffSchedule {
    pub volumetric: Volumetric,
    /// EUR/kW/month on the horizon peak import.
    pub capacity: f64,
    pub months_per_horizon: f64,
}

impl TariffSchedule {
    pub fn flat(volumetric: f64, capacity: f64, months_per_horizon: f64) -> Self {
        Self {
            volumetric: Volumetric::Flat(volumetric),
            capacity,
            months_per_horizon,
        }
    }

    /// Tensio high-voltage tariff, NO3.
    pub fn norway_2024() -> Self {
        Self::flat(0.03612, 4.386, 12.0)
    }

    /// 50Hertz high-voltage tariff.
    pub fn germany_2024() -> Self {
        Self::flat(0.0074, 32.11, 12.0)
    }

    pub fn volumetric_at(&self, step: usize) -> f64 {
        match &self.volumetric {
            Volumetric::Flat(v) => *v,
            Volumetric::Series(ts) => ts.values[step],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FcrMarket {
    /// EUR/kW per bid hour.
    pub price: TimeSeries,
    pub acceptance: Vec<bool>,
    pub acceptance_fraction: f64,
    pub rng_seed: u64,
}

impl FcrMarket {
    /// Market with a freshly drawn acceptance mask.
    pub fn new(price: TimeSeries, acceptance_fraction: f64, rng_seed: u64) -> Self {
        let acceptance = build_acceptance_mask(price.len(), acceptance_fraction, rng_seed);
        Self {
            price,
            acceptance,
            acceptance_fraction,
            rng_seed,
        }
    }

    /// Every bid accepted.
    pub fn always_accepted(price: TimeSeries) -> Self {
        let n = price.len();
        Self {
            price,
            acceptance: vec![true; n],
            acceptance_fraction: 1.0,
            rng_seed: 0,
        }
    }

    /// Price with rejected hours set to zero.
    pub fn effective_price(&self) -> Vec<f64> {
        self.price
            .values
            .iter()
            .zip(&self.acceptance)
            .map(|(&p, &a)| if a { p } else { 0.0 })
            .collect()
    }
}

/// Validated, time-aligned inputs for one dispatch horizon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub spot: TimeSeries,
    pub tariff: TariffSchedule,
    pub fcr: FcrMarket,
    /// kg/s.
    pub steam_demand: TimeSeries,
    /// Step length, s.
    pub dt: u32,
    pub horizon_steps: usize,
    /// Multiplier from horizon cash flows (excluding the initial charge) to annual ones.
    pub annualization: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioError {
    pub violations: Vec<String>,
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "scenario invalid: {}", self.violations.join("; "))
    }
}

impl std::error::Error for ScenarioError {}

/// Checks alignment and contents; every violation found is reported.
pub fn assemble_scenario(
    spot: TimeSeries,
    tariff: TariffSchedule,
    fcr: FcrMarket,
    demand: TimeSeries,
) -> Result<Scenario, ScenarioError> {
    let mut v = Vec::new();
    let n = demand.len();
    let reference = &demand;
    let mut check = |name: &str, ts: &TimeSeries, unit_ok: bool, expected: &str| {
        if ts.len() != n {
            v.push(format!("{name} has {} steps, steam_demand has {n}", ts.len()));
        }
        if ts.dt != reference.dt {
            v.push(format!("{name} step {} s differs from steam_demand step {} s", ts.dt, reference.dt));
        }
        if ts.start != reference.start {
            v.push(format!(
                "{name} starts at {}, steam_demand at {}",
                ts.start.to_rfc3339(),
                reference.start.to_rfc3339()
            ));
        }
        if !unit_ok {
            v.push(format!("{name} has unit {}, expected {expected}", ts.unit));
        }
    };
    check("spot", &spot, spot.unit == Unit::EnergyPrice(Currency::Eur), "EUR/kWh");
    check(
        "fcr.price",
        &fcr.price,
        fcr.price.unit == Unit::CapacityPrice(Currency::Eur),
        "EUR/kW",
    );
    if let Volumetric::Series(ts) = &tariff.volumetric {
        check(
            "tariff.volumetric",
            ts,
            ts.unit == Unit::EnergyPrice(Currency::Eur),
            "EUR/kWh",
        );
    }
    if demand.unit != Unit::MassFlow {
        v.push(format!("steam_demand has unit {}, expected kg/s", demand.unit));
    }
    if let Some(i) = demand.values.iter().position(|&d| d < 0.0) {
        v.push(format!("steam_demand is negative at step {i} ({})", demand.values[i]));
    }
    if fcr.acceptance.len() != fcr.price.len() {
        v.push(format!(
            "fcr.acceptance has {} entries, fcr.price has {}",
            fcr.acceptance.len(),
            fcr.price.len()
        ));
    }
    if !(0.0..=1.0).contains(&fcr.acceptance_fraction) {
        v.push(format!("fcr.acceptance_fraction {} outside [0, 1]", fcr.acceptance_fraction));
    }
    if let Some(i) = fcr.price.values.iter().position(|&p| p < 0.0) {
        v.push(format!("fcr.price is negative at step {i}"));
    }
    match &tariff.volumetric {
        Volumetric::Flat(x) if !(*x >= 0.0 && x.is_finite()) => {
            v.push(format!("tariff.volumetric {x} must be non-negative"))
        }
        Volumetric::Series(ts) => {
            if let Some(i) = ts.values.iter().position(|&x| x < 0.0) {
                v.push(format!("tariff.volumetric is negative at step {i}"));
            }
        }
        _ => {}
    }
    if !(tariff.capacity >= 0.0 && tariff.capacity.is_finite()) {
        v.push(format!("tariff.capacity {} must be non-negative", tariff.capacity));
    }
    if !(tariff.months_per_horizon >= 0.0 && tariff.months_per_horizon.is_finite()) {
        v.push(format!("tariff.months_per_horizon {} must be non-negative", tariff.months_per_horizon));
    }
    if 3600 % demand.dt != 0 && demand.dt % 3600 != 0 {
        v.push(format!("step {} s is neither a divisor nor a multiple of one hour", demand.dt));
    }
    if !v.is_empty() {
        return Err(ScenarioError { violations: v });
    }
    let dt = demand.dt;
    Ok(Scenario {
        spot,
        tariff,
        fcr,
        steam_demand: demand,
        dt,
        horizon_steps: n,
        annualization: 1.0,
    })
}

impl Scenario {
    pub fn dt_hours(&self) -> f64 {
        f64::from(self.dt) / 3600.0
    }

    pub fn horizon_hours(&self) -> f64 {
        self.dt_hours() * self.horizon_steps as f64
    }

    pub fn spot_at(&self, step: usize) -> f64 {
        self.spot.values[step]
    }

    pub fn volumetric_at(&self, step: usize) -> f64 {
        self.tariff.volumetric_at(step)
    }

    pub fn effective_fcr_price(&self) -> Vec<f64> {
        self.fcr.effective_price()
    }

    /// Horizon mean of spot price plus volumetric tariff, EUR/kWh.
    pub fn mean_energy_price(&self) -> f64 {
        (0..self.horizon_steps)
            .map(|t| self.spot_at(t) + self.volumetric_at(t))
            .sum::<f64>()
            / self.horizon_steps as f64
    }

    pub fn max_demand(&self) -> f64 {
        self.steam_demand.values.iter().cloned().fold(0.0, f64::max)
    }

    /// Representative sub-horizon. Capacity months shrink and the annualisation
    /// factor grows in proportion, so scaled annual costs stay comparable.
    pub fn slice(&self, offset: usize, len: usize) -> Result<Scenario, MarketError> {
        let ratio = len as f64 / self.horizon_steps as f64;
        let volumetric = match &self.tariff.volumetric {
            Volumetric::Flat(v) => Volumetric::Flat(*v),
            Volumetric::Series(ts) => Volumetric::Series(ts.slice(offset, len)?),
        };
        let fcr = FcrMarket {
            price: self.fcr.price.slice(offset, len)?,
            acceptance: self.fcr.acceptance[offset..offset + len].to_vec(),
            acceptance_fraction: self.fcr.acceptance_fraction,
            rng_seed: self.fcr.rng_seed,
        };
        Ok(Scenario {
            spot: self.spot.slice(offset, len)?,
            tariff: TariffSchedule {
                volumetric,
                capacity: self.tariff.capacity,
                months_per_horizon: self.tariff.months_per_horizon * ratio,
            },
            fcr,
            steam_demand: self.steam_demand.slice(offset, len)?,
            dt: self.dt,
            horizon_steps: len,
            annualization: self.annualization / ratio,
        })
    }

    /// Same scenario with the steam demand replaced (values in kg/s).
    pub fn with_demand(&self, values: Vec<f64>) -> Result<Scenario, MarketError> {
        let demand = TimeSeries::new(self.steam_demand.start, self.dt, values, Unit::MassFlow)?;
        let mut out = self.clone();
        out.steam_demand = demand;
        Ok(out)
    }

    /// Same scenario with every FCR price multiplied by `k`.
    pub fn with_fcr_scaled(&self, k: f64) -> Scenario {
        let mut out = self.clone();
        out.fcr.price = self.fcr.price.map_values(|_, v| v * k);
        out
    }
}

/// Hourly scenario on the 2024 calendar with every FCR bid accepted. Test and demo helper.
pub fn hourly_scenario(
    spot: Vec<f64>,
    fcr_price: Vec<f64>,
    demand: Vec<f64>,
    tariff: TariffSchedule,
) -> Result<Scenario, Box<dyn std::error::Error + Send + Sync>> {
    let spot = TimeSeries::hourly_2024(spot, Unit::EnergyPrice(Currency::Eur))?;
    let fcr = TimeSeries::hourly_2024(fcr_price, Unit::CapacityPrice(Currency::Eur))?;
    let demand = TimeSeries::hourly_2024(demand, Unit::MassFlow)?;
    Ok(assemble_scenario(spot, tariff, FcrMarket::always_accepted(fcr), demand)?)
}

/// Confirms a full-year 2024 hourly horizon.
pub fn check_annual_2024(s: &Scenario) -> Result<(), ScenarioError> {
    let mut v = Vec::new();
    if s.dt != 3600 {
        v.push(format!("annual preset expects hourly steps, got {} s", s.dt));
    }
    if s.horizon_steps != HOURS_2024 {
        v.push(format!("annual preset expects {HOURS_2024} steps, got {}", s.horizon_steps));
    }
    if s.spot.start() != start_2024() {
        v.push(format!("annual preset expects a 2024-01-01T00:00Z start, got {}", s.spot.start().to_rfc3339()));
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(ScenarioError { violations: v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn eur_kwh() -> Unit {
        Unit::EnergyPrice(Currency::Eur)
    }

    #[test]
    fn two_row_file() {
        let csv = "timestamp,value\n2024-01-01T00:00:00Z,1.0\n2024-01-01T01:00:00Z,2.0\n";
        let ts = read_timeseries(csv.as_bytes(), eur_kwh(), &ColumnSpec::default()).unwrap();
        assert_eq!(ts.len(), 2);
        assert_eq!(ts.dt(), 3600);
        assert_eq!(ts.values(), &[1.0, 2.0]);
    }

    #[test]
    fn missing_hour_names_the_gap() {
        let csv = "timestamp,value\n2024-01-01T00:00:00Z,1\n2024-01-01T01:00:00Z,1\n2024-01-01T03:00:00Z,1\n";
        let err = read_timeseries(csv.as_bytes(), eur_kwh(), &ColumnSpec::default()).unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, MarketError::Gap { line: 4, .. }), "{msg}");
        assert!(msg.contains("2024-01-01T02:00:00+00:00"), "{msg}");
    }

    #[test]
    fn malformed_and_unordered_rows() {
        let bad = "timestamp,value\n2024-01-01T00:00:00Z,1\n2024-01-01T01:00:00Z,abc\n";
        match read_timeseries(bad.as_bytes(), eur_kwh(), &ColumnSpec::default()) {
            Err(MarketError::Malformed { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let dup = "timestamp,value\n2024-01-01T00:00:00Z,1\n2024-01-01T00:00:00Z,1\n";
        assert!(matches!(
            read_timeseries(dup.as_bytes(), eur_kwh(), &ColumnSpec::default()),
            Err(MarketError::Duplicate { .. })
        ));
        let back = "timestamp,value\n2024-01-01T01:00:00Z,1\n2024-01-01T00:00:00Z,1\n";
        assert!(matches!(
            read_timeseries(back.as_bytes(), eur_kwh(), &ColumnSpec::default()),
            Err(MarketError::NonMonotone { .. })
        ));
    }

    #[test]
    fn write_then_read_round_trips() {
        let ts = TimeSeries::hourly_2024(vec![0.1, 0.25, -0.03], eur_kwh()).unwrap();
        let mut buf = Vec::new();
        write_timeseries(&ts, &mut buf).unwrap();
        let back = read_timeseries(buf.as_slice(), eur_kwh(), &ColumnSpec::default()).unwrap();
        assert_eq!(back, ts);
    }

    #[test]
    fn resample_cases() {
        let q = TimeSeries::new(start_2024(), 900, vec![1.0, 2.0, 3.0, 4.0], Unit::MassFlow).unwrap();
        let h = resample_mean(&q, 3600).unwrap();
        assert_eq!(h.values(), &[2.5]);
        assert_eq!(h.dt(), 3600);
        let c = TimeSeries::new(start_2024(), 60, vec![0.25; 120], Unit::MassFlow).unwrap();
        assert!(resample_mean(&c, 3600).unwrap().values().iter().all(|&v| v == 0.25));
        assert!(matches!(resample_mean(&q, 1000), Err(MarketError::NotDivisible { .. })));
    }

    #[test]
    fn extend_cases() {
        let ts = TimeSeries::hourly_2024(vec![1.0, 2.0], Unit::MassFlow).unwrap();
        assert_eq!(extend_periodic(&ts, 5).values(), &[1.0, 2.0, 1.0, 2.0, 1.0]);
        assert_eq!(extend_periodic(&ts, 2), ts);
    }

    #[test]
    fn weekend_scaling_on_2024_calendar() {
        let ts = TimeSeries::hourly_2024(vec![1.0; 24 * 14], Unit::MassFlow).unwrap();
        assert_eq!(apply_weekend_scaling(&ts, 1.0, Weekday::Mon).unwrap(), ts);
        let s = apply_weekend_scaling_calendar(&ts, 0.25).unwrap();
        for day in 0..14 {
            let expected = if day % 7 >= 5 { 0.25 } else { 1.0 };
            for h in 0..24 {
                assert_eq!(s.values()[day * 24 + h], expected, "day {day}");
            }
        }
        // 2024-01-06 and 07
        assert_eq!(s.values()[5 * 24], 0.25);
        assert_eq!(s.values()[6 * 24 + 23], 0.25);
        assert_relative_eq!(s.values()[..168].iter().sum::<f64>() / 168.0, (5.0 + 0.5) / 7.0, epsilon = 1e-12);
        let odd = TimeSeries::new(start_2024(), 7 * 3600, vec![1.0; 3], Unit::MassFlow).unwrap();
        assert!(apply_weekend_scaling(&odd, 0.5, Weekday::Mon).is_err());
    }

    #[test]
    fn acceptance_mask_counts() {
        assert!(build_acceptance_mask(10, 1.0, 3).iter().all(|&a| a));
        assert!(build_acceptance_mask(10, 0.0, 3).iter().all(|&a| !a));
        let a = build_acceptance_mask(8784, 0.5, 42);
        assert_eq!(a, build_acceptance_mask(8784, 0.5, 42));
        assert_eq!(a.iter().filter(|&&x| x).count(), 4392);
        assert_ne!(a, build_acceptance_mask(8784, 0.5, 43));
    }

    #[test]
    fn currency_conversion() {
        let nok = TimeSeries::hourly_2024(vec![1.0, 2.0], Unit::EnergyPrice(Currency::Nok)).unwrap();
        let eur = convert_currency(&nok, NOK_TO_EUR, Currency::Eur).unwrap();
        assert_relative_eq!(eur.values()[0], 0.086, epsilon = 1e-15);
        assert_eq!(eur.unit(), Unit::EnergyPrice(Currency::Eur));
        let same = convert_currency(&eur, 1.0, Currency::Eur).unwrap();
        assert_eq!(same, eur);
        let back = convert_currency(&eur, 1.0 / NOK_TO_EUR, Currency::Nok).unwrap();
        for (a, b) in back.values().iter().zip(nok.values()) {
            assert_relative_eq!(*a, *b, max_relative = 1e-12);
        }
        let flow = TimeSeries::hourly_2024(vec![1.0], Unit::MassFlow).unwrap();
        assert!(convert_currency(&flow, 2.0, Currency::Eur).is_err());
    }

    fn aligned(n: usize) -> (TimeSeries, TariffSchedule, FcrMarket, TimeSeries) {
        (
            TimeSeries::hourly_2024(vec![0.05; n], eur_kwh()).unwrap(),
            TariffSchedule::norway_2024(),
            FcrMarket::new(
                TimeSeries::hourly_2024(vec![0.02; n], Unit::CapacityPrice(Currency::Eur)).unwrap(),
                0.5,
                1,
            ),
            TimeSeries::hourly_2024(vec![0.3; n], Unit::MassFlow).unwrap(),
        )
    }

    #[test]
    fn assemble_cases() {
        let (s, t, f, d) = aligned(24);
        let sc = assemble_scenario(s, t, f, d).unwrap();
        assert_eq!(sc.horizon_steps, 24);

        let (_, t, f, d) = aligned(24);
        let short = TimeSeries::hourly_2024(vec![0.05; 23], eur_kwh()).unwrap();
        let err = assemble_scenario(short, t, f, d).unwrap_err().to_string();
        assert!(err.contains("spot") && err.contains("23") && err.contains("24"), "{err}");

        let (s, t, f, _) = aligned(24);
        let mut vals = vec![0.3; 24];
        vals[7] = -1.0;
        let d = TimeSeries::hourly_2024(vals, Unit::MassFlow).unwrap();
        let err = assemble_scenario(s, t, f, d).unwrap_err().to_string();
        assert!(err.contains("step 7"), "{err}");
    }

    #[test]
    fn slicing_scales_months_and_annualisation() {
        let (s, t, f, d) = aligned(48);
        let sc = assemble_scenario(s, t, f, d).unwrap();
        let half = sc.slice(24, 24).unwrap();
        assert_eq!(half.horizon_steps, 24);
        assert_relative_eq!(half.tariff.months_per_horizon, 6.0);
        assert_relative_eq!(half.annualization, 2.0);
        assert_eq!(half.fcr.acceptance, sc.fcr.acceptance[24..]);
        assert_eq!(half.spot.start(), sc.spot.timestamp(24));
    }
}
