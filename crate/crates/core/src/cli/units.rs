//! Quantities written as `"<number> <unit>"`, converted to SI on parse.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    /// W.
    Power,
    /// Wh.
    Energy,
    /// kg.
    Mass,
    /// K.
    Temperature,
    /// 1/h.
    Rate,
    /// s.
    Duration,
    /// EUR/kWh.
    EnergyPrice,
    /// EUR/kW/month.
    CapacityPrice,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dimension::Power => "power (W, kW, MW)",
            Dimension::Energy => "energy (Wh, kWh, MWh)",
            Dimension::Mass => "mass (kg, t)",
            Dimension::Temperature => "temperature (K, degC)",
            Dimension::Rate => "rate (1/h)",
            Dimension::Duration => "duration (s, min, h, d)",
            Dimension::EnergyPrice => "energy price (EUR/kWh, EUR/MWh)",
            Dimension::CapacityPrice => "capacity price (EUR/kW/month)",
        })
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum UnitError {
    #[error("{field}: {value:?} is not of the form \"<number> <unit>\"")]
    Syntax { field: String, value: String },
    #[error("{field}: unit {unit:?} is not a {expected}")]
    WrongUnit {
        field: String,
        unit: String,
        expected: Dimension,
    },
}

/// Parses `value` and returns it in the SI unit of `dim`.
pub fn parse_quantity(field: &str, value: &str, dim: Dimension) -> Result<f64, UnitError> {
    let syntax = || UnitError::Syntax {
        field: field.into(),
        value: value.into(),
    };
    let s = value.trim();
    let split = s.find(|c: char| c.is_whitespace()).ok_or_else(syntax)?;
    let (num, unit) = s.split_at(split);
    let x: f64 = num.parse().map_err(|_| syntax())?;
    if !x.is_finite() {
        return Err(syntax());
    }
    let unit = unit.trim();
    let factor = |table: &[(&str, f64)]| table.iter().find(|(u, _)| *u == unit).map(|(_, f)| *f);
    let converted = match dim {
        Dimension::Power => factor(&[("W", 1.0), ("kW", 1e3), ("MW", 1e6)]).map(|f| x * f),
        Dimension::Energy => factor(&[("Wh", 1.0), ("kWh", 1e3), ("MWh", 1e6)]).map(|f| x * f),
        Dimension::Mass => factor(&[("kg", 1.0), ("t", 1e3)]).map(|f| x * f),
        Dimension::Temperature => match unit {
            "K" => Some(x),
            "degC" | "°C" | "C" => Some(x + 273.15),
            _ => None,
        },
        Dimension::Rate => factor(&[("1/h", 1.0)]).map(|f| x * f),
        Dimension::Duration => factor(&[("s", 1.0), ("min", 60.0), ("h", 3600.0), ("d", 86_400.0)]).map(|f| x * f),
        Dimension::EnergyPrice => factor(&[("EUR/kWh", 1.0), ("EUR/MWh", 1e-3)]).map(|f| x * f),
        Dimension::CapacityPrice => factor(&[("EUR/kW/month", 1.0), ("EUR/MW/month", 1e-3)]).map(|f| x * f),
    };
    converted.ok_or_else(|| UnitError::WrongUnit {
        field: field.into(),
        unit: unit.into(),
        expected: dim,
    })
}
