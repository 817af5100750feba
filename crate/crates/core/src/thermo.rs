//! Reduced thermodynamic model of the electrode boiler and steam accumulator.
//!
//! The accumulator is treated as a mass store. Insulation heat losses in the
//! charge/discharge piping become constant charge and discharge efficiencies
//! (evaluated at the boiler's rated flow), and tank losses become a
//! self-discharge rate applied to the stored mass.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Average month length used to convert "% per month" rates, in seconds.
pub const SECONDS_PER_MONTH: f64 = 365.25 / 12.0 * 86_400.0;

/// Errors raised by the thermodynamic coefficient calculations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThermoError {
    #[error("{quantity} = {value} is outside the admissible range: {bound}")]
    Domain {
        quantity: &'static str,
        value: f64,
        bound: String,
    },
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("pipe loss exceeds rated thermal power ({loss_w:.1} W >= {rated_w:.1} W)")]
    PipeLossExceedsRating { loss_w: f64, rated_w: f64 },
    #[error("calibration target unreachable: {0}")]
    Unreachable(String),
}

/// Geometry and insulation of the charge/discharge steam pipes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipeGeometry {
    /// Length of the charging pipe, m.
    pub length_charge: f64,
    /// Length of the discharging pipe, m.
    pub length_discharge: f64,
    /// Pipe radius, m.
    pub radius: f64,
    /// Thermal conductivity of wall and insulation, W/(m·K).
    pub conductivity: f64,
    /// Thickness of wall and insulation, m.
    pub thickness: f64,
}

/// Insulation and shape assumptions for the cylindrical accumulator vessel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TankDesign {
    /// Thermal conductivity of wall and insulation, W/(m·K).
    pub conductivity: f64,
    /// Thickness of wall and insulation, m.
    pub thickness: f64,
    /// Density of the stored medium used to size the vessel, kg/m³.
    pub store_density: f64,
    /// Height over radius of the cylinder.
    pub aspect_ratio: f64,
}

/// Physical constants of the steam system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteamSystemParams {
    /// Operating temperature, K.
    pub t_op: f64,
    /// Inlet water temperature, K.
    pub t0: f64,
    /// Ambient temperature, K.
    pub t_ambient: f64,
    /// Total specific enthalpy at `t_ref`, kJ/kg.
    pub dh_ref: f64,
    /// Reference inlet temperature for `dh_ref`, K.
    pub t_ref: f64,
    /// Specific heat of liquid water, kJ/(kg·K).
    pub cp_water: f64,
    /// Specific heat of steam, kJ/(kg·K). Not used by the affine enthalpy model.
    pub cp_steam: f64,
    /// Latent heat of vaporisation, kJ/kg. Not used by the affine enthalpy model.
    pub dh_vap: f64,
    pub pipe: PipeGeometry,
    pub tank: TankDesign,
    /// Replaces the geometry-derived accumulator self-discharge rate, 1/s.
    pub self_discharge_override: Option<f64>,
}

impl Default for SteamSystemParams {
    fn default() -> Self {
        let mut params = Self {
            t_op: 0.0,
            t0: 283.0,
            t_ambient: 283.0,
            dh_ref: 2772.0,
            t_ref: 283.0,
            cp_water: 4.186,
            cp_steam: 2.08,
            dh_vap: 2257.0,
            pipe: PipeGeometry {
                length_charge: 300.0,
                length_discharge: 300.0,
                radius: 0.10,
                conductivity: 0.1,
                thickness: 0.04,
            },
            tank: TankDesign {
                conductivity: 0.1,
                thickness: 0.20,
                store_density: 1000.0,
                aspect_ratio: 2.0,
            },
            self_discharge_override: None,
        };
        // Operating temperature backed out of a 90.8 % charge efficiency at 1 MW.
        params.t_op = params.t_ambient + (1.0 - 0.908) * 1.0e6 / params.pipe_loss_per_kelvin(params.pipe.length_charge);
        params
    }
}

impl SteamSystemParams {
    pub fn validate(&self) -> Result<(), ThermoError> {
        let positive = [
            ("t_op", self.t_op),
            ("t0", self.t0),
            ("t_ambient", self.t_ambient),
            ("t_ref", self.t_ref),
            ("dh_ref", self.dh_ref),
            ("cp_water", self.cp_water),
            ("pipe.radius", self.pipe.radius),
            ("pipe.conductivity", self.pipe.conductivity),
            ("pipe.thickness", self.pipe.thickness),
            ("tank.conductivity", self.tank.conductivity),
            ("tank.thickness", self.tank.thickness),
            ("tank.store_density", self.tank.store_density),
            ("tank.aspect_ratio", self.tank.aspect_ratio),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(ThermoError::InvalidParameter {
                    name,
                    reason: format!("must be finite and strictly positive, got {value}"),
                });
            }
        }
        for (name, value) in [
            ("pipe.length_charge", self.pipe.length_charge),
            ("pipe.length_discharge", self.pipe.length_discharge),
        ] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(ThermoError::InvalidParameter {
                    name,
                    reason: format!("must be finite and non-negative, got {value}"),
                });
            }
        }
        if self.t_op <= self.t0 {
            return Err(ThermoError::InvalidParameter {
                name: "t_op",
                reason: format!("must exceed the inlet temperature {} K", self.t0),
            });
        }
        if self.t_op < self.t_ambient {
            return Err(ThermoError::InvalidParameter {
                name: "t_op",
                reason: format!("must not be below ambient {} K", self.t_ambient),
            });
        }
        if self.dh_ref <= self.cp_water * (self.t_op - self.t_ref) {
            return Err(ThermoError::InvalidParameter {
                name: "dh_ref",
                reason: "enthalpy would become non-positive below the operating temperature".into(),
            });
        }
        if let Some(eps) = self.self_discharge_override {
            if !(eps.is_finite() && eps >= 0.0) {
                return Err(ThermoError::InvalidParameter {
                    name: "self_discharge_override",
                    reason: format!("must be non-negative, got {eps}"),
                });
            }
        }
        Ok(())
    }

    /// Copy of the parameters with a different inlet water temperature.
    pub fn with_inlet_temperature(&self, t0: f64) -> Self {
        Self { t0, ..*self }
    }

    fn pipe_loss_per_kelvin(&self, length: f64) -> f64 {
        2.0 * PI * (self.pipe.conductivity / self.pipe.thickness) * length * self.pipe.radius
    }

    fn tank_loss_per_kelvin(&self, geometry: TankGeometry) -> f64 {
        let TankGeometry { height, radius } = geometry;
        2.0 * PI * (self.tank.conductivity / self.tank.thickness) * (height * radius + radius * radius)
    }
}

/// Lithium-ion battery parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatteryParams {
    pub eta_charge: f64,
    pub eta_discharge: f64,
    /// Self-discharge, fraction per month.
    pub self_discharge: f64,
    pub soc_min_frac: f64,
    pub soc_max_frac: f64,
    pub soc_init_frac: f64,
}

impl Default for BatteryParams {
    fn default() -> Self {
        Self {
            eta_charge: 0.95,
            eta_discharge: 0.95,
            self_discharge: 0.03,
            soc_min_frac: 0.10,
            soc_max_frac: 0.90,
            soc_init_frac: 0.90,
        }
    }
}

impl BatteryParams {
    pub fn validate(&self) -> Result<(), ThermoError> {
        for (name, eta) in [("eta_charge", self.eta_charge), ("eta_discharge", self.eta_discharge)] {
            if !(eta > 0.0 && eta <= 1.0) {
                return Err(ThermoError::InvalidParameter {
                    name,
                    reason: format!("must lie in (0, 1], got {eta}"),
                });
            }
        }
        if !(self.self_discharge >= 0.0 && self.self_discharge < 1.0) {
            return Err(ThermoError::InvalidParameter {
                name: "self_discharge",
                reason: format!("must lie in [0, 1) per month, got {}", self.self_discharge),
            });
        }
        let ordered = 0.0 <= self.soc_min_frac
            && self.soc_min_frac < self.soc_init_frac
            && self.soc_init_frac <= self.soc_max_frac
            && self.soc_max_frac <= 1.0;
        if !ordered {
            return Err(ThermoError::InvalidParameter {
                name: "soc",
                reason: format!(
                    "need 0 <= min < init <= max <= 1, got min={} init={} max={}",
                    self.soc_min_frac, self.soc_init_frac, self.soc_max_frac
                ),
            });
        }
        Ok(())
    }

    /// Self-discharge rate, 1/s.
    pub fn self_discharge_per_second(&self) -> f64 {
        self.self_discharge / SECONDS_PER_MONTH
    }
}

/// Cylinder dimensions of the accumulator vessel, m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TankGeometry {
    pub height: f64,
    pub radius: f64,
}

/// Linear storage coefficients of the steam accumulator for one configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StorageCoefficients {
    /// Total specific enthalpy at the configured inlet temperature, kJ/kg.
    pub dh_tot: f64,
    pub eta_sa_charge: f64,
    /// Fraction of withdrawn mass that reaches the plant.
    pub eta_sa_discharge: f64,
    /// Self-discharge rate, 1/s.
    pub eps_sa: f64,
    pub q_loss_charge_pipe: f64,
    pub q_loss_discharge_pipe: f64,
    pub q_loss_tank: f64,
    /// Boiler rating the efficiencies were evaluated at, W.
    pub rated_power: f64,
    /// Accumulator capacity the self-discharge was evaluated at, kg.
    pub m_max: f64,
    /// Inlet temperature `dh_tot` was evaluated at, K.
    pub t0: f64,
}

impl StorageCoefficients {
    /// Coefficients for a system without an accumulator: no pipes, no tank.
    pub fn without_accumulator(params: &SteamSystemParams, rated_power: f64) -> Result<Self, ThermoError> {
        params.validate()?;
        Ok(Self {
            dh_tot: total_enthalpy(params, params.t0)?,
            eta_sa_charge: 1.0,
            eta_sa_discharge: 1.0,
            eps_sa: 0.0,
            q_loss_charge_pipe: 0.0,
            q_loss_discharge_pipe: 0.0,
            q_loss_tank: 0.0,
            rated_power,
            m_max: 0.0,
            t0: params.t0,
        })
    }

    /// Self-discharge expressed per average month.
    pub fn eps_sa_per_month(&self) -> f64 {
        self.eps_sa * SECONDS_PER_MONTH
    }
}

/// Total specific enthalpy to raise inlet water at `t0` to operating steam, kJ/kg.
pub fn total_enthalpy(params: &SteamSystemParams, t0: f64) -> Result<f64, ThermoError> {
    if !(t0 >= params.t_ref) {
        return Err(ThermoError::Domain {
            quantity: "T0",
            value: t0,
            bound: format!("must be >= reference temperature {} K", params.t_ref),
        });
    }
    if !(t0 < params.t_op) {
        return Err(ThermoError::Domain {
            quantity: "T0",
            value: t0,
            bound: format!("must be < operating temperature {} K", params.t_op),
        });
    }
    Ok(params.dh_ref - params.cp_water * (t0 - params.t_ref))
}

/// Insulation heat loss of a steam pipe of the given length, W.
pub fn pipe_heat_loss(params: &SteamSystemParams, length: f64) -> f64 {
    params.pipe_loss_per_kelvin(length) * (params.t_op - params.t_ambient)
}

/// Cylinder with `H = aspect·R` holding `m_max` kg at the configured density.
pub fn tank_geometry_from_capacity(params: &SteamSystemParams, m_max: f64) -> Result<TankGeometry, ThermoError> {
    if !(m_max > 0.0 && m_max.is_finite()) {
        return Err(ThermoError::Domain {
            quantity: "M_max",
            value: m_max,
            bound: "must be strictly positive".into(),
        });
    }
    let aspect = params.tank.aspect_ratio;
    let radius = (m_max / (PI * params.tank.store_density * aspect)).cbrt();
    Ok(TankGeometry {
        height: aspect * radius,
        radius,
    })
}

/// Insulation heat loss through the vessel surface, W.
pub fn tank_heat_loss(params: &SteamSystemParams, geometry: TankGeometry) -> f64 {
    params.tank_loss_per_kelvin(geometry) * (params.t_op - params.t_ambient)
}

/// Accumulator coefficients for capacity `m_max` (kg) and boiler rating `rated_power` (W).
pub fn storage_coefficients(
    params: &SteamSystemParams,
    m_max: f64,
    rated_power: f64,
) -> Result<StorageCoefficients, ThermoError> {
    params.validate()?;
    if !(m_max >= 0.0 && m_max.is_finite()) {
        return Err(ThermoError::Domain {
            quantity: "M_max",
            value: m_max,
            bound: "must be non-negative".into(),
        });
    }
    if !(rated_power > 0.0 && rated_power.is_finite()) {
        return Err(ThermoError::Domain {
            quantity: "rated_power",
            value: rated_power,
            bound: "must be strictly positive".into(),
        });
    }
    let dh_tot = total_enthalpy(params, params.t0)?;
    let q_plus = pipe_heat_loss(params, params.pipe.length_charge);
    let q_minus = pipe_heat_loss(params, params.pipe.length_discharge);
    let worst = q_plus.max(q_minus);
    if rated_power <= worst {
        return Err(ThermoError::PipeLossExceedsRating {
            loss_w: worst,
            rated_w: rated_power,
        });
    }

    let (q_tank, eps_geometry) = if m_max > 0.0 {
        let geometry = tank_geometry_from_capacity(params, m_max)?;
        let q = tank_heat_loss(params, geometry);
        (q, q / (m_max * dh_tot * 1.0e3))
    } else {
        (0.0, 0.0)
    };
    let eps_sa = if m_max > 0.0 {
        params.self_discharge_override.unwrap_or(eps_geometry)
    } else {
        0.0
    };

    Ok(StorageCoefficients {
        dh_tot,
        eta_sa_charge: 1.0 - q_plus / rated_power,
        // Reciprocal of the outlet/inlet ratio: the tank gives up m/eta for m delivered.
        eta_sa_discharge: 1.0 - q_minus / rated_power,
        eps_sa,
        q_loss_charge_pipe: q_plus,
        q_loss_discharge_pipe: q_minus,
        q_loss_tank: q_tank,
        rated_power,
        m_max,
        t0: params.t0,
    })
}

/// Operating temperature at which the charge efficiency at `rated_power` equals `target_eta`.
pub fn calibrate_operating_temperature(
    params: &SteamSystemParams,
    target_eta: f64,
    rated_power: f64,
) -> Result<f64, ThermoError> {
    if !(target_eta > 0.0 && target_eta < 1.0) {
        return Err(ThermoError::Unreachable(format!(
            "target efficiency {target_eta} must lie strictly between 0 and 1 (1 requires T_op = T_a)"
        )));
    }
    if !(rated_power > 0.0) {
        return Err(ThermoError::Domain {
            quantity: "rated_power",
            value: rated_power,
            bound: "must be strictly positive".into(),
        });
    }
    let per_kelvin = params.pipe_loss_per_kelvin(params.pipe.length_charge);
    if !(per_kelvin > 0.0) {
        return Err(ThermoError::Unreachable("charging pipe has no heat loss".into()));
    }
    let t_op = params.t_ambient + (1.0 - target_eta) * rated_power / per_kelvin;
    if t_op <= params.t0 {
        return Err(ThermoError::Unreachable(format!(
            "required T_op = {t_op:.3} K does not exceed the inlet temperature {} K",
            params.t0
        )));
    }
    let calibrated = SteamSystemParams { t_op, ..*params };
    let achieved = 1.0 - pipe_heat_loss(&calibrated, params.pipe.length_charge) / rated_power;
    if (achieved - target_eta).abs() > 1e-6 {
        return Err(ThermoError::Unreachable(format!(
            "forward check gave efficiency {achieved}, wanted {target_eta}"
        )));
    }
    Ok(t_op)
}

/// Store density at which an `m_max` kg vessel self-discharges at `target_per_month`.
///
/// Tank loss scales with `R²` and `R ∝ ρ^(-1/3)` at fixed aspect ratio, so the
/// rate scales as `ρ^(-2/3)`.
pub fn calibrate_store_density(
    params: &SteamSystemParams,
    m_max: f64,
    target_per_month: f64,
) -> Result<f64, ThermoError> {
    if !(target_per_month > 0.0) {
        return Err(ThermoError::Unreachable("target self-discharge must be positive".into()));
    }
    let probe = SteamSystemParams {
        self_discharge_override: None,
        ..*params
    };
    let rated = 2.0 * pipe_heat_loss(&probe, probe.pipe.length_charge.max(probe.pipe.length_discharge)) + 1.0;
    let current = storage_coefficients(&probe, m_max, rated)?.eps_sa_per_month();
    Ok(params.tank.store_density * (current / target_per_month).powf(1.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn enthalpy_anchors() {
        let p = SteamSystemParams::default();
        assert_eq!(total_enthalpy(&p, 283.0).unwrap(), 2772.0);
        assert_relative_eq!(total_enthalpy(&p, 366.0).unwrap(), 2772.0 - 4.186 * 83.0, epsilon = 1e-9);
        assert_eq!(total_enthalpy(&p, p.t_ref).unwrap(), p.dh_ref);
    }

    #[test]
    fn enthalpy_rejects_out_of_range_inlet() {
        let p = SteamSystemParams::default();
        let low = total_enthalpy(&p, 270.0).unwrap_err();
        assert!(low.to_string().contains("reference temperature"), "{low}");
        let high = total_enthalpy(&p, p.t_op).unwrap_err();
        assert!(high.to_string().contains("operating temperature"), "{high}");
    }

    #[test]
    fn default_operating_temperature_is_calibrated() {
        let p = SteamSystemParams::default();
        assert_relative_eq!(p.t_op, 478.23, epsilon = 0.01);
        let c = storage_coefficients(&p, 1000.0, 1.0e6).unwrap();
        assert_relative_eq!(c.eta_sa_charge, 0.908, epsilon = 1e-12);
        assert_relative_eq!(c.eta_sa_discharge, 0.908, epsilon = 1e-12);
    }

    #[test]
    fn pipe_loss_cases() {
        let mut p = SteamSystemParams::default();
        // lambda/delta = 2.5, L = 300, r = 0.1
        p.t_op = p.t_ambient + 195.2;
        assert_relative_eq!(pipe_heat_loss(&p, 300.0), 2.0 * PI * 2.5 * 30.0 * 195.2, epsilon = 1e-9);
        assert_relative_eq!(pipe_heat_loss(&p, 300.0) / 1e3, 92.0, epsilon = 0.05);
        assert_eq!(pipe_heat_loss(&p, 0.0), 0.0);
        p.t_op = p.t_ambient;
        assert_eq!(pipe_heat_loss(&p, 300.0), 0.0);
    }

    #[test]
    fn tank_geometry_unit_cylinder() {
        let mut p = SteamSystemParams::default();
        p.tank.store_density = 1000.0;
        p.tank.aspect_ratio = 2.0;
        let g = tank_geometry_from_capacity(&p, 2000.0 * PI).unwrap();
        assert_relative_eq!(g.radius, 1.0, epsilon = 1e-12);
        assert_relative_eq!(g.height, 2.0, epsilon = 1e-12);

        let big = tank_geometry_from_capacity(&p, 8.0 * 2000.0 * PI).unwrap();
        assert_relative_eq!(big.radius, 2.0 * g.radius, epsilon = 1e-12);
        assert_relative_eq!(big.height, 2.0 * g.height, epsilon = 1e-12);

        assert!(tank_geometry_from_capacity(&p, 0.0).is_err());
        assert!(tank_geometry_from_capacity(&p, -5.0).is_err());
    }

    #[test]
    fn tank_loss_substitution() {
        let mut p = SteamSystemParams::default();
        p.tank.conductivity = 0.1;
        p.tank.thickness = 0.2;
        p.t_op = p.t_ambient + 100.0;
        // H·R + R² = 1 with R = 0.5, H = 1.5
        let g = TankGeometry { height: 1.5, radius: 0.5 };
        assert_relative_eq!(tank_heat_loss(&p, g), 100.0 * PI, epsilon = 1e-9);
        let g2 = TankGeometry { height: 3.5, radius: 0.5 };
        assert_relative_eq!(tank_heat_loss(&p, g2), 2.0 * tank_heat_loss(&p, g), epsilon = 1e-9);
        p.t_op = p.t_ambient;
        assert_eq!(tank_heat_loss(&p, g), 0.0);
    }

    #[test]
    fn coefficients_without_capacity_have_no_tank_loss() {
        let p = SteamSystemParams::default();
        let c = storage_coefficients(&p, 0.0, 1.0e6).unwrap();
        assert_eq!(c.eps_sa, 0.0);
        assert_eq!(c.q_loss_tank, 0.0);
    }

    #[test]
    fn pipe_loss_above_rating_is_rejected() {
        let p = SteamSystemParams::default();
        let err = storage_coefficients(&p, 1000.0, 50_000.0).unwrap_err();
        assert!(err.to_string().contains("pipe loss exceeds rated thermal power"));
    }

    #[test]
    fn self_discharge_override_applies() {
        let mut p = SteamSystemParams::default();
        p.self_discharge_override = Some(0.133 / SECONDS_PER_MONTH);
        let c = storage_coefficients(&p, 1000.0, 1.0e6).unwrap();
        assert_relative_eq!(c.eps_sa_per_month(), 0.133, epsilon = 1e-12);
    }

    #[test]
    fn geometry_self_discharge_at_defaults() {
        // R = (1000 / (1000·π·2))^(1/3), surface term (a + 1)·R², 2π·0.5·ΔT
        let p = SteamSystemParams::default();
        let r: f64 = (1.0 / (2.0 * PI)).cbrt();
        let q = 2.0 * PI * 0.5 * 3.0 * r * r * (p.t_op - 283.0);
        let c = storage_coefficients(&p, 1000.0, 1.0e6).unwrap();
        assert_relative_eq!(c.q_loss_tank, q, epsilon = 1e-9);
        assert_relative_eq!(c.eps_sa, q / (1000.0 * 2772.0e3), epsilon = 1e-15);
    }

    #[test]
    fn density_calibration_reproduces_target() {
        let p = SteamSystemParams::default();
        let rho = calibrate_store_density(&p, 1000.0, 0.133).unwrap();
        let mut q = p;
        q.tank.store_density = rho;
        let c = storage_coefficients(&q, 1000.0, 1.0e6).unwrap();
        assert_relative_eq!(c.eps_sa_per_month(), 0.133, epsilon = 1e-9);
    }

    #[test]
    fn calibration_cases() {
        let p = SteamSystemParams::default();
        let t = calibrate_operating_temperature(&p, 0.908, 1.0e6).unwrap();
        assert_relative_eq!(t, 478.23, epsilon = 0.01);
        assert!(calibrate_operating_temperature(&p, 1.0, 1.0e6).is_err());

        let t2 = calibrate_operating_temperature(&p, 0.95, 2.0e6).unwrap();
        let q = SteamSystemParams { t_op: t2, ..p };
        assert_relative_eq!(pipe_heat_loss(&q, 300.0), 100_000.0, epsilon = 1e-6);
    }

    #[test]
    fn lossless_limit() {
        let mut p = SteamSystemParams::default();
        p.pipe.conductivity = 1e-12;
        p.tank.conductivity = 1e-12;
        let c = storage_coefficients(&p, 1000.0, 1.0e6).unwrap();
        assert_relative_eq!(c.eta_sa_charge, 1.0, epsilon = 1e-9);
        assert_relative_eq!(c.eta_sa_discharge, 1.0, epsilon = 1e-9);
        assert!(c.eps_sa < 1e-15);
    }

    #[test]
    fn battery_defaults_validate() {
        let b = BatteryParams::default();
        b.validate().unwrap();
        let bad = BatteryParams { soc_init_frac: 0.05, ..b };
        assert!(bad.validate().is_err());
        let bad = BatteryParams { eta_charge: 1.2, ..b };
        assert!(bad.validate().is_err());
    }
}
