//! Leontovich surface impedance continued to the imaginary frequency axis.
//!
//! On ω = iξ every model gives a real, non-negative Z:
//!
//! | model            | Z(iξ)                         |
//! |------------------|-------------------------------|
//! | ideal metal      | 0                             |
//! | normal skin      | √(ξ / 4πσ)                    |
//! | anomalous skin   | 4/(3√3) · C_a ξ^{2/3} / c     |
//! | infrared optics  | ξ / √(ω_p² + ξ²)              |
//!
//! The same function is used at every Matsubara frequency of a computation;
//! there is no switching between models along the frequency axis.

use std::fmt;

use crate::error::{Error, Result};
use crate::physcore::{characteristic_frequency, Geometry, MaterialParams, CONSTANTS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ImpedanceModel {
    IdealMetal,
    /// σ in Gaussian units, s⁻¹.
    NormalSkin { sigma: f64 },
    /// C_a in m·(rad/s)^{1/3}.
    AnomalousSkin { c_a: f64 },
    InfraredOptics { omega_p: f64 },
}

fn positive(name: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::invalid(name, format!("must be finite and positive, got {v}")))
    }
}

impl ImpedanceModel {
    pub fn normal_skin(sigma: f64) -> Result<Self> {
        Ok(ImpedanceModel::NormalSkin {
            sigma: positive("sigma", sigma)?,
        })
    }

    pub fn anomalous_skin(c_a: f64) -> Result<Self> {
        Ok(ImpedanceModel::AnomalousSkin {
            c_a: positive("c_a", c_a)?,
        })
    }

    pub fn infrared_optics(omega_p: f64) -> Result<Self> {
        Ok(ImpedanceModel::InfraredOptics {
            omega_p: positive("omega_p", omega_p)?,
        })
    }

    /// Anomalous-skin model with the material's (explicit or derived) C_a.
    pub fn anomalous_for(material: &MaterialParams) -> Self {
        ImpedanceModel::AnomalousSkin {
            c_a: material.anomalous_constant(),
        }
    }

    pub fn infrared_for(material: &MaterialParams) -> Self {
        ImpedanceModel::InfraredOptics {
            omega_p: material.plasma_frequency(),
        }
    }

    /// Normal-skin model; fails when the material has no conductivity.
    pub fn normal_for(material: &MaterialParams) -> Result<Self> {
        let sigma = material.conductivity().ok_or_else(|| Error::MissingMaterialField {
            name: "material".into(),
            field: "sigma",
        })?;
        ImpedanceModel::normal_skin(sigma)
    }

    /// Z(iξ) for ξ ≥ 0.
    pub fn on_imaginary_axis(&self, xi: f64) -> Result<ImpedanceValue> {
        if xi.is_nan() || xi < 0.0 {
            return Err(Error::NegativeFrequency(xi));
        }
        let z = match *self {
            ImpedanceModel::IdealMetal => 0.0,
            ImpedanceModel::NormalSkin { sigma } => (xi / (4.0 * std::f64::consts::PI * sigma)).sqrt(),
            ImpedanceModel::AnomalousSkin { c_a } => {
                4.0 / (3.0 * 3f64.sqrt()) * c_a * (xi * xi).cbrt() / CONSTANTS.c
            }
            ImpedanceModel::InfraredOptics { omega_p } => {
                if xi.is_infinite() {
                    1.0
                } else {
                    xi / omega_p.hypot(xi)
                }
            }
        };
        Ok(ImpedanceValue(z))
    }

    /// Z(iζω_c) with ζ = 2aξ/c the dimensionless frequency.
    pub fn at_dimensionless(&self, geometry: &Geometry, zeta: f64) -> Result<ImpedanceValue> {
        if zeta.is_nan() || zeta < 0.0 {
            return Err(Error::NegativeFrequency(zeta));
        }
        self.on_imaginary_axis(zeta * characteristic_frequency(geometry))
    }
}

impl fmt::Display for ImpedanceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImpedanceModel::IdealMetal => f.write_str("ideal"),
            ImpedanceModel::NormalSkin { .. } => f.write_str("normal-skin"),
            ImpedanceModel::AnomalousSkin { .. } => f.write_str("anomalous-skin"),
            ImpedanceModel::InfraredOptics { .. } => f.write_str("infrared-optics"),
        }
    }
}

/// Real value of Z on the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ImpedanceValue(f64);

impl ImpedanceValue {
    /// Above this the Leontovich condition |Z| ≪ 1 is doubtful.
    pub const LARGE: f64 = 0.3;

    /// Wraps a raw value; rejects negative or non-finite input.
    pub fn new(z: f64) -> Result<Self> {
        if z.is_finite() && z >= 0.0 {
            Ok(ImpedanceValue(z))
        } else {
            Err(Error::invalid("impedance", format!("must be finite and non-negative, got {z}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_large(self) -> bool {
        self.0 > Self::LARGE
    }

    pub fn warning(self) -> Option<String> {
        self.is_large()
            .then(|| format!("impedance {:.3} exceeds {}; the surface-impedance condition |Z| << 1 is violated", self.0, Self::LARGE))
    }
}
