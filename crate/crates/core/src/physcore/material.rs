use std::path::Path;
use std::str::FromStr;

use super::{derive_anomalous_constant, CONSTANTS};
use crate::error::{Error, Result};

/// Electronic parameters of a metal.
///
/// `conductivity` is only needed by the normal-skin impedance and is in
/// Gaussian units (s⁻¹). `anomalous_constant` is derived from ω_p and v_F
/// when not given explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    plasma_frequency: f64,
    fermi_velocity: f64,
    conductivity: Option<f64>,
    anomalous_constant: Option<f64>,
}

fn positive(name: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::invalid(name, format!("must be finite and positive, got {v}")))
    }
}

impl MaterialParams {
    pub fn new(plasma_frequency: f64, fermi_velocity: f64) -> Result<Self> {
        positive("omega_p", plasma_frequency)?;
        positive("v_f", fermi_velocity)?;
        if fermi_velocity >= CONSTANTS.c {
            return Err(Error::invalid(
                "v_f",
                format!("must be below the speed of light, got {fermi_velocity}"),
            ));
        }
        Ok(MaterialParams {
            plasma_frequency,
            fermi_velocity,
            conductivity: None,
            anomalous_constant: None,
        })
    }

    /// Gold: ω_p = 1.37×10¹⁶ rad/s, v_F = 1.4×10⁶ m/s.
    pub fn gold() -> Self {
        MaterialParams {
            plasma_frequency: 1.37e16,
            fermi_velocity: 1.4e6,
            conductivity: None,
            anomalous_constant: None,
        }
    }

    pub fn with_conductivity(mut self, sigma: f64) -> Result<Self> {
        self.conductivity = Some(positive("sigma", sigma)?);
        Ok(self)
    }

    pub fn with_anomalous_constant(mut self, c_a: f64) -> Result<Self> {
        self.anomalous_constant = Some(positive("c_a", c_a)?);
        Ok(self)
    }

    pub fn plasma_frequency(&self) -> f64 {
        self.plasma_frequency
    }

    pub fn fermi_velocity(&self) -> f64 {
        self.fermi_velocity
    }

    pub fn conductivity(&self) -> Option<f64> {
        self.conductivity
    }

    /// The explicit C_a if one was supplied, otherwise the derived value.
    pub fn anomalous_constant(&self) -> f64 {
        self.anomalous_constant
            .unwrap_or_else(|| derive_anomalous_constant(self))
    }

    pub fn explicit_anomalous_constant(&self) -> Option<f64> {
        self.anomalous_constant
    }

    /// λ_p = 2πc/ω_p.
    pub fn plasma_wavelength(&self) -> f64 {
        2.0 * std::f64::consts::PI * CONSTANTS.c / self.plasma_frequency
    }

    /// δ_r = c/ω_p.
    pub fn relaxation_depth(&self) -> f64 {
        CONSTANTS.c / self.plasma_frequency
    }

    /// Electron mean free path from the Drude relation σ = ω_p²/(4πγ).
    pub fn mean_free_path(&self) -> Option<f64> {
        let sigma = self.conductivity?;
        let gamma = self.plasma_frequency * self.plasma_frequency / (4.0 * std::f64::consts::PI * sigma);
        Some(self.fermi_velocity / gamma)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::MaterialFile {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        text.parse()
    }
}

/// `key=value` lines; `#` starts a comment. Keys: omega_p, v_f, sigma, c_a.
impl FromStr for MaterialParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut omega_p = None;
        let mut v_f = None;
        let mut sigma = None;
        let mut c_a = None;
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::MaterialFile {
                line: line_no,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got `{line}`")))?;
            let key = key.trim();
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| err(format!("`{}` is not a number", value.trim())))?;
            let slot = match key {
                "omega_p" => &mut omega_p,
                "v_f" => &mut v_f,
                "sigma" => &mut sigma,
                "c_a" => &mut c_a,
                other => {
                    return Err(err(format!(
                        "unknown key `{other}` (expected one of omega_p, v_f, sigma, c_a)"
                    )))
                }
            };
            if slot.replace(value).is_some() {
                return Err(err(format!("duplicate key `{key}`")));
            }
        }
        let missing = |field| Error::MissingMaterialField {
            name: "file".into(),
            field,
        };
        let mut m = MaterialParams::new(omega_p.ok_or_else(|| missing("omega_p"))?, v_f.ok_or_else(|| missing("v_f"))?)?;
        if let Some(s) = sigma {
            m = m.with_conductivity(s)?;
        }
        if let Some(c) = c_a {
            m = m.with_anomalous_constant(c)?;
        }
        Ok(m)
    }
}
