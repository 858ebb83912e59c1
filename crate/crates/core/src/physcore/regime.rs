use std::fmt;

use super::{
    anomalous_skin_depth, characteristic_frequency, transition_frequency, transition_separation,
    Geometry, MaterialParams, ThermalState, CONSTANTS,
};

/// Which impedance description governs the frequencies around ω_c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Regime {
    InfraredOptics,
    Transition,
    AnomalousSkin,
    NormalSkin,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::InfraredOptics => "infrared-optics",
            Regime::Transition => "transition",
            Regime::AnomalousSkin => "anomalous-skin",
            Regime::NormalSkin => "normal-skin",
        };
        f.write_str(s)
    }
}

/// One "small ≪ large" condition evaluated at ω_c. `margin` is large/small,
/// so a margin above 1 means the inequality holds.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCheck {
    pub regime: Regime,
    pub description: &'static str,
    pub small: Option<f64>,
    pub large: Option<f64>,
}

impl InequalityCheck {
    pub fn margin(&self) -> Option<f64> {
        Some(self.large? / self.small?)
    }

    pub fn holds(&self) -> Option<bool> {
        self.margin().map(|m| m > 1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport {
    pub characteristic_frequency: f64,
    pub transition_frequency: f64,
    pub transition_separation: f64,
    pub plasma_wavelength: f64,
    pub regime: Regime,
    pub diagnostics: Vec<InequalityCheck>,
    pub warnings: Vec<String>,
}

/// Ratio by which "much less" is read when deciding the normal-skin domain.
const MUCH_LESS: f64 = 2.0;

pub fn classify_regime(material: &MaterialParams, geometry: &Geometry, state: &ThermalState) -> RegimeReport {
    let omega_c = characteristic_frequency(geometry);
    let omega_t = transition_frequency(material);
    let a = geometry.separation();
    let lambda_p = material.plasma_wavelength();

    let mfp = material.mean_free_path();
    let v_over_omega = material.fermi_velocity() / omega_c;
    let delta_r = material.relaxation_depth();
    let delta_a = anomalous_skin_depth(material.anomalous_constant(), omega_c);
    let delta_n = material
        .conductivity()
        .map(|sigma| CONSTANTS.c / (2.0 * std::f64::consts::PI * sigma * omega_c).sqrt());

    let diagnostics = vec![
        InequalityCheck {
            regime: Regime::NormalSkin,
            description: "mean free path << normal skin depth",
            small: mfp,
            large: delta_n,
        },
        InequalityCheck {
            regime: Regime::NormalSkin,
            description: "mean free path << v_F/omega",
            small: mfp,
            large: Some(v_over_omega),
        },
        InequalityCheck {
            regime: Regime::AnomalousSkin,
            description: "anomalous skin depth << mean free path",
            small: Some(delta_a),
            large: mfp,
        },
        InequalityCheck {
            regime: Regime::AnomalousSkin,
            description: "anomalous skin depth << v_F/omega",
            small: Some(delta_a),
            large: Some(v_over_omega),
        },
        InequalityCheck {
            regime: Regime::InfraredOptics,
            description: "v_F/omega << c/omega_p",
            small: Some(v_over_omega),
            large: Some(delta_r),
        },
        InequalityCheck {
            regime: Regime::InfraredOptics,
            description: "c/omega_p << mean free path",
            small: Some(delta_r),
            large: mfp,
        },
    ];

    let normal_skin_open = !state.is_zero()
        && diagnostics
            .iter()
            .filter(|d| d.regime == Regime::NormalSkin)
            .all(|d| d.margin().is_some_and(|m| m >= MUCH_LESS));

    let regime = if omega_c > 2.0 * omega_t {
        Regime::InfraredOptics
    } else if omega_c < 0.5 * omega_t {
        if normal_skin_open {
            Regime::NormalSkin
        } else {
            Regime::AnomalousSkin
        }
    } else {
        Regime::Transition
    };

    let mut warnings = Vec::new();
    if a <= lambda_p {
        warnings.push(format!(
            "separation {a:e} m does not exceed the plasma wavelength {lambda_p:e} m; the impedance description is inapplicable"
        ));
    }
    if regime == Regime::AnomalousSkin && mfp.is_none() {
        warnings.push("conductivity unknown: the normal-skin window could not be evaluated and is reported as collapsed".into());
    }

    RegimeReport {
        characteristic_frequency: omega_c,
        transition_frequency: omega_t,
        transition_separation: transition_separation(material),
        plasma_wavelength: lambda_p,
        regime,
        diagnostics,
        warnings,
    }
}
