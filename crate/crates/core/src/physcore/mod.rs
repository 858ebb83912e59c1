//! Physical constants, material and geometry parameters, and the
//! characteristic frequencies that decide which impedance regime applies.
//!
//! Units are SI throughout (rad/s, m, K, J) except conductivity, which is
//! kept in Gaussian units (s⁻¹) because the normal-skin impedance is
//! written in Gaussian form. Use [`conductivity_si_to_gaussian`] at the
//! boundary.

mod material;
mod regime;

pub use material::MaterialParams;
pub use regime::{classify_regime, InequalityCheck, Regime, RegimeReport};

use crate::error::{Error, Result};

/// Fundamental constants (CODATA 2018, exact SI values where defined).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Speed of light, m/s.
    pub c: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
}

pub const CONSTANTS: PhysicalConstants = PhysicalConstants {
    hbar: 1.054_571_817e-34,
    c: 299_792_458.0,
    k_b: 1.380_649e-23,
};

/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

/// Converts an SI conductivity (S/m) to Gaussian units (s⁻¹).
pub fn conductivity_si_to_gaussian(sigma_si: f64) -> f64 {
    sigma_si / (4.0 * std::f64::consts::PI * EPSILON_0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    temperature: f64,
}

impl ThermalState {
    pub fn new(temperature: f64) -> Result<Self> {
        if !(temperature.is_finite() && temperature >= 0.0) {
            return Err(Error::invalid(
                "temperature",
                format!("must be finite and non-negative, got {temperature}"),
            ));
        }
        Ok(ThermalState { temperature })
    }

    pub fn zero() -> Self {
        ThermalState { temperature: 0.0 }
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn is_zero(&self) -> bool {
        self.temperature == 0.0
    }

    /// Effective temperature of the gap, `k_B T_eff = ħ c / (2a)`.
    pub fn effective_temperature(geometry: &Geometry) -> f64 {
        CONSTANTS.hbar * characteristic_frequency(geometry) / CONSTANTS.k_b
    }
}

/// Plate separation and, for the sphere–plate configuration, sphere radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    separation: f64,
    sphere_radius: Option<f64>,
}

impl Geometry {
    pub fn plates(separation: f64) -> Result<Self> {
        if !(separation.is_finite() && separation > 0.0) {
            return Err(Error::invalid(
                "separation",
                format!("must be finite and positive, got {separation}"),
            ));
        }
        Ok(Geometry {
            separation,
            sphere_radius: None,
        })
    }

    pub fn sphere_plate(separation: f64, radius: f64) -> Result<Self> {
        let mut g = Geometry::plates(separation)?;
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::invalid(
                "sphere_radius",
                format!("must be finite and positive, got {radius}"),
            ));
        }
        g.sphere_radius = Some(radius);
        Ok(g)
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn sphere_radius(&self) -> Option<f64> {
        self.sphere_radius
    }

    pub fn with_separation(&self, separation: f64) -> Result<Self> {
        match self.sphere_radius {
            Some(r) => Geometry::sphere_plate(separation, r),
            None => Geometry::plates(separation),
        }
    }

    /// Proximity-force validity needs R ≫ a; this returns a warning below R = 100 a.
    pub fn proximity_warning(&self) -> Option<String> {
        let r = self.sphere_radius?;
        (r < 100.0 * self.separation).then(|| {
            format!(
                "sphere radius {r:e} m is below 100 × separation ({:e} m); proximity-force result is unreliable",
                100.0 * self.separation
            )
        })
    }
}

/// Numerical tolerances shared by the observables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub quadrature_rel_tol: f64,
    pub sum_rel_tol: f64,
    pub entropy_step_fraction: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            quadrature_rel_tol: 1e-6,
            sum_rel_tol: 1e-6,
            entropy_step_fraction: 1e-3,
        }
    }
}

impl ToleranceConfig {
    /// Quadrature tolerance floor; below this GK21 panels hit roundoff.
    pub const QUADRATURE_FLOOR: f64 = 1e-13;
    /// Sum tolerance floor; terms below this no longer change a double.
    pub const SUM_FLOOR: f64 = 1e-16;

    pub fn new(quadrature_rel_tol: f64, sum_rel_tol: f64, entropy_step_fraction: f64) -> Result<Self> {
        let cfg = ToleranceConfig {
            quadrature_rel_tol,
            sum_rel_tol,
            entropy_step_fraction,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_rel_tol(rel_tol: f64) -> Result<Self> {
        ToleranceConfig::new(rel_tol, rel_tol, ToleranceConfig::default().entropy_step_fraction)
    }

    pub fn validate(&self) -> Result<()> {
        let check = |name: &'static str, v: f64| {
            if v > 0.0 && v <= 1e-2 {
                Ok(())
            } else {
                Err(Error::invalid(name, format!("must lie in (0, 1e-2], got {v}")))
            }
        };
        check("quadrature_rel_tol", self.quadrature_rel_tol)?;
        check("sum_rel_tol", self.sum_rel_tol)?;
        check("entropy_step_fraction", self.entropy_step_fraction)
    }

    /// Tolerances for quantities formed as small differences of free
    /// energies (thermal corrections, entropy). Both tolerances are scaled
    /// by 10⁻⁶ and clamped at the floors.
    pub fn for_differences(&self) -> Self {
        ToleranceConfig {
            quadrature_rel_tol: (self.quadrature_rel_tol * 1e-6).max(Self::QUADRATURE_FLOOR),
            sum_rel_tol: (self.sum_rel_tol * 1e-6).max(Self::SUM_FLOOR),
            entropy_step_fraction: self.entropy_step_fraction,
        }
    }
}

/// ω_c = c / (2a).
pub fn characteristic_frequency(geometry: &Geometry) -> f64 {
    CONSTANTS.c / (2.0 * geometry.separation())
}

/// ξ_l = 2π k_B T l / ħ.
pub fn matsubara_frequency(l: u64, state: &ThermalState) -> Result<f64> {
    if state.is_zero() {
        return Err(Error::ZeroTemperature("Matsubara frequencies"));
    }
    Ok(2.0 * std::f64::consts::PI * CONSTANTS.k_b * state.temperature() * l as f64 / CONSTANTS.hbar)
}

/// Dimensionless first Matsubara frequency ζ_1 = 2aξ_1/c = 4π a k_B T/(ħc).
pub fn dimensionless_matsubara_step(geometry: &Geometry, state: &ThermalState) -> f64 {
    4.0 * std::f64::consts::PI * geometry.separation() * CONSTANTS.k_b * state.temperature()
        / (CONSTANTS.hbar * CONSTANTS.c)
}

/// Ω = v_F ω_p / c, where the anomalous skin depth meets both v_F/ω and c/ω_p.
pub fn transition_frequency(material: &MaterialParams) -> f64 {
    material.fermi_velocity() * material.plasma_frequency() / CONSTANTS.c
}

/// a_tr = c / (2Ω).
pub fn transition_separation(material: &MaterialParams) -> f64 {
    CONSTANTS.c / (2.0 * transition_frequency(material))
}

/// C_a such that δ_a(ω) = C_a ω^{-1/3} equals c/ω_p at ω = Ω.
pub fn derive_anomalous_constant(material: &MaterialParams) -> f64 {
    (CONSTANTS.c / material.plasma_frequency()) * transition_frequency(material).cbrt()
}

/// δ_a(ω) = C_a ω^{-1/3}.
pub fn anomalous_skin_depth(anomalous_constant: f64, omega: f64) -> f64 {
    anomalous_constant / omega.cbrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn characteristic_frequency_examples() {
        let g = Geometry::plates(0.15e-6).unwrap();
        assert!(rel(characteristic_frequency(&g), 1.0e15) < 1e-3);
        let g = Geometry::plates(CONSTANTS.c / 2.0).unwrap();
        assert_eq!(characteristic_frequency(&g), 1.0);
        let g = Geometry::plates(5e-6).unwrap();
        assert!(rel(characteristic_frequency(&g), 3.0e13) < 1e-3);
    }

    #[test]
    fn matsubara_frequency_examples() {
        let t300 = ThermalState::new(300.0).unwrap();
        assert!(rel(matsubara_frequency(1, &t300).unwrap(), 2.47e14) < 2e-3);
        assert_eq!(matsubara_frequency(0, &t300).unwrap(), 0.0);
        let t70 = ThermalState::new(70.0).unwrap();
        assert!(rel(matsubara_frequency(1, &t70).unwrap(), 5.75e13) < 2e-3);
        assert!(matches!(
            matsubara_frequency(1, &ThermalState::zero()),
            Err(Error::ZeroTemperature(_))
        ));
    }

    #[test]
    fn matsubara_frequency_is_linear() {
        let t = ThermalState::new(123.4).unwrap();
        let t2 = ThermalState::new(246.8).unwrap();
        for l in [1u64, 3, 17, 1000] {
            let base = matsubara_frequency(l, &t).unwrap();
            assert_eq!(matsubara_frequency(2 * l, &t).unwrap(), 2.0 * base);
            assert!(rel(matsubara_frequency(l, &t2).unwrap(), 2.0 * base) < 1e-15);
        }
    }

    #[test]
    fn transition_constants_for_gold() {
        let gold = MaterialParams::gold();
        assert!(rel(transition_frequency(&gold), 6.36e13) < 0.01);
        assert!(rel(transition_separation(&gold), 2.36e-6) < 0.01);
        assert!(rel(derive_anomalous_constant(&gold), 8.8e-4) < 0.02);
    }

    #[test]
    fn transition_frequency_trivial_product() {
        let m = MaterialParams::new(1e16, CONSTANTS.c * 1e-2).unwrap();
        assert!(rel(transition_frequency(&m), 1e14) < 1e-15);
    }

    #[test]
    fn transition_separation_times_frequency_is_half_c() {
        for (wp, vf) in [(1.37e16, 1.4e6), (3e15, 2e5), (9e16, 5e7)] {
            let m = MaterialParams::new(wp, vf).unwrap();
            let product = transition_separation(&m) * transition_frequency(&m);
            assert!(rel(product, CONSTANTS.c / 2.0) < 1e-15);
        }
    }

    #[test]
    fn anomalous_depth_matches_relaxation_depth_at_transition() {
        let gold = MaterialParams::gold();
        let omega = transition_frequency(&gold);
        let ca = derive_anomalous_constant(&gold);
        let da = anomalous_skin_depth(ca, omega);
        assert!(rel(da, gold.fermi_velocity() / omega) < 1e-12);
        assert!(rel(da, CONSTANTS.c / gold.plasma_frequency()) < 1e-12);
        assert_eq!(anomalous_skin_depth(ca, 1e13), ca * 1e13f64.cbrt().recip());
    }

    #[test]
    fn tolerance_validation() {
        assert!(ToleranceConfig::default().validate().is_ok());
        assert!(ToleranceConfig::new(0.0, 1e-6, 1e-3).is_err());
        assert!(ToleranceConfig::new(1e-6, 0.5, 1e-3).is_err());
        let tight = ToleranceConfig::default().for_differences();
        assert_eq!(tight.quadrature_rel_tol, 1e-12);
        assert_eq!(tight.sum_rel_tol, 1e-12);
        let floor = ToleranceConfig::new(1e-10, 1e-12, 1e-3).unwrap().for_differences();
        assert_eq!(floor.quadrature_rel_tol, ToleranceConfig::QUADRATURE_FLOOR);
        assert_eq!(floor.sum_rel_tol, ToleranceConfig::SUM_FLOOR);
    }

    #[test]
    fn geometry_validation() {
        assert!(Geometry::plates(0.0).is_err());
        assert!(Geometry::plates(-1.0).is_err());
        assert!(Geometry::sphere_plate(1e-6, 0.0).is_err());
        let g = Geometry::sphere_plate(1e-6, 50e-6).unwrap();
        assert!(g.proximity_warning().is_some());
        let g = Geometry::sphere_plate(1e-6, 200e-6).unwrap();
        assert!(g.proximity_warning().is_none());
        assert!(ThermalState::new(-1.0).is_err());
    }

    #[test]
    fn si_conductivity_conversion() {
        // 1 S/m is about 9e9 s^-1 in Gaussian units.
        assert!(rel(conductivity_si_to_gaussian(1.0), 8.987_551_79e9) < 1e-8);
    }
}
