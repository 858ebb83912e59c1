//! Casimir observables between two identical plates (and a sphere above a
//! plate through the proximity-force approximation).
//!
//! Every integrand is split as
//!
//! ```text
//! ln(1 − r²e^{-y}) = ln(1 − e^{-y}) + ln(1 + X/(e^y − 1))
//! ```
//!
//! The ideal-metal part is integrated in closed form with polylogarithms, so
//! quadrature only ever sees the small real-metal correction. This keeps
//! thermal corrections of order 10⁻⁶ well above the numerical noise.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::physcore::{
    dimensionless_matsubara_step, Geometry, MaterialParams, ThermalState, ToleranceConfig, CONSTANTS,
};
use crate::quadrature::{integrate, integrate_semi_infinite, matsubara_sum, primed_sum, Estimate, SumResult};
use crate::reflection::{FrequencyKernel, Model};
use crate::impedance::ImpedanceModel;
use crate::special::{
    ideal_inner_integral, ideal_outer_antiderivative, ideal_pressure_inner_integral,
    ideal_pressure_outer_antiderivative, ZETA_3, ZETA_4,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    EnergyPerArea,
    FreeEnergyPerArea,
    PressurePlates,
    ForceSpherePlate,
    EntropyPerArea,
    CorrectionFactor,
    RelativeThermalCorrection,
}

impl Quantity {
    pub fn unit(self) -> &'static str {
        match self {
            Quantity::EnergyPerArea | Quantity::FreeEnergyPerArea => "J/m^2",
            Quantity::PressurePlates => "N/m^2",
            Quantity::ForceSpherePlate => "N",
            Quantity::EntropyPerArea => "J/(K m^2)",
            Quantity::CorrectionFactor | Quantity::RelativeThermalCorrection => "",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::EnergyPerArea => "energy",
            Quantity::FreeEnergyPerArea => "free energy",
            Quantity::PressurePlates => "pressure",
            Quantity::ForceSpherePlate => "sphere-plate force",
            Quantity::EntropyPerArea => "entropy",
            Quantity::CorrectionFactor => "correction factor",
            Quantity::RelativeThermalCorrection => "relative thermal correction",
        })
    }
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Diagnostics {
    /// Matsubara terms accumulated (counting l = 0).
    pub terms_used: Option<usize>,
    pub last_term_magnitude: Option<f64>,
    /// Integrand evaluations of the outermost quadrature.
    pub evaluations: Option<usize>,
}

impl Diagnostics {
    fn from_sum(s: &SumResult) -> Self {
        Diagnostics {
            terms_used: Some(s.terms_used),
            last_term_magnitude: Some(s.last_term_magnitude),
            evaluations: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultValue {
    pub quantity: Quantity,
    /// SI units, see [`Quantity::unit`].
    pub value: f64,
    pub numeric_error: f64,
    pub diagnostics: Diagnostics,
    pub warnings: Vec<String>,
}

impl ResultValue {
    fn exact(quantity: Quantity, value: f64) -> Self {
        ResultValue {
            quantity,
            value,
            numeric_error: 0.0,
            diagnostics: Diagnostics::default(),
            warnings: Vec::new(),
        }
    }

    fn scaled(mut self, factor: f64, quantity: Quantity) -> Self {
        self.value *= factor;
        self.numeric_error *= factor.abs();
        self.quantity = quantity;
        self
    }

    fn ratio(&self, denominator: &ResultValue, quantity: Quantity) -> ResultValue {
        let value = self.value / denominator.value;
        let numeric_error = value.abs()
            * (self.numeric_error / self.value.abs() + denominator.numeric_error / denominator.value.abs());
        let mut warnings = self.warnings.clone();
        for w in &denominator.warnings {
            if !warnings.contains(w) {
                warnings.push(w.clone());
            }
        }
        ResultValue {
            quantity,
            value,
            numeric_error,
            diagnostics: self.diagnostics,
            warnings,
        }
    }
}

/// Energy per area or pressure: the two integrands that get summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Integrand {
    Energy,
    Pressure,
}

impl Integrand {
    /// Ideal-metal inner integral over y ∈ [ζ, ∞), both polarizations.
    fn ideal_inner(self, zeta: f64) -> f64 {
        match self {
            Integrand::Energy => 2.0 * ideal_inner_integral(zeta),
            Integrand::Pressure => 2.0 * ideal_pressure_inner_integral(zeta),
        }
    }

    /// ∫_lo^hi ideal_inner(ζ) dζ.
    fn ideal_outer(self, lo: f64, hi: f64) -> f64 {
        let g = match self {
            Integrand::Energy => ideal_outer_antiderivative,
            Integrand::Pressure => ideal_pressure_outer_antiderivative,
        };
        2.0 * (g(hi) - g(lo))
    }

    /// Real-metal correction to the inner integral at one frequency.
    fn correction_inner(self, kernel: &FrequencyKernel, rel_tol: f64, abs_tol: f64) -> Result<Estimate> {
        let r = match self {
            Integrand::Energy => integrate_semi_infinite(
                |y| {
                    let x = kernel.x_factors(y)?;
                    let em1 = y.exp_m1();
                    Ok(y * ((x.par / em1).ln_1p() + (x.perp / em1).ln_1p()))
                },
                kernel.zeta(),
                rel_tol,
                abs_tol,
            )?,
            Integrand::Pressure => integrate_semi_infinite(
                |y| {
                    let x = kernel.x_factors(y)?;
                    let em1 = y.exp_m1();
                    // r²/(e^y − r²) − 1/(e^y − 1) with r² = 1 − X
                    let per = |x: f64| -x * (1.0 + 1.0 / em1) / (em1 + x);
                    Ok(y * y * (per(x.par) + per(x.perp)))
                },
                kernel.zeta(),
                rel_tol,
                abs_tol,
            )?,
        };
        Ok(r.into())
    }

    /// Full inner integral at ζ: closed-form ideal part plus correction.
    fn inner(self, model: &Model, geometry: &Geometry, zeta: f64, rel_tol: f64) -> Result<Estimate> {
        let ideal = self.ideal_inner(zeta);
        if model.is_ideal() {
            return Ok(Estimate::exact(ideal));
        }
        let kernel = model.at_frequency(geometry, zeta)?;
        let c = self.correction_inner(&kernel, rel_tol, rel_tol * ideal.abs())?;
        Ok(Estimate {
            value: ideal + c.value,
            error: c.error,
        })
    }
}

fn validity_warnings(model: &Model, geometry: &Geometry) -> Vec<String> {
    let mut warnings = Vec::new();
    if let Model::Impedance(ImpedanceModel::InfraredOptics { omega_p }) = model {
        let lambda_p = 2.0 * PI * CONSTANTS.c / omega_p;
        if geometry.separation() <= lambda_p {
            warnings.push(format!(
                "separation {:e} m does not exceed the plasma wavelength {lambda_p:e} m; the impedance description is inapplicable",
                geometry.separation()
            ));
        }
    }
    if let Some(w) = model.impedance_warning(geometry) {
        warnings.push(w);
    }
    warnings
}

/// E⁽⁰⁾(a) = −π²ħc/(720a³).
pub fn energy_ideal(geometry: &Geometry) -> ResultValue {
    let a = geometry.separation();
    ResultValue::exact(Quantity::EnergyPerArea, -PI * PI * CONSTANTS.hbar * CONSTANTS.c / (720.0 * a.powi(3)))
}

/// Ideal-metal energy from the double integral, with no closed forms used.
pub fn energy_ideal_quadrature(geometry: &Geometry, tol: &ToleranceConfig) -> Result<ResultValue> {
    tol.validate()?;
    let inner_tol = 0.1 * tol.quadrature_rel_tol;
    let outer = integrate_semi_infinite(
        |zeta| {
            integrate_semi_infinite(|y| Ok(2.0 * y * (-(-y).exp()).ln_1p()), zeta, inner_tol, 0.0).map(|r| r.value)
        },
        0.0,
        tol.quadrature_rel_tol,
        0.0,
    )?;
    let pref = energy_prefactor(geometry);
    Ok(ResultValue {
        quantity: Quantity::EnergyPerArea,
        value: pref * outer.value,
        numeric_error: pref * (outer.abs_error_estimate + inner_tol * outer.value.abs()),
        diagnostics: Diagnostics {
            evaluations: Some(outer.evaluations),
            ..Diagnostics::default()
        },
        warnings: Vec::new(),
    })
}

/// ħc/(32π²a³).
fn energy_prefactor(geometry: &Geometry) -> f64 {
    CONSTANTS.hbar * CONSTANTS.c / (32.0 * PI * PI * geometry.separation().powi(3))
}

/// ∫_lo^hi dζ of the full inner integral (T = 0), without prefactor.
fn zero_temperature_integral(
    integrand: Integrand,
    model: &Model,
    geometry: &Geometry,
    window: (f64, f64),
    tol: &ToleranceConfig,
) -> Result<(Estimate, Option<usize>)> {
    let (lo, hi) = window;
    let ideal = integrand.ideal_outer(lo, hi);
    if model.is_ideal() {
        return Ok((Estimate::exact(ideal), None));
    }
    let full_scale = integrand.ideal_outer(0.0, f64::INFINITY).abs();
    let rel = tol.quadrature_rel_tol;
    let inner_rel = 0.1 * rel;
    let f = |zeta: f64| -> Result<f64> {
        let kernel = model.at_frequency(geometry, zeta)?;
        let abs = inner_rel * integrand.ideal_inner(zeta).abs();
        Ok(integrand.correction_inner(&kernel, inner_rel, abs)?.value)
    };
    let outer = if hi.is_infinite() {
        integrate_semi_infinite(f, lo, rel, rel * full_scale)?
    } else {
        integrate(f, lo, hi, rel, rel * full_scale)?
    };
    Ok((
        Estimate {
            value: ideal + outer.value,
            error: outer.abs_error_estimate + inner_rel * full_scale,
        },
        Some(outer.evaluations),
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTemperatureEnergy {
    pub energy: ResultValue,
    /// E(a)/E⁽⁰⁾(a).
    pub correction_factor: ResultValue,
}

/// E(a) at T = 0 together with its ratio to the ideal-metal value.
pub fn energy_zero_temperature(model: &Model, geometry: &Geometry, tol: &ToleranceConfig) -> Result<ZeroTemperatureEnergy> {
    tol.validate()?;
    let (est, evaluations) = zero_temperature_integral(Integrand::Energy, model, geometry, (0.0, f64::INFINITY), tol)?;
    let pref = energy_prefactor(geometry);
    let energy = ResultValue {
        quantity: Quantity::EnergyPerArea,
        value: pref * est.value,
        numeric_error: pref * est.error,
        diagnostics: Diagnostics {
            evaluations,
            ..Diagnostics::default()
        },
        warnings: validity_warnings(model, geometry),
    };
    let correction_factor = if model.is_ideal() {
        ResultValue::exact(Quantity::CorrectionFactor, 1.0)
    } else {
        energy.ratio(&energy_ideal(geometry), Quantity::CorrectionFactor)
    };
    Ok(ZeroTemperatureEnergy {
        energy,
        correction_factor,
    })
}

/// Dimensionless Matsubara step ζ₁, rejecting T = 0.
fn matsubara_step(geometry: &Geometry, state: &ThermalState, what: &'static str) -> Result<f64> {
    if state.is_zero() {
        return Err(Error::ZeroTemperature(what));
    }
    Ok(dimensionless_matsubara_step(geometry, state))
}

/// Smallest index whose frequency reaches 10ω_c.
pub fn default_l_floor(geometry: &Geometry, state: &ThermalState) -> Result<usize> {
    let step = matsubara_step(geometry, state, "Matsubara sums")?;
    Ok((10.0 / step).ceil() as usize)
}

fn matsubara_observable(
    integrand: Integrand,
    model: &Model,
    geometry: &Geometry,
    state: &ThermalState,
    tol: &ToleranceConfig,
    fixed_terms: Option<usize>,
) -> Result<SumResult> {
    tol.validate()?;
    let what = match integrand {
        Integrand::Energy => "the free energy",
        Integrand::Pressure => "the pressure",
    };
    let step = matsubara_step(geometry, state, what)?;
    let rel = tol.quadrature_rel_tol;
    let term = |l: usize| integrand.inner(model, geometry, l as f64 * step, rel);
    match fixed_terms {
        Some(n) => primed_sum(term, n),
        None => matsubara_sum(term, tol.sum_rel_tol, (10.0 / step).ceil() as usize),
    }
}

fn free_energy_impl(
    model: &Model,
    geometry: &Geometry,
    state: &ThermalState,
    tol: &ToleranceConfig,
    fixed_terms: Option<usize>,
) -> Result<ResultValue> {
    let sum = matsubara_observable(Integrand::Energy, model, geometry, state, tol, fixed_terms)?;
    let a = geometry.separation();
    let pref = CONSTANTS.k_b * state.temperature() / (8.0 * PI * a * a);
    Ok(ResultValue {
        quantity: Quantity::FreeEnergyPerArea,
        value: pref * sum.value,
        numeric_error: pref * sum.error_estimate,
        diagnostics: Diagnostics::from_sum(&sum),
        warnings: validity_warnings(model, geometry),
    })
}

/// Free energy per unit area at T > 0 as a converged Matsubara sum.
pub fn free_energy(model: &Model, geometry: &Geometry, state: &ThermalState, tol: &ToleranceConfig) -> Result<ResultValue> {
    free_energy_impl(model, geometry, state, tol, None)
}

/// Free energy from exactly `terms` Matsubara terms (l = 0 … terms − 1).
pub fn free_energy_truncated(
    model: &Model,
    geometry: &Geometry,
    state: &ThermalState,
    tol: &ToleranceConfig,
    terms: usize,
) -> Result<ResultValue> {
    if terms == 0 {
        return Err(Error::invalid("terms", "at least the zero-frequency term is required"));
    }
    free_energy_impl(model, geometry, state, tol, Some(terms))
}

/// Ideal-metal free energy from its rapidly convergent closed series.
pub fn free_energy_ideal(geometry: &Geometry, state: &ThermalState) -> Result<ResultValue> {
    if state.is_zero() {
        return Err(Error::ZeroTemperature("the ideal-metal free energy"));
    }
    let t = state.temperature() / ThermalState::effective_temperature(geometry);
    // Σ_l t³coth(πl/t)/l³ = ζ(3)t³ + Σ_l t³(coth − 1)/l³; the remainder and
    // the 1/sinh² terms decay like e^{−2πl/t}.
    let mut series = crate::quadrature::CompensatedSum::new();
    series.add(ZETA_3 * t.powi(3));
    let mut l = 1u32;
    loop {
        let lf = f64::from(l);
        let x = PI * lf / t;
        let e2 = (-2.0 * x).exp();
        let coth_minus_one = 2.0 * e2 / (-(-2.0 * x).exp_m1());
        let inv_sinh_sq = 4.0 * e2 / (-(-2.0 * x).exp_m1()).powi(2);
        let term = t.powi(3) * coth_minus_one / lf.powi(3) + PI * t * t * inv_sinh_sq / (lf * lf);
        series.add(term);
        if term <= 1e-17 * series.value().abs() || term == 0.0 || l > 1_000_000 {
            break;
        }
        l += 1;
    }
    let e0 = energy_ideal(geometry).value;
    let bracket = 1.0 + 45.0 / PI.powi(3) * series.value() - t.powi(4);
    Ok(ResultValue {
        quantity: Quantity::FreeEnergyPerArea,
        value: e0 * bracket,
        numeric_error: e0.abs() * 1e-15 * (1.0 + t.powi(4)),
        diagnostics: Diagnostics {
            terms_used: Some(l as usize),
            ..Diagnostics::default()
        },
        warnings: Vec::new(),
    })
}

/// [F(a,T) − E(a)]/E(a), both from the same model, with tightened tolerances.
pub fn relative_thermal_correction(
    model: &Model,
    geometry: &Geometry,
    state: &ThermalState,
    tol: &ToleranceConfig,
) -> Result<ResultValue> {
    let tight = tol.for_differences();
    let f = free_energy(model, geometry, state, &tight)?;
    let e = energy_zero_temperature(model, geometry, &tight)?.energy;
    let value = (f.value - e.value) / e.value;
    Ok(ResultValue {
        quantity: Quantity::RelativeThermalCorrection,
        value,
        numeric_error: (f.numeric_error + e.numeric_error) / e.value.abs(),
        diagnostics: f.diagnostics,
        warnings: f.warnings,
    })
}

/// Pressure between the plates (negative is attractive), from the
/// derivative of the Lifshitz-type sum taken analytically in a.
pub fn pressure(model: &Model, geometry: &Geometry, state: &ThermalState, tol: &ToleranceConfig) -> Result<ResultValue> {
    let a = geometry.separation();
    if state.is_zero() {
        tol.validate()?;
        let (est, evaluations) =
            zero_temperature_integral(Integrand::Pressure, model, geometry, (0.0, f64::INFINITY), tol)?;
        let pref = -CONSTANTS.hbar * CONSTANTS.c / (32.0 * PI * PI * a.powi(4));
        return Ok(ResultValue {
            quantity: Quantity::PressurePlates,
            value: pref * est.value,
            numeric_error: pref.abs() * est.error,
            diagnostics: Diagnostics {
                evaluations,
                ..Diagnostics::default()
            },
            warnings: validity_warnings(model, geometry),
        });
    }
    let sum = matsubara_observable(Integrand::Pressure, model, geometry, state, tol, None)?;
    let pref = -CONSTANTS.k_b * state.temperature() / (8.0 * PI * a.powi(3));
    Ok(ResultValue {
        quantity: Quantity::PressurePlates,
        value: pref * sum.value,
        numeric_error: pref.abs() * sum.error_estimate,
        diagnostics: Diagnostics::from_sum(&sum),
        warnings: validity_warnings(model, geometry),
    })
}

/// Proximity-force sphere–plate force 2πR·F(a) (2πR·E(a) at T = 0).
pub fn sphere_plate_force(model: &Model, geometry: &Geometry, state: &ThermalState, tol: &ToleranceConfig) -> Result<ResultValue> {
    let radius = geometry
        .sphere_radius()
        .ok_or_else(|| Error::invalid("sphere_radius", "the sphere-plate force needs a sphere radius"))?;
    let base = if state.is_zero() {
        energy_zero_temperature(model, geometry, tol)?.energy
    } else {
        free_energy(model, geometry, state, tol)?
    };
    let mut r = base.scaled(2.0 * PI * radius, Quantity::ForceSpherePlate);
    if let Some(w) = geometry.proximity_warning() {
        r.warnings.push(w);
    }
    Ok(r)
}

/// S = −∂F/∂T from a Richardson-extrapolated central difference.
pub fn entropy(model: &Model, geometry: &Geometry, state: &ThermalState, tol: &ToleranceConfig) -> Result<ResultValue> {
    tol.validate()?;
    if state.is_zero() {
        return Err(Error::ZeroTemperature("the entropy"));
    }
    let tight = tol.for_differences();
    let t = state.temperature();
    let h = tol.entropy_step_fraction * t;
    let f_at = |temperature: f64| free_energy(model, geometry, &ThermalState::new(temperature)?, &tight);
    let (lo1, hi1) = (f_at(t - h)?, f_at(t + h)?);
    let (lo2, hi2) = (f_at(t - 0.5 * h)?, f_at(t + 0.5 * h)?);
    let d1 = (lo1.value - hi1.value) / (2.0 * h);
    let d2 = (lo2.value - hi2.value) / h;
    let value = (4.0 * d2 - d1) / 3.0;
    let noise = (4.0 * (lo2.numeric_error + hi2.numeric_error) / h + (lo1.numeric_error + hi1.numeric_error) / (2.0 * h)) / 3.0;
    let numeric_error = (d2 - d1).abs() / 3.0 + noise;
    let mut warnings = lo1.warnings;
    if numeric_error > value.abs() {
        warnings.push(format!(
            "entropy {value:e} is indistinguishable from zero (numerical error {numeric_error:e})"
        ));
    }
    Ok(ResultValue {
        quantity: Quantity::EntropyPerArea,
        value,
        numeric_error,
        diagnostics: lo2.diagnostics,
        warnings,
    })
}

/// Closed-form low-temperature behaviour of plates described by the
/// infrared-optics impedance, to first order in δ_r/a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowTemperatureAsymptotics {
    /// F(a,T) − E(a), J/m².
    pub free_energy_shift: f64,
    /// S(a,T), J/(K m²).
    pub entropy: f64,
}

impl LowTemperatureAsymptotics {
    /// Free-energy estimate given the zero-temperature energy of the same plates.
    pub fn free_energy(&self, energy: f64) -> f64 {
        energy + self.free_energy_shift
    }
}

/// Valid only for T below a tenth of the effective temperature ħc/(2a k_B).
pub fn low_temperature_asymptotics(
    material: &MaterialParams,
    geometry: &Geometry,
    state: &ThermalState,
) -> Result<LowTemperatureAsymptotics> {
    let t_eff = ThermalState::effective_temperature(geometry);
    let limit = 0.1 * t_eff;
    if state.temperature() >= limit {
        return Err(Error::OutsideLowTemperatureRange {
            temperature: state.temperature(),
            limit,
        });
    }
    let a = geometry.separation();
    let d = material.relaxation_depth() / a;
    let t = state.temperature() / t_eff;
    let c3 = PI.powi(3) / (45.0 * ZETA_3);
    let free_energy_shift = -CONSTANTS.hbar * CONSTANTS.c * ZETA_3 / (16.0 * PI * a.powi(3))
        * ((1.0 + 2.0 * d) * t.powi(3) - c3 * (1.0 + 4.0 * d) * t.powi(4));
    let k = 4.0 * PI.powi(3) / (135.0 * ZETA_3);
    let entropy = 3.0 * CONSTANTS.k_b * ZETA_3 / (8.0 * PI * a * a)
        * t
        * t
        * (1.0 - k * t + 2.0 * d * (1.0 - 2.0 * k * t));
    Ok(LowTemperatureAsymptotics {
        free_energy_shift,
        entropy,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralFraction {
    pub value: f64,
    pub numeric_error: f64,
}

/// Share of the zero-temperature energy coming from ζ ∈ (ζ_lo, ζ_hi).
pub fn spectral_contribution(
    model: &Model,
    geometry: &Geometry,
    window: (f64, f64),
    tol: &ToleranceConfig,
) -> Result<SpectralFraction> {
    tol.validate()?;
    let (lo, hi) = window;
    if !(lo >= 0.0 && hi > lo && lo.is_finite()) {
        return Err(Error::invalid("window", format!("need 0 <= lo < hi, got ({lo}, {hi})")));
    }
    let (part, _) = zero_temperature_integral(Integrand::Energy, model, geometry, window, tol)?;
    if lo == 0.0 && hi.is_infinite() {
        return Ok(SpectralFraction {
            value: 1.0,
            numeric_error: 0.0,
        });
    }
    let (full, _) = zero_temperature_integral(Integrand::Energy, model, geometry, (0.0, f64::INFINITY), tol)?;
    let value = part.value / full.value;
    Ok(SpectralFraction {
        value,
        numeric_error: (part.error + value.abs() * full.error) / full.value.abs(),
    })
}

/// Ideal-metal energy integral ∫∫ 2y ln(1 − e^{−y}) = −4ζ(4), exposed for checks.
pub const IDEAL_ENERGY_INTEGRAL: f64 = -4.0 * ZETA_4;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection::DielectricModel;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn gold() -> MaterialParams {
        MaterialParams::gold()
    }

    fn ir() -> Model {
        Model::Impedance(ImpedanceModel::infrared_for(&gold()))
    }

    fn plates(a: f64) -> Geometry {
        Geometry::plates(a).unwrap()
    }

    fn kelvin(t: f64) -> ThermalState {
        ThermalState::new(t).unwrap()
    }

    const IDEAL: Model = Model::Impedance(ImpedanceModel::IdealMetal);

    #[test]
    fn ideal_energy_closed_form() {
        let e = energy_ideal(&plates(1e-6)).value;
        assert!(rel(e, -4.33e-10) < 1e-3);
        assert!(rel(energy_ideal(&plates(2e-6)).value, e / 8.0) < 1e-15);
        assert!(rel(IDEAL_ENERGY_INTEGRAL * energy_prefactor(&plates(1e-6)), e) < 1e-14);
    }

    #[test]
    fn ideal_energy_by_quadrature() {
        let g = plates(1e-6);
        let q = energy_ideal_quadrature(&g, &ToleranceConfig::default()).unwrap();
        assert!(rel(q.value, energy_ideal(&g).value) < 1e-6);
    }

    #[test]
    fn ideal_model_has_unit_correction_factor() {
        let r = energy_zero_temperature(&IDEAL, &plates(1e-6), &ToleranceConfig::default()).unwrap();
        assert_eq!(r.correction_factor.value, 1.0);
        assert!(rel(r.energy.value, energy_ideal(&plates(1e-6)).value) < 1e-14);
    }

    #[test]
    fn infrared_correction_factor_at_200nm() {
        let r = energy_zero_temperature(&ir(), &plates(0.2e-6), &ToleranceConfig::default()).unwrap();
        assert!(rel(r.correction_factor.value, 0.689) < 0.01, "{}", r.correction_factor.value);
        assert!(r.energy.value < 0.0);
        assert!(r.energy.warnings.is_empty());
    }

    #[test]
    fn warns_below_plasma_wavelength() {
        let r = energy_zero_temperature(&ir(), &plates(0.1e-6), &ToleranceConfig::default()).unwrap();
        assert!(r.energy.warnings.iter().any(|w| w.contains("plasma wavelength")));
    }

    #[test]
    fn ideal_series_matches_matsubara_sum() {
        let g = plates(1e-6);
        let t = kelvin(300.0);
        let series = free_energy_ideal(&g, &t).unwrap().value;
        let numeric = free_energy(&IDEAL, &g, &t, &ToleranceConfig::default()).unwrap().value;
        assert!(rel(series, numeric) < 1e-6, "{series} vs {numeric}");
    }

    #[test]
    fn ideal_series_limits() {
        let g = plates(1e-6);
        let t_eff = ThermalState::effective_temperature(&g);
        let cold = free_energy_ideal(&g, &kelvin(1e-4 * t_eff)).unwrap().value;
        assert!(rel(cold, energy_ideal(&g).value) < 1e-10);
        let temp = 20.0 * t_eff;
        let hot = free_energy_ideal(&g, &kelvin(temp)).unwrap().value;
        let classical = -CONSTANTS.k_b * temp * ZETA_3 / (8.0 * PI * 1e-12);
        assert!(rel(hot, classical) < 0.01, "{hot} vs {classical}");
    }

    #[test]
    fn free_energy_rejects_zero_temperature() {
        let e = free_energy(&ir(), &plates(1e-6), &ThermalState::zero(), &ToleranceConfig::default()).unwrap_err();
        assert!(matches!(e, Error::ZeroTemperature(_)));
    }

    #[test]
    fn ideal_pressure_at_zero_temperature() {
        let p = pressure(&IDEAL, &plates(1e-6), &ThermalState::zero(), &ToleranceConfig::default()).unwrap();
        let exact = -PI * PI * CONSTANTS.hbar * CONSTANTS.c / (240.0 * 1e-24);
        assert!(rel(p.value, exact) < 1e-12);
        assert!(rel(p.value, -1.30e-3) < 1e-3);
    }

    #[test]
    fn real_metal_pressure_is_weaker() {
        let g = plates(0.5e-6);
        let tol = ToleranceConfig::default();
        let p_ir = pressure(&ir(), &g, &ThermalState::zero(), &tol).unwrap().value;
        let p_id = pressure(&IDEAL, &g, &ThermalState::zero(), &tol).unwrap().value;
        assert!(p_ir < 0.0 && p_ir > p_id);
    }

    #[test]
    fn sphere_plate_ideal() {
        let g = Geometry::sphere_plate(1e-6, 100e-6).unwrap();
        let f = sphere_plate_force(&IDEAL, &g, &ThermalState::zero(), &ToleranceConfig::default()).unwrap();
        assert!(rel(f.value, -2.72e-13) < 2e-3);
        let g2 = Geometry::sphere_plate(1e-6, 200e-6).unwrap();
        let f2 = sphere_plate_force(&IDEAL, &g2, &ThermalState::zero(), &ToleranceConfig::default()).unwrap();
        assert_eq!(f2.value, 2.0 * f.value);
        assert!(sphere_plate_force(&IDEAL, &plates(1e-6), &ThermalState::zero(), &ToleranceConfig::default()).is_err());
        let close = Geometry::sphere_plate(1e-6, 10e-6).unwrap();
        let f3 = sphere_plate_force(&IDEAL, &close, &ThermalState::zero(), &ToleranceConfig::default()).unwrap();
        assert!(!f3.warnings.is_empty());
    }

    #[test]
    fn low_temperature_range_is_enforced() {
        let g = plates(1e-6);
        let t_eff = ThermalState::effective_temperature(&g);
        assert!(matches!(
            low_temperature_asymptotics(&gold(), &g, &kelvin(0.2 * t_eff)),
            Err(Error::OutsideLowTemperatureRange { .. })
        ));
        let r = low_temperature_asymptotics(&gold(), &g, &kelvin(30.0)).unwrap();
        assert!(r.entropy > 0.0);
        assert!(r.free_energy_shift < 0.0);
    }

    #[test]
    fn low_temperature_ideal_limit_matches_series() {
        let g = plates(1e-6);
        let huge = MaterialParams::new(1e40, 1e6).unwrap();
        let t = kelvin(20.0);
        let asym = low_temperature_asymptotics(&huge, &g, &t).unwrap();
        let exact = free_energy_ideal(&g, &t).unwrap().value - energy_ideal(&g).value;
        assert!(rel(asym.free_energy_shift, exact) < 1e-8);
    }

    #[test]
    fn whole_window_is_everything() {
        let f = spectral_contribution(&ir(), &plates(1e-6), (0.0, f64::INFINITY), &ToleranceConfig::default()).unwrap();
        assert_eq!(f.value, 1.0);
        assert!(spectral_contribution(&ir(), &plates(1e-6), (2.0, 1.0), &ToleranceConfig::default()).is_err());
    }

    #[test]
    fn lifshitz_plasma_close_to_infrared_impedance() {
        let g = plates(1e-6);
        let tol = ToleranceConfig::default();
        let plasma = Model::Lifshitz(DielectricModel::plasma(gold().plasma_frequency()).unwrap());
        let a = energy_zero_temperature(&ir(), &g, &tol).unwrap().correction_factor.value;
        let b = energy_zero_temperature(&plasma, &g, &tol).unwrap().correction_factor.value;
        assert!(rel(a, b) < 0.01, "{a} vs {b}");
    }

    #[test]
    fn truncated_sum_uses_exact_count() {
        let r = free_energy_truncated(&ir(), &plates(1e-6), &kelvin(300.0), &ToleranceConfig::default(), 7).unwrap();
        assert_eq!(r.diagnostics.terms_used, Some(7));
        assert!(free_energy_truncated(&ir(), &plates(1e-6), &kelvin(300.0), &ToleranceConfig::default(), 0).is_err());
    }
}
