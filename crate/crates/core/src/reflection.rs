//! Reflection coefficients on the imaginary frequency axis.
//!
//! Everything downstream works with the X-factors, X = 1 − r², in the
//! dimensionless variables ζ = 2aξ/c and y = 2aq. Written that way the
//! zero-frequency limits are ordinary function values and the free-energy
//! integrand can be split into an ideal-metal part plus a small correction.

use std::fmt;

use crate::error::{Error, Result};
use crate::impedance::{ImpedanceModel, ImpedanceValue};
use crate::physcore::{characteristic_frequency, Geometry, MaterialParams, CONSTANTS};

/// Imaginary frequency ξ (rad/s) and transverse wavenumber k⊥ (rad/m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    xi: f64,
    k_perp: f64,
}

impl SpectralPoint {
    pub fn new(xi: f64, k_perp: f64) -> Result<Self> {
        if !(xi.is_finite() && xi >= 0.0) {
            return Err(Error::NegativeFrequency(xi));
        }
        if !(k_perp.is_finite() && k_perp >= 0.0) {
            return Err(Error::invalid("k_perp", format!("must be finite and non-negative, got {k_perp}")));
        }
        Ok(SpectralPoint { xi, k_perp })
    }

    /// The point with ζ = 2aξ/c and y = 2aq.
    pub fn from_dimensionless(geometry: &Geometry, zeta: f64, y: f64) -> Result<Self> {
        if !(zeta >= 0.0 && y >= zeta) {
            return Err(Error::invalid("y", format!("need y >= zeta >= 0, got zeta={zeta}, y={y}")));
        }
        let two_a = 2.0 * geometry.separation();
        SpectralPoint::new(zeta * CONSTANTS.c / two_a, ((y - zeta) * (y + zeta)).sqrt() / two_a)
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn k_perp(&self) -> f64 {
        self.k_perp
    }

    /// q = √(k⊥² + ξ²/c²).
    pub fn q(&self) -> f64 {
        self.k_perp.hypot(self.xi / CONSTANTS.c)
    }

    pub fn zeta(&self, geometry: &Geometry) -> f64 {
        2.0 * geometry.separation() * self.xi / CONSTANTS.c
    }

    pub fn y(&self, geometry: &Geometry) -> f64 {
        2.0 * geometry.separation() * self.q()
    }
}

/// Squared reflection coefficients for the two polarizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair {
    pub r_par_sq: f64,
    pub r_perp_sq: f64,
}

/// X = 1 − r² for each polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XFactors {
    pub par: f64,
    pub perp: f64,
}

impl XFactors {
    pub fn reflection(&self) -> ReflectionPair {
        ReflectionPair {
            r_par_sq: 1.0 - self.par,
            r_perp_sq: 1.0 - self.perp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DielectricModel {
    /// ε(iξ) = 1 + ω_p²/ξ².
    Plasma { omega_p: f64 },
    /// ε(iξ) = 1 + ω_p²/(ξ(ξ + γ)).
    Drude { omega_p: f64, gamma: f64 },
}

impl DielectricModel {
    pub fn plasma(omega_p: f64) -> Result<Self> {
        if !(omega_p.is_finite() && omega_p > 0.0) {
            return Err(Error::invalid("omega_p", format!("must be finite and positive, got {omega_p}")));
        }
        Ok(DielectricModel::Plasma { omega_p })
    }

    pub fn drude(omega_p: f64, gamma: f64) -> Result<Self> {
        DielectricModel::plasma(omega_p)?;
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::invalid("gamma", format!("must be finite and positive, got {gamma}")));
        }
        Ok(DielectricModel::Drude { omega_p, gamma })
    }

    pub fn plasma_frequency(&self) -> f64 {
        match *self {
            DielectricModel::Plasma { omega_p } | DielectricModel::Drude { omega_p, .. } => omega_p,
        }
    }

    /// ε(iξ) − 1, and ξ²(ε − 1)/ω_p² = ξ/(ξ + γ) (1 for plasma).
    fn susceptibility_parts(&self, xi: f64) -> (f64, f64) {
        match *self {
            DielectricModel::Plasma { omega_p } => (omega_p * omega_p / (xi * xi), 1.0),
            DielectricModel::Drude { omega_p, gamma } => (omega_p * omega_p / (xi * (xi + gamma)), xi / (xi + gamma)),
        }
    }

    pub fn permittivity(&self, xi: f64) -> f64 {
        1.0 + self.susceptibility_parts(xi).0
    }
}

/// Reflection from the impedance boundary condition at ξ > 0.
pub fn refl_impedance(z: ImpedanceValue, point: SpectralPoint) -> Result<ReflectionPair> {
    if point.xi == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    let z = z.value();
    let cq = CONSTANTS.c * point.q();
    let xi = point.xi;
    let par = (cq - z * xi) / (cq + z * xi);
    let perp = (xi - z * cq) / (xi + z * cq);
    Ok(ReflectionPair {
        r_par_sq: par * par,
        r_perp_sq: perp * perp,
    })
}

/// Fresnel reflection for a dielectric half-space. Drude is rejected at ξ = 0.
pub fn refl_lifshitz(model: DielectricModel, point: SpectralPoint) -> Result<ReflectionPair> {
    let q = point.q();
    let wp_c = model.plasma_frequency() / CONSTANTS.c;
    let (inv_eps, k) = if point.xi == 0.0 {
        match model {
            DielectricModel::Drude { .. } => return Err(Error::ZeroFrequency),
            DielectricModel::Plasma { .. } => (0.0, q.hypot(wp_c)),
        }
    } else {
        let (chi, weight) = model.susceptibility_parts(point.xi);
        // k² = q² + (ε − 1)ξ²/c²
        (1.0 / (1.0 + chi), (q * q + wp_c * wp_c * weight).sqrt())
    };
    let par = (q - inv_eps * k) / (q + inv_eps * k);
    let perp = (q - k) / (q + k);
    Ok(ReflectionPair {
        r_par_sq: par * par,
        r_perp_sq: perp * perp,
    })
}

/// Either reflection description, as selected by the caller.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Impedance(ImpedanceModel),
    Lifshitz(DielectricModel),
}

impl Model {
    pub fn is_ideal(&self) -> bool {
        matches!(self, Model::Impedance(ImpedanceModel::IdealMetal))
    }

    /// Precomputes everything that depends only on ζ.
    pub fn at_frequency(&self, geometry: &Geometry, zeta: f64) -> Result<FrequencyKernel> {
        if zeta.is_nan() || zeta < 0.0 {
            return Err(Error::NegativeFrequency(zeta));
        }
        let omega_c = characteristic_frequency(geometry);
        let kind = match *self {
            Model::Impedance(m) => {
                if zeta > 0.0 {
                    let z = m.at_dimensionless(geometry, zeta)?.value();
                    KernelKind::Impedance {
                        zeta_z: zeta * z,
                        z_over_zeta: z / zeta,
                    }
                } else {
                    let z_over_zeta = match m {
                        ImpedanceModel::IdealMetal => 0.0,
                        ImpedanceModel::InfraredOptics { omega_p } => omega_c / omega_p,
                        ImpedanceModel::NormalSkin { .. } | ImpedanceModel::AnomalousSkin { .. } => f64::INFINITY,
                    };
                    KernelKind::Impedance {
                        zeta_z: 0.0,
                        z_over_zeta,
                    }
                }
            }
            Model::Lifshitz(d) => {
                let w = d.plasma_frequency() / omega_c;
                let w2 = w * w;
                let (weight, inv_eps) = match d {
                    DielectricModel::Plasma { .. } => (1.0, zeta * zeta / (zeta * zeta + w2)),
                    DielectricModel::Drude { gamma, .. } => {
                        let g = gamma / omega_c;
                        let zz = zeta * (zeta + g);
                        let weight = if zeta == 0.0 { 0.0 } else { zeta / (zeta + g) };
                        (weight, zz / (zz + w2))
                    }
                };
                KernelKind::Dielectric {
                    w2_weighted: w2 * weight,
                    inv_eps,
                }
            }
        };
        Ok(FrequencyKernel { zeta, kind })
    }

    /// X-factors at (ζ, y); ζ = 0 yields the analytic zero-frequency limits.
    pub fn x_factors(&self, geometry: &Geometry, zeta: f64, y: f64) -> Result<XFactors> {
        self.at_frequency(geometry, zeta)?.x_factors(y)
    }

    /// Warning when Z at the characteristic frequency is not small.
    pub fn impedance_warning(&self, geometry: &Geometry) -> Option<String> {
        match self {
            Model::Impedance(m) => m.at_dimensionless(geometry, 1.0).ok()?.warning(),
            Model::Lifshitz(_) => None,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Impedance(m) => m.fmt(f),
            Model::Lifshitz(DielectricModel::Plasma { .. }) => f.write_str("lifshitz-plasma"),
            Model::Lifshitz(DielectricModel::Drude { .. }) => f.write_str("lifshitz-drude"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum KernelKind {
    /// ζZ and Z/ζ (the latter may be +∞ at ζ = 0).
    Impedance { zeta_z: f64, z_over_zeta: f64 },
    /// W²·ξ/(ξ + γ) with W = ω_p/ω_c, and 1/ε.
    Dielectric { w2_weighted: f64, inv_eps: f64 },
}

/// X-factors as a function of y at one fixed ζ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyKernel {
    zeta: f64,
    kind: KernelKind,
}

impl FrequencyKernel {
    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn x_factors(&self, y: f64) -> Result<XFactors> {
        if y.is_nan() || y <= 0.0 {
            return Err(Error::ZeroWavenumber);
        }
        Ok(match self.kind {
            KernelKind::Impedance { zeta_z, z_over_zeta } => {
                let par = 4.0 * y * zeta_z / ((y + zeta_z) * (y + zeta_z));
                let perp = if z_over_zeta.is_infinite() {
                    0.0
                } else {
                    let u = y * z_over_zeta;
                    4.0 * u / ((1.0 + u) * (1.0 + u))
                };
                XFactors { par, perp }
            }
            KernelKind::Dielectric { w2_weighted, inv_eps } => {
                let k = (y * y + w2_weighted).sqrt();
                let sk = inv_eps * k;
                XFactors {
                    par: 4.0 * y * sk / ((y + sk) * (y + sk)),
                    perp: 4.0 * y * k / ((y + k) * (y + k)),
                }
            }
        })
    }
}

/// X-factors of an impedance model at (ζ, y).
pub fn x_factors(model: ImpedanceModel, geometry: &Geometry, zeta: f64, y: f64) -> Result<XFactors> {
    Model::Impedance(model).x_factors(geometry, zeta, y)
}

/// The five descriptions whose zero-frequency behaviour differs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    ImpedanceNormal,
    ImpedanceAnomalous,
    ImpedanceInfrared,
    LifshitzPlasma,
    LifshitzDrude,
}

impl Formulation {
    pub const ALL: [Formulation; 5] = [
        Formulation::ImpedanceNormal,
        Formulation::ImpedanceAnomalous,
        Formulation::ImpedanceInfrared,
        Formulation::LifshitzPlasma,
        Formulation::LifshitzDrude,
    ];
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formulation::ImpedanceNormal => "impedance-normal",
            Formulation::ImpedanceAnomalous => "impedance-anomalous",
            Formulation::ImpedanceInfrared => "impedance-infrared",
            Formulation::LifshitzPlasma => "lifshitz-plasma",
            Formulation::LifshitzDrude => "lifshitz-drude",
        })
    }
}

/// Exact reflection coefficients at ξ = 0.
pub fn zero_freq_coefficients(
    formulation: Formulation,
    k_perp: f64,
    material: &MaterialParams,
) -> Result<ReflectionPair> {
    if !(k_perp.is_finite() && k_perp > 0.0) {
        return Err(Error::invalid("k_perp", format!("must be finite and positive, got {k_perp}")));
    }
    let wp = material.plasma_frequency();
    let perp = match formulation {
        Formulation::ImpedanceNormal | Formulation::ImpedanceAnomalous => 1.0,
        Formulation::ImpedanceInfrared => {
            let ck = CONSTANTS.c * k_perp;
            let r = (wp - ck) / (wp + ck);
            r * r
        }
        Formulation::LifshitzPlasma => {
            let k0 = k_perp.hypot(wp / CONSTANTS.c);
            let r = (k_perp - k0) / (k_perp + k0);
            r * r
        }
        Formulation::LifshitzDrude => 0.0,
    };
    Ok(ReflectionPair {
        r_par_sq: 1.0,
        r_perp_sq: perp,
    })
}

/// Mode-equation determinants on the imaginary axis and their
/// renormalization by the infinite-separation values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionEval {
    pub delta_par: f64,
    pub delta_perp: f64,
    pub delta_par_inf: f64,
    pub delta_perp_inf: f64,
    pub renormalized_par: f64,
    pub renormalized_perp: f64,
    /// Largest |Δ/Δ^∞ − (1 − r²e^{−2aq})| over the two polarizations.
    pub identity_residual: f64,
}

/// Δ(η) = ½e^{−aq}[(1 + η²) sinh aq + 2η cosh aq], written without overflow.
fn determinant(eta: f64, y: f64) -> (f64, f64) {
    let e = (-y).exp();
    let one_minus_e = -(-y).exp_m1();
    let delta = 0.25 * ((1.0 + eta * eta) * one_minus_e + 2.0 * eta * (1.0 + e));
    let delta_inf = 0.25 * (1.0 + eta) * (1.0 + eta);
    (delta, delta_inf)
}

pub fn dispersion_functions(z: ImpedanceValue, point: SpectralPoint, geometry: &Geometry) -> Result<DispersionEval> {
    if point.xi == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    let q = point.q();
    if q == 0.0 {
        return Err(Error::ZeroWavenumber);
    }
    let cq = CONSTANTS.c * q;
    let eta = z.value() * point.xi / cq;
    let kappa = z.value() * cq / point.xi;
    if eta == 1.0 {
        return Err(Error::DegenerateFactorization { which: "eta" });
    }
    if kappa == 1.0 {
        return Err(Error::DegenerateFactorization { which: "kappa" });
    }
    let y = point.y(geometry);
    let (delta_par, delta_par_inf) = determinant(eta, y);
    let (delta_perp, delta_perp_inf) = determinant(kappa, y);
    let renormalized_par = delta_par / delta_par_inf;
    let renormalized_perp = delta_perp / delta_perp_inf;

    let r = refl_impedance(z, point)?;
    let e = (-y).exp();
    let identity_residual = (renormalized_par - (1.0 - r.r_par_sq * e))
        .abs()
        .max((renormalized_perp - (1.0 - r.r_perp_sq * e)).abs());
    Ok(DispersionEval {
        delta_par,
        delta_perp,
        delta_par_inf,
        delta_perp_inf,
        renormalized_par,
        renormalized_perp,
        identity_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gold() -> MaterialParams {
        MaterialParams::gold()
    }

    #[test]
    fn ideal_metal_reflects_fully() {
        let p = SpectralPoint::new(1e14, 3e6).unwrap();
        let r = refl_impedance(ImpedanceValue::new(0.0).unwrap(), p).unwrap();
        assert_eq!(r, ReflectionPair { r_par_sq: 1.0, r_perp_sq: 1.0 });
    }

    #[test]
    fn perpendicular_zero_when_numerator_vanishes() {
        let p = SpectralPoint::new(1e14, 3e6).unwrap();
        let z = p.xi() / (CONSTANTS.c * p.q());
        let r = refl_impedance(ImpedanceValue::new(z).unwrap(), p).unwrap();
        assert!(r.r_perp_sq < 1e-30);
    }

    #[test]
    fn gold_infrared_reference_point() {
        let xi = 1e15;
        let p = SpectralPoint::new(xi, xi / CONSTANTS.c).unwrap();
        let z = ImpedanceModel::infrared_for(&gold()).on_imaginary_axis(xi).unwrap();
        let r = refl_impedance(z, p).unwrap();
        let s2 = std::f64::consts::SQRT_2;
        let expect = ((s2 - z.value()) / (s2 + z.value())).powi(2);
        assert!((r.r_par_sq - expect).abs() < 1e-14);
        assert!((r.r_par_sq - 0.8138).abs() < 1e-3, "{}", r.r_par_sq);
    }

    #[test]
    fn rejects_zero_frequency() {
        let p = SpectralPoint::new(0.0, 1e6).unwrap();
        assert_eq!(refl_impedance(ImpedanceValue::new(0.01).unwrap(), p), Err(Error::ZeroFrequency));
        let drude = DielectricModel::drude(1.37e16, 5.3e13).unwrap();
        assert_eq!(refl_lifshitz(drude, p), Err(Error::ZeroFrequency));
    }

    #[test]
    fn vacuum_does_not_reflect() {
        let p = SpectralPoint::new(1e14, 1e6).unwrap();
        let r = refl_lifshitz(DielectricModel::Plasma { omega_p: 0.0 }, p).unwrap();
        assert_eq!(r, ReflectionPair { r_par_sq: 0.0, r_perp_sq: 0.0 });
    }

    #[test]
    fn plasma_at_zero_frequency() {
        let k = 2e6;
        let wp = 1.37e16;
        let r = refl_lifshitz(DielectricModel::plasma(wp).unwrap(), SpectralPoint::new(0.0, k).unwrap()).unwrap();
        let k0 = (k * k + (wp / CONSTANTS.c).powi(2)).sqrt();
        assert!((r.r_perp_sq - ((k - k0) / (k + k0)).powi(2)).abs() < 1e-15);
        assert_eq!(r.r_par_sq, 1.0);
    }

    #[test]
    fn drude_limit_along_vanishing_frequency() {
        let drude = DielectricModel::drude(1.37e16, 5.3e13).unwrap();
        let plasma = DielectricModel::plasma(1.37e16).unwrap();
        let k = 5e6;
        let xi = 1e-3;
        let rd = refl_lifshitz(drude, SpectralPoint::new(xi, k).unwrap()).unwrap();
        let rp = refl_lifshitz(plasma, SpectralPoint::new(xi, k).unwrap()).unwrap();
        assert!(rd.r_perp_sq < 1e-20);
        assert!((rd.r_par_sq - 1.0).abs() < 1e-12);
        assert!(rp.r_perp_sq > 0.5);
    }

    #[test]
    fn zero_frequency_table() {
        let k = 1e6;
        let m = gold();
        let one = ReflectionPair { r_par_sq: 1.0, r_perp_sq: 1.0 };
        assert_eq!(zero_freq_coefficients(Formulation::ImpedanceNormal, k, &m).unwrap(), one);
        assert_eq!(zero_freq_coefficients(Formulation::ImpedanceAnomalous, k, &m).unwrap(), one);
        assert_eq!(
            zero_freq_coefficients(Formulation::LifshitzDrude, k, &m).unwrap(),
            ReflectionPair { r_par_sq: 1.0, r_perp_sq: 0.0 }
        );
        let at_wp = zero_freq_coefficients(Formulation::ImpedanceInfrared, m.plasma_frequency() / CONSTANTS.c, &m).unwrap();
        assert_eq!(at_wp.r_perp_sq, 0.0);
        assert!(zero_freq_coefficients(Formulation::LifshitzPlasma, k, &m).unwrap().r_perp_sq > 0.0);
        assert!(zero_freq_coefficients(Formulation::ImpedanceNormal, 0.0, &m).is_err());
    }

    #[test]
    fn infrared_zero_frequency_tends_to_ideal() {
        let huge = MaterialParams::new(1e30, 1e6).unwrap();
        let r = zero_freq_coefficients(Formulation::ImpedanceInfrared, 1e6, &huge).unwrap();
        assert!((r.r_perp_sq - 1.0).abs() < 1e-12);
    }

    #[test]
    fn x_factor_limits_at_zero_frequency() {
        let g = Geometry::plates(1e-6).unwrap();
        let m = gold();
        let normal = ImpedanceModel::normal_skin(4e17).unwrap();
        assert_eq!(x_factors(normal, &g, 0.0, 2.0).unwrap(), XFactors { par: 0.0, perp: 0.0 });
        assert_eq!(x_factors(ImpedanceModel::anomalous_for(&m), &g, 0.0, 2.0).unwrap(), XFactors { par: 0.0, perp: 0.0 });
        assert_eq!(x_factors(ImpedanceModel::IdealMetal, &g, 0.7, 2.0).unwrap(), XFactors { par: 0.0, perp: 0.0 });

        let y = 3.0;
        let x = x_factors(ImpedanceModel::infrared_for(&m), &g, 0.0, y).unwrap();
        let ck = y * CONSTANTS.c / (2.0 * g.separation());
        let wp = m.plasma_frequency();
        let expect = ((wp - ck) / (wp + ck)).powi(2);
        assert!((1.0 - x.perp - expect).abs() < 1e-14);
        assert_eq!(x.par, 0.0);
        assert_eq!(x_factors(normal, &g, 0.0, 0.0), Err(Error::ZeroWavenumber));
    }

    #[test]
    fn lifshitz_zero_frequency_matches_table() {
        let m = gold();
        let g = Geometry::plates(1e-6).unwrap();
        let y = 1.5;
        let k = y / (2.0 * g.separation());
        for (model, f) in [
            (Model::Lifshitz(DielectricModel::plasma(m.plasma_frequency()).unwrap()), Formulation::LifshitzPlasma),
            (Model::Lifshitz(DielectricModel::drude(m.plasma_frequency(), 5.3e13).unwrap()), Formulation::LifshitzDrude),
            (Model::Impedance(ImpedanceModel::infrared_for(&m)), Formulation::ImpedanceInfrared),
        ] {
            let x = model.x_factors(&g, 0.0, y).unwrap().reflection();
            let t = zero_freq_coefficients(f, k, &m).unwrap();
            assert!((x.r_par_sq - t.r_par_sq).abs() < 1e-12, "{f}");
            assert!((x.r_perp_sq - t.r_perp_sq).abs() < 1e-12, "{f}");
        }
    }

    #[test]
    fn dispersion_for_ideal_metal() {
        let g = Geometry::plates(1e-6).unwrap();
        let p = SpectralPoint::from_dimensionless(&g, 0.5, 1.2).unwrap();
        let d = dispersion_functions(ImpedanceValue::new(0.0).unwrap(), p, &g).unwrap();
        let expect = -(-1.2f64).exp_m1();
        assert!((d.renormalized_par - expect).abs() < 1e-15);
        assert!((d.renormalized_perp - expect).abs() < 1e-15);
    }

    #[test]
    fn dispersion_far_apart_renormalizes_to_one() {
        let g = Geometry::plates(1e-3).unwrap();
        let p = SpectralPoint::from_dimensionless(&g, 400.0, 900.0).unwrap();
        let d = dispersion_functions(ImpedanceValue::new(0.02).unwrap(), p, &g).unwrap();
        assert!((d.renormalized_par - 1.0).abs() < 1e-15);
        assert!((d.renormalized_perp - 1.0).abs() < 1e-15);
        assert!(d.delta_par.is_finite());
    }

    #[test]
    fn dispersion_rejects_degenerate_factor() {
        let g = Geometry::plates(1e-6).unwrap();
        let p = SpectralPoint::new(1e14, 0.0).unwrap();
        // q = ξ/c so κ = Z; Z = 1 makes κ exactly 1.
        let e = dispersion_functions(ImpedanceValue::new(1.0).unwrap(), p, &g).unwrap_err();
        assert!(matches!(e, Error::DegenerateFactorization { .. }));
    }

    fn impedance_models() -> impl Strategy<Value = Model> {
        prop_oneof![
            Just(Model::Impedance(ImpedanceModel::IdealMetal)),
            (15.0f64..19.0).prop_map(|e| Model::Impedance(ImpedanceModel::NormalSkin { sigma: 10f64.powf(e) })),
            (1e-4f64..1e-2).prop_map(|c_a| Model::Impedance(ImpedanceModel::AnomalousSkin { c_a })),
            (14.5f64..17.0).prop_map(|e| Model::Impedance(ImpedanceModel::InfraredOptics { omega_p: 10f64.powf(e) })),
        ]
    }

    fn all_models() -> impl Strategy<Value = Model> {
        prop_oneof![
            impedance_models(),
            (14.5f64..17.0).prop_map(|e| Model::Lifshitz(DielectricModel::Plasma { omega_p: 10f64.powf(e) })),
            ((14.5f64..17.0), (11.0f64..15.0)).prop_map(|(e, g)| Model::Lifshitz(DielectricModel::Drude {
                omega_p: 10f64.powf(e),
                gamma: 10f64.powf(g)
            })),
        ]
    }

    proptest! {
        #[test]
        fn x_factors_match_direct_reflection(
            model in all_models(),
            log_a in -7.0f64..-4.0,
            zeta in 1e-3f64..30.0,
            extra in 0.0f64..30.0,
        ) {
            let g = Geometry::plates(10f64.powf(log_a)).unwrap();
            let y = zeta + extra;
            let x = model.x_factors(&g, zeta, y).unwrap();
            let p = SpectralPoint::from_dimensionless(&g, zeta, y).unwrap();
            let r = match model {
                Model::Impedance(m) => refl_impedance(m.at_dimensionless(&g, zeta).unwrap(), p).unwrap(),
                Model::Lifshitz(d) => refl_lifshitz(d, p).unwrap(),
            };
            prop_assert!((r.r_par_sq + x.par - 1.0).abs() < 1e-12);
            prop_assert!((r.r_perp_sq + x.perp - 1.0).abs() < 1e-12);
            for v in [r.r_par_sq, r.r_perp_sq, x.par, x.perp] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }

        #[test]
        fn renormalized_determinants_match_reflection(
            model in impedance_models(),
            log_a in -7.0f64..-4.0,
            y in 0.05f64..50.0,
            frac in 1e-3f64..1.0,
        ) {
            let g = Geometry::plates(10f64.powf(log_a)).unwrap();
            let Model::Impedance(m) = model else { unreachable!() };
            let zeta = frac * y;
            let z = m.at_dimensionless(&g, zeta).unwrap();
            let p = SpectralPoint::from_dimensionless(&g, zeta, y).unwrap();
            let d = dispersion_functions(z, p, &g).unwrap();
            let r = refl_impedance(z, p).unwrap();
            let e = (-y).exp();
            prop_assert!(((d.renormalized_par - (1.0 - r.r_par_sq * e)) / d.renormalized_par).abs() < 1e-12);
            prop_assert!(((d.renormalized_perp - (1.0 - r.r_perp_sq * e)) / d.renormalized_perp).abs() < 1e-12);
        }

        #[test]
        fn impedance_reflection_is_continuous_at_origin(model in impedance_models(), y in 0.1f64..20.0) {
            let g = Geometry::plates(1e-6).unwrap();
            let at_zero = model.x_factors(&g, 0.0, y).unwrap();
            // The skin-effect limits are approached like ζ^{1/3}, so probe far down.
            let near = model.x_factors(&g, 1e-36 * y, y).unwrap();
            prop_assert!((at_zero.par - near.par).abs() < 1e-3);
            prop_assert!((at_zero.perp - near.perp).abs() < 1e-3);
        }
    }
}
