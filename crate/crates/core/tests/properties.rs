use casimir_core::casimir::{energy_zero_temperature, free_energy};
use casimir_core::impedance::ImpedanceModel;
use casimir_core::physcore::{Geometry, ThermalState, ToleranceConfig};
use casimir_core::reflection::{DielectricModel, Model};
use proptest::prelude::*;

fn correction_factor(model: Model, a: f64) -> f64 {
    let g = Geometry::plates(a).unwrap();
    energy_zero_temperature(&model, &g, &ToleranceConfig::default())
        .unwrap()
        .correction_factor
        .value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// A better conductor screens more: the correction factor grows with ω_p
    /// and stays below the ideal-metal value.
    #[test]
    fn correction_factor_ordered_by_plasma_frequency(
        log_wp in 15.5f64..16.5,
        ratio in 1.1f64..3.0,
        log_a in -7.0f64..-5.0,
    ) {
        let a = 10f64.powf(log_a);
        let lo = 10f64.powf(log_wp);
        let hi = lo * ratio;
        for make in [
            |wp| Model::Impedance(ImpedanceModel::infrared_optics(wp).unwrap()),
            |wp| Model::Lifshitz(DielectricModel::plasma(wp).unwrap()),
        ] {
            let (c_lo, c_hi) = (correction_factor(make(lo), a), correction_factor(make(hi), a));
            prop_assert!(0.0 < c_lo && c_lo < c_hi && c_hi < 1.0, "{c_lo} {c_hi}");
        }
    }

    /// Far below the effective temperature the free energy approaches the
    /// zero-temperature energy like t³, with a negative shift that grows with T.
    #[test]
    fn low_temperature_limit_matches_energy(log_a in -6.7f64..-6.0, t in 20.0f64..60.0) {
        let a = 10f64.powf(log_a);
        let g = Geometry::plates(a).unwrap();
        let model = Model::Impedance(ImpedanceModel::infrared_optics(1.37e16).unwrap());
        let tol = ToleranceConfig::default().for_differences();
        let e = energy_zero_temperature(&model, &g, &tol).unwrap().energy.value;
        let f = free_energy(&model, &g, &ThermalState::new(t).unwrap(), &tol).unwrap().value;
        let f_half = free_energy(&model, &g, &ThermalState::new(0.5 * t).unwrap(), &tol).unwrap().value;
        let reduced = t / ThermalState::effective_temperature(&g);
        prop_assert!(((f - e) / e).abs() < 3.0 * reduced.powi(3), "{f} vs {e}");
        prop_assert!(f < f_half && f_half < e, "{f} {f_half} {e}");
    }
}
