//! Transport scales of the 2DEG derived from bulk parameters.

use crate::constants::{ELEMENTARY_CHARGE, MASS_OVER_CHARGE, VELOCITY_SCALE, WAVENUMBER_SCALE};
use crate::error::{invalid, Result};
use crate::model::MaterialParams;
use crate::scalar::Real;

/// Momentum relaxation time `τ = μ m*/e`, in seconds.
pub fn relaxation_time<T: Real>(material: &MaterialParams<T>) -> T {
    material.mobility() * material.mass_ratio() * T::lit(MASS_OVER_CHARGE)
}

/// `v_F = √(2E_F/m*)`, in m/s.
pub fn fermi_velocity<T: Real>(material: &MaterialParams<T>) -> T {
    (T::lit(2.0) * material.fermi_energy() / material.mass_ratio()).sqrt() * T::lit(VELOCITY_SCALE)
}

/// `l = v_F τ`, in metres.
pub fn mean_free_path<T: Real>(material: &MaterialParams<T>) -> T {
    fermi_velocity(material) * relaxation_time(material)
}

/// `k_F = √(2m* E_F)/ħ`, in m⁻¹.
pub fn fermi_wavenumber<T: Real>(material: &MaterialParams<T>) -> T {
    (T::lit(2.0) * material.mass_ratio() * material.fermi_energy()).sqrt() * T::lit(WAVENUMBER_SCALE)
}

/// Average current of a single-electron source emitting once per `emission_period` seconds.
pub fn emitter_current<T: Real>(emission_period: T) -> Result<T> {
    if !(emission_period > T::zero() && emission_period.is_finite()) {
        return Err(invalid("emission_period", "must be positive and finite"));
    }
    Ok(T::lit(ELEMENTARY_CHARGE) / emission_period)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{ELECTRON_MASS, HBAR};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn gaas() -> MaterialParams<f64> {
        MaterialParams::gaas()
    }

    fn with(m_ratio: f64, ef: f64, mu: f64) -> MaterialParams<f64> {
        MaterialParams::new(m_ratio * ELECTRON_MASS, ef, mu, 5.0).unwrap()
    }

    #[test]
    fn gaas_reference_scales() {
        let g = gaas();
        assert!(rel(relaxation_time(&g), 3.81e-11) < 5e-3);
        assert!(rel(fermi_velocity(&g), 2.71e5) < 5e-3);
        assert!(rel(mean_free_path(&g), 1.03e-5) < 1e-2);
        assert!(rel(fermi_wavenumber(&g), 1.57e8) < 1e-2);
        let si = (2.0 * 0.067 * ELECTRON_MASS * 0.014 * ELEMENTARY_CHARGE).sqrt() / HBAR;
        assert!(rel(fermi_wavenumber(&g), si) < 1e-14);
    }

    #[test]
    fn scaling_laws() {
        let base = with(0.067, 0.014, 100.0);
        assert!(rel(relaxation_time(&with(0.067, 0.014, 200.0)), 2.0 * relaxation_time(&base)) < 1e-12);
        assert!(rel(relaxation_time(&with(1.0, 0.014, 100.0)), 5.69e-10) < 1e-3);
        assert!(rel(fermi_velocity(&with(0.067, 0.056, 100.0)), 2.0 * fermi_velocity(&base)) < 1e-12);
        assert!(rel(mean_free_path(&with(0.067, 0.014, 200.0)), 2.0 * mean_free_path(&base)) < 1e-12);
        assert!(rel(fermi_wavenumber(&with(0.067, 0.056, 100.0)), 2.0 * fermi_wavenumber(&base)) < 1e-12);
        assert!(rel(fermi_wavenumber(&with(0.268, 0.014, 100.0)), 2.0 * fermi_wavenumber(&base)) < 1e-12);
        assert_eq!(mean_free_path(&base), fermi_velocity(&base) * relaxation_time(&base));
    }

    #[test]
    fn empty_band() {
        let m = with(0.067, 0.0, 100.0);
        assert_eq!(fermi_velocity(&m), 0.0);
        assert_eq!(mean_free_path(&m), 0.0);
    }

    #[test]
    fn emitter() {
        let i = emitter_current(1e-9).unwrap();
        assert!(rel(i, ELEMENTARY_CHARGE / 1e-9) < 1e-15);
        assert_eq!(format!("{i:.2e}"), "1.60e-10");
        assert!(rel(emitter_current(2e-9).unwrap(), 8.01e-11) < 1e-3);
        assert!(emitter_current(0.0).is_err());
        assert!(emitter_current(-1e-9).is_err());
        assert!(rel(f64::from(emitter_current(1e-9f32).unwrap()), 1.602176634e-10) < 1e-6);
    }

    #[test]
    fn single_precision_gaas() {
        let g = MaterialParams::<f32>::gaas();
        assert!(rel(f64::from(mean_free_path(&g)), mean_free_path(&gaas())) < 1e-5);
        assert!(rel(f64::from(fermi_wavenumber(&g)), fermi_wavenumber(&gaas())) < 1e-5);
    }
}
