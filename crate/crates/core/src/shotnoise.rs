//! Zero-frequency shot noise of the current leaving the lower-right port.
//!
//! At zero temperature only electrons injected from L inside the bias window `0 < ε < e|V|` and
//! scattered into empty U states contribute, giving `S(0) = (e²/π)|S_LL|²|S_LU|² e|V|` in units
//! with `ħ = 1`. [`NoiseResult::normalized`] is the dimensionless `S̃(0) = πS(0)/(e³|V|)`.

use serde::Serialize;

use crate::analytic::chain_transfer;
use crate::constants::{ELEMENTARY_CHARGE, NOISE_CONDUCTANCE};
use crate::error::{invalid, Result};
use crate::model::{InterferometerSpec, Mode};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseResult<T> {
    pub s_ll_sq: T,
    pub s_lu_sq: T,
    /// `S̃(0) = |S_LL|²|S_LU|²`, always within `[0, 1/4]`.
    pub normalized: T,
    /// Bias `|V|` in volts, when a dimensionful density was requested.
    pub bias: Option<T>,
}

impl<T: Real> NoiseResult<T> {
    /// Attaches a bias so [`Self::spectral_density`] can restore units.
    pub fn with_bias(self, bias_volts: T) -> Result<Self> {
        check_bias(bias_volts)?;
        Ok(Self { bias: Some(bias_volts), ..self })
    }

    /// `S(0)` in A²/Hz, if a bias is attached.
    pub fn spectral_density(&self) -> Option<T> {
        self.bias.map(|v| noise_prefactor(v) * self.normalized)
    }
}

fn check_bias<T: Real>(bias_volts: T) -> Result<()> {
    if !(bias_volts > T::zero() && bias_volts.is_finite()) {
        return Err(invalid("bias", "must be positive and finite"));
    }
    Ok(())
}

/// `e³|V|/(πħ)`, computed as `(e²/πħ)·(e|V|)` to stay in range for `f32`.
fn noise_prefactor<T: Real>(bias_volts: T) -> T {
    T::lit(NOISE_CONDUCTANCE) * (T::lit(ELEMENTARY_CHARGE) * bias_volts)
}

/// `|S_LL|²`, `|S_LU|²` and their product for `S = (BA)^N`.
pub fn normalized_noise<T: Real>(spec: &InterferometerSpec<T>) -> NoiseResult<T> {
    let s = chain_transfer(spec);
    let ll = s.entry(Mode::L, Mode::L);
    let lu = s.entry(Mode::L, Mode::U);
    let s_ll_sq = ll * ll;
    let s_lu_sq = lu * lu;
    NoiseResult { s_ll_sq, s_lu_sq, normalized: s_ll_sq * s_lu_sq, bias: None }
}

/// SI spectral density `S(0) = e³|V| S̃(0)/(πħ)`, A²/Hz.
pub fn dimensionful_noise<T: Real>(spec: &InterferometerSpec<T>, bias_volts: T) -> Result<T> {
    check_bias(bias_volts)?;
    Ok(noise_prefactor(bias_volts) * normalized_noise(spec).normalized)
}

fn heaviside<T: Real>(x: T) -> T {
    if x > T::zero() {
        T::one()
    } else if x < T::zero() {
        T::zero()
    } else {
        T::lit(0.5)
    }
}

/// Trapezoid integral of `f_L(ε)[1 − f_U(ε)]` at `T = 0` over `[−|V|, 2|V|]` (ε in eV).
///
/// `f_L = Θ(e|V| − ε)`, `f_U = Θ(−ε)`. The exact value is `|V|` eV; the quadrature error is at most
/// one grid step.
pub fn energy_window_check<T: Real>(bias_volts: T, grid_points: usize) -> Result<T> {
    if grid_points < 2 {
        return Err(invalid("grid_points", "at least two nodes are required"));
    }
    if !bias_volts.is_finite() {
        return Err(invalid("bias", "must be finite"));
    }
    let window = bias_volts.abs();
    let lo = -window;
    let span = T::lit(3.0) * window;
    let intervals = T::from_count(grid_points - 1);
    let step = span / intervals;
    let integrand = |i: usize| {
        let eps = lo + span * T::from_count(i) / intervals;
        heaviside(window - eps) * (T::one() - heaviside(-eps))
    };
    let interior = (1..grid_points - 1).fold(T::zero(), |acc, i| acc + integrand(i));
    let ends = (integrand(0) + integrand(grid_points - 1)) / T::lit(2.0);
    Ok(step * (interior + ends))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::HBAR;
    use crate::model::make_interferometer;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn absorbing_and_transparent_chains_are_quiet() {
        for n in 1..=50 {
            assert!(normalized_noise(&make_interferometer(n, 0.0).unwrap()).normalized <= 1e-12);
            assert!(normalized_noise(&make_interferometer(n, 1.0).unwrap()).normalized <= 1e-12);
        }
    }

    #[test]
    fn two_stage_half_transparent_by_hand() {
        let r = normalized_noise(&make_interferometer(2, 0.5).unwrap());
        // hand product of (BA)²: S_LL = 0.14645, S_LU = −0.60355
        assert!((r.s_ll_sq - 0.14645f64.powi(2)).abs() < 1e-5);
        assert!((r.s_lu_sq - 0.60355f64.powi(2)).abs() < 1e-5);
        assert!((r.normalized - 0.0078125).abs() < 1e-6);
    }

    #[test]
    fn dimensionful_examples() {
        let spec = make_interferometer(2, 0.5).unwrap();
        let s = dimensionful_noise(&spec, 1e-4).unwrap();
        let e = ELEMENTARY_CHARGE;
        let direct = e * e * e * 1e-4 / (PI * HBAR) * 0.0078125;
        assert!(((s - direct) / direct).abs() < 1e-6);
        assert!(((s - 9.7e-30) / 9.7e-30).abs() < 1e-2);
        assert_eq!(dimensionful_noise(&make_interferometer(4, 0.0).unwrap(), 3.0).unwrap(), 0.0);
        assert_eq!(dimensionful_noise(&spec, 2e-4).unwrap(), 2.0 * s);
        assert!(dimensionful_noise(&spec, 0.0).is_err());
        assert!(dimensionful_noise(&spec, -1e-4).is_err());
        let attached = normalized_noise(&spec).with_bias(1e-4).unwrap();
        assert_eq!(attached.spectral_density(), Some(s));
        assert_eq!(normalized_noise(&spec).spectral_density(), None);
    }

    #[test]
    fn single_precision_density_stays_in_range() {
        let spec = make_interferometer(2, 0.5f32).unwrap();
        let s = f64::from(dimensionful_noise(&spec, 1e-4f32).unwrap());
        assert!(((s - 9.70e-30) / 9.70e-30).abs() < 1e-2, "{s}");
    }

    #[test]
    fn energy_window() {
        let w = energy_window_check(1e-4f64, 100_000).unwrap();
        assert!((w - 1e-4).abs() < 1e-8, "{w}");
        assert_eq!(energy_window_check(0.0, 1000).unwrap(), 0.0);
        let w2 = energy_window_check(2e-4f64, 100_000).unwrap();
        assert!((w2 - 2.0 * w).abs() < 1e-12);
        // nodes on both jumps: exact
        assert!((energy_window_check(1.0f64, 3001).unwrap() - 1.0).abs() < 1e-12);
        assert!(energy_window_check(1e-4, 1).is_err());
    }

    proptest! {
        #[test]
        fn normalized_noise_bounded(n in 1u32..=60, theta in 0.0..=FRAC_PI_2, eta in 0.0..=1.0f64) {
            let r = normalized_noise(&InterferometerSpec::with_theta(n, theta, eta).unwrap());
            prop_assert!(r.normalized >= 0.0 && r.normalized <= 0.25);
            prop_assert!(r.s_ll_sq + r.s_lu_sq <= 1.0 + 1e-12);
        }

        #[test]
        fn unitary_chain_is_partition_noise(n in 1u32..=60, theta in 0.0..=FRAC_PI_2) {
            let r = normalized_noise(&InterferometerSpec::with_theta(n, theta, 1.0).unwrap());
            prop_assert!((r.normalized - r.s_ll_sq * (1.0 - r.s_ll_sq)).abs() <= 1e-12);
        }

        #[test]
        fn density_linear_in_bias(v in 1e-7..1.0f64, k in 1.0..100.0f64) {
            let spec = make_interferometer(3, 0.4).unwrap();
            let a = dimensionful_noise(&spec, v).unwrap();
            let b = dimensionful_noise(&spec, k * v).unwrap();
            prop_assert!((b - k * a).abs() <= 1e-12 * b.abs());
        }
    }
}
