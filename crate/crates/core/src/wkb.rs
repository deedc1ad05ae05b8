//! WKB barrier model of the tunnelling tip: `ΔW` and distance `s` to decay constant and transparency.

use crate::constants::WAVENUMBER_SCALE;
use crate::model::AbsorberModel;
use crate::scalar::Real;

/// `κ = (2/ħ)·√(2 m* ΔW)`, in m⁻¹.
pub fn decay_constant<T: Real>(absorber: &AbsorberModel<T>) -> T {
    let two = T::lit(2.0);
    two * (two * absorber.mass_ratio() * absorber.delta_w()).sqrt() * T::lit(WAVENUMBER_SCALE)
}

/// Dimensionless barrier exponent `κ·s`.
pub fn barrier_exponent<T: Real>(absorber: &AbsorberModel<T>) -> T {
    decay_constant(absorber) * absorber.distance()
}

/// Current ratio `J(s)/J₀ = e^(−κs)`.
pub fn tunnelling_ratio<T: Real>(absorber: &AbsorberModel<T>) -> T {
    (-barrier_exponent(absorber)).exp()
}

/// Probability that an electron passes the tip uncaptured, `η = 1 − e^(−κs)`.
pub fn transparency<T: Real>(absorber: &AbsorberModel<T>) -> T {
    T::one() - tunnelling_ratio(absorber)
}

/// All three barrier quantities from one `κ` evaluation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct BarrierSummary<T> {
    pub kappa: T,
    pub kappa_s: T,
    pub ratio: T,
    pub eta: T,
}

pub fn summarize<T: Real>(absorber: &AbsorberModel<T>) -> BarrierSummary<T> {
    let kappa = decay_constant(absorber);
    let kappa_s = kappa * absorber.distance();
    let ratio = (-kappa_s).exp();
    BarrierSummary { kappa, kappa_s, ratio, eta: T::one() - ratio }
}
