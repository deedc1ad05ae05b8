//! Physical constants (CODATA 2018 exact/recommended values) and pre-combined scale factors.
//!
//! The combined factors keep every intermediate inside the `f32` normal range: products such as
//! `m* · ΔW` in SI units are around 1e-54 and would underflow single precision.

/// Elementary charge, C.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Free electron mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

/// GaAs conduction-band effective mass relative to the free electron mass.
pub const GAAS_MASS_RATIO: f64 = 0.067;
/// GaAs 2DEG Fermi energy, eV.
pub const GAAS_FERMI_ENERGY_EV: f64 = 0.014;
/// GaAs 2DEG mobility, m²/(V·s).
pub const GAAS_MOBILITY: f64 = 1.0e2;
/// Mean AlGaAs barrier height, eV.
pub const ALGAAS_WORK_FUNCTION_EV: f64 = 5.0;
/// Tip-to-2DEG tunnelling distance, m (57 nm AlGaAs plus vacuum gap, rounded).
pub const DEFAULT_TUNNELLING_DISTANCE: f64 = 6.0e-8;

/// `√(mₑ·e)/ħ` in m⁻¹: turns `√(mass ratio · energy in eV)` into a wavenumber.
pub const WAVENUMBER_SCALE: f64 = 3.622_626_284_404_427e9;
/// `√(e/mₑ)` in m/s: turns `√(energy in eV / mass ratio)` into a velocity.
pub const VELOCITY_SCALE: f64 = 4.193_828_812_400_624e5;
/// `mₑ/e` in s·V/m² units: `τ = μ · (m*/mₑ) · mₑ/e`.
pub const MASS_OVER_CHARGE: f64 = 5.685_630_103_565_723e-12;
/// `e²/(πħ)` in siemens: prefactor of the zero-frequency noise once `e|V|` is in joules.
pub const NOISE_CONDUCTANCE: f64 = 7.748_091_734_611_053e-5;
