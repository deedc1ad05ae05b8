//! Domain types shared by the analytic, WKB, noise and Monte Carlo modules.
//!
//! Everything here is an immutable value once constructed. Constructors validate their inputs, so
//! downstream operations never re-check ranges.

use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::constants::{
    ALGAAS_WORK_FUNCTION_EV, DEFAULT_TUNNELLING_DISTANCE, ELECTRON_MASS, GAAS_FERMI_ENERGY_EV,
    GAAS_MASS_RATIO, GAAS_MOBILITY,
};
use crate::error::{invalid, IfmError, Result};
use crate::scalar::Real;

fn as_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Transverse channel of the interferometer: `U` is path a (upper, where the absorber sits), `L`
/// is path b (lower, the injection and success port).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    U,
    L,
}

impl Mode {
    const fn index(self) -> usize {
        match self {
            Mode::U => 0,
            Mode::L => 1,
        }
    }
}

/// A chain of `n_stages` beam splitters at angle `theta`, with an absorber of transparency `eta`
/// on path a.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterferometerSpec<T> {
    n_stages: u32,
    theta: T,
    eta: T,
}

impl<T: Real> InterferometerSpec<T> {
    /// Builds the Zeno-tuned chain with `θ = π/(2N)`.
    pub fn new(n_stages: u32, eta: T) -> Result<Self> {
        Self::check_stages(n_stages)?;
        let theta = T::FRAC_PI_2() / T::from(n_stages).expect("u32 fits any float");
        Self::with_theta(n_stages, theta, eta)
    }

    /// Builds a chain with an explicit splitter angle.
    pub fn with_theta(n_stages: u32, theta: T, eta: T) -> Result<Self> {
        Self::check_stages(n_stages)?;
        check_unit_interval(eta, "eta")
            .map_err(|_| IfmError::InvalidSpec(format!("eta = {} outside [0, 1]", as_f64(eta))))?;
        check_angle(theta)?;
        Ok(Self { n_stages, theta, eta })
    }

    fn check_stages(n_stages: u32) -> Result<()> {
        if n_stages == 0 {
            return Err(IfmError::InvalidSpec("at least one beam splitter is required".into()));
        }
        Ok(())
    }

    pub fn n_stages(&self) -> u32 {
        self.n_stages
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn eta(&self) -> T {
        self.eta
    }
}

/// Shorthand for [`InterferometerSpec::new`].
pub fn make_interferometer<T: Real>(n_stages: u32, eta: T) -> Result<InterferometerSpec<T>> {
    InterferometerSpec::new(n_stages, eta)
}

pub(crate) fn check_angle<T: Real>(theta: T) -> Result<()> {
    if !(theta >= T::zero() && theta <= T::FRAC_PI_2()) {
        return Err(IfmError::InvalidAngle(as_f64(theta)));
    }
    Ok(())
}

pub(crate) fn check_unit_interval<T: Real>(x: T, name: &'static str) -> Result<()> {
    if !(x >= T::zero() && x <= T::one()) {
        return Err(invalid(name, format!("{} outside [0, 1]", as_f64(x))));
    }
    Ok(())
}

/// Real 2×2 matrix on the (U, L) mode basis. Rows index the outgoing mode, columns the incoming one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransferMatrix<T> {
    entries: [[T; 2]; 2],
}

impl<T: Real> TransferMatrix<T> {
    pub fn new(entries: [[T; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn identity() -> Self {
        Self::new([[T::one(), T::zero()], [T::zero(), T::one()]])
    }

    pub fn entries(&self) -> [[T; 2]; 2] {
        self.entries
    }

    /// Amplitude from `input` into `output`.
    pub fn entry(&self, output: Mode, input: Mode) -> T {
        self.entries[output.index()][input.index()]
    }

    pub fn transpose(&self) -> Self {
        let [[a, b], [c, d]] = self.entries;
        Self::new([[a, c], [b, d]])
    }

    pub fn determinant(&self) -> T {
        let [[a, b], [c, d]] = self.entries;
        a * d - b * c
    }

    /// Singular values, largest first.
    pub fn singular_values(&self) -> [T; 2] {
        let [[a, b], [c, d]] = self.entries;
        let frob = a * a + b * b + c * c + d * d;
        let det = self.determinant();
        let two = T::lit(2.0);
        let disc = (frob * frob - T::lit(4.0) * det * det).max(T::zero()).sqrt();
        let hi = ((frob + disc) / two).sqrt();
        let lo = ((frob - disc) / two).max(T::zero()).sqrt();
        [hi, lo]
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).abs());
            }
        }
        worst
    }

    pub fn apply(&self, state: ModeState<T>) -> ModeState<T> {
        let [[a, b], [c, d]] = self.entries;
        ModeState::new(a * state.amp_u + b * state.amp_l, c * state.amp_u + d * state.amp_l)
    }
}

impl<T: Real> Mul for TransferMatrix<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = [[T::zero(); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.entries[i][0] * rhs.entries[0][j] + self.entries[i][1] * rhs.entries[1][j];
            }
        }
        Self::new(out)
    }
}

/// Single-particle amplitudes on paths a (`amp_u`) and b (`amp_l`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeState<T> {
    pub amp_u: T,
    pub amp_l: T,
}

impl<T: Real> ModeState<T> {
    pub fn new(amp_u: T, amp_l: T) -> Self {
        Self { amp_u, amp_l }
    }

    /// Particle injected on path b.
    pub fn lower() -> Self {
        Self::new(T::zero(), T::one())
    }

    pub fn norm_sqr(&self) -> T {
        self.amp_u * self.amp_u + self.amp_l * self.amp_l
    }
}

/// Tunnelling-tip absorber: effective barrier `ΔW = ⟨Φ⟩ − e|V|/2` (eV) over distance `s` (m).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AbsorberModel<T> {
    delta_w: T,
    distance: T,
    m_eff: T,
}

impl<T: Real> AbsorberModel<T> {
    pub fn new(delta_w_ev: T, distance_m: T, m_eff_kg: T) -> Result<Self> {
        if delta_w_ev.is_nan() || delta_w_ev < T::zero() {
            return Err(IfmError::BarrierViolation(as_f64(delta_w_ev)));
        }
        if !delta_w_ev.is_finite() {
            return Err(invalid("delta_w", "must be finite"));
        }
        check_positive(distance_m, "distance")?;
        check_positive(m_eff_kg, "m_eff")?;
        Ok(Self { delta_w: delta_w_ev, distance: distance_m, m_eff: m_eff_kg })
    }

    /// GaAs effective mass.
    pub fn gaas(delta_w_ev: T, distance_m: T) -> Result<Self> {
        Self::new(delta_w_ev, distance_m, T::lit(GAAS_MASS_RATIO * ELECTRON_MASS))
    }

    /// GaAs absorber at the default 60 nm tunnelling distance.
    pub fn gaas_default_distance(delta_w_ev: T) -> Result<Self> {
        Self::gaas(delta_w_ev, T::lit(DEFAULT_TUNNELLING_DISTANCE))
    }

    /// Converts a mean barrier `⟨Φ⟩` (eV) and tip bias `V` (volts) into `ΔW = ⟨Φ⟩ − |V|/2` eV.
    pub fn from_bias(work_function_ev: T, bias_volts: T, distance_m: T, m_eff_kg: T) -> Result<Self> {
        let delta_w = effective_barrier(work_function_ev, bias_volts);
        Self::new(delta_w, distance_m, m_eff_kg)
    }

    pub fn delta_w(&self) -> T {
        self.delta_w
    }

    pub fn distance(&self) -> T {
        self.distance
    }

    pub fn m_eff(&self) -> T {
        self.m_eff
    }

    /// Effective mass in units of the free electron mass.
    pub fn mass_ratio(&self) -> T {
        self.m_eff / T::lit(ELECTRON_MASS)
    }
}

/// `ΔW = ⟨Φ⟩ − e|V|/2`, in eV.
pub fn effective_barrier<T: Real>(work_function_ev: T, bias_volts: T) -> T {
    work_function_ev - bias_volts.abs() / T::lit(2.0)
}

fn check_positive<T: Real>(x: T, name: &'static str) -> Result<()> {
    if !(x > T::zero() && x.is_finite()) {
        return Err(invalid(name, format!("{} must be positive and finite", as_f64(x))));
    }
    Ok(())
}

/// Bulk 2DEG parameters. `fermi_energy` may be zero (empty band); the rest must be positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaterialParams<T> {
    m_eff: T,
    fermi_energy: T,
    mobility: T,
    work_function_mean: T,
}

impl<T: Real> MaterialParams<T> {
    /// `m_eff` in kg, energies in eV, mobility in m²/(V·s).
    pub fn new(m_eff_kg: T, fermi_energy_ev: T, mobility: T, work_function_mean_ev: T) -> Result<Self> {
        check_positive(m_eff_kg, "m_eff")?;
        if !(fermi_energy_ev >= T::zero() && fermi_energy_ev.is_finite()) {
            return Err(invalid("fermi_energy", "must be non-negative and finite"));
        }
        check_positive(mobility, "mobility")?;
        check_positive(work_function_mean_ev, "work_function_mean")?;
        Ok(Self { m_eff: m_eff_kg, fermi_energy: fermi_energy_ev, mobility, work_function_mean: work_function_mean_ev })
    }

    /// GaAs/AlGaAs heterojunction: `m* = 0.067 mₑ`, `E_F = 0.014 eV`, `μ = 100 m²/(V·s)`, `⟨Φ⟩ = 5 eV`.
    pub fn gaas() -> Self {
        Self {
            m_eff: T::lit(GAAS_MASS_RATIO * ELECTRON_MASS),
            fermi_energy: T::lit(GAAS_FERMI_ENERGY_EV),
            mobility: T::lit(GAAS_MOBILITY),
            work_function_mean: T::lit(ALGAAS_WORK_FUNCTION_EV),
        }
    }

    pub fn m_eff(&self) -> T {
        self.m_eff
    }

    pub fn mass_ratio(&self) -> T {
        self.m_eff / T::lit(ELECTRON_MASS)
    }

    pub fn fermi_energy(&self) -> T {
        self.fermi_energy
    }

    pub fn mobility(&self) -> T {
        self.mobility
    }

    pub fn work_function_mean(&self) -> T {
        self.work_function_mean
    }
}
