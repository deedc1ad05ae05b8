//! Exact transfer-matrix propagation through the beam-splitter chain.
//!
//! Conventions: the particle enters on path b (mode `L`); the absorber sits on path a (mode `U`)
//! between consecutive splitters and after the last one. `S = (B·A)^N` is the chain matrix; since
//! `A` leaves `L` untouched, `S_LL` is also the amplitude `⟨L|B (A B)^(N-1)|L⟩` of a successful
//! interaction-free detection.

use num_traits::Num;
use serde::Serialize;

use crate::error::{invalid, IfmError, Result};
use crate::model::{check_angle, check_unit_interval, InterferometerSpec, Mode, ModeState, TransferMatrix};
use crate::scalar::Real;

/// Outcome probabilities for one particle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PortProbabilities<T> {
    /// Leaves on path a (upper-right port).
    pub p_exit_a: T,
    /// Leaves on path b (lower-right port).
    pub p_exit_b: T,
    pub p_absorbed: T,
}

impl<T: Copy + std::ops::Add<Output = T>> PortProbabilities<T> {
    pub fn total(&self) -> T {
        self.p_exit_a + self.p_exit_b + self.p_absorbed
    }
}

/// `B(θ) = [[cos θ, sin θ], [−sin θ, cos θ]]`: reflection amplitude `cos θ`, transmission `sin θ`.
pub fn beam_splitter_matrix<T: Real>(theta: T) -> Result<TransferMatrix<T>> {
    check_angle(theta)?;
    let (s, c) = theta.sin_cos();
    Ok(TransferMatrix::new([[c, s], [-s, c]]))
}

/// `A(η) = diag(√η, 1)`.
pub fn absorber_matrix<T: Real>(eta: T) -> Result<TransferMatrix<T>> {
    check_unit_interval(eta, "eta")
        .map_err(|_| IfmError::InvalidSpec(format!("eta = {} outside [0, 1]", eta.to_f64().unwrap_or(f64::NAN))))?;
    Ok(TransferMatrix::new([[eta.sqrt(), T::zero()], [T::zero(), T::one()]]))
}

/// One stage `B·A` of a validated spec.
pub(crate) fn stage_matrix<T: Real>(spec: &InterferometerSpec<T>) -> TransferMatrix<T> {
    let b = beam_splitter_matrix(spec.theta()).expect("spec angle validated");
    let a = absorber_matrix(spec.eta()).expect("spec eta validated");
    b * a
}

/// `S = (B·A)^N` by sequential multiplication.
pub fn chain_transfer<T: Real>(spec: &InterferometerSpec<T>) -> TransferMatrix<T> {
    let stage = stage_matrix(spec);
    (1..spec.n_stages()).fold(stage, |acc, _| stage * acc)
}

/// Probability that a particle injected on path b leaves on path b, i.e. `|⟨L|B (A B)^(N-1)|L⟩|²`.
///
/// Evaluated by propagating the two amplitudes rather than forming `S`, so it is an independent
/// route to `chain_transfer(spec).entry(L, L)²`.
pub fn success_probability<T: Real>(spec: &InterferometerSpec<T>) -> T {
    let (s, c) = spec.theta().sin_cos();
    let damp = spec.eta().sqrt();
    let (mut u, mut l) = (s, c);
    for _ in 1..spec.n_stages() {
        u = u * damp;
        (u, l) = (c * u + s * l, c * l - s * u);
    }
    l * l
}

/// Amplitudes after `k` splitters when no object is present: `(sin kθ, cos kθ)`.
pub fn no_object_state<T: Real>(k: u32, theta: T) -> ModeState<T> {
    let angle = T::from(k).expect("u32 fits any float") * theta;
    ModeState::new(angle.sin(), angle.cos())
}

/// Exit and absorption probabilities of the chain with an absorber after every splitter.
///
/// `p_exit_b = S_LL²`, `p_exit_a = η·S_UL²` (the last absorber still acts on path a), and the
/// absorbed share is the remainder.
pub fn port_probabilities<T: Real>(spec: &InterferometerSpec<T>) -> PortProbabilities<T> {
    let s = chain_transfer(spec);
    let s_ul = s.entry(Mode::U, Mode::L);
    let s_ll = s.entry(Mode::L, Mode::L);
    let p_exit_a = spec.eta() * s_ul * s_ul;
    let p_exit_b = s_ll * s_ll;
    let p_absorbed = (T::one() - p_exit_a - p_exit_b).max(T::zero());
    PortProbabilities { p_exit_a, p_exit_b, p_absorbed }
}

fn check_reflectivity<T: Num + Copy + PartialOrd>(r: T) -> Result<()> {
    if !(r >= T::zero() && r <= T::one()) {
        return Err(invalid("reflectivity", "outside [0, 1]"));
    }
    Ok(())
}

/// Elitzur–Vaidman Mach–Zehnder with the object in the transmitted arm, single interrogation.
///
/// Maps the dark-port click (object detected unharmed) to `p_exit_b = R(1−R)`, the bright-port
/// click (inconclusive) to `p_exit_a = R²`, and absorption to `1 − R`. Works for exact rationals.
pub fn ev_single_shot<T: Num + Copy + PartialOrd>(reflectivity: T) -> Result<PortProbabilities<T>> {
    check_reflectivity(reflectivity)?;
    let r = reflectivity;
    Ok(PortProbabilities { p_exit_a: r * r, p_exit_b: r * (T::one() - r), p_absorbed: T::one() - r })
}

/// Detection probability when inconclusive outcomes are retried: `R/(1+R)`.
pub fn ev_repeated<T: Num + Copy + PartialOrd>(reflectivity: T) -> Result<T> {
    check_reflectivity(reflectivity)?;
    Ok(reflectivity / (T::one() + reflectivity))
}
