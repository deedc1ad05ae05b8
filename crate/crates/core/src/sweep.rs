//! Parameter grids for the noise and success-probability surfaces, and inverse design queries.

use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::success_probability;
use crate::error::{invalid, IfmError, Result};
use crate::model::{make_interferometer, AbsorberModel};
use crate::shotnoise::normalized_noise;
use crate::wkb::transparency;

/// Default number of points on the continuous axis of each surface.
pub const DEFAULT_STEPS: usize = 101;
/// Default largest stage count of each surface.
pub const DEFAULT_N_MAX: u32 = 50;
/// Default upper edge of the ΔW axis, eV.
pub const DEFAULT_DW_MAX: f64 = 3.0e-4;

/// Slack used when comparing computed probabilities against a target.
const PROBABILITY_SLACK: f64 = 1e-12;
const MONOTONE_GRID: usize = 101;

/// How a grid was produced. Contains no wall-clock data, so identical inputs give identical grids.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceMeta {
    pub quantity: String,
    pub theta_rule: String,
    pub distance_m: Option<f64>,
    pub tool_version: String,
}

/// Values over the product of two strictly increasing axes, stored row-major (axis1 outer).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceGrid {
    pub axis1_name: String,
    pub axis2_name: String,
    pub axis1_values: Vec<f64>,
    pub axis2_values: Vec<f64>,
    pub values: Vec<f64>,
    pub metadata: SurfaceMeta,
}

impl SurfaceGrid {
    pub fn shape(&self) -> (usize, usize) {
        (self.axis1_values.len(), self.axis2_values.len())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.axis2_values.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let w = self.axis2_values.len();
        &self.values[i * w..(i + 1) * w]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        (0..self.axis1_values.len()).map(move |i| self.get(i, j))
    }

    /// `(axis1, axis2, value)` triples in storage order.
    pub fn triples(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.axis1_values
            .iter()
            .flat_map(move |&a| self.axis2_values.iter().map(move |&b| (a, b)))
            .zip(&self.values)
            .map(|((a, b), &v)| (a, b, v))
    }
}

/// `steps` uniform points on `[0, hi]`, both ends included.
fn uniform_axis(hi: f64, steps: usize) -> Vec<f64> {
    let last = (steps - 1) as f64;
    (0..steps).map(|j| if j + 1 == steps { hi } else { hi * j as f64 / last }).collect()
}

fn evaluate(
    axis1: &[f64],
    axis2: &[f64],
    cell: impl Fn(usize, usize) -> Result<f64> + Sync,
) -> Result<Vec<f64>> {
    let rows: Vec<Vec<f64>> = (0..axis1.len())
        .into_par_iter()
        .map(|i| (0..axis2.len()).map(|j| cell(i, j)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(rows.concat())
}

fn check_grid(n_max: u32, steps: usize) -> Result<()> {
    if n_max == 0 {
        return Err(invalid("n_max", "must be at least 1"));
    }
    if steps < 2 {
        return Err(invalid("steps", "at least two points are required"));
    }
    Ok(())
}

fn meta(quantity: &str, distance_m: Option<f64>) -> SurfaceMeta {
    SurfaceMeta {
        quantity: quantity.to_owned(),
        theta_rule: "pi/(2N)".to_owned(),
        distance_m,
        tool_version: env!("CARGO_PKG_VERSION").to_owned(),
    }
}

/// `S̃(0)` over `N ∈ 1..=n_max` and `η` uniform on `[0, 1]`.
pub fn noise_surface(n_max: u32, eta_steps: usize) -> Result<SurfaceGrid> {
    check_grid(n_max, eta_steps)?;
    let ns: Vec<f64> = (1..=n_max).map(f64::from).collect();
    let etas = uniform_axis(1.0, eta_steps);
    let values = evaluate(&ns, &etas, |i, j| {
        Ok(normalized_noise(&make_interferometer(i as u32 + 1, etas[j])?).normalized)
    })?;
    Ok(SurfaceGrid {
        axis1_name: "N".into(),
        axis2_name: "eta".into(),
        axis1_values: ns,
        axis2_values: etas,
        values,
        metadata: meta("normalized_noise", None),
    })
}

/// `P(N, ΔW)` for a GaAs tip at distance `s`.
pub fn probability_at(n_stages: u32, delta_w_ev: f64, distance_m: f64) -> Result<f64> {
    let eta = transparency(&AbsorberModel::gaas(delta_w_ev, distance_m)?);
    Ok(success_probability(&make_interferometer(n_stages, eta)?))
}

/// `P(N, ΔW)` over `N ∈ 1..=n_max` and `ΔW` uniform on `[0, dw_max]` eV.
pub fn probability_surface(n_max: u32, dw_max: f64, dw_steps: usize, distance_m: f64) -> Result<SurfaceGrid> {
    check_grid(n_max, dw_steps)?;
    if !(dw_max > 0.0 && dw_max.is_finite()) {
        return Err(invalid("dw_max", "must be positive and finite"));
    }
    AbsorberModel::gaas(0.0, distance_m)?;
    let ns: Vec<f64> = (1..=n_max).map(f64::from).collect();
    let dws = uniform_axis(dw_max, dw_steps);
    let values = evaluate(&ns, &dws, |i, j| probability_at(i as u32 + 1, dws[j], distance_m))?;
    Ok(SurfaceGrid {
        axis1_name: "N".into(),
        axis2_name: "delta_w_ev".into(),
        axis1_values: ns,
        axis2_values: dws,
        values,
        metadata: meta("success_probability", Some(distance_m)),
    })
}

fn check_target(p_target: f64) -> Result<()> {
    if !(p_target > 0.0 && p_target < 1.0) {
        return Err(invalid("p_target", "must lie strictly between 0 and 1"));
    }
    Ok(())
}

/// Smallest `N ≤ n_cap` whose success probability reaches `p_target`, by exhaustive scan.
pub fn min_stages_for_target(p_target: f64, eta: f64, n_cap: u32) -> Result<Option<u32>> {
    check_target(p_target)?;
    if n_cap == 0 {
        return Err(invalid("n_cap", "must be at least 1"));
    }
    for n in 1..=n_cap {
        if success_probability(&make_interferometer(n, eta)?) >= p_target {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DwSolution {
    /// Largest bracketed `ΔW` (eV) found with `P ≥ p_target`.
    pub delta_w: f64,
    pub probability: f64,
    /// Set when even the upper bracket edge meets the target.
    pub saturated: bool,
}

/// Largest `ΔW ∈ [0, 3×10⁻⁴]` eV with `P(N, ΔW) ≥ p_target`; see [`required_dw_in_bracket`].
pub fn required_dw_for_target(p_target: f64, n_stages: u32, distance_m: f64, tolerance: f64) -> Result<Option<DwSolution>> {
    required_dw_in_bracket(p_target, n_stages, distance_m, tolerance, DEFAULT_DW_MAX)
}

/// Bisects for the largest `ΔW ∈ [0, dw_hi]` with `P(N, ΔW) ≥ p_target`, to within `tolerance` eV.
///
/// `P` is first checked to be non-increasing on a uniform grid over the bracket; otherwise the
/// call fails with [`IfmError::NonMonotone`]. Returns `None` if the target is missed even at `ΔW = 0`.
pub fn required_dw_in_bracket(
    p_target: f64,
    n_stages: u32,
    distance_m: f64,
    tolerance: f64,
    dw_hi: f64,
) -> Result<Option<DwSolution>> {
    check_target(p_target)?;
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(invalid("tolerance", "must be positive and finite"));
    }
    if !(dw_hi > 0.0 && dw_hi.is_finite()) {
        return Err(invalid("dw_hi", "must be positive and finite"));
    }
    let grid = uniform_axis(dw_hi, MONOTONE_GRID);
    let probs = grid
        .iter()
        .map(|&dw| probability_at(n_stages, dw, distance_m))
        .collect::<Result<Vec<_>>>()?;
    if let Some(k) = probs.windows(2).position(|w| w[1] > w[0] + PROBABILITY_SLACK) {
        return Err(IfmError::NonMonotone { delta_w: grid[k + 1] });
    }
    let meets = |p: f64| p >= p_target - PROBABILITY_SLACK;
    if !meets(probs[0]) {
        return Ok(None);
    }
    let last = probs.len() - 1;
    if meets(probs[last]) {
        return Ok(Some(DwSolution { delta_w: dw_hi, probability: probs[last], saturated: true }));
    }
    let k = probs.iter().position(|&p| !meets(p)).expect("last point misses target");
    let (mut lo, mut hi) = (grid[k - 1], grid[k]);
    let mut p_lo = probs[k - 1];
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        let p = probability_at(n_stages, mid, distance_m)?;
        if meets(p) {
            lo = mid;
            p_lo = p;
        } else {
            hi = mid;
        }
    }
    Ok(Some(DwSolution { delta_w: lo, probability: p_lo, saturated: false }))
}
