//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each, and exits non-zero if
//! any criterion fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};
use std::process::ExitCode;

use ifm_core::analytic::{
    beam_splitter_matrix, chain_transfer, ev_repeated, ev_single_shot, port_probabilities, success_probability,
};
use ifm_core::material::{emitter_current, fermi_velocity, mean_free_path, relaxation_time};
use ifm_core::shotnoise::{energy_window_check, normalized_noise};
use ifm_core::sweep::{noise_surface, probability_surface};
use ifm_core::trajectory::{estimate_probabilities, estimate_probabilities_with_threads, partition_noise_mc};
use ifm_core::wkb::{barrier_exponent, decay_constant};
use ifm_core::{make_interferometer, AbsorberModel, InterferometerSpec, MaterialParams, TransferMatrix};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Self { failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }

    /// Relative agreement `|got − want| ≤ tol·|want|`.
    fn rel(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        let err = ((got - want) / want).abs();
        self.check(err <= tol, format!("{label}={got:.4e} (want {want:.3e} ±{:.1}%, off {:.3}%)", tol * 100.0, err * 100.0));
    }

    fn finish(self) -> Outcome {
        if self.failures.is_empty() {
            Ok(self.notes.join("; "))
        } else {
            Err(self.failures.join("; "))
        }
    }
}

fn zeno(n: u32) -> f64 {
    (PI / (2.0 * f64::from(n))).cos().powi(2 * n as i32)
}

fn golden_numbers() -> Outcome {
    let mut c = Checks::new();
    let gaas = MaterialParams::gaas();
    c.rel("tau", relaxation_time(&gaas), 3.81e-11, 1e-2);
    c.rel("v_F", fermi_velocity(&gaas), 2.71e5, 1e-2);
    c.rel("l", mean_free_path(&gaas), 1.03e-5, 1e-2);
    c.rel("I", emitter_current(1e-9).map_err(|e| e.to_string())?, 1.60e-10, 1e-3);
    let tip = AbsorberModel::gaas(2.0e-4, 6.0e-8).map_err(|e| e.to_string())?;
    c.rel("kappa", decay_constant(&tip), 3.75e7, 5e-3);
    c.rel("kappa*s", barrier_exponent(&tip), 2.25, 5e-3);
    c.finish()
}

fn zeno_closed_form() -> Outcome {
    let mut c = Checks::new();
    let mut worst = 0.0f64;
    for n in 1..=200 {
        let p = success_probability(&make_interferometer(n, 0.0f64).map_err(|e| e.to_string())?);
        worst = worst.max((p - zeno(n)).abs());
    }
    c.check(worst <= 1e-12, format!("max |P − cos^2N| over N≤200 = {worst:.1e}"));
    let p = |n| success_probability(&make_interferometer(n, 0.0f64).unwrap());
    c.check((p(2) - 0.25).abs() <= 1e-12, format!("P(2)={:.6}", p(2)));
    c.check((p(10) - 0.7806).abs() <= 1e-4, format!("P(10)={:.6}", p(10)));
    c.check((p(50) - 0.952).abs() <= 1e-3, format!("P(50)={:.6}", p(50)));
    c.check(p(250) > 0.98, format!("P(250)={:.6}", p(250)));
    c.finish()
}

fn elitzur_vaidman() -> Outcome {
    let mut c = Checks::new();
    let half = Ratio::new(1i64, 2);
    let single = ev_single_shot(half).map_err(|e| e.to_string())?;
    c.check(
        single.p_exit_b == Ratio::new(1, 4) && single.p_exit_a == Ratio::new(1, 4) && single.p_absorbed == half,
        format!("single shot R=1/2 -> ({}, {}, {})", single.p_exit_b, single.p_exit_a, single.p_absorbed),
    );
    let repeated = ev_repeated(half).map_err(|e| e.to_string())?;
    c.check(repeated == Ratio::new(1, 3), format!("repeated R=1/2 -> {repeated}"));
    let near = ev_repeated(0.999f64).map_err(|e| e.to_string())?;
    c.check((near - 0.5).abs() <= 5e-4, format!("repeated R=0.999 -> {near:.6}"));
    c.finish()
}

fn noise_surface_properties() -> Outcome {
    let mut c = Checks::new();
    let g = noise_surface(50, 101).map_err(|e| e.to_string())?;
    c.check(g.shape() == (50, 101), format!("grid {:?}", g.shape()));
    let edge0 = g.column(0).map(f64::abs).fold(0.0, f64::max);
    let edge1 = g.column(100).map(f64::abs).fold(0.0, f64::max);
    c.check(edge0 <= 1e-12 && edge1 <= 1e-12, format!("max edge |S̃| η=0: {edge0:.1e}, η=1: {edge1:.1e}"));
    let in_range = g.values.iter().all(|&v| (0.0..=0.25).contains(&v));
    let max = g.values.iter().cloned().fold(f64::MIN, f64::max);
    c.check(in_range, format!("all in [0, 1/4], max {max:.5}"));
    let spot = normalized_noise(&make_interferometer(2, 0.5f64).map_err(|e| e.to_string())?).normalized;
    c.check((spot - 0.0078125).abs() <= 1e-6, format!("S̃(2, 0.5)={spot:.7}"));
    c.finish()
}

fn probability_surface_properties() -> Outcome {
    let mut c = Checks::new();
    let g = probability_surface(50, 3.0e-4, 101, 6.0e-8).map_err(|e| e.to_string())?;
    let worst = g
        .column(0)
        .enumerate()
        .map(|(i, v)| (v - zeno(i as u32 + 1)).abs())
        .fold(0.0, f64::max);
    c.check(worst <= 1e-12, format!("ΔW=0 column vs closed form {worst:.1e}"));
    c.check(g.values.iter().all(|&p| (0.0..=1.0).contains(&p)), "all P in [0, 1]");
    let row = g.row(49);
    let monotone = row.windows(2).all(|w| w[1] <= w[0]);
    c.check(monotone, format!("N=50 non-increasing in ΔW: {:.4} → {:.4}", row[0], row[row.len() - 1]));
    c.finish()
}

fn monte_carlo_oracle() -> Outcome {
    let mut c = Checks::new();
    let mut picker = ChaCha8Rng::seed_from_u64(20_260_101);
    let mut misses = Vec::new();
    for k in 0..50u64 {
        let n = picker.random_range(1..=30u32);
        let eta = picker.random_range(0.0..=1.0f64);
        let spec = make_interferometer(n, eta).map_err(|e| e.to_string())?;
        let exact = port_probabilities(&spec);
        let est = estimate_probabilities(&spec, 100_000, 1_000 + k).map_err(|e| e.to_string())?;
        let samples = est.n_samples as f64;
        for (label, got, want) in [
            ("a", est.p_exit_a, exact.p_exit_a),
            ("b", est.p_exit_b, exact.p_exit_b),
            ("abs", est.p_absorbed, exact.p_absorbed),
        ] {
            let sigma = (want * (1.0 - want) / samples).sqrt();
            if (got - want).abs() > 5.0 * sigma + 1e-15 {
                misses.push(format!("N={n} η={eta:.4} {label}: {got} vs {want}"));
            }
        }
    }
    c.check(misses.is_empty(), format!("50 random specs within 5σ (misses: {misses:?})"));

    let spec = make_interferometer(2, 0.0f64).map_err(|e| e.to_string())?;
    let named = estimate_probabilities(&spec, 1_000_000, 42).map_err(|e| e.to_string())?;
    let z = (named.p_exit_b - 0.25) / named.stderr_b;
    c.check(z.abs() <= 4.0, format!("N=2 η=0 seed 42: p_b={} ({z:+.2}σ)", named.p_exit_b));
    let rerun = estimate_probabilities(&spec, 1_000_000, 42).map_err(|e| e.to_string())?;
    let mut identical = rerun == named;
    for threads in [1, 3, 8] {
        identical &= estimate_probabilities_with_threads(&spec, 1_000_000, 42, Some(threads)).map_err(|e| e.to_string())? == named;
    }
    c.check(identical, "bit-identical across reruns and 1/3/8 threads");
    c.finish()
}

fn partition_noise() -> Outcome {
    let mut c = Checks::new();
    let est = partition_noise_mc(FRAC_PI_3, 1_000_000, 7).map_err(|e| e.to_string())?;
    let z = (est.variance_ratio - 0.1875) / est.stderr;
    c.check(z.abs() <= 4.0, format!("var/n={:.6} vs 0.1875 ({z:+.2}σ)", est.variance_ratio));
    let unitary = InterferometerSpec::with_theta(1, FRAC_PI_3, 1.0).map_err(|e| e.to_string())?;
    let analytic = normalized_noise(&unitary);
    c.check(
        (analytic.normalized - 0.1875).abs() <= 1e-12,
        format!("S̃(0) single splitter = {:.6}", analytic.normalized),
    );
    c.finish()
}

fn structural_invariants() -> Outcome {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut orth = 0.0f64;
    for _ in 0..1000 {
        let b = beam_splitter_matrix(rng.random_range(0.0..=FRAC_PI_2)).map_err(|e| e.to_string())?;
        orth = orth.max((b.transpose() * b).max_abs_diff(&TransferMatrix::identity()));
    }
    c.check(orth <= 1e-12, format!("max |BᵀB − I| = {orth:.1e}"));
    let (mut sigma_max, mut conservation) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let n = rng.random_range(1..=200u32);
        let spec = if rng.random_bool(0.5) {
            make_interferometer(n, rng.random_range(0.0..=1.0))
        } else {
            InterferometerSpec::with_theta(n, rng.random_range(0.0..=FRAC_PI_2), rng.random_range(0.0..=1.0))
        }
        .map_err(|e| e.to_string())?;
        sigma_max = sigma_max.max(chain_transfer(&spec).singular_values()[0]);
        conservation = conservation.max((port_probabilities(&spec).total() - 1.0).abs());
    }
    c.check(sigma_max <= 1.0 + 1e-12, format!("max singular value {sigma_max:.15}"));
    c.check(conservation <= 1e-12, format!("max |Σp − 1| = {conservation:.1e}"));
    let window = energy_window_check(1e-4f64, 100_000).map_err(|e| e.to_string())?;
    c.check((window - 1e-4).abs() <= 1e-8, format!("∫f_L(1−f_U) = {window:.6e} eV at |V|=1e-4"));
    c.finish()
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("golden numbers", golden_numbers),
        ("Zeno closed form", zeno_closed_form),
        ("Elitzur-Vaidman baseline", elitzur_vaidman),
        ("noise surface (N, eta)", noise_surface_properties),
        ("probability surface (N, dW)", probability_surface_properties),
        ("Monte Carlo oracle equivalence", monte_carlo_oracle),
        ("unitary partition noise", partition_noise),
        ("structural invariants", structural_invariants),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("[PASS] {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
