use ifm_core::analytic::{ev_repeated, ev_single_shot, port_probabilities, success_probability};
use ifm_core::constants::{ALGAAS_WORK_FUNCTION_EV, ELECTRON_MASS};
use ifm_core::material::{emitter_current, fermi_velocity, fermi_wavenumber, mean_free_path, relaxation_time};
use ifm_core::model::effective_barrier;
use ifm_core::shotnoise::{energy_window_check, normalized_noise};
use ifm_core::sweep::{min_stages_for_target, noise_surface, probability_surface, required_dw_in_bracket};
use ifm_core::trajectory::{estimate_probabilities_with_threads, partition_noise_mc_with_threads};
use ifm_core::wkb::summarize;
use ifm_core::{AbsorberModel, IfmError, InterferometerSpec};
use serde_json::json;

use crate::config::{Config, Preset};
use crate::error::{CliError, CliResult};
use crate::output::{base_meta, encode_surface, encode_table, Format, Table};
use crate::{AbsorberArgs, ChainArgs, Command};

pub struct Context {
    pub config: Config,
    pub format: Format,
    pub env_threads: Option<usize>,
}

impl Context {
    fn distance(&self, flag: Option<f64>) -> f64 {
        flag.unwrap_or_else(|| self.config.distance())
    }

    fn table(&self, table: &Table) -> CliResult<Vec<u8>> {
        encode_table(table, self.format)
    }
}

pub fn dispatch(ctx: &Context, command: Command) -> CliResult<Vec<u8>> {
    match command {
        Command::Material { preset, m_eff, fermi_energy, mobility, emission_period } => {
            material(ctx, preset, m_eff, fermi_energy, mobility, emission_period)
        }
        Command::Wkb { delta_w, phi, bias, distance, m_eff } => wkb(ctx, delta_w, phi, bias, distance, m_eff),
        Command::Ifm(chain) => ifm(ctx, &chain),
        Command::Noise { chain, bias } => noise(ctx, &chain, bias),
        Command::EnergyWindow { bias, points } => {
            let integral = energy_window_check(bias, points)?;
            let mut t = Table::new("energy-window").meta("bias", bias).meta("points", points);
            t.push("window_integral", integral, "eV");
            t.push("expected", bias.abs(), "eV");
            ctx.table(&t)
        }
        Command::SweepNoise { n_max, eta_steps } => {
            let grid = noise_surface(n_max, eta_steps)?;
            let mut meta = base_meta("sweep-noise");
            meta.insert("n_max".into(), n_max.into());
            meta.insert("eta_steps".into(), eta_steps.into());
            encode_surface(&grid, meta, ctx.format)
        }
        Command::SweepProb { n_max, dw_max, dw_steps, distance } => {
            let s = ctx.distance(distance);
            let grid = probability_surface(n_max, dw_max, dw_steps, s)?;
            let mut meta = base_meta("sweep-prob");
            meta.insert("n_max".into(), n_max.into());
            meta.insert("dw_max".into(), dw_max.into());
            meta.insert("dw_steps".into(), dw_steps.into());
            meta.insert("distance".into(), s.into());
            encode_surface(&grid, meta, ctx.format)
        }
        Command::Mc { chain, samples, seed, threads } => mc(ctx, &chain, samples, seed, threads),
        Command::Partition { theta, samples, seed, threads } => {
            let est = partition_noise_mc_with_threads(theta, samples, seed, threads)?;
            let mut t = Table::new("partition").meta("theta", theta).meta("seed", seed).meta("n_samples", samples);
            t.push("variance_ratio", est.variance_ratio, "1");
            t.push("stderr", est.stderr, "1");
            t.push("expected", est.transmission * (1.0 - est.transmission), "1");
            t.push("transmission", est.transmission, "1");
            t.push("seed", seed as f64, "1");
            t.push("n_samples", samples as f64, "1");
            ctx.table(&t)
        }
        Command::Ev { reflectivity, repeated } => {
            let mut t = Table::new("ev").meta("reflectivity", reflectivity).meta("repeated", repeated);
            if repeated {
                t.push("p_detect_repeated", ev_repeated(reflectivity)?, "1");
            } else {
                let p = ev_single_shot(reflectivity)?;
                t.push("p_detect", p.p_exit_b, "1");
                t.push("p_inconclusive", p.p_exit_a, "1");
                t.push("p_absorbed", p.p_absorbed, "1");
            }
            ctx.table(&t)
        }
        Command::MinStages { target, eta, n_cap } => {
            let found = min_stages_for_target(target, eta, n_cap)?
                .ok_or_else(|| CliError::Usage(format!("no N ≤ {n_cap} reaches P ≥ {target} at η = {eta}")))?;
            let spec = InterferometerSpec::new(found, eta)?;
            let mut t = Table::new("min-stages").meta("target", target).meta("eta", eta).meta("n_cap", n_cap);
            t.push("n", f64::from(found), "1");
            t.push("P", success_probability(&spec), "1");
            ctx.table(&t)
        }
        Command::RequiredDw { target, n, distance, tolerance, dw_max } => {
            let s = ctx.distance(distance);
            let sol = required_dw_in_bracket(target, n, s, tolerance, dw_max)?.ok_or_else(|| {
                CliError::Usage(format!("P ≥ {target} is unreachable at N = {n} even with a perfect absorber"))
            })?;
            let mut t = Table::new("required-dw")
                .meta("target", target)
                .meta("n", n)
                .meta("distance", s)
                .meta("tolerance", tolerance)
                .meta("dw_max", dw_max)
                .meta("saturated", sol.saturated);
            t.push("delta_w", sol.delta_w, "eV");
            t.push("P", sol.probability, "1");
            ctx.table(&t)
        }
    }
}

fn material(
    ctx: &Context,
    preset: Option<String>,
    m_eff: Option<f64>,
    fermi_energy: Option<f64>,
    mobility: Option<f64>,
    emission_period: Option<f64>,
) -> CliResult<Vec<u8>> {
    let (label, params) = match (preset, m_eff, fermi_energy, mobility) {
        (Some(name), ..) => {
            let p = ctx.config.preset(&name)?;
            (name, p)
        }
        (None, Some(m), Some(ef), Some(mu)) => (
            "custom".to_owned(),
            Preset { m_eff: m, fermi_energy: ef, mobility: mu, work_function_mean: ALGAAS_WORK_FUNCTION_EV },
        ),
        (None, None, None, None) => {
            return Err(CliError::Usage("give --preset or all of --m-eff, --fermi-energy, --mobility".into()))
        }
        _ => return Err(CliError::Usage("--m-eff, --fermi-energy and --mobility must be given together".into())),
    };
    let m = params.material()?;
    let mut t = Table::new("material")
        .meta("preset", label)
        .meta("m_eff", params.m_eff)
        .meta("fermi_energy", params.fermi_energy)
        .meta("mobility", params.mobility);
    t.push("tau", relaxation_time(&m), "s");
    t.push("v_f", fermi_velocity(&m), "m/s");
    t.push("l", mean_free_path(&m), "m");
    t.push("k_f", fermi_wavenumber(&m), "1/m");
    if let Some(period) = emission_period {
        t.push("emitter_current", emitter_current(period)?, "A");
    }
    ctx.table(&t)
}

fn barrier_error(e: IfmError, phi: Option<f64>, bias: Option<f64>) -> CliError {
    match (e, phi, bias) {
        (IfmError::BarrierViolation(dw), Some(phi), Some(bias)) => CliError::Usage(format!(
            "negative effective barrier: ⟨Φ⟩ − e|V|/2 = {phi} − {} = {dw} eV; the WKB model assumes ⟨Φ⟩ − e|V|/2 > 0",
            bias.abs() / 2.0
        )),
        (e, ..) => e.into(),
    }
}

fn wkb(
    ctx: &Context,
    delta_w: Option<f64>,
    phi: Option<f64>,
    bias: Option<f64>,
    distance: Option<f64>,
    m_eff: f64,
) -> CliResult<Vec<u8>> {
    let s = ctx.distance(distance);
    let (dw, phi) = match (delta_w, bias) {
        (Some(dw), _) => (dw, None),
        (None, Some(v)) => {
            let phi = phi.unwrap_or(ALGAAS_WORK_FUNCTION_EV);
            (effective_barrier(phi, v), Some(phi))
        }
        (None, None) => return Err(CliError::Usage("give --delta-w, or --bias (with optional --phi)".into())),
    };
    let absorber = AbsorberModel::new(dw, s, m_eff * ELECTRON_MASS).map_err(|e| barrier_error(e, phi, bias))?;
    let b = summarize(&absorber);
    let mut t = Table::new("wkb").meta("delta_w", dw).meta("distance", s).meta("m_eff", m_eff);
    t.push("delta_w", dw, "eV");
    t.push("kappa", b.kappa, "1/m");
    t.push("kappa_s", b.kappa_s, "1");
    t.push("tunnelling_ratio", b.ratio, "1");
    t.push("eta", b.eta, "1");
    ctx.table(&t)
}

fn resolve_eta(ctx: &Context, a: &AbsorberArgs) -> CliResult<f64> {
    match (a.eta, a.delta_w) {
        (Some(eta), _) => Ok(eta),
        (None, Some(dw)) => {
            let absorber = AbsorberModel::new(dw, ctx.distance(a.distance), a.m_eff * ELECTRON_MASS)?;
            Ok(summarize(&absorber).eta)
        }
        (None, None) => Err(CliError::Usage("give --eta or --delta-w".into())),
    }
}

fn build_spec(ctx: &Context, chain: &ChainArgs) -> CliResult<InterferometerSpec> {
    let eta = resolve_eta(ctx, &chain.absorber)?;
    Ok(match chain.theta {
        Some(theta) => InterferometerSpec::with_theta(chain.n, theta, eta)?,
        None => InterferometerSpec::new(chain.n, eta)?,
    })
}

fn chain_table(command: &str, spec: &InterferometerSpec) -> Table {
    let mut t = Table::new(command).meta("n", spec.n_stages()).meta("theta", spec.theta()).meta("eta", spec.eta());
    t.push("n", f64::from(spec.n_stages()), "1");
    t.push("theta", spec.theta(), "rad");
    t.push("eta", spec.eta(), "1");
    t
}

fn ifm(ctx: &Context, chain: &ChainArgs) -> CliResult<Vec<u8>> {
    let spec = build_spec(ctx, chain)?;
    let ports = port_probabilities(&spec);
    let mut t = chain_table("ifm", &spec);
    t.push("P", success_probability(&spec), "1");
    t.push("p_exit_a", ports.p_exit_a, "1");
    t.push("p_exit_b", ports.p_exit_b, "1");
    t.push("p_absorbed", ports.p_absorbed, "1");
    ctx.table(&t)
}

fn noise(ctx: &Context, chain: &ChainArgs, bias: Option<f64>) -> CliResult<Vec<u8>> {
    let spec = build_spec(ctx, chain)?;
    let mut result = normalized_noise(&spec);
    if let Some(v) = bias {
        result = result.with_bias(v)?;
    }
    let mut t = chain_table("noise", &spec);
    t.push("s_ll_sq", result.s_ll_sq, "1");
    t.push("s_lu_sq", result.s_lu_sq, "1");
    t.push("normalized", result.normalized, "1");
    if let Some(density) = result.spectral_density() {
        t.meta.insert("bias".into(), json!(bias));
        t.push("spectral_density", density, "A^2/Hz");
    }
    ctx.table(&t)
}

fn mc(ctx: &Context, chain: &ChainArgs, samples: u64, seed: u64, threads: Option<usize>) -> CliResult<Vec<u8>> {
    let spec = build_spec(ctx, chain)?;
    let est = estimate_probabilities_with_threads(&spec, samples, seed, threads)?;
    let exact = port_probabilities(&spec);
    let mut t = chain_table("mc", &spec).meta("seed", seed).meta("n_samples", samples);
    if let Some(th) = threads.or(ctx.env_threads) {
        t.meta.insert("threads".into(), th.into());
    }
    t.push("seed", seed as f64, "1");
    t.push("n_samples", samples as f64, "1");
    t.push("p_exit_a", est.p_exit_a, "1");
    t.push("stderr_a", est.stderr_a, "1");
    t.push("p_exit_b", est.p_exit_b, "1");
    t.push("stderr_b", est.stderr_b, "1");
    t.push("p_absorbed", est.p_absorbed, "1");
    t.push("stderr_abs", est.stderr_abs, "1");
    t.push("exact_p_exit_a", exact.p_exit_a, "1");
    t.push("exact_p_exit_b", exact.p_exit_b, "1");
    t.push("exact_p_absorbed", exact.p_absorbed, "1");
    ctx.table(&t)
}
