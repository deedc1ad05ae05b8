//! Optional JSON configuration: named material presets and a default tip distance.
//!
//! ```json
//! {
//!   "distance": 6.0e-8,
//!   "presets": {
//!     "gaas-dirty": { "m_eff": 0.067, "fermi_energy": 0.014, "mobility": 10.0 }
//!   }
//! }
//! ```
//!
//! `m_eff` is in units of the free electron mass; `work_function_mean` defaults to 5 eV.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use ifm_core::constants::{
    ALGAAS_WORK_FUNCTION_EV, DEFAULT_TUNNELLING_DISTANCE, ELECTRON_MASS, GAAS_FERMI_ENERGY_EV, GAAS_MASS_RATIO,
    GAAS_MOBILITY,
};
use ifm_core::MaterialParams;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Preset {
    pub m_eff: f64,
    pub fermi_energy: f64,
    pub mobility: f64,
    #[serde(default = "default_work_function")]
    pub work_function_mean: f64,
}

fn default_work_function() -> f64 {
    ALGAAS_WORK_FUNCTION_EV
}

impl Preset {
    pub fn gaas() -> Self {
        Self {
            m_eff: GAAS_MASS_RATIO,
            fermi_energy: GAAS_FERMI_ENERGY_EV,
            mobility: GAAS_MOBILITY,
            work_function_mean: ALGAAS_WORK_FUNCTION_EV,
        }
    }

    pub fn material(&self) -> CliResult<MaterialParams> {
        Ok(MaterialParams::new(self.m_eff * ELECTRON_MASS, self.fermi_energy, self.mobility, self.work_function_mean)?)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub distance: Option<f64>,
    #[serde(default)]
    pub presets: BTreeMap<String, Preset>,
}

impl Config {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn load_opt(path: Option<&Path>) -> CliResult<Self> {
        path.map_or_else(|| Ok(Self::default()), Self::load)
    }

    /// Built-in `gaas` unless the config file redefines it.
    pub fn preset(&self, name: &str) -> CliResult<Preset> {
        if let Some(p) = self.presets.get(name) {
            return Ok(p.clone());
        }
        if name.eq_ignore_ascii_case("gaas") {
            return Ok(Preset::gaas());
        }
        let mut known: Vec<&str> = self.presets.keys().map(String::as_str).collect();
        known.push("gaas");
        Err(CliError::Usage(format!("unknown preset `{name}` (known: {})", known.join(", "))))
    }

    pub fn distance(&self) -> f64 {
        self.distance.unwrap_or(DEFAULT_TUNNELLING_DISTANCE)
    }
}
