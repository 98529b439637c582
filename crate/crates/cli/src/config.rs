//! Flat key=value config files; command-line flags take precedence.

use std::collections::HashMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use esec_core::{EncodeConfig, RelationConfig};

const KNOWN_KEYS: [&str; 12] = [
    "eps_touch",
    "xi_dyn",
    "xi_stable",
    "theta",
    "far_cutoff",
    "eps_move",
    "debounce",
    "tau",
    "seed",
    "per_class",
    "rule",
    "protocol",
];

#[derive(Debug, Clone, Default)]
pub struct FileConfig {
    values: HashMap<String, String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut values = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("config line {}: expected key=value", lineno + 1);
            };
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                bail!("config line {}: unknown key `{key}`", lineno + 1);
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn get_f64(&self, key: &str) -> Result<Option<f64>> {
        self.values
            .get(key)
            .map(|v| v.parse().with_context(|| format!("config `{key}`: bad number `{v}`")))
            .transpose()
    }

    pub fn get_usize(&self, key: &str) -> Result<Option<usize>> {
        self.values
            .get(key)
            .map(|v| v.parse().with_context(|| format!("config `{key}`: bad integer `{v}`")))
            .transpose()
    }

    pub fn get_u64(&self, key: &str) -> Result<Option<u64>> {
        self.values
            .get(key)
            .map(|v| v.parse().with_context(|| format!("config `{key}`: bad integer `{v}`")))
            .transpose()
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}

/// Builds the effective encoder configuration: defaults, then config
/// file, then explicit flags.
pub fn encode_config(
    file: &FileConfig,
    eps_touch: Option<f64>,
    xi_dyn: Option<f64>,
    xi_stable: Option<f64>,
    theta: Option<usize>,
    far_cutoff: Option<f64>,
    eps_move: Option<f64>,
    debounce: Option<usize>,
) -> Result<EncodeConfig<f64>> {
    let mut relations: RelationConfig<f64> = RelationConfig::default();
    if let Some(v) = eps_touch.or(file.get_f64("eps_touch")?) {
        relations.eps_touch = v;
    }
    if let Some(v) = xi_dyn.or(file.get_f64("xi_dyn")?) {
        relations.xi_dyn = v;
    }
    if let Some(v) = xi_stable.or(file.get_f64("xi_stable")?) {
        relations.xi_stable = v;
    }
    if let Some(v) = theta.or(file.get_usize("theta")?) {
        relations.theta = v;
    }
    if let Some(v) = far_cutoff.or(file.get_f64("far_cutoff")?) {
        relations.far_cutoff = v;
    }
    if let Some(v) = eps_move.or(file.get_f64("eps_move")?) {
        relations.eps_move = v;
    }
    let mut cfg = EncodeConfig {
        relations,
        ..EncodeConfig::default()
    };
    if let Some(v) = debounce.or(file.get_usize("debounce")?) {
        cfg.debounce_frames = v;
    }
    Ok(cfg)
}

pub fn render_config(cfg: &EncodeConfig<f64>, rule: &str, tau: f64, seed: u64) -> String {
    format!(
        "eps_touch={}\nxi_dyn={}\nxi_stable={}\ntheta={}\nfar_cutoff={}\neps_move={}\ndebounce={}\nrule={}\ntau={}\nseed={}\n",
        cfg.relations.eps_touch,
        cfg.relations.xi_dyn,
        cfg.relations.xi_stable,
        cfg.relations.theta,
        cfg.relations.far_cutoff,
        cfg.relations.eps_move,
        cfg.debounce_frames,
        rule,
        tau,
        seed
    )
}
