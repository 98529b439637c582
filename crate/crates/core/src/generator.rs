//! Synthetic cube-world scenarios for the ten manipulation classes.
//!
//! Each class has a scripted choreography with randomized layout, sizes
//! and duration. Motion is piecewise linear at constant speed; sustained
//! oscillations run at the relation window length so steady phases stay
//! symbolically quiet. Scripts are deterministic in the seed.

mod scripts;
mod sim;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::scalar::Scalar;
use crate::scene::Scenario;
use crate::scene_io::save_scenario;

pub use sim::Sim;

/// The ten manipulation action classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionClass {
    Chop,
    Cut,
    Hide,
    Uncover,
    PutOnTop,
    TakeDown,
    Lay,
    Push,
    Shake,
    Stir,
}

impl ActionClass {
    pub const ALL: [ActionClass; 10] = [
        ActionClass::Chop,
        ActionClass::Cut,
        ActionClass::Hide,
        ActionClass::Uncover,
        ActionClass::PutOnTop,
        ActionClass::TakeDown,
        ActionClass::Lay,
        ActionClass::Push,
        ActionClass::Shake,
        ActionClass::Stir,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ActionClass::Chop => "chop",
            ActionClass::Cut => "cut",
            ActionClass::Hide => "hide",
            ActionClass::Uncover => "uncover",
            ActionClass::PutOnTop => "put_on_top",
            ActionClass::TakeDown => "take_down",
            ActionClass::Lay => "lay",
            ActionClass::Push => "push",
            ActionClass::Shake => "shake",
            ActionClass::Stir => "stir",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.label() == s)
    }

    /// Duration statistics in seconds: (mean, sd, min, max).
    pub fn duration_stats(self) -> (f64, f64, f64, f64) {
        match self {
            ActionClass::Chop => (17.86, 3.56, 13.0, 27.0),
            ActionClass::Cut => (19.50, 3.13, 13.0, 25.0),
            ActionClass::Hide => (13.43, 2.40, 9.0, 20.0),
            ActionClass::Uncover => (12.66, 3.20, 9.0, 21.0),
            ActionClass::PutOnTop => (10.90, 2.006, 8.0, 16.0),
            ActionClass::TakeDown => (10.60, 3.04, 6.0, 18.0),
            ActionClass::Lay => (11.23, 1.79, 8.0, 15.0),
            ActionClass::Push => (12.56, 1.73, 9.0, 17.0),
            ActionClass::Shake => (12.10, 2.05, 9.0, 17.0),
            ActionClass::Stir => (20.23, 4.67, 14.0, 31.0),
        }
    }
}

/// Generation parameters; the frame rate matches the relation window
/// (10 frames = 0.5 s).
#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    pub frame_rate: f64,
    pub min_distractors: usize,
    pub max_distractors: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            frame_rate: 20.0,
            min_distractors: 1,
            max_distractors: 3,
        }
    }
}

/// Generates one scenario of the class, deterministic in the seed.
pub fn generate<T: Scalar>(class: ActionClass, seed: u64) -> Scenario<T> {
    scripts::generate_with(class, seed, &GeneratorConfig::default())
}

pub fn generate_with_config<T: Scalar>(
    class: ActionClass,
    seed: u64,
    cfg: &GeneratorConfig,
) -> Scenario<T> {
    scripts::generate_with(class, seed, cfg)
}

/// One corpus entry: the scenario plus its provenance.
#[derive(Debug, Clone)]
pub struct GeneratedScenario<T = f64> {
    pub class: ActionClass,
    pub seed: u64,
    pub scenario: Scenario<T>,
}

fn derived_seed(seed: u64, class_index: usize, sample: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((class_index * 10_000 + sample) as u64)
}

/// Generates `per_class` scenarios for every class with derived seeds.
pub fn generate_corpus<T: Scalar>(per_class: usize, seed: u64) -> Vec<GeneratedScenario<T>> {
    let mut out = Vec::with_capacity(per_class * ActionClass::ALL.len());
    for (k, class) in ActionClass::ALL.into_iter().enumerate() {
        for i in 0..per_class {
            let s = derived_seed(seed, k, i);
            out.push(GeneratedScenario {
                class,
                seed: s,
                scenario: generate(class, s),
            });
        }
    }
    out
}

/// Writes corpus scenario files plus a `manifest.csv` of
/// `path,class,seed` rows. Returns the manifest path.
pub fn write_corpus<T: Scalar>(corpus: &[GeneratedScenario<T>], dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let mut manifest = String::from("path,class,seed\n");
    let mut counters: std::collections::HashMap<&str, usize> = std::collections::HashMap::new();
    for entry in corpus {
        let label = entry.class.label();
        let idx = counters.entry(label).or_insert(0);
        let name = format!("{label}_{idx:03}.scene");
        *idx += 1;
        let path = dir.join(&name);
        let mut file = fs::File::create(&path)?;
        let mut buf = Vec::new();
        save_scenario(&entry.scenario, &mut buf)?;
        file.write_all(&buf)?;
        manifest.push_str(&format!("{name},{label},{}\n", entry.seed));
    }
    let manifest_path = dir.join("manifest.csv");
    fs::write(&manifest_path, manifest)?;
    Ok(manifest_path)
}
