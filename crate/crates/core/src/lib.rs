//! Cube-world manipulation actions as symbolic event chains.
//!
//! The pipeline: synthesize or load cube scenarios, extract touching /
//! static / dynamic relations per object pair, compress them into a
//! 30-row event-chain matrix, then classify ongoing actions from growing
//! prefixes and quantify per-cue information gain.
//!
//! All geometry and scoring code is generic over the [`Scalar`] floating
//! type; the `*64` aliases below fix the default `f64` precision.

pub mod encoder;
pub mod error;
pub mod esec_io;
pub mod generator;
pub mod human;
pub mod info;
pub mod prediction;
pub mod relations;
pub mod scalar;
pub mod scene;
pub mod scene_io;
pub mod similarity;

pub use encoder::{
    assign_roles, encode, pair_label, CueSet, ESecMatrix, EncodeConfig, RelationKind, Role,
    RoleAssignment, PAIR_ORDER,
};
pub use error::{EsecError, Result};
pub use esec_io::{load_esec, save_esec};
pub use generator::{generate, generate_corpus, ActionClass, GeneratorConfig};
pub use human::{ingest_human_responses, HumanEvaluation, ResponseCorpusMeta};
pub use info::{combine_cues, earliest_disambiguation, likelihood_table, InfoProfile, ReferenceSet};
pub use prediction::{
    evaluate_corpus, predict_online, CorpusEvaluation, DecisionRule, PredictionTrace, Protocol,
    TrainingLibrary,
};
pub use relations::{
    dsr, relation_triple, ssr, tnr, Dsr, PairHistory, RelationConfig, RelationTriple, Ssr, Tnr,
};
pub use scalar::Scalar;
pub use scene::{distance, shadow_area, touching, Cube, CubeStatus, Direction, Frame, Scenario, Vec3};
pub use scene_io::{load_scenario, save_scenario};

/// Default-precision aliases.
pub type Vec3f64 = Vec3<f64>;
pub type Cube64 = Cube<f64>;
pub type Frame64 = Frame<f64>;
pub type Scenario64 = Scenario<f64>;
pub type RelationConfig64 = RelationConfig<f64>;
