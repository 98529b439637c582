//! Command-line driver: scenario generation, event-chain encoding,
//! online prediction, corpus evaluation and information analysis.
//!
//! Exit codes: 0 success, 1 runtime/data error, 2 usage error.

mod config;

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use esec_core::encoder::{encode, CueSet, ESecMatrix, EncodeConfig};
use esec_core::generator::{generate_corpus, write_corpus, ActionClass};
use esec_core::human::{ingest_human_responses, ResponseCorpusMeta};
use esec_core::info::{combine_cues, earliest_disambiguation, likelihood_table, ReferenceSet};
use esec_core::prediction::{
    evaluate_corpus, predict_online, DecisionRule, Protocol, TrainingLibrary,
};
use esec_core::{load_esec, load_scenario, save_esec};

use config::FileConfig;

#[derive(Parser)]
#[command(
    name = "esec",
    about = "Cube-world manipulation actions as symbolic event chains",
    version
)]
struct Cli {
    /// Flat key=value config file; command-line flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Print the effective configuration and exit.
    #[arg(long, global = true)]
    show_config: bool,

    #[command(flatten)]
    knobs: Knobs,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Clone)]
struct Knobs {
    /// Face-contact tolerance in meters.
    #[arg(long, global = true)]
    eps_touch: Option<f64>,
    /// Getting-close / moving-apart distance threshold in meters.
    #[arg(long, global = true)]
    xi_dyn: Option<f64>,
    /// Stability distance threshold in meters.
    #[arg(long, global = true)]
    xi_stable: Option<f64>,
    /// Relation window length in frames.
    #[arg(long, global = true)]
    theta: Option<usize>,
    /// Distance beyond which pair relations are nullified, meters.
    #[arg(long, global = true)]
    far_cutoff: Option<f64>,
    /// Center displacement that counts as motion, meters.
    #[arg(long, global = true)]
    eps_move: Option<f64>,
    /// Frames a changed relation tuple must persist to open a column.
    #[arg(long, global = true)]
    debounce: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a labeled scenario corpus.
    Generate {
        /// Scenarios per action class.
        #[arg(long, default_value_t = 30)]
        per_class: usize,
        /// Master seed; corpora are deterministic in it.
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory for scenario files and the manifest.
        #[arg(long, default_value = "corpus")]
        out: PathBuf,
    },
    /// Encode scenario files into event-chain matrices.
    Encode {
        /// Scenario files or directories of `.scene` files.
        inputs: Vec<PathBuf>,
        /// Output directory for `.esec` files.
        #[arg(long, default_value = "esec")]
        out: PathBuf,
        /// Render each matrix as a table on stdout.
        #[arg(long)]
        print: bool,
    },
    /// Classify one matrix online against a training library.
    Predict {
        /// Directory of training `.esec` files.
        #[arg(long)]
        library: PathBuf,
        /// The matrix to classify.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "margin")]
        rule: String,
        /// Margin rule threshold in similarity points.
        #[arg(long)]
        tau: Option<f64>,
    },
    /// Cross-validated predictive power over an encoded corpus.
    Evaluate {
        /// Directory of `.esec` files.
        #[arg(long)]
        library: PathBuf,
        /// `loo` or `kfold`.
        #[arg(long, default_value = "loo")]
        protocol: String,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value = "margin")]
        rule: String,
        #[arg(long)]
        tau: Option<f64>,
        /// Human response file to evaluate alongside the machine.
        #[arg(long)]
        human: Option<PathBuf>,
        /// Write a plot-ready CSV of the per-class table.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Likelihood, self-information and disambiguation analysis.
    Info {
        /// Directory of `.esec` files covering the full class set.
        #[arg(long)]
        library: PathBuf,
        /// Cue subsets, comma-separated list of T,S,D groups, e.g. `T,S,D`
        /// analyses each alone; `T+S` a combined subset.
        #[arg(long, default_value = "T,S,D")]
        cues: String,
        /// Also report the summed-bits profile of the listed cues.
        #[arg(long)]
        combine: bool,
        /// Write the information table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Ok(threads) = std::env::var("ESEC_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }

    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let file_cfg = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let k = &cli.knobs;
    let cfg = config::encode_config(
        &file_cfg,
        k.eps_touch,
        k.xi_dyn,
        k.xi_stable,
        k.theta,
        k.far_cutoff,
        k.eps_move,
        k.debounce,
    )?;

    if cli.show_config {
        let rule = file_cfg.get_str("rule").unwrap_or("margin");
        let tau = file_cfg.get_f64("tau")?.unwrap_or(5.0);
        let seed = file_cfg.get_u64("seed")?.unwrap_or(7);
        print!("{}", config::render_config(&cfg, rule, tau, seed));
        return Ok(ExitCode::SUCCESS);
    }

    let Some(command) = cli.command else {
        eprintln!("error: no command given (try `esec --help`)");
        return Ok(ExitCode::from(2));
    };

    match command {
        Command::Generate { per_class, seed, out } => {
            if per_class == 0 {
                eprintln!("error: --per-class must be at least 1");
                return Ok(ExitCode::from(2));
            }
            let seed = seed.or(file_cfg.get_u64("seed")?).unwrap_or(7);
            let corpus = generate_corpus::<f64>(per_class, seed);
            let manifest = write_corpus(&corpus, &out)?;
            println!(
                "wrote {} scenarios and {}",
                corpus.len(),
                manifest.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Encode { inputs, out, print } => cmd_encode(&inputs, &out, print, &cfg),
        Command::Predict {
            library,
            input,
            rule,
            tau,
        } => {
            let rule = decision_rule(&rule, tau, &file_cfg)?;
            let lib = TrainingLibrary::from_samples(load_esec_dir(&library)?.into_values().collect())?;
            let test = load_esec(std::fs::File::open(&input)?)?;
            let trace = predict_online(&test, &lib, rule)?;
            print!("{}", render_trace(&trace));
            Ok(ExitCode::SUCCESS)
        }
        Command::Evaluate {
            library,
            protocol,
            k,
            rule,
            tau,
            human,
            csv,
        } => cmd_evaluate(&library, &protocol, k, &rule, tau, human.as_deref(), csv.as_deref(), &file_cfg),
        Command::Info {
            library,
            cues,
            combine,
            csv,
        } => cmd_info(&library, &cues, combine, csv.as_deref()),
    }
}

fn decision_rule(name: &str, tau: Option<f64>, file_cfg: &FileConfig) -> Result<DecisionRule<f64>> {
    let name = if name.is_empty() {
        file_cfg.get_str("rule").unwrap_or("margin")
    } else {
        name
    };
    match name {
        "margin" => {
            let tau = tau.or(file_cfg.get_f64("tau")?).unwrap_or(5.0);
            Ok(DecisionRule::Margin { tau })
        }
        "uniqueness" => Ok(DecisionRule::Uniqueness),
        other => bail!("unknown decision rule `{other}` (margin|uniqueness)"),
    }
}

fn scene_files(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(input)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|e| e == "scene"))
                .collect();
            entries.sort();
            files.extend(entries);
        } else {
            files.push(input.clone());
        }
    }
    if files.is_empty() {
        bail!("no scenario files found");
    }
    Ok(files)
}

fn cmd_encode(inputs: &[PathBuf], out: &Path, print: bool, cfg: &EncodeConfig<f64>) -> Result<ExitCode> {
    let files = scene_files(inputs)?;
    std::fs::create_dir_all(out)?;
    let mut failures = 0usize;
    for path in &files {
        let result = (|| -> Result<ESecMatrix> {
            let scenario = load_scenario::<f64, _>(std::fs::File::open(path)?)
                .with_context(|| format!("loading {}", path.display()))?;
            encode(&scenario, cfg).with_context(|| format!("encoding {}", path.display()))
        })();
        match result {
            Ok(matrix) => {
                let stem = path
                    .file_stem()
                    .ok_or_else(|| anyhow!("bad file name {}", path.display()))?;
                let target = out.join(Path::new(stem)).with_extension("esec");
                let mut buf = Vec::new();
                save_esec(&matrix, &mut buf)?;
                std::fs::write(&target, buf)?;
                if print {
                    println!("== {}", target.display());
                    print!("{}", matrix.render_table());
                }
            }
            Err(err) => {
                eprintln!("error: {err:#}");
                failures += 1;
            }
        }
    }
    println!("encoded {} of {} scenarios", files.len() - failures, files.len());
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Loads all `.esec` files of a directory keyed by file stem.
fn load_esec_dir(dir: &Path) -> Result<HashMap<String, ESecMatrix>> {
    let mut out = HashMap::new();
    let mut entries: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "esec"))
        .collect();
    entries.sort();
    if entries.is_empty() {
        bail!("no .esec files in {}", dir.display());
    }
    for path in entries {
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| anyhow!("bad file name {}", path.display()))?
            .to_string();
        let matrix = load_esec(std::fs::File::open(&path)?)
            .with_context(|| format!("loading {}", path.display()))?;
        out.insert(stem, matrix);
    }
    Ok(out)
}

fn render_trace(trace: &esec_core::PredictionTrace<f64>) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:>7} | {}\n",
        "column",
        trace
            .class_labels
            .iter()
            .map(|l| format!("{l:>10}"))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    for (c, sims) in trace.per_column.iter().enumerate() {
        out.push_str(&format!(
            "{:>7} | {}\n",
            c + 1,
            sims.iter()
                .map(|s| format!("{s:>10.2}"))
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    match (&trace.predicted_class, trace.prediction_column) {
        (Some(class), Some(col)) => out.push_str(&format!(
            "predicted `{class}` at column {col} of {} (predictive power {:.1}%)\n",
            trace.total_columns, trace.predictive_power
        )),
        _ => out.push_str("no prediction fired\n"),
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_evaluate(
    library: &Path,
    protocol: &str,
    k: usize,
    rule: &str,
    tau: Option<f64>,
    human: Option<&Path>,
    csv: Option<&Path>,
    file_cfg: &FileConfig,
) -> Result<ExitCode> {
    let rule = decision_rule(rule, tau, file_cfg)?;
    let protocol = match protocol {
        "loo" => Protocol::LeaveOneOut,
        "kfold" => Protocol::KFold(k),
        other => bail!("unknown protocol `{other}` (loo|kfold)"),
    };
    let by_stem = load_esec_dir(library)?;
    let mut meta = ResponseCorpusMeta::new();
    for (stem, m) in &by_stem {
        meta.insert(stem.clone(), m.label.clone(), m.column_count());
    }
    let lib = TrainingLibrary::from_samples(by_stem.into_values().collect())?;
    let eval = evaluate_corpus::<f64>(&lib, protocol, rule)?;

    let human_eval = human
        .map(|path| ingest_human_responses::<f64, _>(std::fs::File::open(path)?, &meta))
        .transpose()?;

    println!("{:<12} {:>10} {:>8} {:>10}", "class", "machine P", "fired", "human P");
    let mut csv_text = String::from("class,machine_power,fired_fraction,human_power\n");
    for (i, label) in eval.class_labels.iter().enumerate() {
        let human_p = human_eval
            .as_ref()
            .and_then(|h| h.per_class.iter().find(|r| &r.class == label))
            .map(|r| format!("{:.1}", r.mean_power))
            .unwrap_or_else(|| "-".into());
        println!(
            "{:<12} {:>10.1} {:>8.2} {:>10}",
            label, eval.per_class_power[i], eval.fired_fraction[i], human_p
        );
        csv_text.push_str(&format!(
            "{},{:.3},{:.3},{}\n",
            label,
            eval.per_class_power[i],
            eval.fired_fraction[i],
            human_eval
                .as_ref()
                .and_then(|h| h.per_class.iter().find(|r| &r.class == label))
                .map(|r| format!("{:.3}", r.mean_power))
                .unwrap_or_default()
        ));
    }
    println!(
        "overall machine P {:.1}%, full-observation accuracy {:.1}%",
        eval.overall_power,
        eval.full_observation_accuracy * 100.0
    );
    if let Some(h) = &human_eval {
        println!(
            "human overall P {:.1}% over {} trials ({} timeouts excluded)",
            h.overall_power(),
            h.included_trials,
            h.excluded_timeouts
        );
    }
    let never = eval.never_fired();
    if !never.is_empty() {
        println!("classes that never disambiguated: {}", never.join(", "));
    }

    println!("confusion (rows true, columns predicted at full observation):");
    for (i, label) in eval.class_labels.iter().enumerate() {
        let row: Vec<String> = eval.confusion[i].iter().map(|c| format!("{c:>4}")).collect();
        println!("{:<12} {}", label, row.join(""));
    }

    if let Some(path) = csv {
        std::fs::write(path, csv_text)?;
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

/// Most frequent column sequence per class; ties resolved by first
/// occurrence in sorted stem order.
fn canonical_per_class(matrices: Vec<ESecMatrix>) -> Result<Vec<ESecMatrix>> {
    let mut per_class: HashMap<String, HashMap<String, (usize, ESecMatrix)>> = HashMap::new();
    for m in matrices {
        let key: Vec<String> = (0..m.column_count())
            .map(|c| m.column_code(c, CueSet::ALL).expect("in range"))
            .collect();
        let key = key.join("|");
        per_class
            .entry(m.label.clone())
            .or_default()
            .entry(key)
            .and_modify(|e| e.0 += 1)
            .or_insert((1, m));
    }
    let mut out: Vec<ESecMatrix> = per_class
        .into_values()
        .map(|buckets| {
            buckets
                .into_values()
                .max_by_key(|(n, _)| *n)
                .expect("nonempty class")
                .1
        })
        .collect();
    out.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(out)
}

fn cmd_info(library: &Path, cues: &str, combine: bool, csv: Option<&Path>) -> Result<ExitCode> {
    let matrices: Vec<ESecMatrix> = load_esec_dir(library)?.into_values().collect();
    let mut labels: Vec<&str> = matrices.iter().map(|m| m.label.as_str()).collect();
    labels.sort_unstable();
    labels.dedup();
    let expected: Vec<&str> = ActionClass::ALL.iter().map(|c| c.label()).collect();
    let mut expected_sorted = expected.clone();
    expected_sorted.sort_unstable();
    if labels != expected_sorted {
        bail!(
            "expected the full class set ({}), found: {}",
            expected.join(", "),
            labels.join(", ")
        );
    }

    let canonical = canonical_per_class(matrices)?;
    let refset = ReferenceSet::new(canonical)?;

    let subsets: Vec<CueSet> = cues
        .split(',')
        .map(|part| {
            CueSet::parse(part).ok_or_else(|| anyhow!("bad cue subset `{part}` (use T, S, D, T+S, ...)"))
        })
        .collect::<Result<_>>()?;

    let mut csv_text = String::from("class,column,cues,likelihood,bits,cumulative_bits\n");
    for cue in &subsets {
        let table = likelihood_table::<f64>(&refset, *cue)?;
        println!("=== cue subset {}", cue.tag());
        for profile in &table {
            for c in 0..profile.per_column_likelihood.len() {
                csv_text.push_str(&format!(
                    "{},{},{},{:.4},{:.4},{:.4}\n",
                    profile.class,
                    c + 1,
                    cue.tag(),
                    profile.per_column_likelihood[c],
                    profile.per_column_bits[c],
                    profile.cumulative_bits[c]
                ));
            }
        }
        println!("{:<12} {:>8} {:>8} {:>10}", "class", "column", "total", "fraction");
        for (class, hit) in earliest_disambiguation::<f64>(&refset, *cue)? {
            let total = refset
                .matrices()
                .iter()
                .find(|m| m.label == class)
                .map(|m| m.column_count())
                .unwrap_or(0);
            match hit {
                Some((col, frac)) => {
                    println!("{class:<12} {col:>8} {total:>8} {frac:>10.3}")
                }
                None => println!("{class:<12} {:>8} {total:>8} {:>10}", "-", "-"),
            }
        }
    }

    if combine {
        println!("=== combined bits of {}", cues);
        let tables: Vec<Vec<esec_core::InfoProfile<f64>>> = subsets
            .iter()
            .map(|cue| likelihood_table::<f64>(&refset, *cue))
            .collect::<esec_core::Result<_>>()?;
        for (i, class) in refset.class_labels().iter().enumerate() {
            let parts: Vec<&esec_core::InfoProfile<f64>> =
                tables.iter().map(|t| &t[i]).collect();
            let combined = combine_cues(&parts)?;
            let bits: Vec<String> = combined
                .per_column_bits
                .iter()
                .map(|b| format!("{b:.2}"))
                .collect();
            println!("{class:<12} [{}]", bits.join(" "));
            for c in 0..combined.per_column_bits.len() {
                csv_text.push_str(&format!(
                    "{},{},{},{:.4},{:.4},{:.4}\n",
                    class,
                    c + 1,
                    combined.cues.tag(),
                    combined.per_column_likelihood[c],
                    combined.per_column_bits[c],
                    combined.cumulative_bits[c]
                ));
            }
        }
    }

    if let Some(path) = csv {
        std::fs::write(path, csv_text)?;
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}
