//! Scratch probe: prints encoded matrices per class for tuning.
//! Run: cargo test -p esec-core --test probe -- --nocapture

use esec_core::encoder::{encode, EncodeConfig};
use esec_core::generator::{generate, ActionClass};

#[test]
fn print_class_matrices() {
    for class in ActionClass::ALL {
        let scenario = generate::<f64>(class, 7);
        let m = encode(&scenario, &EncodeConfig::default()).unwrap();
        println!(
            "==== {} ({} frames, {:.1}s) -> {} columns",
            class.label(),
            scenario.frames.len(),
            scenario.duration(),
            m.column_count()
        );
        println!("{}", m.render_table());
    }
}

#[test]
fn cut_signatures() {
    use esec_core::encoder::{pair_label, RelationKind};
    for seed in 1000..1012u64 {
        let scenario = generate::<f64>(ActionClass::Cut, seed);
        let m = encode(&scenario, &EncodeConfig::default()).unwrap();
        let mut sigs = Vec::new();
        for c in 1..m.column_count() {
            let mut changed = Vec::new();
            for pair in 0..10 {
                let (a, b) = (&m.columns[c - 1][pair], &m.columns[c][pair]);
                for (kind, tag) in [
                    (RelationKind::Tnr, "T"),
                    (RelationKind::Ssr, "S"),
                    (RelationKind::Dsr, "D"),
                ] {
                    let cell = |t: &esec_core::RelationTriple| match kind {
                        RelationKind::Tnr => t.tnr.as_str(),
                        RelationKind::Ssr => t.ssr.as_str(),
                        RelationKind::Dsr => t.dsr.as_str(),
                    };
                    if cell(a) != cell(b) {
                        changed.push(format!("{tag}({})={}", pair_label(pair), cell(b)));
                    }
                }
            }
            sigs.push(format!("[{}]", changed.join(" ")));
        }
        println!("cut seed {seed} ({} cols):", m.column_count());
        for (i, s) in sigs.iter().enumerate() {
            println!("   c{} @{} {}", i + 2, m.column_frames[i + 1], s);
        }
    }
}

#[test]
fn canonical_disambiguation_table() {
    use esec_core::encoder::CueSet;
    use esec_core::info::{earliest_disambiguation, ReferenceSet};
    use std::collections::HashMap;

    // Mode matrix per class over 30 samples.
    let mut canon = Vec::new();
    for class in ActionClass::ALL {
        let mut buckets: HashMap<String, (usize, esec_core::ESecMatrix)> = HashMap::new();
        for seed in 0..30u64 {
            let scenario = generate::<f64>(class, 5000 + seed);
            let m = encode(&scenario, &EncodeConfig::default()).unwrap();
            let key: Vec<String> = (0..m.column_count())
                .map(|c| m.column_code(c, CueSet::ALL).unwrap())
                .collect();
            let key = key.join("|");
            buckets
                .entry(key)
                .and_modify(|e| e.0 += 1)
                .or_insert((1, m));
        }
        let (count, m) = buckets.into_values().max_by_key(|(n, _)| *n).unwrap();
        println!(
            "{}: mode share {}/30, {} columns",
            class.label(),
            count,
            m.column_count()
        );
        canon.push(m);
    }
    let refset = ReferenceSet::new(canon).unwrap();
    for (cues, name) in [
        (CueSet::ALL, "full"),
        (CueSet::TNR, "T"),
        (CueSet::SSR, "S"),
        (CueSet::DSR, "D"),
    ] {
        println!("--- first unique column under {name}:");
        for (class, hit) in earliest_disambiguation::<f64>(&refset, cues).unwrap() {
            let total = refset
                .matrices()
                .iter()
                .find(|m| m.label == class)
                .unwrap()
                .column_count();
            match hit {
                Some((col, frac)) => println!(
                    "  {class}: col {col}/{total} frac {frac:.2} (P = {:.1})",
                    (1.0 - col as f64 / total as f64) * 100.0
                ),
                None => println!("  {class}: never"),
            }
        }
    }
}

#[test]
fn loo_evaluation() {
    use esec_core::prediction::{evaluate_corpus, DecisionRule, Protocol, TrainingLibrary};
    let start = std::time::Instant::now();
    let mut samples = Vec::new();
    for entry in esec_core::generator::generate_corpus::<f64>(30, 7) {
        samples.push(encode(&entry.scenario, &EncodeConfig::default()).unwrap());
    }
    let _ = ActionClass::ALL;
    println!("generate+encode: {:?}", start.elapsed());
    let lib = TrainingLibrary::from_samples(samples).unwrap();
    for (rule, name) in [
        (DecisionRule::Uniqueness, "uniqueness"),
        (DecisionRule::Margin { tau: 5.0 }, "margin"),
    ] {
        let t = std::time::Instant::now();
        let eval = evaluate_corpus::<f64>(&lib, Protocol::LeaveOneOut, rule).unwrap();
        println!(
            "--- {name}: overall P {:.1}, accuracy {:.3}, took {:?}",
            eval.overall_power,
            eval.full_observation_accuracy,
            t.elapsed()
        );
        for (k, label) in eval.class_labels.iter().enumerate() {
            println!(
                "  {label}: P {:.1} fired {:.2}",
                eval.per_class_power[k], eval.fired_fraction[k]
            );
        }
    }
}

#[test]
fn column_count_stability() {
    for class in ActionClass::ALL {
        let mut counts = std::collections::HashMap::new();
        for seed in 0..30u64 {
            let scenario = generate::<f64>(class, 1000 + seed);
            let m = encode(&scenario, &EncodeConfig::default()).unwrap();
            *counts.entry(m.column_count()).or_insert(0usize) += 1;
        }
        let mut sorted: Vec<_> = counts.into_iter().collect();
        sorted.sort();
        println!("{}: column counts {:?}", class.label(), sorted);
    }
}
