//! Structural checks on the synthesized corpus: role casts, durations,
//! universal start columns, class signatures and determinism.

use std::collections::HashMap;

use esec_core::encoder::{assign_roles, encode, CueSet, EncodeConfig};
use esec_core::generator::{generate, generate_corpus, ActionClass};
use esec_core::relations::{Dsr, RelationConfig};
use esec_core::{load_scenario, save_scenario, CubeStatus};

fn default_encode() -> EncodeConfig<f64> {
    EncodeConfig::default()
}

#[test]
fn every_scenario_validates_encodes_and_keeps_duration_in_range() {
    for class in ActionClass::ALL {
        let (_, _, lo, hi) = class.duration_stats();
        for seed in 0..8u64 {
            let scenario = generate::<f64>(class, 100 + seed);
            scenario.validate().expect("structural invariants");
            let duration = scenario.duration();
            assert!(
                duration >= lo - 0.5 && duration <= hi + 0.5,
                "{} seed {seed}: duration {duration:.1}s outside [{lo}, {hi}]",
                class.label()
            );
            let m = encode(&scenario, &default_encode()).expect("encodes");
            assert!(m.column_count() >= 2, "{}: too few columns", class.label());
            // Tight compression: consecutive columns always differ.
            for c in 1..m.column_count() {
                assert_ne!(m.columns[c - 1], m.columns[c]);
            }
        }
    }
}

#[test]
fn role_casts_match_the_scripts() {
    let cfg = RelationConfig::default();
    let expected: [(ActionClass, &[&str]); 10] = [
        (ActionClass::Chop, &["tool", "target", "piece_a"]),
        (ActionClass::Cut, &["tool", "target", "piece_a"]),
        (ActionClass::Stir, &["tool", "bowl"]),
        (ActionClass::Hide, &["cover", "target"]),
        (ActionClass::Uncover, &["cover", "target"]),
        (ActionClass::PutOnTop, &["block", "base"]),
        (ActionClass::TakeDown, &["block", "base"]),
        (ActionClass::Push, &["block"]),
        (ActionClass::Lay, &["block"]),
        (ActionClass::Shake, &["block"]),
    ];
    for (class, cast) in expected {
        for seed in 0..6u64 {
            let scenario = generate::<f64>(class, 300 + seed);
            let roles = assign_roles(&scenario, &cfg).expect("an action is detected");
            for (slot, want) in cast.iter().enumerate() {
                let got = roles.objects[slot]
                    .as_ref()
                    .map(|(id, _)| id.as_str())
                    .unwrap_or("<none>");
                assert_eq!(
                    got,
                    *want,
                    "{} seed {seed}: object {} bound to {got}",
                    class.label(),
                    slot + 1
                );
            }
            for slot in cast.len()..3 {
                assert!(
                    roles.objects[slot].is_none(),
                    "{} seed {seed}: unexpected extra role",
                    class.label()
                );
            }
            // Distractors never take part.
            for (id, _) in roles.objects.iter().flatten() {
                assert!(!id.starts_with("distractor"));
            }
            // Binding order is strictly increasing in time.
            let frames: Vec<usize> = roles.objects.iter().flatten().map(|(_, f)| *f).collect();
            assert!(frames.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn first_two_columns_are_universal() {
    let mut start_codes = Vec::new();
    for class in ActionClass::ALL {
        for seed in 0..4u64 {
            let m = encode(&generate::<f64>(class, 700 + seed), &default_encode()).unwrap();
            let c1 = m.column_code(0, CueSet::ALL).unwrap();
            let c2 = m.column_code(1, CueSet::ALL).unwrap();
            start_codes.push((class.label(), c1, c2));
        }
    }
    let (first_c1, first_c2) = (&start_codes[0].1, &start_codes[0].2);
    for (label, c1, c2) in &start_codes {
        assert_eq!(c1, first_c1, "{label}: start column differs");
        assert_eq!(c2, first_c2, "{label}: second column differs");
    }
}

#[test]
fn put_on_top_leaves_object_three_undefined() {
    for seed in 0..6u64 {
        let m = encode(
            &generate::<f64>(ActionClass::PutOnTop, 800 + seed),
            &default_encode(),
        )
        .unwrap();
        for col in &m.columns {
            for row in [3usize, 6, 8, 9] {
                assert_eq!(
                    col[row],
                    esec_core::RelationTriple::UNDEFINED,
                    "object-3 row {row} must stay undefined"
                );
            }
        }
    }
}

#[test]
fn cut_and_chop_differ_in_their_dynamic_signature() {
    let cut = encode(&generate::<f64>(ActionClass::Cut, 900), &default_encode()).unwrap();
    let chop = encode(&generate::<f64>(ActionClass::Chop, 901), &default_encode()).unwrap();
    // Sustained sliding contact appears on the tool-target pair only in
    // the cut; the chop impact shows up as a fast approach instead.
    let cut_fmt = cut.columns.iter().any(|c| c[7].dsr == Dsr::FixedMoveTogether);
    let chop_fmt = chop.columns.iter().any(|c| c[7].dsr == Dsr::FixedMoveTogether);
    let chop_gc = chop
        .columns
        .iter()
        .any(|c| c[7].dsr == Dsr::GettingClose && c[7].tnr == esec_core::Tnr::Touch);
    assert!(cut_fmt, "cut must saw in sustained contact");
    assert!(!chop_fmt, "chop must not saw");
    assert!(chop_gc, "chop must strike into contact");
}

#[test]
fn shake_oscillation_produces_alternating_close_apart_columns() {
    for seed in 0..4u64 {
        let m = encode(&generate::<f64>(ActionClass::Shake, 950 + seed), &default_encode()).unwrap();
        let symbols: Vec<Dsr> = m
            .columns
            .iter()
            .map(|c| c[4].dsr) // ground vs held block
            .filter(|d| matches!(d, Dsr::GettingClose | Dsr::MovingApart))
            .collect();
        assert!(
            symbols.len() >= 2,
            "shake needs at least two oscillation columns, got {symbols:?}"
        );
        assert!(symbols.contains(&Dsr::MovingApart));
        assert!(symbols.contains(&Dsr::GettingClose));
    }
}

#[test]
fn physical_sanity_no_ground_penetration_and_rigid_grasp() {
    for class in [ActionClass::Cut, ActionClass::Shake, ActionClass::TakeDown] {
        let scenario = generate::<f64>(class, 555);
        let hand_track: Vec<_> = scenario
            .frames
            .iter()
            .map(|f| f.cube("hand").unwrap().clone())
            .collect();
        for frame in &scenario.frames {
            for cube in &frame.cubes {
                if cube.id == "ground" || !cube.is_present() {
                    continue;
                }
                let bottom = cube.center.y - cube.extents.y;
                assert!(bottom > -0.01, "{} sinks into the ground", cube.id);
            }
        }
        // While the hand moves with something touching it, their offset
        // stays constant (rigid grasp).
        let cfg = RelationConfig::default();
        let roles = assign_roles(&scenario, &cfg).unwrap();
        let obj1 = roles.objects[0].as_ref().unwrap().0.clone();
        let mut last_offset: Option<(f64, f64, f64)> = None;
        for (f, frame) in scenario.frames.iter().enumerate().skip(1) {
            let hand = &hand_track[f];
            let obj = frame.cube(&obj1).unwrap();
            if !obj.is_present() {
                continue;
            }
            let moved = hand.center.sub(hand_track[f - 1].center).norm() > 1e-9;
            let touching = esec_core::touching(hand, obj, cfg.eps_touch).unwrap();
            if moved && touching {
                let offset = (
                    hand.center.x - obj.center.x,
                    hand.center.y - obj.center.y,
                    hand.center.z - obj.center.z,
                );
                if let Some(prev) = last_offset {
                    let drift = ((offset.0 - prev.0).powi(2)
                        + (offset.1 - prev.1).powi(2)
                        + (offset.2 - prev.2).powi(2))
                    .sqrt();
                    assert!(drift < 1e-9, "grasped object drifts from the hand");
                }
                last_offset = Some(offset);
            } else {
                last_offset = None;
            }
        }
    }
}

#[test]
fn corpus_is_deterministic_in_the_seed() {
    let a = generate_corpus::<f64>(2, 99);
    let b = generate_corpus::<f64>(2, 99);
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.seed, y.seed);
        assert_eq!(x.scenario, y.scenario);
    }
}

#[test]
fn generated_scenarios_roundtrip_through_the_file_format() {
    for class in [ActionClass::Chop, ActionClass::Uncover, ActionClass::Lay] {
        let scenario = generate::<f64>(class, 77);
        let mut buf = Vec::new();
        save_scenario(&scenario, &mut buf).unwrap();
        let loaded = load_scenario::<f64, _>(&buf[..]).unwrap();
        assert_eq!(scenario, loaded, "{}", class.label());
        assert_eq!(loaded.label, class.label());
    }
}

#[test]
fn column_counts_stay_within_script_bounds() {
    let bounds: HashMap<&str, (usize, usize)> = [
        ("chop", (11, 15)),
        ("cut", (12, 15)),
        ("hide", (10, 15)),
        ("uncover", (8, 12)),
        ("put_on_top", (6, 10)),
        ("take_down", (7, 12)),
        ("lay", (8, 12)),
        ("push", (6, 9)),
        ("shake", (12, 17)),
        ("stir", (11, 17)),
    ]
    .into();
    for class in ActionClass::ALL {
        let (lo, hi) = bounds[class.label()];
        for seed in 0..12u64 {
            let m = encode(&generate::<f64>(class, 1300 + seed), &default_encode()).unwrap();
            let n = m.column_count();
            assert!(
                n >= lo && n <= hi,
                "{} seed {seed}: {n} columns outside [{lo}, {hi}]",
                class.label()
            );
        }
    }
}

#[test]
fn hidden_target_goes_absent_and_split_target_is_destroyed() {
    let hide = generate::<f64>(ActionClass::Hide, 1400);
    let last = hide.frames.last().unwrap();
    assert_eq!(last.cube("target").unwrap().status, CubeStatus::Absent);

    let cut = generate::<f64>(ActionClass::Cut, 1401);
    let last = cut.frames.last().unwrap();
    assert_eq!(last.cube("target").unwrap().status, CubeStatus::Destroyed);
    assert_eq!(last.cube("piece_a").unwrap().status, CubeStatus::Present);
    assert_eq!(last.cube("piece_b").unwrap().status, CubeStatus::Present);
}
