//! Property tests for the raw geometry queries, checked against naive
//! per-axis oracles.

use proptest::prelude::*;

use esec_core::{distance, shadow_area, touching, Cube, Direction, Vec3};

fn cube_strategy() -> impl Strategy<Value = Cube<f64>> {
    (
        (-1.0f64..1.0, 0.0f64..1.0, -1.0f64..1.0),
        (0.01f64..0.4, 0.01f64..0.4, 0.01f64..0.4),
    )
        .prop_map(|((x, y, z), (ex, ey, ez))| {
            Cube::new("c", Vec3::new(x, y, z), Vec3::new(ex, ey, ez))
        })
}

/// Oracle: interval overlap-or-abutment per axis, written directly from
/// min/max corners.
fn touching_oracle(a: &Cube<f64>, b: &Cube<f64>, eps: f64) -> bool {
    let (amin, amax) = (a.min_corner(), a.max_corner());
    let (bmin, bmax) = (b.min_corner(), b.max_corner());
    let overlap = |lo1: f64, hi1: f64, lo2: f64, hi2: f64| lo1 <= hi2 + eps && lo2 <= hi1 + eps;
    overlap(amin.x, amax.x, bmin.x, bmax.x)
        && overlap(amin.y, amax.y, bmin.y, bmax.y)
        && overlap(amin.z, amax.z, bmin.z, bmax.z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn touching_is_symmetric(a in cube_strategy(), b in cube_strategy()) {
        let eps = 0.005;
        prop_assert_eq!(touching(&a, &b, eps).unwrap(), touching(&b, &a, eps).unwrap());
    }

    #[test]
    fn distance_triangle_inequality(
        a in cube_strategy(),
        b in cube_strategy(),
        c in cube_strategy()
    ) {
        let ab = distance(&a, &b).unwrap();
        let bc = distance(&b, &c).unwrap();
        let ac = distance(&a, &c).unwrap();
        prop_assert!(ac <= ab + bc + 1e-12);
    }

    #[test]
    fn shadow_mirror_under_opposite_direction(a in cube_strategy(), b in cube_strategy()) {
        for dir in [
            Direction::Left,
            Direction::Right,
            Direction::Front,
            Direction::Back,
            Direction::Above,
            Direction::Below,
        ] {
            let forward = shadow_area(&a, &b, dir).unwrap();
            let backward = shadow_area(&b, &a, dir.opposite()).unwrap();
            prop_assert!((forward - backward).abs() < 1e-12);
        }
    }
}

#[test]
fn touching_matches_oracle_on_many_pairs() {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let eps = 0.005;
    let mut cube = |rng: &mut rand_chacha::ChaCha8Rng| {
        Cube::new(
            "c",
            Vec3::new(
                rng.gen_range(-0.5..0.5),
                rng.gen_range(0.0..0.5),
                rng.gen_range(-0.5..0.5),
            ),
            Vec3::new(
                rng.gen_range(0.01..0.3),
                rng.gen_range(0.01..0.3),
                rng.gen_range(0.01..0.3),
            ),
        )
    };
    let mut touches = 0usize;
    for _ in 0..12_000 {
        let a = cube(&mut rng);
        let mut b = cube(&mut rng);
        // Bias a slice of cases toward near-abutment on x.
        if rng.gen_bool(0.3) {
            let gap = rng.gen_range(-0.01..0.01);
            b.center.x = a.center.x + a.extents.x + b.extents.x + gap;
            b.center.y = a.center.y;
            b.center.z = a.center.z;
        }
        let fast = touching(&a, &b, eps).unwrap();
        let slow = touching_oracle(&a, &b, eps);
        assert_eq!(fast, slow, "disagreement for {a:?} vs {b:?}");
        touches += fast as usize;
    }
    // The biased slice guarantees both outcomes are exercised.
    assert!(touches > 1000 && touches < 11_000);
}
