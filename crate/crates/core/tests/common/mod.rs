//! Brute-force relation-rule oracles and randomized scene inputs shared
//! by the oracle-equivalence and acceptance test targets. These stay
//! independent of the library's relation code paths.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use esec_core::relations::{Dsr, RelationConfig, Ssr, Tnr};
use esec_core::{Cube, CubeStatus, Vec3};

pub type Box3 = ([f64; 3], [f64; 3]); // (min, max)

pub fn corners(c: &Cube<f64>) -> Box3 {
    let lo = c.min_corner();
    let hi = c.max_corner();
    ([lo.x, lo.y, lo.z], [hi.x, hi.y, hi.z])
}

pub fn touch_oracle(a: &Cube<f64>, b: &Cube<f64>, eps: f64) -> bool {
    let (al, ah) = corners(a);
    let (bl, bh) = corners(b);
    (0..3).all(|i| al[i] - bh[i] <= eps && bl[i] - ah[i] <= eps)
}

pub fn center_dist(a: &Cube<f64>, b: &Cube<f64>) -> f64 {
    let d = a.center.sub(b.center);
    d.norm()
}

pub fn tnr_oracle(a: &Cube<f64>, b: &Cube<f64>, cfg: &RelationConfig<f64>) -> Tnr {
    if a.status == CubeStatus::Destroyed || b.status == CubeStatus::Destroyed {
        return Tnr::Destroyed;
    }
    if a.status == CubeStatus::Absent || b.status == CubeStatus::Absent {
        return Tnr::Absent;
    }
    if touch_oracle(a, b, cfg.eps_touch) {
        Tnr::Touch
    } else {
        Tnr::NoTouch
    }
}

/// Containment: x/z inclusion with the top surface inside the host's
/// vertical span (strict at the bottom).
pub fn inside_oracle(a: &Cube<f64>, b: &Cube<f64>) -> bool {
    let (al, ah) = corners(a);
    let (bl, bh) = corners(b);
    bl[0] <= al[0]
        && ah[0] <= bh[0]
        && bl[2] <= al[2]
        && ah[2] <= bh[2]
        && bl[1] < ah[1]
        && ah[1] <= bh[1]
}

pub fn ssr_oracle(a: &Cube<f64>, b: &Cube<f64>, cfg: &RelationConfig<f64>) -> Ssr {
    if a.status == CubeStatus::Destroyed || b.status == CubeStatus::Destroyed {
        return Ssr::Destroyed;
    }
    if a.status == CubeStatus::Absent || b.status == CubeStatus::Absent {
        return Ssr::Absent;
    }
    if center_dist(a, b) > cfg.far_cutoff {
        return Ssr::Null;
    }
    let in_ab = inside_oracle(a, b);
    let in_ba = inside_oracle(b, a);
    if in_ab && in_ba {
        let (va, vb) = (
            a.extents.x * a.extents.y * a.extents.z,
            b.extents.x * b.extents.y * b.extents.z,
        );
        return if va < vb || (va == vb && a.id < b.id) {
            Ssr::Inside
        } else {
            Ssr::Surround
        };
    }
    if in_ab {
        return Ssr::Inside;
    }
    if in_ba {
        return Ssr::Surround;
    }

    let (al, ah) = corners(a);
    let (bl, bh) = corners(b);
    let not_disjoint = |axis: usize| !(al[axis] > bh[axis] || bl[axis] > ah[axis]);
    let overlap = |axis: usize| (ah[axis].min(bh[axis]) - al[axis].max(bl[axis])).max(0.0);

    // (axis, positive side, perpendicular axes), in tie-break order:
    // vertical candidates first, then x, then z.
    let candidates = [
        (1usize, true, (0usize, 2usize)),  // above
        (1, false, (0, 2)),                // below
        (0, false, (1, 2)),                // left
        (0, true, (1, 2)),                 // right
        (2, false, (0, 1)),                // front
        (2, true, (0, 1)),                 // back
    ];
    let mut best: Option<(usize, f64)> = None;
    for (i, (axis, positive, (p, q))) in candidates.into_iter().enumerate() {
        let fires = if positive {
            al[axis] > bl[axis] && ah[axis] > bh[axis]
        } else {
            al[axis] < bl[axis] && ah[axis] < bh[axis]
        };
        if !fires || !not_disjoint(p) || !not_disjoint(q) {
            continue;
        }
        let shadow = overlap(p) * overlap(q);
        if best.map_or(true, |(_, s)| shadow > s) {
            best = Some((i, shadow));
        }
    }
    let touch = touch_oracle(a, b, cfg.eps_touch);
    match best {
        Some((0, _)) => {
            if touch {
                Ssr::Top
            } else {
                Ssr::Above
            }
        }
        Some((1, _)) => {
            if touch {
                Ssr::Bottom
            } else {
                Ssr::Below
            }
        }
        Some(_) => {
            if touch {
                Ssr::AroundTouch
            } else {
                Ssr::Around
            }
        }
        None => Ssr::Null,
    }
}

pub fn dsr_oracle(
    hist_a: &[Cube<f64>],
    hist_b: &[Cube<f64>],
    cfg: &RelationConfig<f64>,
) -> Dsr {
    let n = hist_a.len();
    let (na, nb) = (&hist_a[n - 1], &hist_b[n - 1]);
    if na.status == CubeStatus::Destroyed || nb.status == CubeStatus::Destroyed {
        return Dsr::Destroyed;
    }
    if na.status == CubeStatus::Absent || nb.status == CubeStatus::Absent {
        return Dsr::Absent;
    }
    let mut start = n - 1;
    while start > 0
        && hist_a[start - 1].status == CubeStatus::Present
        && hist_b[start - 1].status == CubeStatus::Present
    {
        start -= 1;
    }
    let (ra, rb) = (&hist_a[start], &hist_b[start]);
    let d_new = center_dist(na, nb);
    if d_new > cfg.far_cutoff {
        return Dsr::NullDynamic;
    }
    let d_ref = center_dist(ra, rb);
    if d_ref - d_new > cfg.xi_dyn {
        return Dsr::GettingClose;
    }
    if d_new - d_ref > cfg.xi_dyn {
        return Dsr::MovingApart;
    }
    let t_ref = touch_oracle(ra, rb, cfg.eps_touch);
    let t_new = touch_oracle(na, nb, cfg.eps_touch);
    let moved = |hist: &[Cube<f64>]| {
        let origin = hist[start].center;
        hist[start + 1..]
            .iter()
            .any(|c| c.center.sub(origin).norm() > cfg.eps_move)
    };
    if t_ref && t_new {
        return match (moved(hist_a), moved(hist_b)) {
            (true, true) => Dsr::MoveTogether,
            (false, false) => Dsr::HaltTogether,
            _ => Dsr::FixedMoveTogether,
        };
    }
    if !t_ref && !t_new && (d_new - d_ref).abs() < cfg.xi_stable {
        return Dsr::Stable;
    }
    Dsr::NullDynamic
}

pub fn random_cube(rng: &mut ChaCha8Rng, id: &str) -> Cube<f64> {
    Cube::new(
        id,
        Vec3::new(
            rng.gen_range(-0.6..0.6),
            rng.gen_range(0.0..0.6),
            rng.gen_range(-0.6..0.6),
        ),
        Vec3::new(
            rng.gen_range(0.01..0.25),
            rng.gen_range(0.01..0.25),
            rng.gen_range(0.01..0.25),
        ),
    )
}

/// Random pair plus touching-biased and stacked-biased variants so every
/// rule branch is exercised.
pub fn random_pair(rng: &mut ChaCha8Rng) -> (Cube<f64>, Cube<f64>) {
    let a = random_cube(rng, "a");
    let mut b = random_cube(rng, "b");
    match rng.gen_range(0..4) {
        // Abutting on x within tolerance.
        0 => {
            b.center = Vec3::new(
                a.center.x + a.extents.x + b.extents.x + rng.gen_range(-0.01..0.01),
                a.center.y + rng.gen_range(-0.05..0.05),
                a.center.z + rng.gen_range(-0.05..0.05),
            );
        }
        // Stacked.
        1 => {
            b.center = Vec3::new(
                a.center.x + rng.gen_range(-0.03..0.03),
                a.center.y + a.extents.y + b.extents.y + rng.gen_range(-0.005..0.01),
                a.center.z + rng.gen_range(-0.03..0.03),
            );
        }
        // Contained.
        2 => {
            b.extents = a.extents.scale(rng.gen_range(0.2..0.8));
            b.center = Vec3::new(
                a.center.x,
                a.center.y - a.extents.y + b.extents.y + rng.gen_range(0.0..0.05),
                a.center.z,
            );
        }
        _ => {}
    }
    (a, b)
}

