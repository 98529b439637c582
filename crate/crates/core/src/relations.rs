//! Touching, static and dynamic spatial relations between cube pairs.
//!
//! Three symbol families are extracted per object pair:
//!
//! * TNR: touching / non-touching,
//! * SSR: view-point invariant static arrangement (above, around, inside...),
//! * DSR: motion relation over a short frame window (moving together,
//!   getting close, stable...).
//!
//! `U` is reserved for pairs whose object role has not been assigned yet
//! and is only ever injected by the encoder. `A` and `X` propagate from
//! absent and destroyed cubes.

use crate::error::{EsecError, Result};
use crate::scalar::Scalar;
use crate::scene::{distance, shadow_area, touching_unchecked, Cube, CubeStatus, Direction};

/// Touching / non-touching relation symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tnr {
    Touch,
    NoTouch,
    Undefined,
    Absent,
    Destroyed,
}

/// Static spatial relation symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ssr {
    Above,
    Below,
    Around,
    Top,
    Bottom,
    AroundTouch,
    Inside,
    Surround,
    Null,
    Undefined,
    Absent,
    Destroyed,
}

/// Dynamic spatial relation symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dsr {
    MoveTogether,
    HaltTogether,
    FixedMoveTogether,
    GettingClose,
    MovingApart,
    Stable,
    NullDynamic,
    Undefined,
    Absent,
    Destroyed,
}

impl Tnr {
    pub fn as_str(self) -> &'static str {
        match self {
            Tnr::Touch => "T",
            Tnr::NoTouch => "N",
            Tnr::Undefined => "U",
            Tnr::Absent => "A",
            Tnr::Destroyed => "X",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "T" => Tnr::Touch,
            "N" => Tnr::NoTouch,
            "U" => Tnr::Undefined,
            "A" => Tnr::Absent,
            "X" => Tnr::Destroyed,
            _ => return None,
        })
    }
}

impl Ssr {
    pub fn as_str(self) -> &'static str {
        match self {
            Ssr::Above => "Ab",
            Ssr::Below => "Be",
            Ssr::Around => "Ar",
            Ssr::Top => "To",
            Ssr::Bottom => "Bo",
            Ssr::AroundTouch => "ArT",
            Ssr::Inside => "In",
            Ssr::Surround => "Sa",
            Ssr::Null => "O",
            Ssr::Undefined => "U",
            Ssr::Absent => "A",
            Ssr::Destroyed => "X",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "Ab" => Ssr::Above,
            "Be" => Ssr::Below,
            "Ar" => Ssr::Around,
            "To" => Ssr::Top,
            "Bo" => Ssr::Bottom,
            "ArT" => Ssr::AroundTouch,
            "In" => Ssr::Inside,
            "Sa" => Ssr::Surround,
            "O" => Ssr::Null,
            "U" => Ssr::Undefined,
            "A" => Ssr::Absent,
            "X" => Ssr::Destroyed,
            _ => return None,
        })
    }
}

impl Dsr {
    pub fn as_str(self) -> &'static str {
        match self {
            Dsr::MoveTogether => "MT",
            Dsr::HaltTogether => "HT",
            Dsr::FixedMoveTogether => "FMT",
            Dsr::GettingClose => "GC",
            Dsr::MovingApart => "MA",
            Dsr::Stable => "S",
            Dsr::NullDynamic => "Q",
            Dsr::Undefined => "U",
            Dsr::Absent => "A",
            Dsr::Destroyed => "X",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "MT" => Dsr::MoveTogether,
            "HT" => Dsr::HaltTogether,
            "FMT" => Dsr::FixedMoveTogether,
            "GC" => Dsr::GettingClose,
            "MA" => Dsr::MovingApart,
            "S" => Dsr::Stable,
            "Q" => Dsr::NullDynamic,
            "U" => Dsr::Undefined,
            "A" => Dsr::Absent,
            "X" => Dsr::Destroyed,
            _ => return None,
        })
    }
}

/// The (TNR, SSR, DSR) symbols of one object pair at one event column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelationTriple {
    pub tnr: Tnr,
    pub ssr: Ssr,
    pub dsr: Dsr,
}

impl RelationTriple {
    pub const UNDEFINED: RelationTriple = RelationTriple {
        tnr: Tnr::Undefined,
        ssr: Ssr::Undefined,
        dsr: Dsr::Undefined,
    };
}

impl std::fmt::Display for RelationTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({},{},{})",
            self.tnr.as_str(),
            self.ssr.as_str(),
            self.dsr.as_str()
        )
    }
}

/// Thresholds governing relation extraction.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationConfig<T = f64> {
    /// Face-contact tolerance in meters.
    pub eps_touch: T,
    /// Distance change over the window that triggers getting-close /
    /// moving-apart.
    pub xi_dyn: T,
    /// Distance change under which an untouched pair counts as stable.
    pub xi_stable: T,
    /// History window length in frames.
    pub theta: usize,
    /// Beyond this center distance a pair is nullified (static O, dynamic Q).
    pub far_cutoff: T,
    /// Center displacement over the window above which a cube "moved".
    pub eps_move: T,
}

impl<T: Scalar> Default for RelationConfig<T> {
    fn default() -> Self {
        Self {
            eps_touch: T::from_f64_c(0.005),
            xi_dyn: T::from_f64_c(0.1),
            xi_stable: T::from_f64_c(0.01),
            theta: 10,
            far_cutoff: T::from_f64_c(1.0),
            eps_move: T::from_f64_c(0.005),
        }
    }
}

fn status_override(a: CubeStatus, b: CubeStatus) -> Option<(Tnr, Ssr, Dsr)> {
    if a == CubeStatus::Destroyed || b == CubeStatus::Destroyed {
        return Some((Tnr::Destroyed, Ssr::Destroyed, Dsr::Destroyed));
    }
    if a == CubeStatus::Absent || b == CubeStatus::Absent {
        return Some((Tnr::Absent, Ssr::Absent, Dsr::Absent));
    }
    None
}

/// Touching / non-touching relation symbol for a cube pair.
pub fn tnr<T: Scalar>(a: &Cube<T>, b: &Cube<T>, cfg: &RelationConfig<T>) -> Tnr {
    if let Some((t, _, _)) = status_override(a.status, b.status) {
        return t;
    }
    if touching_unchecked(a, b, cfg.eps_touch) {
        Tnr::Touch
    } else {
        Tnr::NoTouch
    }
}

/// `a` lies inside `b`: contained in x and z, with `a`'s top surface
/// within `b`'s vertical span. The lower bound is strict so that flush
/// stacking with equal footprints does not degenerate into containment.
fn inside<T: Scalar>(a: &Cube<T>, b: &Cube<T>) -> bool {
    let (ax0, ax1) = a.interval(0);
    let (bx0, bx1) = b.interval(0);
    let (az0, az1) = a.interval(2);
    let (bz0, bz1) = b.interval(2);
    let (_, ay1) = a.interval(1);
    let (by0, by1) = b.interval(1);
    bx0 <= ax0 && ax1 <= bx1 && bz0 <= az0 && az1 <= bz1 && by0 < ay1 && ay1 <= by1
}

fn directional<T: Scalar>(a: &Cube<T>, b: &Cube<T>, dir: Direction) -> bool {
    let axis = dir.axis();
    let (a0, a1) = a.interval(axis);
    let (b0, b1) = b.interval(axis);
    match dir {
        // Positive side of the axis: y up, x right, z back.
        Direction::Right | Direction::Above | Direction::Back => a0 > b0 && a1 > b1,
        Direction::Left | Direction::Below | Direction::Front => a0 < b0 && a1 < b1,
    }
}

/// A directional candidate is suppressed when the projections onto either
/// perpendicular axis are strictly disjoint.
fn exception_holds<T: Scalar>(a: &Cube<T>, b: &Cube<T>, dir: Direction) -> bool {
    let (p, q) = dir.perpendicular_axes();
    for axis in [p, q] {
        let (a0, a1) = a.interval(axis);
        let (b0, b1) = b.interval(axis);
        if a0 > b1 || b0 > a1 {
            return false;
        }
    }
    true
}

/// Candidate order doubles as the tie-break when shadow areas are equal;
/// vertical relations win over horizontal ones. The order is mirror
/// consistent: swapping the pair maps each entry to its opposite.
const CANDIDATE_ORDER: [Direction; 6] = [
    Direction::Above,
    Direction::Below,
    Direction::Left,
    Direction::Right,
    Direction::Front,
    Direction::Back,
];

/// Static spatial relation symbol for a cube pair.
pub fn ssr<T: Scalar>(a: &Cube<T>, b: &Cube<T>, cfg: &RelationConfig<T>) -> Ssr {
    if let Some((_, s, _)) = status_override(a.status, b.status) {
        return s;
    }
    let dist = distance(a, b).expect("both cubes present");
    if dist > cfg.far_cutoff {
        return Ssr::Null;
    }
    let touch = touching_unchecked(a, b, cfg.eps_touch);

    let in_ab = inside(a, b);
    let in_ba = inside(b, a);
    if in_ab || in_ba {
        if in_ab && in_ba {
            // Mutual containment happens for equal footprints with flush
            // tops; the smaller box is the one inside.
            let (va, vb) = (a.volume(), b.volume());
            return if va < vb || (va == vb && a.id < b.id) {
                Ssr::Inside
            } else {
                Ssr::Surround
            };
        }
        return if in_ab { Ssr::Inside } else { Ssr::Surround };
    }

    let mut winner: Option<(Direction, T)> = None;
    for dir in CANDIDATE_ORDER {
        if directional(a, b, dir) && exception_holds(a, b, dir) {
            let area = shadow_area(a, b, dir).expect("both cubes present");
            match winner {
                Some((_, best)) if area <= best => {}
                _ => winner = Some((dir, area)),
            }
        }
    }

    match winner {
        Some((Direction::Above, _)) => {
            if touch {
                Ssr::Top
            } else {
                Ssr::Above
            }
        }
        Some((Direction::Below, _)) => {
            if touch {
                Ssr::Bottom
            } else {
                Ssr::Below
            }
        }
        Some((d, _)) if d.is_horizontal() => {
            if touch {
                Ssr::AroundTouch
            } else {
                Ssr::Around
            }
        }
        _ => Ssr::Null,
    }
}

/// History of one cube pair over the relation window, oldest first.
///
/// Slices must be equally long and hold at most `theta + 1` frames; at
/// the start of a scenario the available prefix is passed instead.
#[derive(Debug, Clone, Copy)]
pub struct PairHistory<'a, T> {
    pub a: &'a [Cube<T>],
    pub b: &'a [Cube<T>],
}

impl<'a, T: Scalar> PairHistory<'a, T> {
    pub fn new(a: &'a [Cube<T>], b: &'a [Cube<T>]) -> Self {
        debug_assert_eq!(a.len(), b.len());
        Self { a, b }
    }
}

/// Dynamic spatial relation over the pair's recent history.
pub fn dsr<T: Scalar>(history: PairHistory<'_, T>, cfg: &RelationConfig<T>) -> Result<Dsr> {
    if history.a.is_empty() || history.b.is_empty() || history.a.len() != history.b.len() {
        return Err(EsecError::EmptyHistory);
    }
    let newest = history.a.len() - 1;
    let (na, nb) = (&history.a[newest], &history.b[newest]);
    if let Some((_, _, d)) = status_override(na.status, nb.status) {
        return Ok(d);
    }

    // Reference frame: earliest window frame where both cubes exist.
    // Covers both the scenario head and cubes that appeared mid-window.
    let start = (0..=newest)
        .rev()
        .take_while(|&i| history.a[i].is_present() && history.b[i].is_present())
        .last()
        .unwrap_or(newest);
    let (ra, rb) = (&history.a[start], &history.b[start]);

    let d_new = distance(na, nb).expect("present");
    if d_new > cfg.far_cutoff {
        return Ok(Dsr::NullDynamic);
    }
    let d_ref = distance(ra, rb).expect("present");

    if d_ref - d_new > cfg.xi_dyn {
        return Ok(Dsr::GettingClose);
    }
    if d_new - d_ref > cfg.xi_dyn {
        return Ok(Dsr::MovingApart);
    }

    let touch_ref = touching_unchecked(ra, rb, cfg.eps_touch);
    let touch_new = touching_unchecked(na, nb, cfg.eps_touch);

    if touch_ref && touch_new {
        let a_moved = moved_within(&history.a[start..=newest], cfg.eps_move);
        let b_moved = moved_within(&history.b[start..=newest], cfg.eps_move);
        return Ok(match (a_moved, b_moved) {
            (true, true) => Dsr::MoveTogether,
            (false, false) => Dsr::HaltTogether,
            _ => Dsr::FixedMoveTogether,
        });
    }
    if !touch_ref && !touch_new && (d_new - d_ref).abs() < cfg.xi_stable {
        return Ok(Dsr::Stable);
    }
    Ok(Dsr::NullDynamic)
}

/// A cube "moved" when any window frame strays more than `eps_move`
/// from the window's reference position. The maximum over the window,
/// rather than the endpoint difference, keeps periodic motion visible.
fn moved_within<T: Scalar>(states: &[Cube<T>], eps_move: T) -> bool {
    let reference = states[0].center;
    states
        .iter()
        .skip(1)
        .any(|c| c.center.sub(reference).norm() > eps_move)
}

/// Bundles the three relation symbols of the newest frame in the history.
pub fn relation_triple<T: Scalar>(
    history: PairHistory<'_, T>,
    cfg: &RelationConfig<T>,
) -> Result<RelationTriple> {
    if history.a.is_empty() {
        return Err(EsecError::EmptyHistory);
    }
    let newest = history.a.len() - 1;
    Ok(RelationTriple {
        tnr: tnr(&history.a[newest], &history.b[newest], cfg),
        ssr: ssr(&history.a[newest], &history.b[newest], cfg),
        dsr: dsr(history, cfg)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::Vec3;

    fn cube(id: &str, c: (f64, f64, f64), e: f64) -> Cube<f64> {
        Cube::new(id, Vec3::new(c.0, c.1, c.2), Vec3::splat(e))
    }

    fn cfg() -> RelationConfig<f64> {
        RelationConfig::default()
    }

    #[test]
    fn tnr_abutting_is_touch() {
        let a = cube("a", (0.0, 0.0, 0.0), 0.5);
        let b = cube("b", (1.0, 0.0, 0.0), 0.5);
        assert_eq!(tnr(&a, &b, &cfg()), Tnr::Touch);
    }

    #[test]
    fn tnr_far_is_no_touch() {
        let a = cube("a", (0.0, 0.0, 0.0), 0.5);
        let b = cube("b", (3.0, 0.0, 0.0), 0.5);
        assert_eq!(tnr(&a, &b, &cfg()), Tnr::NoTouch);
    }

    #[test]
    fn tnr_destroyed_propagates() {
        let a = cube("a", (0.0, 0.0, 0.0), 0.5);
        let mut b = cube("b", (1.0, 0.0, 0.0), 0.5);
        b.status = CubeStatus::Destroyed;
        assert_eq!(tnr(&a, &b, &cfg()), Tnr::Destroyed);
        b.status = CubeStatus::Absent;
        assert_eq!(tnr(&a, &b, &cfg()), Tnr::Absent);
    }

    #[test]
    fn ssr_directly_above() {
        let b = cube("b", (0.0, 0.0, 0.0), 0.1);
        let a = cube("a", (0.0, 0.4, 0.0), 0.1);
        assert_eq!(ssr(&a, &b, &cfg()), Ssr::Above);
        assert_eq!(ssr(&b, &a, &cfg()), Ssr::Below);
    }

    #[test]
    fn ssr_resting_promotes_to_top() {
        let b = cube("b", (0.0, 0.0, 0.0), 0.1);
        let a = cube("a", (0.0, 0.2, 0.0), 0.1);
        assert_eq!(ssr(&a, &b, &cfg()), Ssr::Top);
        assert_eq!(ssr(&b, &a, &cfg()), Ssr::Bottom);
    }

    #[test]
    fn ssr_inside_and_surround() {
        let mut big = cube("big", (0.0, 0.1, 0.0), 0.1);
        big.extents = Vec3::new(0.2, 0.1, 0.2);
        let small = cube("small", (0.0, 0.05, 0.0), 0.05);
        assert_eq!(ssr(&small, &big, &cfg()), Ssr::Inside);
        assert_eq!(ssr(&big, &small, &cfg()), Ssr::Surround);
    }

    #[test]
    fn ssr_horizontal_winner_reports_around() {
        // Left of and behind `b`, z projections overlapping but a clear
        // x gap: only the x-directional candidate survives and its
        // shadow dominates the suppressed z candidate's.
        let b = cube("b", (0.0, 0.0, 0.0), 0.1);
        let a = cube("a", (-0.25, 0.0, -0.15), 0.1);
        let left = shadow_area(&a, &b, Direction::Left).unwrap();
        let front = shadow_area(&a, &b, Direction::Front).unwrap();
        assert!(left > front);
        assert_eq!(ssr(&a, &b, &cfg()), Ssr::Around);
        assert_eq!(ssr(&b, &a, &cfg()), Ssr::Around);
    }

    #[test]
    fn ssr_touching_pair_resolves_candidates_by_shadow() {
        // Hand-style block pressed against the upper side of a bigger
        // block: both the sideways and the above candidates fire; the
        // much larger side shadow wins, giving around-with-touch.
        let b = cube("b", (0.0, 0.06, 0.0), 0.06);
        let a = cube("a", (0.089, 0.1, 0.0), 0.03);
        assert_eq!(tnr(&a, &b, &cfg()), Tnr::Touch);
        let right = shadow_area(&a, &b, Direction::Right).unwrap();
        let above = shadow_area(&a, &b, Direction::Above).unwrap();
        assert!(right > above);
        assert_eq!(ssr(&a, &b, &cfg()), Ssr::AroundTouch);
        assert_eq!(ssr(&b, &a, &cfg()), Ssr::AroundTouch);
    }

    #[test]
    fn ssr_far_pair_is_null() {
        let a = cube("a", (0.0, 1.5, 0.0), 0.1);
        let b = cube("b", (0.0, 0.0, 0.0), 0.1);
        assert_eq!(ssr(&a, &b, &cfg()), Ssr::Null);
    }

    #[test]
    fn ssr_diagonal_no_relation_is_null() {
        // Disjoint in x and y: every directional candidate is suppressed.
        let a = cube("a", (0.3, 0.3, 0.0), 0.1);
        let b = cube("b", (0.0, 0.0, 0.0), 0.1);
        assert_eq!(ssr(&a, &b, &cfg()), Ssr::Null);
    }

    fn hist(path_a: &[(f64, f64, f64)], path_b: &[(f64, f64, f64)], e: f64) -> (Vec<Cube<f64>>, Vec<Cube<f64>>) {
        let a = path_a.iter().map(|&p| cube("a", p, e)).collect();
        let b = path_b.iter().map(|&p| cube("b", p, e)).collect();
        (a, b)
    }

    #[test]
    fn dsr_translating_together_is_mt() {
        let pts_a: Vec<_> = (0..11).map(|i| (i as f64 * 0.03, 0.1, 0.0)).collect();
        let pts_b: Vec<_> = (0..11).map(|i| (i as f64 * 0.03 + 0.2, 0.1, 0.0)).collect();
        let (a, b) = hist(&pts_a, &pts_b, 0.1);
        assert_eq!(
            dsr(PairHistory::new(&a, &b), &cfg()).unwrap(),
            Dsr::MoveTogether
        );
    }

    #[test]
    fn dsr_motionless_touching_is_ht() {
        let pts: Vec<_> = (0..11).map(|_| (0.0, 0.0, 0.0)).collect();
        let pts_b: Vec<_> = (0..11).map(|_| (0.2, 0.0, 0.0)).collect();
        let (a, b) = hist(&pts, &pts_b, 0.1);
        assert_eq!(
            dsr(PairHistory::new(&a, &b), &cfg()).unwrap(),
            Dsr::HaltTogether
        );
    }

    #[test]
    fn dsr_one_moving_on_fixed_is_fmt() {
        let pts_a: Vec<_> = (0..11).map(|i| (i as f64 * 0.005, 0.2, 0.0)).collect();
        let pts_b: Vec<_> = (0..11).map(|_| (0.0, 0.0, 0.0)).collect();
        let (a, b) = hist(&pts_a, &pts_b, 0.1);
        assert_eq!(
            dsr(PairHistory::new(&a, &b), &cfg()).unwrap(),
            Dsr::FixedMoveTogether
        );
    }

    #[test]
    fn dsr_fast_approach_is_gc() {
        // 0.2 m of approach over the window, threshold is 0.1 m.
        let pts_a: Vec<_> = (0..11).map(|i| (0.9 - i as f64 * 0.02, 0.0, 0.0)).collect();
        let pts_b: Vec<_> = (0..11).map(|_| (0.0, 0.0, 0.0)).collect();
        let (a, b) = hist(&pts_a, &pts_b, 0.05);
        assert_eq!(
            dsr(PairHistory::new(&a, &b), &cfg()).unwrap(),
            Dsr::GettingClose
        );
        let receding: Vec<_> = a.iter().rev().cloned().collect();
        assert_eq!(
            dsr(PairHistory::new(&receding, &b), &cfg()).unwrap(),
            Dsr::MovingApart
        );
    }

    #[test]
    fn dsr_stationary_untouched_is_stable() {
        let pts_a: Vec<_> = (0..11).map(|_| (0.5, 0.0, 0.0)).collect();
        let pts_b: Vec<_> = (0..11).map(|_| (0.0, 0.0, 0.0)).collect();
        let (a, b) = hist(&pts_a, &pts_b, 0.05);
        assert_eq!(dsr(PairHistory::new(&a, &b), &cfg()).unwrap(), Dsr::Stable);
    }

    #[test]
    fn dsr_far_pair_is_q() {
        let pts_a: Vec<_> = (0..11).map(|_| (1.5, 0.0, 0.0)).collect();
        let pts_b: Vec<_> = (0..11).map(|_| (0.0, 0.0, 0.0)).collect();
        let (a, b) = hist(&pts_a, &pts_b, 0.05);
        assert_eq!(
            dsr(PairHistory::new(&a, &b), &cfg()).unwrap(),
            Dsr::NullDynamic
        );
    }

    #[test]
    fn dsr_empty_history_errors() {
        let empty: Vec<Cube<f64>> = Vec::new();
        assert!(dsr(PairHistory::new(&empty, &empty), &cfg()).is_err());
    }

    #[test]
    fn triple_idle_far_pair() {
        let pts_a: Vec<_> = (0..11).map(|_| (0.5, 0.0, 0.0)).collect();
        let pts_b: Vec<_> = (0..11).map(|_| (0.0, 0.0, 0.0)).collect();
        let (a, b) = hist(&pts_a, &pts_b, 0.05);
        let t = relation_triple(PairHistory::new(&a, &b), &cfg()).unwrap();
        assert_eq!(t.tnr, Tnr::NoTouch);
        assert_eq!(t.dsr, Dsr::Stable);
    }
}
