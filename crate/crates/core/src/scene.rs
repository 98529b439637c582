//! Cube-world scene primitives and raw geometry queries.
//!
//! Everything in a scenario is an axis-aligned box: the hand, the ground
//! plane and all manipulated or distractor objects. Relations are later
//! derived purely from per-axis interval arithmetic on these boxes.

use crate::error::{EsecError, Result};
use crate::scalar::Scalar;

/// 3-component vector in meters, y up.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn splat(v: T) -> Self {
        Self { x: v, y: v, z: v }
    }

    pub fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn norm(self) -> T {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn lerp(self, o: Self, t: T) -> Self {
        self.add(o.sub(self).scale(t))
    }

    pub fn axis(self, i: usize) -> T {
        match i {
            0 => self.x,
            1 => self.y,
            2 => self.z,
            _ => panic!("axis index {i} out of range"),
        }
    }
}

/// Lifecycle state of a cube within a scenario.
///
/// `Destroyed` is terminal. A cube may leave and re-enter the `Present`
/// state (objects get revealed, split products come into existence).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CubeStatus {
    Present,
    Absent,
    Destroyed,
}

impl CubeStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CubeStatus::Present => "present",
            CubeStatus::Absent => "absent",
            CubeStatus::Destroyed => "destroyed",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "present" => Some(CubeStatus::Present),
            "absent" => Some(CubeStatus::Absent),
            "destroyed" => Some(CubeStatus::Destroyed),
            _ => None,
        }
    }
}

/// Axis-aligned box with identity and lifecycle status.
#[derive(Debug, Clone, PartialEq)]
pub struct Cube<T = f64> {
    pub id: String,
    /// Informational label (color/size tag); never used by the relation rules.
    pub appearance: String,
    pub center: Vec3<T>,
    /// Half-widths per axis; strictly positive while the cube is present.
    pub extents: Vec3<T>,
    pub status: CubeStatus,
}

impl<T: Scalar> Cube<T> {
    pub fn new(id: impl Into<String>, center: Vec3<T>, extents: Vec3<T>) -> Self {
        Self {
            id: id.into(),
            appearance: String::new(),
            center,
            extents,
            status: CubeStatus::Present,
        }
    }

    pub fn is_present(&self) -> bool {
        self.status == CubeStatus::Present
    }

    pub fn min_corner(&self) -> Vec3<T> {
        self.center.sub(self.extents)
    }

    pub fn max_corner(&self) -> Vec3<T> {
        self.center.add(self.extents)
    }

    /// Per-axis interval `[min, max]`.
    pub fn interval(&self, axis: usize) -> (T, T) {
        (
            self.center.axis(axis) - self.extents.axis(axis),
            self.center.axis(axis) + self.extents.axis(axis),
        )
    }

    pub fn volume(&self) -> T {
        let e = self.extents;
        let two = T::from_f64_c(2.0);
        (e.x * two) * (e.y * two) * (e.z * two)
    }
}

/// Directions a face shadow can be cast along. Internal to relation
/// selection; the four horizontal ones are never reported outward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
    Front,
    Back,
    Above,
    Below,
}

impl Direction {
    pub fn opposite(self) -> Self {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
            Direction::Front => Direction::Back,
            Direction::Back => Direction::Front,
            Direction::Above => Direction::Below,
            Direction::Below => Direction::Above,
        }
    }

    /// Axis the direction points along: x = 0, y = 1, z = 2.
    pub fn axis(self) -> usize {
        match self {
            Direction::Left | Direction::Right => 0,
            Direction::Above | Direction::Below => 1,
            Direction::Front | Direction::Back => 2,
        }
    }

    /// The two axes perpendicular to this direction.
    pub fn perpendicular_axes(self) -> (usize, usize) {
        match self.axis() {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        }
    }

    pub fn is_horizontal(self) -> bool {
        self.axis() != 1
    }
}

fn overlap_1d<T: Scalar>(a: (T, T), b: (T, T)) -> T {
    let lo = if a.0 > b.0 { a.0 } else { b.0 };
    let hi = if a.1 < b.1 { a.1 } else { b.1 };
    if hi > lo {
        hi - lo
    } else {
        T::zero()
    }
}

/// Face contact test: the two boxes overlap or abut on all three axes,
/// with abutment judged within `eps_touch`. Interpenetration counts.
pub fn touching<T: Scalar>(a: &Cube<T>, b: &Cube<T>, eps_touch: T) -> Result<bool> {
    for c in [a, b] {
        if !c.is_present() {
            return Err(EsecError::NonPresentCube { id: c.id.clone() });
        }
    }
    Ok(touching_unchecked(a, b, eps_touch))
}

pub(crate) fn touching_unchecked<T: Scalar>(a: &Cube<T>, b: &Cube<T>, eps_touch: T) -> bool {
    (0..3).all(|axis| {
        let (amin, amax) = a.interval(axis);
        let (bmin, bmax) = b.interval(axis);
        amin - bmax <= eps_touch && bmin - amax <= eps_touch
    })
}

/// Euclidean distance between box centers.
pub fn distance<T: Scalar>(a: &Cube<T>, b: &Cube<T>) -> Result<T> {
    for c in [a, b] {
        if !c.is_present() {
            return Err(EsecError::NonPresentCube { id: c.id.clone() });
        }
    }
    Ok(a.center.sub(b.center).norm())
}

/// Area of the rectangle intersection between `a`'s facing surface and
/// `b`'s opposing surface, projected along the direction's axis.
///
/// Zero when the perpendicular projections do not intersect.
pub fn shadow_area<T: Scalar>(a: &Cube<T>, b: &Cube<T>, dir: Direction) -> Result<T> {
    for c in [a, b] {
        if !c.is_present() {
            return Err(EsecError::NonPresentCube { id: c.id.clone() });
        }
    }
    let (p, q) = dir.perpendicular_axes();
    Ok(overlap_1d(a.interval(p), b.interval(p)) * overlap_1d(a.interval(q), b.interval(q)))
}

/// One time sample of the scene.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame<T = f64> {
    pub index: usize,
    /// Seconds since scenario start.
    pub time: T,
    /// Cube states, one entry per declared cube, stable order.
    pub cubes: Vec<Cube<T>>,
}

impl<T: Scalar> Frame<T> {
    pub fn cube(&self, id: &str) -> Option<&Cube<T>> {
        self.cubes.iter().find(|c| c.id == id)
    }
}

/// A timed recording of cube states plus an action-class label.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario<T = f64> {
    /// Action class name or "unlabeled".
    pub label: String,
    /// Frames per second; the relation window is expressed in frames.
    pub frame_rate: T,
    pub frames: Vec<Frame<T>>,
    pub hand_id: String,
    pub ground_id: String,
}

impl<T: Scalar> Scenario<T> {
    pub fn duration(&self) -> T {
        T::from_usize(self.frames.len()).unwrap() / self.frame_rate
    }

    /// All cube ids in declaration order (taken from the first frame).
    pub fn cube_ids(&self) -> Vec<String> {
        self.frames
            .first()
            .map(|f| f.cubes.iter().map(|c| c.id.clone()).collect())
            .unwrap_or_default()
    }

    /// Validates the structural invariants shared by generated and loaded
    /// scenarios; used by the loader and by generator tests.
    pub fn validate(&self) -> Result<()> {
        if self.frames.is_empty() {
            return Err(EsecError::Scenario("no frames".into()));
        }
        if self.hand_id == self.ground_id {
            return Err(EsecError::Scenario("hand and ground must be distinct".into()));
        }
        let ids = self.cube_ids();
        for key in [&self.hand_id, &self.ground_id] {
            if !ids.iter().any(|i| i == key) {
                return Err(EsecError::Scenario(format!("cube `{key}` not declared")));
            }
        }
        let mut prev_time: Option<T> = None;
        let mut prev_status: Vec<CubeStatus> = Vec::new();
        for frame in &self.frames {
            if let Some(t) = prev_time {
                if frame.time <= t {
                    return Err(EsecError::Frame {
                        index: frame.index,
                        message: "frame times must be strictly increasing".into(),
                    });
                }
            }
            prev_time = Some(frame.time);
            if frame.cubes.len() != ids.len()
                || frame.cubes.iter().zip(&ids).any(|(c, id)| &c.id != id)
            {
                return Err(EsecError::Frame {
                    index: frame.index,
                    message: "cube set differs from frame 0".into(),
                });
            }
            for (slot, cube) in frame.cubes.iter().enumerate() {
                if cube.is_present() {
                    let e = cube.extents;
                    if !(e.x > T::zero() && e.y > T::zero() && e.z > T::zero()) {
                        return Err(EsecError::Frame {
                            index: frame.index,
                            message: format!("cube `{}` has non-positive extents", cube.id),
                        });
                    }
                }
                if let Some(prev) = prev_status.get(slot) {
                    if *prev == CubeStatus::Destroyed && cube.status != CubeStatus::Destroyed {
                        return Err(EsecError::Frame {
                            index: frame.index,
                            message: format!("cube `{}` resurrected after destruction", cube.id),
                        });
                    }
                }
            }
            prev_status = frame.cubes.iter().map(|c| c.status).collect();
        }
        Ok(())
    }
}
