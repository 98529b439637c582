//! Keyframe builder for scripted scenarios.
//!
//! Cubes advance frame by frame; every operation appends frames for all
//! cubes so tracks stay aligned. Moves are constant-velocity with exact
//! endpoints (snap starts and stops), which keeps relation transitions
//! sharp.

use crate::scalar::Scalar;
use crate::scene::{Cube, CubeStatus, Frame, Scenario, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubeHandle(usize);

struct TrackState<T> {
    id: String,
    appearance: String,
    center: Vec3<T>,
    extents: Vec3<T>,
    status: CubeStatus,
    states: Vec<(Vec3<T>, Vec3<T>, CubeStatus)>,
}

/// Scripted scene under construction.
pub struct Sim<T: Scalar> {
    frame_rate: T,
    tracks: Vec<TrackState<T>>,
}

impl<T: Scalar> Sim<T> {
    pub fn new(frame_rate: f64) -> Self {
        Self {
            frame_rate: T::from_f64_c(frame_rate),
            tracks: Vec::new(),
        }
    }

    pub fn add_cube(
        &mut self,
        id: impl Into<String>,
        appearance: impl Into<String>,
        center: Vec3<T>,
        extents: Vec3<T>,
        status: CubeStatus,
    ) -> CubeHandle {
        assert!(
            self.frame_count() == 0,
            "cubes must be declared before the first frame"
        );
        self.tracks.push(TrackState {
            id: id.into(),
            appearance: appearance.into(),
            center,
            extents,
            status,
            states: Vec::new(),
        });
        CubeHandle(self.tracks.len() - 1)
    }

    pub fn frame_count(&self) -> usize {
        self.tracks.first().map_or(0, |t| t.states.len())
    }

    pub fn center_of(&self, h: CubeHandle) -> Vec3<T> {
        self.tracks[h.0].center
    }

    pub fn extents_of(&self, h: CubeHandle) -> Vec3<T> {
        self.tracks[h.0].extents
    }

    fn snapshot(&mut self) {
        for t in &mut self.tracks {
            t.states.push((t.center, t.extents, t.status));
        }
    }

    /// Everything holds still for `frames` frames.
    pub fn dwell(&mut self, frames: usize) {
        for _ in 0..frames {
            self.snapshot();
        }
    }

    /// Moves each listed cube linearly by its delta over `frames` frames;
    /// unlisted cubes hold.
    pub fn move_by(&mut self, moves: &[(CubeHandle, Vec3<T>)], frames: usize) {
        assert!(frames > 0, "zero-length move");
        let starts: Vec<Vec3<T>> = moves.iter().map(|(h, _)| self.tracks[h.0].center).collect();
        for k in 1..=frames {
            let t = T::from_usize(k).unwrap() / T::from_usize(frames).unwrap();
            for ((h, delta), start) in moves.iter().zip(&starts) {
                self.tracks[h.0].center = start.add(delta.scale(t));
            }
            self.snapshot();
        }
    }

    /// Sinusoidal oscillation of the listed cubes along `axis` (unit),
    /// starting and ending at the current position.
    pub fn oscillate(
        &mut self,
        ids: &[CubeHandle],
        axis: Vec3<T>,
        amplitude: T,
        period: usize,
        cycles: usize,
    ) {
        let bases: Vec<Vec3<T>> = ids.iter().map(|h| self.tracks[h.0].center).collect();
        let total = period * cycles;
        let two_pi = T::from_f64_c(std::f64::consts::TAU);
        for k in 1..=total {
            let phase = two_pi * T::from_usize(k).unwrap() / T::from_usize(period).unwrap();
            let offset = axis.scale(amplitude * phase.sin());
            for (h, base) in ids.iter().zip(&bases) {
                self.tracks[h.0].center = base.add(offset);
            }
            self.snapshot();
        }
        for (h, base) in ids.iter().zip(&bases) {
            self.tracks[h.0].center = *base;
        }
    }

    /// Horizontal circular motion through the current position around a
    /// pivot displaced by `radius` against `toward` (unit, horizontal).
    pub fn orbit(
        &mut self,
        ids: &[CubeHandle],
        toward: Vec3<T>,
        radius: T,
        period: usize,
        cycles: usize,
    ) {
        let bases: Vec<Vec3<T>> = ids.iter().map(|h| self.tracks[h.0].center).collect();
        let total = period * cycles;
        let two_pi = T::from_f64_c(std::f64::consts::TAU);
        // Start angle points from pivot back to the base position.
        let (ux, uz) = (toward.x, toward.z);
        for k in 1..=total {
            let phase = two_pi * T::from_usize(k).unwrap() / T::from_usize(period).unwrap();
            let (s, c) = (phase.sin(), phase.cos());
            for (h, base) in ids.iter().zip(&bases) {
                // Rotate the radius vector (pointing from pivot to base)
                // by `phase` in the horizontal plane.
                let rx = radius * ux;
                let rz = radius * uz;
                let dx = rx * c - rz * s - rx;
                let dz = rx * s + rz * c - rz;
                self.tracks[h.0].center = Vec3::new(base.x + dx, base.y, base.z + dz);
            }
            self.snapshot();
        }
        for (h, base) in ids.iter().zip(&bases) {
            self.tracks[h.0].center = *base;
        }
    }

    /// Linearly interpolates both center and extents to the targets.
    pub fn morph(
        &mut self,
        moves: &[(CubeHandle, Vec3<T>, Vec3<T>)],
        frames: usize,
    ) {
        assert!(frames > 0, "zero-length morph");
        let starts: Vec<(Vec3<T>, Vec3<T>)> = moves
            .iter()
            .map(|(h, _, _)| (self.tracks[h.0].center, self.tracks[h.0].extents))
            .collect();
        for k in 1..=frames {
            let t = T::from_usize(k).unwrap() / T::from_usize(frames).unwrap();
            for ((h, center, extents), (c0, e0)) in moves.iter().zip(&starts) {
                self.tracks[h.0].center = c0.lerp(*center, t);
                self.tracks[h.0].extents = e0.lerp(*extents, t);
            }
            self.snapshot();
        }
    }

    /// Changes status and optionally pose, effective from the next frame.
    pub fn set_status(&mut self, h: CubeHandle, status: CubeStatus) {
        self.tracks[h.0].status = status;
    }

    pub fn place(&mut self, h: CubeHandle, center: Vec3<T>) {
        self.tracks[h.0].center = center;
    }

    /// Makes an absent cube present at a pose, effective next frame.
    pub fn materialize(&mut self, h: CubeHandle, center: Vec3<T>, extents: Vec3<T>) {
        let t = &mut self.tracks[h.0];
        t.center = center;
        t.extents = extents;
        t.status = CubeStatus::Present;
    }

    pub fn finish(
        self,
        label: impl Into<String>,
        hand: CubeHandle,
        ground: CubeHandle,
    ) -> Scenario<T> {
        let n = self.frame_count();
        let mut frames = Vec::with_capacity(n);
        for i in 0..n {
            let cubes = self
                .tracks
                .iter()
                .map(|t| {
                    let (center, extents, status) = t.states[i];
                    Cube {
                        id: t.id.clone(),
                        appearance: t.appearance.clone(),
                        center,
                        extents,
                        status,
                    }
                })
                .collect();
            frames.push(Frame {
                index: i,
                time: T::from_usize(i + 1).unwrap() / self.frame_rate,
                cubes,
            });
        }
        Scenario {
            label: label.into(),
            frame_rate: self.frame_rate,
            frames,
            hand_id: self.tracks[hand.0].id.clone(),
            ground_id: self.tracks[ground.0].id.clone(),
        }
    }
}
