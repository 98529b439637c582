//! The ten scripted choreographies.
//!
//! Speed discipline keeps the symbol streams clean: deliberate approach,
//! strike and retreat segments run fast enough to trip the close/apart
//! thresholds, everything else moves slowly enough to stay under them,
//! and sustained oscillations run at the relation window length so their
//! steady phase is distance-neutral. Parking moves run tangentially at
//! low height so pair distances drift monotonically; final drops are
//! quick so facing-relation flips land inside the contact column.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::sim::{CubeHandle, Sim};
use super::{ActionClass, GeneratorConfig};
use crate::scalar::Scalar;
use crate::scene::{CubeStatus, Scenario, Vec3};

const FPS: f64 = 20.0;
const HAND_E: f64 = 0.03;
const HAND_START_Y: f64 = 1.6;
/// Scripted contacts interpenetrate by this much.
const BITE: f64 = 0.001;
/// Deliberate motion, safely under the close/apart threshold.
const V_SLOW: f64 = 0.15;
/// Parking hauls; still under the threshold.
const V_CARRY: f64 = 0.18;
/// Fast segments that must register as getting-close / moving-apart.
const V_FAST: f64 = 1.3;
const V_STRIKE: f64 = 1.5;
/// Sustained oscillations run at the relation window length.
const OSC_PERIOD: usize = 10;
const SAW_AMPLITUDE: f64 = 0.028;
const STIR_RADIUS: f64 = 0.010;

const IDLE: usize = 12;
const GRASP_DWELL: usize = 8;
const LIFT: f64 = 0.25;

fn frames_for(dist: f64, speed: f64) -> usize {
    ((dist / speed) * FPS).ceil().max(1.0) as usize
}

fn v3(x: f64, y: f64, z: f64) -> Vec3<f64> {
    Vec3::new(x, y, z)
}

fn convert<T: Scalar>(s: Scenario<f64>) -> Scenario<T> {
    let cv =
        |v: Vec3<f64>| Vec3::new(T::from_f64_c(v.x), T::from_f64_c(v.y), T::from_f64_c(v.z));
    Scenario {
        label: s.label,
        frame_rate: T::from_f64_c(s.frame_rate),
        hand_id: s.hand_id,
        ground_id: s.ground_id,
        frames: s
            .frames
            .into_iter()
            .map(|f| crate::scene::Frame {
                index: f.index,
                time: T::from_f64_c(f.time),
                cubes: f
                    .cubes
                    .into_iter()
                    .map(|c| crate::scene::Cube {
                        id: c.id,
                        appearance: c.appearance,
                        center: cv(c.center),
                        extents: cv(c.extents),
                        status: c.status,
                    })
                    .collect(),
            })
            .collect(),
    }
}

const PALETTE: [&str; 8] = [
    "blue", "green", "yellow", "purple", "orange", "cyan", "white", "brown",
];

struct Build {
    rng: ChaCha8Rng,
    sim: Sim<f64>,
    hand: CubeHandle,
    ground: CubeHandle,
    /// Extra frames to distribute into stretchable phases.
    stretch: usize,
}

struct Spot {
    x: f64,
    z: f64,
    /// Unit direction from the workspace center.
    ux: f64,
    uz: f64,
}

impl Spot {
    /// Unit direction snapped to the nearer workspace axis.
    fn axis_unit(&self) -> (f64, f64) {
        if self.ux.abs() >= self.uz.abs() {
            (self.ux.signum(), 0.0)
        } else {
            (0.0, self.uz.signum())
        }
    }

    /// Horizontal unit perpendicular to the snapped outward axis.
    fn tangent_unit(&self) -> (f64, f64) {
        let (ax, az) = self.axis_unit();
        (-az, ax)
    }
}

fn polar_spot(rng: &mut ChaCha8Rng, r_lo: f64, r_hi: f64, phi: f64) -> Spot {
    let r = rng.gen_range(r_lo..r_hi);
    Spot {
        x: r * phi.cos(),
        z: r * phi.sin(),
        ux: phi.cos(),
        uz: phi.sin(),
    }
}

impl Build {
    fn fresh(rng: ChaCha8Rng, stretch: usize) -> Self {
        let mut sim = Sim::new(FPS);
        let hand = sim.add_cube(
            "hand",
            "red",
            v3(0.0, HAND_START_Y, 0.0),
            Vec3::splat(HAND_E),
            CubeStatus::Present,
        );
        let ground = sim.add_cube(
            "ground",
            "gray",
            v3(0.0, -0.05, 0.0),
            v3(1.0, 0.05, 1.0),
            CubeStatus::Present,
        );
        Build {
            rng,
            sim,
            hand,
            ground,
            stretch,
        }
    }

    fn color(&mut self) -> &'static str {
        PALETTE[self.rng.gen_range(0..PALETTE.len())]
    }

    fn cube_on_ground(&mut self, id: &str, spot: &Spot, e: f64) -> CubeHandle {
        let color = self.color();
        self.sim.add_cube(
            id,
            color,
            v3(spot.x, e, spot.z),
            Vec3::splat(e),
            CubeStatus::Present,
        )
    }

    fn add_distractors(&mut self, cfg: &GeneratorConfig, occupied: &[(f64, f64)]) {
        let n = self
            .rng
            .gen_range(cfg.min_distractors..=cfg.max_distractors);
        let mut placed = 0;
        let mut tries = 0;
        while placed < n && tries < 64 {
            tries += 1;
            let phi = self.rng.gen_range(0.0..std::f64::consts::TAU);
            let r = self.rng.gen_range(0.70..0.88);
            let (x, z) = (r * phi.cos(), r * phi.sin());
            if occupied
                .iter()
                .any(|(ox, oz)| ((x - ox).powi(2) + (z - oz).powi(2)).sqrt() < 0.30)
            {
                continue;
            }
            let e = self.rng.gen_range(0.02..0.05);
            let id = format!("distractor{placed}");
            let color = self.color();
            self.sim
                .add_cube(id, color, v3(x, e, z), Vec3::splat(e), CubeStatus::Present);
            placed += 1;
        }
    }

    /// Allocates up to `cap` frames of the stretch budget.
    fn take_stretch(&mut self, cap: usize) -> usize {
        let take = self.stretch.min(cap);
        self.stretch -= take;
        take
    }

    /// Opening common to all classes: idle, fast descent onto the first
    /// contact point, short grasp dwell. The hand starts far above the
    /// workspace and ends touching (hand center at `contact`).
    fn open(&mut self, contact: Vec3<f64>) {
        let extra = self.take_stretch(220);
        self.sim
            .place(self.hand, v3(contact.x, HAND_START_Y, contact.z));
        self.sim.dwell(IDLE + extra);
        let fall = frames_for(HAND_START_Y - contact.y, V_FAST);
        self.sim
            .move_by(&[(self.hand, v3(0.0, contact.y - HAND_START_Y, 0.0))], fall);
        self.sim.dwell(GRASP_DWELL);
    }

    /// Slow straight-line move of the hand and anything grasped.
    fn haul(&mut self, grasped: &[CubeHandle], delta: Vec3<f64>, speed: f64) {
        let dist = delta.norm();
        if dist < 1e-9 {
            return;
        }
        let frames = frames_for(dist, speed);
        let moves: Vec<(CubeHandle, Vec3<f64>)> = std::iter::once(self.hand)
            .chain(grasped.iter().copied())
            .map(|h| (h, delta))
            .collect();
        self.sim.move_by(&moves, frames);
    }

    /// Short dwell, a two-frame release hop, stillness while the symbols
    /// settle, then a straight-up exit. The hop stays under the apart
    /// threshold, the stillness folds every drain into one column, and
    /// the vertical exit avoids both sideways facing flips and the far
    /// cutoff.
    fn release_and_retreat(&mut self) {
        self.sim.dwell(6);
        self.sim.move_by(&[(self.hand, v3(0.0, 0.095, 0.0))], 2);
        self.sim.dwell(12);
        self.sim.move_by(&[(self.hand, v3(0.0, 0.30, 0.0))], 7);
        self.sim.dwell(2);
    }

    fn finish(self, label: &str) -> Scenario<f64> {
        let (hand, ground) = (self.hand, self.ground);
        self.sim.finish(label, hand, ground)
    }
}

fn tool_grasp_point(spot: &Spot, e_tool: f64) -> Vec3<f64> {
    v3(spot.x, 2.0 * e_tool + HAND_E - BITE, spot.z)
}

struct ToolAndTarget {
    tool_spot: Spot,
    target_spot: Spot,
    e_tool: f64,
    e_target: f64,
    tool: CubeHandle,
    target: CubeHandle,
}

/// Shared layout for the tool-onto-target classes: the tool sits near
/// the center, the target farther out; the park spot lies beside the
/// target along the workspace tangent.
fn tool_target_layout(
    b: &mut Build,
    cfg: &GeneratorConfig,
    tool_id: &str,
    target_id: &str,
    e_tool_range: (f64, f64),
    e_target_range: (f64, f64),
) -> ToolAndTarget {
    let phi = b.rng.gen_range(0.0..std::f64::consts::TAU);
    let dphi = b.rng.gen_range(-0.35..0.35);
    let tool_spot = polar_spot(&mut b.rng, 0.12, 0.25, phi);
    let target_spot = polar_spot(&mut b.rng, 0.45, 0.58, phi + dphi);
    let e_tool = b.rng.gen_range(e_tool_range.0..e_tool_range.1);
    let e_target = b.rng.gen_range(e_target_range.0..e_target_range.1);
    let tool = b.cube_on_ground(tool_id, &tool_spot, e_tool);
    let target = b.cube_on_ground(target_id, &target_spot, e_target);
    b.add_distractors(
        cfg,
        &[
            (tool_spot.x, tool_spot.z),
            (target_spot.x, target_spot.z),
            (0.0, 0.0),
        ],
    );
    ToolAndTarget {
        tool_spot,
        target_spot,
        e_tool,
        e_target,
        tool,
        target,
    }
}

/// Parks the grasped tool: a low haul toward the workspace center with
/// a sideways offset (the retired tool never ends up facing the work
/// site, so no late facing flips), then a fast set-down that merges
/// into the contact column, release, retreat.
fn park_tool(b: &mut Build, tool: CubeHandle, tool_y: f64, e_tool: f64, site: &Spot) {
    // Offsets along the snapped axes: outward plus sideways. Outward
    // keeps every pair distance growing monotonically along the haul;
    // the diagonal keeps the parked tool's footprint clear of the work
    // site on both axes, so no facing relation ever fires there.
    let (ax, az) = site.axis_unit();
    let (tx, tz) = site.tangent_unit();
    // Sideways sign that points away from the workspace center.
    let side = if tx * site.ux + tz * site.uz >= 0.0 { 1.0 } else { -1.0 };
    let (ox, oz) = (
        0.14 * ax + 0.16 * side * tx,
        0.14 * az + 0.16 * side * tz,
    );
    b.haul(&[tool], v3(ox, 0.0, oz), V_CARRY);
    let drop = tool_y - (e_tool - BITE);
    let frames = frames_for(drop, 0.8);
    b.sim.move_by(
        &[(b.hand, v3(0.0, -drop, 0.0)), (tool, v3(0.0, -drop, 0.0))],
        frames,
    );
    b.release_and_retreat();
}

/// Adds the two absent split products of a divisible target.
fn add_pieces(b: &mut Build, e_target: f64) -> (CubeHandle, CubeHandle) {
    let color = b.color();
    let e = Vec3::splat(e_target / 2.0);
    let a = b
        .sim
        .add_cube("piece_a", color, v3(0.0, -2.0, 0.0), e, CubeStatus::Absent);
    let bb = b
        .sim
        .add_cube("piece_b", color, v3(0.0, -2.0, 0.0), e, CubeStatus::Absent);
    (a, bb)
}

/// Splits the target across the outward axis; both halves stay flush
/// under the blade through any further tangential sawing.
fn divide_target(b: &mut Build, lt: &ToolAndTarget, piece_a: CubeHandle, piece_b: CubeHandle) {
    b.sim.set_status(lt.target, CubeStatus::Destroyed);
    let (ax, az) = lt.target_spot.axis_unit();
    let half = lt.e_target / 2.0;
    let pe = if az == 0.0 {
        v3(half, lt.e_target, lt.e_target)
    } else {
        v3(lt.e_target, lt.e_target, half)
    };
    let (x, z) = (lt.target_spot.x, lt.target_spot.z);
    b.sim
        .materialize(piece_a, v3(x - ax * half, lt.e_target, z - az * half), pe);
    b.sim
        .materialize(piece_b, v3(x + ax * half, lt.e_target, z + az * half), pe);
}

/// Chop: grasp tool, hover over the target, strike; the second strike
/// splits the target, then the tool is parked and the hand leaves.
fn chop(mut b: Build, cfg: &GeneratorConfig) -> Scenario<f64> {
    let lt = tool_target_layout(&mut b, cfg, "tool", "target", (0.032, 0.038), (0.080, 0.092));
    let (piece_a, piece_b) = add_pieces(&mut b, lt.e_target);

    b.open(tool_grasp_point(&lt.tool_spot, lt.e_tool));

    let grasped = [lt.tool];
    b.haul(&grasped, v3(0.0, LIFT, 0.0), V_SLOW);
    let contact_y = 2.0 * lt.e_target + lt.e_tool - BITE;
    let hover_y = contact_y + 0.30;
    let tool_y = lt.e_tool + LIFT;
    b.haul(
        &grasped,
        v3(
            lt.target_spot.x - lt.tool_spot.x,
            hover_y - tool_y,
            lt.target_spot.z - lt.tool_spot.z,
        ),
        V_SLOW,
    );
    let hover = 16 + b.take_stretch(120);
    b.sim.dwell(hover);

    // Two strikes; the second one divides the target. The tool ends just
    // above the pieces so the park haul sees a shallow sight line.
    let strike_drop = 0.30 - BITE;
    let down = frames_for(strike_drop, V_STRIKE);
    b.sim.move_by(
        &[
            (b.hand, v3(0.0, -strike_drop, 0.0)),
            (lt.tool, v3(0.0, -strike_drop, 0.0)),
        ],
        down,
    );
    b.sim.dwell(5);
    b.sim.move_by(
        &[
            (b.hand, v3(0.0, strike_drop, 0.0)),
            (lt.tool, v3(0.0, strike_drop, 0.0)),
        ],
        down,
    );
    b.sim.dwell(8);
    b.sim.move_by(
        &[
            (b.hand, v3(0.0, -strike_drop, 0.0)),
            (lt.tool, v3(0.0, -strike_drop, 0.0)),
        ],
        down,
    );
    divide_target(&mut b, &lt, piece_a, piece_b);
    b.sim.dwell(5);
    let clear = 0.035;
    b.sim.move_by(
        &[
            (b.hand, v3(0.0, clear, 0.0)),
            (lt.tool, v3(0.0, clear, 0.0)),
        ],
        2,
    );

    park_tool(&mut b, lt.tool, contact_y + clear, lt.e_tool, &lt.target_spot);
    b.finish("chop")
}

/// Cut: like chop up to the carry, but the tool stabs once and saws in
/// sustained contact until the target splits.
fn cut(mut b: Build, cfg: &GeneratorConfig) -> Scenario<f64> {
    let lt = tool_target_layout(&mut b, cfg, "tool", "target", (0.032, 0.038), (0.080, 0.092));
    let (piece_a, piece_b) = add_pieces(&mut b, lt.e_target);

    b.open(tool_grasp_point(&lt.tool_spot, lt.e_tool));

    let grasped = [lt.tool];
    b.haul(&grasped, v3(0.0, LIFT, 0.0), V_SLOW);
    let stab_height = 0.30;
    let contact_y = 2.0 * lt.e_target + lt.e_tool - BITE;
    let tool_y = lt.e_tool + LIFT;
    b.haul(
        &grasped,
        v3(
            lt.target_spot.x - lt.tool_spot.x,
            contact_y + stab_height - tool_y,
            lt.target_spot.z - lt.tool_spot.z,
        ),
        V_SLOW,
    );
    // Stab down fast, then saw along the tangent at the window period;
    // the stroke is distance-neutral for every bound pair.
    let down = frames_for(stab_height, V_STRIKE);
    b.sim.move_by(
        &[
            (b.hand, v3(0.0, -stab_height, 0.0)),
            (lt.tool, v3(0.0, -stab_height, 0.0)),
        ],
        down,
    );
    b.sim.dwell(6);

    let (tx, tz) = lt.target_spot.tangent_unit();
    let saw_axis = v3(tx, 0.0, tz);
    let pre_cycles = 2 + b.take_stretch(160) / OSC_PERIOD;
    b.sim.oscillate(
        &[b.hand, lt.tool],
        saw_axis,
        SAW_AMPLITUDE,
        OSC_PERIOD,
        pre_cycles,
    );

    // Division mid-saw, one more cycle, then a settle beat.
    divide_target(&mut b, &lt, piece_a, piece_b);
    b.sim
        .oscillate(&[b.hand, lt.tool], saw_axis, SAW_AMPLITUDE, OSC_PERIOD, 1);
    b.sim.dwell(20);

    // Lift just clear of the pieces; the park haul then runs tangentially
    // at this shallow height.
    let clear = 0.035;
    b.sim.move_by(
        &[
            (b.hand, v3(0.0, clear, 0.0)),
            (lt.tool, v3(0.0, clear, 0.0)),
        ],
        2,
    );
    park_tool(
        &mut b,
        lt.tool,
        contact_y + clear,
        lt.e_tool,
        &lt.target_spot,
    );
    b.finish("cut")
}

/// Stir: the tool dips into a taller vessel and circles inside it.
fn stir(mut b: Build, cfg: &GeneratorConfig) -> Scenario<f64> {
    let lt = tool_target_layout(&mut b, cfg, "tool", "bowl", (0.032, 0.038), (0.080, 0.100));

    b.open(tool_grasp_point(&lt.tool_spot, lt.e_tool));

    let grasped = [lt.tool];
    b.haul(&grasped, v3(0.0, LIFT, 0.0), V_SLOW);
    // Carry to just above the rim, then dip slowly to the vessel's
    // middle: rim contact first, full containment a beat later.
    let rim_y = 2.0 * lt.e_target + lt.e_tool + 0.02;
    let tool_y = lt.e_tool + LIFT;
    b.haul(
        &grasped,
        v3(
            lt.target_spot.x - lt.tool_spot.x,
            rim_y - tool_y,
            lt.target_spot.z - lt.tool_spot.z,
        ),
        V_SLOW,
    );
    b.haul(&grasped, v3(0.0, lt.e_target - rim_y, 0.0), V_SLOW);

    // Circle at the window period; steady state is distance-neutral.
    let cycles = 4 + b.take_stretch(200) / OSC_PERIOD;
    let (tx, tz) = lt.target_spot.tangent_unit();
    b.sim.orbit(
        &[b.hand, lt.tool],
        v3(tx, 0.0, tz),
        STIR_RADIUS,
        OSC_PERIOD,
        cycles,
    );

    // Slow exit back above the rim, then park beside the vessel.
    b.haul(&grasped, v3(0.0, rim_y - lt.e_target, 0.0), V_SLOW);
    park_tool(&mut b, lt.tool, rim_y, lt.e_tool, &lt.target_spot);
    b.finish("stir")
}

/// Hide: a small cover is placed on the target and swells downward
/// around it until the target is fully enclosed and vanishes.
fn hide(mut b: Build, cfg: &GeneratorConfig) -> Scenario<f64> {
    let lt = tool_target_layout(
        &mut b,
        cfg,
        "cover",
        "target",
        (0.032, 0.040),
        (0.050, 0.070),
    );

    b.open(tool_grasp_point(&lt.tool_spot, lt.e_tool));

    let grasped = [lt.tool];
    b.haul(&grasped, v3(0.0, LIFT, 0.0), V_SLOW);
    let contact_y = 2.0 * lt.e_target + lt.e_tool - BITE;
    let cover_y = lt.e_tool + LIFT;
    b.haul(
        &grasped,
        v3(
            lt.target_spot.x - lt.tool_spot.x,
            contact_y - cover_y,
            lt.target_spot.z - lt.tool_spot.z,
        ),
        V_SLOW,
    );
    let settle = 16 + b.take_stretch(100);
    b.sim.dwell(settle);

    // Swell downward around the target; the top face and hand stay put.
    let top = contact_y + lt.e_tool;
    let final_e_y = top / 2.0;
    let final_e_xz = lt.e_target + 0.02;
    b.sim.morph(
        &[(
            lt.tool,
            v3(lt.target_spot.x, top - final_e_y, lt.target_spot.z),
            v3(final_e_xz, final_e_y, final_e_xz),
        )],
        36,
    );
    // Fully covered: the target drops out of the scene.
    b.sim.set_status(lt.target, CubeStatus::Absent);
    b.release_and_retreat();
    b.finish("hide")
}

/// Uncover: the cover conceals the target from the start; raising it
/// reveals the target, and the cover is parked beside it.
fn uncover(mut b: Build, cfg: &GeneratorConfig) -> Scenario<f64> {
    let phi = b.rng.gen_range(0.0..std::f64::consts::TAU);
    let spot = polar_spot(&mut b.rng, 0.45, 0.58, phi);
    let e_target = b.rng.gen_range(0.040..0.060);
    let e_cover = e_target + 0.03;
    let cover_color = PALETTE[b.rng.gen_range(0..PALETTE.len())];
    let cover = b.sim.add_cube(
        "cover",
        cover_color,
        v3(spot.x, e_cover, spot.z),
        Vec3::splat(e_cover),
        CubeStatus::Present,
    );
    let target_color = PALETTE[b.rng.gen_range(0..PALETTE.len())];
    b.sim.add_cube(
        "target",
        target_color,
        v3(spot.x, e_target, spot.z),
        Vec3::splat(e_target),
        CubeStatus::Present,
    );
    b.add_distractors(cfg, &[(spot.x, spot.z), (0.0, 0.0)]);

    b.open(v3(spot.x, 2.0 * e_cover + HAND_E - BITE, spot.z));

    // Raise the cover; the target emerges as the gap opens.
    let grasped = [cover];
    let rise = 2.0 * e_target + 0.06;
    b.haul(&grasped, v3(0.0, rise, 0.0), V_SLOW);
    park_tool(&mut b, cover, e_cover + rise, e_cover, &spot);
    b.finish("uncover")
}

/// Put on top: grasp, carry, set down on the bigger block, let go.
fn put_on_top(mut b: Build, cfg: &GeneratorConfig) -> Scenario<f64> {
    let lt = tool_target_layout(&mut b, cfg, "block", "base", (0.032, 0.050), (0.060, 0.090));

    b.open(tool_grasp_point(&lt.tool_spot, lt.e_tool));

    let grasped = [lt.tool];
    b.haul(&grasped, v3(0.0, LIFT, 0.0), V_SLOW);
    let contact_y = 2.0 * lt.e_target + lt.e_tool - BITE;
    let obj_y = lt.e_tool + LIFT;
    b.haul(
        &grasped,
        v3(
            lt.target_spot.x - lt.tool_spot.x,
            contact_y - obj_y,
            lt.target_spot.z - lt.tool_spot.z,
        ),
        V_SLOW,
    );
    b.release_and_retreat();
    b.finish("put_on_top")
}

/// Take down: the small block starts stacked on the big one and is set
/// down on the ground nearby.
fn take_down(mut b: Build, cfg: &GeneratorConfig) -> Scenario<f64> {
    let phi = b.rng.gen_range(0.0..std::f64::consts::TAU);
    let spot = polar_spot(&mut b.rng, 0.45, 0.58, phi);
    let e_obj = b.rng.gen_range(0.032..0.050);
    let e_base = b.rng.gen_range(0.060..0.090);
    let base_color = PALETTE[b.rng.gen_range(0..PALETTE.len())];
    b.sim.add_cube(
        "base",
        base_color,
        v3(spot.x, e_base, spot.z),
        Vec3::splat(e_base),
        CubeStatus::Present,
    );
    let obj_color = PALETTE[b.rng.gen_range(0..PALETTE.len())];
    let obj = b.sim.add_cube(
        "block",
        obj_color,
        v3(spot.x, 2.0 * e_base + e_obj - BITE, spot.z),
        Vec3::splat(e_obj),
        CubeStatus::Present,
    );
    // Set-down spot toward the workspace center, offset sideways so the
    // parked block never faces the stack across either axis.
    let (ax, az) = spot.axis_unit();
    let (tx, tz) = spot.tangent_unit();
    let side = if tx * spot.ux + tz * spot.uz >= 0.0 { 1.0 } else { -1.0 };
    let drop = (
        spot.x - 0.30 * ax + 0.20 * side * tx,
        spot.z - 0.30 * az + 0.20 * side * tz,
    );
    b.add_distractors(cfg, &[(spot.x, spot.z), drop]);

    let stack_top = 2.0 * e_base + 2.0 * e_obj - BITE;
    b.open(v3(spot.x, stack_top + HAND_E - BITE, spot.z));

    // Lift, slide inward at height, then set down quickly.
    let grasped = [obj];
    b.haul(&grasped, v3(0.0, LIFT, 0.0), V_SLOW);
    b.haul(&grasped, v3(drop.0 - spot.x, 0.0, drop.1 - spot.z), V_SLOW);
    let obj_y = 2.0 * e_base + e_obj - BITE + LIFT;
    let fall = obj_y - (e_obj - BITE);
    b.sim.move_by(
        &[(b.hand, v3(0.0, -fall, 0.0)), (obj, v3(0.0, -fall, 0.0))],
        frames_for(fall, 0.5),
    );
    b.release_and_retreat();
    b.finish("take_down")
}

/// Push: side contact, slow slide outward along a workspace axis, stop,
/// let go.
fn push(mut b: Build, cfg: &GeneratorConfig) -> Scenario<f64> {
    let phi = b.rng.gen_range(0.0..std::f64::consts::TAU);
    let spot = polar_spot(&mut b.rng, 0.15, 0.25, phi);
    let e_obj = b.rng.gen_range(0.040..0.060);
    let obj = b.cube_on_ground("block", &spot, e_obj);
    b.add_distractors(cfg, &[(spot.x, spot.z)]);

    // Push along the axis closest to the outward direction; the hand
    // takes the inner face.
    let (ax, az) = spot.axis_unit();
    let side = e_obj + HAND_E - BITE;
    b.open(v3(spot.x - ax * side, e_obj, spot.z - az * side));

    let slide = 0.35;
    let frames = frames_for(slide, V_SLOW);
    b.sim.move_by(
        &[
            (b.hand, v3(ax * slide, 0.0, az * slide)),
            (obj, v3(ax * slide, 0.0, az * slide)),
        ],
        frames,
    );
    let settle = 14 + b.take_stretch(160);
    b.sim.dwell(settle);
    b.release_and_retreat();
    b.finish("push")
}

/// Lay: a tall block is tipped onto its side (modeled as an extent swap),
/// then the hand slides onto its top before letting go.
fn lay(mut b: Build, cfg: &GeneratorConfig) -> Scenario<f64> {
    let phi = b.rng.gen_range(0.0..std::f64::consts::TAU);
    let spot = polar_spot(&mut b.rng, 0.15, 0.28, phi);
    let e_xz = b.rng.gen_range(0.025..0.035);
    let e_y = b.rng.gen_range(0.060..0.080);
    let color = PALETTE[b.rng.gen_range(0..PALETTE.len())];
    let obj = b.sim.add_cube(
        "block",
        color,
        v3(spot.x, e_y, spot.z),
        v3(e_xz, e_y, e_xz),
        CubeStatus::Present,
    );
    b.add_distractors(cfg, &[(spot.x, spot.z)]);

    // Side grasp at the upper edge of the -x face.
    b.open(v3(
        spot.x - (e_xz + HAND_E - BITE),
        2.0 * e_y - HAND_E,
        spot.z,
    ));

    // Tip over: extents swap x <-> y while the block stays grounded; the
    // hand tracks the sinking top edge on the advancing face.
    b.sim.morph(
        &[
            (obj, v3(spot.x, e_xz, spot.z), v3(e_y, e_xz, e_xz)),
            (
                b.hand,
                v3(spot.x - (e_y + HAND_E - BITE), HAND_E + 0.012, spot.z),
                Vec3::splat(HAND_E),
            ),
        ],
        16,
    );
    let settle = 14 + b.take_stretch(140);
    b.sim.dwell(settle);

    // Slide up onto the top face, then let go.
    let hand_at = v3(spot.x - (e_y + HAND_E - BITE), HAND_E + 0.012, spot.z);
    let hand_to = v3(spot.x, 2.0 * e_xz + HAND_E - BITE, spot.z);
    b.sim.move_by(&[(b.hand, hand_to.sub(hand_at))], 4);
    b.sim.dwell(14);
    b.release_and_retreat();
    b.finish("lay")
}

/// Shake: lift the block and drive it radially out and back with crisp
/// pauses, then set it back down.
fn shake(mut b: Build, cfg: &GeneratorConfig) -> Scenario<f64> {
    let phi = b.rng.gen_range(0.0..std::f64::consts::TAU);
    let spot = polar_spot(&mut b.rng, 0.12, 0.22, phi);
    let e_obj = b.rng.gen_range(0.032..0.050);
    let obj = b.cube_on_ground("block", &spot, e_obj);
    b.add_distractors(cfg, &[(spot.x, spot.z)]);

    b.open(tool_grasp_point(&spot, e_obj));

    let grasped = [obj];
    let carry_y = LIFT + 0.05;
    b.haul(&grasped, v3(0.0, carry_y, 0.0), V_SLOW);

    // Out-pause-in cycles; each swing is fast enough to register.
    let swing = 0.33;
    let out = v3(spot.ux * swing, 0.0, spot.uz * swing);
    let back = v3(-spot.ux * swing, 0.0, -spot.uz * swing);
    let pause = 14 + b.take_stretch(120) / 3;
    for delta in [out, back, out] {
        b.sim.move_by(&[(b.hand, delta), (obj, delta)], 5);
        b.sim.dwell(pause);
    }

    // Set it down quickly where it ended up.
    let drop = carry_y + BITE;
    b.sim.move_by(
        &[(b.hand, v3(0.0, -drop, 0.0)), (obj, v3(0.0, -drop, 0.0))],
        frames_for(drop, 0.5),
    );
    b.release_and_retreat();
    b.finish("shake")
}

fn run(class: ActionClass, b: Build, cfg: &GeneratorConfig) -> Scenario<f64> {
    match class {
        ActionClass::Chop => chop(b, cfg),
        ActionClass::Cut => cut(b, cfg),
        ActionClass::Hide => hide(b, cfg),
        ActionClass::Uncover => uncover(b, cfg),
        ActionClass::PutOnTop => put_on_top(b, cfg),
        ActionClass::TakeDown => take_down(b, cfg),
        ActionClass::Lay => lay(b, cfg),
        ActionClass::Push => push(b, cfg),
        ActionClass::Shake => shake(b, cfg),
        ActionClass::Stir => stir(b, cfg),
    }
}

pub(super) fn generate_with<T: Scalar>(
    class: ActionClass,
    seed: u64,
    cfg: &GeneratorConfig,
) -> Scenario<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mean, sd, lo, hi) = class.duration_stats();
    let normal = Normal::new(mean, sd).expect("valid duration stats");
    let mut duration = mean;
    for _ in 0..64 {
        let x = normal.sample(&mut rng);
        if x >= lo && x <= hi {
            duration = x;
            break;
        }
    }
    let target_frames = (duration * FPS).round() as usize;

    // First pass measures the fixed choreography; the second pass rebuilds
    // with the remaining frames parcelled into the stretchable dwells.
    let probe = Build::fresh(rng.clone(), 0);
    let base = run(class, probe, cfg).frames.len();
    let stretch = target_frames.saturating_sub(base);
    let build = Build::fresh(rng, stretch);
    convert(run(class, build, cfg))
}
