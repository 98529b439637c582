//! Role assignment and event-chain encoding.
//!
//! A scenario is compressed into a 30-row symbolic matrix: ten object
//! pairs, three relation kinds each. Columns open only when the debounced
//! 30-tuple changes, so the matrix is a sequence of relation-change
//! events rather than a per-frame trace.

use std::collections::HashMap;

use crate::error::{EsecError, Result};
use crate::relations::{relation_triple, PairHistory, RelationConfig, RelationTriple};
use crate::scalar::Scalar;
use crate::scene::{touching_unchecked, Scenario};

/// The five object roles of an action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Hand,
    Ground,
    Object(u8),
}

impl Role {
    pub fn label(self) -> String {
        match self {
            Role::Hand => "H".into(),
            Role::Ground => "G".into(),
            Role::Object(n) => (n + 1).to_string(),
        }
    }
}

/// Canonical pair order of the matrix rows.
pub const PAIR_ORDER: [(Role, Role); 10] = [
    (Role::Hand, Role::Ground),
    (Role::Hand, Role::Object(0)),
    (Role::Hand, Role::Object(1)),
    (Role::Hand, Role::Object(2)),
    (Role::Ground, Role::Object(0)),
    (Role::Ground, Role::Object(1)),
    (Role::Ground, Role::Object(2)),
    (Role::Object(0), Role::Object(1)),
    (Role::Object(0), Role::Object(2)),
    (Role::Object(1), Role::Object(2)),
];

/// Human-readable label of matrix row pair `i`, e.g. `H,G`.
pub fn pair_label(i: usize) -> String {
    let (a, b) = PAIR_ORDER[i];
    format!("{},{}", a.label(), b.label())
}

/// Which cubes ended up in which fundamental-object role.
#[derive(Debug, Clone, PartialEq)]
pub struct RoleAssignment {
    pub hand: String,
    pub ground: String,
    /// Objects 1..3 in binding order with the frame index they bound at.
    pub objects: [Option<(String, usize)>; 3],
}

impl RoleAssignment {
    pub fn cube_for(&self, role: Role) -> Option<(&str, usize)> {
        match role {
            Role::Hand => Some((self.hand.as_str(), 0)),
            Role::Ground => Some((self.ground.as_str(), 0)),
            Role::Object(n) => self.objects[n as usize]
                .as_ref()
                .map(|(id, f)| (id.as_str(), *f)),
        }
    }
}

/// Scans the scenario for touch/untouch transitions and binds object
/// roles in the order cubes first transition. Never fails; callers that
/// require an acting hand use [`assign_roles`].
pub fn scan_roles<T: Scalar>(scenario: &Scenario<T>, cfg: &RelationConfig<T>) -> RoleAssignment {
    scan_roles_stable(scenario, cfg, 1)
}

/// Like [`scan_roles`], but a transition only binds a role when the new
/// touching state persists `stable_frames` consecutive frames. The
/// encoder passes its debounce length so one-frame jitter neither opens
/// columns nor births objects.
pub fn scan_roles_stable<T: Scalar>(
    scenario: &Scenario<T>,
    cfg: &RelationConfig<T>,
    stable_frames: usize,
) -> RoleAssignment {
    let mut assignment = RoleAssignment {
        hand: scenario.hand_id.clone(),
        ground: scenario.ground_id.clone(),
        objects: [None, None, None],
    };
    let ids = scenario.cube_ids();
    let n = ids.len();
    let n_frames = scenario.frames.len();
    let stable = stable_frames.max(1);

    // Raw touching state per unordered cube pair and frame, None while
    // not comparable (a member absent or destroyed).
    let mut states: Vec<Vec<Option<bool>>> = vec![vec![None; n_frames]; n * n];
    for (f, frame) in scenario.frames.iter().enumerate() {
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (&frame.cubes[i], &frame.cubes[j]);
                if a.is_present() && b.is_present() {
                    states[i * n + j][f] = Some(touching_unchecked(a, b, cfg.eps_touch));
                }
            }
        }
    }

    // Debounced touching state per pair: a value must persist
    // `stable` frames to count, so one-frame jitter neither opens a
    // transition on its leading nor its trailing edge.
    let mut committed: Vec<Option<bool>> = vec![None; n * n];
    let mut bound = 0usize;
    let mut roled: Vec<bool> = ids
        .iter()
        .map(|id| id == &scenario.hand_id || id == &scenario.ground_id)
        .collect();
    for f in 0..n_frames {
        for i in 0..n {
            for j in (i + 1)..n {
                let slot = i * n + j;
                let track = &states[slot];
                let Some(now) = track[f] else { continue };
                if committed[slot] == Some(now) {
                    continue;
                }
                let holds =
                    f + stable <= n_frames && (f..f + stable).all(|g| track[g] == Some(now));
                if !holds {
                    continue;
                }
                let was_transition = committed[slot].is_some();
                committed[slot] = Some(now);
                if !was_transition {
                    continue;
                }
                for k in [i, j] {
                    if !roled[k] && bound < 3 {
                        assignment.objects[bound] =
                            Some((ids[k].clone(), scenario.frames[f].index));
                        roled[k] = true;
                        bound += 1;
                    }
                }
            }
        }
    }
    assignment
}

/// Role assignment that demands at least one acting object.
pub fn assign_roles<T: Scalar>(
    scenario: &Scenario<T>,
    cfg: &RelationConfig<T>,
) -> Result<RoleAssignment> {
    let assignment = scan_roles(scenario, cfg);
    if assignment.objects[0].is_none() {
        return Err(EsecError::NoActionDetected);
    }
    Ok(assignment)
}

/// Encoder parameters.
#[derive(Debug, Clone)]
pub struct EncodeConfig<T = f64> {
    pub relations: RelationConfig<T>,
    /// A changed 30-tuple must persist this many consecutive frames to
    /// open a column; near-simultaneous changes merge into one column.
    pub debounce_frames: usize,
}

impl<T: Scalar> Default for EncodeConfig<T> {
    fn default() -> Self {
        Self {
            relations: RelationConfig::default(),
            debounce_frames: 4,
        }
    }
}

/// Relation kinds, in matrix row-block order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Tnr,
    Ssr,
    Dsr,
}

/// Subset of relation kinds used for column codes and cue analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CueSet {
    pub tnr: bool,
    pub ssr: bool,
    pub dsr: bool,
}

impl CueSet {
    pub const TNR: CueSet = CueSet { tnr: true, ssr: false, dsr: false };
    pub const SSR: CueSet = CueSet { tnr: false, ssr: true, dsr: false };
    pub const DSR: CueSet = CueSet { tnr: false, ssr: false, dsr: true };
    pub const ALL: CueSet = CueSet { tnr: true, ssr: true, dsr: true };

    pub fn is_empty(self) -> bool {
        !(self.tnr || self.ssr || self.dsr)
    }

    /// Short tag used to namespace column codes, e.g. `T+D`.
    pub fn tag(self) -> String {
        let mut parts = Vec::new();
        if self.tnr {
            parts.push("T");
        }
        if self.ssr {
            parts.push("S");
        }
        if self.dsr {
            parts.push("D");
        }
        parts.join("+")
    }

    /// Parses a comma- or plus-separated list of T/S/D letters.
    pub fn parse(s: &str) -> Option<Self> {
        let mut cue = CueSet { tnr: false, ssr: false, dsr: false };
        for part in s.split([',', '+']) {
            match part.trim() {
                "T" | "t" => cue.tnr = true,
                "S" | "s" => cue.ssr = true,
                "D" | "d" => cue.dsr = true,
                "" => {}
                _ => return None,
            }
        }
        if cue.is_empty() {
            None
        } else {
            Some(cue)
        }
    }
}

/// 30-row symbolic action descriptor.
#[derive(Debug, Clone, PartialEq)]
pub struct ESecMatrix {
    /// Action class or "unlabeled".
    pub label: String,
    /// One 10-pair triple set per event column.
    pub columns: Vec<[RelationTriple; 10]>,
    /// Frame index at which each column's state first appeared.
    pub column_frames: Vec<usize>,
}

impl ESecMatrix {
    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    /// Canonical string code of the selected sub-rows of one column.
    /// Codes of different cue subsets live in different namespaces.
    pub fn column_code(&self, column: usize, cues: CueSet) -> Result<String> {
        if column >= self.columns.len() {
            return Err(EsecError::ColumnOutOfRange {
                index: column,
                len: self.columns.len(),
            });
        }
        if cues.is_empty() {
            return Err(EsecError::Info("empty cue subset".into()));
        }
        Ok(column_code_of(&self.columns[column], cues))
    }

    /// Pretty table with one row per relation row, columns as emitted.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "label: {}   columns: {}\n",
            self.label,
            self.columns.len()
        ));
        let frames: Vec<String> = self.column_frames.iter().map(|f| f.to_string()).collect();
        out.push_str(&format!("{:>10} | {}\n", "frame", frames.join(" ")));
        for (kind, tag) in [
            (RelationKind::Tnr, "T"),
            (RelationKind::Ssr, "S"),
            (RelationKind::Dsr, "D"),
        ] {
            for pair in 0..10 {
                let cells: Vec<&str> = self
                    .columns
                    .iter()
                    .map(|col| cell_str(&col[pair], kind))
                    .collect();
                out.push_str(&format!(
                    "{:>10} | {}\n",
                    format!("{}({})", tag, pair_label(pair)),
                    cells.join(" ")
                ));
            }
        }
        out
    }
}

pub(crate) fn cell_str(triple: &RelationTriple, kind: RelationKind) -> &'static str {
    match kind {
        RelationKind::Tnr => triple.tnr.as_str(),
        RelationKind::Ssr => triple.ssr.as_str(),
        RelationKind::Dsr => triple.dsr.as_str(),
    }
}

pub(crate) fn column_code_of(column: &[RelationTriple; 10], cues: CueSet) -> String {
    let mut code = cues.tag();
    code.push(':');
    let mut first = true;
    for (kind, on) in [
        (RelationKind::Tnr, cues.tnr),
        (RelationKind::Ssr, cues.ssr),
        (RelationKind::Dsr, cues.dsr),
    ] {
        if !on {
            continue;
        }
        for triple in column.iter() {
            if !first {
                code.push(',');
            }
            code.push_str(cell_str(triple, kind));
            first = false;
        }
    }
    code
}

/// Encodes a scenario into its event-chain matrix.
///
/// Pairs whose roles are still unbound read `U`; a static scene encodes
/// to a single column.
pub fn encode<T: Scalar>(scenario: &Scenario<T>, cfg: &EncodeConfig<T>) -> Result<ESecMatrix> {
    scenario.validate()?;
    let roles = scan_roles_stable(scenario, &cfg.relations, cfg.debounce_frames);
    encode_with_roles(scenario, &roles, cfg)
}

pub fn encode_with_roles<T: Scalar>(
    scenario: &Scenario<T>,
    roles: &RoleAssignment,
    cfg: &EncodeConfig<T>,
) -> Result<ESecMatrix> {
    let ids = scenario.cube_ids();
    let slot_of: HashMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();

    // Per-cube tracks so relation windows are plain slices.
    let n_frames = scenario.frames.len();
    let mut tracks = vec![Vec::with_capacity(n_frames); ids.len()];
    for frame in &scenario.frames {
        for (slot, cube) in frame.cubes.iter().enumerate() {
            tracks[slot].push(cube.clone());
        }
    }

    // Pair -> (track slots, bind frame) once roles are known.
    let pair_slots: Vec<Option<(usize, usize, usize)>> = PAIR_ORDER
        .iter()
        .map(|&(ra, rb)| {
            let (ida, fa) = roles.cube_for(ra)?;
            let (idb, fb) = roles.cube_for(rb)?;
            Some((slot_of[ida], slot_of[idb], fa.max(fb)))
        })
        .collect();

    let theta = cfg.relations.theta;
    let mut tuples: Vec<[RelationTriple; 10]> = Vec::with_capacity(n_frames);
    for f in 0..n_frames {
        let start = f.saturating_sub(theta);
        let mut tuple = [RelationTriple::UNDEFINED; 10];
        for (row, slots) in pair_slots.iter().enumerate() {
            let Some((sa, sb, bind_frame)) = *slots else {
                continue;
            };
            if f < bind_frame {
                continue;
            }
            let history = PairHistory::new(&tracks[sa][start..=f], &tracks[sb][start..=f]);
            tuple[row] = relation_triple(history, &cfg.relations)?;
        }
        tuples.push(tuple);
    }

    // Debounce: a changed tuple opens a column only after holding for
    // `debounce_frames` consecutive frames.
    let hold = cfg.debounce_frames.max(1);
    let mut columns = vec![tuples[0]];
    let mut column_frames = vec![scenario.frames[0].index];
    for f in 1..n_frames {
        if tuples[f] == *columns.last().unwrap() {
            continue;
        }
        if f + hold <= n_frames && (f + 1..f + hold).all(|g| tuples[g] == tuples[f]) {
            columns.push(tuples[f]);
            column_frames.push(scenario.frames[f].index);
        }
    }

    Ok(ESecMatrix {
        label: scenario.label.clone(),
        columns,
        column_frames,
    })
}
